"""Acceptance gate: one test per release criterion, each printing a one-line
pass/fail summary.  Run with -s to see the summaries and the emitted
conjecture deviation table."""

import time

import numpy as np
import pytest

from circspec.finitedet import (
    EnsembleLabel,
    cue_gen_fn,
    number_variance,
    orthogonal_gen_fn,
)
from circspec.fredholm import (
    e_inf_beta,
    e_orthogonal_limit,
    finite_cue_fredholm,
    finite_orthogonal_fredholm,
)
from circspec.painleve import (
    integrate_sigma_piii,
    integrate_sigma_pvi_cue,
    integrate_sigma_pvi_orth,
    sigma_piii_conjectured_asymptote,
)
from circspec.recurrence import gen_fn_from_recurrence
from circspec.spectrum import (
    _finite_n3_closed_form,
    assemble_finite_spectrum,
    assemble_limit_spectrum,
    covariance_asymptote,
    number_variance_asymptotic,
    spectrum_at_zero_exact,
    spectrum_at_zero_variance_integral,
)

TABLE1_EXACT = [0.629975, 0.312700, 0.207411, 0.155436, 0.124957, 0.105347,
                0.092046, 0.082787, 0.076329, 0.071951, 0.069228, 0.067922]
TABLE3_S50 = [0.629870, 0.312602, 0.207322, 0.155354, 0.124886, 0.105293,
              0.092012, 0.082765, 0.076309, 0.071934, 0.069219, 0.067917]
# beta = 1 limiting values at omega = pi k / 25, k = 1..24
TABLE2 = [2.47539, 1.2072, 0.784986, 0.574758, 0.449517, 0.366891,
          0.308633, 0.26563, 0.232872, 0.207143, 0.18673, 0.170155,
          0.156537, 0.145469, 0.136032, 0.128457, 0.121966, 0.116653,
          0.112358, 0.108769, 0.106038, 0.103944, 0.102462, 0.101619]
TABLE4_BETA4 = [0.322125, 0.163706, 0.111115, 0.085100, 0.069785, 0.059908,
                0.053163, 0.048451, 0.045171, 0.042899, 0.041530, 0.040840]
# beta = 1 finite-N values at omega = 2 pi k / 25, half-integer k
TABLE5_K = [0.5, 1.5, 2.5, 3.5, 4.5, 5.5, 6.5, 7.5, 8.5, 9.5, 10.5, 11.5]
TABLE5_N50 = [2.47335, 0.783343, 0.448083, 0.30734, 0.231662, 0.185616,
              0.15556, 0.135148, 0.121063, 0.111435, 0.10517, 0.101632]
TABLE5_N100 = [2.47454, 0.784283, 0.448897, 0.30806, 0.232307, 0.186201,
               0.156097, 0.135649, 0.121535, 0.111886, 0.105606, 0.102059]
TABLE2_HALF_K = dict(zip(TABLE5_K, TABLE2[::2]))


def test_criterion_1_exact_small_n_spectra():
    t0 = time.time()
    worst = 0.0
    for beta in (1, 2, 4):
        for omega in np.linspace(0.1, np.pi, 20):
            v = assemble_finite_spectrum(beta, 3, omega)
            worst = max(worst, abs(v / _finite_n3_closed_form(beta, omega) - 1.0))
    elapsed = time.time() - t0
    print(f"criterion 1: N=3 closed forms, worst rel err {worst:.2e} "
          f"in {elapsed:.1f}s -> {'pass' if worst < 1e-8 and elapsed < 10 else 'FAIL'}")
    assert worst < 1e-8
    assert elapsed < 10.0


def test_criterion_2_zero_intercepts():
    t0 = time.time()
    worst = 0.0
    for beta in (1, 2, 4):
        for N in (5, 10, 20, 40):
            gap = abs(spectrum_at_zero_exact(beta, N)
                      - spectrum_at_zero_variance_integral(beta, N))
            worst = max(worst, gap)
    elapsed = time.time() - t0
    print(f"criterion 2: zero intercepts vs variance integral, worst {worst:.2e} "
          f"in {elapsed:.1f}s -> {'pass' if worst < 1e-8 and elapsed < 30 else 'FAIL'}")
    assert worst < 1e-8
    assert elapsed < 30.0


def test_criterion_3_table1_beta2_limit():
    worst100 = worst50 = 0.0
    for k, (exact, approx50) in enumerate(zip(TABLE1_EXACT, TABLE3_S50), start=1):
        omega = 2 * np.pi * k / 25
        v100, _ = assemble_limit_spectrum(2, omega, s_star_target=100)
        v50, _ = assemble_limit_spectrum(2, omega, s_star_target=50)
        worst100 = max(worst100, abs(v100 - exact))
        worst50 = max(worst50, abs(v50 - approx50))
    ok = worst100 < 1e-4 and worst50 < 5e-5
    print(f"criterion 3: Table 1 worst |delta| {worst100:.2e} (vs exact, s*=100), "
          f"Table 3 worst {worst50:.2e} (s*=50) -> {'pass' if ok else 'FAIL'}")
    assert worst100 < 1e-4
    assert worst50 < 5e-5


def test_criterion_4_table2_beta1_limit():
    worst = 0.0
    for k2, ref in enumerate(TABLE2, start=1):  # k = k2 / 2
        omega = np.pi * k2 / 25
        v, _ = assemble_limit_spectrum(1, omega, s_star_target=100)
        worst = max(worst, abs(v - ref))
    print(f"criterion 4: Table 2 worst |delta| {worst:.2e} "
          f"-> {'pass' if worst < 5e-4 else 'FAIL'}")
    assert worst < 5e-4


def test_criterion_5_table4_beta4_limit():
    worst = 0.0
    for k, ref in enumerate(TABLE4_BETA4, start=1):
        omega = 2 * np.pi * k / 25
        v, _ = assemble_limit_spectrum(4, omega, s_star_target=50)
        worst = max(worst, abs(v - ref))
    print(f"criterion 5: Table 4 worst |delta| {worst:.2e} "
          f"-> {'pass' if worst < 5e-4 else 'FAIL'}")
    assert worst < 5e-4


def test_criterion_6_table5_finite_n_convergence():
    worst50 = worst100 = 0.0
    monotone = True
    ratios = []
    for k, r50, r100 in zip(TABLE5_K, TABLE5_N50, TABLE5_N100):
        omega = 2 * np.pi * k / 25
        s50 = assemble_finite_spectrum(1, 50, omega)
        s100 = assemble_finite_spectrum(1, 100, omega)
        s_inf = TABLE2_HALF_K[k]
        worst50 = max(worst50, abs(s50 - r50))
        worst100 = max(worst100, abs(s100 - r100))
        monotone &= s50 < s100 < s_inf
        ratios.append((s_inf - s50) / (s_inf - s100))
    in_band = all(3.0 <= r <= 5.0 for r in ratios)
    ok = worst50 < 5e-4 and worst100 < 5e-4 and monotone and in_band
    print(f"criterion 6: Table 5 worst |delta| N=50 {worst50:.2e}, "
          f"N=100 {worst100:.2e}, monotone={monotone}, "
          f"gap ratios {min(ratios):.2f}..{max(ratios):.2f} "
          f"-> {'pass' if ok else 'FAIL'}")
    assert worst50 < 5e-4
    assert worst100 < 5e-4
    assert monotone
    # measured ratios sit near 2 (and the published finite-N/limit tables give
    # the same), i.e. an O(1/N) gap against the tabulated limits rather than
    # the O(1/N^2) band asserted here
    assert in_band, f"gap ratios {ratios} outside [3.0, 5.0]"


def test_criterion_7_route_equivalences():
    # determinant vs recurrence, beta = 2
    worst_rec = 0.0
    for N in (4, 9, 16):
        for omega, phi in ((0.7, 0.9), (1.6, 1.8), (2.8, 2.9)):
            xi = 1.0 - np.exp(1j * omega)
            worst_rec = max(worst_rec, abs(
                cue_gen_fn(N, phi, xi).value
                - gen_fn_from_recurrence(N - 1, phi, xi).value))
    # Hankel +/- Toeplitz vs finite-kernel Fredholm
    worst_fred = 0.0
    for n in (3, 6, 10):
        for omega, phi in ((0.7, 0.8), (1.6, 1.5), (2.8, 2.4)):
            xi = 1.0 - np.exp(1j * omega)
            for sign, kind in (("+", "o_plus_odd"), ("-", "o_minus_odd")):
                worst_fred = max(worst_fred, abs(
                    finite_orthogonal_fredholm(sign, n, phi, xi).value
                    - orthogonal_gen_fn(EnsembleLabel(kind, n), phi, xi).value))
            worst_fred = max(worst_fred, abs(
                finite_cue_fredholm(n + 2, phi, xi).value
                - cue_gen_fn(n + 2, phi, xi).value))
    # sigma-Painleve tau integrals vs their determinant counterparts
    worst_tau = 0.0
    for N in (3, 8, 20):
        for omega, phi in ((0.6, 0.8), (1.5, 1.6), (2.5, 2.8)):
            xi = 1.0 - np.exp(1j * omega)
            traj = integrate_sigma_pvi_cue(N, xi, 1.0 / np.tan(phi / 2.0))
            worst_tau = max(worst_tau, abs(
                traj.gen_fn.value - cue_gen_fn(N, phi, xi).value))
    for n in (3, 8):
        for omega, phi in ((0.7, 0.9), (1.6, 1.7), (2.6, 2.6)):
            xi = 1.0 - np.exp(1j * omega)
            for sign, kind in (("+", "o_plus_odd"), ("-", "o_minus_odd")):
                traj = integrate_sigma_pvi_orth(sign, n, xi, np.sin(phi / 2) ** 2)
                worst_tau = max(worst_tau, abs(
                    traj.gen_fn.value
                    - orthogonal_gen_fn(EnsembleLabel(kind, n), phi, xi).value))
    for omega in (0.7, 1.2, 1.7):
        for s in (1.0, 2.0, 3.0):
            xi = 1.0 - np.exp(1j * omega)
            for sign in "+-":
                traj = integrate_sigma_piii(sign, xi, (np.pi * s) ** 2)
                worst_tau = max(worst_tau, abs(
                    traj.gen_fn.value - e_orthogonal_limit(sign, s, xi).value))
    # reflection factorisation of the bulk determinant
    worst_refl = 0.0
    for omega in (0.6, 1.5, 2.7):
        xi = 1.0 - np.exp(1j * omega)
        for s in (1.0, 3.0, 7.0):
            worst_refl = max(worst_refl, abs(
                e_inf_beta(2, 2 * s, xi, cross_check=False).value
                - e_orthogonal_limit("+", s, xi).value
                * e_orthogonal_limit("-", s, xi).value))
    ok = (worst_rec < 1e-10 and worst_fred < 1e-9
          and worst_tau < 1e-7 and worst_refl < 1e-10)
    print(f"criterion 7: route equivalences, det-vs-rec {worst_rec:.2e}, "
          f"fredholm {worst_fred:.2e}, tau {worst_tau:.2e}, "
          f"factorisation {worst_refl:.2e} -> {'pass' if ok else 'FAIL'}")
    assert worst_rec < 1e-10
    assert worst_fred < 1e-9
    assert worst_tau < 1e-7
    assert worst_refl < 1e-10


def test_criterion_8_asymptotics():
    v2 = covariance_asymptote(2, 9)
    v1 = covariance_asymptote(1, 9)
    # the reference values are quoted as truncations (-0.00063196...,
    # -0.001276...)
    ok2 = -0.00063197 < v2 < -0.00063196
    ok1 = -0.001277 < v1 < -0.001276
    gap = abs(number_variance_asymptotic(2, 400, np.pi)
              - number_variance(2, 400, np.pi))
    ok_nv = gap < 0.01
    print(f"criterion 8: covariance {v2:.8f} / {v1:.7f}, variance gap {gap:.2e} "
          f"-> {'pass' if ok2 and ok1 and ok_nv else 'FAIL'}")
    assert ok2 and ok1
    assert ok_nv


def test_criterion_9_conjecture_deviation_table():
    omega = 31.0 * np.pi / 32.0
    xi = 1.0 - np.exp(1j * omega)
    print("criterion 9: sigma-PIII' v_+ vs conjectured asymptote, "
          "omega = 31 pi / 32")
    print("      t      |v|        |v - asympt|   relative")
    devs = []
    for t in np.linspace(100.0, 180.0, 17):
        v = integrate_sigma_piii("+", xi, t).u[-1]
        ref = sigma_piii_conjectured_asymptote("+", omega, t)
        rel = abs(v - ref) / abs(v)
        devs.append(rel)
        print(f"  {t:7.1f}  {abs(v):9.4f}  {abs(v - ref):12.4e}  {rel:9.4e}")
    devs = np.array(devs)
    # qualitative trend only (the table is the deliverable): the deviation
    # oscillates near the asymptote's poles, so compare windowed means
    assert devs[9:].mean() < devs[:8].mean()
