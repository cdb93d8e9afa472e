import numpy as np
import pytest

from circspec.finitedet import EnsembleLabel, cue_gen_fn, orthogonal_gen_fn
from circspec.fredholm import (
    KernelSpec,
    e_inf_beta,
    e_orthogonal_limit,
    finite_cue_fredholm,
    finite_orthogonal_fredholm,
    fredholm_det,
)


class TestFiniteKernels:
    def test_cue_matches_toeplitz(self):
        # 9-point cross-route grid against the structured determinant
        for N in (4, 9, 16):
            for omega, phi in ((0.7, 0.9), (1.6, 1.8), (2.8, 2.9)):
                xi = 1.0 - np.exp(1j * omega)
                a = finite_cue_fredholm(N, phi, xi).value
                b = cue_gen_fn(N, phi, xi).value
                assert abs(a - b) < 1e-9

    @pytest.mark.parametrize("sign,kind", [("+", "o_plus_odd"), ("-", "o_minus_odd")])
    def test_orthogonal_matches_hankel_toeplitz(self, sign, kind):
        for n in (3, 6, 10):
            for omega, phi in ((0.7, 0.8), (1.6, 1.5), (2.8, 2.4)):
                xi = 1.0 - np.exp(1j * omega)
                a = finite_orthogonal_fredholm(sign, n, phi, xi).value
                b = orthogonal_gen_fn(EnsembleLabel(kind, n), phi, xi).value
                assert abs(a - b) < 1e-9

    def test_error_estimate_sane(self):
        det = fredholm_det(KernelSpec("sine_bulk", scale=3.0), 0.8)
        assert det.err_estimate < 1e-10


class TestLimitingKernels:
    def test_reflection_factorisation(self):
        # bulk determinant at length 2s factorises into the two half-length
        # reflected-kernel determinants
        for omega in (0.6, 1.5, 2.7):
            xi = 1.0 - np.exp(1j * omega)
            for s in (1.0, 3.0, 7.0):
                bulk = e_inf_beta(2, 2 * s, xi, cross_check=False).value
                ep = e_orthogonal_limit("+", s, xi).value
                em = e_orthogonal_limit("-", s, xi).value
                assert abs(bulk - ep * em) < 1e-10

    def test_finite_to_limit_convergence_rate(self):
        # the scaled finite-N orthogonal determinant approaches the limiting
        # one at rate O(1/N^2): doubling N shrinks the gap by about 4
        s, omega = 2.0, 1.1
        xi = 1.0 - np.exp(1j * omega)
        ref = {sign: e_orthogonal_limit(sign, s, xi).value for sign in "+-"}
        for sign in "+-":
            gaps = []
            for N in (40, 80):
                phi = np.pi * s / N
                val = finite_orthogonal_fredholm(sign, N, phi, xi).value
                gaps.append(abs(val - ref[sign]))
            ratio = gaps[0] / gaps[1]
            assert 3.0 < ratio < 5.0

    def test_beta_dispatch_consistency(self):
        # beta = 4 is the mean of the two reflected determinants
        xi = 1.0 - np.exp(0.9j)
        s = 2.5
        ep = e_orthogonal_limit("+", s, xi).value
        em = e_orthogonal_limit("-", s, xi).value
        assert e_inf_beta(4, s, xi).value == pytest.approx(0.5 * (ep + em), abs=1e-13)

    def test_zero_length_and_zero_xi(self):
        assert e_inf_beta(2, 0.0, 0.7).value == 1.0
        assert e_inf_beta(1, 3.0, 0.0).value == 1.0

    def test_invalid_beta(self):
        with pytest.raises(ValueError):
            e_inf_beta(3, 1.0, 0.5)
