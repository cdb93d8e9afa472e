"""Power spectrum assembly for the circular beta ensembles.

Finite-N spectra are built from the gap generating function sampled on an
angular grid; the limiting spectrum is built from the bulk-scaled generating
function with a truncation-plus-power-law-tail treatment of the integral over
the half line.  Exact zero-frequency intercepts and the various asymptotic
formulas are provided alongside for cross-checking.
"""

import warnings
from dataclasses import dataclass, field

import numpy as np
from scipy.special import digamma, polygamma

from .exceptions import PoleError
from .finitedet import (
    DOUBLE_PRECISION_CAP,
    ROUTE_DETERMINANT,
    ROUTE_FREDHOLM,
    ROUTE_PAINLEVE,
    ROUTE_RECURRENCE,
    gen_fn,
    number_variance,
)
from .fredholm import e_inf_beta, finite_cue_fredholm, finite_orthogonal_fredholm
from .painleve import integrate_sigma_piii, integrate_sigma_pvi_cue, integrate_sigma_pvi_orth
from .quadrature import GridFunction, gauss_legendre, integrate, tail_integral
from .recurrence import gen_fn_from_recurrence

EULER_GAMMA = float(np.euler_gamma)

BETAS = (1, 2, 4)


@dataclass(frozen=True)
class SpectrumEntry:
    omega: float
    value: float
    err_estimate: float
    route: str


@dataclass(frozen=True)
class SpectrumTable:
    """Power spectrum values on a grid of frequencies in (0, pi] (plus
    optionally omega = 0 from the exact intercept).  Only this fundamental
    domain is stored: S(-omega) = S(omega) and S is 2 pi periodic."""

    beta: int
    size: float  # N, or math.inf for the limiting spectrum
    entries: tuple
    grid_descriptor: str = ""

    def __post_init__(self):
        if self.beta not in BETAS:
            raise ValueError(f"beta must be 1, 2 or 4, got {self.beta}")
        for e in self.entries:
            if not 0.0 <= e.omega <= np.pi + 1e-12:
                raise ValueError(f"omega = {e.omega} outside [0, pi]")

    @property
    def omegas(self):
        return np.array([e.omega for e in self.entries])

    @property
    def values(self):
        return np.array([e.value for e in self.entries])


@dataclass(frozen=True)
class TailSpec:
    """Power-law tail model attached to the truncated half-line integral of
    the limiting spectrum: amplitude * s^(-exponent) * cos(omega s) beyond
    s_star, with s_star an exact multiple of 2 pi / omega."""

    s_star: float
    grid_spacing: float
    amplitude: float
    exponent: float
    omega: float = 0.0

    def __post_init__(self):
        if self.omega > 0.0 and abs(np.cos(self.omega * self.s_star) - 1.0) > 1e-12:
            raise ValueError(
                f"s_star = {self.s_star} is not a multiple of 2 pi / omega")


# -- generating-function route dispatch ---------------------------------------

def _check_beta(beta):
    if beta not in BETAS:
        raise ValueError(f"beta must be 1, 2 or 4, got {beta}")


def _coe_pair(xi):
    # Weights and doubled parameter of the two-term orthogonal-group
    # decomposition of the COE generating function.
    if xi == 2:
        raise PoleError("beta = 1 combination has a pole at xi = 2")
    return (1.0 - xi) / (2.0 - xi), 1.0 / (2.0 - xi), xi * (2.0 - xi)


def _gen_fn_router(beta, N, xi, route):
    """Return a callable phi -> GenFnSample for E_{N,beta}((0,phi);xi)."""
    _check_beta(beta)
    if N < 1:
        raise ValueError(f"N must be >= 1, got {N}")
    if route == ROUTE_DETERMINANT:
        precision = "double" if N <= DOUBLE_PRECISION_CAP else "extended"
        return lambda phi: gen_fn(beta, N, phi, xi, precision)
    if route == ROUTE_RECURRENCE:
        if beta != 2:
            raise ValueError("the recurrence route is only available for beta = 2")
        return lambda phi: gen_fn_from_recurrence(N - 1, phi, xi)
    if route in (ROUTE_FREDHOLM, ROUTE_PAINLEVE):
        return _orthogonal_pair_router(beta, N, xi, route)
    raise ValueError(f"unknown generating-function route {route!r}")


def _orthogonal_pair_router(beta, N, xi, route):
    if route == ROUTE_FREDHOLM:
        def e_cue(phi):
            return finite_cue_fredholm(N, phi, xi)

        def e_orth(sign, m, half_phi, x):
            return finite_orthogonal_fredholm(sign, m, half_phi, x)
    else:
        def e_cue(phi):
            t_end = 1.0 / np.tan(phi / 2.0)
            return integrate_sigma_pvi_cue(N, xi, t_end).gen_fn

        def e_orth(sign, m, half_phi, x):
            t_end = np.sin(half_phi / 2.0) ** 2
            return integrate_sigma_pvi_orth(sign, m, x, t_end).gen_fn

    if beta == 2:
        return e_cue
    if beta == 1:
        if N % 2:
            raise ValueError(
                f"the {route} route for beta = 1 needs even N "
                "(odd orthogonal-group kernels only)")
        w_p, w_m, xi2 = _coe_pair(xi)
        m = N // 2

        def sample(phi):
            ep = e_orth("+", m, phi / 2.0, xi2)
            em = e_orth("-", m, phi / 2.0, xi2)
            value = w_p * ep.value + w_m * em.value
            err = abs(w_p) * ep.err_estimate + abs(w_m) * em.err_estimate
            return _Sample(phi, xi, value, route, err)

        return sample
    # beta == 4
    def sample(phi):
        ep = e_orth("+", N, phi / 2.0, xi)
        em = e_orth("-", N, phi / 2.0, xi)
        return _Sample(phi, xi, 0.5 * (ep.value + em.value), route,
                       0.5 * (ep.err_estimate + em.err_estimate))

    return sample


@dataclass(frozen=True)
class _Sample:
    interval_length: float
    xi: complex
    value: complex
    route: str
    err_estimate: float


# -- finite-N assembly ---------------------------------------------------------

def assemble_finite_spectrum(beta, N, omega, route=ROUTE_DETERMINANT,
                             n_panels=None, return_err=False):
    """S_{N,beta}(omega) for 0 < omega <= pi.

    The two moment integrals I_q = (N / 2 pi) int_0^pi (phi / 2 pi)^q
    E_{N,beta}((0,phi); 1 - z) dphi (q = 0, 1; z = e^{i omega}) are computed
    by sampling the generating function at phi = pi k / n_panels and
    integrating the cubic interpolant; the spectrum follows from

        S = -1/(2 sin^2(omega/2)) * ( -Re(I_0 - (1 - z^{-N}) I_1)
                                      + (2/N) (Re(z^{-N/2} I_0))^2 ).
    """
    if not 0.0 < omega <= np.pi:
        raise ValueError(
            f"omega must lie in (0, pi], got {omega}; "
            "use spectrum_at_zero_exact for omega = 0")
    if n_panels is None:
        # the generating function develops structure on the angular scale
        # 1/N, so the sampling density must grow with N
        n_panels = max(200, 4 * N)
    z = np.exp(1j * omega)
    xi = 1.0 - z
    sampler = _gen_fn_router(beta, N, xi, route)
    phis = np.pi * np.arange(n_panels + 1) / n_panels
    values = np.empty(n_panels + 1, dtype=complex)
    errs = np.empty(n_panels + 1)
    values[0], errs[0] = 1.0, 0.0
    for k in range(1, n_panels + 1):
        s = sampler(phis[k])
        values[k], errs[k] = s.value, s.err_estimate
    pref = N / (2.0 * np.pi)
    i0 = pref * integrate(GridFunction(phis, values), 0.0, np.pi)
    i1 = pref * integrate(GridFunction(phis, values * phis / (2.0 * np.pi)), 0.0, np.pi)
    bracket = (-np.real(i0 - (1.0 - z ** (-N)) * i1)
               + (2.0 / N) * np.real(z ** (-N / 2.0) * i0) ** 2)
    value = -bracket / (2.0 * np.sin(omega / 2.0) ** 2)
    if not return_err:
        return value
    err = pref * np.pi * np.max(errs) / (2.0 * np.sin(omega / 2.0) ** 2)
    return value, err


def spectrum_at_zero_exact(beta, N):
    """Closed-form S_{N,beta}(0) in terms of digamma/trigamma values."""
    _check_beta(beta)
    if N < 1:
        raise ValueError(f"N must be >= 1, got {N}")
    g = EULER_GAMMA
    pi2 = np.pi ** 2
    if beta == 2:
        return N / (2.0 * pi2) * (g + digamma(N) + N * polygamma(1, N))
    if beta == 1:
        return N * (-0.125 + (g + digamma(N) + N * polygamma(1, N)
                              + 0.25 * polygamma(1, (N + 1) / 2.0)) / pi2)
    return N * (1.0 / 32.0 + (g + digamma(2 * N) + 2 * N * polygamma(1, 2 * N)
                              - 0.25 * polygamma(1, N + 0.5)) / (4.0 * pi2))


def spectrum_at_zero_variance_integral(beta, N, rule_order=96):
    """S_{N,beta}(0) as (N / 2 pi) int_0^pi Var(#eigenvalues in (0,phi)) dphi,
    an independent route to the closed form of spectrum_at_zero_exact.  The
    variance is analytic in phi, so Gauss-Legendre converges spectrally."""
    _check_beta(beta)
    rule = gauss_legendre(rule_order)
    phis = np.pi * rule.nodes
    total = sum(w * number_variance(beta, N, phi)
                for w, phi in zip(rule.weights, phis))
    return N / 2.0 * total


def spectrum_at_zero_asymptotic(beta, N):
    """Large-N form S_{N,beta}(0) ~ (N / beta pi^2)(log(N/2) + c_beta)."""
    return N / (beta * np.pi ** 2) * (np.log(N / 2.0) + _c_beta(beta))


# -- limiting spectrum ---------------------------------------------------------

_DEFAULT_S_STAR_TARGET = {1: 100.0, 2: 100.0, 4: 50.0}


def assemble_limit_spectrum(beta, omega, s_star_target=None, grid_spacing=0.1,
                            route=ROUTE_FREDHOLM):
    """Limiting power spectrum S_{infty,beta}(omega), 0 < omega <= pi.

    The half-line integral of Re E_{infty,beta}((0,s); 1 - e^{i omega}) is
    split at s*, the largest multiple of 2 pi / omega not exceeding
    s_star_target (so that cos(omega s*) = 1, which stabilises the tail).
    On (0, s*) the integrand is sampled on a lattice of the given spacing and
    integrated via the cubic interpolant; beyond s* it is modelled as
    A s^{-a} cos(omega s) with a = omega^2 / (pi^2 beta) and
    A = (s*)^a Re E(s*), whose integral is known in closed form.

    Returns (value, TailSpec).
    """
    _check_beta(beta)
    if not 0.0 < omega <= np.pi:
        raise ValueError(f"omega must lie in (0, pi], got {omega}")
    if s_star_target is None:
        s_star_target = _DEFAULT_S_STAR_TARGET[beta]
    period = 2.0 * np.pi / omega
    n_periods = int(np.floor(s_star_target / period + 1e-12))
    if n_periods < 1:
        raise ValueError(
            f"s_star_target = {s_star_target} is below one period 2 pi / omega "
            f"= {period}")
    s_star = n_periods * period
    exponent = omega ** 2 / (np.pi ** 2 * beta)
    xi = 1.0 - np.exp(1j * omega)

    n = max(int(round(s_star / grid_spacing)), 8)
    ss = s_star * np.arange(n + 1) / n
    vals = np.empty(n + 1)
    err = 0.0
    for k in range(n + 1):
        sample = _limit_sample(beta, ss[k], xi, route)
        vals[k] = sample.value.real
        err = max(err, sample.err_estimate)
    finite_part = integrate(GridFunction(ss, vals), 0.0, s_star)

    amplitude = s_star ** exponent * vals[-1]
    tail = amplitude * tail_integral(omega, exponent, s_star)
    norm = 2.0 * np.sin(omega / 2.0) ** 2
    value = (finite_part + tail) / norm
    spec = TailSpec(s_star, s_star / n, amplitude, exponent, omega)
    if exponent * np.log(s_star) < 2e-3:
        warnings.warn(
            f"tail amplitude decays slowly (s*^-a = {s_star ** -exponent:.4f}); "
            f"truncation error estimate {abs(tail) / norm:.3e}",
            RuntimeWarning, stacklevel=2)
    return value, spec


def _limit_sample(beta, s, xi, route):
    if route == ROUTE_FREDHOLM:
        return e_inf_beta(beta, s, xi, cross_check=False)
    if route != ROUTE_PAINLEVE:
        raise ValueError(
            f"the limiting spectrum supports the fredholm and painleve routes, got {route!r}")
    if s == 0.0:
        return _Sample(0.0, xi, 1.0 + 0.0j, route, 0.0)

    def e_orth(sign, half_s, x):
        return integrate_sigma_piii(sign, x, (np.pi * half_s) ** 2).gen_fn

    if beta == 2:
        ep = e_orth("+", s / 2.0, xi)
        em = e_orth("-", s / 2.0, xi)
        return _Sample(s, xi, ep.value * em.value, route,
                       abs(em.value) * ep.err_estimate + abs(ep.value) * em.err_estimate)
    if beta == 1:
        w_p, w_m, xi2 = _coe_pair(xi)
        ep = e_orth("+", s / 2.0, xi2)
        em = e_orth("-", s / 2.0, xi2)
        return _Sample(s, xi, w_p * ep.value + w_m * em.value, route,
                       abs(w_p) * ep.err_estimate + abs(w_m) * em.err_estimate)
    ep = e_orth("+", s, xi)
    em = e_orth("-", s, xi)
    return _Sample(s, xi, 0.5 * (ep.value + em.value), route,
                   0.5 * (ep.err_estimate + em.err_estimate))


# -- asymptotic formulas -------------------------------------------------------

def small_omega_asymptote(beta, omega):
    """Singular small-omega expansion of the limiting spectrum:
    1/(pi beta |omega|) + |omega| log|omega| / (pi^3 beta^2), plus the known
    O(|omega|) constant for beta = 2."""
    _check_beta(beta)
    if omega == 0:
        raise ValueError("omega must be nonzero")
    w = abs(omega)
    value = 1.0 / (np.pi * beta * w) + w * np.log(w) / (np.pi ** 3 * beta ** 2)
    if beta == 2:
        value += w * (1.0 / (24.0 * np.pi) - np.log(2.0 * np.pi) / (4.0 * np.pi ** 3))
    return value


def covariance_asymptote(beta, k):
    """Large-separation covariance of bulk spacings:
    cov(s_j, s_{j+k}) ~ -1/(beta pi^2 k^2)
                        - 6/(beta^2 pi^4 k^4) (log(2 pi k) + gamma - 11/6)."""
    _check_beta(beta)
    if k < 1:
        raise ValueError(f"k must be >= 1, got {k}")
    lead = -1.0 / (beta * np.pi ** 2 * k ** 2)
    corr = -6.0 / (beta ** 2 * np.pi ** 4 * k ** 4) * (
        np.log(2.0 * np.pi * k) + EULER_GAMMA - 11.0 / 6.0)
    return lead + corr


def _c_beta(beta):
    g = EULER_GAMMA
    if beta == 1:
        return np.log(2.0) + g + 1.0 - np.pi ** 2 / 8.0
    if beta == 2:
        return np.log(2.0) + g + 1.0
    return 2.0 * np.log(2.0) + g + 1.0 + np.pi ** 2 / 8.0


def number_variance_asymptotic(beta, N, phi):
    """Large-N counting-statistics variance on an arc of opening phi:
    (2 / beta pi^2)(log N + log sin(phi/2) + c_beta)."""
    _check_beta(beta)
    if not 0.0 < phi < 2.0 * np.pi:
        raise ValueError(f"phi must lie in (0, 2 pi), got {phi}")
    return 2.0 / (beta * np.pi ** 2) * (
        np.log(N) + np.log(np.sin(phi / 2.0)) + _c_beta(beta))


# -- reference closed forms for N = 3 (used as pipeline calibration) -----------

def _finite_n3_closed_form(beta, omega):
    p2, p4 = np.pi ** 2, np.pi ** 4
    if beta == 2:
        a = 3.0 * (-81.0 - 72.0 * p2 + 16.0 * p4) / (128.0 * p4)
        b = 3.0 * (-105.0 - 60.0 * p2 + 16.0 * p4) / (160.0 * p4)
        c = 3.0 * (825.0 - 120.0 * p2 + 16.0 * p4) / (640.0 * p4)
    elif beta == 1:
        a = (-225.0 - 60.0 * p2 + 14.0 * p4) / (24.0 * p4)
        b = (p2 - 6.0) / (2.0 * p2)
        c = (225.0 - 48.0 * p2 + 4.0 * p4) / (24.0 * p4)
    else:
        a = (-148225.0 - 110880.0 * p2 + 20736.0 * p4) / (55296.0 * p4)
        b = (-145145.0 - 92400.0 * p2 + 20736.0 * p4) / (69120.0 * p4)
        c = (1321705.0 - 184800.0 * p2 + 20736.0 * p4) / (276480.0 * p4)
    return a + b * np.cos(omega) + c * np.cos(2.0 * omega)
