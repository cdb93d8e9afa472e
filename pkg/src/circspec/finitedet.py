"""Finite-N gap-probability generating functions via structured determinants:
the Toeplitz sinc determinant for beta = 2, the four Hankel +/- Toeplitz
orthogonal-group determinants, and the COE/CSE linear combinations built from
them.  Also houses the closed-form xi-series coefficients and the exact
finite-N number variance derived from them."""

from dataclasses import dataclass

import numpy as np
from scipy.linalg import toeplitz

from .exceptions import PoleError, PrecisionEscalationRequired

DOUBLE_PRECISION_CAP = 150

ROUTE_DETERMINANT = "determinant"
ROUTE_RECURRENCE = "recurrence"
ROUTE_FREDHOLM = "fredholm"
ROUTE_PAINLEVE = "painleve"

# label kinds; n is the determinant size N of Lemma-style formulas, so the
# group dimensions are 2n+1, 2n+1, 2n, 2n+2 respectively
CIRCULAR = "circular"
O_PLUS_ODD = "o_plus_odd"      # O^+(2n+1)
O_MINUS_ODD = "o_minus_odd"    # O^-(2n+1)
O_PLUS_EVEN = "o_plus_even"    # O^+(2n)
O_MINUS_EVEN = "o_minus_even"  # O^-(2n+2)

_ORTHOGONAL_KINDS = (O_PLUS_ODD, O_MINUS_ODD, O_PLUS_EVEN, O_MINUS_EVEN)


@dataclass(frozen=True)
class EnsembleLabel:
    kind: str
    n: int = 0
    beta: int = 0

    def __post_init__(self):
        if self.kind == CIRCULAR:
            if self.beta not in (1, 2, 4):
                raise ValueError(f"beta must be 1, 2 or 4, got {self.beta}")
        elif self.kind in _ORTHOGONAL_KINDS:
            # O^-(2n+2) admits n = 0 (the group O^-(2), with no free eigenvalues)
            floor = 0 if self.kind == O_MINUS_EVEN else 1
            if self.n < floor:
                raise ValueError(f"determinant size must be >= {floor}, got {self.n}")
        else:
            raise ValueError(f"unknown ensemble kind {self.kind!r}")

    @staticmethod
    def circular(beta, n):
        return EnsembleLabel(CIRCULAR, n=n, beta=beta)

    @property
    def group_dimension(self):
        return {
            O_PLUS_ODD: 2 * self.n + 1,
            O_MINUS_ODD: 2 * self.n + 1,
            O_PLUS_EVEN: 2 * self.n,
            O_MINUS_EVEN: 2 * self.n + 2,
        }[self.kind]


@dataclass(frozen=True)
class GenFnSample:
    """One value of a generating function E(interval; xi) with provenance."""

    interval_length: float
    xi: complex
    value: complex
    route: str
    err_estimate: float = 0.0


def _det_with_err(mat):
    value = np.linalg.det(mat)
    # condition-number heuristic for rounding loss in the LU factorisation
    try:
        cond = np.linalg.cond(mat, 1)
    except np.linalg.LinAlgError:
        cond = np.inf
    err = abs(value) * abs(cond) * np.finfo(float).eps * mat.shape[0]
    return value, err


def _det_extended(mat, dps=50):
    import mpmath

    with mpmath.workdps(dps):
        mm = mpmath.matrix(mat.shape[0], mat.shape[1])
        for i in range(mat.shape[0]):
            for j in range(mat.shape[1]):
                mm[i, j] = mpmath.mpc(mat[i, j])
        return complex(mpmath.det(mm))


def cue_toeplitz_matrix(N, phi, xi):
    """N x N Toeplitz matrix whose determinant is E_{N,2}((0,phi);xi)."""
    k = np.arange(N)
    col = np.empty(N, dtype=complex)
    col[0] = 1.0 - xi * phi / (2.0 * np.pi)
    if N > 1:
        col[1:] = -xi * np.sin(k[1:] * phi / 2.0) / (np.pi * k[1:])
    # pass the row explicitly: one-argument toeplitz() conjugates complex input
    return toeplitz(col, col)


def cue_gen_fn(N, phi, xi, precision="double"):
    """Generating function E_{N,2}((0,phi);xi) via the sinc Toeplitz determinant."""
    if N < 1:
        raise ValueError(f"N must be >= 1, got {N}")
    if precision not in ("double", "extended"):
        raise ValueError(f"precision must be 'double' or 'extended', got {precision!r}")
    if xi == 0 or phi == 0.0:
        return GenFnSample(phi, xi, 1.0 + 0.0j, ROUTE_DETERMINANT, 0.0)
    mat = cue_toeplitz_matrix(N, phi, xi)
    if precision == "extended":
        return GenFnSample(phi, xi, _det_extended(mat), ROUTE_DETERMINANT, 1e-30)
    if N > DOUBLE_PRECISION_CAP:
        raise PrecisionEscalationRequired(
            f"N={N} exceeds the double-precision cap {DOUBLE_PRECISION_CAP}; "
            "pass precision='extended'"
        )
    value, err = _det_with_err(mat)
    return GenFnSample(phi, xi, value, ROUTE_DETERMINANT, err)


def _fourier_coeffs(j, phi, xi):
    """a_j = delta_{j,0} - xi sin(j phi)/(pi j), the j=0 entry read as phi/pi."""
    j = np.abs(np.asarray(j))
    out = np.where(
        j == 0,
        1.0 - xi * phi / np.pi,
        -xi * np.sin(j * phi) / (np.pi * np.maximum(j, 1)),
    )
    return out.astype(complex)


def orthogonal_matrix(label, phi, xi):
    """Hankel +/- Toeplitz matrix for the orthogonal-group generating function."""
    n = label.n
    j = np.arange(1, n + 1)
    J, K = np.meshgrid(j, j, indexing="ij")
    a = lambda idx: _fourier_coeffs(idx, phi, xi)
    if label.kind == O_MINUS_ODD:
        return a(J - K) + a(J + K - 1)
    if label.kind == O_PLUS_ODD:
        return a(J - K) - a(J + K - 1)
    if label.kind == O_PLUS_EVEN:
        return a(J - K) + a(J + K - 2)
    if label.kind == O_MINUS_EVEN:
        return a(J - K) - a(J + K)
    raise ValueError(f"not an orthogonal-group label: {label.kind!r}")


def orthogonal_gen_fn(label, phi, xi, precision="double"):
    """Generating function E^{O^sign(dim)}((0,phi);xi) via Hankel +/- Toeplitz
    determinants; the O^+(2n) case carries the prefactor 1/2."""
    if label.kind not in _ORTHOGONAL_KINDS:
        raise ValueError(f"orthogonal-group label required, got {label.kind!r}")
    prefactor = 0.5 if label.kind == O_PLUS_EVEN else 1.0
    if label.n == 0 or xi == 0 or phi == 0.0:
        return GenFnSample(phi, xi, 1.0 + 0.0j, ROUTE_DETERMINANT, 0.0)
    mat = orthogonal_matrix(label, phi, xi)
    if precision == "extended":
        return GenFnSample(phi, xi, prefactor * _det_extended(mat), ROUTE_DETERMINANT, 1e-30)
    if label.n > DOUBLE_PRECISION_CAP:
        raise PrecisionEscalationRequired(
            f"determinant size {label.n} exceeds the double-precision cap; "
            "pass precision='extended'"
        )
    value, err = _det_with_err(mat)
    return GenFnSample(phi, xi, prefactor * value, ROUTE_DETERMINANT, prefactor * err)


def _coe_orthogonal_labels(N):
    # O^{nu}(N+1) and O^{-nu}(N+1) with nu = (-1)^N, mapped onto label kinds
    dim = N + 1
    if N % 2 == 0:  # nu = +
        m = (dim - 1) // 2
        return EnsembleLabel(O_PLUS_ODD, n=m), EnsembleLabel(O_MINUS_ODD, n=m)
    # nu = -: O^-(even dim) and O^+(even dim)
    return (
        EnsembleLabel(O_MINUS_EVEN, n=dim // 2 - 1),
        EnsembleLabel(O_PLUS_EVEN, n=dim // 2),
    )


def coe_gen_fn(N, phi, xi, precision="double"):
    """E^{COE_N}((0,phi);xi) as the weighted pair of orthogonal-group
    determinants at half angle and doubled parameter xi(2-xi)."""
    if N < 1:
        raise ValueError(f"N must be >= 1, got {N}")
    if xi == 2:
        raise PoleError("the COE combination has a pole at xi = 2")
    if xi == 0 or phi == 0.0:
        return GenFnSample(phi, xi, 1.0 + 0.0j, ROUTE_DETERMINANT, 0.0)
    lab_nu, lab_mnu = _coe_orthogonal_labels(N)
    xi2 = xi * (2.0 - xi)
    e_nu = orthogonal_gen_fn(lab_nu, phi / 2.0, xi2, precision)
    e_mnu = orthogonal_gen_fn(lab_mnu, phi / 2.0, xi2, precision)
    value = (1.0 - xi) / (2.0 - xi) * e_nu.value + e_mnu.value / (2.0 - xi)
    err = abs((1.0 - xi) / (2.0 - xi)) * e_nu.err_estimate + abs(1.0 / (2.0 - xi)) * e_mnu.err_estimate
    return GenFnSample(phi, xi, value, ROUTE_DETERMINANT, err)


def cse_gen_fn(N, phi, xi, precision="double"):
    """E^{CSE_N}((0,phi);xi) as the mean of the two odd orthogonal determinants
    at half angle."""
    if N < 1:
        raise ValueError(f"N must be >= 1, got {N}")
    if xi == 0 or phi == 0.0:
        return GenFnSample(phi, xi, 1.0 + 0.0j, ROUTE_DETERMINANT, 0.0)
    e_p = orthogonal_gen_fn(EnsembleLabel(O_PLUS_ODD, n=N), phi / 2.0, xi, precision)
    e_m = orthogonal_gen_fn(EnsembleLabel(O_MINUS_ODD, n=N), phi / 2.0, xi, precision)
    value = 0.5 * (e_p.value + e_m.value)
    return GenFnSample(phi, xi, value, ROUTE_DETERMINANT,
                       0.5 * (e_p.err_estimate + e_m.err_estimate))


def gen_fn(beta, N, phi, xi, precision="double"):
    """Dispatch to the determinant route for the circular beta ensemble."""
    if beta == 2:
        return cue_gen_fn(N, phi, xi, precision)
    if beta == 1:
        return coe_gen_fn(N, phi, xi, precision)
    if beta == 4:
        return cse_gen_fn(N, phi, xi, precision)
    raise ValueError(f"beta must be 1, 2 or 4, got {beta}")


# -- closed-form xi-series coefficients (through second order) ---------------

def cue_xi_series(N, interval):
    """(c1, c2) with E_{N,2}((0,interval);xi) = 1 + c1 xi + c2 xi^2 + O(xi^3)."""
    h = interval / 2.0
    c1 = -N * h / np.pi
    j = np.arange(1, N)
    c2 = N * (N - 1) * h * h / (2.0 * np.pi ** 2)
    if N > 1:
        c2 -= np.sum((N - j) * np.sin(j * h) ** 2 / j ** 2) / np.pi ** 2
    return c1, c2


def coe_xi_series(N, phi):
    """(c1, c2) for E^{COE_N}((0,phi);xi), split by the parity of N."""
    if N % 2 == 0:
        M = N // 2
        j = np.arange(1, 2 * M)
        k = np.arange(1, M + 1)
        half_sum = np.sum(np.sin((k - 0.5) * phi) / (k - 0.5))
        c1 = -M * phi / np.pi
        c2 = (
            M * (M - 1) * phi ** 2 / (2.0 * np.pi ** 2)
            + M * phi / (2.0 * np.pi)
            - 2.0 / np.pi ** 2 * np.sum((2 * M - j) * np.sin(0.5 * j * phi) ** 2 / j ** 2)
            + half_sum ** 2 / (2.0 * np.pi ** 2)
            - half_sum / (2.0 * np.pi)
        )
        return c1, c2
    M = (N - 1) // 2
    j = np.arange(1, 2 * M + 2)
    c1 = -(2 * M + 1) * phi / (2.0 * np.pi)
    int_sum = np.sum(np.sin(np.arange(1, M + 1) * phi) / np.arange(1, M + 1)) if M >= 1 else 0.0
    c2 = (
        M ** 2 * phi ** 2 / (2.0 * np.pi ** 2)
        + M * phi / (2.0 * np.pi)
        - 2.0 / np.pi ** 2 * np.sum((2 * M + 1 - j) * np.sin(0.5 * j * phi) ** 2 / j ** 2)
        + int_sum ** 2 / (2.0 * np.pi ** 2)
        + (phi - np.pi) * int_sum / (2.0 * np.pi ** 2)
    )
    return c1, c2


def cse_xi_series(N, phi):
    """(c1, c2) for E^{CSE_N}((0,phi);xi)."""
    j = np.arange(1, 2 * N)
    k = np.arange(1, N + 1)
    half_sum = np.sum(np.sin((k - 0.5) * phi) / (k - 0.5))
    c1 = -N * phi / (2.0 * np.pi)
    c2 = (
        N * (N - 1) * phi ** 2 / (8.0 * np.pi ** 2)
        - np.sum((N - 0.5 * j) * np.sin(0.5 * j * phi) ** 2 / j ** 2) / np.pi ** 2
        + half_sum ** 2 / (8.0 * np.pi ** 2)
    )
    return c1, c2


def xi_series(beta, N, phi):
    if beta == 2:
        return cue_xi_series(N, phi)
    if beta == 1:
        return coe_xi_series(N, phi)
    if beta == 4:
        return cse_xi_series(N, phi)
    raise ValueError(f"beta must be 1, 2 or 4, got {beta}")


def number_variance(beta, N, phi):
    """Exact variance of the eigenvalue count in (0,phi), from the closed-form
    xi^2 coefficients: Var = 2 c2 + m - m^2 with mean m = N phi / (2 pi)."""
    if not 0.0 < phi < 2.0 * np.pi:
        raise ValueError(f"phi must lie in (0, 2 pi), got {phi}")
    c1, c2 = xi_series(beta, N, phi)
    mean = N * phi / (2.0 * np.pi)
    if not np.isclose(-c1, mean, rtol=1e-12, atol=1e-12):
        raise AssertionError("series mean inconsistent with N phi / (2 pi)")
    return 2.0 * c2 + mean - mean ** 2
