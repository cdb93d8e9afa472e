"""Independent beta = 2 route: discrete-Painleve-V recurrence for the
coefficients r_n, boundary values of the associated bi-orthogonal polynomials,
and the bridge from unitary to orthogonal-group generating functions."""

from dataclasses import dataclass

import numpy as np

from .exceptions import BranchTrackingError, SmallDivisorError
from .finitedet import GenFnSample, ROUTE_RECURRENCE, EnsembleLabel
from .finitedet import O_PLUS_ODD, O_MINUS_ODD, O_PLUS_EVEN, O_MINUS_EVEN

SMALL_DIVISOR = 1e-13


@dataclass(frozen=True)
class RecurrenceResult:
    """Coefficients r_0..r_{n_max} (r[0] = 1) at fixed half-angle and xi."""

    r: np.ndarray
    phi: float
    xi: complex

    def __len__(self):
        return len(self.r)


def run_recurrence(N, phi, xi, n_max=None):
    """Forward solve of the three-term relation for r_1..r_{n_max} (default N).

    The relation is rearranged for r_{n+1}; divisions by r_n and 1 - r_n^2 are
    guarded and raise SmallDivisorError rather than being regularised."""
    if n_max is None:
        n_max = N
    if n_max < 1:
        raise ValueError(f"need at least one coefficient, got n_max={n_max}")
    denom0 = np.pi - xi * phi
    if abs(denom0) < SMALL_DIVISOR:
        raise SmallDivisorError("r_1 undefined: xi phi = pi")
    r = np.zeros(n_max + 1, dtype=complex)
    r[0] = 1.0
    r[1] = xi * np.sin(phi) / denom0
    two_cos = 2.0 * np.cos(phi)
    for n in range(1, n_max):
        rn, rm1 = r[n], r[n - 1]
        rm2 = r[n - 2] if n >= 2 else 0.0  # r_{-1} = 0
        if abs(rn) < SMALL_DIVISOR:
            raise SmallDivisorError(f"|r_{n}| below threshold during forward solve")
        if abs(1.0 - rn * rn) < SMALL_DIVISOR:
            raise SmallDivisorError(f"|1 - r_{n}^2| below threshold during forward solve")
        lhs = 2.0 * rn * rm1 + two_cos
        if n >= 2:
            if abs(rm1) < SMALL_DIVISOR:
                raise SmallDivisorError(f"|r_{n-1}| below threshold during forward solve")
            lhs += (1.0 - rm1 * rm1) / rm1 * (n * rn + (n - 2) * rm2)
        # n = 1 term vanishes identically: 1 - r_0^2 = 0
        r[n + 1] = (lhs * rn / (1.0 - rn * rn) - (n - 1) * rm1) / (n + 1)
    return RecurrenceResult(r=r, phi=phi, xi=xi)


def gen_fn_from_recurrence(N, two_phi, xi):
    """E_{N+1,2}((0, two_phi); xi) from the recurrence coefficients.

    The product representation uses integer powers, so the value is branch-free
    even for complex xi."""
    phi = two_phi / 2.0
    if xi == 0 or two_phi == 0.0:
        return GenFnSample(two_phi, xi, 1.0 + 0.0j, ROUTE_RECURRENCE, 0.0)
    if N == 0:
        # empty recurrence product: a single uniform eigenangle
        return GenFnSample(two_phi, xi, 1.0 - xi * phi / np.pi, ROUTE_RECURRENCE, 0.0)
    res = run_recurrence(N, phi, xi)
    j = np.arange(1, N + 1)
    factors = 1.0 - res.r[1:N + 1] ** 2
    if np.any(np.abs(factors) < SMALL_DIVISOR):
        raise BranchTrackingError("1 - r_j^2 degenerate along the recurrence")
    log_e = np.sum((N + 1 - j) * np.log(factors)) + (N + 1) * np.log(1.0 - xi * phi / np.pi)
    return GenFnSample(two_phi, xi, np.exp(log_e), ROUTE_RECURRENCE, abs(np.exp(log_e)) * 1e-14 * N)


@dataclass(frozen=True)
class BoundaryPolyValues:
    n: int
    phi_plus: complex   # Phi_n(1)
    phi_minus: complex  # Phi_n(-1)


def boundary_polys(N, phi, xi):
    """Boundary values Phi_n(+-1), n = 0..N, of the monic orthogonal polynomials
    for the weight 1 - xi on (-phi, phi)."""
    if xi == 0:
        return [BoundaryPolyValues(n, 1.0 + 0.0j, complex((-1.0) ** n)) for n in range(N + 1)]
    res = run_recurrence(N, phi, xi, n_max=max(N, 1))
    r = res.r
    plus = np.zeros(N + 1, dtype=complex)
    minus = np.zeros(N + 1, dtype=complex)
    plus[0] = 1.0
    minus[0] = 1.0
    pp_prev, pm_prev = 0.0 + 0.0j, 0.0 + 0.0j  # Phi_{-1}
    for n in range(N):
        rn, rn1 = r[n], r[n + 1]
        if abs(rn) < SMALL_DIVISOR:
            raise SmallDivisorError(f"|r_{n}| below threshold in the polynomial recurrence")
        plus_next = (1.0 + rn1 / rn) * plus[n] + rn1 * (rn - 1.0 / rn) * pp_prev
        minus_next = (-1.0 + rn1 / rn) * minus[n] + rn1 * (-rn + 1.0 / rn) * pm_prev
        pp_prev, pm_prev = plus[n], minus[n]
        plus[n + 1] = plus_next
        minus[n + 1] = minus_next
    return [BoundaryPolyValues(n, plus[n], minus[n]) for n in range(N + 1)]


def _continuity_sqrt(quantity_at, steps=48):
    """sqrt of quantity_at(tau) at tau = 1, branch fixed by continuity from
    the value 1 at tau = 0 along tau in [0, 1]."""
    w = 1.0 + 0.0j
    for tau in np.linspace(0.0, 1.0, steps + 1)[1:]:
        q = quantity_at(tau)
        if abs(q) < 1e-26:
            raise BranchTrackingError("square-root argument passed through 0")
        cand = np.sqrt(q)
        if abs(cand - w) > abs(cand + w):
            cand = -cand
        w = cand
    return w


def orthogonal_from_unitary(label, phi, xi, steps=48):
    """Orthogonal-group generating function assembled from beta = 2 data via
    the unitary-to-orthogonal determinant identities; the square-root branch is
    tracked continuously in xi from the value 1 at xi = 0."""
    if xi == 0 or phi == 0.0:
        return GenFnSample(phi, xi, 1.0 + 0.0j, ROUTE_RECURRENCE, 0.0)
    n = label.n
    if label.kind in (O_PLUS_ODD, O_MINUS_ODD, O_PLUS_EVEN):
        two_n = 2 * n
    elif label.kind == O_MINUS_EVEN:
        two_n = 2 * n
    else:
        raise ValueError(f"orthogonal-group label required, got {label.kind!r}")
    if two_n < 1:
        return GenFnSample(phi, xi, 1.0 + 0.0j, ROUTE_RECURRENCE, 0.0)

    def quantity(tau):
        x = tau * xi
        e2n = gen_fn_from_recurrence(two_n - 1, 2.0 * phi, x).value
        if label.kind == O_PLUS_EVEN:
            polys = boundary_polys(two_n - 1, phi, x)
            p = polys[two_n - 1]
            return e2n / (-p.phi_plus * p.phi_minus)
        polys = boundary_polys(two_n, phi, x)
        p = polys[two_n]
        if label.kind == O_MINUS_EVEN:
            return p.phi_plus * p.phi_minus * e2n
        if label.kind == O_PLUS_ODD:
            return p.phi_plus / p.phi_minus * e2n
        return p.phi_minus / p.phi_plus * e2n

    value = _continuity_sqrt(quantity, steps=steps)
    return GenFnSample(phi, xi, value, ROUTE_RECURRENCE, abs(value) * 1e-12)
