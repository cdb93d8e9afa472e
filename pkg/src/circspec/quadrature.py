"""Gauss-Legendre rules on (0,1), grid-based cubic integration, and the
closed-form oscillatory tail integral used by the truncation correction."""

from dataclasses import dataclass, field

import numpy as np
from scipy.special import gamma

MAX_NODES = 2000


@dataclass(frozen=True)
class QuadratureRule:
    """m-point rule on (0,1) exact for polynomials of degree < order."""

    nodes: np.ndarray
    weights: np.ndarray
    order: int

    def integrate(self, f):
        return np.sum(self.weights * f(self.nodes))


def gauss_legendre(m):
    """m-node Gauss-Legendre rule mapped from (-1,1) to (0,1)."""
    if not isinstance(m, (int, np.integer)) or m < 1 or m > MAX_NODES:
        raise ValueError(f"node count must be an integer in [1, {MAX_NODES}], got {m}")
    t, w = np.polynomial.legendre.leggauss(int(m))
    return QuadratureRule(nodes=(t + 1.0) / 2.0, weights=w / 2.0, order=2 * int(m))


@dataclass(frozen=True)
class GridFunction:
    """Function sampled on a strictly increasing grid; values may be complex."""

    abscissae: np.ndarray
    values: np.ndarray
    spacing_hint: float = field(default=0.0)

    def __post_init__(self):
        x = np.asarray(self.abscissae, dtype=float)
        y = np.asarray(self.values)
        if x.ndim != 1 or y.shape != x.shape:
            raise ValueError("abscissae and values must be 1-d arrays of equal length")
        if np.any(np.diff(x) <= 0):
            raise ValueError("abscissae must be strictly increasing")
        object.__setattr__(self, "abscissae", x)
        object.__setattr__(self, "values", y)

    @property
    def span(self):
        return self.abscissae[0], self.abscissae[-1]


def _cell_weights(ts, lo, hi):
    # Integration weights of the cubic through nodes ts over [lo, hi]:
    # solve V^T w = moments in a shifted/scaled local coordinate.
    c = ts[0]
    h = ts[-1] - ts[0]
    u = (ts - c) / h
    powers = np.arange(4)
    vand = u[:, None] ** powers[None, :]
    a, b = (lo - c) / h, (hi - c) / h
    moments = (b ** (powers + 1) - a ** (powers + 1)) / (powers + 1)
    return h * np.linalg.solve(vand.T, moments)


def integrate(f, a, b):
    """Integral over [a, b] of the piecewise-cubic (4-point local Lagrange)
    interpolant of the grid function f.  [a, b] must lie inside the grid span."""
    x, y = f.abscissae, f.values
    n = len(x)
    if n < 4:
        raise ValueError("grid must have at least 4 points for cubic interpolation")
    lo_span, hi_span = f.span
    tol = 1e-12 * max(1.0, abs(hi_span - lo_span))
    if a < lo_span - tol or b > hi_span + tol:
        raise ValueError(f"[{a}, {b}] outside grid span [{lo_span}, {hi_span}]")
    sign = 1.0
    if b < a:
        a, b, sign = b, a, -1.0
    a = max(a, lo_span)
    b = min(b, hi_span)
    i0 = min(np.searchsorted(x, a, side="right") - 1, n - 2)
    i1 = min(np.searchsorted(x, b, side="left") - 1, n - 2)
    i0 = max(i0, 0)
    i1 = max(i1, 0)
    total = 0.0 + 0.0j if np.iscomplexobj(y) else 0.0
    for i in range(i0, i1 + 1):
        lo = max(a, x[i])
        hi = min(b, x[i + 1])
        if hi <= lo:
            continue
        j0 = min(max(i - 1, 0), n - 4)
        w = _cell_weights(x[j0:j0 + 4], lo, hi)
        total = total + w @ y[j0:j0 + 4]
    return sign * total


def _cos_power_integral_to(omega, exponent, upper):
    # int_0^upper s^(-exponent) cos(omega s) ds, with the integrable
    # endpoint at 0 handled by the substitution s = u^(1/(1-exponent)).
    rule = gauss_legendre(24)
    total = 0.0
    split = min(1.0, upper)
    # (0, split): substitute so the integrand is smooth at the origin
    p = 1.0 - exponent
    umax = split ** p
    uu = rule.nodes * umax
    total += (umax / p) * np.sum(rule.weights * np.cos(omega * uu ** (1.0 / p)))
    if upper > split:
        panel = min(2.0 * np.pi / max(omega, 1e-300) / 8.0, upper - split)
        edges = np.arange(split, upper, panel)
        edges = np.append(edges, upper)
        for lo, hi in zip(edges[:-1], edges[1:]):
            ss = lo + rule.nodes * (hi - lo)
            total += (hi - lo) * np.sum(rule.weights * ss ** (-exponent) * np.cos(omega * ss))
    return total


def cos_power_integral(omega, exponent):
    """Closed form of int_0^inf s^(-exponent) cos(omega s) ds for exponent in (0,1)."""
    return abs(omega) ** (exponent - 1.0) * gamma(1.0 - exponent) * np.sin(np.pi * exponent / 2.0)


def tail_integral(omega, exponent, s_star):
    """int_{s*}^inf s^(-exponent) cos(omega s) ds, via the full-line closed form
    minus numerical quadrature of the finite part over (0, s*)."""
    if not 0.0 < exponent < 1.0:
        raise ValueError(f"exponent must lie in (0,1), got {exponent}")
    if s_star <= 0.0:
        raise ValueError(f"s_star must be positive, got {s_star}")
    if omega <= 0.0:
        raise ValueError(f"omega must be positive, got {omega}")
    return cos_power_integral(omega, exponent) - _cos_power_integral_to(omega, exponent, s_star)
