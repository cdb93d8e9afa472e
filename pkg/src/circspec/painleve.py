"""Sigma-Painleve characterisations: the PVI sigma-forms for the finite-N CUE
and orthogonal-group generating functions, the PIII' sigma-form for the
limiting ones, their tau-function integrals, and the conjectured large-t
asymptote of the PIII' transcendents.

Each sigma-equation is quadratic in the highest derivative; the second
derivative is obtained from the square root whose sign is selected by
continuity with the launch series."""

from dataclasses import dataclass, field

import numpy as np
from scipy.integrate import solve_ivp
from scipy.special import gamma

from .exceptions import SingularityError
from .finitedet import GenFnSample, ROUTE_PAINLEVE

SIGMA_PVI_CUE = "sigma_pvi_cue"
SIGMA_PVI_ORTH = "sigma_pvi_orth"
SIGMA_PIII = "sigma_piii"

# near the double-precision floor: the '-' boundary-condition trajectories
# amplify local solver error, so the integration budget is spent on accuracy
RTOL = 3e-14
ATOL = 1e-16


@dataclass(frozen=True)
class PainleveTrajectory:
    equation: str
    boundary: dict
    t: np.ndarray
    u: np.ndarray
    du: np.ndarray
    d2u: np.ndarray
    tau_integral: complex
    gen_fn: GenFnSample
    tolerance_achieved: float = field(default=RTOL)

    def residuals(self):
        """Defining-equation residual of every stored (t, u, u', u'') sample,
        normalised by the size of the equation's largest term."""
        res, scale = _sigma_residual(self.equation, self.boundary.get("N", 0),
                                     self.t, self.u, self.du, self.d2u)
        return np.abs(res) / np.maximum(scale, 1.0)


def _sigma_residual(equation, N, t, u, du, d2u):
    if equation == SIGMA_PVI_CUE:
        a = ((1.0 + t * t) * d2u) ** 2
        b = 4.0 * du * (u - t * du) ** 2
        c = 4.0 * du ** 2 * (du + N * N)
        return a + b + c, np.abs(a) + np.abs(b) + np.abs(c)
    if equation == SIGMA_PVI_ORTH:
        a = (t * (1.0 - t) * d2u) ** 2
        b = (du - N * N) * (2.0 * u + (1.0 - 2.0 * t) * du) ** 2
        c = -du ** 2 * (du - N * N + 0.25)
        return a + b + c, np.abs(a) + np.abs(b) + np.abs(c)
    if equation == SIGMA_PIII:
        a = (t * d2u) ** 2
        b = -0.25 * du ** 2
        c = du * (4.0 * du - 1.0) * (u - t * du)
        return a + b + c, np.abs(a) + np.abs(b) + np.abs(c)
    raise ValueError(f"unknown equation {equation!r}")


def _make_rhs(third_derivative, tau_weight):
    """RHS of the system (u, u', u'', I): the sigma-equation differentiated
    once gives u''' explicitly, avoiding square-root branch selection; the
    tau integral accumulates in the fourth component."""

    def rhs(t, y):
        u, du, d2u = y[0], y[1], y[2]
        return [du, d2u, third_derivative(t, u, du, d2u), u * tau_weight(t)]

    return rhs


def _solve(rhs, t0, t1, y0, n_samples, equation):
    sol = solve_ivp(rhs, (t0, t1), np.asarray(y0, dtype=complex),
                    method="DOP853", rtol=RTOL, atol=ATOL, dense_output=True)
    if not sol.success:
        raise SingularityError(
            f"{equation}: integrator stopped at t = {sol.t[-1]:.6g}: {sol.message}",
            t_estimate=float(sol.t[-1]),
        )
    ts = np.linspace(t0, t1, n_samples)
    ys = sol.sol(ts)
    return ts, ys, sol


def _solve_in_sqrt(rhs, t0, t1, y0, n_samples, equation):
    """Integrate the same (u, u', u'', I) system in the variable x = sqrt(t),
    which regularises the half-integer-power behaviour at small t."""

    def rhs_x(x, y):
        return [2.0 * x * d for d in rhs(x * x, y)]

    x0, x1 = np.sqrt(t0), np.sqrt(t1)
    sol = solve_ivp(rhs_x, (x0, x1), np.asarray(y0, dtype=complex),
                    method="DOP853", rtol=RTOL, atol=ATOL, dense_output=True)
    if not sol.success:
        raise SingularityError(
            f"{equation}: integrator stopped at t = {sol.t[-1] ** 2:.6g}: {sol.message}",
            t_estimate=float(sol.t[-1] ** 2),
        )
    xs = np.linspace(x0, x1, n_samples)
    ys = sol.sol(xs)
    return xs * xs, ys, sol


def _cue_series_coeffs(c, n2):
    """Coefficients a_k of the large-t expansion u = sum_k a_k t^{-k} of the
    CUE sigma-PVI transcendent, with c = xi N / pi and n2 = N^2.  Obtained by
    matching inverse powers of t in the defining equation."""
    c2, c3 = c * c, c ** 3
    return (
        c,
        c2,
        c3,
        c2 * (9.0 * c2 - n2 - 2.0) / 9.0,
        c3 * (36.0 * c2 - 5.0 * n2 - 19.0) / 36.0,
        c2 * (4.0 * n2 ** 2 - 75.0 * n2 * c2 + 40.0 * n2
              + 450.0 * c2 ** 2 - 375.0 * c2 + 46.0) / 450.0,
        c3 * (28.0 * n2 ** 2 - 525.0 * n2 * c2 + 430.0 * n2
              + 2700.0 * c2 ** 2 - 3075.0 * c2 + 922.0) / 2700.0,
        c2 * (-180.0 * n2 ** 3 + 5929.0 * n2 ** 2 * c2 - 5040.0 * n2 ** 2
              - 88200.0 * n2 * c2 ** 2 + 96040.0 * n2 * c2 - 27720.0 * n2
              + 396900.0 * c3 ** 2 - 573300.0 * c2 ** 2 + 268471.0 * c2
              - 23760.0) / 396900.0,
    )


def integrate_sigma_pvi_cue(N, xi, t_end, t_start=None, n_samples=200):
    """Finite-N CUE sigma-PVI trajectory on [t_end, t_start], integrated inward
    from the large-t series launch; returns the trajectory together with the
    tau-integral evaluation E_{N,2}((0,phi);xi), phi = 2 arccot(t_end)."""
    if t_end <= 0:
        raise ValueError(f"t_end must be positive, got {t_end}")
    if xi == 0:
        phi = 2.0 * np.arctan(1.0 / t_end)
        return PainleveTrajectory(
            SIGMA_PVI_CUE, {"N": N, "xi": xi, "series": "large-t"},
            np.array([t_end]), np.zeros(1, complex), np.zeros(1, complex),
            np.zeros(1, complex), 0.0, GenFnSample(phi, xi, 1.0 + 0.0j, ROUTE_PAINLEVE, 0.0))
    c = xi * N / np.pi
    if t_start is None:
        t_start = max(400.0, 40.0 * N / max(abs(xi), 1e-2), 4.0 * t_end)
    T = t_start
    n2 = float(N * N)
    coeffs = _cue_series_coeffs(c, n2)
    u0 = sum(a / T ** k for k, a in enumerate(coeffs))
    du0 = sum(-k * a / T ** (k + 1) for k, a in enumerate(coeffs))
    d2u0 = sum(k * (k + 1) * a / T ** (k + 2) for k, a in enumerate(coeffs))

    def d3u(t, u, du, d2u):
        w = u - t * du
        return -(2.0 * t * (1.0 + t * t) * d2u
                 + 2.0 * (w * w - 2.0 * t * du * w + du * (3.0 * du + 2.0 * n2))
                 ) / (1.0 + t * t) ** 2

    rhs = _make_rhs(d3u, lambda t: 1.0 / (1.0 + t * t))
    ts, ys, _ = _solve(rhs, T, t_end, [u0, du0, d2u0, 0.0], n_samples, SIGMA_PVI_CUE)
    # tau-integral tail over (t_start, infinity) from the boundary series:
    # int_T^inf t^{-k}/(1+t^2) dt expanded in inverse powers of T
    tail = coeffs[0] * (np.pi / 2.0 - np.arctan(T))
    for k, a in enumerate(coeffs):
        if k == 0:
            continue
        tail += a * sum((-1.0) ** j * T ** (-(k + 1 + 2 * j)) / (k + 1 + 2 * j)
                        for j in range(9))
    integral = -ys[3, -1] + tail  # ys[3] accumulated from T downward
    phi = 2.0 * np.arctan(1.0 / t_end)
    value = np.exp(-integral)
    next_term = abs(coeffs[-1]) * max(abs(c), 1.0) / (8.0 * T ** 8)
    return PainleveTrajectory(
        SIGMA_PVI_CUE, {"N": N, "xi": xi, "t_start": T, "series": "large-t"},
        ts, ys[0], ys[1], ys[2], integral,
        GenFnSample(phi, xi, value, ROUTE_PAINLEVE, abs(value) * max(1e-12, next_term)))


def _small_t_series(equation, sign, c, n2, nterms):
    """Small-t expansion u = sum_j U[j] x^j, x = sqrt(t), of the sigma-PVI
    orthogonal or sigma-PIII' transcendent, with leading term c x^L (L = 1
    for sign '-', 3 for '+').  Coefficients are matched order by order: the
    unknown at each order enters the cleared defining equation linearly.
    The matching arithmetic cancels catastrophically in double precision,
    so it runs in extended precision."""
    import mpmath

    lead = 3 if sign == "+" else 1
    top = lead + nterms + 8

    def mul(a, b):
        out = [mpmath.mpc(0)] * top
        for i, av in enumerate(a):
            if av == 0:
                continue
            for k in range(min(top - i, top)):
                if b[k] != 0:
                    out[i + k] += av * b[k]
        return out

    def shift(a, d):
        return [mpmath.mpc(0)] * d + a[:top - d]

    def add(*arrs):
        return [sum(vals) for vals in zip(*arrs)]

    def scale(a, f):
        return [f * v for v in a]

    with mpmath.workdps(45):
        cc = mpmath.mpc(c)
        nn = mpmath.mpf(n2)
        U = [mpmath.mpc(0)] * top
        U[lead] = cc
        x = [mpmath.mpc(0)] * top
        x[1] = mpmath.mpc(1)

        def cleared_eq(U):
            B = [mpmath.mpc(0)] * top   # x * du/dt
            C = [mpmath.mpc(0)] * top   # x^3 * d2u/dt2
            for i in range(top - 1):
                B[i] = U[i + 1] * (i + 1) / 2
                C[i] = U[i + 1] * (i + 1) * (i - 1) / 4
            if equation == SIGMA_PVI_ORTH:
                # x^6 * sigma-equation, all powers nonnegative
                one = [mpmath.mpc(0)] * top
                one[0], one[2] = mpmath.mpc(1), mpmath.mpc(-1)
                w = add(scale(shift(U, 1), 2), B, scale(shift(B, 2), -2))
                t1 = shift(mul(mul(one, one), mul(C, C)), 4)
                bminus = add(B, scale(x, -nn))
                t2 = mul(bminus, mul(w, w))
                bq = add(B, scale(x, -(nn - mpmath.mpf(1) / 4)))
                t3 = mul(mul(B, B), bq)
                t23 = shift(add(t2, scale(t3, -1)), 3)
                return add(t1, t23)
            # x^4 * sigma-PIII' equation
            t1 = add(mul(C, C), scale(mul(B, B), -mpmath.mpf(1) / 4))
            t2 = mul(mul(B, add(scale(B, 4), scale(x, -1))),
                     add(U, scale(mul(x, B), -1)))
            return shift(add(t1, t2), 4)

        match_index = None
        for k in range(1, nterms + 1):
            m = lead + k
            U[m] = mpmath.mpc(0)
            g0 = cleared_eq(U)
            U[m] = mpmath.mpc(1)
            g1 = cleared_eq(U)
            diff = [a - b for a, b in zip(g1, g0)]
            if match_index is None:
                # locate the linear entry once; it advances by one per order
                big = max(abs(d) for d in diff)
                match_index = next(i for i, d in enumerate(diff)
                                   if abs(d) > 1e-9 * big)
            i = match_index + (k - 1)
            U[m] = -g0[i] / diff[i] if diff[i] != 0 else mpmath.mpc(0)
        out = np.array([complex(v) for v in U])
    return out, lead


def _series_launch(U, t0):
    """(u, du/dt, d2u/dt2, next-term size) at t0 from the x-power series."""
    x = np.sqrt(t0)
    j = np.arange(U.size)
    powers = U * x ** j
    u = powers.sum()
    du = (powers * j / 2.0).sum() / t0
    d2u = (powers * j * (j - 2.0) / 4.0).sum() / (t0 * t0)
    return u, du, d2u


def integrate_sigma_pvi_orth(sign, N, xi, t_end, t_launch=None, n_samples=200):
    """Orthogonal-group sigma-PVI trajectory on (0, t_end), t_end = sin^2(phi/2);
    returns E^{O^sign(2N+1)}((0,phi);xi) from the tau integral."""
    if not 0.0 < t_end < 1.0:
        raise ValueError(f"t_end must lie in (0,1), got {t_end}")
    if sign not in "+-":
        raise ValueError(f"sign must be '+' or '-', got {sign!r}")
    phi = 2.0 * np.arcsin(np.sqrt(t_end))
    if xi == 0:
        return PainleveTrajectory(
            SIGMA_PVI_ORTH, {"N": N, "xi": xi, "sign": sign},
            np.array([t_end]), np.zeros(1, complex), np.zeros(1, complex),
            np.zeros(1, complex), 0.0, GenFnSample(phi, xi, 1.0 + 0.0j, ROUTE_PAINLEVE, 0.0))
    n2 = float(N * N)
    if t_launch is None:
        t_launch = min(1e-2, (0.08 / N) ** 2)
    t0 = min(t_launch, 0.5 * t_end)
    if sign == "+":
        c = 8.0 * N * (n2 - 0.25) * xi / (3.0 * np.pi)
    else:
        c = 2.0 * N * xi / np.pi
    U, lead = _small_t_series(SIGMA_PVI_ORTH, sign, c, n2, 16)
    u0, du0, d2u0 = _series_launch(U, t0)

    def d3u(t, u, du, d2u):
        w = 2.0 * u + (1.0 - 2.0 * t) * du
        return -(2.0 * t * (1.0 - t) * (1.0 - 2.0 * t) * d2u
                 + w * w + 2.0 * (1.0 - 2.0 * t) * (du - n2) * w
                 - du * (3.0 * du - 2.0 * n2 + 0.5)
                 ) / (2.0 * (t * (1.0 - t)) ** 2)

    rhs = _make_rhs(d3u, lambda t: 1.0 / (t * (t - 1.0)))
    ts, ys, _ = _solve_in_sqrt(rhs, t0, t_end, [u0, du0, d2u0, 0.0], n_samples, SIGMA_PVI_ORTH)
    # endpoint contribution over (0, t0), with 1/(t(t-1)) = -t^{-1}(1+t+...)
    x0 = np.sqrt(t0)
    head = -2.0 * sum(b * x0 ** (k + 2 * j) / (k + 2 * j)
                      for k, b in enumerate(U) if b != 0.0 for j in range(9))
    integral = ys[3, -1] + head
    value = np.exp(integral)
    next_term = abs(U[lead + 16]) * max(abs(c), 1.0) * x0 ** (lead + 17)
    return PainleveTrajectory(
        SIGMA_PVI_ORTH, {"N": N, "xi": xi, "sign": sign, "t_launch": t0},
        ts, ys[0], ys[1], ys[2], integral,
        GenFnSample(phi, xi, value, ROUTE_PAINLEVE, abs(value) * max(1e-12, next_term)))


def integrate_sigma_piii(sign, xi, t_end, t_launch=1e-8, n_samples=400):
    """Limiting sigma-PIII' trajectory on (0, t_end), t_end = (pi s)^2; returns
    E^{O^sign}((0,s);xi) from the tau integral."""
    if t_end <= 0:
        raise ValueError(f"t_end must be positive, got {t_end}")
    if sign not in "+-":
        raise ValueError(f"sign must be '+' or '-', got {sign!r}")
    s = np.sqrt(t_end) / np.pi
    if xi == 0:
        return PainleveTrajectory(
            SIGMA_PIII, {"N": 0, "xi": xi, "sign": sign},
            np.array([t_end]), np.zeros(1, complex), np.zeros(1, complex),
            np.zeros(1, complex), 0.0, GenFnSample(s, xi, 1.0 + 0.0j, ROUTE_PAINLEVE, 0.0))
    if t_launch is None:
        t_launch = 1e-2 / (1.0 + abs(xi)) ** 2
    t0 = min(t_launch, 0.5 * t_end)
    if sign == "+":
        c = xi / (3.0 * np.pi)
    else:
        c = xi / np.pi
    U, lead = _small_t_series(SIGMA_PIII, sign, c, 0.0, 16)
    u0, du0, d2u0 = _series_launch(U, t0)

    def d3v(t, v, dv, d2v):
        return -(2.0 * t * d2v - 0.5 * dv
                 + (8.0 * dv - 1.0) * (v - t * dv) - t * dv * (4.0 * dv - 1.0)
                 ) / (2.0 * t * t)

    rhs = _make_rhs(d3v, lambda t: 1.0 / t)
    ts, ys, _ = _solve_in_sqrt(rhs, t0, t_end, [u0, du0, d2u0, 0.0], n_samples, SIGMA_PIII)
    # endpoint contribution of int_0^{t0} v/t dt from the launch series
    x0 = np.sqrt(t0)
    head = 2.0 * sum(b * x0 ** k / k for k, b in enumerate(U) if k > 0)
    integral = ys[3, -1] + head
    value = np.exp(-integral)
    next_term = abs(U[lead + 16]) * max(abs(c), 1.0) * x0 ** (lead + 17)
    return PainleveTrajectory(
        SIGMA_PIII, {"N": 0, "xi": xi, "sign": sign, "t_launch": t0},
        ts, ys[0], ys[1], ys[2], integral,
        GenFnSample(s, xi, value, ROUTE_PAINLEVE, abs(value) * max(1e-12, next_term)))


def sigma_piii_conjectured_asymptote(sign, omega, t):
    """Conjectured large-t form of the sigma-PIII' transcendent at
    xi = 1 - e^{i omega}, as a ratio of two trigonometric-Gamma expressions.

    At omega = pi the expression reduces to the pole-bearing limit, which is
    returned (the caller should treat it as a flagged boundary case)."""
    t = np.asarray(t, dtype=float)
    if np.any(t <= 0):
        raise ValueError("t must be positive")
    if sign not in "+-":
        raise ValueError(f"sign must be '+' or '-', got {sign!r}")
    eps = 1.0 if sign == "+" else -1.0
    rt = np.sqrt(t)
    if np.isclose(omega, np.pi):
        e = np.exp(-2j * rt)
        return 0.5j * rt * (e + eps * 1j) / (e - eps * 1j)
    if not 0.0 <= omega < np.pi:
        raise ValueError(f"omega must lie in [0, pi], got {omega}")
    w = omega / (2.0 * np.pi)

    def osc(wt):
        return np.sin(np.pi * wt) * gamma(1.0 - wt) ** 2 * (4.0 * rt) ** (2.0 * wt) * np.exp(-2j * rt)

    pair_a = osc(w) + np.conjugate(osc(-w))
    a = (-1j * w * (rt - np.sin(2.0 * rt) ** 2 / (4.0 * rt) * w)
         + 0.5 * w * w
         - eps * (1.0 - w) / (4.0 * np.pi) * pair_a)
    pair_b = osc(w) / (4.0 * rt) + np.conjugate(osc(-w) / (4.0 * rt))
    b = 1.0 + 1j * eps / np.pi * pair_b
    return a / b
