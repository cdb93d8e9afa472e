"""Command-line front end: spectrum tabulation, generating-function profiles,
and cross-route validation reports, emitted as CSV or JSON."""

import argparse
import json
import os
import re
import sys
import tempfile
import time
from concurrent.futures import ThreadPoolExecutor

import numpy as np

from .exceptions import CircspecError
from .finitedet import (
    ROUTE_DETERMINANT,
    ROUTE_FREDHOLM,
    ROUTE_PAINLEVE,
    ROUTE_RECURRENCE,
    gen_fn,
)
from .fredholm import e_inf_beta, e_orthogonal_limit
from .painleve import integrate_sigma_piii, sigma_piii_conjectured_asymptote
from .recurrence import gen_fn_from_recurrence
from .spectrum import (
    assemble_finite_spectrum,
    assemble_limit_spectrum,
    spectrum_at_zero_exact,
)

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_NUMERICAL = 3

_ROUTES = (ROUTE_DETERMINANT, ROUTE_RECURRENCE, ROUTE_FREDHOLM, ROUTE_PAINLEVE)

_ANGLE_RE = re.compile(r"^(\d+(?:\.\d*)?)?pi(?:/(\d+(?:\.\d*)?))?$")


class UsageError(Exception):
    pass


def parse_angle(text):
    """Parse an angle literal: a decimal, `pi`, or forms like `2pi/25`, `pi/4`."""
    text = text.strip().lower()
    m = _ANGLE_RE.match(text)
    if m:
        num = float(m.group(1)) if m.group(1) else 1.0
        den = float(m.group(2)) if m.group(2) else 1.0
        return num * np.pi / den
    try:
        return float(text)
    except ValueError:
        raise UsageError(f"cannot parse angle literal {text!r}") from None


def _fmt(x):
    return format(float(x), ".12g")


def _n_jobs(args):
    if args.jobs is not None:
        return max(args.jobs, 1)
    env = os.environ.get("CIRCSPEC_THREADS", "")
    try:
        return max(int(env), 1)
    except ValueError:
        return 1


def _pmap(fn, items, jobs):
    if jobs <= 1 or len(items) <= 1:
        return [fn(x) for x in items]
    with ThreadPoolExecutor(max_workers=jobs) as pool:
        return list(pool.map(fn, items))  # map preserves input order


def _write_output(path, header, rows, config, fmt):
    """Emit rows as CSV or JSON; file output is atomic (write-then-rename)."""
    if fmt == "json":
        payload = {"config": config,
                   "rows": [dict(zip(header, r)) for r in rows]}
        text = json.dumps(payload, indent=2) + "\n"
    else:
        lines = [",".join(header)]
        lines += [",".join(str(c) for c in r) for r in rows]
        text = "\n".join(lines) + "\n"
    if path is None:
        sys.stdout.write(text)
        return
    directory = os.path.dirname(os.path.abspath(path))
    fd, tmp = tempfile.mkstemp(dir=directory, suffix=".tmp")
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def _omega_list(args):
    if args.omega is not None:
        return [parse_angle(args.omega)]
    if args.omega_grid is not None:
        try:
            step_text, count_text = args.omega_grid.rsplit(":", 1)
            count = int(count_text)
        except ValueError:
            raise UsageError(
                f"omega grid must be STEP:COUNT, got {args.omega_grid!r}") from None
        if count < 1:
            raise UsageError(f"omega grid count must be >= 1, got {count}")
        step = parse_angle(step_text)
        return [step * k for k in range(1, count + 1)]
    raise UsageError("one of --omega / --omega-grid is required")


# -- spectrum ------------------------------------------------------------------

def cmd_spectrum(args):
    if args.beta not in (1, 2, 4):
        raise UsageError(f"beta must be 1, 2 or 4, got {args.beta}")
    if args.limit == (args.N is not None):
        raise UsageError("exactly one of --N / --limit is required")
    if args.N is not None and args.N < 1:
        raise UsageError(f"N must be >= 1, got {args.N}")
    omegas = _omega_list(args)
    if args.limit:
        route = args.route or ROUTE_FREDHOLM
        if route not in (ROUTE_FREDHOLM, ROUTE_PAINLEVE):
            raise UsageError(
                f"limiting spectrum supports the fredholm and painleve routes, got {route!r}")

        def one(omega):
            t0 = time.perf_counter()
            value, spec = assemble_limit_spectrum(
                args.beta, omega, s_star_target=args.s_star,
                grid_spacing=args.grid_spacing, route=route)
            err = abs(spec.amplitude) * spec.s_star ** (1.0 - spec.exponent) * 1e-6
            return omega, value, err, route, time.perf_counter() - t0
    else:
        route = args.route or ROUTE_DETERMINANT
        if route == ROUTE_RECURRENCE and args.beta != 2:
            raise UsageError("the recurrence route is only valid for beta = 2")

        def one(omega):
            t0 = time.perf_counter()
            value, err = assemble_finite_spectrum(
                args.beta, args.N, omega, route=route, return_err=True)
            return omega, value, err, route, time.perf_counter() - t0

    results = []
    if args.include_zero:
        if args.limit:
            raise UsageError("--include-zero requires a finite --N")
        t0 = time.perf_counter()
        v = spectrum_at_zero_exact(args.beta, args.N)
        results.append((0.0, v, 0.0, "exact-intercept", time.perf_counter() - t0))
    results += _pmap(one, omegas, _n_jobs(args))
    rows = [(_fmt(om), _fmt(v), _fmt(e), r, _fmt(1e3 * dt))
            for om, v, e, r, dt in results]
    config = {"command": "spectrum", "beta": args.beta,
              "N": args.N, "limit": args.limit, "route": route,
              "omegas": [_fmt(o) for o in omegas],
              "s_star": args.s_star, "grid_spacing": args.grid_spacing}
    _write_output(args.out, ("omega", "value", "err_estimate", "route", "wall_ms"),
                  rows, config, args.format)
    return EXIT_OK


# -- genfn ---------------------------------------------------------------------

def _abscissa_grid(args):
    if args.phi_grid is not None:
        try:
            a_t, b_t, n_t = args.phi_grid.split(":")
            a, b, n = parse_angle(a_t), parse_angle(b_t), int(n_t)
        except (ValueError, UsageError):
            raise UsageError(
                f"phi grid must be START:STOP:COUNT, got {args.phi_grid!r}") from None
        if n < 1 or b <= a:
            raise UsageError(f"degenerate phi grid {args.phi_grid!r}")
        return list(a + (b - a) * np.arange(n + 1) / n), "phi"
    if args.s_grid is not None:
        try:
            a_t, b_t, h_t = args.s_grid.split(":")
            a, b, h = float(a_t), float(b_t), float(h_t)
        except ValueError:
            raise UsageError(
                f"s grid must be START:STOP:SPACING, got {args.s_grid!r}") from None
        if h <= 0 or b <= a:
            raise UsageError(f"degenerate s grid {args.s_grid!r}")
        n = int(round((b - a) / h))
        return list(a + (b - a) * np.arange(n + 1) / n), "s"
    raise UsageError("one of --phi-grid / --s-grid is required")


def cmd_genfn(args):
    omega = parse_angle(args.omega)
    xi = 1.0 - np.exp(1j * omega)
    grid, kind = _abscissa_grid(args)
    if args.limit:
        if args.kernel in ("sine+", "sine-"):
            sign = args.kernel[-1]

            def one(s):
                t0 = time.perf_counter()
                g = e_orthogonal_limit(sign, s, xi)
                return s, g, time.perf_counter() - t0
        elif args.kernel == "sine":
            def one(s):
                t0 = time.perf_counter()
                g = e_inf_beta(args.beta, s, xi, cross_check=False)
                return s, g, time.perf_counter() - t0
        else:
            raise UsageError(
                f"kernel must be sine, sine+ or sine-, got {args.kernel!r}")
    else:
        if args.N is None or args.N < 1:
            raise UsageError("--N >= 1 is required without --limit")
        if kind != "phi":
            raise UsageError("finite-N profiles use --phi-grid")
        route = args.route or ROUTE_DETERMINANT
        if route == ROUTE_RECURRENCE:
            if args.beta != 2:
                raise UsageError("the recurrence route is only valid for beta = 2")

            def one(phi):
                t0 = time.perf_counter()
                g = gen_fn_from_recurrence(args.N - 1, phi, xi)
                return phi, g, time.perf_counter() - t0
        elif route == ROUTE_DETERMINANT:
            def one(phi):
                t0 = time.perf_counter()
                g = gen_fn(args.beta, args.N, phi, xi)
                return phi, g, time.perf_counter() - t0
        else:
            raise UsageError(
                f"genfn supports the determinant and recurrence routes, got {route!r}")

    results = _pmap(one, grid, _n_jobs(args))
    rows = [(_fmt(x), _fmt(g.value.real), _fmt(g.value.imag),
             _fmt(g.err_estimate), g.route, _fmt(1e3 * dt))
            for x, g, dt in results]
    config = {"command": "genfn", "beta": args.beta, "N": args.N,
              "limit": args.limit, "kernel": args.kernel,
              "omega": _fmt(omega), "abscissa": kind,
              "grid": [_fmt(x) for x in grid]}
    _write_output(args.out,
                  ("abscissa", "re_value", "im_value", "err_estimate", "route", "wall_ms"),
                  rows, config, args.format)
    return EXIT_OK


# -- validate ------------------------------------------------------------------

def _validate_det_vs_recurrence():
    worst = 0.0
    for N in (4, 9, 16):
        for omega in (0.5, 1.8, 3.0):
            xi = 1.0 - np.exp(1j * omega)
            for phi in (0.7, 1.9, 3.1):
                a = gen_fn(2, N, phi, xi).value
                b = gen_fn_from_recurrence(N - 1, phi, xi).value
                worst = max(worst, abs(a - b))
    return worst


def _validate_tau_vs_fredholm():
    # The '-' boundary condition rides an unstable mode of the sigma-PIII'
    # flow, so the tau route saturates around 1e-7 in double precision for
    # moderate s; the threshold reflects that floor.
    worst = 0.0
    for omega in (0.7, 1.2, 1.7):
        xi = 1.0 - np.exp(1j * omega)
        for s in (1.0, 2.0, 3.0):
            a = integrate_sigma_piii("-", xi, (np.pi * s) ** 2).gen_fn.value
            b = e_orthogonal_limit("-", s, xi).value
            worst = max(worst, abs(a - b))
    return worst


def _conjecture_deviation_rows(omega=31.0 * np.pi / 32.0):
    """Deviation of the sigma-PIII' transcendent from its conjectured
    near-omega=pi asymptotic form, tabulated over t."""
    xi = 1.0 - np.exp(1j * omega)
    rows = []
    for s in (2.0, 4.0, 8.0):
        t = (np.pi * s) ** 2
        for sign in "+-":
            traj = integrate_sigma_piii(sign, xi, t)
            v = traj.u[-1]
            v_conj = sigma_piii_conjectured_asymptote(sign, omega, t)
            rows.append((sign, t, abs(v - v_conj)))
    return rows


def cmd_validate(args):
    lines = []
    d1 = _validate_det_vs_recurrence()
    ok1 = d1 < 1e-10
    lines.append(f"determinant-vs-recurrence beta=2: max |delta| = {d1:.3e} "
                 f"[{'ok' if ok1 else 'FAIL'} @ 1e-10]")
    d2 = _validate_tau_vs_fredholm()
    ok2 = d2 < 1e-7
    lines.append(f"tau-vs-fredholm sine-minus: max |delta| = {d2:.3e} "
                 f"[{'ok' if ok2 else 'FAIL'} @ 1e-7]")
    lines.append("conjectured near-pi asymptote, omega = 31pi/32 (report only):")
    for sign, t, dev in _conjecture_deviation_rows():
        lines.append(f"  sign={sign} t={_fmt(t)}: |sigma - conjecture| = {dev:.3e}")
    text = "\n".join(lines) + "\n"
    if args.out:
        _write_output(args.out, ("report",), [(line,) for line in lines],
                      {"command": "validate"}, args.format)
    else:
        sys.stdout.write(text)
    return EXIT_OK if (ok1 and ok2) else EXIT_NUMERICAL


# -- entry point ---------------------------------------------------------------

def build_parser():
    parser = argparse.ArgumentParser(
        prog="circspec",
        description="Power spectrum of the circular beta ensembles.")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--beta", type=int, default=2, help="beta in {1,2,4}")
        p.add_argument("--N", type=int, default=None, help="matrix size")
        p.add_argument("--limit", action="store_true", help="N -> infinity")
        p.add_argument("--route", choices=_ROUTES, default=None)
        p.add_argument("--out", default=None, help="output path (default stdout)")
        p.add_argument("--format", choices=("csv", "json"), default="csv")
        p.add_argument("--jobs", type=int, default=None,
                       help="worker threads (default CIRCSPEC_THREADS or 1)")

    ps = sub.add_parser("spectrum", help="tabulate S(omega)")
    common(ps)
    ps.add_argument("--omega", default=None, help="single frequency, e.g. pi/4")
    ps.add_argument("--omega-grid", default=None,
                    help="STEP:COUNT, frequencies STEP*k for k = 1..COUNT")
    ps.add_argument("--include-zero", action="store_true",
                    help="prepend the exact omega = 0 intercept row")
    ps.add_argument("--s-star", type=float, default=None,
                    help="truncation target for the limiting spectrum")
    ps.add_argument("--grid-spacing", type=float, default=0.1)
    ps.set_defaults(func=cmd_spectrum)

    pg = sub.add_parser("genfn", help="tabulate the generating function")
    common(pg)
    pg.add_argument("--omega", required=True, help="sets xi = 1 - e^{i omega}")
    pg.add_argument("--phi-grid", default=None, help="START:STOP:COUNT (angles)")
    pg.add_argument("--s-grid", default=None, help="START:STOP:SPACING (bulk scale)")
    pg.add_argument("--kernel", default="sine",
                    help="limiting kernel: sine, sine+ or sine-")
    pg.set_defaults(func=cmd_genfn)

    pv = sub.add_parser("validate", help="cross-route consistency report")
    common(pv)
    pv.set_defaults(func=cmd_validate)
    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (CircspecError, ValueError) as exc:
        omega = getattr(args, "omega", None) or getattr(args, "omega_grid", None)
        route = getattr(args, "route", None)
        print(f"numerical failure (omega={omega}, route={route}): {exc}",
              file=sys.stderr)
        return EXIT_NUMERICAL


if __name__ == "__main__":
    sys.exit(main())
