"""
Command-line front end: ``spindomains {evolve,steady,sweep,verify}``.

Exit codes: 0 success, 1 a verification check failed, 2 usage error.
"""

from __future__ import annotations

import argparse
import json
import sys

import numpy as np

from .angular_momentum import AngularMomentumError
from .dynamics import EvolutionParams, integrate, relax
from .oracle import build_liouvillian, evolve_oracle_many, steady_state_oracle
from .state_space import (
    BlockLayout,
    fmt,
    from_tensor_product,
    initial_state,
    parse_label,
    to_tensor_product,
)
from .steady_state import report, steady_state, steady_weights

DEFAULT_ORACLE_TIMES = (0.1, 0.5, 1.0, 5.0)


class UsageError(Exception):
    pass


def parse_range(text: str) -> list[int]:
    """``"1..20"`` (inclusive), ``"3,5,7"`` or a single integer."""
    try:
        if ".." in text:
            lo, hi = text.split("..")
            vals = list(range(int(lo), int(hi) + 1))
        else:
            vals = [int(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise UsageError(f"bad range {text!r}; use a..b or a,b,c") from None
    if not vals:
        raise UsageError(f"empty range {text!r}")
    return vals


def _layout(n_a, n_b) -> BlockLayout:
    try:
        return BlockLayout.of(n_a, n_b)
    except AngularMomentumError as e:
        raise UsageError(str(e)) from None


def _write(text: str, out: str | None) -> None:
    if out in (None, "-"):
        sys.stdout.write(text)
    else:
        with open(out, "w", newline="") as fh:
            fh.write(text)


def cmd_evolve(args) -> int:
    lay = _layout(args.na, args.nb)
    if args.elements:
        labels = [s.strip() for s in args.elements.split(",") if s.strip()]
    else:
        labels = [f"rho_{i}_{i}" for i in range(1, lay.dim + 1)]
    for lb in labels:
        try:
            parse_label(lb, lay.dim)
        except ValueError:
            raise UsageError(f"invalid element label: {lb}") from None
    try:
        params = EvolutionParams(t_end=args.t_end, gamma=args.gamma, step=args.step,
                                 sample_every=args.sample_every)
    except ValueError as e:
        raise UsageError(str(e)) from None
    traj = integrate(initial_state(lay), params)
    if args.format == "json":
        payload = {"n_a": lay.n_a, "n_b": lay.n_b, "t_tilde": [fmt(t) for t in traj.times]}
        payload["elements"] = {
            lb: {"re": [fmt(v.real) for v in traj.series(lb)],
                 "im": [fmt(v.imag) for v in traj.series(lb)]}
            for lb in labels
        }
        text = json.dumps(payload, indent=1) + "\n"
    else:
        text = traj.to_csv(labels, complex_columns=args.complex)
    _write(text, args.out)
    return 0


def cmd_steady(args) -> int:
    lay = _layout(args.na, args.nb)
    if args.numeric:
        rho, _ = relax(initial_state(lay), gamma=args.gamma, step=args.step)
        rep = report(rho)
    else:
        rep = steady_state(lay)
    if args.format == "csv":
        d = rep.to_dict()
        cols = ["n_a", "n_b", "jz_a", "jz_b", "negativity", "entropy"]
        cols += [f"p_{i + 1}" for i in range(len(d["weights"]))]
        vals = [str(d["n_a"]), str(d["n_b"])]
        vals += [fmt(d[k]) for k in ("jz_a", "jz_b", "negativity", "entropy")]
        vals += [fmt(w) for w in d["weights"]]
        text = ",".join(cols) + "\n" + ",".join(vals) + "\n"
    else:
        text = rep.to_json()
    _write(text, args.out)
    return 0


def sweep_rows(n_b: int, n_a_values) -> list[dict]:
    rows = []
    for n_a in n_a_values:
        rep = steady_state(_layout(n_a, n_b))
        rows.append(rep.to_dict())
    return rows


def cmd_sweep(args) -> int:
    values = parse_range(args.na)
    rows = sweep_rows(args.nb, values)
    cols = ["n_a", "jz_a", "jz_b", "negativity", "entropy"]
    if args.format == "json":
        text = json.dumps([{k: r[k] for k in cols} for r in rows], indent=1) + "\n"
    else:
        lines = [",".join(cols)]
        lines += [",".join([str(r["n_a"])] + [fmt(r[k]) for k in cols[1:]]) for r in rows]
        text = "\n".join(lines) + "\n"
    _write(text, args.out)
    return 0


def _check(name, residual, tol):
    return {"name": name, "residual": float(residual), "tolerance": float(tol),
            "passed": bool(residual <= tol)}


def oracle_equivalence_checks(n_a, n_b, tol, times=DEFAULT_ORACLE_TIMES, gamma=1.0):
    """Frobenius distance between reduced RK4 and Liouvillian propagation."""
    lay = _layout(n_a, n_b)
    rho0 = initial_state(lay)
    lv = build_liouvillian(n_a, n_b, gamma=gamma)
    ref = evolve_oracle_many(lv, to_tensor_product(rho0), [t / gamma for t in times])
    checks = []
    for t, o in zip(times, ref):
        got = integrate(rho0, EvolutionParams(t_end=t, gamma=gamma, sample_every=10**6)).final
        res = np.linalg.norm(to_tensor_product(got).data - o.data)
        checks.append(_check(f"oracle_equivalence(n_a={n_a},n_b={n_b},t={t:g})", res, tol))
    return checks


def conjecture_checks(n_a, n_b, tol):
    """Long-time oracle state vs. diagonal steady state with initial block weights."""
    lay = _layout(n_a, n_b)
    lv = build_liouvillian(n_a, n_b)
    ss = from_tensor_product(steady_state_oracle(lv, to_tensor_product(initial_state(lay))))
    expected = np.zeros(lay.dim)
    for b, (w, tj) in enumerate(zip(steady_weights(lay), lay.spec.twice_j)):
        expected[lay.index(b, -tj)] = w
    res = float(np.max(np.abs(ss.data - np.diag(expected))))
    return [_check(f"steady_state_conjecture(n_a={n_a},n_b={n_b})", res, tol)]


def cmd_verify(args) -> int:
    checks = []
    if args.conjecture:
        tol = 1e-6 if args.tol is None else args.tol
        nb = 3 if args.nb is None else args.nb
        for n_a in parse_range(args.na or "3..5"):
            checks += conjecture_checks(n_a, nb, tol)
    else:
        tol = 1e-8 if args.tol is None else args.tol
        if args.na is not None and args.nb is not None:
            pairs = [(n_a, args.nb) for n_a in parse_range(args.na)]
        else:
            pairs = [(3, 1), (4, 2)]
        for n_a, n_b in pairs:
            checks += oracle_equivalence_checks(n_a, n_b, tol, gamma=args.gamma)
    passed = all(c["passed"] for c in checks)
    _write(json.dumps({"passed": passed, "checks": checks}, indent=1) + "\n", args.out)
    return 0 if passed else 1


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="spindomains",
        description="Two collective spin domains decaying into a common zero-temperature reservoir.",
    )
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, na_type=int, na_required=True):
        sp.add_argument("--na", type=na_type, required=na_required, help="spins in domain A")
        sp.add_argument("--gamma", type=float, default=1.0, help="damping rate (default 1)")
        sp.add_argument("--step", type=float, default=None,
                        help="RK4 step in t~ (default 1e-3*min(1, 1/n_a))")
        sp.add_argument("--out", default=None, help="output file (default stdout)")

    ev = sub.add_parser("evolve", help="integrate the reduced equations of motion")
    common(ev)
    ev.add_argument("--nb", type=int, required=True)
    ev.add_argument("--t-end", type=float, default=5.0)
    ev.add_argument("--elements", default=None,
                    help="comma list of 1-based labels rho_i_j (default: all diagonal)")
    ev.add_argument("--sample-every", type=int, default=10, help="output every k-th step")
    ev.add_argument("--complex", action="store_true", help="emit re(i,j)/im(i,j) column pairs")
    ev.add_argument("--format", choices=("csv", "json"), default="csv")
    ev.set_defaults(func=cmd_evolve)

    st = sub.add_parser("steady", help="steady-state report")
    common(st)
    st.add_argument("--nb", type=int, required=True)
    st.add_argument("--numeric", action="store_true",
                    help="relax by long-time integration instead of the closed form")
    st.add_argument("--format", choices=("csv", "json"), default="json")
    st.set_defaults(func=cmd_steady)

    sw = sub.add_parser("sweep", help="steady-state observables over a range of n_a")
    common(sw, na_type=str)
    sw.add_argument("--nb", type=int, required=True)
    sw.add_argument("--format", choices=("csv", "json"), default="csv")
    sw.set_defaults(func=cmd_sweep)

    vf = sub.add_parser("verify", help="check reduced dynamics against the Liouvillian oracle")
    common(vf, na_type=str, na_required=False)
    vf.add_argument("--nb", type=int, default=None)
    vf.add_argument("--conjecture", action="store_true",
                    help="check the general steady-state structure instead")
    vf.add_argument("--tol", type=float, default=None)
    vf.add_argument("--format", choices=("json",), default="json")
    vf.set_defaults(func=cmd_verify)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except UsageError as e:
        print(f"spindomains {args.command}: error: {e}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
