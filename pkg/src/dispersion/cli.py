"""Command-line interface.

Exit codes: 0 success, 2 input error, 3 capacity exceeded, 4 internal
invariant violation.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
import time
from pathlib import Path

import numpy as np

from . import bounds, nets, optimizer, pointfile, solver, witness
from .geometry import PointSet, volume

EXIT_OK = 0
EXIT_INPUT = 2
EXIT_CAPACITY = 3
EXIT_INTERNAL = 4

# instances this small get a brute-force cross-check under --method auto
AUTO_CROSSCHECK_BOXES = 200_000

CSV_COLUMNS = ["n", "d", "lower_trivial", "lower_dj", "lower_main", "lower_best", "upper_best_log2"]


class InputError(Exception):
    pass


class InternalError(Exception):
    pass


def _emit(report: dict, out=None) -> None:
    out = out or sys.stdout
    json.dump(report, out, indent=2, allow_nan=False)
    out.write("\n")


def _int_list(spec: str) -> list[int]:
    vals = []
    for part in spec.split(","):
        part = part.strip()
        if not part:
            continue
        try:
            if ".." in part:
                a, b = part.split("..")
                vals.extend(range(int(a), int(b) + 1))
            else:
                vals.append(int(part))
        except ValueError:
            raise InputError(f"bad integer list {spec!r}") from None
    if not vals:
        raise InputError(f"empty integer list {spec!r}")
    return vals


def _load(path) -> PointSet:
    try:
        return pointfile.read_points(path)
    except pointfile.PointFileError as exc:
        raise InputError(str(exc)) from None


def _matrices(arg: str) -> nets.GeneratingMatrices:
    try:
        if Path(arg).exists():
            return nets.load_matrices(arg)
        return nets.builtin_matrices(arg)
    except (OSError, ValueError, FileNotFoundError) as exc:
        raise InputError(f"cannot load generating matrices {arg!r}: {exc}") from None


def cmd_genpoints(args) -> dict:
    kind = args.kind
    comments = [f"kind: {kind}"]
    try:
        if kind == "random":
            if args.n is None or args.d is None:
                raise InputError("random needs --n and --d")
            if args.n < 0 or args.d < 1:
                raise InputError("need n >= 0 and d >= 1")
            rng = np.random.default_rng(args.seed)
            T = PointSet(rng.random((args.n, args.d)), dim=args.d)
            comments.append(f"rng: numpy.random.PCG64 seed={args.seed}")
        elif kind == "vdc":
            T = nets.van_der_corput(_need_m(args))
        elif kind == "hammersley":
            T = nets.hammersley(_need_m(args))
        else:
            if not args.matrices:
                raise InputError("net needs --matrices FILE (or a built-in name)")
            G = _matrices(args.matrices)
            T = nets.digital_net(G)
            comments.append(f"matrices: {args.matrices} (d={G.dim}, m={G.m})")
    except ValueError as exc:
        raise InputError(str(exc)) from None
    try:
        pointfile.write_points(T, args.out, comments)
    except OSError as exc:
        raise InputError(f"cannot write {args.out}: {exc}") from None
    return {"path": str(args.out), "d": T.dim, "n": T.n, "kind": kind}


def _need_m(args) -> int:
    if args.m is None:
        raise InputError(f"{args.kind} needs --m")
    return args.m


def cmd_disp(args) -> dict:
    T = _load(args.input)
    start = time.perf_counter()
    if args.method == "brute":
        res = solver.dispersion_bruteforce(T, max_boxes=args.max_boxes)
    else:
        res = solver.dispersion_exact(T)
        if args.method == "auto" and solver.brute_force_size(T) <= AUTO_CROSSCHECK_BOXES:
            ref = solver.dispersion_bruteforce(T)
            if ref.value != res.value:
                raise InternalError(f"pruned {res.value!r} != brute force {ref.value!r}")
    elapsed = (time.perf_counter() - start) * 1e3
    if not solver.is_empty(res.witness, T) or volume(res.witness) != res.value:
        raise InternalError("witness box failed re-verification")
    return {
        "value": res.value,
        "witness_lo": list(res.witness.lo),
        "witness_hi": list(res.witness.hi),
        "method": res.method.value,
        "elapsed_ms": elapsed,
        "n": T.n,
        "d": T.dim,
    }


def cmd_witness(args) -> dict:
    T = _load(args.input)
    try:
        cert = witness.guaranteed_box(T)
    except witness.WitnessError as exc:
        raise InternalError(str(exc)) from None
    if not solver.is_empty(cert.box, T) or cert.volume < cert.guaranteed_volume:
        raise InternalError("certificate box failed re-verification")
    if args.verbose:
        print(cert.describe(), file=sys.stderr)
    return {
        "box": {"lo": list(cert.box.lo), "hi": list(cert.box.hi), "semantics": "open"},
        "volume": cert.volume,
        "guaranteed_volume": cert.guaranteed_volume,
        "ell": cert.ell,
        "slab_index": cert.slab_index,
        "slab_count": cert.slab_count,
        "branch": str(cert.branch),
        "tau": ["".join(str(int(b)) for b in row) for row in cert.tau],
        "n": T.n,
        "d": T.dim,
    }


def cmd_bounds(args) -> dict:
    try:
        return bounds.bounds_report(args.n, args.d, args.eps).as_dict()
    except ValueError as exc:
        raise InputError(str(exc)) from None


def cmd_netcheck(args) -> dict:
    T = _load(args.input)
    try:
        rep = nets.verify_net_parameter(T, args.m)
    except ValueError as exc:
        raise InputError(str(exc)) from None
    fail = None
    if rep.failure_example is not None:
        fail = [[iv.a, iv.k] for iv in rep.failure_example.intervals]
    return {
        "m": rep.m,
        "d": rep.dim,
        "t_star": rep.t_star,
        "boxes_checked": rep.boxes_checked,
        "failure_example": fail,
        "dispersion_bound": nets.net_dispersion_bound(rep.t_star, rep.m, rep.dim),
    }


def _search_config(args, n, d) -> optimizer.SearchConfig:
    try:
        return optimizer.SearchConfig(
            n=n,
            d=d,
            restarts=args.restarts,
            iterations=args.iterations,
            step=args.step,
            cooling=args.cooling,
            seed=args.seed,
            allow_large=args.allow_large,
        )
    except ValueError as exc:
        raise InputError(str(exc)) from None


def cmd_optimize(args) -> dict:
    cfg = _search_config(args, args.n, args.d)
    try:
        trace = optimizer.minimize_dispersion(cfg)
    except optimizer.SearchInvariantError as exc:
        raise InternalError(str(exc)) from None
    path = None
    if args.out:
        try:
            pointfile.write_points(
                trace.best_set,
                args.out,
                [f"optimize n={cfg.n} d={cfg.d} seed={cfg.seed}", f"dispersion {trace.best_disp!r}"],
            )
        except OSError as exc:
            raise InputError(f"cannot write {args.out}: {exc}") from None
        path = str(args.out)
    return {
        "best_disp": trace.best_disp,
        "best_set_path": path,
        "evaluations": trace.evaluations,
        "restart_best": trace.restart_best,
        "n": cfg.n,
        "d": cfg.d,
        "seed": cfg.seed,
        "rng": optimizer.RNG_ALGORITHM,
    }


def cmd_table(args) -> None:
    n_list = _int_list(args.n_list)
    d_list = _int_list(args.d_list)
    cols = list(CSV_COLUMNS)
    if args.which == "empirical":
        cols.append("emp_disp")
    rows = []
    for d in d_list:
        for n in n_list:
            try:
                rep = bounds.bounds_report(n, d)
            except ValueError as exc:
                raise InputError(str(exc)) from None
            row = [n, d, rep.lower_trivial, rep.lower_dj, rep.lower_main, rep.lower_best,
                   rep.upper_best_log2]
            if args.which == "empirical":
                cfg = _search_config(args, n, d)
                row.append(optimizer.minimize_dispersion(cfg).best_disp)
            rows.append(row)
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(cols)
    for row in rows:
        w.writerow([repr(v) if isinstance(v, float) else v for v in row])
    if args.out and args.out != "-":
        try:
            Path(args.out).write_text(buf.getvalue())
        except OSError as exc:
            raise InputError(f"cannot write {args.out}: {exc}") from None
    else:
        sys.stdout.write(buf.getvalue())


def _add_search_flags(p):
    p.add_argument("--restarts", type=int, default=8)
    p.add_argument("--iterations", type=int, help="per restart (default 50 per point)")
    p.add_argument("--step", type=float, default=0.25)
    p.add_argument("--cooling", type=float, default=0.9)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--allow-large", action="store_true", help="skip the n/d capacity guard")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="dispersion", description="Largest empty boxes among points in [0,1]^d."
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("genpoints", help="write a point set file")
    p.add_argument("kind", choices=["random", "vdc", "hammersley", "net"])
    p.add_argument("--n", type=int)
    p.add_argument("--m", type=int)
    p.add_argument("--d", type=int)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--matrices", help="generating matrix file or built-in name")
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_genpoints)

    p = sub.add_parser("disp", help="exact dispersion with a witness box")
    p.add_argument("input")
    p.add_argument("--method", choices=["auto", "brute", "pruned"], default="auto")
    p.add_argument("--max-boxes", type=int, default=solver.DEFAULT_MAX_BOXES,
                   help="brute-force capacity guard")
    p.set_defaults(func=cmd_disp)

    p = sub.add_parser("witness", help="empty box meeting the log2(d) lower bound")
    p.add_argument("input")
    p.add_argument("--verbose", action="store_true", help="print the proof trail to stderr")
    p.set_defaults(func=cmd_witness)

    p = sub.add_parser("bounds", help="evaluate all closed-form bounds")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--eps", type=float)
    p.set_defaults(func=cmd_bounds)

    p = sub.add_parser("netcheck", help="smallest t of a (t, m, d)-net")
    p.add_argument("input")
    p.add_argument("--m", type=int, required=True)
    p.set_defaults(func=cmd_netcheck)

    p = sub.add_parser("optimize", help="search for a low-dispersion point set")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--out", help="write the best point set here")
    _add_search_flags(p)
    p.set_defaults(func=cmd_optimize)

    p = sub.add_parser("table", help="CSV of bounds (and optionally searched values)")
    p.add_argument("--n-list", required=True, help="e.g. 1..10 or 1,2,4")
    p.add_argument("--d-list", required=True)
    p.add_argument("--which", choices=["bounds", "empirical"], default="bounds")
    p.add_argument("--out", default="-")
    _add_search_flags(p)
    p.set_defaults(func=cmd_table)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        report = args.func(args)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except solver.CapacityError as exc:
        print(f"capacity: {exc}", file=sys.stderr)
        return EXIT_CAPACITY
    except InternalError as exc:
        print(f"internal error: {exc}", file=sys.stderr)
        return EXIT_INTERNAL
    if report is not None:
        _emit(report)
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
