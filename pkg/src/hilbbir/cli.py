"""Command-line interface: ``hilbbir <subcommand> ...``.

Exit codes: 0 success, 2 bad usage or parameters, 3 internal invariant violation.
"""

from __future__ import annotations

import argparse
import sys
from concurrent.futures import ProcessPoolExecutor
from typing import Callable, Iterable, Sequence

from .ambiguity import ambiguity
from .classify import classify, conjecture_check
from .cones import N3_ALLOWED_COUNTS, decompose, n3_class_counts, scan_irregular
from .exceptions import HilbBirError, InvariantViolation, NotApplicable, ParameterViolation
from .nslattice import HilbParams
from .pell import PellEquation, fundamental_solutions
from .serialize import (
    ambiguity_record,
    classification_record,
    decomposition_record,
    to_csv,
    to_json,
    to_markdown,
)

EXIT_OK, EXIT_USAGE, EXIT_INVARIANT = 0, 2, 3

_GROUP_MD = {"Z2": "Z/2Z", "Trivial": "{id}", "Z2xZ2": "Z/2Z x Z/2Z"}


class CellFailure(Exception):
    def __init__(self, cell: tuple, err: Exception):
        super().__init__(f"cell {cell}: {err}")
        self.cell = cell
        self.err = err


def _range(text: str) -> tuple[int, int]:
    try:
        lo, hi = (int(v) for v in text.split(":"))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected A:B, got {text!r}") from None
    if lo > hi:
        raise argparse.ArgumentTypeError(f"empty range {text!r}")
    return lo, hi


def _grid(args, need_t: bool = True) -> list[tuple[int, int]]:
    if args.n is not None and args.n_range is not None:
        raise ParameterViolation("give --n or --n-range, not both")
    if args.t is not None and args.t_range is not None:
        raise ParameterViolation("give --t or --t-range, not both")
    ns = [args.n] if args.n is not None else (range(args.n_range[0], args.n_range[1] + 1) if args.n_range else None)
    ts = [args.t] if args.t is not None else (range(args.t_range[0], args.t_range[1] + 1) if args.t_range else None)
    if ns is None:
        raise ParameterViolation("--n or --n-range is required")
    if need_t and ts is None:
        raise ParameterViolation("--t or --t-range is required")
    if min(ns) < 2:
        raise ParameterViolation("n must be >= 2")
    if need_t and min(ts) < 1:
        raise ParameterViolation("t must be >= 1")
    return [(n, t) for n in ns for t in (ts or [None])]


def _run_cell(job: tuple[Callable, tuple]) -> object:
    fn, cell = job
    try:
        return fn(*cell)
    except InvariantViolation as e:
        raise CellFailure(cell, e) from e


def _map_cells(fn: Callable, cells: Sequence[tuple], jobs: int) -> list:
    """Evaluate cells, possibly in parallel; output order always follows ``cells``."""
    work = [(fn, c) for c in cells]
    if jobs > 1 and len(work) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            return list(pool.map(_run_cell, work, chunksize=max(1, len(work) // (4 * jobs))))
    return [_run_cell(w) for w in work]


def _emit(payload, rows: Iterable[dict] | None, fmt: str, headers=None, md: str | None = None) -> str:
    if fmt == "json":
        return to_json(payload)
    rows = list(rows if rows is not None else ([payload] if isinstance(payload, dict) else payload))
    if fmt == "csv":
        return to_csv(rows)
    return md if md is not None else to_markdown(rows, headers)


# -- cell functions (module level so they pickle) --------------------------------


def _classify_cell(n: int, t: int) -> dict:
    return classification_record(classify(HilbParams(n, t)))


def _chambers_cell(n: int, t: int) -> dict:
    return decomposition_record(decompose(HilbParams(n, t), divisorial_boundary=True))


def _ambiguity_cell(n: int, t: int, verify: bool) -> dict:
    return ambiguity_record(n, t, ambiguity(HilbParams(n, t), verify=verify))


def _scan_cell(n: int, mode: str, t_max: int | None) -> dict:
    vals = scan_irregular(n, mode, t_max)
    return {"n": n, "irregular": [[v.t, v.ell] for v in vals]}


# -- tables ------------------------------------------------------------------


def table1_rows(n_max: int = 14, jobs: int = 1) -> list[dict]:
    """n-irregular values with non-symplectic involutions, split by ``nu^2``."""
    out = []
    scans = _map_cells(_scan_cell, [(n, "nonsymplectic_finite", None) for n in range(2, n_max + 1)], jobs)
    for n, rec in zip(range(2, n_max + 1), scans):
        pairs = rec["irregular"]
        # n = 2 has ell = 1 = n - 1; both columns coincide and the value goes left
        sq2 = [t for t, ell in pairs if ell == 1]
        sqn = [t for t, ell in pairs if ell != 1]
        out.append({"n": n, "nu2_eq_2": sq2, "nu2_eq_2n_minus_2": sqn})
    return out


def table2_rows(t_max: int = 30) -> list[dict]:
    rows = []
    for t in range(1, t_max + 1):
        c = classify(HilbParams(3, t))
        if c.group != "Trivial":
            rows.append({"t": t, "d": c.chambers, "aut": c.aut_group, "bir": c.group})
    return rows


def prop54_rows(t_max: int = 500) -> list[dict]:
    """Observed ``(count9, count12, chambers)`` by ``t mod 18``; raises on any
    value outside the allowed sets."""
    seen: dict[int, set[tuple[int, int, int]]] = {r: set() for r in range(18)}
    for t in range(2, t_max + 1):
        try:
            c9, c12, d = n3_class_counts(t)
        except NotApplicable:
            continue
        a9, a12, ad = N3_ALLOWED_COUNTS[t % 18]
        if c9 not in a9 or c12 not in a12 or d not in ad:
            raise InvariantViolation(f"t={t}: counts ({c9},{c12},{d}) outside row {t % 18}")
        seen[t % 18].add((c9, c12, d))
    return [
        {
            "t_mod_18": r,
            "observed": [list(v) for v in sorted(seen[r])],
            "allowed_count9": sorted(N3_ALLOWED_COUNTS[r][0]),
            "allowed_count12": sorted(N3_ALLOWED_COUNTS[r][1]),
            "allowed_chambers": sorted(N3_ALLOWED_COUNTS[r][2]),
        }
        for r in range(18)
    ]


def _fmt_list(v: list[int]) -> str:
    return ",".join(map(str, v)) if v else "/"


def table1_markdown(rows: list[dict]) -> str:
    lines = ["| n | n-irregular t with nu^2 = 2 | n-irregular t with nu^2 = 2(n-1) |", "|---|---|---|"]
    for r in rows:
        lines.append(f"| {r['n']} | {_fmt_list(r['nu2_eq_2'])} | {_fmt_list(r['nu2_eq_2n_minus_2'])} |")
    return "\n".join(lines) + "\n"


def table2_markdown(rows: list[dict]) -> str:
    lines = ["| t | d | Aut(S^[3]) | Bir(S^[3]) |", "|---|---|---|---|"]
    for r in rows:
        lines.append(f"| {r['t']} | {r['d']} | {_GROUP_MD[r['aut']]} | {_GROUP_MD[r['bir']]} |")
    return "\n".join(lines) + "\n"


# -- subcommands ---------------------------------------------------------------


def cmd_pell(args) -> str:
    if args.r is None or args.m is None:
        raise ParameterViolation("pell needs --r and --m")
    eq = PellEquation(args.r, args.m)
    classes = fundamental_solutions(eq)
    rows = [{"r": args.r, "m": args.m, "X": c.fundamental.x, "Y": c.fundamental.y,
             "conjugate_flag": c.conjugate_flag} for c in classes]
    payload = {"r": args.r, "m": args.m,
               "classes": [{"X": c.fundamental.x, "Y": c.fundamental.y, "conjugate_flag": c.conjugate_flag}
                           for c in classes]}
    return _emit(payload, rows, args.format)


def _gridded(fn: Callable, args, extra: tuple = ()) -> str:
    cells = [cell + extra for cell in _grid(args)]
    records = _map_cells(fn, cells, args.jobs)
    payload = records[0] if len(records) == 1 else records
    return _emit(payload, records, args.format)


def cmd_classify(args) -> str:
    return _gridded(_classify_cell, args)


def cmd_chambers(args) -> str:
    return _gridded(_chambers_cell, args)


def cmd_ambiguity(args) -> str:
    return _gridded(_ambiguity_cell, args, (args.verify,))


def cmd_scan(args) -> str:
    mode = "full_range" if args.full_range or args.t_max is not None else "nonsymplectic_finite"
    cells = [(n, mode, args.t_max) for n, _ in _grid(args, need_t=False)]
    records = _map_cells(_scan_cell, cells, args.jobs)
    if args.format == "md":
        md = ["| n | irregular t (ell) |", "|---|---|"]
        md += [f"| {r['n']} | " + (", ".join(f"{t} ({ell})" for t, ell in r["irregular"]) or "/") + " |"
               for r in records]
        return "\n".join(md) + "\n"
    rows = [{"n": r["n"], "t": t, "ell": ell} for r in records for t, ell in r["irregular"]]
    return _emit(records[0] if len(records) == 1 else records, rows, args.format)


def cmd_table(args) -> str:
    if args.which == "table1":
        rows = table1_rows(jobs=args.jobs)
        return _emit(rows, rows, args.format, md=table1_markdown(rows))
    if args.which == "table2":
        rows = table2_rows()
        return _emit(rows, rows, args.format, md=table2_markdown(rows))
    rows = prop54_rows(args.t_max if args.t_max is not None else 500)
    return _emit(rows, rows, args.format)


def cmd_conjecture(args) -> str:
    rep = conjecture_check(args.n_max, args.k_max)
    payload = {
        "n_max": args.n_max,
        "k_max": args.k_max,
        "checked": len(rep.checked),
        "counterexamples": [list(c) for c in rep.counterexamples],
        "verdict": "no counterexamples" if rep.holds else "counterexamples found",
    }
    if args.format == "md":
        return f"{payload['verdict']} ({payload['checked']} cases, n <= {args.n_max}, 3 <= k <= {args.k_max})\n"
    return _emit(payload, [payload], args.format)


# -- parser --------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="hilbbir", description="Birational involutions of Hilbert schemes of K3 surfaces")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("json", "csv", "md"), default="json")
    common.add_argument("--out", metavar="PATH", help="write output to PATH instead of stdout")
    common.add_argument("--jobs", type=int, default=1, help="worker processes for grid scans")
    grid = argparse.ArgumentParser(add_help=False)
    grid.add_argument("--n", type=int)
    grid.add_argument("--t", type=int)
    grid.add_argument("--n-range", type=_range, metavar="A:B")
    grid.add_argument("--t-range", type=_range, metavar="A:B")
    grid.add_argument("--verify", action="store_true", help="run brute-force oracles and dual-path checks")

    sub = parser.add_subparsers(dest="command", required=True)
    p = sub.add_parser("pell", parents=[common], help="fundamental solutions of X^2 - rY^2 = m")
    p.add_argument("--r", type=int)
    p.add_argument("--m", type=int)
    p.set_defaults(func=cmd_pell)
    p = sub.add_parser("classify", parents=[common, grid], help="classify Bir(S^[n])")
    p.set_defaults(func=cmd_classify)
    p = sub.add_parser("chambers", parents=[common, grid], help="wall-and-chamber decomposition")
    p.set_defaults(func=cmd_chambers)
    p = sub.add_parser("ambiguity", parents=[common, grid], help="non-induced birational maps to S'^[n]")
    p.set_defaults(func=cmd_ambiguity)
    p = sub.add_parser("scan-irregular", parents=[common, grid], help="n-irregular values of t")
    p.add_argument("--t-max", type=int, help="scan every t <= T-MAX (implies --full-range)")
    p.add_argument("--full-range", action="store_true", help="include symplectic involutions")
    p.set_defaults(func=cmd_scan)
    p = sub.add_parser("table", parents=[common], help="regenerate a reference table")
    p.add_argument("which", choices=("table1", "table2", "prop54"))
    p.add_argument("--t-max", type=int, help="t range for prop54 (default 500)")
    p.set_defaults(func=cmd_table)
    p = sub.add_parser("conjecture", parents=[common], help="biregularity for t = (n-1)k^2 + 1, k >= 3")
    p.add_argument("--n-max", type=int, default=14)
    p.add_argument("--k-max", type=int, default=10)
    p.set_defaults(func=cmd_conjecture)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_OK if e.code in (0, None) else EXIT_USAGE
    if getattr(args, "jobs", 1) < 1:
        print("error: --jobs must be >= 1", file=sys.stderr)
        return EXIT_USAGE
    try:
        text = args.func(args)
    except CellFailure as e:
        print(f"invariant violation at (n, t) = {e.cell}: {e.err}", file=sys.stderr)
        return EXIT_INVARIANT
    except InvariantViolation as e:
        print(f"invariant violation: {e}", file=sys.stderr)
        return EXIT_INVARIANT
    except (ParameterViolation, NotApplicable, HilbBirError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
