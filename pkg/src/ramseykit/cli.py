"""Command-line surface; every subcommand is a thin adapter over the modules.

Output is line-oriented key=value for scripting; --json mirrors the same
structure as one JSON object.  Exit codes: 0 success, 2 parse/domain error,
3 invalid witness, 4 budget exhausted, 5 I/O error.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import __version__
from .cliques import enumerate_violations, verify_ramsey
from .colorings import (
    EdgeColoring,
    emit_adjacency_list,
    emit_triangle_matrix,
    flip_edge,
    parse_adjacency_list,
    parse_triangle_matrix,
)
from .encoder import (
    PARTITION_PRESETS,
    ClauseSource,
    ZMode,
    emit_dimacs,
    parse_model,
    ramsey_counts,
)
from .errors import BudgetExceeded, DomainError, IncompleteColoringError, ParseError, PreconditionError
from .extension import extend
from .relaxation import FinalStatus, RelaxPolicy, relax_solve
from .solver import SolveBudget
from .zsearch import largest_z, search_z

EXIT_OK = 0
EXIT_PARSE = 2
EXIT_INVALID = 3
EXIT_BUDGET = 4
EXIT_IO = 5


def _read_text(path: str) -> str:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            return fh.read()
    except OSError as exc:
        raise _Exit(EXIT_IO, f"cannot read {path}: {exc}") from exc


def _write_text(path: str | None, text: str) -> None:
    if path is None or path == "-":
        sys.stdout.write(text)
        return
    try:
        with open(path, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    except OSError as exc:
        raise _Exit(EXIT_IO, f"cannot write {path}: {exc}") from exc


class _Exit(Exception):
    def __init__(self, code: int, message: str):
        self.code = code
        self.message = message


def _emit(args, payload: dict, extra_lines: list[str] | None = None) -> None:
    if args.json:
        print(json.dumps(payload, indent=None, separators=(",", ":")))
        return
    for key, value in payload.items():
        if isinstance(value, (list, dict)):
            continue
        print(f"{key}={_fmt(value)}")
    for line in extra_lines or []:
        print(line)


def _fmt(value) -> str:
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        return f"{value:.3f}"
    return str(value)


def _load_coloring(path: str, fmt: str) -> EdgeColoring:
    text = _read_text(path)
    if fmt == "auto":
        first = text.splitlines()[0] if text.splitlines() else ""
        fmt = "adj" if ":" in first else "tri"
    return parse_adjacency_list(text) if fmt == "adj" else parse_triangle_matrix(text)


def _z_mode(args) -> ZMode:
    if args.z == "none":
        return ZMode.none()
    if args.z == "full":
        if getattr(args, "omit", None):
            return ZMode.imperfect(int(x) for x in args.omit.split(","))
        return ZMode.full()
    if args.z == "sym":
        return ZMode.symmetric()
    if args.z == "part":
        preset = getattr(args, "partition", None) or "band-24-33"
        try:
            return ZMode.partitioned(PARTITION_PRESETS[preset]())
        except KeyError:
            raise DomainError(
                f"unknown partition preset {preset!r}; have {sorted(PARTITION_PRESETS)}"
            ) from None
    raise DomainError(f"unknown z mode {args.z!r}")


def _report_payload(report) -> dict:
    d = report.to_dict()
    d["violation_count"] = len(d["violations"])
    return d


def _report_lines(report) -> list[str]:
    return [
        f"violation={int(color)}:{','.join(map(str, vs))}"
        for color, vs in report.violations
    ]


# ---------- subcommands ----------


def cmd_verify(args) -> int:
    coloring = _load_coloring(args.file, args.format)
    report = (
        enumerate_violations(coloring, args.s, args.t, args.limit)
        if args.limit
        else verify_ramsey(coloring, args.s, args.t)
    )
    _emit(args, _report_payload(report), _report_lines(report))
    return EXIT_OK if report.valid else EXIT_INVALID


def cmd_counts(args) -> int:
    nvars, nclauses = ramsey_counts(args.s, args.t, args.n)
    _emit(args, {"vars": nvars, "clauses": nclauses})
    return EXIT_OK


def cmd_encode(args) -> int:
    source = ClauseSource(n=args.n, s=args.s, t=args.t, z_mode=_z_mode(args))
    try:
        if args.output == "-":
            nvars, nclauses = emit_dimacs(source, sys.stdout)
        else:
            with open(args.output, "w", encoding="utf-8") as fh:
                nvars, nclauses = emit_dimacs(source, fh)
    except OSError as exc:
        raise _Exit(EXIT_IO, f"cannot write {args.output}: {exc}") from exc
    if args.output != "-":
        _emit(args, {"vars": nvars, "clauses": nclauses, "path": args.output})
    return EXIT_OK


def cmd_zsearch(args) -> int:
    result = search_z(
        args.s,
        args.t,
        args.n,
        mode="symmetric" if args.sym else "full",
        want="all" if args.all else "first",
        node_limit=args.node_limit,
        workers=args.workers,
    )
    payload = {
        "count": result.count,
        "exhaustive": result.exhaustive,
        "nodes": result.nodes,
        "witnesses": result.bitstrings(),
    }
    lines = [f"z={b}" for b in result.bitstrings()]
    if args.adj:
        from .colorings import coloring_from_z

        for z in result.solutions:
            lines.append(emit_adjacency_list(coloring_from_z(z)).rstrip("\n"))
    _emit(args, payload, lines)
    return EXIT_OK


def cmd_zlargest(args) -> int:
    n, count = largest_z(
        args.s,
        args.t,
        args.nmax,
        mode="symmetric" if args.sym else "full",
        workers=args.workers,
    )
    _emit(args, {"n": n, "count": count})
    return EXIT_OK


def cmd_relax_solve(args) -> int:
    source = ClauseSource(n=args.n, s=args.s, t=args.t, z_mode=_z_mode(args))
    policy = RelaxPolicy(
        drop_fraction=args.drop,
        max_rounds=args.rounds,
        budget=SolveBudget(
            max_conflicts=args.conflicts, max_seconds=args.seconds, seed=args.seed
        ),
    )
    coloring, trace = relax_solve(source, source.soft_clauses(), policy)
    payload = {
        "result": trace.final,
        "rounds": len(trace.rounds),
        "trace": [r.log_line() for r in trace.rounds],
    }
    _emit(args, payload, trace.log_lines())
    if coloring is not None and args.output:
        _write_text(args.output, emit_adjacency_list(coloring))
    if trace.final == FinalStatus.MODEL:
        return EXIT_OK
    return EXIT_BUDGET if trace.final == FinalStatus.TOTALLY_RELAXED_FAILURE else EXIT_OK


def cmd_extend(args) -> int:
    base = _load_coloring(args.base, args.format)
    policy = RelaxPolicy(
        drop_fraction=args.drop,
        max_rounds=args.rounds,
        budget=SolveBudget(
            max_conflicts=args.conflicts, max_seconds=args.seconds, seed=args.seed
        ),
    )
    base_params = None
    if args.base_s is not None and args.base_t is not None:
        base_params = (args.base_s, args.base_t)
    coloring, trace = extend(
        base, args.s, args.t, args.n, policy, base_params=base_params
    )
    payload = {"result": trace.final, "rounds": len(trace.rounds)}
    _emit(args, payload, trace.log_lines())
    if coloring is not None:
        _write_text(args.output, emit_adjacency_list(coloring))
        return EXIT_OK
    return EXIT_BUDGET


def cmd_flip(args) -> int:
    coloring = _load_coloring(args.file, args.format)
    coloring = flip_edge(coloring, args.i, args.j)
    _write_text(args.output, emit_adjacency_list(coloring))
    return EXIT_OK


def cmd_decode_model(args) -> int:
    coloring = parse_model(_read_text(args.model), args.n)
    _write_text(args.output, emit_adjacency_list(coloring))
    return EXIT_OK


def cmd_serve(args) -> int:
    import uvicorn

    from .service import create_app

    uvicorn.run(create_app(), host=args.host, port=args.port, log_level="info")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    top = argparse.ArgumentParser(
        prog="ramseykit",
        description="Search, extend, verify and edit Ramsey lower-bound witnesses.",
    )
    top.add_argument("--version", action="version", version=f"ramseykit {__version__}")
    top.add_argument("--json", action="store_true", help="emit one JSON object instead of key=value lines")
    sub = top.add_subparsers(dest="command", required=True)

    def st(p, n_flag="--n"):
        p.add_argument("--s", type=int, required=True)
        p.add_argument("--t", type=int, required=True)
        if n_flag:
            p.add_argument(n_flag, type=int, required=True)

    p = sub.add_parser("verify", help="check a coloring file against (s,t)")
    p.add_argument("file")
    st(p, n_flag=None)
    p.add_argument("--format", choices=("auto", "adj", "tri"), default="auto")
    p.add_argument("--limit", type=int, default=0, help="enumerate up to N violations per color")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("counts", help="closed-form instance size")
    st(p)
    p.set_defaults(func=cmd_counts)

    p = sub.add_parser("encode", help="write a DIMACS CNF instance")
    st(p)
    p.add_argument("--z", choices=("none", "full", "sym", "part"), default="none")
    p.add_argument("--omit", help="comma-separated distances dropped from full Z")
    p.add_argument("--partition", help="named partition preset for --z part")
    p.add_argument("-o", "--output", required=True, help="path or - for stdout")
    p.set_defaults(func=cmd_encode)

    p = sub.add_parser("zsearch", help="search circulant vectors at one n")
    st(p)
    p.add_argument("--sym", action="store_true")
    p.add_argument("--all", action="store_true", help="exhaustive count instead of first hit")
    p.add_argument("--adj", action="store_true", help="also print adjacency lists")
    p.add_argument("--node-limit", type=int, default=None)
    p.add_argument("--workers", type=int, default=1)
    p.set_defaults(func=cmd_zsearch)

    p = sub.add_parser("zlargest", help="largest n with circulant witnesses")
    p.add_argument("--s", type=int, required=True)
    p.add_argument("--t", type=int, required=True)
    p.add_argument("--nmax", type=int, required=True)
    p.add_argument("--sym", action="store_true")
    p.add_argument("--workers", type=int, default=1)
    p.set_defaults(func=cmd_zlargest)

    p = sub.add_parser("relax-solve", help="solve with soft Z and relaxation rounds")
    st(p)
    p.add_argument("--z", choices=("full", "sym", "part"), default="full")
    p.add_argument("--omit", help="comma-separated distances dropped from full Z")
    p.add_argument("--partition", help="named partition preset for --z part")
    p.add_argument("--drop", type=float, default=0.5)
    p.add_argument("--rounds", type=int, default=10)
    p.add_argument("--conflicts", type=int, default=100_000)
    p.add_argument("--seconds", type=float, default=None)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("-o", "--output", default=None, help="write the witness adjacency list here")
    p.set_defaults(func=cmd_relax_solve)

    p = sub.add_parser("extend", help="grow a witness from a smaller base")
    p.add_argument("--base", required=True, help="base coloring file")
    st(p)
    p.add_argument("--base-s", type=int, default=None)
    p.add_argument("--base-t", type=int, default=None)
    p.add_argument("--format", choices=("auto", "adj", "tri"), default="auto")
    p.add_argument("--drop", type=float, default=0.5)
    p.add_argument("--rounds", type=int, default=10)
    p.add_argument("--conflicts", type=int, default=100_000)
    p.add_argument("--seconds", type=float, default=None)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("-o", "--output", default="-")
    p.set_defaults(func=cmd_extend)

    p = sub.add_parser("flip", help="flip one edge of a coloring file")
    p.add_argument("file")
    p.add_argument("i", type=int)
    p.add_argument("j", type=int)
    p.add_argument("--format", choices=("auto", "adj", "tri"), default="auto")
    p.add_argument("-o", "--output", default="-")
    p.set_defaults(func=cmd_flip)

    p = sub.add_parser("decode-model", help="turn a solver model into an adjacency list")
    p.add_argument("model")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("-o", "--output", default="-")
    p.set_defaults(func=cmd_decode_model)

    p = sub.add_parser("serve", help="start the edit service")
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--port", type=int, default=8642)
    p.set_defaults(func=cmd_serve)

    return top


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except _Exit as exc:
        print(f"error: {exc.message}", file=sys.stderr)
        return exc.code
    except ParseError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except (DomainError, IncompleteColoringError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except PreconditionError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID
    except BudgetExceeded as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BUDGET


if __name__ == "__main__":
    sys.exit(main())
