"""Command-line entry point: ``knotbound <subcommand> ...``.

Exit codes: 0 success, 1 verification failure, 2 input error.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .diagram import DiagramError, faces, format_pd, mirror, parse_pd, validate
from .family import UntangleError, gen_dn, untangle_phases, verify_untangle
from .group import parse_element
from .invariant import RLengthExceeded, g_hom, i_lk, lower_bound, r_length_bfs
from .moves import (
    MoveError,
    apply,
    change_table_fuzz,
    format_trace,
    parse_trace,
    verify_change,
)

OK, FAILED, BAD_INPUT = 0, 1, 2


class InputError(Exception):
    pass


def _read_diagram(path: str):
    try:
        text = Path(path).read_text() if path != "-" else sys.stdin.read()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from None
    try:
        return parse_pd(text)
    except (DiagramError, ValueError) as exc:
        raise InputError(f"{path}: {exc}") from None


def _emit(args, payload: dict, text: str) -> None:
    print(json.dumps(payload, indent=2) if args.json else text)


def cmd_validate(args) -> int:
    d = _read_diagram(args.file)
    rep = validate(d)
    text = "valid" if rep.valid else "invalid\n" + "\n".join(rep.violations)
    text += f"\nV={rep.V} E={rep.E} F={rep.F} components={rep.component_count}"
    _emit(args, rep.as_dict(), text)
    return OK if rep.valid else FAILED


def cmd_invariant(args) -> int:
    d = _read_diagram(args.file)
    try:
        v = i_lk(d)
    except DiagramError as exc:
        raise InputError(str(exc)) from None
    _emit(args, {"i_lk": str(v), "g": g_hom(v)}, str(v))
    return OK


def cmd_bound(args) -> int:
    a, b = _read_diagram(args.file_a), _read_diagram(args.file_b)
    try:
        lb = lower_bound(a, b)
    except DiagramError as exc:
        raise InputError(str(exc)) from None
    _emit(args, {"lower_bound": lb}, str(lb))
    return OK


def cmd_gen_dn(args) -> int:
    if args.n < 1:
        raise InputError("n must be positive")
    text = format_pd(gen_dn(args.n))
    if args.output:
        Path(args.output).write_text(text)
    else:
        sys.stdout.write(text)
    return OK


def cmd_untangle(args) -> int:
    if args.n < 1:
        raise InputError("n must be positive")
    try:
        phases = untangle_phases(args.n)
        if args.trace:
            moves = [m for p in phases for m in p]
            Path(args.trace).write_text(format_trace(moves, diagram=f"D_{args.n}"))
        rep = verify_untangle(args.n, phases)
    except UntangleError as exc:
        print(f"verification failed: {exc}", file=sys.stderr)
        return FAILED
    _emit(args, rep.as_dict(), rep.table())
    return OK


def cmd_rlength(args) -> int:
    try:
        v = parse_element(args.element)
    except ValueError as exc:
        raise InputError(str(exc)) from None
    if args.max < 0:
        raise InputError("--max must be non-negative")
    try:
        n = r_length_bfs(v, args.max)
    except RLengthExceeded:
        _emit(args, {"element": str(v), "r_length": None, "exceeds": args.max},
              f"> {args.max}")
        return OK
    _emit(args, {"element": str(v), "r_length": n, "g": g_hom(v)}, str(n))
    return OK


def cmd_verify_table(args) -> int:
    if args.iters < 0 or args.max_crossings < 2:
        raise InputError("need --iters >= 0 and --max-crossings >= 2")
    rep = change_table_fuzz(args.seed, args.iters, args.max_crossings)
    lines = [f"moves checked: {rep.moves_checked}", f"failures: {len(rep.failures)}",
             f"max |g(delta)|: {rep.max_abs_g}"]
    lines += [f"  {form}: {c}" for form, c in sorted(rep.forms_seen.items())]
    lines += rep.failures
    _emit(args, rep.as_dict(), "\n".join(lines))
    return OK if rep.ok else FAILED


def cmd_apply(args) -> int:
    d = _read_diagram(args.file)
    try:
        _, moves = parse_trace(Path(args.trace).read_text())
    except OSError as exc:
        raise InputError(f"cannot read {args.trace}: {exc.strerror}") from None
    except ValueError as exc:
        raise InputError(str(exc)) from None
    value = None
    for i, m in enumerate(moves):
        try:
            after = apply(d, m)
        except (MoveError, DiagramError) as exc:
            print(f"move {i}: {exc}", file=sys.stderr)
            return FAILED
        if args.verify:
            if value is None:
                value = i_lk(d)
            after_value = i_lk(after)
            v = verify_change(d, after, m, value, after_value)
            if not v.ok:
                print(f"move {i}: I_lk changed by {v.delta}", file=sys.stderr)
                return FAILED
            value = after_value
        d = after
    if args.output:
        Path(args.output).write_text(format_pd(d))
    elif args.json:
        print(json.dumps({"crossings": [list(c) for c in d.crossings],
                          "free_circles": d.free_circles}))
    else:
        sys.stdout.write(format_pd(d))
    return OK


def cmd_faces(args) -> int:
    d = _read_diagram(args.file)
    try:
        fs = faces(d)
    except DiagramError as exc:
        raise InputError(str(exc)) from None
    payload = [{"index": i, "size": len(f.darts), "darts": [list(x) for x in f.darts],
                "edges": list(f.edges)} for i, f in enumerate(fs)]
    text = "\n".join(f"{i}: size {len(f.darts)} edges {' '.join(map(str, f.edges))}"
                     for i, f in enumerate(fs))
    _emit(args, {"faces": payload}, text)
    return OK


def cmd_mirror(args) -> int:
    d = mirror(_read_diagram(args.file))
    sys.stdout.write(format_pd(d))
    return OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="knotbound",
                                description="Knot diagrams, the I_lk invariant and move bounds.")
    sub = p.add_subparsers(dest="command", required=True)

    def add(name, fn, help_text):
        sp = sub.add_parser(name, help=help_text)
        sp.add_argument("--json", action="store_true", help="machine-readable output")
        sp.set_defaults(func=fn)
        return sp

    add("validate", cmd_validate, "check a PD file").add_argument("file")
    add("invariant", cmd_invariant, "print I_lk").add_argument("file")
    sp = add("bound", cmd_bound, "lower bound on moves between two diagrams")
    sp.add_argument("file_a")
    sp.add_argument("file_b")
    sp = add("gen-dn", cmd_gen_dn, "write the diagram D_n")
    sp.add_argument("n", type=int)
    sp.add_argument("-o", "--output")
    sp = add("untangle", cmd_untangle, "run and verify the untangling of D_n")
    sp.add_argument("n", type=int)
    sp.add_argument("--trace", help="also write the move trace to this file")
    sp = add("rlength", cmd_rlength, "exact word length over R")
    sp.add_argument("element")
    sp.add_argument("--max", type=int, required=True)
    sp = add("verify-table", cmd_verify_table, "fuzz the change table")
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--iters", type=int, default=1000)
    sp.add_argument("--max-crossings", type=int, default=30)
    sp = add("apply", cmd_apply, "replay a move trace on a diagram")
    sp.add_argument("file")
    sp.add_argument("--trace", required=True)
    sp.add_argument("--verify", action="store_true", help="check every move's I_lk change")
    sp.add_argument("-o", "--output")
    add("faces", cmd_faces, "list the faces of a diagram").add_argument("file")
    add("mirror", cmd_mirror, "print the mirror image").add_argument("file")
    return p


def run(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return BAD_INPUT


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
