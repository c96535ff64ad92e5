"""Command-line front end: `srm <subcommand> ...`.

Exit status 0 on success, 1 on a domain error (bad matrix, empty class,
cap exceeded, ...), 2 on a usage error.
"""

from __future__ import annotations

import argparse
import json
import sys
import warnings
from pathlib import Path

from . import bruhat, core, decompose, digraph, enumeration, interchange, polytope, verify
from .errors import DomainError


def _vector(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(x) for x in text.replace(" ", "").split(",") if x != "")
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from None


def _read(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    try:
        return Path(path).read_text()
    except OSError as exc:
        raise DomainError(f"cannot read {path}: {exc.strerror}") from None


def _matrix(path: str) -> core.SignMatrix:
    return core.parse_matrix(_read(path))


class Out:
    def __init__(self, as_json: bool):
        self.as_json = as_json

    def emit(self, text: str, data):
        if self.as_json:
            print(json.dumps(data, indent=2, default=str))
        else:
            print(text)


def _mat_text(M) -> str:
    return M.to_text().rstrip("\n")


def cmd_validate(args, out: Out) -> int:
    mats = core.parse_matrices(_read(args.file))
    results = [core.validate_srm(M) for M in mats]
    lines = ["valid SRM" if v else str(v.violation) for v in results]
    data = [{"valid": bool(v), "violation": None if v else str(v.violation)} for v in results]
    out.emit("\n".join(lines), data if len(data) > 1 else data[0])
    return 0 if all(results) else 1


def cmd_enumerate(args, out: Out) -> int:
    mp = None
    if args.R is not None or args.S is not None:
        if args.R is None or args.S is None:
            raise DomainError("--R and --S must be given together")
        mp = core.MarginPair(args.R, args.S)
    flt = enumeration.ClassFilter(plus_only=args.plus, margins=mp, c_bound=args.c)
    if args.count:
        k = enumeration.count_srms(args.m, args.n, flt, max_cells=args.max_cells)
        out.emit(str(k), {"count": k})
        return 0
    mats = list(enumeration.enumerate_srms(args.m, args.n, flt, max_cells=args.max_cells))
    out.emit("\n\n".join(_mat_text(M) for M in mats), [M.to_json() for M in mats])
    return 0


def cmd_zeta(args, out: Out) -> int:
    z = core.max_nonzeros(args.m, args.n)
    if not args.extremal:
        out.emit(str(z), {"m": args.m, "n": args.n, "zeta": z})
        return 0
    E = core.extremal_srm(args.m, args.n)
    out.emit(f"{z}\n{_mat_text(E)}", {"m": args.m, "n": args.n, "zeta": z, "extremal": E.to_json()})
    return 0


def _trace_payload(trace):
    return {
        "steps": [{"rows": list(s.rows), "cols": list(s.cols), "sign": s.sign} for s in trace.steps],
        "matrices": [M.to_json() for M in trace.matrices()],
    }


def _trace_text(trace, verbose: bool) -> str:
    mats = trace.matrices()
    parts = [f"{len(trace)} interchange(s)"]
    for k, step in enumerate(trace.steps):
        parts.append(f"step {k + 1}: add {'+' if step.sign > 0 else '-'}E at rows {step.rows} cols {step.cols}")
        if verbose:
            parts.append(_mat_text(mats[k + 1]))
    return "\n".join(parts)


def cmd_eliminate(args, out: Out) -> int:
    A = _matrix(args.file)
    P, trace = interchange.eliminate_minus_ones(A)
    text = _trace_text(trace, args.verbose) + "\nresult:\n" + _mat_text(P)
    out.emit(text, {**_trace_payload(trace), "result": P.to_json()})
    return 0


def cmd_path(args, out: Out) -> int:
    A, B = _matrix(args.a), _matrix(args.b)
    if args.pm:
        trace = interchange.pm_interchange_path(A, B, max_cells=args.max_cells)
    else:
        trace = interchange.srm_interchange_path(A, B)
    if not trace.verify():
        raise AssertionError("interchange path failed verification")
    out.emit(_trace_text(trace, args.verbose), _trace_payload(trace))
    return 0


def _hasse_output(h: bruhat.HasseDiagram, args, out: Out) -> int:
    dot = h.to_dot()
    if args.dot:
        Path(args.dot).write_text(dot)
    text = dot if not args.dot else f"{len(h.nodes)} nodes, {len(h.edges)} cover edges written to {args.dot}"
    out.emit(text, {"nodes": [M.to_json() for M in h.nodes], "edges": [list(e) for e in h.edges]})
    return 0


def cmd_hasse(args, out: Out) -> int:
    h = bruhat.hasse_diagram(args.m, args.n, plus_only=args.plus, max_cells=args.max_cells)
    return _hasse_output(h, args, out)


def cmd_bruhat(args, out: Out) -> int:
    op = args.op
    if op == "hasse":
        return cmd_hasse(args, out)
    if op in ("leq", "covers"):
        A, B = _matrix(args.a), _matrix(args.b)
        val = bruhat.bruhat_leq(A, B) if op == "leq" else bruhat.covers(A, B, max_cells=args.max_cells)
        out.emit(str(val).lower(), {op: val})
        return 0
    if op in ("meet", "join"):
        A, B = _matrix(args.a), _matrix(args.b)
        M = bruhat.bruhat_meet(A, B) if op == "meet" else bruhat.bruhat_join(A, B)
        out.emit(_mat_text(M), M.to_json())
        return 0
    if op == "decompose":
        parts = bruhat.meet_irreducible_decomposition(_matrix(args.a))
        out.emit("\n\n".join(_mat_text(M) for M in parts), [M.to_json() for M in parts])
        return 0
    if op == "ops":
        ops = bruhat.bruhat_op_sequence(_matrix(args.a), _matrix(args.b))
        out.emit("\n".join(str(o) for o in ops) or "(no operations)", [{"kind": o.kind, "rows": list(o.rows), "cols": list(o.cols)} for o in ops])
        return 0
    # profile
    prof = bruhat.irreducible_profile(_matrix(args.a), max_cells=args.max_cells)
    text = "below: " + "".join(map(str, prof.below)) + "\nabove: " + "".join(map(str, prof.above))
    out.emit(text, {"below": list(prof.below), "above": list(prof.above)})
    return 0


def cmd_incidence(args, out: Out) -> int:
    D = digraph.parse_digraph(_read(args.file))
    reason = digraph.orderability_failure(D)
    if reason is not None:
        out.emit(f"not orderable: {reason}", {"orderable": False, "reason": reason})
        return 1
    vo, eo, M = digraph.srm_ordering(D)
    text = f"vertex order: {' '.join(map(str, vo))}\nedge order: {' '.join(f'{u}->{v}' for u, v in eo)}\n{_mat_text(M)}"
    out.emit(text, {"orderable": True, "vertex_order": vo, "edge_order": [list(e) for e in eo], "matrix": M.to_json()})
    return 0


def cmd_polytope(args, out: Out) -> int:
    if args.verify:
        m, n, c = args.verify
        rep = polytope.verify_polytope(m, n, c, max_cells=args.max_cells)
        out.emit("\n".join(rep.lines()), {**rep.__dict__, "ok": rep.ok})
        return 0 if rep.ok else 1
    if args.check is None or args.c is None:
        raise DomainError("give either --verify m n c or --check FILE --c K")
    X = polytope.parse_rational_matrix(_read(args.check))
    spec = polytope.PolytopeSpec(len(X), len(X[0]), args.c)
    mem = polytope.polytope_contains(X, spec)
    vertex = polytope.is_vertex(X, spec) if mem else None
    text = str(mem) + ("" if vertex is None else f"\nvertex: {str(vertex).lower()}")
    out.emit(text, {"inside": mem.inside, "violated": None if mem else str(mem.violated), "vertex": vertex})
    return 0


def cmd_decompose(args, out: Out) -> int:
    dec = decompose.signed_subperm_decomposition(_matrix(args.file))
    text = "\n\n".join(f"{'+' if s > 0 else '-'}1\n{_mat_text(P)}" for s, P in dec.terms)
    out.emit(text, [{"sign": s, "matrix": P.to_json()} for s, P in dec.terms])
    return 0


def cmd_joint(args, out: Out) -> int:
    jr = decompose.find_joint_realization(args.r1, args.s1, args.r2, args.s2, max_cells=args.max_cells)
    if jr is None:
        out.emit("none", None)
        return 0
    out.emit(f"B1:\n{_mat_text(jr.B1)}\nB2:\n{_mat_text(jr.B2)}", {"B1": jr.B1.to_json(), "B2": jr.B2.to_json()})
    return 0


def cmd_verify_all(args, out: Out) -> int:
    results = verify.run_all(args.only)
    width = max(len(r.title) for r in results)
    lines = [f"{r.key:>9}  {r.title:<{width}}  {'PASS' if r.passed else 'FAIL'}  {r.seconds:6.2f}s  {r.detail}" for r in results]
    out.emit("\n".join(lines), [r.__dict__ for r in results])
    return 0 if all(r.passed for r in results) else 1


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    # SUPPRESS so a flag given before the subcommand is not reset by the subparser
    common.add_argument("--json", action="store_true", default=argparse.SUPPRESS, help="machine-readable output")
    common.add_argument(
        "--max-cells", type=int, default=argparse.SUPPRESS, help=f"enumeration cap (default {enumeration.DEFAULT_MAX_CELLS})"
    )

    p = argparse.ArgumentParser(prog="srm", description="Sign-restricted matrix toolkit", parents=[common])
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("validate", parents=[common], help="check the SRM conditions")
    s.add_argument("file")
    s.set_defaults(func=cmd_validate)

    s = sub.add_parser("enumerate", parents=[common], help="list or count SRMs")
    s.add_argument("m", type=int)
    s.add_argument("n", type=int)
    s.add_argument("--count", action="store_true")
    s.add_argument("--plus", action="store_true", help="no -1 entries")
    s.add_argument("--c", type=int, default=None, help="row-sum cap")
    s.add_argument("--R", type=_vector, default=None)
    s.add_argument("--S", type=_vector, default=None)
    s.set_defaults(func=cmd_enumerate)

    s = sub.add_parser("zeta", parents=[common], help="maximum number of nonzeros")
    s.add_argument("m", type=int)
    s.add_argument("n", type=int)
    s.add_argument("--extremal", action="store_true", help="also print a matrix attaining it")
    s.set_defaults(func=cmd_zeta)

    s = sub.add_parser("eliminate", parents=[common], help="remove -1's by interchanges")
    s.add_argument("file")
    s.add_argument("--verbose", action="store_true")
    s.set_defaults(func=cmd_eliminate)

    s = sub.add_parser("path", parents=[common], help="interchange path between two matrices")
    s.add_argument("a")
    s.add_argument("b")
    s.add_argument("--pm", action="store_true", help="search inside the (0,+-1) class (shortest path)")
    s.add_argument("--verbose", action="store_true")
    s.set_defaults(func=cmd_path)

    s = sub.add_parser("bruhat", parents=[common], help="Bruhat order operations")
    s.add_argument("op", choices=["leq", "meet", "join", "covers", "hasse", "decompose", "ops", "profile"])
    s.add_argument("a", nargs="?")
    s.add_argument("b", nargs="?")
    s.add_argument("--m", type=int)
    s.add_argument("--n", type=int)
    s.add_argument("--plus", action="store_true")
    s.add_argument("--dot", default=None)
    s.set_defaults(func=cmd_bruhat)

    s = sub.add_parser("hasse", parents=[common], help="Hasse diagram of a class")
    s.add_argument("--m", type=int, required=True)
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--plus", action="store_true")
    s.add_argument("--dot", default=None, help="write DOT to this file")
    s.set_defaults(func=cmd_hasse)

    s = sub.add_parser("incidence", parents=[common], help="SRM ordering of a digraph incidence matrix")
    s.add_argument("file")
    s.set_defaults(func=cmd_incidence)

    s = sub.add_parser("polytope", parents=[common], help="c-SRM polytope checks")
    s.add_argument("--check", default=None, metavar="FILE")
    s.add_argument("--c", type=int, default=None)
    s.add_argument("--verify", type=int, nargs=3, metavar=("M", "N", "C"))
    s.set_defaults(func=cmd_polytope)

    s = sub.add_parser("decompose", parents=[common], help="signed subpermutation decomposition")
    s.add_argument("file")
    s.set_defaults(func=cmd_decompose)

    s = sub.add_parser("joint", parents=[common], help="search for a joint realization")
    s.add_argument("--r1", type=_vector, required=True)
    s.add_argument("--s1", type=_vector, required=True)
    s.add_argument("--r2", type=_vector, required=True)
    s.add_argument("--s2", type=_vector, required=True)
    s.set_defaults(func=cmd_joint)

    s = sub.add_parser("verify-all", parents=[common], help="run every desk-scale verification suite")
    s.add_argument("--only", nargs="*", default=None, help="suite keys to run")
    s.set_defaults(func=cmd_verify_all)
    return p


def _check_bruhat_args(args, parser):
    if args.command != "bruhat":
        return
    need = {"leq": 2, "meet": 2, "join": 2, "covers": 2, "ops": 2, "decompose": 1, "profile": 1, "hasse": 0}[args.op]
    given = sum(x is not None for x in (args.a, args.b))
    if given != need:
        parser.error(f"bruhat {args.op} takes {need} matrix file(s)")
    if args.op == "hasse" and (args.m is None or args.n is None):
        parser.error("bruhat hasse needs --m and --n")


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    args.json = getattr(args, "json", False)
    args.max_cells = getattr(args, "max_cells", None)
    _check_bruhat_args(args, parser)
    out = Out(args.json)
    with warnings.catch_warnings():
        warnings.simplefilter("ignore" if args.json else "default")
        try:
            return args.func(args, out)
        except DomainError as exc:
            print(f"error: {exc}", file=sys.stderr)
            return 1
        except json.JSONDecodeError as exc:
            print(f"error: bad JSON input: {exc}", file=sys.stderr)
            return 1


if __name__ == "__main__":
    sys.exit(main())
