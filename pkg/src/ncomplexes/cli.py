"""Command-line interface.

Exit codes: 0 on success, 1 when the input or the arguments cannot be
parsed, 2 when the input parses but fails a mathematical check.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Any, Optional, Sequence

from .cohomology import ah_table, contract
from .decompose import decompose
from .document import DocumentError, digest, dumps, loads
from .exactla import NoRootError, PrimeField, primitive_root_of_unity
from .homext import ext_dim, hom_dim
from .ncomplex import ComplexError, NComplex, indecomposable, random_ncomplex, validate
from .tensorfusion import RootOfUnity, clebsch_gordan, tensor

EXIT_OK, EXIT_PARSE, EXIT_MATH = 0, 1, 2


class ParseFailure(Exception):
    pass


class MathFailure(Exception):
    def __init__(self, message: str, payload: Any = None):
        super().__init__(message)
        self.payload = payload


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_PARSE, f"{self.prog}: error: {message}\n")


def _read(path: str) -> tuple[NComplex, dict]:
    try:
        if path == "-":
            text = sys.stdin.read()
        else:
            with open(path, encoding="utf-8") as fh:
                text = fh.read()
    except OSError as exc:
        raise ParseFailure(f"cannot read {path}: {exc.strerror}") from None
    try:
        M = loads(text)
    except DocumentError as exc:
        raise ParseFailure(f"{path}: {exc}") from None
    return M, {"name": path, "sha256": digest(M)}


def _read_valid(path: str) -> tuple[NComplex, dict]:
    M, info = _read(path)
    v = validate(M)
    if v is not None:
        raise MathFailure(f"{path}: invalid {M.N}-complex: {v}", {"kind": v.kind, "degree": v.degree})
    return M, info


def _same_kind(A: NComplex, B: NComplex):
    try:
        A.same_kind(B)
    except ComplexError as exc:
        raise MathFailure(str(exc)) from None


def _write(path: str, M: NComplex):
    try:
        with open(path, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(dumps(M))
    except OSError as exc:
        raise ParseFailure(f"cannot write {path}: {exc.strerror}") from None


def _emit_complex(args, M: NComplex) -> tuple[Any, str]:
    """Result payload and human text for commands producing a complex."""
    if args.output:
        _write(args.output, M)
        return {"output": args.output, "sha256": digest(M), "dims": list(M.dims), "lo": M.lo}, f"wrote {args.output}"
    doc = json.loads(dumps(M))
    return doc, dumps(M).rstrip("\n")


def cmd_validate(args):
    M, info = _read(args.file)
    v = validate(M)
    if v is not None:
        raise MathFailure(f"violation ({v.kind}) at degree {v.degree}: {v}", {"kind": v.kind, "degree": v.degree})
    return [info], {"valid": True}, "ok"


def cmd_ah(args):
    M, info = _read_valid(args.file)
    table = ah_table(M)
    if table:
        text = table.render()
    elif M.is_zero():
        text = "zero complex: empty table"
    else:
        text = "acyclic (projective/injective)"
    return [info], {"N": M.N, "entries": table.to_json()}, text


def cmd_decompose(args):
    M, info = _read_valid(args.file)
    ms = decompose(M)
    return [info], {"summands": ms.to_json()}, "\n".join(ms.lines()) if ms else "0"


def _root(args, field: PrimeField, N: int) -> RootOfUnity:
    try:
        if args.q == "auto":
            return RootOfUnity(field, primitive_root_of_unity(field, N), N)
        try:
            q = int(args.q)
        except ValueError:
            raise ParseFailure(f"--q must be 'auto' or an integer, got {args.q!r}") from None
        return RootOfUnity(field, q, N)
    except (NoRootError, ComplexError) as exc:
        raise MathFailure(str(exc)) from None


def cmd_tensor(args):
    A, ia = _read_valid(args.file_a)
    B, ib = _read_valid(args.file_b)
    _same_kind(A, B)
    q = _root(args, A.field, A.N)
    T = tensor(A, B, q)
    v = validate(T)
    if v is not None:
        raise MathFailure(f"tensor product is not an {A.N}-complex: {v}")
    payload, text = _emit_complex(args, T)
    return [ia, ib], {"q": q.q, "complex": payload}, text


def cmd_contract(args):
    M, info = _read_valid(args.file)
    try:
        C = contract(M, args.e, args.a, canonical=args.canonical)
    except ValueError as exc:
        raise MathFailure(str(exc)) from None
    payload, text = _emit_complex(args, C)
    return [info], {"complex": payload}, text


def cmd_hom(args):
    A, ia = _read_valid(args.file_a)
    B, ib = _read_valid(args.file_b)
    _same_kind(A, B)
    n = hom_dim(A, B)
    return [ia, ib], {"hom_dim": n}, str(n)


def cmd_ext(args):
    A, ia = _read_valid(args.file_a)
    B, ib = _read_valid(args.file_b)
    _same_kind(A, B)
    if args.n < 0:
        raise ParseFailure("-n must be non-negative")
    try:
        n = ext_dim(A, B, args.n)
    except ComplexError as exc:
        raise MathFailure(str(exc)) from None
    return [ia, ib], {"ext_dim": n, "n": args.n}, str(n)


def cmd_fusion(args):
    N, p = args.N, args.p
    if N < 2:
        raise ParseFailure("--N must be at least 2")
    try:
        field = PrimeField(p)
    except ValueError as exc:
        raise ParseFailure(str(exc)) from None
    for name, x in (("u", args.u), ("v", args.v)):
        if not 0 <= x <= N - 1:
            raise ParseFailure(f"{name}={x} outside [0, {N - 1}]")
    try:
        q = RootOfUnity.primitive(field, N)
    except NoRootError as exc:
        raise MathFailure(str(exc)) from None
    expected = clebsch_gordan(N, args.i, args.u, args.j, args.v)
    computed = decompose(tensor(indecomposable(field, N, args.i, args.u), indecomposable(field, N, args.j, args.v), q))
    payload = {"q": q.q, "closed_form": expected.to_json(), "computed": computed.to_json(), "agree": expected == computed}
    if expected != computed:
        raise MathFailure(
            f"closed form {', '.join(expected.lines())} differs from computed {', '.join(computed.lines())}", payload)
    return [], payload, ", ".join(computed.lines())


def cmd_random(args):
    if args.N < 2:
        raise ParseFailure("--N must be at least 2")
    try:
        field = PrimeField(args.p)
    except ValueError as exc:
        raise ParseFailure(str(exc)) from None
    lo, hi = args.window
    if hi < lo or args.max < 0:
        raise ParseFailure("--window must be nonempty and --max non-negative")
    M, ms = random_ncomplex(field, args.N, (lo, hi), args.max, args.seed)
    payload, text = _emit_complex(args, M)
    if args.output:
        text += "\n" + ("\n".join(ms.lines()) if ms else "0")
    return [], {"complex": payload, "summands": ms.to_json()}, text


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", dest="sub_json", help="emit a JSON report")

    parser = _Parser(prog="ncomplexes", description="Exact computations with N-complexes over prime fields.")
    parser.add_argument("--json", action="store_true", help="emit a JSON report")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("validate", parents=[common], help="check shapes and the nilpotency law")
    p.add_argument("file")
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("ah", parents=[common], help="amplitude cohomology table")
    p.add_argument("file")
    p.add_argument("--table", action="store_true", help="render as a table (default)")
    p.set_defaults(func=cmd_ah)

    p = sub.add_parser("decompose", parents=[common], help="Krull-Schmidt multiplicities")
    p.add_argument("file")
    p.set_defaults(func=cmd_decompose)

    p = sub.add_parser("tensor", parents=[common], help="q-deformed tensor product")
    p.add_argument("file_a")
    p.add_argument("file_b")
    p.add_argument("--q", default="auto", help="'auto' (smallest primitive root) or an element of order N")
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_tensor)

    p = sub.add_parser("contract", parents=[common], help="contraction to a 2-complex")
    p.add_argument("file")
    p.add_argument("-e", type=int, required=True, help="initial condition")
    p.add_argument("-a", type=int, required=True, help="amplitude")
    p.add_argument("--canonical", action="store_true", help="normalize so that 0 <= e < N - a")
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_contract)

    p = sub.add_parser("hom", parents=[common], help="dimension of the space of chain maps")
    p.add_argument("file_a")
    p.add_argument("file_b")
    p.set_defaults(func=cmd_hom)

    p = sub.add_parser("ext", parents=[common], help="Ext dimension in the positive category")
    p.add_argument("file_a")
    p.add_argument("file_b")
    p.add_argument("-n", type=int, required=True)
    p.set_defaults(func=cmd_ext)

    p = sub.add_parser("fusion", parents=[common], help="fusion rule for M[i]^u (x) M[j]^v")
    p.add_argument("--N", type=int, required=True)
    p.add_argument("--p", type=int, required=True)
    for name in ("i", "u", "j", "v"):
        p.add_argument(name, type=int)
    p.set_defaults(func=cmd_fusion)

    p = sub.add_parser("random", parents=[common], help="seeded random complex")
    p.add_argument("--N", type=int, required=True)
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--window", type=int, nargs=2, default=(0, 3), metavar=("LO", "HI"))
    p.add_argument("--max", type=int, default=5, help="maximum number of summands")
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_random)
    return parser


def _echo(args) -> dict:
    skip = {"func", "json", "sub_json", "command"}
    return {k: (list(v) if isinstance(v, tuple) else v) for k, v in sorted(vars(args).items()) if k not in skip}


def _report(args, inputs, status: str, result: Any, message: Optional[str] = None) -> str:
    doc = {"command": args.command, "args": _echo(args), "inputs": inputs, "status": status, "result": result}
    if message is not None:
        doc["message"] = message
    return json.dumps(doc, sort_keys=True, indent=2) + "\n"


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    as_json = args.json or args.sub_json
    out = sys.stdout
    try:
        inputs, result, text = args.func(args)
    except ParseFailure as exc:
        if as_json:
            out.write(_report(args, [], "malformed", None, str(exc)))
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except MathFailure as exc:
        if as_json:
            out.write(_report(args, [], "invalid", exc.payload, str(exc)))
        else:
            out.write(f"{exc}\n")
        return EXIT_MATH
    if as_json:
        out.write(_report(args, inputs, "ok", result))
    else:
        out.write(text + "\n" if text else "")
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
