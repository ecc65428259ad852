"""Command-line front end.

Exit codes: 0 success, 1 verification failure, 2 parse error,
3 invalid input.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from . import automata as fa
from . import compiler, oracles
from .ans import Ans, FiniteLanguage, NotInLanguage
from .normalform import NotUnary, decompose_unary
from .relations import IllPadded, shift
from .textio import ParseError, dump_automaton, dump_normal_forms, parse_automaton, parse_normal_forms

MAX_BOUND = 1000

EXIT_OK, EXIT_VERIFY, EXIT_PARSE, EXIT_INVALID = 0, 1, 2, 3


class InvalidInput(Exception):
    pass


def _read(path: str) -> str:
    try:
        return Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise ParseError(f"{path}: {exc.strerror}") from None


def _load_ans(path: str) -> Ans:
    a = parse_automaton(_read(path))
    try:
        return Ans(a)
    except (FiniteLanguage, fa.AlphabetMismatch) as exc:
        raise InvalidInput(f"{path}: {exc}") from None


def _word_text(word) -> str:
    sep = "" if all(len(x) == 1 for x in word) else " "
    return sep.join(word)


def _parse_word(s: Ans, text: str) -> tuple[str, ...]:
    if all(len(x) == 1 for x in s.alphabet.symbols) and " " not in text:
        return tuple(text)
    return tuple(text.split())


def _emit(text: str, out: str | None) -> None:
    if out:
        Path(out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def _check_bound(bound: int) -> int:
    if not 0 <= bound <= MAX_BOUND:
        raise InvalidInput(f"bound must lie in [0, {MAX_BOUND}]")
    return bound


def cmd_rep(args) -> int:
    s = _load_ans(args.ans)
    print(_word_text(s.rep(args.n)))
    return EXIT_OK


def cmd_val(args) -> int:
    s = _load_ans(args.ans)
    try:
        print(s.val(_parse_word(s, args.word)))
    except NotInLanguage as exc:
        raise InvalidInput(f"{type(exc).__name__}: {exc}") from None
    return EXIT_OK


def cmd_succ(args) -> int:
    s = _load_ans(args.ans)
    if args.k < 0:
        raise InvalidInput("k must be >= 0")
    _emit(dump_automaton(fa.canonical(shift(s, args.k).automaton)), args.output)
    return EXIT_OK


def cmd_compile(args) -> int:
    s = _load_ans(args.ans)
    x = parse_normal_forms(_read(args.set))
    result = compiler.compile(s, x)
    _emit(dump_automaton(fa.canonical(result.automaton)), args.output)
    return EXIT_OK


def cmd_decompose(args) -> int:
    a = parse_automaton(_read(args.unary))
    try:
        x = decompose_unary(a)
    except (IllPadded, NotUnary) as exc:
        raise InvalidInput(f"{type(exc).__name__}: {exc}") from None
    _emit(dump_normal_forms(x), args.output)
    return EXIT_OK


def cmd_verify(args) -> int:
    s = _load_ans(args.ans)
    x = parse_normal_forms(_read(args.set))
    a = parse_automaton(_read(args.compiled))
    if a.alphabet.base != s.alphabet or a.arity != x.dim:
        raise InvalidInput("compiled automaton does not match the ANS alphabet and set dimension")
    report = compiler.verify(s, x, a, _check_bound(args.bound))
    print("\n".join(report.lines()))
    return EXIT_OK if report.ok else EXIT_VERIFY


def cmd_enum(args) -> int:
    x = parse_normal_forms(_read(args.set))
    for point in sorted(oracles.set_points(x, _check_bound(args.bound))):
        print("(" + ",".join(map(str, point)) + ")")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ansrec", description="Abstract numeration systems and 1-recognizable sets.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("rep", help="representation of n")
    p.add_argument("--ans", required=True)
    p.add_argument("n", type=int)
    p.set_defaults(func=cmd_rep)

    p = sub.add_parser("val", help="value of a word")
    p.add_argument("--ans", required=True)
    p.add_argument("word")
    p.set_defaults(func=cmd_val)

    p = sub.add_parser("succ", help="automaton for {(rep n, rep n+k)}")
    p.add_argument("--ans", required=True)
    p.add_argument("--k", type=int, default=1)
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_succ)

    p = sub.add_parser("compile", help="automaton for rep_S(X)^#")
    p.add_argument("--ans", required=True)
    p.add_argument("--set", required=True)
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_compile)

    p = sub.add_parser("decompose", help="normal forms of a unary padded automaton")
    p.add_argument("--unary", required=True)
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_decompose)

    p = sub.add_parser("verify", help="bounded check of a compiled automaton")
    p.add_argument("--ans", required=True)
    p.add_argument("--set", required=True)
    p.add_argument("--compiled", required=True)
    p.add_argument("--bound", type=int, default=25)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("enum", help="list the points of a set up to a bound")
    p.add_argument("--set", required=True)
    p.add_argument("--bound", type=int, default=25)
    p.set_defaults(func=cmd_enum)
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except ParseError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except InvalidInput as exc:
        print(f"invalid input: {exc}", file=sys.stderr)
        return EXIT_INVALID


if __name__ == "__main__":
    sys.exit(main())
