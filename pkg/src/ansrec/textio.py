"""Line-based text formats for automata and normal-form unions.

Automaton format::

    alphabet a b          # symbols in increasing order
    arity 2               # letters of arity > 1 are written a|#|b
    states q0 q1
    initial q0
    accepting q1
    trans q0 a|# q1

Lines starting with ``#`` are comments, as is everything after a
standalone ``#`` token.

Normal-form format, one summand per block, blocks separated by ``---``::

    dim 4
    level A={1,2,3,4} c=5 b=(0,0,0,0)
"""

from __future__ import annotations

import re

from .automata import PAD, Automaton, AutomatonError, OrderedAlphabet, padded_alphabet, relabel
from .normalform import InvalidNormalForm, NormalForm, NormalFormSet


class ParseError(ValueError):
    def __init__(self, message: str, line: int | None = None):
        self.line = line
        super().__init__(f"line {line}: {message}" if line is not None else message)


def _tokens(line: str) -> list[str]:
    if line.lstrip().startswith("#"):
        return []
    toks = line.split()
    if PAD in toks:
        toks = toks[: toks.index(PAD)]
    return toks


def parse_automaton(text: str) -> Automaton:
    symbols = arity = None
    states: list[str] = []
    initial: list[str] = []
    accepting: list[str] = []
    raw_trans = []
    seen = set()
    for lineno, line in enumerate(text.splitlines(), 1):
        toks = _tokens(line)
        if not toks:
            continue
        key, args = toks[0], toks[1:]
        if key in seen and key != "trans":
            raise ParseError(f"duplicate '{key}' line", lineno)
        seen.add(key)
        if key == "alphabet":
            symbols = args
        elif key == "arity":
            if len(args) != 1 or not args[0].isdigit() or int(args[0]) < 1:
                raise ParseError("arity must be a positive integer", lineno)
            arity = int(args[0])
        elif key == "states":
            states = args
        elif key == "initial":
            initial = args
        elif key == "accepting":
            accepting = args
        elif key == "trans":
            if len(args) != 3:
                raise ParseError("trans needs: source letter target", lineno)
            raw_trans.append((lineno, *args))
        else:
            raise ParseError(f"unknown directive '{key}'", lineno)
    if symbols is None:
        raise ParseError("missing 'alphabet' line")
    try:
        base = OrderedAlphabet(tuple(symbols))
    except ValueError as exc:
        raise ParseError(str(exc)) from None
    alphabet = padded_alphabet(base, arity or 1)
    if not initial:
        raise ParseError("missing 'initial' line")
    known = set(states)
    transitions = []
    for lineno, p, x, q in raw_trans:
        letter = alphabet.letter(x.split("|")) if alphabet.arity > 1 else x
        if letter not in alphabet:
            raise ParseError(f"letter '{x}' not in the alphabet", lineno)
        for name in (p, q):
            if known and name not in known:
                raise ParseError(f"unknown state '{name}'", lineno)
        transitions.append((p, letter, q))
    for name in initial + accepting:
        if known and name not in known:
            raise ParseError(f"unknown state '{name}'")
    try:
        return Automaton.build(alphabet, transitions, initial, accepting, states)
    except AutomatonError as exc:
        raise ParseError(str(exc)) from None


def _letter_text(alphabet, x) -> str:
    return x if alphabet.arity == 1 else "|".join(x)


def dump_automaton(a: Automaton) -> str:
    """Serialize with states renamed q0, q1, ... in breadth-first order."""
    a = relabel(a)
    alphabet = a.alphabet
    lines = [
        "alphabet " + " ".join(alphabet.base.symbols),
        f"arity {alphabet.arity}",
        "states " + " ".join(f"q{i}" for i in sorted(a.states)),
        "initial " + " ".join(f"q{i}" for i in sorted(a.initial)),
        ("accepting " + " ".join(f"q{i}" for i in sorted(a.accepting))).rstrip(),
    ]
    for p in sorted(a.delta):
        row = a.delta[p]
        for x in sorted(row, key=alphabet.index):
            for q in sorted(row[x]):
                lines.append(f"trans q{p} {_letter_text(alphabet, x)} q{q}")
    return "\n".join(lines) + "\n"


_LEVEL = re.compile(r"^level\s+A=\{([\d,\s]*)\}\s+c=(\d+)\s+b=\(([\d,\s]*)\)\s*$")
_DIM = re.compile(r"^dim\s+(\d+)\s*$")


def _ints(text: str) -> list[int]:
    return [int(t) for t in text.replace(",", " ").split()]


def parse_normal_forms(text: str) -> NormalFormSet:
    """Parse a union of normal forms; a block with no levels adds nothing."""
    blocks: list[list[tuple[int, str]]] = [[]]
    for lineno, line in enumerate(text.splitlines(), 1):
        stripped = line.strip()
        if not stripped or stripped.startswith("#"):
            continue
        if stripped == "---":
            blocks.append([])
        else:
            blocks[-1].append((lineno, stripped))
    dim = None
    forms = []
    for block in blocks:
        if not block:
            continue
        lineno, first = block[0]
        m = _DIM.match(first)
        if not m:
            raise ParseError("block must start with 'dim d'", lineno)
        d = int(m.group(1))
        if dim is not None and d != dim:
            raise ParseError("all blocks must share the dimension", lineno)
        dim = d
        chain, coeffs, offsets = [], [], []
        for lineno, line in block[1:]:
            m = _LEVEL.match(line)
            if not m:
                raise ParseError("expected 'level A={...} c=... b=(...)'", lineno)
            chain.append(_ints(m.group(1)))
            coeffs.append(int(m.group(2)))
            offsets.append(_ints(m.group(3)))
        if not chain:
            continue
        try:
            forms.append(NormalForm.from_vectors(d, chain, coeffs, offsets))
        except InvalidNormalForm as exc:
            raise ParseError(str(exc), block[0][0]) from None
    if dim is None:
        raise ParseError("missing 'dim' line")
    return NormalFormSet(dim, tuple(forms))


def dump_normal_forms(x: NormalFormSet) -> str:
    if not x.forms:
        return f"dim {x.dim}\n"
    blocks = []
    for nf in x.forms:
        heads = ["A={" + ",".join(map(str, sorted(lv.support))) + "}" for lv in nf.levels]
        width = max(map(len, heads))
        lines = [f"dim {nf.dim}"]
        for head, lv in zip(heads, nf.levels):
            b = ",".join(map(str, nf.offset_vector(lv)))
            lines.append(f"level {head.ljust(width)} c={lv.coeff} b=({b})")
        blocks.append("\n".join(lines))
    return "\n---\n".join(blocks) + "\n"
