"""Synchronous relations as automata over #-padded tuple words.

Tracks are numbered from 0.  Every relation built here accepts only
well-padded words: on each track the pad symbol, once it appears, stays
until the end.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Sequence

from . import automata as fa
from .ans import Ans
from .automata import PAD, Automaton, OrderedAlphabet, padded_alphabet


class IllPadded(ValueError):
    pass


def pad(words: Sequence[Sequence[str]]) -> tuple:
    """Align a tuple of words into one word over the padded tuple alphabet."""
    words = [tuple(w) for w in words]
    if len(words) == 1:
        return words[0]
    m = max((len(w) for w in words), default=0)
    return tuple(zip(*(w + (PAD,) * (m - len(w)) for w in words)))


def unpad(word: Sequence, d: int) -> tuple[tuple[str, ...], ...]:
    """Inverse of :func:`pad`; raises :class:`IllPadded` on malformed input."""
    word = tuple(word)
    if d == 1:
        if PAD in word:
            raise IllPadded("pad symbol in an arity-1 word")
        return (word,)
    out = []
    for i in range(d):
        track = [x[i] for x in word]
        n = track.index(PAD) if PAD in track else len(track)
        if any(c != PAD for c in track[n:]):
            raise IllPadded(f"track {i} resumes after padding")
        out.append(tuple(track[:n]))
    if word and all(c == PAD for c in word[-1]):
        raise IllPadded("all-pad letter")
    return tuple(out)


def well_padded(base: OrderedAlphabet, d: int) -> Automaton:
    """DFA accepting every well-padded d-ary word over ``base``."""
    alphabet = padded_alphabet(base, d)
    if d == 1:
        return fa.universal(alphabet)
    transitions = []
    masks = [0]
    seen = {0}
    while masks:
        mask = masks.pop()
        for x in alphabet.letters:
            if any(mask >> i & 1 and c != PAD for i, c in enumerate(x)):
                continue
            new = mask | sum(1 << i for i, c in enumerate(x) if c == PAD)
            transitions.append((mask, x, new))
            if new not in seen:
                seen.add(new)
                masks.append(new)
    return Automaton.build(alphabet, transitions, [0], seen)


def validate_padded(a: Automaton) -> bool:
    """True iff every word accepted by ``a`` is well padded."""
    if a.arity == 1:
        return True
    return fa.includes(well_padded(a.alphabet.base, a.arity), a)


@dataclass(frozen=True, eq=False)
class PaddedRelation:
    automaton: Automaton
    ans: Ans | None = None

    @property
    def arity(self) -> int:
        return self.automaton.arity

    @property
    def base(self) -> OrderedAlphabet:
        return self.automaton.alphabet.base

    def accepts(self, words: Sequence[Sequence[str]]) -> bool:
        if len(words) != self.arity:
            raise ValueError(f"expected {self.arity} words")
        return self.automaton.accepts(pad(words))

    def accepts_numbers(self, numbers: Sequence[int]) -> bool:
        if self.ans is None:
            raise ValueError("relation is not attached to a numeration system")
        return self.accepts([self.ans.rep(n) for n in numbers])

    def minimized(self) -> PaddedRelation:
        return PaddedRelation(_min(self.automaton), self.ans)


def _min(a: Automaton) -> Automaton:
    return fa.minimize(a if a.deterministic else fa.determinize(a))


def _check_base(r1: PaddedRelation, r2: PaddedRelation) -> None:
    if r1.base != r2.base:
        raise fa.AlphabetMismatch(f"{r1.base} != {r2.base}")


def cylindrify(rel: PaddedRelation, at: int, constrain: Automaton | None = None) -> PaddedRelation:
    """Insert a new track at position ``at``, ranging over Σ* or over ``constrain``."""
    d = rel.arity
    if not 0 <= at <= d:
        raise ValueError(f"insert position {at} out of range for arity {d}")
    old_tracks = [i for i in range(d + 1) if i != at]
    extra = constrain if constrain is not None else fa.universal(rel.base)
    if extra.alphabet != rel.base:
        raise fa.AlphabetMismatch("constraint must be over the base alphabet")
    a = fa.intersect(fa.embed(rel.automaton, old_tracks, d + 1), fa.embed(extra, [at], d + 1))
    return PaddedRelation(a, rel.ans)


def project_automaton(a: Automaton, drop: int) -> Automaton:
    """Erase track ``drop``; letters that become all-pad turn into epsilon moves."""
    d = a.arity
    if d < 2:
        raise ValueError("projection needs arity >= 2")
    if not 0 <= drop < d:
        raise ValueError(f"track {drop} out of range for arity {d}")
    target = padded_alphabet(a.alphabet.base, d - 1)
    transitions, epsilon = [], []
    for p, x, q in a.transitions():
        rest = x[:drop] + x[drop + 1:]
        if all(c == PAD for c in rest):
            epsilon.append((p, q))
        else:
            transitions.append((p, target.letter(rest), q))
    out = fa.remove_epsilon(target, transitions, epsilon, a.initial, a.accepting)
    if d - 1 > 1:
        out = fa.intersect(out, well_padded(target.base, d - 1))
    return out


def project(rel: PaddedRelation, drop: int) -> PaddedRelation:
    """Existentially quantify track ``drop``."""
    return PaddedRelation(project_automaton(rel.automaton, drop), rel.ans)


def compose(r1: PaddedRelation, r2: PaddedRelation) -> PaddedRelation:
    """``{(x, z) : (x, y) in r1 and (y, z) in r2 for some y}``."""
    if r1.arity != 2 or r2.arity != 2:
        raise ValueError("compose works on binary relations")
    _check_base(r1, r2)
    middle = fa.intersect(fa.embed(r1.automaton, [0, 1], 3), fa.embed(r2.automaton, [1, 2], 3))
    return PaddedRelation(_min(project_automaton(middle, 1)), r1.ans or r2.ans)


def track_language(s: Ans, d: int) -> Automaton:
    """Padded words whose every track lies in L."""
    if d == 1:
        return s.dfa
    return fa.intersect(*(fa.embed(s.dfa, [i], d) for i in range(d)))


def radix_order_automaton(base: OrderedAlphabet) -> Automaton:
    """Pairs (x, y)^# over Σ* with x <= y in radix order."""
    alphabet = padded_alphabet(base, 2)
    transitions = []
    for x, y in alphabet.letters:
        if x != PAD and y != PAD:
            cmp = (base.index(x) > base.index(y)) - (base.index(x) < base.index(y))
            new = {0: "eq", -1: "lt", 1: "gt"}[cmp]
            transitions.append(("eq", (x, y), new))
            transitions += [("lt", (x, y), "lt"), ("gt", (x, y), "gt")]
        elif x == PAD:
            transitions += [(c, (x, y), "shorter") for c in ("eq", "lt", "gt", "shorter")]
        else:
            transitions += [(c, (x, y), "longer") for c in ("eq", "lt", "gt", "longer")]
    return Automaton.build(alphabet, transitions, ["eq"], ["eq", "lt", "shorter"])


@lru_cache(maxsize=None)
def radix_leq(s: Ans) -> PaddedRelation:
    """``{(x, y)^# : x, y in L, x <= y in radix order}``."""
    a = fa.intersect(radix_order_automaton(s.alphabet), track_language(s, 2))
    return PaddedRelation(_min(a), s)


@lru_cache(maxsize=None)
def equality(s: Ans) -> PaddedRelation:
    alphabet = padded_alphabet(s.alphabet, 2)
    transitions = [(p, (x, x), q) for p, x, q in s.dfa.transitions()]
    a = Automaton.build(alphabet, transitions, s.dfa.initial, s.dfa.accepting, s.dfa.states)
    return PaddedRelation(fa.minimize(a), s)


@lru_cache(maxsize=None)
def strict_less(s: Ans) -> PaddedRelation:
    a = fa.difference(radix_leq(s).automaton, equality(s).automaton)
    return PaddedRelation(_min(a), s)


@lru_cache(maxsize=None)
def successor(s: Ans) -> PaddedRelation:
    """``{(rep n, rep n+1)^#}``: pairs x < y with nothing strictly between."""
    less = strict_less(s)
    gap = compose(less, less)
    return PaddedRelation(_min(fa.difference(less.automaton, gap.automaton)), s)


@lru_cache(maxsize=None)
def shift(s: Ans, k: int) -> PaddedRelation:
    """``{(rep n, rep n+k)^#}`` as the k-fold composition of the successor."""
    if k < 0:
        raise ValueError("shift needs k >= 0")
    if k == 0:
        return equality(s)
    return compose(shift(s, k - 1), successor(s))
