"""1-recognizable subsets of N^d as finite unions of chain normal forms.

A :class:`NormalForm` denotes

    { sum_l (c_l * n_l + b_l) * chi(A_l) : n_l in N }

for a chain of axis sets A_0 ⊇ A_1 ⊇ ... ⊇ A_t (axes are 1-based) where
chi(A) is the 0/1 indicator vector of A.  Its unary padded language is the
concatenation of the blocks (x_A^c)* x_A^b, with x_A the unary tuple letter
that is ``a`` exactly on the tracks of A.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from . import automata as fa
from .automata import PAD, Automaton, OrderedAlphabet, padded_alphabet
from .relations import IllPadded, validate_padded

UNARY = OrderedAlphabet(("a",))


class InvalidNormalForm(ValueError):
    pass


class NotUnary(ValueError):
    pass


@dataclass(frozen=True)
class Level:
    support: frozenset[int]
    coeff: int
    offset: int

    def __post_init__(self):
        object.__setattr__(self, "support", frozenset(self.support))
        if not self.support:
            raise InvalidNormalForm("level support must be nonempty")
        if self.coeff < 0 or self.offset < 0:
            raise InvalidNormalForm("coefficients and offsets must be >= 0")


@dataclass(frozen=True)
class NormalForm:
    dim: int
    levels: tuple[Level, ...]

    def __post_init__(self):
        object.__setattr__(self, "levels", tuple(self.levels))
        if self.dim < 1:
            raise InvalidNormalForm("dimension must be >= 1")
        if not self.levels:
            raise InvalidNormalForm("chain must be nonempty")
        axes = set(range(1, self.dim + 1))
        prev = None
        for lv in self.levels:
            if not lv.support <= axes:
                raise InvalidNormalForm(f"support {sorted(lv.support)} outside 1..{self.dim}")
            if prev is not None and not lv.support <= prev:
                raise InvalidNormalForm("chain must be non-increasing")
            prev = lv.support

    @classmethod
    def from_vectors(cls, dim: int, chain: Sequence[Iterable[int]], coeffs: Sequence[int],
                     offsets: Sequence[Sequence[int]]) -> NormalForm:
        """Build from per-level offset vectors, checking their constraints."""
        if not len(chain) == len(coeffs) == len(offsets):
            raise InvalidNormalForm("chain, coefficients and offsets differ in length")
        levels = []
        for support, c, b in zip(chain, coeffs, offsets):
            support = frozenset(support)
            if len(b) != dim:
                raise InvalidNormalForm(f"offset vector {tuple(b)} has wrong length")
            inside = {b[i - 1] for i in support}
            if any(b[i] for i in range(dim) if i + 1 not in support):
                raise InvalidNormalForm(f"offset {tuple(b)} nonzero outside {sorted(support)}")
            if len(inside) > 1:
                raise InvalidNormalForm(f"offset {tuple(b)} not constant on {sorted(support)}")
            levels.append(Level(support, c, inside.pop() if inside else 0))
        return cls(dim, tuple(levels))

    def offset_vector(self, level: Level) -> tuple[int, ...]:
        return tuple(level.offset if i in level.support else 0
                     for i in range(1, self.dim + 1))

    def points(self, box: Sequence[int]) -> set[tuple[int, ...]]:
        """Members of the set lying in the box ``x <= box`` componentwise."""
        current = {(0,) * self.dim}
        for lv in self.levels:
            ind = [int(i in lv.support) for i in range(1, self.dim + 1)]
            nxt = set()
            for v in current:
                n = 0
                while True:
                    step = lv.coeff * n + lv.offset
                    w = tuple(vi + step * e for vi, e in zip(v, ind))
                    if any(wi > bi for wi, bi in zip(w, box)):
                        break
                    nxt.add(w)
                    if lv.coeff == 0:
                        break
                    n += 1
            current = nxt
        return current

    def contains(self, x: Sequence[int]) -> bool:
        x = tuple(x)
        if len(x) != self.dim or min(x, default=0) < 0:
            return False
        return x in self.points(x)

    __contains__ = contains


@dataclass(frozen=True)
class NormalFormSet:
    """Finite union of normal forms of one dimension."""

    dim: int
    forms: tuple[NormalForm, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "forms", tuple(self.forms))
        for f in self.forms:
            if f.dim != self.dim:
                raise InvalidNormalForm("all summands must share the dimension")

    @classmethod
    def of(cls, *forms: NormalForm) -> NormalFormSet:
        if not forms:
            raise ValueError("use NormalFormSet(dim) for the empty set")
        return cls(forms[0].dim, forms)

    def __or__(self, other: NormalFormSet) -> NormalFormSet:
        if other.dim != self.dim:
            raise InvalidNormalForm("dimension mismatch")
        return NormalFormSet(self.dim, self.forms + other.forms)

    def points(self, box: Sequence[int]) -> set[tuple[int, ...]]:
        out: set = set()
        for f in self.forms:
            out |= f.points(box)
        return out

    def contains(self, x: Sequence[int]) -> bool:
        return any(f.contains(x) for f in self.forms)

    __contains__ = contains


def as_set(x: NormalForm | NormalFormSet) -> NormalFormSet:
    return x if isinstance(x, NormalFormSet) else NormalFormSet.of(x)


def unary_letter(support: Iterable[int], d: int):
    support = set(support)
    if d == 1:
        return "a"
    return tuple("a" if i in support else PAD for i in range(1, d + 1))


def letter_support(letter, d: int) -> frozenset[int]:
    tracks = (letter,) if d == 1 else letter
    return frozenset(i + 1 for i, c in enumerate(tracks) if c != PAD)


def normal_form_to_unary_dfa(x: NormalForm | NormalFormSet) -> Automaton:
    """Minimal DFA of the padded unary representations of the set."""
    x = as_set(x)
    alphabet = padded_alphabet(UNARY, x.dim)
    transitions, epsilon, initial, accepting = [], [], [], []
    for k, nf in enumerate(x.forms):
        counter = 0

        def fresh():
            nonlocal counter
            counter += 1
            return (k, counter)

        entry = fresh()
        initial.append(entry)
        for lv in nf.levels:
            letter = unary_letter(lv.support, x.dim)
            if lv.coeff:
                p = entry
                for i in range(lv.coeff):
                    q = entry if i == lv.coeff - 1 else fresh()
                    transitions.append((p, letter, q))
                    p = q
            p = entry
            for _ in range(lv.offset):
                q = fresh()
                transitions.append((p, letter, q))
                p = q
            entry = fresh()
            epsilon.append((p, entry))
        accepting.append(entry)
    nfa = fa.remove_epsilon(alphabet, transitions, epsilon, initial, accepting)
    return fa.minimize(fa.determinize(nfa))


def _orbit(dfa: Automaton, q, letter) -> list[tuple[object, int, int]]:
    """Targets of q under powers of one letter as ``(state, first n, period)``.

    ``period`` is 0 for a state reached once; n = 0 is only reported for q
    itself when q lies on the letter's cycle.
    """
    path = [q]
    index = {q: 0}
    while True:
        nxt = dfa.next(path[-1], letter)
        if nxt is None:
            return [(s, i, 0) for i, s in enumerate(path) if i > 0]
        if nxt in index:
            tail = index[nxt]
            period = len(path) - tail
            out = []
            for i, s in enumerate(path):
                if i < tail:
                    if i > 0:
                        out.append((s, i, 0))
                else:
                    out.append((s, i, period))
            return out
        index[nxt] = len(path)
        path.append(nxt)


def decompose_unary(a: Automaton) -> NormalFormSet:
    """Finite union of normal forms denoting the set recognized by ``a``.

    ``a`` must be a well-padded automaton over the unary tuple alphabet.
    Accepted runs read letters of non-increasing support, so every run
    splits into segments of constant support; between fixed entry and exit
    states a segment is a unary progression read off the letter's orbit.
    """
    if a.alphabet.base != UNARY:
        raise NotUnary(f"base alphabet is {a.alphabet.base.symbols}, expected ('a',)")
    if not validate_padded(a):
        raise IllPadded("automaton accepts ill-padded words")
    d = a.arity
    dfa = fa.canonical(a)
    letters = sorted(dfa.alphabet.letters, key=lambda x: (-len(letter_support(x, d)), dfa.alphabet.index(x)))
    memo: dict = {}

    def suffixes(q, prev: frozenset | None) -> list[tuple[Level, ...]]:
        key = (q, prev)
        if key in memo:
            return memo[key]
        out: list[tuple[Level, ...]] = []
        if q in dfa.accepting:
            out.append(())
        for x in letters:
            support = letter_support(x, d)
            if prev is not None and not support < prev:
                continue
            if dfa.next(q, x) is None:
                continue
            for target, first, period in _orbit(dfa, q, x):
                level = Level(support, period, first)
                for rest in suffixes(target, support):
                    out.append((level,) + rest)
        memo[key] = out
        return out

    full = frozenset(range(1, d + 1))
    forms = []
    for levels in suffixes(dfa.start, None):
        if not levels:
            levels = (Level(full, 0, 0),)
        forms.append(NormalForm(d, levels))
    return simplify(NormalFormSet(d, forms))


def simplify(x: NormalFormSet) -> NormalFormSet:
    """Drop duplicate summands and summands contained in another summand."""
    unique = list(dict.fromkeys(x.forms))
    dfas: dict[int, Automaton] = {}

    def dfa(i):
        if i not in dfas:
            dfas[i] = normal_form_to_unary_dfa(unique[i])
        return dfas[i]

    # the point with every n = 0 must lie in any summand that covers form i
    base = [tuple(sum(nf.offset_vector(lv)[a] for lv in nf.levels) for a in range(x.dim))
            for nf in unique]
    keep = list(range(len(unique)))
    for i in range(len(unique)):
        for j in keep:
            if j != i and unique[j].contains(base[i]) and fa.includes(dfa(j), dfa(i)):
                keep.remove(i)
                break
    return NormalFormSet(x.dim, tuple(unique[i] for i in keep))
