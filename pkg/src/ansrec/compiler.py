"""Compile 1-recognizable sets into automata for rep_S(X)^# in any ANS S.

Every Y-set becomes a constraint on one or two tracks, built from the
relation algebra; the remaining tracks only have to lie in L.  Normal forms
are compiled through their Y-decomposition, and unions/intersections of the
pieces are taken on padded languages, which is sound because rep_S is a
bijection and padding is canonical.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from typing import Callable, Sequence

import numpy as np

from . import automata as fa
from . import oracles
from .ans import Ans, congruence_pair_recognizer, progression_recognizer
from .automata import PAD, Automaton, padded_alphabet
from .normalform import NormalForm, NormalFormSet, as_set
from .relations import pad, project_automaton, radix_leq, shift, track_language, unpad
from .ysets import YDecomposition, YSet, y_decompose


@dataclass(frozen=True, eq=False)
class CompiledSet:
    automaton: Automaton
    ans: Ans
    source: str = ""

    @property
    def dim(self) -> int:
        return self.automaton.arity

    def contains(self, point: Sequence[int]) -> bool:
        if len(point) != self.dim:
            raise ValueError(f"expected a point of dimension {self.dim}")
        return self.automaton.accepts(pad([self.ans.rep(n) for n in point]))

    __contains__ = contains


def _min(a: Automaton) -> Automaton:
    return fa.minimize(a if a.deterministic else fa.determinize(a))


@lru_cache(maxsize=None)
def _track_language(s: Ans, d: int) -> Automaton:
    return _min(track_language(s, d))


@lru_cache(maxsize=None)
def _difference_at_least(s: Ans, r: int, offset: int, threshold: int) -> Automaton:
    """Pairs (rep m, rep n) with n = m + r*i + offset for some i >= threshold.

    A guessed third track v carries rep(m + r*threshold + offset); the pair
    is accepted when v <= rep n in radix order and n - m = offset mod r.
    Tracks: 0 = m, 1 = n, 2 = the guess.
    """
    start = shift(s, r * threshold + offset).automaton
    order = radix_leq(s).automaton
    congruence = congruence_pair_recognizer(s, r, offset % r)
    triple = fa.intersect(fa.embed(start, [0, 2], 3), fa.embed(order, [2, 1], 3),
                          fa.embed(congruence, [0, 1], 3))
    return _min(project_automaton(triple, 2))


@lru_cache(maxsize=None)
def constraint(s: Ans, y: YSet) -> tuple[Automaton, tuple[int, ...]]:
    """Automaton for the Y-set's condition and the 0-based tracks it reads."""
    values = y.values()
    if y.form.relative:
        tracks = (y.k - 1, y.j - 1)
        if values is not None:
            if not values:
                return fa.empty(padded_alphabet(s.alphabet, 2)), tracks
            return _min(fa.union(*(shift(s, v).automaton for v in values))), tracks
        return _difference_at_least(s, y.r, y.s, y.threshold), tracks
    tracks = (y.j - 1,)
    if values is not None:
        return _min(fa.from_words(s.alphabet, [s.rep(v) for v in values])), tracks
    return progression_recognizer(s, y.r, y.s, y.threshold), tracks


def _intersection(s: Ans, ys: Sequence[YSet], d: int) -> Automaton:
    for y in ys:
        if max(y.j, y.k or 0) > d:
            raise ValueError(f"Y-set axis beyond dimension {d}")
    factors = [_track_language(s, d)]
    for y in ys:
        a, tracks = constraint(s, y)
        factors.append(fa.embed(a, tracks, d) if d > 1 else a)
    return fa.intersect(*factors)


def compile_yset(s: Ans, y: YSet, d: int) -> CompiledSet:
    return CompiledSet(_min(_intersection(s, [y], d)), s, y.describe())


def compile_ydecomposition(s: Ans, yd: YDecomposition) -> CompiledSet:
    parts = [_intersection(s, yd.b_terms, yd.dim)]
    parts += [_intersection(s, term, yd.dim) for term in yd.a_terms]
    return CompiledSet(_min(fa.union(*parts)), s, "Y-decomposition")


def compile(s: Ans, x: NormalForm | NormalFormSet) -> CompiledSet:
    """Automaton accepting rep_S(X)^# for a finite union X of normal forms."""
    x = as_set(x)
    parts = []
    for nf in x.forms:
        yd = y_decompose(nf)
        parts.append(_intersection(s, yd.b_terms, x.dim))
        parts += [_intersection(s, term, x.dim) for term in yd.a_terms]
    if not parts:
        return CompiledSet(fa.minimize(fa.empty(padded_alphabet(s.alphabet, x.dim))), s, "empty")
    return CompiledSet(_min(fa.union(*parts)), s, f"{len(x.forms)} normal form(s)")


@dataclass
class VerifyReport:
    n_checked: int = 0
    failures: list[tuple[tuple[int, ...], str]] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.failures

    def lines(self) -> list[str]:
        if self.ok:
            return [f"OK n_checked={self.n_checked}"]
        return [f"FAIL tuple={t} direction={direction}" for t, direction in self.failures]


def _accept_grid(dfa: Automaton, words: list[tuple], d: int) -> np.ndarray:
    """Acceptance of pad(words[x_1], ..., words[x_d]) for every index tuple."""
    base = dfa.alphabet.base
    k = len(base.symbols) + 1
    alphabet = dfa.alphabet
    n_states = len(dfa.states)
    table = np.zeros((n_states, k ** d), dtype=np.int64)
    for code in range(1, k ** d):
        digits = np.unravel_index(code, (k,) * d)
        tracks = [PAD if c == 0 else base.symbols[c - 1] for c in digits]
        x = alphabet.letter(tracks)
        for q in range(n_states):
            table[q, code] = dfa.next(q, x)
    length = max(len(w) for w in words)
    codes = np.zeros((len(words), length), dtype=np.int64)
    for i, w in enumerate(words):
        codes[i, : len(w)] = [base.index(c) + 1 for c in w]
    grids = np.indices((len(words),) * d).reshape(d, -1)
    weights = [k ** (d - 1 - i) for i in range(d)]
    state = np.full(grids.shape[1], dfa.start, dtype=np.int64)
    for pos in range(length):
        letter = sum(codes[grids[i], pos] * weights[i] for i in range(d))
        moving = letter > 0
        state[moving] = table[state[moving], letter[moving]]
    accepting = np.zeros(n_states, dtype=bool)
    accepting[list(dfa.accepting)] = True
    return accepting[state].reshape((len(words),) * d)


def verify(s: Ans, x: NormalForm | NormalFormSet, compiled: CompiledSet | Automaton,
           bound: int, member: Callable[[tuple[int, ...]], bool] | None = None) -> VerifyReport:
    """Two-sided bounded check of a compiled automaton against the set.

    (i) every tuple in [0, bound]^d is accepted iff it belongs to the set;
    (ii) every accepted word no longer than rep(bound) decodes to a member.
    Membership comes from ``member`` or else from brute-force enumeration.
    """
    x = as_set(x)
    a = compiled.automaton if isinstance(compiled, CompiledSet) else compiled
    d = x.dim
    if a.arity != d:
        raise ValueError(f"automaton arity {a.arity} != set dimension {d}")
    dfa = fa.minimize(a if a.deterministic else fa.determinize(a))
    max_len = len(s.rep(bound))
    top = s.count_shorter(max_len + 1) - 1
    if member is None:
        inside = oracles.set_points(x, top)
        member = inside.__contains__
    report = VerifyReport()

    words = [s.rep(n) for n in range(bound + 1)]
    accepted = _accept_grid(dfa, words, d)
    for point in oracles.box_points(d, bound):
        got = bool(accepted[point])
        want = member(point)
        if got != want:
            report.failures.append((point, "spurious" if got else "missing"))
    report.n_checked = accepted.size

    for w in accepted_words(dfa, max_len):
        point = tuple(s.val(t) for t in unpad(w, d))
        if max(point) <= bound:
            continue  # already checked in direction (i)
        report.n_checked += 1
        if not member(point):
            report.failures.append((point, "spurious"))
    report.failures = sorted(set(report.failures))
    return report


def accepted_words(dfa: Automaton, max_len: int):
    """Accepted words of length <= max_len (depth first, pruned)."""
    letters = dfa.alphabet.letters
    # dist[q] = shortest accepted suffix length from q
    dist = {q: 0 for q in dfa.accepting}
    changed = True
    while changed:
        changed = False
        for p in dfa.states:
            for x in letters:
                q = dfa.next(p, x)
                if q in dist and dist.get(p, max_len + 1) > dist[q] + 1:
                    dist[p] = dist[q] + 1
                    changed = True
    stack = [(dfa.start, ())]
    while stack:
        q, w = stack.pop()
        if q not in dist or len(w) + dist[q] > max_len:
            continue
        if q in dfa.accepting:
            yield w
        for x in letters:
            stack.append((dfa.next(q, x), w + (x,)))
