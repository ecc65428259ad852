"""Abstract numeration systems.

An ANS is an infinite regular language L over a totally ordered alphabet;
the integer n is represented by the (n+1)-th word of L in radix order.
``rep`` and ``val`` work by counting accepted words of each length from each
state, so they never enumerate L.
"""

from __future__ import annotations

import bisect
from dataclasses import dataclass
from typing import Sequence

from . import automata as fa
from .automata import Automaton, OrderedAlphabet


class FiniteLanguage(ValueError):
    pass


class NotInLanguage(ValueError):
    pass


class UnknownSymbol(NotInLanguage):
    pass


class Ans:
    """A numeration system ``(L, alphabet, <)`` backed by a trim DFA."""

    def __init__(self, language: Automaton, order: OrderedAlphabet | None = None):
        if language.arity != 1:
            raise fa.AlphabetMismatch("an ANS language must have arity 1")
        if order is not None:
            if set(order.symbols) != set(language.alphabet.symbols):
                raise fa.AlphabetMismatch(
                    f"order {order.symbols} does not match alphabet {language.alphabet.symbols}")
            language = Automaton(order, language.states, language.initial,
                                 language.accepting, language.delta)
        dfa = fa.canonical(language)
        if not dfa.accepting or not fa.has_cycle(dfa):
            raise FiniteLanguage("the language of an ANS must be infinite")
        self.dfa = dfa
        self.alphabet: OrderedAlphabet = dfa.alphabet
        self.initial = dfa.start
        self._succ = {q: [dfa.next(q, x) for x in self.alphabet.symbols]
                      for q in sorted(dfa.states)}
        self._counts: list[dict[int, int]] = [
            {q: int(q in dfa.accepting) for q in self._succ}]
        self._shorter = [0]
        # states whose only move is a loop on one symbol: the rest of the word is forced
        self._loop = {}
        for q, succ in self._succ.items():
            live = [(x, u) for x, u in zip(self.alphabet.symbols, succ) if u is not None]
            if len(live) == 1 and live[0][1] == q:
                self._loop[q] = live[0][0]

    def __repr__(self):
        return f"Ans(alphabet={self.alphabet.symbols}, states={len(self.dfa)})"

    @property
    def states(self) -> list[int]:
        return list(self._succ)

    def _extend(self, m: int) -> None:
        while len(self._counts) <= m:
            prev = self._counts[-1]
            row = {}
            for q, succ in self._succ.items():
                row[q] = sum(prev[t] for t in succ if t is not None)
            self._shorter.append(self._shorter[-1] + prev[self.initial])
            self._counts.append(row)

    def count(self, q: int, m: int) -> int:
        """u_q(m): accepted words of length m read from state q."""
        if q not in self._succ:
            raise KeyError(f"unknown state {q!r}")
        self._extend(m)
        return self._counts[m][q]

    def count_shorter(self, m: int) -> int:
        """Number of words of L of length < m."""
        self._extend(m)
        return self._shorter[m]

    def contains(self, word: Sequence[str]) -> bool:
        return self.dfa.accepts(tuple(word))

    def rep(self, n: int) -> tuple[str, ...]:
        if n < 0:
            raise ValueError("rep is defined on nonnegative integers")
        top = 1
        while self.count_shorter(top) <= n:
            top *= 2
        m = bisect.bisect_right(self._shorter, n, 0, top + 1) - 1
        n -= self.count_shorter(m)
        word = []
        q = self.initial
        for remaining in range(m - 1, -1, -1):
            if q in self._loop:
                word.extend([self._loop[q]] * (remaining + 1))
                break
            for x, t in zip(self.alphabet.symbols, self._succ[q]):
                if t is None:
                    continue
                c = self.count(t, remaining)
                if n < c:
                    word.append(x)
                    q = t
                    break
                n -= c
            else:  # pragma: no cover - counts guarantee a choice
                raise AssertionError("rank exceeds the words of this length")
        return tuple(word)

    def val(self, word: Sequence[str]) -> int:
        word = tuple(word)
        unknown = set(word).difference(self.alphabet.symbols)
        if unknown:
            raise UnknownSymbol(f"symbol {min(unknown)!r} is not in the alphabet")
        m = len(word)
        rank = self.count_shorter(m)
        q = self.initial
        for i, x in enumerate(word):
            if q in self._loop:
                if word[i:].count(self._loop[q]) != m - i:
                    raise NotInLanguage(f"{word!r} is not in the language")
                break
            remaining = m - i - 1
            for y, t in zip(self.alphabet.symbols, self._succ[q]):
                if y == x:
                    q = t
                    break
                if t is not None:
                    rank += self.count(t, remaining)
            if q is None:
                raise NotInLanguage(f"{word!r} is not in the language")
        if q not in self.dfa.accepting:
            raise NotInLanguage(f"{word!r} is not in the language")
        return rank


def new_ans(language: Automaton, order: OrderedAlphabet | None = None) -> Ans:
    return Ans(language, order)


@dataclass(frozen=True)
class ModClassTable:
    """Counts modulo r as an eventually periodic function of the length.

    ``vectors[m]`` holds ``(u_q(m) mod r for q in states) + (V(m) mod r,)``
    for ``m < preperiod + period``; any larger length m behaves like its
    class ``cls(m)``.
    """

    modulus: int
    preperiod: int
    period: int
    vectors: tuple[tuple[int, ...], ...]

    def cls(self, m: int) -> int:
        if m < self.preperiod + self.period:
            return m
        return self.preperiod + (m - self.preperiod) % self.period

    def predecessors(self, c: int) -> list[int]:
        """Classes c' with cls(m - 1) = c' for some m of class c, m >= 1."""
        out = []
        if c == self.preperiod:
            if c > 0:
                out.append(c - 1)
            out.append(self.preperiod + self.period - 1)
        elif c > 0:
            out.append(c - 1)
        return out

    def count(self, q: int, c: int) -> int:
        return self.vectors[c][q]

    def shorter(self, c: int) -> int:
        return self.vectors[c][-1]


def mod_class_table(s: Ans, r: int) -> ModClassTable:
    if r < 1:
        raise ValueError("modulus must be >= 1")
    states = s.states
    pos = {q: i for i, q in enumerate(states)}
    u = tuple(int(q in s.dfa.accepting) % r for q in states)
    v = 0
    seen: dict = {}
    vectors = []
    while True:
        w = u + (v,)
        if w in seen:
            preperiod = seen[w]
            period = len(vectors) - preperiod
            break
        seen[w] = len(vectors)
        vectors.append(w)
        v = (v + u[pos[s.initial]]) % r
        u = tuple(
            sum(u[pos[t]] for t in s._succ[q] if t is not None) % r for q in states)
    table = ModClassTable(r, preperiod, period, tuple(vectors))
    # cross-check the periodicity against exact counts
    for m in range(preperiod, preperiod + 3 * period + 1):
        c = table.cls(m)
        exact = tuple(s.count(q, m) % r for q in states) + (s.count_shorter(m) % r,)
        if exact != vectors[c]:  # pragma: no cover
            raise AssertionError(f"period detection failed at length {m}")
    return table


def _normalize(r: int, s: int, n: int) -> tuple[int, int]:
    """Rewrite {r*i + s : i >= n} with 0 <= s < r."""
    q, s = divmod(s, r)
    return s, n + q


def singleton(s: Ans, values) -> Automaton:
    return fa.from_words(s.alphabet, [s.rep(v) for v in values])


def progression_recognizer(s: Ans, r: int, offset: int, threshold: int = 0) -> Automaton:
    """Minimal DFA for ``{rep(r*n + offset) : n >= threshold}``."""
    if r == 0:
        return fa.minimize(singleton(s, [offset]))
    offset, threshold = _normalize(r, offset, threshold)
    table = mod_class_table(s, r)
    pos = {q: i for i, q in enumerate(s.states)}
    symbols = s.alphabet.symbols
    n_classes = table.preperiod + table.period
    initial = [(s.initial, c, table.shorter(c)) for c in range(n_classes)]
    transitions = []
    seen = set(initial)
    stack = list(initial)
    while stack:
        q, c, rank = stack.pop()
        succ = s._succ[q]
        for c2 in table.predecessors(c):
            add = 0
            for x, t in zip(symbols, succ):
                if t is not None:
                    target = (t, c2, (rank + add) % r)
                    transitions.append(((q, c, rank), x, target))
                    if target not in seen:
                        seen.add(target)
                        stack.append(target)
                    add += table.count(pos[t], c2)
    accepting = [st for st in seen
                 if st[0] in s.dfa.accepting and st[1] == 0 and st[2] == offset]
    nfa = Automaton.build(s.alphabet, transitions, initial, accepting, states=seen)
    dfa = fa.minimize(fa.determinize(nfa))
    if threshold:
        below = singleton(s, [r * n + offset for n in range(threshold)])
        dfa = fa.minimize(fa.determinize(fa.difference(dfa, below)))
    return dfa


def congruence_pair_recognizer(s: Ans, r: int, offset: int) -> Automaton:
    """Minimal DFA over padded pairs for ``{(rep m, rep n) : n - m = offset mod r}``."""
    if r < 1:
        raise ValueError("modulus must be >= 1")
    parts = []
    for i in range(r):
        first = progression_recognizer(s, r, i)
        second = progression_recognizer(s, r, (i + offset) % r)
        parts.append(fa.intersect(fa.embed(first, [0], 2), fa.embed(second, [1], 2)))
    return fa.minimize(fa.determinize(fa.union(*parts)))
