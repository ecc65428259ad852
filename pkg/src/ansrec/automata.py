"""Finite automata over ordered alphabets and padded tuple alphabets.

An :class:`Automaton` is an immutable NFA; deterministic automata are the
special case with one initial state and at most one successor per letter.
Words are tuples of letters.  For arity-1 alphabets a letter is a symbol
string, for tuple alphabets it is a tuple of symbols where ``"#"`` pads.
"""

from __future__ import annotations

import itertools
from collections import deque
from dataclasses import dataclass, field
from functools import cached_property
from typing import Hashable, Iterable, Iterator, Mapping, Sequence

PAD = "#"


class AutomatonError(Exception):
    pass


class AlphabetMismatch(AutomatonError, ValueError):
    pass


class NotDeterministic(AutomatonError, ValueError):
    pass


@dataclass(frozen=True)
class OrderedAlphabet:
    """Finite alphabet whose declaration order is the total order on symbols."""

    symbols: tuple[str, ...]

    def __post_init__(self):
        object.__setattr__(self, "symbols", tuple(self.symbols))
        if not self.symbols:
            raise ValueError("alphabet must be nonempty")
        if len(set(self.symbols)) != len(self.symbols):
            raise ValueError(f"duplicate symbols in {self.symbols}")
        for s in self.symbols:
            if not s or s == PAD or "|" in s or any(ch.isspace() for ch in s):
                raise ValueError(f"invalid symbol {s!r}")

    arity = 1

    @property
    def base(self) -> OrderedAlphabet:
        return self

    @property
    def letters(self) -> tuple[str, ...]:
        return self.symbols

    @cached_property
    def _index(self) -> dict:
        return {s: i for i, s in enumerate(self.symbols)}

    def index(self, letter) -> int:
        return self._index[letter]

    def __contains__(self, letter) -> bool:
        return letter in self._index

    def tracks(self, letter) -> tuple:
        return (letter,)

    def letter(self, tracks: Sequence[str]):
        (s,) = tracks
        return s


@dataclass(frozen=True)
class TupleAlphabet:
    """Letters are ``arity``-tuples over ``base`` plus the pad symbol.

    The all-pad tuple is excluded.  Letters are ordered lexicographically by
    track, with the pad symbol below every base symbol.
    """

    base: OrderedAlphabet
    arity: int

    def __post_init__(self):
        if self.arity < 1:
            raise ValueError("arity must be >= 1")

    @cached_property
    def letters(self) -> tuple[tuple[str, ...], ...]:
        track = (PAD,) + self.base.symbols
        # product() yields the all-pad tuple first
        return tuple(itertools.product(track, repeat=self.arity))[1:]

    @cached_property
    def _index(self) -> dict:
        return {x: i for i, x in enumerate(self.letters)}

    def index(self, letter) -> int:
        return self._index[letter]

    def __contains__(self, letter) -> bool:
        return letter in self._index

    def tracks(self, letter) -> tuple:
        return letter

    def letter(self, tracks: Sequence[str]):
        return tuple(tracks)


def padded_alphabet(base: OrderedAlphabet, d: int):
    """The alphabet of d-ary padded words; arity 1 is the base itself."""
    return base if d == 1 else TupleAlphabet(base, d)


@dataclass(frozen=True, eq=False)
class Automaton:
    alphabet: OrderedAlphabet | TupleAlphabet
    states: frozenset
    initial: frozenset
    accepting: frozenset
    delta: Mapping[Hashable, Mapping[object, frozenset]] = field(repr=False)

    def __post_init__(self):
        if not self.initial <= self.states:
            raise AutomatonError("initial states must be states")
        if not self.accepting <= self.states:
            raise AutomatonError("accepting states must be states")
        for p, row in self.delta.items():
            if p not in self.states:
                raise AutomatonError(f"transition from unknown state {p!r}")
            for x, targets in row.items():
                if x not in self.alphabet:
                    raise AutomatonError(f"letter {x!r} not in alphabet")
                if not targets <= self.states:
                    raise AutomatonError(f"transition to unknown state from {p!r}")

    @classmethod
    def build(cls, alphabet, transitions: Iterable[tuple], initial: Iterable,
              accepting: Iterable, states: Iterable = ()) -> Automaton:
        """Build from ``(source, letter, target)`` triples."""
        delta: dict = {}
        all_states = set(states)
        for p, x, q in transitions:
            delta.setdefault(p, {}).setdefault(x, set()).add(q)
            all_states.update((p, q))
        initial = frozenset(initial)
        accepting = frozenset(accepting)
        all_states |= initial | accepting
        frozen = {p: {x: frozenset(qs) for x, qs in row.items()} for p, row in delta.items()}
        return cls(alphabet, frozenset(all_states), initial, accepting, frozen)

    @property
    def arity(self) -> int:
        return self.alphabet.arity

    @cached_property
    def deterministic(self) -> bool:
        if len(self.initial) != 1:
            return False
        return all(len(t) <= 1 for row in self.delta.values() for t in row.values())

    @property
    def start(self):
        """The initial state of a deterministic automaton."""
        if len(self.initial) != 1:
            raise NotDeterministic("automaton has no unique initial state")
        (q,) = self.initial
        return q

    def successors(self, state, letter) -> frozenset:
        return self.delta.get(state, {}).get(letter, frozenset())

    def next(self, state, letter):
        """Deterministic step; ``None`` when the transition is missing."""
        for q in self.delta.get(state, {}).get(letter, ()):
            return q
        return None

    def step(self, states: Iterable, letter) -> frozenset:
        out: set = set()
        for p in states:
            out |= self.successors(p, letter)
        return frozenset(out)

    def accepts(self, word: Iterable) -> bool:
        current = self.initial
        for x in word:
            current = self.step(current, x)
            if not current:
                return False
        return bool(current & self.accepting)

    def transitions(self) -> Iterator[tuple]:
        for p, row in self.delta.items():
            for x, targets in row.items():
                for q in targets:
                    yield p, x, q

    def __len__(self) -> int:
        return len(self.states)


def _check_same_alphabet(a: Automaton, b: Automaton) -> None:
    if a.alphabet != b.alphabet:
        raise AlphabetMismatch(f"{a.alphabet} != {b.alphabet}")


def relabel(a: Automaton, order: Sequence | None = None) -> Automaton:
    """Rename states to ``0..n-1`` following ``order`` (default: BFS)."""
    if order is None:
        order = list(_bfs_order(a))
        seen = set(order)
        order += sorted((q for q in a.states if q not in seen), key=repr)
    names = {q: i for i, q in enumerate(order)}
    delta = {
        names[p]: {x: frozenset(names[q] for q in ts) for x, ts in row.items()}
        for p, row in a.delta.items() if p in names
    }
    return Automaton(
        a.alphabet,
        frozenset(range(len(order))),
        frozenset(names[q] for q in a.initial),
        frozenset(names[q] for q in a.accepting if q in names),
        delta,
    )


def _bfs_order(a: Automaton) -> Iterator:
    """States reachable from the initial ones, in breadth-first letter order."""
    seen = set()
    queue = deque()
    for q in sorted(a.initial, key=repr):
        if q not in seen:
            seen.add(q)
            queue.append(q)
    while queue:
        p = queue.popleft()
        yield p
        row = a.delta.get(p, {})
        for x in a.alphabet.letters:
            for q in sorted(row.get(x, ()), key=repr):
                if q not in seen:
                    seen.add(q)
                    queue.append(q)


def reachable(a: Automaton) -> set:
    return set(_bfs_order(a))


def coreachable(a: Automaton) -> set:
    back: dict = {}
    for p, _, q in a.transitions():
        back.setdefault(q, set()).add(p)
    seen = set(a.accepting)
    stack = list(seen)
    while stack:
        q = stack.pop()
        for p in back.get(q, ()):
            if p not in seen:
                seen.add(p)
                stack.append(p)
    return seen


def trim(a: Automaton) -> Automaton:
    """Keep only states that are both reachable and co-reachable.

    The initial states are always kept so the result stays well formed.
    """
    useful = reachable(a) & coreachable(a)
    keep = useful | set(a.initial)
    delta = {}
    for p, row in a.delta.items():
        if p not in useful:
            continue
        new_row = {x: ts & useful for x, ts in row.items() if ts & useful}
        if new_row:
            delta[p] = {x: frozenset(ts) for x, ts in new_row.items()}
    return Automaton(a.alphabet, frozenset(keep), a.initial,
                     a.accepting & frozenset(keep), delta)


def determinize(a: Automaton) -> Automaton:
    """Subset construction; the result is complete, states are ``0..n-1``."""
    letters = a.alphabet.letters
    start = frozenset(a.initial)
    index = {start: 0}
    order = [start]
    delta: dict = {}
    i = 0
    while i < len(order):
        subset = order[i]
        row = {}
        for x in letters:
            target = a.step(subset, x)
            j = index.get(target)
            if j is None:
                j = index[target] = len(order)
                order.append(target)
            row[x] = frozenset((j,))
        delta[i] = row
        i += 1
    accepting = frozenset(k for k, s in enumerate(order) if s & a.accepting)
    return Automaton(a.alphabet, frozenset(range(len(order))), frozenset((0,)),
                     accepting, delta)


def complete(a: Automaton) -> Automaton:
    if not a.deterministic:
        raise NotDeterministic("complete() needs a deterministic automaton")
    if all(len(a.delta.get(p, {})) == len(a.alphabet.letters) for p in a.states):
        return a
    dead = ("dead",)
    while dead in a.states:
        dead = (dead,)
    delta = {}
    for p in a.states | {dead}:
        row = a.delta.get(p, {})
        delta[p] = {x: row.get(x) or frozenset((dead,)) for x in a.alphabet.letters}
    return Automaton(a.alphabet, a.states | {dead}, a.initial, a.accepting, delta)


def minimize(a: Automaton) -> Automaton:
    """Minimal complete DFA with canonical state numbering.

    States are numbered in breadth-first discovery order following the
    alphabet order, so equal languages give identical automata.
    """
    if not a.deterministic:
        raise NotDeterministic("minimize() needs a deterministic automaton")
    a = complete(a)
    states = list(_bfs_order(a))
    letters = a.alphabet.letters
    succ = {p: [a.next(p, x) for x in letters] for p in states}
    block = {p: int(p in a.accepting) for p in states}
    n_blocks = len(set(block.values()))
    while True:
        signatures: dict = {}
        new_block = {}
        for p in states:
            sig = (block[p], tuple(block[q] for q in succ[p]))
            new_block[p] = signatures.setdefault(sig, len(signatures))
        block = new_block
        if len(signatures) == n_blocks:
            break
        n_blocks = len(signatures)
    # one representative per block, renumbered breadth first
    rep = {}
    for p in states:
        rep.setdefault(block[p], p)
    names: dict = {}
    queue = deque([block[a.start]])
    names[block[a.start]] = 0
    delta = {}
    while queue:
        b = queue.popleft()
        row = {}
        for x, q in zip(letters, succ[rep[b]]):
            bq = block[q]
            if bq not in names:
                names[bq] = len(names)
                queue.append(bq)
            row[x] = frozenset((names[bq],))
        delta[names[b]] = row
    accepting = frozenset(names[block[p]] for p in a.accepting if p in block)
    return Automaton(a.alphabet, frozenset(range(len(names))), frozenset((0,)),
                     accepting, delta)


def canonical(a: Automaton) -> Automaton:
    """Minimal DFA without its dead state, numbered breadth first."""
    return relabel(trim(minimize(a if a.deterministic else determinize(a))))


def _empty_like(alphabet) -> Automaton:
    return Automaton(alphabet, frozenset((0,)), frozenset((0,)), frozenset(), {})


def empty(alphabet) -> Automaton:
    return _empty_like(alphabet)


def universal(alphabet) -> Automaton:
    delta = {0: {x: frozenset((0,)) for x in alphabet.letters}}
    return Automaton(alphabet, frozenset((0,)), frozenset((0,)), frozenset((0,)), delta)


def from_words(alphabet, words: Iterable[Sequence]) -> Automaton:
    """Trie automaton accepting exactly the given finite set of words."""
    transitions = []
    accepting = set()
    nodes = {(): 0}
    for w in words:
        w = tuple(w)
        for i in range(len(w)):
            prefix = w[: i + 1]
            if prefix not in nodes:
                nodes[prefix] = len(nodes)
                transitions.append((nodes[w[:i]], w[i], nodes[prefix]))
        accepting.add(nodes[w])
    return Automaton.build(alphabet, transitions, [0], accepting, states=[0])


def remove_epsilon(alphabet, transitions: Iterable[tuple], epsilon: Iterable[tuple],
                   initial: Iterable, accepting: Iterable) -> Automaton:
    """NFA from labelled transitions plus epsilon moves ``(p, q)``."""
    transitions = list(transitions)
    eps: dict = {}
    for p, q in epsilon:
        eps.setdefault(p, set()).add(q)

    closure_cache: dict = {}

    def closure(p):
        if p not in closure_cache:
            seen = {p}
            stack = [p]
            while stack:
                u = stack.pop()
                for v in eps.get(u, ()):
                    if v not in seen:
                        seen.add(v)
                        stack.append(v)
            closure_cache[p] = seen
        return closure_cache[p]

    out: dict = {}
    for p, x, q in transitions:
        out.setdefault(p, []).append((x, q))
    states = {p for p, _, _ in transitions} | {q for _, _, q in transitions}
    states |= set(eps) | {q for qs in eps.values() for q in qs}
    initial = set(initial)
    accepting = set(accepting)
    states |= initial | accepting
    new_transitions = []
    new_accepting = set()
    for p in states:
        cl = closure(p)
        if cl & accepting:
            new_accepting.add(p)
        for u in cl:
            for x, q in out.get(u, ()):
                new_transitions.append((p, x, q))
    return Automaton.build(alphabet, new_transitions, initial, new_accepting, states=states)


def product(automata: Sequence[Automaton], accept=all) -> Automaton:
    """Synchronous product over a shared alphabet, reachable part only.

    ``accept`` receives one boolean per factor.  Missing transitions of a
    factor are treated as a dead sink, so ``accept=any`` gives union.
    """
    if not automata:
        raise ValueError("product of no automata")
    for b in automata[1:]:
        _check_same_alphabet(automata[0], b)
    letters = automata[0].alphabet.letters
    dead = None
    strict = accept is all
    starts = [sorted(a.initial, key=repr) for a in automata]
    start_tuples = list(itertools.product(*starts))
    index = {t: i for i, t in enumerate(start_tuples)}
    queue = deque(start_tuples)
    transitions = []
    while queue:
        t = queue.popleft()
        i = index[t]
        for x in letters:
            options = []
            for a, q in zip(automata, t):
                ts = a.successors(q, x) if q is not dead else ()
                options.append(sorted(ts, key=repr) if ts else [dead])
            for u in itertools.product(*options):
                if strict and any(q is dead for q in u):
                    continue
                if all(q is dead for q in u):
                    continue
                j = index.get(u)
                if j is None:
                    j = index[u] = len(index)
                    queue.append(u)
                transitions.append((i, x, j))
    accepting = [
        i for t, i in index.items()
        if accept([q is not dead and q in a.accepting for a, q in zip(automata, t)])
    ]
    return Automaton.build(automata[0].alphabet, transitions,
                           range(len(start_tuples)), accepting, states=range(len(index)))


def intersect(*automata: Automaton) -> Automaton:
    return product(automata, all)


def union(*automata: Automaton) -> Automaton:
    """Disjoint union of NFAs (no determinization)."""
    if not automata:
        raise ValueError("union of no automata")
    for b in automata[1:]:
        _check_same_alphabet(automata[0], b)
    transitions, initial, accepting, states = [], [], [], []
    for k, a in enumerate(automata):
        transitions += [((k, p), x, (k, q)) for p, x, q in a.transitions()]
        initial += [(k, q) for q in a.initial]
        accepting += [(k, q) for q in a.accepting]
        states += [(k, q) for q in a.states]
    return Automaton.build(automata[0].alphabet, transitions, initial, accepting, states)


def complement(a: Automaton) -> Automaton:
    d = complete(a if a.deterministic else determinize(a))
    return Automaton(d.alphabet, d.states, d.initial, d.states - d.accepting, d.delta)


def difference(a: Automaton, b: Automaton) -> Automaton:
    _check_same_alphabet(a, b)
    return intersect(a, complement(b))


def boolean(op: str, a: Automaton, b: Automaton | None = None) -> Automaton:
    """Boolean combination: ``union``, ``intersect``, ``complement`` or ``difference``."""
    if op == "complement":
        return complement(a)
    if b is None:
        raise ValueError(f"{op} needs two automata")
    ops = {"union": union, "intersect": intersect, "difference": difference}
    if op not in ops:
        raise ValueError(f"unknown boolean operation {op!r}")
    return ops[op](a, b)


def is_empty(a: Automaton) -> bool:
    return not (reachable(a) & a.accepting)


def includes(a: Automaton, b: Automaton) -> bool:
    """Whether L(b) is a subset of L(a).

    Explores the product of the two DFAs lazily and stops at the first pair
    where b accepts and a does not.
    """
    _check_same_alphabet(a, b)
    da, db = _as_dfa(a), _as_dfa(b)
    if not db.initial:
        return True
    start = (db.start, da.start if da.initial else None)
    seen = {start}
    stack = [start]
    while stack:
        p, q = stack.pop()
        if p in db.accepting and (q is None or q not in da.accepting):
            return False
        row_a = da.delta.get(q, {}) if q is not None else {}
        for x, targets in db.delta.get(p, {}).items():
            for p2 in targets:
                q2 = next(iter(row_a.get(x, ())), None)
                if (p2, q2) not in seen:
                    seen.add((p2, q2))
                    stack.append((p2, q2))
    return True


def equivalent(a: Automaton, b: Automaton) -> bool:
    _check_same_alphabet(a, b)
    return same_dfa(minimize(_as_dfa(a)), minimize(_as_dfa(b)))


def _as_dfa(a: Automaton) -> Automaton:
    return a if a.deterministic else determinize(a)


def same_dfa(a: Automaton, b: Automaton) -> bool:
    """Structural identity of two canonically numbered DFAs."""
    if a.alphabet != b.alphabet or a.states != b.states:
        return False
    if a.initial != b.initial or a.accepting != b.accepting:
        return False
    return all(a.next(p, x) == b.next(p, x) for p in a.states for x in a.alphabet.letters)


def radix_key(alphabet):
    idx = alphabet.index
    return lambda w: (len(w), tuple(idx(x) for x in w))


def enumerate_radix(a: Automaton, count: int) -> list[tuple]:
    """First ``count`` accepted words in radix (genealogical) order."""
    live = coreachable(a)
    frontier = [((), frozenset(a.initial) & live)]
    out: list[tuple] = []
    letters = a.alphabet.letters
    while frontier and len(out) < count:
        for w, states in frontier:
            if states & a.accepting:
                out.append(w)
                if len(out) == count:
                    return out
        nxt = []
        for w, states in frontier:
            for x in letters:
                t = a.step(states, x) & live
                if t:
                    nxt.append((w + (x,), t))
        frontier = nxt
    return out


def count_table(a: Automaton, m: int) -> list[dict]:
    """``table[k][q]`` = number of accepted length-k words read from q, k <= m."""
    if not a.deterministic:
        raise NotDeterministic("counting needs a deterministic automaton")
    letters = a.alphabet.letters
    table = [{q: int(q in a.accepting) for q in a.states}]
    for _ in range(m):
        prev = table[-1]
        row = {}
        for q in a.states:
            total = 0
            for x in letters:
                t = a.next(q, x)
                if t is not None:
                    total += prev[t]
            row[q] = total
        table.append(row)
    return table


def count_words(a: Automaton, q, m: int) -> int:
    """Number of length-``m`` words accepted from state ``q`` (exact)."""
    if q not in a.states:
        raise KeyError(f"unknown state {q!r}")
    return count_table(a, m)[m][q]


def has_cycle(a: Automaton) -> bool:
    color: dict = {}
    for root in a.states:
        if root in color:
            continue
        color[root] = 1
        stack = [(root, iter([q for _, _, q in _out(a, root)]))]
        while stack:
            p, it = stack[-1]
            q = next(it, None)
            if q is None:
                color[p] = 2
                stack.pop()
            elif color.get(q) == 1:
                return True
            elif q not in color:
                color[q] = 1
                stack.append((q, iter([r for _, _, r in _out(a, q)])))
    return False


def _out(a: Automaton, p):
    for x, ts in a.delta.get(p, {}).items():
        for q in ts:
            yield p, x, q


def embed(a: Automaton, tracks: Sequence[int], d: int) -> Automaton:
    """Run ``a`` on the given tracks of d-ary padded words.

    A d-ary word is accepted when its restriction to ``tracks``, with the
    trailing letters that are padding on all those tracks removed, is
    accepted by ``a``.  Other tracks are unconstrained.
    """
    tracks = tuple(tracks)
    if len(tracks) != a.arity:
        raise ValueError(f"{len(tracks)} tracks for an arity-{a.arity} automaton")
    if len(set(tracks)) != len(tracks) or not all(0 <= t < d for t in tracks):
        raise ValueError(f"bad track selection {tracks} for arity {d}")
    source = a.alphabet
    target = padded_alphabet(source.base, d)
    done = ("done",)
    while done in a.states:
        done = (done,)
    projected = []
    for x in target.letters:
        xs = target.tracks(x)
        sub = tuple(xs[t] for t in tracks)
        projected.append((x, None if all(c == PAD for c in sub) else source.letter(sub)))
    delta: dict = {}
    for p in a.states:
        row = {}
        src = a.delta.get(p, {})
        for x, sub in projected:
            if sub is None:
                if p in a.accepting:
                    row[x] = frozenset((done,))
            elif sub in src:
                row[x] = src[sub]
        if row:
            delta[p] = row
    delta[done] = {x: frozenset((done,)) for x, sub in projected if sub is None}
    if not delta[done]:
        del delta[done]
    return Automaton(target, a.states | {done}, a.initial, a.accepting | {done}, delta)
