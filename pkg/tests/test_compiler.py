import itertools
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ansrec import automata as fa
from ansrec.ans import congruence_pair_recognizer
from ansrec.automata import PAD, Automaton, padded_alphabet
from ansrec.compiler import CompiledSet, accepted_words, compile, compile_yset, verify
from ansrec.normalform import UNARY, Level, NormalForm, NormalFormSet
from ansrec.oracles import set_points
from ansrec.relations import pad, radix_leq, shift, validate_padded
from ansrec.ysets import Form, YSet

from conftest import FLEET, load_ans, load_nf, random_union

YSETS = [
    YSet(Form.ONLY_J, 1, 3, 2, threshold=1),
    YSet(Form.ONLY_J, 2, 0, 4),
    YSet(Form.J_AND_K, 2, 2, 1, k=1, threshold=2),
    YSet(Form.J_AND_K, 1, 3, 0, k=2),
    YSet(Form.J_AND_K, 2, 0, 3, k=1),
    YSet(Form.ONLY_J_FINITE, 1, 2, 1, residues={0, 3}),
    YSet(Form.J_AND_K_FINITE, 2, 4, 2, k=1, residues={0, 1}),
    YSet(Form.J_AND_K_FINITE, 2, 4, 2, k=1),
]


@pytest.mark.parametrize("name", FLEET)
@pytest.mark.parametrize("y", YSETS, ids=lambda y: y.describe())
def test_compile_single_yset(name, y):
    s = load_ans(name)
    c = compile_yset(s, y, 2)
    for point in itertools.product(range(18), repeat=2):
        assert c.contains(point) == y.contains(point), point


@pytest.mark.parametrize("name", FLEET)
def test_compile_one_dimensional(name):
    # ultimately periodic: {2, 4} and everything = 1 mod 3 from 7 on
    s = load_ans(name)
    x = NormalFormSet(1, (NormalForm(1, (Level({1}, 0, 2),)), NormalForm(1, (Level({1}, 0, 4),)),
                          NormalForm(1, (Level({1}, 3, 7),))))
    c = compile(s, x)
    got = [n for n in range(40) if c.contains((n,))]
    assert got == [2, 4] + list(range(7, 40, 3))


@pytest.mark.parametrize("name", FLEET)
def test_compiled_output_is_well_padded(name):
    c = compile(load_ans(name), load_nf("ex2d"))
    assert validate_padded(c.automaton)


def test_compile_empty_union():
    c = compile(load_ans("ab"), NormalFormSet(2, ()))
    assert fa.is_empty(c.automaton)
    assert verify(load_ans("ab"), NormalFormSet(2, ()), c, 6).ok


def test_verify_ok_and_counts():
    s = load_ans("bin")
    x = load_nf("nplus2")
    c = compile(s, x)
    report = verify(s, x, c, 20)
    assert report.ok
    assert report.lines() == [f"OK n_checked={report.n_checked}"]
    assert report.n_checked >= 21 * 21


def test_verify_bound_zero_checks_only_origin():
    s = load_ans("ab")
    x = load_nf("diagonal")
    report = verify(s, x, compile(s, x), 0)
    assert report.ok and report.n_checked == 1


@pytest.mark.parametrize("name", FLEET)
def test_verify_catches_flipped_state(name):
    s = load_ans(name)
    x = load_nf("ex2d")
    a = fa.minimize(compile(s, x).automaton)
    flipped = Automaton(a.alphabet, a.states, a.initial, a.accepting ^ {a.start}, a.delta)
    report = verify(s, x, flipped, 12)
    assert not report.ok
    assert all(line.startswith("FAIL tuple=(") for line in report.lines())


def test_verify_reports_direction():
    s = load_ans("ab")
    x = load_nf("diagonal")
    shifted = compile(s, load_nf("nplus2"))
    report = verify(s, x, shifted, 5)
    directions = {d for _, d in report.failures}
    assert directions == {"missing", "spurious"}
    assert ((0, 0), "missing") in report.failures
    assert ((0, 2), "spurious") in report.failures


def test_verify_direction_two_finds_far_points():
    # a spurious pair beyond the bound is still found when its words are short
    s = load_ans("bin")
    x = load_nf("diagonal")
    good = compile(s, x).automaton
    extra = fa.from_words(good.alphabet, [pad([s.rep(3), s.rep(5)])])
    report = verify(s, x, fa.union(good, extra), 4)
    assert report.failures == [((3, 5), "spurious")]


def test_verify_rejects_wrong_arity():
    s = load_ans("ab")
    with pytest.raises(ValueError):
        verify(s, load_nf("singleton7"), compile(s, load_nf("diagonal")), 3)


def test_compiled_set_contains_checks_dimension():
    c = compile(load_ans("ab"), load_nf("diagonal"))
    assert isinstance(c, CompiledSet) and c.dim == 2
    assert (4, 4) in c and (4, 5) not in c
    with pytest.raises(ValueError):
        c.contains((1,))


def test_accepted_words_respect_length():
    s = load_ans("ab")
    a = fa.minimize(s.dfa)
    assert len(list(accepted_words(a, 2))) == 7


@settings(max_examples=15, deadline=None)
@given(st.sampled_from(FLEET), st.integers(0, 4), st.integers(0, 4), st.integers(0, 4))
def test_compile_two_level_forms(name, c1, b1, b2):
    s = load_ans(name)
    nf = NormalForm(2, (Level({1, 2}, c1, b1), Level({2}, 2, b2)))
    x = NormalFormSet.of(nf)
    assert verify(s, x, compile(s, x), 12).ok



def _direct_guessing_nfa(s, r, offset, threshold):
    """{(m, n) : n = m + r*i + offset, i >= threshold}, built as one product.

    The automaton reads (x_m, x_n) and guesses a letter of a hidden word v
    at each step. It runs shift(r*threshold + offset) on (m, v), the radix
    order on (v, n), the mod-r congruence on (m, n) and the language on
    each visible track, tracking the padding of every track by hand.
    """
    sh = fa.minimize(shift(s, r * threshold + offset).automaton)
    order = fa.minimize(radix_leq(s).automaton)
    cong = fa.minimize(congruence_pair_recognizer(s, r, offset % r))
    lang = fa.minimize(s.dfa)
    symbols = s.alphabet.symbols + (PAD,)

    def step(dfa, q, letter):
        if all(x == PAD for x in letter):
            return q  # this sub-relation has ended; it stays put
        return None if q is None else dfa.next(q, letter)

    start = (sh.start, order.start, cong.start, lang.start, lang.start, False, False, False)
    transitions, accepting, seen, todo = [], set(), {start}, [start]
    while todo:
        state = todo.pop()
        qs, qo, qc, qm, qn, dm, dn, dv = state
        if (qs in sh.accepting and qo in order.accepting and qc in cong.accepting
                and qm in lang.accepting and qn in lang.accepting):
            accepting.add(state)
        for x, y, c in itertools.product(symbols, repeat=3):
            if x == PAD and y == PAD:
                continue
            if (dm and x != PAD) or (dn and y != PAD) or (dv and c != PAD):
                continue
            nm = qm if x == PAD else lang.next(qm, x)
            nn = qn if y == PAD else lang.next(qn, y)
            nxt = (step(sh, qs, (x, c)), step(order, qo, (c, y)), cong.next(qc, (x, y)),
                   nm, nn, x == PAD, y == PAD, c == PAD)
            if None in nxt[:5]:
                continue
            transitions.append((state, (x, y), nxt))
            if nxt not in seen:
                seen.add(nxt)
                todo.append(nxt)
    return Automaton.build(padded_alphabet(s.alphabet, 2), transitions, [start], accepting, seen)


@pytest.mark.parametrize("name, r, offset, threshold", [
    ("ab", 2, 1, 2),
    ("bin", 3, 0, 0),
    ("astarbstar", 2, 3, 1),
])
def test_guessed_track_matches_direct_product(name, r, offset, threshold):
    s = load_ans(name)
    direct = _direct_guessing_nfa(s, r, offset, threshold)
    compiled = compile_yset(s, YSet(Form.J_AND_K, 2, r, offset, k=1, threshold=threshold), 2)
    assert fa.equivalent(direct, compiled.automaton)
    for m, n in itertools.product(range(20), repeat=2):
        want = n - m - offset >= r * threshold and (n - m - offset) % r == 0
        assert direct.accepts(pad([s.rep(m), s.rep(n)])) == want


def test_unary_form_three_shape():
    # x2 = x1 + 2 in unary is (a,a)* (#,a) (#,a)
    alphabet = padded_alphabet(UNARY, 2)
    aa, pa = ("a", "a"), (PAD, "a")
    want = Automaton.build(alphabet, [(0, aa, 0), (0, pa, 1), (1, pa, 2)], [0], [2])
    got = compile_yset(load_ans("unary"), YSet(Form.J_AND_K, 2, 0, 2, k=1), 2).automaton
    assert fa.equivalent(got, want)


@pytest.mark.parametrize("name", FLEET)
def test_odd_numbers_in_one_dimension(name):
    s = load_ans(name)
    c = compile_yset(s, YSet(Form.ONLY_J, 1, 2, 1), 1)
    assert all(c.contains([n]) == (n % 2 == 1) for n in range(500))


@pytest.mark.parametrize("y", [YSet(Form.ONLY_J_FINITE, 1, 3, 1),
                               YSet(Form.J_AND_K_FINITE, 2, 3, 1, k=1)])
def test_empty_residue_set_compiles_to_empty(y):
    assert fa.is_empty(compile_yset(load_ans("ab"), y, 2).automaton)


@pytest.mark.parametrize("name", FLEET)
def test_diagonal_on_first_words(name):
    s = load_ans(name)
    c = compile(s, load_nf("diagonal"))
    assert all(c.contains([n, n]) for n in range(300))
    assert not any(c.contains([n, n + 1]) or c.contains([n + 1, n]) for n in range(300))


def test_ex2d_matches_its_predicate():
    c = compile(load_ans("ab"), load_nf("ex2d"))
    for x, y in itertools.product(range(41), repeat=2):
        want = (x % 2 == 0 and y % 3 == 1 and x >= y) or x < y and y % 2 == 0
        assert c.contains([x, y]) == want, (x, y)


def _random_set(seed, d):
    return random_union(random.Random(seed), d, max_forms=2, max_const=5)


@settings(max_examples=12, deadline=None)
@given(st.sampled_from(FLEET), st.integers(0, 10 ** 6), st.integers(1, 2))
def test_boolean_closure(name, seed, d):
    s = load_ans(name)
    x, y = _random_set(seed, d), _random_set(seed + 1, d)
    cx, cy = compile(s, x), compile(s, y)
    both = NormalFormSet(d, x.forms + y.forms)
    assert fa.equivalent(compile(s, both).automaton, fa.union(cx.automaton, cy.automaton))
    meet = fa.minimize(fa.intersect(cx.automaton, cy.automaton))
    box = 12
    px, py = set(set_points(x, box)), set(set_points(y, box))
    for p in itertools.product(range(box + 1), repeat=d):
        assert meet.accepts(pad([s.rep(n) for n in p])) == (p in px and p in py)
