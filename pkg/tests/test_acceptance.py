"""The eight acceptance criteria, each at its stated tolerance and time limit.

Every criterion prints one PASS/FAIL line (shown in the pytest summary, or
on stdout when this file is run as a script).
"""

import random
import sys
import time
from contextlib import contextmanager
from math import gcd

import numpy as np

from ansrec import automata as fa
from ansrec import oracles
from ansrec.automata import PAD, Automaton, padded_alphabet
from ansrec.cli import main as cli_main
from ansrec.compiler import accepted_words, compile, verify
from ansrec.fixtures import path
from ansrec.normalform import (UNARY, InvalidNormalForm, NormalForm, NormalFormSet, decompose_unary,
                               normal_form_to_unary_dfa)
from ansrec.relations import shift, unpad, validate_padded
from ansrec.ysets import Form, YSet, frobenius_bound, residue_set, y_decompose

from conftest import ACCEPTANCE_LINES, FLEET, load_ans, load_aut, load_nf, random_union
from test_normalform import hand_built_5n_6m

SET_MATRIX = ["ex2d", "expart1", "diagonal", "nplus2", "odd_3n1", "singleton7", "singleton_3_5"]


@contextmanager
def criterion(number, title, limit):
    start = time.perf_counter()
    failure = None
    try:
        yield
    except AssertionError as exc:
        failure = exc
    elapsed = time.perf_counter() - start
    ok = failure is None and elapsed < limit
    detail = "" if failure is None else f" ({failure})" if str(failure) else " (assertion failed)"
    line = (f"criterion {number} {title}: {'PASS' if ok else 'FAIL'} "
            f"[{elapsed:.1f} s, limit {limit} s]{detail}")
    ACCEPTANCE_LINES.append(line)
    print(line)
    if failure is not None:
        raise failure
    assert elapsed < limit, f"took {elapsed:.1f} s, limit {limit} s"


def test_criterion_1_rep_val_bijection():
    with criterion(1, "rep/val bijection", 10):
        for name in FLEET:
            s = load_ans(name)
            words = oracles.radix_words(load_aut(name), 10_000)
            assert len(words) == 10_000
            for n, w in enumerate(words):
                # w is the (n+1)-th word, so val(w) = n and rep(val(w)) = rep(n)
                v = s.val(w)
                assert v == n, (name, n)
                r = s.rep(v)
                assert r == w, (name, n)
                assert s.val(r) == n, (name, n)


def test_criterion_2_shift():
    with criterion(2, "successor/shift", 30):
        rng = random.Random(2)
        for name in FLEET:
            s = load_ans(name)
            for k in (1, 2, 3, 5):
                rel = shift(s, k)
                a = rel.automaton
                assert all(rel.accepts_numbers([n, n + k]) for n in range(500)), (name, k)
                # nothing else among words no longer than rep(500 + k)
                max_len = len(s.rep(499 + k))
                for w in accepted_words(fa.minimize(a), max_len):
                    m, n = (s.val(t) for t in unpad(w, 2))
                    assert n == m + k, (name, k, m, n)
                for _ in range(1000):
                    m = rng.randrange(600)
                    n = rng.randrange(600)
                    if n == m + k:
                        n += 1
                    assert not rel.accepts_numbers([m, n]), (name, k, m, n)


def test_criterion_3_frobenius():
    with criterion(3, "Frobenius/residues", 5):
        assert (frobenius_bound(2, (4, 6)), residue_set(2, (4, 6))) == (2, {0})
        assert (frobenius_bound(5, (5,)), residue_set(5, (5,))) == (0, set())
        assert (frobenius_bound(0, (0,)), residue_set(0, (0,))) == (0, set())
        rng = random.Random(3)
        for _ in range(200):
            cs = [rng.randint(0, 15) for _ in range(rng.randint(1, 4))]
            r = 0
            for c in cs:
                r = gcd(r, c)
            want = oracles.frobenius_oracle(r, cs)
            assert (frobenius_bound(r, cs), residue_set(r, cs)) == want, (r, cs)


def _roundtrip_automaton(a):
    a = fa.minimize(fa.determinize(a))
    return fa.same_dfa(fa.canonical(normal_form_to_unary_dfa(decompose_unary(a))), fa.canonical(a))


def _roundtrip_set(x):
    a = normal_form_to_unary_dfa(x)
    back = normal_form_to_unary_dfa(decompose_unary(a))
    return fa.same_dfa(fa.canonical(back), fa.canonical(a))


def test_criterion_4_normal_form_roundtrip():
    with criterion(4, "normal-form roundtrip", 60):
        assert _roundtrip_automaton(load_aut("expart1"))
        assert _roundtrip_set(load_nf("expart1"))
        assert _roundtrip_automaton(hand_built_5n_6m())
        assert _roundtrip_set(load_nf("a5n_a6m"))
        rng = random.Random(4)
        for i in range(50):
            x = random_union(rng, rng.randint(1, 4), max_const=7)
            assert _roundtrip_set(x), (i, x)
            assert _roundtrip_automaton(normal_form_to_unary_dfa(x)), (i, x)


def _forms_for_ysets():
    forms = []
    for name in ["expart1", "a5n_a6m", "ex2d", "odd_3n1", "nplus2", "diagonal", "singleton_3_5"]:
        forms += load_nf(name).forms
    rng = random.Random(5)
    for _ in range(40):
        forms += random_union(rng, rng.randint(1, 4), max_forms=1).forms
    return forms


def test_criterion_5_y_decomposition():
    with criterion(5, "Y-decomposition membership", 60):
        nf = load_nf("expart1").forms[0]
        yd = y_decompose(nf)
        y1 = YSet(Form.ONLY_J, 1, 5, 0)
        y2 = YSet(Form.J_AND_K, 2, 2, 1, k=1, threshold=2)
        y2p = YSet(Form.J_AND_K_FINITE, 2, 2, 1, k=1, residues={0})
        y3 = YSet(Form.J_AND_K, 3, 0, 2, k=2)
        y4 = YSet(Form.J_AND_K, 4, 0, 0, k=1)
        assert yd.b_terms == (y1, y2, y3, y4)
        assert yd.a_terms == ((y1, y2p, y3, y4),)
        box = 25
        grids = {}
        for nf in _forms_for_ysets():
            d = nf.dim
            if d not in grids:
                grids[d] = np.indices((box + 1,) * d)
            want = np.zeros((box + 1,) * d, dtype=bool)
            for p in oracles.set_points(NormalFormSet.of(nf), box):
                want[p] = True
            got = y_decompose(nf).mask(grids[d])
            assert (got == want).all(), nf


def test_criterion_6_end_to_end():
    with criterion(6, "end-to-end compile and verify", 300):
        for name in FLEET:
            s = load_ans(name)
            for set_name in SET_MATRIX:
                x = load_nf(set_name)
                bound = 40 if x.dim == 2 else 25
                report = verify(s, x, compile(s, x), bound)
                assert report.ok, (name, set_name, report.lines()[:3])


def test_criterion_7_unary_fixpoint():
    with criterion(7, "unary fixpoint", 30):
        s = load_ans("unary")
        for set_name in SET_MATRIX + ["a5n_a6m"]:
            x = load_nf(set_name)
            got = fa.canonical(compile(s, x).automaton)
            assert got.alphabet == padded_alphabet(UNARY, x.dim)
            assert fa.same_dfa(got, fa.canonical(normal_form_to_unary_dfa(x))), set_name


def test_criterion_8_negative_input(capsys):
    with criterion(8, "negative input handling", 10):
        code = cli_main(["decompose", "--unary", str(path("illpadded.aut"))])
        assert code == 3
        # {(n, 2n)}: ((#,a)(a,a))* counts the right letters but pads in the middle
        alphabet = padded_alphabet(UNARY, 2)
        approx = Automaton.build(alphabet, [(0, (PAD, "a"), 1), (1, ("a", "a"), 0)], [0], [0])
        assert not validate_padded(approx)
        # the normal-form format cannot state it either: offsets differ on one level
        try:
            NormalForm.from_vectors(2, [[1, 2]], [1], [[1, 2]])
        except InvalidNormalForm:
            pass
        else:
            raise AssertionError("(n, 2n) accepted as a normal form")
    capsys.readouterr()


if __name__ == "__main__":
    import pytest
    sys.exit(pytest.main([__file__, "-q", "-s"]))
