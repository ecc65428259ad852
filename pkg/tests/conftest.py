import random

import pytest
from hypothesis import strategies as st

from ansrec.ans import Ans
from ansrec.fixtures import path
from ansrec.normalform import Level, NormalForm, NormalFormSet
from ansrec.textio import parse_automaton, parse_normal_forms

FLEET = ("unary", "ab", "bin", "astarbstar")


def load_aut(name):
    return parse_automaton(path(name + ".aut").read_text())


def load_nf(name):
    return parse_normal_forms(path(name + ".nf").read_text())


_ANS_CACHE = {}


def load_ans(name):
    if name not in _ANS_CACHE:
        _ANS_CACHE[name] = Ans(load_aut(name))
    return _ANS_CACHE[name]


@pytest.fixture(params=FLEET)
def ans(request):
    return load_ans(request.param)


def random_normal_form(rng: random.Random, d: int, max_const: int = 7, max_levels: int = 4):
    if rng.random() < 0.7:
        support = set(range(1, d + 1))
    else:
        support = set(rng.sample(range(1, d + 1), rng.randint(1, d)))
    levels = []
    for _ in range(rng.randint(1, max_levels)):
        levels.append(Level(frozenset(support), rng.randint(0, max_const), rng.randint(0, max_const)))
        if len(support) > 1 and rng.random() < 0.5:
            support = set(rng.sample(sorted(support), rng.randint(1, len(support) - 1)))
    return NormalForm(d, tuple(levels))


def random_union(rng: random.Random, d: int, max_forms: int = 3, max_const: int = 7):
    return NormalFormSet(d, tuple(random_normal_form(rng, d, max_const)
                                  for _ in range(rng.randint(1, max_forms))))


@st.composite
def normal_forms(draw, max_dim=3, max_const=5, max_levels=3):
    d = draw(st.integers(1, max_dim))
    support = frozenset(range(1, d + 1))
    levels = []
    for _ in range(draw(st.integers(1, max_levels))):
        levels.append(Level(support, draw(st.integers(0, max_const)), draw(st.integers(0, max_const))))
        if len(support) > 1 and draw(st.booleans()):
            k = draw(st.integers(1, len(support) - 1))
            support = frozenset(draw(st.permutations(sorted(support)))[:k])
    return NormalForm(d, tuple(levels))


ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
