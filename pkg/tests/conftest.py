import numpy as np
import pytest
from hypothesis import strategies as st

from multidfa.automata import Alphabet, Dfa, LabeledSample

_criteria = {}
_criterion_marks = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(number, title): acceptance criterion")


def pytest_runtest_logreport(report):
    if report.when != "call" and not (report.when == "setup" and report.failed):
        return
    item_marks = _criterion_marks.get(report.nodeid)
    if item_marks is None:
        return
    number, title = item_marks
    ok = report.passed
    prev = _criteria.get(number, (title, True))
    _criteria[number] = (title, prev[1] and ok)



def pytest_collection_modifyitems(items):
    for item in items:
        mark = item.get_closest_marker("criterion")
        if mark is not None:
            _criterion_marks[item.nodeid] = mark.args


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_criteria):
        title, ok = _criteria[number]
        terminalreporter.write_line(f"{'PASS' if ok else 'FAIL'}  AC{number:<2d} {title}")


@st.composite
def consistent_samples(draw, max_pos=15, max_neg=15, max_len=6):
    size = draw(st.integers(1, 3))
    symbols = "abc"[:size]
    words = st.text(alphabet=symbols, max_size=max_len)
    pos = draw(st.frozensets(words, min_size=1, max_size=max_pos))
    neg = draw(st.frozensets(words, max_size=max_neg)) - pos
    return LabeledSample(pos, neg, Alphabet(tuple(symbols)))


@st.composite
def random_dfas(draw, max_states=6, alphabet=Alphabet(("a", "b"))):
    n = draw(st.integers(1, max_states))
    targets = st.one_of(st.none(), st.integers(0, n - 1))
    transitions = {}
    for q in range(n):
        for a in alphabet:
            t = draw(targets)
            if t is not None:
                transitions[(q, a)] = t
    accepting = draw(st.frozensets(st.integers(0, n - 1)))
    return Dfa(alphabet, n, 0, transitions, accepting)


def numpy_random_dfa(rng, max_states=8, alphabet=Alphabet(("a", "b")), p_edge=0.8):
    n = int(rng.integers(1, max_states + 1))
    transitions = {
        (q, a): int(rng.integers(n))
        for q in range(n) for a in alphabet if rng.random() < p_edge
    }
    accepting = frozenset(q for q in range(n) if rng.random() < 0.4)
    return Dfa(alphabet, n, 0, transitions, accepting)


def numpy_random_strings(rng, count, symbols, max_len):
    return {
        "".join(rng.choice(list(symbols), size=int(rng.integers(0, max_len + 1))))
        for _ in range(count)
    }


@pytest.fixture
def rng():
    return np.random.default_rng(12345)
