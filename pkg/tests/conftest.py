import numpy as np
import pytest
from hypothesis import strategies as st

from graphon_cospectra import StepGraphon

_ACCEPTANCE = []


def random_graphon(rng, m, zero_one=False, scale=1.0):
    raw = rng.uniform(0.2, 1.0, m)
    weights = raw / raw.sum()
    if zero_one:
        vals = rng.integers(0, 2, (m, m)).astype(float)
    else:
        vals = rng.uniform(0.0, scale, (m, m))
    vals = np.triu(vals) + np.triu(vals, 1).T
    return StepGraphon(weights, vals)


@st.composite
def step_graphons(draw, max_blocks=5, zero_one=False):
    m = draw(st.integers(1, max_blocks))
    raw = draw(st.lists(st.floats(0.05, 1.0), min_size=m, max_size=m))
    if zero_one:
        cells = draw(st.lists(st.sampled_from([0.0, 1.0]), min_size=m * m, max_size=m * m))
    else:
        cells = draw(st.lists(st.floats(0.0, 1.0), min_size=m * m, max_size=m * m))
    v = np.array(cells).reshape(m, m)
    v = np.triu(v) + np.triu(v, 1).T
    w = np.array(raw) / sum(raw)
    return StepGraphon(w, v)


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


@pytest.fixture
def half():
    return StepGraphon.constant(0.5)


@pytest.fixture
def half_square():
    return StepGraphon.indicator_square(0.5)


@pytest.fixture
def criterion():
    """Record one acceptance line; printed in the terminal summary."""

    def record(number, ok, detail):
        _ACCEPTANCE.append((number, bool(ok), detail))
        return ok

    return record


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for number, ok, detail in sorted(_ACCEPTANCE, key=lambda r: r[0]):
        terminalreporter.write_line(f"criterion {number}: {'PASS' if ok else 'FAIL'}  {detail}")


def _pad(values, extra):
    m = values.shape[0]
    out = np.zeros((m + extra, m + extra))
    out[:m, :m] = values
    return out


def random_pair(rng, kind):
    """Graphon pairs with at most 4 blocks each.

    kind 0: independent; 1: block-permuted copy; 2: copy compressed onto
    [0, s] and rescaled by 1/s (same spectrum, different edge density);
    3: block-diagonal pair sharing a dominant part, differing in a weaker one.
    """
    if kind == 0:
        return random_graphon(rng, int(rng.integers(1, 5))), random_graphon(rng, int(rng.integers(1, 5)))
    if kind == 1:
        u = random_graphon(rng, int(rng.integers(1, 5)))
        return u, u.permuted(rng.permutation(u.m))
    if kind == 2:
        s = rng.uniform(0.3, 0.9)
        u = random_graphon(rng, int(rng.integers(1, 4)), scale=s)
        w = StepGraphon(np.append(s * u.weights, 1 - s), _pad(u.values / s, 1))
        return u, w
    dom = int(rng.integers(1, 3))
    raw = rng.uniform(0.3, 1.0, dom + 1)
    weights = raw / raw.sum()
    a = rng.uniform(0.7, 1.0, (dom, dom))
    a = np.triu(a) + np.triu(a, 1).T
    b, b2 = rng.uniform(0.1, 0.6, 2)
    vu, vw = _pad(a, 1), _pad(a, 1)
    vu[dom, dom], vw[dom, dom] = b, b2
    return StepGraphon(weights, vu), StepGraphon(weights, vw)
