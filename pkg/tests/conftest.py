import random

import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from l2stack import build_root_datum, rep_from_weights

settings.register_profile("default", deadline=None, max_examples=60,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")

SMALL_GROUPS = ["A1", "A2", "A3", "B2", "C3", "G2", "A1 x A1", "A1 x T1", "A2 x T2", "T2", "B3", "D4"]


@pytest.fixture(scope="session")
def datum():
    cache = {}

    def get(text):
        if text not in cache:
            cache[text] = build_root_datum(text)
        return cache[text]
    return get


def random_rep(rd, rng: random.Random, n_weights=4, bound=3, max_mult=3):
    raw = []
    for _ in range(rng.randint(1, n_weights)):
        w = tuple(rng.randint(-bound, bound) for _ in range(rd.dim))
        raw.append((w, rng.randint(1, max_mult)))
    return rep_from_weights(rd, raw)


@st.composite
def group_and_rep(draw, groups=SMALL_GROUPS, bound=3, n_weights=4):
    rd = build_root_datum(draw(st.sampled_from(groups)))
    rng = random.Random(draw(st.integers(0, 2**32 - 1)))
    return rd, random_rep(rd, rng, n_weights=n_weights, bound=bound)


def dominant_coweights(rd, bound=4):
    """Strategy for dominant coweights: nonnegative combination of cone generators."""
    gens = rd.cone_generators

    @st.composite
    def build(draw):
        coeffs = [draw(st.integers(0, bound)) for _ in gens]
        return tuple(sum(c * g[k] for c, g in zip(coeffs, gens)) for k in range(rd.dim))
    return build()


def pytest_terminal_summary(terminalreporter):
    import sys
    mod = sys.modules.get("test_acceptance")
    results = getattr(mod, "RESULTS", None)
    if results:
        terminalreporter.section("acceptance criteria")
        for n in sorted(results):
            terminalreporter.write_line(results[n])
