import random
import sys
from pathlib import Path

import pytest
from hypothesis import strategies as st

sys.path.insert(0, str(Path(__file__).parent))

from arrhocolim.arrangement import random_arrangement  # noqa: E402
from arrhocolim.complex_core import SimplicialComplex  # noqa: E402


@st.composite
def simplicial_complexes(draw, max_vertices=6, max_dim=3):
    n = draw(st.integers(1, max_vertices))
    k = min(max_dim + 1, n)
    from itertools import combinations

    pool = [s for size in range(1, k + 1) for s in combinations(range(n), size)]
    chosen = draw(st.lists(st.sampled_from(pool), min_size=1, max_size=8))
    return SimplicialComplex.from_maximal(n, chosen)


@st.composite
def arrangements(draw, max_vertices=6, max_n=4):
    seed = draw(st.integers(0, 10**6))
    rng = random.Random(seed)
    return random_arrangement(
        seed,
        vertex_count=draw(st.integers(1, max_vertices)),
        ambient_density=rng.choice([0.4, 0.6, 0.8]),
        n=draw(st.integers(1, max_n)),
        set_density=rng.choice([0.3, 0.6, 0.9]),
    )


@pytest.fixture
def corpus():
    """Seeded random arrangements shared by the property tests."""
    out = []
    for seed in range(40):
        rng = random.Random(seed)
        out.append(random_arrangement(
            seed,
            vertex_count=rng.randint(2, 6),
            ambient_density=0.6,
            n=rng.randint(1, 4),
            set_density=0.6,
        ))
    return out


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    lines = getattr(mod, "RESULTS", None)
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in lines:
            terminalreporter.write_line(line)
