import json
import warnings
from fractions import Fraction as F
from math import log

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from arrhocolim.arrangement import basic_sets
from arrhocolim.complex_core import HomologyReport, homology_of, validate_complex
from arrhocolim.fiber_census import (
    Box,
    BoxFamily3D,
    FamilyError,
    Slab,
    SlabFamily,
    box_census,
    census,
    critical_values,
    cubical_grid,
    fiber_at,
    format_rational,
    grid_fiber,
    growth_fit,
    interval_arrangement,
    load_family,
    parse_rational,
    random_slab_family,
    serialize_family,
    sweep_growth,
)
from arrhocolim.fixtures import two_slab_family
from arrhocolim.arrangement import union_all

from oracles import interval_union_components, sampled_basic_components


def _endpoint_pattern(fam, z):
    """Comparison pattern of all fiber endpoints, computed without the census code."""
    ends = []
    for s in fam.slabs:
        if s.e <= z <= s.f and s.a * z + s.b <= s.c * z + s.d:
            ends.append((s.a * z + s.b, s.c * z + s.d))
        else:
            ends.append(None)
    flat = [p for iv in ends if iv is not None for p in iv]
    return tuple(iv is None for iv in ends), tuple((p > q) - (p < q) for p in flat for q in flat)


# --- rationals and slabs --------------------------------------------------------


def test_rational_round_trip():
    assert parse_rational("3/6") == F(1, 2)
    assert format_rational(F(4)) == "4/1"
    assert format_rational(F(-3, 9)) == "-1/3"


@pytest.mark.parametrize("text", ["1/0", "abc", "", "1//2"])
def test_parse_rational_rejects(text):
    with pytest.raises(FamilyError):
        parse_rational(text)


def test_slab_with_empty_domain():
    with pytest.raises(FamilyError):
        Slab(0, 0, 0, 1, 2, 1)


def test_fiber_of_two_slab_family():
    fam = two_slab_family()
    assert fiber_at(fam, 2).intervals == ((F(0), F(2)), (F(1), F(3)))
    assert fiber_at(fam, F(1, 2)).intervals == ((F(0), F(2)), None)
    assert fiber_at(fam, 5).n_nonempty == 0


def test_crossed_bounds_give_empty_fiber():
    s = Slab(1, 0, -1, 0, -5, 5)
    assert s.fiber(F(1)) is None
    assert s.fiber(F(0)) == (F(0), F(0))


# --- critical values -----------------------------------------------------------


def test_two_slab_critical_values():
    assert critical_values(two_slab_family()) == [F(0), F(1), F(3), F(4)]


def test_parallel_bounds_add_no_crossings():
    fam = SlabFamily((Slab(1, 0, 1, 2, 0, 10), Slab(1, 5, 1, 7, 0, 10)))
    assert critical_values(fam) == [F(0), F(10)]


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10**6), st.integers(1, 5))
def test_critical_values_are_complete(seed, n):
    """Between consecutive critical values the endpoint pattern never changes,
    checked on a dense rational scan."""
    fam = random_slab_family(seed, n)
    crit = critical_values(fam)
    bounds = [crit[0] - 4] + crit + [crit[-1] + 4]
    for lo, hi in zip(bounds, bounds[1:]):
        pts = [lo + (hi - lo) * F(k, 17) for k in range(1, 17)]
        first = _endpoint_pattern(fam, pts[0])
        assert all(_endpoint_pattern(fam, z) == first for z in pts[1:])


# --- census ---------------------------------------------------------------------


def test_two_slab_census():
    rep = census(two_slab_family())
    assert rep.m == 1
    assert rep.distinct_count == 3
    assert rep.constancy_ok
    # empty, A_1 alone, both present
    assert [r.n_nonempty for r in rep.regions if r.is_point] == [1, 2, 2, 1]


def test_single_slab_census():
    rep = census(SlabFamily((Slab(0, 0, 0, 1, 0, 1),)))
    assert rep.m == 0
    assert rep.distinct_count == 2


def test_census_region_layout():
    rep = census(two_slab_family())
    # two unbounded ends, four points, three open gaps
    assert len(rep.regions) == 9
    assert rep.regions[0].z_lo is None and rep.regions[-1].z_hi is None
    assert rep.evaluation_points[:3] == [F(-1), F(0), F(1, 2)]


def test_census_json_and_csv():
    rep = census(two_slab_family())
    doc = rep.to_json()
    json.dumps(doc)
    assert doc["critical_values"] == ["0/1", "1/1", "3/1", "4/1"]
    assert doc["distinct_count"] == 3
    assert doc["regions"][0]["z_lo"] == "-inf"
    lines = rep.to_csv().splitlines()
    assert lines[0] == "z_lo,z_hi,representative_z,signature_hash,betti_union_0,betti_union_1,n_nonempty_sets"
    assert len(lines) == 1 + len(rep.regions)
    assert lines[-1].split(",")[1] == "inf"


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 10**6), st.integers(1, 6))
def test_census_constancy_on_random_families(seed, n):
    rep = census(random_slab_family(seed, n))
    assert rep.constancy_ok
    assert 1 <= rep.distinct_count <= len(rep.regions)


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 10**6), st.integers(1, 6))
def test_census_union_matches_interval_sweep(seed, n):
    fam = random_slab_family(seed, n)
    for r in census(fam).regions:
        fib = fiber_at(fam, r.representative)
        assert r.signature.union.betti_at(0) == interval_union_components(fib.intervals)


def test_random_family_is_reproducible():
    assert random_slab_family(7, 5) == random_slab_family(7, 5)


# --- interval arrangements and basic sets ------------------------------------------


def test_padded_interval_arrangement():
    arr, points = interval_arrangement([(F(0), F(2)), (F(1), F(3))], pad=True)
    assert points == [F(-1), F(0), F(1), F(2), F(3), F(4)]
    assert basic_sets(arr).total == 5
    assert sampled_basic_components([(0, 2), (1, 3)]) == 5


def test_touching_intervals():
    ivs = [(F(0), F(1)), (F(1), F(2))]
    arr, _ = interval_arrangement(ivs, pad=True)
    # outside, A_1 open part, shared point, A_2 open part, outside
    assert basic_sets(arr).total == sampled_basic_components(ivs) == 5
    assert homology_of(arr.ambient, union_all(arr)) == HomologyReport.from_betti(1)


@settings(max_examples=60, deadline=None)
@given(st.lists(st.tuples(st.integers(-8, 8), st.integers(0, 6)), min_size=1, max_size=8))
def test_basic_sets_match_sampling(raw):
    ivs = [(F(a), F(a + w)) for a, w in raw]
    arr, _ = interval_arrangement(ivs, pad=True)
    total = basic_sets(arr).total
    assert total == sampled_basic_components(ivs)
    assert total <= 2 * len(ivs) + 1


# --- boxes ---------------------------------------------------------------------------


def _two_boxes():
    return BoxFamily3D((
        Box((F(0), F(2)), (F(0), F(2)), (F(0), F(2))),
        Box((F(1), F(3)), (F(1), F(3)), (F(1), F(3))),
    ))


def test_cubical_grid_is_a_disk():
    cx, ids = cubical_grid(3)
    assert validate_complex(cx).ok
    assert cx.count_by_dim() == [16, 24, 9]
    assert homology_of(cx) == HomologyReport.from_betti(1)


def test_grid_fiber_shapes():
    fam = _two_boxes()
    arr = grid_fiber(fam, F(3, 2), 3)
    assert validate_complex(arr.ambient).ok
    # each box covers a 2x2 block of the 3x3 grid; the blocks share one square
    assert [sum(arr.ambient.dims[c] == 2 for c in s) for s in arr.sets] == [4, 4]
    assert homology_of(arr.ambient, arr.sets[0] & arr.sets[1]) == HomologyReport.from_betti(1)
    assert grid_fiber(fam, F(5, 2), 3).sets[0] == frozenset()


def test_box_census():
    rep = box_census(_two_boxes(), 3)
    assert rep.approximate and rep.m == 1
    assert rep.critical_values == [F(0), F(1), F(2), F(3)]
    # nothing, first box only, both, second box only; labels keep the two singles apart
    assert rep.distinct_count == 4
    assert rep.constancy_ok


def test_box_must_be_nonempty():
    with pytest.raises(FamilyError):
        Box((F(1), F(0)), (F(0), F(1)), (F(0), F(1)))


# --- growth fit ------------------------------------------------------------------


def test_growth_fit_exact_power():
    fit = growth_fit([(2, 8), (4, 64), (8, 512)])
    assert fit.slope == pytest.approx(3.0, abs=1e-12)


def test_growth_fit_three_points():
    fit = growth_fit([(4, 10), (8, 35), (16, 120)])
    assert fit.slope == pytest.approx(1.7924812503605778, rel=1e-12)
    assert fit.slope == pytest.approx(log(12) / log(4), rel=1e-12)


def test_growth_fit_drops_zero_counts_with_warning():
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always")
        fit = growth_fit([(2, 0), (2, 4), (4, 16), (8, 64)])
    assert caught and "zero count" in str(caught[0].message)
    assert fit.slope == pytest.approx(2.0)


def test_growth_fit_needs_three_sizes():
    with pytest.raises(ValueError):
        growth_fit([(2, 3), (4, 5), (4, 6)])


def test_small_growth_sweep():
    runs, fit = sweep_growth([2, 3, 4], 3, base_seed=1)
    assert len(runs) == 9
    assert all(r["constancy_ok"] for r in runs)
    assert fit.slope < 2.5


# --- serialization -------------------------------------------------------------------


def test_family_round_trip():
    for fam in (two_slab_family(), _two_boxes(), random_slab_family(3, 4)):
        text = serialize_family(fam)
        assert load_family(text) == fam


@pytest.mark.parametrize(
    "doc, fragment",
    [
        ({"format": "slab-v9"}, "format"),
        ({"format": "slab-v1", "slabs": []}, "slabs"),
        ({"format": "slab-v1", "slabs": [{"a": "0/1"}]}, "missing field"),
        ({"format": "slab-v1", "slabs": [dict(a="0", b="0", c="0", d="1", e="0", f="x")]}, "slabs[0]"),
        ({"format": "box-v1", "boxes": [{"x": ["0"], "y": ["0", "1"], "z": ["0", "1"]}]}, "boxes[0]"),
    ],
)
def test_load_family_diagnostics(doc, fragment):
    with pytest.raises(FamilyError) as err:
        load_family(json.dumps(doc))
    assert fragment in str(err.value)
