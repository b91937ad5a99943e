import pytest
from hypothesis import given, settings

from arrhocolim.arrangement import Arrangement, random_arrangement
from arrhocolim.complex_core import HomologyReport, SimplicialComplex, homology, validate_complex
from arrhocolim.fixtures import RP2_TRIANGLES, all_equal_circle, overlapping_intervals, projective_plane, three_arc_circle
from arrhocolim.hocolim import (
    build_hocolim,
    compare_hocolim_oracles,
    diagram_signature,
    hocolim_chain_total,
    nerve,
    truncation_comparison,
    union_comparison,
    verify_comparison_corollary,
)
from arrhocolim.arrangement import parse_formula

from conftest import arrangements


def test_cells_and_dimensions_on_a_point():
    # one vertex lying in all three sets: hocolim is the full 2-simplex
    pt = SimplicialComplex.full_simplex(1)
    arr = Arrangement.from_simplicial(pt, [[(0,)]] * 3)
    h = build_hocolim(arr, 2)
    assert h.complex.count_by_dim() == [3, 3, 1]
    assert h.homology() == HomologyReport.from_betti(1)
    assert build_hocolim(arr, 1).homology() == HomologyReport.from_betti(1, 1)


def test_projections_are_consistent():
    h = build_hocolim(three_arc_circle(), 1)
    for cell in range(len(h.complex)):
        J, c = h.nerve_label(cell), h.space_label(cell)
        assert h.index[(J, c)] == cell
        assert set(J) <= h.base.signatures[c]
        assert h.complex.dims[cell] == len(J) - 1 + h.base.ambient.dims[c]


def test_m_out_of_range():
    with pytest.raises(ValueError):
        build_hocolim(three_arc_circle(), 3)
    with pytest.raises(ValueError):
        hocolim_chain_total(three_arc_circle(), -1)


def test_three_arc_homology_by_m():
    arr = three_arc_circle()
    expected = {0: HomologyReport.from_betti(3), 1: HomologyReport.from_betti(1, 1), 2: HomologyReport.from_betti(1, 1)}
    for m, h in expected.items():
        assert build_hocolim(arr, m).homology() == h
        assert compare_hocolim_oracles(arr, m).passed


def test_all_equal_circle_is_torus_at_m1():
    arr = all_equal_circle()
    assert build_hocolim(arr, 1).homology() == HomologyReport.from_betti(1, 2, 1)
    assert build_hocolim(arr, 2).homology() == HomologyReport.from_betti(1, 1)
    report = truncation_comparison(arr, 1)
    assert report.passed
    assert [row["equal"] for row in report.per_degree[:2]] == [True, False]


def test_union_comparison_on_fixtures():
    for arr in (three_arc_circle(), all_equal_circle(), overlapping_intervals()):
        report = union_comparison(arr)
        assert report.passed, report.to_json()


def test_check_report_json_shape():
    doc = union_comparison(three_arc_circle()).to_json()
    assert set(doc) >= {"check", "pass", "lhs", "rhs", "per_degree"}
    assert doc["pass"] is True


def test_empty_sets_give_empty_hocolim():
    sc = SimplicialComplex.full_simplex(2)
    arr = Arrangement.from_simplicial(sc, [[], []])
    assert len(build_hocolim(arr, 1).complex) == 0
    assert homology(hocolim_chain_total(arr, 1)) == HomologyReport((), ())
    assert union_comparison(arr).passed


@settings(max_examples=60, deadline=None)
@given(arrangements())
def test_hocolim_complex_is_valid(arr):
    for m in range(arr.n):
        assert validate_complex(build_hocolim(arr, m).complex).ok
        assert hocolim_chain_total(arr, m).squares_to_zero() == []


@settings(max_examples=60, deadline=None)
@given(arrangements())
def test_oracles_agree(arr):
    for m in range(arr.n):
        assert compare_hocolim_oracles(arr, m).passed


@settings(max_examples=60, deadline=None)
@given(arrangements())
def test_union_and_truncation(arr):
    assert union_comparison(arr).passed
    for m in range(arr.n):
        assert truncation_comparison(arr, m).passed


def test_corollary_on_fixture():
    arr = three_arc_circle()
    for text in ("T1 | T2", "T1 & T2", "(T1 | T2) & T3", "T1 | T2 | T3"):
        assert verify_comparison_corollary(arr, parse_formula(text)).passed


def test_signature_is_deterministic_and_hashable():
    a = diagram_signature(three_arc_circle(), 1)
    b = diagram_signature(three_arc_circle(), 1)
    assert a == b and a.digest == b.digest and len(a.digest) == 64
    assert a != diagram_signature(all_equal_circle(), 1)
    assert {a, b} == {a}


def test_signature_contents():
    sig = diagram_signature(overlapping_intervals(), 1)
    by_I = dict(sig.intersections)
    assert by_I[(1,)] == by_I[(2,)] == by_I[(1, 2)] == HomologyReport.from_betti(1)
    assert sig.union == HomologyReport.from_betti(1)
    assert sig.hocolim == sig.union


def test_nerve_of_three_arcs_is_a_circle():
    assert nerve(three_arc_circle()).simplices == frozenset({(0,), (1,), (2,), (0, 1), (0, 2), (1, 2)})


def test_nerve_skips_empty_sets():
    arr = random_arrangement(0, vertex_count=4, n=3, set_density=0.0)
    assert nerve(arr).simplices == frozenset()


def test_oracles_agree_with_torsion():
    rp2 = projective_plane()
    half = RP2_TRIANGLES[:5]
    rest = RP2_TRIANGLES[5:]
    arr = Arrangement.from_simplicial(rp2, [half, rest, RP2_TRIANGLES[3:8]])
    for m in range(3):
        assert compare_hocolim_oracles(arr, m).passed
    report = union_comparison(arr)
    assert report.passed
    assert report.rhs.torsion_at(1) == (2,)
