from math import comb

import pytest

from arrhocolim.complex_core import homology_of, validate_complex
from arrhocolim.nerve_thickening import thickened_model_check, thickened_skeleton_model


def test_model_vertices_are_small_faces():
    model = thickened_skeleton_model(3, 0)
    assert model.vertex_sets == ((1,), (2,), (3,))
    assert model.model.count_by_dim() == [3]


def test_model_of_full_simplex_is_its_subdivision():
    model = thickened_skeleton_model(3, 2)
    # Sd of a triangle: 7 vertices, 12 edges, 6 triangles
    assert model.model.count_by_dim() == [7, 12, 6]


def test_model_for_edges_of_a_triangle():
    model = thickened_skeleton_model(3, 1)
    assert model.model.count_by_dim() == [6, 6]
    assert homology_of(model.model).betti == (1, 1)


@pytest.mark.parametrize("n, m", [(0, 0), (3, 3), (3, -1)])
def test_bad_parameters(n, m):
    with pytest.raises(ValueError):
        thickened_skeleton_model(n, m)


@pytest.mark.parametrize("n", range(1, 6))
def test_model_matches_skeleton(n):
    for m in range(n):
        model = thickened_skeleton_model(n, m)
        assert validate_complex(model.model.to_cell_complex()).ok
        report = thickened_model_check(n, m)
        assert report.passed, report.to_json()
        reduced_top = report.lhs.betti_at(m) - (1 if m == 0 else 0)
        assert reduced_top == comb(n - 1, m + 1)
