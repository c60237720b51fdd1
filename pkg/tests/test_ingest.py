from fractions import Fraction

import pytest

from coverhom.complexes import SimplicialComplex, betti, cochain_complex
from coverhom.errors import InvalidInput
from coverhom.hocolim import arrangement_betti
from coverhom.ingest import (
    Scene,
    betti_by_resolution,
    ingest_geometric,
    make_grid,
    parse_primitive,
    stable_arrangement_betti,
)


def scene(prims, dim=2, bbox=None):
    bbox = bbox or [[0] * dim, [1] * dim]
    return Scene.from_json({"dim": dim, "bbox": bbox, "primitives": prims})


def test_single_ball_three_dims():
    s = scene([{"type": "ball", "center": ["1/2"] * 3, "radius": "2/5"}], dim=3)
    arr, _ = ingest_geometric(s, 6)
    assert arrangement_betti(arr, 2).betti == (1, 0, 0)


def test_two_disjoint_balls():
    s = scene([
        {"type": "ball", "center": ["1/4", "1/2"], "radius": "1/5"},
        {"type": "ball", "center": ["3/4", "1/2"], "radius": "1/5"},
    ])
    arr, _ = ingest_geometric(s, 16)
    assert arrangement_betti(arr, 1).betti == (2, 0)


def annulus_json():
    # outer disk minus the open inner disk, as an intersection with an affine quadric
    # in (1, x, y): (x - 1/2)^2 + (y - 1/2)^2 - 1/25 >= 0
    inner = [[Fraction(1, 2) - Fraction(1, 25), Fraction(-1, 2), Fraction(-1, 2)],
             [Fraction(-1, 2), 1, 0],
             [Fraction(-1, 2), 0, 1]]
    return {
        "type": "intersection",
        "parts": [
            {"type": "ball", "center": ["1/2", "1/2"], "radius": "2/5"},
            {"type": "quadric", "matrix": inner, "sign": ">=0"},
        ],
    }


def hand_annulus(m=8):
    # two concentric m-gons joined by a band of 2m triangles
    tris = []
    for i in range(m):
        j = (i + 1) % m
        tris.append((i, j, m + i))
        tris.append((j, m + i, m + j))
    return SimplicialComplex.from_maximal(2 * m, [tuple(sorted(t)) for t in tris])


def test_annulus_matches_hand_triangulation():
    s = scene([annulus_json()])
    arr, _ = ingest_geometric(s, 20)
    b = arrangement_betti(arr, 1).betti
    ref = betti(cochain_complex(hand_annulus()))
    assert b == (1, 1)
    assert tuple(ref[:2]) == b


def test_stabilization_helper():
    s = scene([annulus_json()])
    b, res = stable_arrangement_betti(s, 1, resolution=8, max_resolution=64)
    assert b == (1, 1) and res <= 64
    table = betti_by_resolution(s, 1, [16, 32])
    assert set(table.values()) == {(1, 1)}


def test_grid_counts():
    g = make_grid((Fraction(0),) * 2, (Fraction(1),) * 2, 3)
    assert g.shape == (3, 3) and g.vertex_count == 16
    assert len(g.top_simplices()) == 18
    K = SimplicialComplex.from_maximal(g.vertex_count, g.top_simplices())
    assert betti(cochain_complex(K)) == [1, 0, 0]


def test_grid_in_three_dims_is_a_ball():
    g = make_grid((Fraction(0),) * 3, (Fraction(1),) * 3, 2)
    K = SimplicialComplex.from_maximal(g.vertex_count, g.top_simplices())
    assert len(g.top_simplices()) == 8 * 6
    assert betti(cochain_complex(K)) == [1, 0, 0, 0]


def test_errors():
    with pytest.raises(InvalidInput):
        make_grid((Fraction(0),), (Fraction(1),), 0)
    with pytest.raises(InvalidInput, match="unsupported"):
        parse_primitive({"type": "torus"}, 2)
    with pytest.raises(InvalidInput):
        scene([], dim=4)
    with pytest.raises(InvalidInput):
        scene([], bbox=[[0, 0], [0, 1]])
    with pytest.raises(InvalidInput):
        parse_primitive({"type": "ball", "center": [0], "radius": 1}, 2)


def test_flat_bbox_and_decimal_numbers():
    s = Scene.from_json({"dim": 2, "bbox": [0, 0, 1, 1], "primitives": [{"type": "box", "lo": [0.25, 0.25], "hi": [0.75, 0.75]}]})
    arr, _ = ingest_geometric(s, 8)
    assert arrangement_betti(arr, 1).betti == (1, 0)
