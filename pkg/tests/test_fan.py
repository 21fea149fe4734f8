import itertools
import warnings
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from torex.errors import InvalidFan, NotSimplicial, OriginNotInterior
from torex.fan import (
    FanClass, StackyFan, arc, c_complex, classify, clockwise_order, cyclic_arcs, ensure_clockwise,
    face_fan_from_points, is_clockwise, minimal_nonfaces, normalized_volume, supp_complex,
    validate,
)
from torex.fixtures import (
    fixture_fans, hexagon, p1_times_p1, p1_times_p2, pentagon, projective_plane,
    random_fano_polygon, weighted_line_23,
)


def polygon_fan(points, name=""):
    n = len(points)
    return StackyFan(2, tuple(points), tuple(tuple(sorted((i, (i + 1) % n))) for i in range(n)),
                     name=name)


def test_fixtures_validate():
    for fan in list(fixture_fans().values()) + [hexagon(), p1_times_p2()]:
        assert validate(fan).ok, fan.name


@pytest.mark.parametrize("fan, kind", [
    (StackyFan(2, ((1, 0), (0, 1), (-1, -1)), ((0, 1), (1, 2))), "incomplete"),
    (StackyFan(2, ((1, 0), (0, 1), (-1, -1), (1, 1)), ((0, 1), (1, 2), (0, 2))), "unused_ray"),
    (StackyFan(2, ((1, 0), (0, 1), (-1, -1)), ((0, 1), (1, 2), (0, 2), (0, 1))), "duplicate_cone"),
    (StackyFan(2, ((1, 0), (2, 0), (0, 1)), ((0, 1), (1, 2), (0, 2))), "non_simplicial"),
    (StackyFan(1, ((1,), (2,)), ((0,), (1,))), "overlap"),
    (StackyFan(2, ((1, 0), (0, 1), (0, 0)), ((0, 1),)), "zero_ray"),
])
def test_validate_negative_controls(fan, kind):
    rep = validate(fan)
    assert not rep.ok
    assert kind in {i["kind"] for i in rep.issues}


def test_overlapping_cones_detected():
    # two triangles wrapping twice around the origin
    pts = ((1, 0), (0, 1), (-1, -1), (1, 1), (-1, 0), (0, -1))
    fan = StackyFan(2, pts, ((0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5)))
    assert not validate(fan).ok


def test_high_dimension_needs_trust():
    pts = [tuple(int(i == j) for j in range(4)) for i in range(4)] + [(-1, -1, -1, -1)]
    cones = tuple(c for c in itertools.combinations(range(5), 4))
    fan = StackyFan(4, tuple(pts), cones)
    assert "unverified_completeness" in {i["kind"] for i in validate(fan).issues}
    trusted = StackyFan(4, tuple(pts), cones, trusted_complete=True)
    assert validate(trusted).ok


def test_classify():
    for fan in fixture_fans().values():
        assert classify(fan) is FanClass.FANO
    f2 = polygon_fan(((1, 0), (0, 1), (-1, 2), (0, -1)))
    assert classify(f2) is FanClass.NEF_FANO
    f3 = polygon_fan(((1, 0), (0, 1), (-1, 3), (0, -1)))
    assert classify(f3) is FanClass.NEITHER
    with pytest.raises(InvalidFan):
        classify(StackyFan(2, ((1, 0), (0, 1), (-1, -1)), ((0, 1),)))


def test_face_fan_errors():
    with pytest.raises(OriginNotInterior):
        face_fan_from_points([(1, 0), (0, 1), (1, 1)])
    with pytest.raises(NotSimplicial):
        face_fan_from_points([(1, 1), (1, -1), (-1, 1), (-1, -1), (1, 0)])
    # a square pyramid facet is not simplicial
    with pytest.raises(NotSimplicial):
        face_fan_from_points([(1, 1, 1), (1, -1, 1), (-1, 1, 1), (-1, -1, 1), (0, 0, -1)])


def test_dim2_faces_are_adjacent_pairs():
    for fan in [pentagon(), hexagon(), random_fano_polygon(7, 2), p1_times_p1()]:
        n = fan.n
        for J in itertools.chain.from_iterable(itertools.combinations(range(n), k) for k in range(4)):
            adjacent = len(J) < 2 or (len(J) == 2 and (J[1] - J[0]) % n in (1, n - 1))
            assert fan.is_face(J) == adjacent
        expected = sorted((i, j) for i, j in itertools.combinations(range(n), 2)
                          if (j - i) % n not in (1, n - 1))
        assert sorted(minimal_nonfaces(fan)) == expected


def test_minimal_nonfaces_p2():
    assert minimal_nonfaces(projective_plane()) == [(0, 1, 2)]


def test_c_complex_is_supp_of_indicator():
    for fan in [pentagon(), hexagon(), p1_times_p2(), random_fano_polygon(8, 1)]:
        for mask in range(1 << fan.n):
            I = [i for i in range(fan.n) if mask >> i & 1]
            r = [0 if i in I else -1 for i in range(fan.n)]
            assert c_complex(fan, I) == supp_complex(fan, r)


def test_normalized_volume_pinned():
    vols = {name: normalized_volume(f) for name, f in fixture_fans().items()}
    assert vols == {"F_A": 2, "F_B": 5, "F_T": 4, "F_C": 3, "F_D": 8 // 2, "F_E": 5}
    assert normalized_volume(p1_times_p2()) == 6


def unimodular(d):
    ops = st.lists(st.tuples(st.integers(0, d - 1), st.integers(0, d - 1), st.integers(-2, 2),
                             st.booleans()), min_size=1, max_size=6)

    def build(seq):
        g = [[int(i == j) for j in range(d)] for i in range(d)]
        for a, b, k, neg in seq:
            if a != b:
                g[a] = [x + k * y for x, y in zip(g[a], g[b])]
            if neg:
                g[a] = [-x for x in g[a]]
        return g
    return ops.map(build)


@given(unimodular(2), st.sampled_from([0, 1, 2, 3]))
def test_volume_gl2_invariant(g, which):
    fan = [pentagon(), hexagon(), p1_times_p1(), projective_plane()][which]
    moved = fan.transformed(g)
    assert validate(moved).ok
    assert normalized_volume(moved) == normalized_volume(fan)


@given(unimodular(3))
def test_volume_gl3_invariant(g):
    fan = p1_times_p2()
    assert normalized_volume(fan.transformed(g)) == normalized_volume(fan)


def test_volume_weighted_line():
    assert normalized_volume(weighted_line_23()) == Fraction(5)


def test_clockwise_handling():
    fan = pentagon()
    assert is_clockwise(fan)
    perm = [0, 2, 1, 3, 4]
    rays = tuple(fan.rays[p] for p in perm)
    shuffled = face_fan_from_points(rays)
    assert not is_clockwise(shuffled)
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always")
        fixed, order = ensure_clockwise(shuffled)
    assert caught and is_clockwise(fixed)
    assert [shuffled.rays[i] for i in order] == list(fixed.rays)
    assert clockwise_order(fan.rays) == list(range(5))


def test_arcs():
    assert arc(3, 1, 5) == [3, 4, 0]
    assert cyclic_arcs([0, 1, 3], 5) == [(0, 2), (3, 4)]
    assert cyclic_arcs([4, 0], 5) == [(4, 1)]
    assert cyclic_arcs(range(5), 5) == [(0, 5)]
