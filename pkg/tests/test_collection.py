import itertools
import random
from fractions import Fraction

import pytest

from torex.cohomology import cohomology_dims
from torex.collection import (
    KoszulMove, build_collection, closure, expected_count, fullness_region, hom_order,
    koszul_moves, region_classes, replay, verify_strong_exceptional,
)
from torex.errors import HomCycle, NonIntegralCount, NotFano, UnsupportedShape
from torex.fan import StackyFan, face_fan_from_points
from torex.fixtures import (
    fixture_fans, hexagon, p1_times_p1, p1_times_p2, pentagon, projective_plane,
    weighted_line_23,
)
from torex.geometry import HPolyhedron
from torex.picard import picard_group

FIX = fixture_fans()


def degrees(classes):
    return [c.free for c in classes]


def test_pinned_collections():
    assert degrees(build_collection(FIX["F_C"]).classes) == [(-2,), (-1,), (0,)]
    assert degrees(build_collection(FIX["F_B"]).classes) == [(-4,), (-3,), (-2,), (-1,), (0,)]
    assert len(build_collection(FIX["F_E"]).classes) == 5
    t = build_collection(FIX["F_T"])
    assert len(t.classes) == 4 and {c.torsion for c in t.classes} == {(0,), (1,)}


@pytest.mark.parametrize("name", sorted(FIX))
def test_counts(name):
    coll = build_collection(FIX[name])
    assert coll.count_check
    assert len(coll.classes) == expected_count(FIX[name])


def test_expected_counts():
    counts = {k: expected_count(f) for k, f in FIX.items()}
    assert counts == {"F_A": 2, "F_B": 5, "F_T": 4, "F_C": 3, "F_D": 4, "F_E": 5}


def test_shape_errors():
    nef = StackyFan(2, ((1, 0), (0, 1), (-1, 2), (0, -1)), ((0, 1), (1, 2), (2, 3), (0, 3)))
    with pytest.raises(NotFano):
        build_collection(nef)
    cube = face_fan_from_points([(1, 0, 0), (0, 1, 0), (0, 0, 1), (-1, 0, 0), (0, -1, 0),
                                 (0, 0, -1)])
    with pytest.raises(UnsupportedShape):
        build_collection(cube)


def test_non_integral_count(monkeypatch):
    # integer rays always give an integral volume, so force a bad value
    from torex import collection as mod
    monkeypatch.setattr(mod, "normalized_volume", lambda fan: Fraction(7, 2))
    with pytest.raises(NonIntegralCount):
        expected_count(projective_plane())


def test_verify_p1_times_p1_h0_matrix():
    coll = build_collection(FIX["F_D"])
    rep = verify_strong_exceptional(coll.pic, coll.classes)
    assert rep["passed"] and rep["strong_implies_acyclic"]
    for i, a in enumerate(coll.classes):
        for j, b in enumerate(coll.classes):
            m, n = (y - x for x, y in zip(a.free, b.free))
            expected = (m + 1) * (n + 1) if m >= 0 and n >= 0 else 0
            assert rep["h0"][i][j] == (1 if i == j else expected)


def test_verify_negative_control():
    coll = build_collection(FIX["F_C"])
    pic = coll.pic
    bad = list(coll.classes) + [pic.canonical]
    rep = verify_strong_exceptional(pic, bad)
    assert not rep["passed"]
    assert any(f["dims"][2] == 1 for f in rep["failures"])
    assert verify_strong_exceptional(pic, [pic.zero])["passed"]
    with pytest.raises(ValueError):
        verify_strong_exceptional(pic, [pic.zero, pic.zero])


def test_hom_order():
    pic = picard_group(projective_plane())
    O = pic.make_class
    assert degrees(hom_order(pic, [O([0]), O([-1]), O([-2])])) == [(-2,), (-1,), (0,)]
    classes = [O([3]), O([1]), O([2])]
    assert degrees(hom_order(pic, classes, h0=lambda i, j: 0)) == [(1,), (2,), (3,)]
    with pytest.raises(HomCycle):
        hom_order(pic, classes, h0=lambda i, j: 1)


def test_koszul_moves():
    moves = koszul_moves(projective_plane())
    assert len(moves) == 1 and moves[0].support == (0, 1, 2)
    assert len(moves[0].offsets(picard_group(projective_plane()))) == 8
    moves = koszul_moves(p1_times_p1())
    assert sorted(m.support for m in moves) == [(0, 2), (1, 3)]
    assert all(len(m.offsets(picard_group(p1_times_p1()))) == 4 for m in moves)
    moves = koszul_moves(pentagon())
    pairs = [m for m in moves if m.kind == "koszul"]
    arcs = [m for m in moves if m.kind == "arc"]
    assert len(pairs) == 5 and all(len(m.divisors) == 2 for m in pairs)
    assert len(arcs) == 5
    fan = pentagon()
    for m in moves:
        assert not fan.is_face(m.support)
        for A, B in itertools.combinations(m.divisors, 2):
            assert all(not fan.is_face((a, b)) for a in A for b in B)


@pytest.mark.parametrize("fan", [projective_plane(), p1_times_p1(), pentagon(), hexagon(),
                                 weighted_line_23(), p1_times_p2()], ids=lambda f: f.name)
def test_koszul_alternating_euler_sum(fan):
    pic = picard_group(fan)
    rng = random.Random(f"anchors-{fan.name}")
    for move in koszul_moves(fan):
        terms = move.offsets(pic)
        for _ in range(50):
            anchor = pic.make_class([rng.randint(-4, 4) for _ in range(pic.k)],
                                    [rng.randrange(m) for m in pic.torsion])
            total = 0
            for off, pos in terms:
                dims = cohomology_dims(pic, anchor + off)
                chi = sum((-1) ** p * h for p, h in enumerate(dims))
                total += (-1) ** pos * chi
            assert total == 0


def box_region(k, lo, hi):
    ineqs = []
    for j in range(k):
        e = tuple(int(i == j) for i in range(k))
        ineqs.append((e, hi))
        ineqs.append((tuple(-x for x in e), -lo))
    return HPolyhedron(k, tuple(ineqs), box=tuple((lo, hi) for _ in range(k)))


def test_closure_p2_degrees():
    coll = build_collection(projective_plane())
    trace = closure(coll.pic, coll.classes, box_region(1, -8, 8))
    assert trace.complete
    assert len(trace.known()) == 17
    assert replay(coll.pic, trace, trace.moves) == trace.known()


def test_closure_p1_times_p1_box():
    coll = build_collection(p1_times_p1())
    trace = closure(coll.pic, coll.classes, box_region(2, -4, 4))
    assert trace.complete and len(trace.region) == 81


def test_closure_empty_start():
    pic = picard_group(projective_plane())
    trace = closure(pic, [], box_region(1, -3, 3))
    assert not trace.complete and trace.generations == []


def test_closure_incomplete_from_too_few():
    pic = picard_group(projective_plane())
    trace = closure(pic, [pic.zero, pic.make_class([-1])], box_region(1, -4, 4))
    assert not trace.complete


@pytest.mark.parametrize("name", sorted(FIX))
def test_fullness_closure_and_replay(name):
    coll = build_collection(FIX[name])
    region = fullness_region(coll)
    trace = closure(coll.pic, coll.classes, region)
    assert trace.complete
    assert set(region_classes(coll.pic, region)) == set(trace.region)
    assert replay(coll.pic, trace, trace.moves) == trace.known()
    again = closure(coll.pic, coll.classes, region)
    assert again.to_dict() == trace.to_dict()


def test_replay_rejects_tampered_trace():
    coll = build_collection(projective_plane())
    trace = closure(coll.pic, coll.classes, box_region(1, -6, 6))
    g = trace.generations[0]
    g["anchor"] = g["anchor"] + coll.pic.make_class([5])
    with pytest.raises(ValueError):
        replay(coll.pic, trace, trace.moves)


def test_rank_two_in_dimension_three():
    coll = build_collection(p1_times_p2())
    assert coll.count_check and len(coll.classes) == 6
    assert verify_strong_exceptional(coll.pic, coll.classes)["passed"]


def test_move_dict():
    m = KoszulMove((0, 2), ((0,), (2,)))
    assert m.to_dict() == {"kind": "koszul", "support": [0, 2], "divisors": [[0], [2]]}
