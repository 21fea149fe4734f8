from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from torex.collection import build_collection
from torex.errors import InputError, UnsupportedDimension
from torex.figure import clip, cone_halfplanes, emit_figure, figure_scene, fmt, render_svg
from torex.fixtures import fixture_fans, p1_times_p1, p1_times_p2, projective_plane
from torex.picard import picard_group


def test_fmt_rounding():
    assert fmt(Fraction(1, 3)) == "0.333333"
    assert fmt(Fraction(2, 3)) == "0.666667"
    assert fmt(-Fraction(1, 2)) == "-0.5"
    assert fmt(7) == "7"
    # exact half of the last digit rounds to even
    assert fmt(Fraction(5, 10 ** 7)) == "0"
    assert fmt(Fraction(15, 10 ** 7)) == "0.000002"


@given(st.fractions(min_value=-1000, max_value=1000))
def test_fmt_is_close(x):
    assert abs(Fraction(fmt(x)) - x) <= Fraction(1, 2 * 10 ** 6)


BOX = [(Fraction(-4), Fraction(-4)), (Fraction(4), Fraction(-4)),
       (Fraction(4), Fraction(4)), (Fraction(-4), Fraction(4))]


def _inside(p, hps):
    return all(n[0] * p[0] + n[1] * p[1] >= c for n, c in hps)


@given(st.lists(st.tuples(st.integers(-3, 3), st.integers(-3, 3)), min_size=1, max_size=4),
       st.tuples(st.integers(-2, 2), st.integers(-2, 2)))
def test_cone_halfplanes_match_membership(gens, apex):
    gens = [g for g in gens if g != (0, 0)]
    if not gens:
        return
    hps = cone_halfplanes(apex, gens)
    # every nonnegative combination of two generators must pass the half-plane test
    for g1 in gens:
        for g2 in gens:
            for a in range(4):
                for b in range(4):
                    p = (apex[0] + a * g1[0] + b * g2[0], apex[1] + a * g1[1] + b * g2[1])
                    assert _inside(p, hps)


def test_clip_against_quadrant():
    hps = cone_halfplanes((0, 0), [(1, 0), (0, 1)])
    region = clip(BOX, hps)
    assert sorted(region) == sorted([(0, 0), (4, 0), (4, 4), (0, 4)])
    assert clip(BOX, cone_halfplanes((10, 10), [(1, 0), (0, 1)])) == []
    assert sorted(clip(BOX, [])) == sorted(BOX)


def _counts(data):
    return data.count(b"<polygon"), data.count(b'class="wedge"'), data.count(b'class="collection"')


def test_pentagon_figure():
    data = emit_figure(picard_group(fixture_fans()["F_E"]))
    assert _counts(data) == (2, 11, 5)
    assert b'class="Q"' in data and b'class="P_hat"' in data


@pytest.mark.parametrize("fan, dots", [(fixture_fans()["F_D"], 4), (p1_times_p2(), 6)],
                         ids=["F_D", "P1xP2"])
def test_rank_two_figures(fan, dots):
    data = emit_figure(picard_group(fan))
    assert _counts(data) == (1, 3, dots)
    assert b'class="window"' in data


def test_deterministic_and_written(tmp_path):
    pic = picard_group(p1_times_p1())
    path = tmp_path / "x.svg"
    a = emit_figure(pic, path=str(path))
    assert path.read_bytes() == a == emit_figure(pic)


def test_viewport_and_dimension_errors():
    pic = picard_group(p1_times_p1())
    for w, h in [(0, 10), (10, 0), (-1, 5)]:
        with pytest.raises(InputError):
            emit_figure(pic, width=w, height=h)
    coll = build_collection(p1_times_p1())
    with pytest.raises(InputError):
        render_svg(figure_scene(coll.pic, coll), 0, 100)
    p2 = projective_plane()
    with pytest.raises(UnsupportedDimension):
        emit_figure(picard_group(p2))


def test_collection_points_lie_on_lattice():
    coll = build_collection(fixture_fans()["F_E"])
    scene = figure_scene(coll.pic, coll)
    assert set(scene["points"]) <= set(scene["lattice"])


def test_pointed_sector_excludes_outside():
    hps = cone_halfplanes((1, 1), [(1, 0), (1, 1), (0, 1)])
    assert _inside((3, 2), hps) and not _inside((0, 2), hps) and not _inside((2, 0), hps)
    half = cone_halfplanes((0, 0), [(1, 0), (0, 1), (-1, 0)])
    assert _inside((-5, 0), half) and not _inside((0, -1), half)
    assert cone_halfplanes((0, 0), [(1, 0), (0, 1), (-1, -1)]) == []
