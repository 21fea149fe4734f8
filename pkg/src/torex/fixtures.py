"""Named example fans and a seeded generator of random Fano polygons."""
from __future__ import annotations

import random

from .errors import NotSimplicial, OriginNotInterior
from .fan import StackyFan, face_fan_from_points
from .geometry import convex_hull_2d


def projective_line() -> StackyFan:
    return StackyFan(1, ((1,), (-1,)), ((0,), (1,)), name="P1")


def weighted_line_23() -> StackyFan:
    """Weighted projective line with weights 2 and 3."""
    return StackyFan(1, ((3,), (-2,)), ((0,), (1,)), name="P(2,3)")


def line_with_torsion() -> StackyFan:
    """Rays (2), (-2): Picard group Z + Z/2."""
    return StackyFan(1, ((2,), (-2,)), ((0,), (1,)), name="P1 with Z/2 gerbe")


def projective_plane() -> StackyFan:
    return StackyFan(2, ((1, 0), (0, 1), (-1, -1)), ((0, 1), (1, 2), (0, 2)), name="P2")


def p1_times_p1() -> StackyFan:
    return StackyFan(
        2, ((0, 1), (1, 0), (0, -1), (-1, 0)),
        ((0, 1), (1, 2), (2, 3), (0, 3)), name="P1xP1",
    )


def pentagon() -> StackyFan:
    """Degree 7 del Pezzo fan; rays listed clockwise."""
    return face_fan_from_points([(0, 1), (1, 1), (1, 0), (0, -1), (-1, 0)], name="pentagon")


def hexagon() -> StackyFan:
    """Degree 6 del Pezzo fan; rays listed clockwise."""
    return face_fan_from_points(
        [(0, 1), (1, 1), (1, 0), (0, -1), (-1, -1), (-1, 0)], name="hexagon")


def p1_times_p2() -> StackyFan:
    """A rank-3 lattice example with Picard rank 2."""
    pts = [(1, 0, 0), (-1, 0, 0), (0, 1, 0), (0, 0, 1), (0, -1, -1)]
    return face_fan_from_points(pts, name="P1xP2")


def fixture_fans() -> dict[str, StackyFan]:
    return {
        "F_A": projective_line(),
        "F_B": weighted_line_23(),
        "F_T": line_with_torsion(),
        "F_C": projective_plane(),
        "F_D": p1_times_p1(),
        "F_E": pentagon(),
    }


def random_fano_polygon(n: int, seed: int, radius: int = 2) -> StackyFan:
    """
    A convex lattice polygon with exactly ``n`` vertices in the box
    ``[-radius, radius]^2`` and the origin in its interior, rays listed
    clockwise.  Deterministic in ``(n, seed, radius)``.
    """
    rng = random.Random(f"polygon-{n}-{seed}-{radius}")
    box = [(x, y) for x in range(-radius, radius + 1) for y in range(-radius, radius + 1)
           if (x, y) != (0, 0)]
    while True:
        pts = rng.sample(box, min(len(box), 2 * n + 2))
        hull = convex_hull_2d(pts)
        if len(hull) < n:
            continue
        keep = sorted(rng.sample(range(len(hull)), n))
        chosen = [(int(hull[k][0]), int(hull[k][1])) for k in keep]
        try:
            return face_fan_from_points(chosen, name=f"random-{n}-{seed}")
        except (OriginNotInterior, NotSimplicial):
            continue
