"""
Stacky fans: rays in a lattice ``N = Z^d`` plus simplicial maximal cones.

Also houses the simplicial complexes on ray indices used by the cohomology
engine (``Supp(r)`` and the sign-pattern complexes ``C_I``).
"""
from __future__ import annotations

import enum
import functools
import itertools
import warnings
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Optional, Sequence

from .errors import InvalidFan, NotFano, NotSimplicial, OriginNotInterior
from .exactlin import det, dot, rational_rank, solve_rational
from .geometry import convex_hull_2d, cross2, fm_feasible

Face = tuple  # sorted tuple of ray indices


@dataclass(frozen=True)
class StackyFan:
    d: int
    rays: tuple[tuple[int, ...], ...]
    max_cones: tuple[Face, ...]
    trusted_complete: bool = False
    name: str = ""

    def __post_init__(self):
        object.__setattr__(self, "rays", tuple(tuple(int(x) for x in v) for v in self.rays))
        object.__setattr__(self, "max_cones", tuple(tuple(sorted(int(i) for i in c)) for c in self.max_cones))

    @property
    def n(self) -> int:
        return len(self.rays)

    @functools.cached_property
    def faces(self) -> frozenset:
        out = {()}
        for c in self.max_cones:
            for k in range(1, len(c) + 1):
                out.update(itertools.combinations(c, k))
        return frozenset(out)

    def is_face(self, J: Iterable[int]) -> bool:
        return tuple(sorted(J)) in self.faces

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "d": self.d,
            "rays": [list(v) for v in self.rays],
            "max_cones": [list(c) for c in self.max_cones],
            "trusted_complete": self.trusted_complete,
        }

    def transformed(self, g: Sequence[Sequence[int]]) -> "StackyFan":
        """Image of the fan under the lattice automorphism ``v -> g v``."""
        rays = tuple(tuple(dot(row, v) for row in g) for v in self.rays)
        return StackyFan(self.d, rays, self.max_cones, self.trusted_complete, self.name)


@dataclass(frozen=True)
class SimplicialComplexOnRays:
    n: int
    faces: frozenset = field(default_factory=lambda: frozenset({()}))

    def __post_init__(self):
        faces = frozenset(tuple(sorted(f)) for f in self.faces) | {()}
        for f in faces:
            for k in range(len(f)):
                if f[:k] + f[k + 1:] not in faces:
                    raise ValueError(f"face set not closed under subsets: {f}")
        object.__setattr__(self, "faces", faces)

    @property
    def dimension(self) -> int:
        return max(len(f) for f in self.faces) - 1

    def components(self) -> int:
        """Number of connected components of the non-empty part."""
        verts = sorted({f[0] for f in self.faces if len(f) == 1})
        parent = {v: v for v in verts}

        def find(v):
            while parent[v] != v:
                parent[v] = parent[parent[v]]
                v = parent[v]
            return v
        for f in self.faces:
            if len(f) == 2:
                a, b = find(f[0]), find(f[1])
                if a != b:
                    parent[a] = b
        return len({find(v) for v in verts})


class FanClass(enum.Enum):
    FANO = "Fano"
    NEF_FANO = "NefFano"
    NEITHER = "Neither"


# ---------------------------------------------------------------------------
# Validation

@dataclass
class ValidationReport:
    issues: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.issues

    def add(self, kind: str, detail: str):
        self.issues.append({"kind": kind, "detail": detail})


def _generic_point(d: int, normals: list) -> tuple[int, ...]:
    m = 7
    while True:
        g = tuple(m ** k + k for k in range(d))
        if all(dot(u, g) != 0 for u in normals):
            return g
        m += 1


def _hyperplane_normal(vectors: list) -> tuple:
    """Normal of the hyperplane spanned by ``d - 1`` independent vectors in ``Q^d``."""
    from .exactlin import nullspace
    ns = nullspace(vectors, cols=len(vectors[0]) if vectors else None)
    return ns[0]


def _in_open_cone(rays: list, x: Sequence) -> bool:
    """x in the interior of the simplicial full-dimensional cone spanned by ``rays``."""
    A = [[rays[j][i] for j in range(len(rays))] for i in range(len(x))]
    lam = solve_rational(A, list(x))
    return lam is not None and all(c > 0 for c in lam)


def validate(fan: StackyFan) -> ValidationReport:
    rep = ValidationReport()
    d, rays = fan.d, fan.rays
    if d < 1:
        rep.add("dimension", "lattice rank must be at least 1")
        return rep
    for i, v in enumerate(rays):
        if len(v) != d:
            rep.add("ray_length", f"ray {i} has {len(v)} coordinates, expected {d}")
        elif not any(v):
            rep.add("zero_ray", f"ray {i} is zero")
    if len(set(rays)) != len(rays):
        rep.add("duplicate_ray", "rays are not distinct")
    if rep.issues:
        return rep
    n = fan.n
    seen = set()
    for c in fan.max_cones:
        if len(c) != d:
            rep.add("cone_size", f"cone {list(c)} has {len(c)} rays, expected {d}")
            continue
        if any(i < 0 or i >= n for i in c):
            rep.add("cone_index", f"cone {list(c)} refers to a missing ray")
            continue
        if len(set(c)) != d:
            rep.add("cone_size", f"cone {list(c)} repeats a ray")
            continue
        if c in seen:
            rep.add("duplicate_cone", f"cone {list(c)} listed twice")
        seen.add(c)
        if rational_rank([rays[i] for i in c]) != d:
            rep.add("non_simplicial", f"cone {list(c)} has linearly dependent rays")
    if rep.issues:
        return rep
    if not fan.max_cones:
        rep.add("incomplete", "no maximal cones")
        return rep
    used = {i for c in fan.max_cones for i in c}
    for i in range(n):
        if i not in used:
            rep.add("unused_ray", f"ray {i} lies in no cone")
    if d > 3:
        if not fan.trusted_complete:
            rep.add("unverified_completeness",
                    "completeness is only checked for d <= 3; set trusted_complete")
        return rep
    # ridge counting with separation
    ridges: dict = {}
    for c in fan.max_cones:
        for k in range(d):
            ridges.setdefault(c[:k] + c[k + 1:], []).append(c)
    normals = []
    for ridge, cones in sorted(ridges.items()):
        if len(cones) != 2:
            rep.add("incomplete", f"ridge {list(ridge)} lies in {len(cones)} maximal cones")
            continue
        if d == 1:
            a, b = cones[0][0], cones[1][0]
            if (rays[a][0] > 0) == (rays[b][0] > 0):
                rep.add("overlap", "both rays point the same way")
            continue
        u = _hyperplane_normal([list(rays[i]) for i in ridge])
        normals.append(u)
        sides = []
        for c in cones:
            (other,) = [i for i in c if i not in ridge]
            sides.append(dot(u, rays[other]))
        if sides[0] * sides[1] >= 0:
            rep.add("overlap", f"cones {list(cones[0])} and {list(cones[1])} lie on one side of their common ridge")
    if rep.issues:
        return rep
    g = _generic_point(d, normals) if d > 1 else (1,)
    count = sum(1 for c in fan.max_cones if _in_open_cone([rays[i] for i in c], g))
    if count != 1:
        rep.add("incomplete", f"a generic direction is covered {count} times")
    return rep


def require_valid(fan: StackyFan) -> None:
    rep = validate(fan)
    if not rep.ok:
        raise InvalidFan("; ".join(i["detail"] for i in rep.issues))


# ---------------------------------------------------------------------------
# Convexity classification

def origin_interior(points: Sequence[Sequence[int]]) -> bool:
    """0 lies in the interior of conv(points)."""
    if not points:
        return False
    d = len(points[0])
    if rational_rank(points) != d:
        return False
    n = len(points)
    rows = [(tuple(-int(i == j) for j in range(n)), Fraction(0), True) for i in range(n)]
    eqs = [(tuple(p[k] for p in points), Fraction(0)) for k in range(d)]
    return fm_feasible(rows, n, eqs)


def _in_scaled_hull(points, j, strict_scale: bool) -> bool:
    """Is ``s * v_j`` in conv(other points) for some s >= 1 (s > 1 if strict_scale)?"""
    others = [p for i, p in enumerate(points) if i != j]
    m = len(others)
    d = len(points[0])
    # variables: mu_1..mu_m, s
    rows = [(tuple(-int(i == k) for k in range(m)) + (0,), Fraction(0), False) for i in range(m)]
    rows.append(((0,) * m + (-1,), Fraction(-1), strict_scale))
    eqs = [(tuple(p[k] for p in others) + (-points[j][k],), Fraction(0)) for k in range(d)]
    eqs.append(((1,) * m + (0,), Fraction(1)))
    return fm_feasible(rows, m + 1, eqs)


def is_vertex(points, j) -> bool:
    return not _in_scaled_hull(points, j, strict_scale=False)


def on_boundary(points, j) -> bool:
    """For 0 interior: v_j is on the boundary of conv(points)."""
    # v_j is interior iff some s > 1 keeps s v_j inside the hull
    d = len(points[0])
    n = len(points)
    rows = [(tuple(-int(i == k) for k in range(n)) + (0,), Fraction(0), False) for i in range(n)]
    rows.append(((0,) * n + (-1,), Fraction(-1), True))
    eqs = [(tuple(p[k] for p in points) + (-points[j][k],), Fraction(0)) for k in range(d)]
    eqs.append(((1,) * n + (0,), Fraction(1)))
    return not fm_feasible(rows, n + 1, eqs)


def _cone_supporting(fan: StackyFan, strict: bool) -> bool:
    """Each maximal cone's rays span a supporting hyperplane ``u.x = 1`` of the hull."""
    for c in fan.max_cones:
        A = [list(fan.rays[i]) for i in c]
        u = solve_rational(A, [1] * fan.d)
        if u is None:
            return False
        for j, v in enumerate(fan.rays):
            if j in c:
                continue
            val = dot(u, v)
            if val > 1 or (strict and val == 1):
                return False
    return True


def classify(fan: StackyFan) -> FanClass:
    require_valid(fan)
    pts = [list(v) for v in fan.rays]
    if not origin_interior(pts):
        return FanClass.NEITHER
    if all(is_vertex(pts, j) for j in range(fan.n)) and _cone_supporting(fan, strict=True):
        return FanClass.FANO
    if all(on_boundary(pts, j) for j in range(fan.n)) and _cone_supporting(fan, strict=False):
        return FanClass.NEF_FANO
    return FanClass.NEITHER


def require_fano(fan: StackyFan) -> None:
    if classify(fan) is not FanClass.FANO:
        raise NotFano(f"fan {fan.name or ''} is not Fano".replace("  ", " "))


# ---------------------------------------------------------------------------
# Builders

def face_fan_from_points(points: Sequence[Sequence[int]], name: str = "") -> StackyFan:
    """Face fan of conv(points); every point must be a vertex."""
    pts = [tuple(int(x) for x in p) for p in points]
    if not pts:
        raise InvalidFan("no points")
    d = len(pts[0])
    if any(len(p) != d for p in pts):
        raise InvalidFan("points of different lengths")
    if len(set(pts)) != len(pts):
        raise InvalidFan("repeated points")
    if not origin_interior(pts):
        raise OriginNotInterior("the origin is not an interior point of the hull")
    n = len(pts)
    if d == 1:
        if n != 2:
            raise NotSimplicial("in rank 1 exactly two points are vertices")
        cones = [(0,), (1,)]
    elif d == 2:
        hull = convex_hull_2d(pts)
        if len(hull) != n:
            raise NotSimplicial("some point is not a vertex of the convex hull")
        index = {tuple(Fraction(x) for x in p): i for i, p in enumerate(pts)}
        order = [index[h] for h in hull]
        cones = sorted(tuple(sorted((order[k], order[(k + 1) % n]))) for k in range(n))
    else:
        cones = []
        for sub in itertools.combinations(range(n), d):
            A = [list(pts[i]) for i in sub]
            u = solve_rational(A, [1] * d)
            if u is None:
                continue
            vals = [dot(u, p) for p in pts]
            if any(v > 1 for v in vals):
                continue
            if sum(1 for v in vals if v == 1) > d:
                raise NotSimplicial(f"the facet through {list(sub)} has more than {d} vertices")
            cones.append(sub)
        for j in range(n):
            if not any(j in c for c in cones):
                raise NotSimplicial(f"point {j} is not a vertex of the convex hull")
    return StackyFan(d, tuple(pts), tuple(cones), trusted_complete=True, name=name)


def is_clockwise(fan: StackyFan) -> bool:
    """For d = 2: rays listed clockwise around the origin, winding once."""
    if fan.d != 2:
        return False
    return clockwise_order(fan.rays) == list(range(fan.n))


def clockwise_order(rays: Sequence[Sequence[int]]) -> list[int]:
    """Indices of planar rays sorted clockwise, starting from ray 0."""
    def quadrant_key(i):
        x, y = rays[i]
        # half-plane class then cross sign for angle ordering (counterclockwise from +x)
        upper = y > 0 or (y == 0 and x > 0)
        return 0 if upper else 1

    def cmp(i, j):
        qi, qj = quadrant_key(i), quadrant_key(j)
        if qi != qj:
            return qi - qj
        c = cross2((0, 0), rays[i], rays[j])
        return -1 if c > 0 else (1 if c < 0 else 0)
    ccw = sorted(range(len(rays)), key=functools.cmp_to_key(cmp))
    cw = ccw[::-1]
    k = cw.index(0)
    return cw[k:] + cw[:k]


def ensure_clockwise(fan: StackyFan) -> tuple[StackyFan, list[int]]:
    """
    Return a fan with rays in clockwise order plus the permutation used
    (``new_rays[k] = old_rays[perm[k]]``).  Warns when a re-sort happens.
    """
    if fan.d != 2:
        raise ValueError("clockwise order only makes sense for d = 2")
    if is_clockwise(fan):
        return fan, list(range(fan.n))
    perm = clockwise_order(fan.rays)
    warnings.warn(
        f"rays of fan {fan.name!r} were not listed clockwise; re-sorted as {perm}",
        stacklevel=2,
    )
    inv = {old: new for new, old in enumerate(perm)}
    rays = tuple(fan.rays[i] for i in perm)
    cones = tuple(tuple(sorted(inv[i] for i in c)) for c in fan.max_cones)
    return StackyFan(2, rays, cones, fan.trusted_complete, fan.name), perm


# ---------------------------------------------------------------------------
# Complexes

def supp_complex(fan: StackyFan, r: Sequence[int]) -> SimplicialComplexOnRays:
    if len(r) != fan.n:
        raise ValueError(f"vector of length {len(r)} for a fan with {fan.n} rays")
    return _supp(fan, tuple(x >= 0 for x in r))


@functools.lru_cache(maxsize=65536)
def _supp(fan: StackyFan, mask: tuple[bool, ...]) -> SimplicialComplexOnRays:
    faces = {()}
    for c in fan.max_cones:
        S = [i for i in c if mask[i]]
        for k in range(1, len(S) + 1):
            faces.update(itertools.combinations(S, k))
    return SimplicialComplexOnRays(fan.n, frozenset(faces))


def c_complex(fan: StackyFan, I: Iterable[int]) -> SimplicialComplexOnRays:
    I = set(I)
    return _supp(fan, tuple(i in I for i in range(fan.n)))


def minimal_nonfaces(fan: StackyFan) -> list[Face]:
    out = []
    faces = fan.faces
    for k in range(2, fan.d + 2):
        for R in itertools.combinations(range(fan.n), k):
            if R in faces:
                continue
            if all(R[:j] + R[j + 1:] in faces for j in range(k)):
                out.append(R)
    return out


def normalized_volume(fan: StackyFan) -> Fraction:
    if classify(fan) is FanClass.NEITHER:
        raise NotFano("normalized volume needs a Fano or nef-Fano fan")
    return Fraction(sum(abs(det([list(fan.rays[i]) for i in c])) for c in fan.max_cones))


def cyclic_arcs(I: Iterable[int], n: int) -> list[tuple[int, int]]:
    """
    Maximal cyclic intervals ``[i, j)`` of ``I`` in ``Z/n``; the full set is
    ``[(0, n)]`` and the empty set ``[]``.
    """
    S = set(I)
    if not S:
        return []
    if len(S) == n:
        return [(0, n)]
    arcs = []
    for i in sorted(S):
        if (i - 1) % n in S:
            continue
        j = i
        while j % n in S:
            j += 1
        arcs.append((i, j % n))
    return arcs


def arc(i: int, j: int, n: int) -> list[int]:
    """Indices of the cyclic interval ``[i, j)``."""
    out = []
    k = i % n
    while k != j % n:
        out.append(k)
        k = (k + 1) % n
    return out
