"""
Window polytopes whose shifted lattice content gives exceptional collections.

* rank 1: a segment of length ``-deg K`` on the degree axis;
* rank 2 (any lattice rank): the parallelogram ``|f| <= 1/2``,
  ``|alpha| <= (1/2) sum_{alpha_i > 0} alpha_i``;
* lattice rank 2 (any Picard rank): ``|f| <= 1/2`` together with the
  condition that the image in ``Pic_R / R K`` lies in half of the zonotope
  ``P^ = sum [-t^_i, t^_i]``.

Everything in the planar case assumes rays listed clockwise; use
:func:`torex.fan.ensure_clockwise` first.
"""
from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Sequence

from .cohomology import proper_non_acyclic
from .errors import (
    CertificateFailure, GenericityFailure, KindMismatch, NonGenericShift, NotDimTwo,
    PhiNotConvex,
)
from .exactlin import det, dot
from .fan import arc, c_complex, cyclic_arcs, is_clockwise
from .geometry import (
    Facet, HPolyhedron, Zonotope, convex_cyclic_check, fm_feasible, lattice_points,
    lp_maximize, minkowski_scale, zonotope_facets,
)
from .picard import (
    PicardGroup, PicClass, PicHat, alpha_covector, alpha_functional, f_covector,
    f_functional, pic_hat,
)

HALF = Fraction(1, 2)


def _add(a, b):
    return tuple(x + y for x, y in zip(a, b))


def _sub(a, b):
    return tuple(x - y for x, y in zip(a, b))


def _mul(s, a):
    return tuple(s * x for x in a)


def _vsum(vectors, dim):
    out = (Fraction(0),) * dim
    for v in vectors:
        out = _add(out, v)
    return out


def _require_planar(pic: PicardGroup):
    if pic.fan.d != 2:
        raise NotDimTwo(f"lattice rank is {pic.fan.d}, not 2")
    if pic.k < 2:
        raise NotDimTwo("the planar window needs at least four rays")
    if not is_clockwise(pic.fan):
        raise ValueError("rays must be listed clockwise; call ensure_clockwise first")


# ---------------------------------------------------------------------------
# Combinatorics of crossing diagonals

def crossing_diagonal_facets(n: int) -> list[tuple[tuple[int, int], tuple[int, int]]]:
    """Ordered pairs ``(plus, minus)`` of crossing diagonals of a cyclic ``n``-gon."""
    out = []
    for a, b, c, e in itertools.combinations(range(n), 4):
        out.append(((a, c), (b, e)))
        out.append(((b, e), (a, c)))
    return sorted(out)


def label_to_two_arc(label, n: int) -> tuple[int, ...]:
    """``(plus, minus)`` -> the set ``[i1, j1) u [i2, j2)`` with minus = {i}, plus = {j}."""
    plus, minus = label
    i1, i2 = sorted(minus)
    j1 = next(j for j in sorted(plus) if i1 < j < i2)
    j2 = next(j for j in plus if j != j1)
    return tuple(sorted(arc(i1, j1, n) + arc(i2, j2, n)))


def two_arc_to_label(I: Sequence[int], n: int):
    arcs = cyclic_arcs(I, n)
    if len(arcs) != 2:
        raise ValueError(f"{sorted(I)} is not a union of two cyclic intervals")
    (i1, j1), (i2, j2) = arcs
    return tuple(sorted((j1 % n, j2 % n))), tuple(sorted((i1, i2)))


# ---------------------------------------------------------------------------
# Q and P^

def build_Q(pic: PicardGroup, hat: Optional[PicHat] = None) -> Zonotope:
    """``sum [-E^_i / 2, E^_i / 2]`` in the quotient by ``K``."""
    _require_planar(pic)
    hat = hat or pic_hat(pic)
    Eh = [hat(e) for e in pic.E_real]
    return Zonotope(hat.dim, (Fraction(0),) * hat.dim, tuple(_mul(HALF, e) for e in Eh))


def q_vertex_subsets(pic: PicardGroup, hat: Optional[PicHat] = None) -> list[tuple[int, ...]]:
    """Subsets ``I`` whose point ``E^_I`` is a vertex of ``Q`` (strict separation LP)."""
    hat = hat or pic_hat(pic)
    Eh = [hat(e) for e in pic.E_real]
    m = hat.dim
    out = []
    for mask in range(1 << pic.n):
        I = [i for i in range(pic.n) if mask >> i & 1]
        S = set(I)
        rows = []
        for i, e in enumerate(Eh):
            if i in S:
                rows.append((tuple(-x for x in e), Fraction(-1), False))
            else:
                rows.append((e, Fraction(-1), False))
        if fm_feasible(rows, m):
            out.append(tuple(I))
    return out


@dataclass(frozen=True)
class HatT:
    t_vectors: tuple[tuple[int, int], ...]
    phi: tuple[Fraction, ...]
    that: tuple[tuple[Fraction, ...], ...]
    E_hat: tuple[tuple[Fraction, ...], ...]
    hat: PicHat

    def E_arc(self, i: int, j: int) -> tuple[Fraction, ...]:
        """``E^_[i, j) = t^_j - t^_i``."""
        n = len(self.that)
        return _sub(self.that[j % n], self.that[i % n])

    def E_set(self, I) -> tuple[Fraction, ...]:
        return _vsum((self.E_hat[i] for i in I), self.hat.dim)


def default_phi(pic: PicardGroup) -> tuple[Fraction, ...]:
    rays = pic.fan.rays
    n = pic.n
    raw = [Fraction(det([list(rays[i]), list(rays[i - 1])])) for i in range(n)]
    s = sum(raw)
    return tuple(x / s for x in raw)


def build_P_hat(pic: PicardGroup, phi: Optional[Sequence] = None,
                hat: Optional[PicHat] = None) -> tuple[HatT, Zonotope]:
    _require_planar(pic)
    hat = hat or pic_hat(pic)
    n = pic.n
    rays = pic.fan.rays
    t = tuple((rays[i][0] - rays[i - 1][0], rays[i][1] - rays[i - 1][1]) for i in range(n))
    if phi is None:
        phi = default_phi(pic)
    else:
        phi = tuple(Fraction(x) for x in phi)
        if len(phi) != n:
            raise PhiNotConvex(f"phi has {len(phi)} entries for {n} rays")
        s = sum(phi)
        if s <= 0:
            raise PhiNotConvex("phi must have positive sum")
        phi = tuple(x / s for x in phi)
    if any(x <= 0 for x in phi):
        raise PhiNotConvex("phi must be positive")
    scaled = [(Fraction(a) / f, Fraction(b) / f) for (a, b), f in zip(t, phi)]
    if not convex_cyclic_check(scaled):
        raise PhiNotConvex("the points t_i / phi_i are not in convex clockwise position")
    Eh = tuple(hat(e) for e in pic.E_real)
    m = hat.dim
    partial = [(Fraction(0),) * m]
    for i in range(n - 1):
        partial.append(_add(partial[-1], Eh[i]))
    t0 = _mul(-1, _vsum((_mul(phi[i], partial[i]) for i in range(n)), m))
    that = tuple(_add(t0, s) for s in partial)
    H = HatT(t, phi, that, Eh, hat)
    Z = Zonotope(m, (Fraction(0),) * m, that)
    return H, Z


def facet_label(normal: Sequence, vectors: Sequence[Sequence]) -> tuple[tuple[int, ...], tuple[int, ...]]:
    """Sign pattern ``({i : u.g_i > 0}, {i : u.g_i < 0})`` of a facet normal."""
    plus = tuple(i for i, g in enumerate(vectors) if dot(normal, g) > 0)
    minus = tuple(i for i, g in enumerate(vectors) if dot(normal, g) < 0)
    return plus, minus


def labeled_facets(Z: Zonotope, vectors: Sequence[Sequence]) -> list[Facet]:
    return [Facet(f.normal, f.offset, facet_label(f.normal, vectors)) for f in zonotope_facets(Z)]


# ---------------------------------------------------------------------------
# Certificates

def midpoint_certificate(pic: PicardGroup, Q: Zonotope, hatT: HatT, P_hat: Zonotope) -> dict:
    """
    Exact checks relating ``Q`` and ``P^``; raises CertificateFailure.

    (a) every vertex ``E^_I`` of ``Q`` is the midpoint of the face of ``P^``
        labeled by the arcs of ``I``;
    (b) facet midpoints of ``P^`` biject with subsets whose ``C_I`` has two
        components;
    (c) ``Q`` lies in ``P^``;
    (d) no forbidden cone image meets the interior of ``P^``.
    """
    n = pic.n
    that = hatT.that
    m = hatT.hat.dim
    facets = zonotope_facets(P_hat)
    report = {"vertices_checked": 0, "facets_checked": 0, "cones_checked": 0}

    # (a)
    verts = q_vertex_subsets(pic, hatT.hat)
    for I in verts:
        arcs = cyclic_arcs(I, n)
        if len(arcs) < 2 or c_complex(pic.fan, I).components() != len(arcs):
            raise CertificateFailure("a vertex of Q does not come from a disconnected C_I", face=list(I))
        plus = [j % n for _, j in arcs]
        minus = [i for i, _ in arcs]
        mid = _sub(_vsum((that[j] for j in plus), m), _vsum((that[i] for i in minus), m))
        if mid != hatT.E_set(I):
            raise CertificateFailure("vertex of Q differs from the face midpoint", face=list(I))
        rows = []
        eqs = []
        for i in range(n):
            if i in plus:
                rows.append((tuple(-x for x in that[i]), Fraction(-1), False))
            elif i in minus:
                rows.append((that[i], Fraction(-1), False))
            else:
                eqs.append((that[i], Fraction(0)))
        if not fm_feasible(rows, m, eqs):
            raise CertificateFailure("no face of P^ has the expected sign pattern", face=list(I))
        report["vertices_checked"] += 1

    # (b)
    two_comp = set()
    for mask in range(1, (1 << n) - 1):
        I = tuple(i for i in range(n) if mask >> i & 1)
        if c_complex(pic.fan, I).components() == 2:
            two_comp.add(I)
    from_facets = set()
    vert_set = set(verts)
    for f in facets:
        plus, minus = facet_label(f.normal, that)
        if len(plus) != 2 or len(minus) != 2:
            raise CertificateFailure("facet of P^ without a crossing-diagonal label", face=[plus, minus])
        try:
            I = label_to_two_arc((plus, minus), n)
        except StopIteration:
            raise CertificateFailure("facet label diagonals do not cross", face=[plus, minus])
        mid = _sub(_vsum((that[j] for j in plus), m), _vsum((that[i] for i in minus), m))
        if mid != hatT.E_set(I) or I not in vert_set:
            raise CertificateFailure("facet midpoint is not the expected vertex of Q", face=list(I))
        if dot(f.normal, mid) != f.offset:
            raise CertificateFailure("facet midpoint is off the facet", face=list(I))
        from_facets.add(I)
        report["facets_checked"] += 1
    if from_facets != two_comp:
        missing = sorted(two_comp ^ from_facets)
        raise CertificateFailure("facet midpoints and two-component subsets differ", face=missing)

    # (c)
    for f in facets:
        if Q.support(f.normal) > f.offset:
            raise CertificateFailure("Q is not contained in P^", face=list(f.normal))

    # (d)
    for I in proper_non_acyclic(pic.fan):
        if not I:
            continue  # the image of the cone for the empty set is handled by f
        S = set(I)
        apex = hatT.E_set(I)
        ok = False
        for f in facets:
            if dot(f.normal, apex) < f.offset:
                continue
            if all((dot(f.normal, e) >= 0) if i in S else (dot(f.normal, e) <= 0)
                   for i, e in enumerate(hatT.E_hat)):
                ok = True
                break
        if not ok and _cone_meets_open_zonotope(hatT, I, facets):
            raise CertificateFailure("a forbidden cone image meets the interior of P^", face=list(I))
        report["cones_checked"] += 1
    return report


def _cone_meets_open_zonotope(hatT: HatT, I, facets) -> bool:
    n = len(hatT.E_hat)
    S = set(I)
    apex = hatT.E_set(I)
    gens = [e if i in S else _mul(-1, e) for i, e in enumerate(hatT.E_hat)]
    rows = [(tuple(-int(j == i) for j in range(n)), Fraction(0), False) for i in range(n)]
    for f in facets:
        coeffs = tuple(dot(f.normal, g) for g in gens)
        rows.append((coeffs, f.offset - dot(f.normal, apex), True))
    return fm_feasible(rows, n)


def moving_lemma_check(hatT: HatT, P_hat: Zonotope, I: Sequence[int]) -> tuple[bool, dict]:
    """
    Check the four interior shifts and the opposite-facet identity for the
    facet of ``P^`` whose midpoint is ``E^_I``.  Returns ``(ok, witness)``.
    """
    n = len(hatT.that)
    m = hatT.hat.dim
    try:
        plus, minus = two_arc_to_label(I, n)
    except ValueError as exc:
        return False, {"reason": str(exc)}
    facets = zonotope_facets(P_hat)
    that = hatT.that
    mid = _sub(_vsum((that[j] for j in plus), m), _vsum((that[i] for i in minus), m))
    facet = next((f for f in facets if facet_label(f.normal, that) == (plus, minus)), None)
    if facet is None:
        return False, {"reason": "no facet with this label"}
    (i1, j1), (i2, j2) = cyclic_arcs(I, n)
    others = [k for k in range(n) if k not in (i1, i2, j1 % n, j2 % n)]
    corners = []
    for signs in itertools.product((1, -1), repeat=len(others)):
        corners.append(_add(mid, _vsum((_mul(s, that[k]) for s, k in zip(signs, others)), m)))
    contracted = [_add(mid, _mul(Fraction(99, 100), _sub(c, mid))) for c in corners]
    shifts = {
        "-2E[i1,j1)": _mul(-2, hatT.E_arc(i1, j1)),
        "-2E[i2,j2)": _mul(-2, hatT.E_arc(i2, j2)),
        "2E[j1,i2)": _mul(2, hatT.E_arc(j1, i2)),
        "2E[j2,i1)": _mul(2, hatT.E_arc(j2, i1)),
    }
    H = [(tuple(Fraction(x) for x in f.normal), f.offset) for f in facets]

    def strictly_inside(x):
        return all(dot(a, x) < c for a, c in H)

    for name, s in shifts.items():
        for pt in [mid] + contracted:
            if not strictly_inside(_add(pt, s)):
                return False, {"reason": "shift leaves the interior", "shift": name,
                               "point": [str(x) for x in _add(pt, s)]}
    # shift by -2 E^_I sends the facet to the opposite one
    EI = hatT.E_set(I)
    if mid != EI or _sub(mid, _mul(2, EI)) != _mul(-1, mid):
        return False, {"reason": "midpoint differs from E^_I"}
    neg = tuple(-x for x in facet.normal)
    if not any(f.normal == neg and f.offset == facet.offset for f in facets):
        return False, {"reason": "opposite facet missing"}
    return True, {"facet": [list(plus), list(minus)], "points_checked": 1 + len(contracted)}


# ---------------------------------------------------------------------------
# Windows

@dataclass(frozen=True)
class WindowP:
    kind: str
    polytope: HPolyhedron
    zonotope: Zonotope
    f: tuple[Fraction, ...]
    hat_part: dict = field(default_factory=dict, compare=False)

    @property
    def dim(self) -> int:
        return self.polytope.dim

    def scaled(self, lam) -> "WindowP":
        return WindowP(self.kind, self.polytope.scale(lam),
                       minkowski_scale(self.zonotope, lam), self.f, self.hat_part)

    def region(self, p: Sequence) -> HPolyhedron:
        """The closed shifted window ``p + P`` with its bounding box."""
        Z = minkowski_scale(self.zonotope, 1)
        Zs = Zonotope(Z.dim, _add(Z.center, tuple(Fraction(x) for x in p)), Z.generators)
        return HPolyhedron(self.dim, self.polytope.shift(p).ineqs, box=Zs.bounding_box())


def _parallelogram_generators(f, a, fb, ab) -> tuple:
    """Half-edge vectors of ``|f.x| <= fb, |a.x| <= ab`` in the plane."""
    from .exactlin import solve_rational
    v1 = solve_rational([list(f), list(a)], [fb, ab])
    v2 = solve_rational([list(f), list(a)], [fb, -ab])
    return (_mul(HALF, _add(v1, v2)), _mul(HALF, _sub(v1, v2)))


def build_window(pic: PicardGroup, kind: str) -> WindowP:
    k = pic.k
    if kind == "rank1":
        if k != 1:
            raise KindMismatch(f"rank1 window on Picard rank {k}")
        half = -pic.kappa[0] / 2
        f = f_covector(pic)
        P = HPolyhedron(1, (((Fraction(1),), half), ((Fraction(-1),), half)))
        Z = Zonotope(1, (Fraction(0),), ((half,),))
        return WindowP("rank1", P, Z, f, {"deg_K": pic.kappa[0]})
    if kind == "rank2":
        if k != 2:
            raise KindMismatch(f"rank2 window on Picard rank {k}")
        f = f_covector(pic)
        a = alpha_covector(pic)
        alpha = alpha_functional(pic.fan)
        ab = HALF * sum(x for x in alpha if x > 0)
        ineqs = ((f, HALF), (_mul(-1, f), HALF), (a, ab), (_mul(-1, a), ab))
        gens = _parallelogram_generators(f, a, HALF, ab)
        Z = Zonotope(2, (Fraction(0),) * 2, gens)
        P = HPolyhedron(2, ineqs, box=Z.bounding_box())
        return WindowP("rank2", P, Z, f, {"alpha": list(alpha), "alpha_bound": ab})
    if kind == "delpezzo":
        if pic.fan.d != 2 or k < 2:
            raise KindMismatch("the planar window needs lattice rank 2 and Picard rank >= 2")
        hat = pic_hat(pic)
        hatT, P_hat = build_P_hat(pic, hat=hat)
        f = hat.f
        ineqs = [(f, HALF), (_mul(-1, f), HALF)]
        for fc in zonotope_facets(P_hat):
            a = tuple(sum(Fraction(fc.normal[r]) * hat.H[r][c] for r in range(hat.dim))
                      for c in range(k))
            ineqs.append((a, fc.offset / 2))
        gens = [_mul(HALF, hat.section(t)) for t in hatT.that] + [_mul(HALF, pic.kappa)]
        Z = Zonotope(k, (Fraction(0),) * k, tuple(gens))
        P = HPolyhedron(k, tuple(ineqs), box=Z.bounding_box())
        return WindowP("delpezzo", P, Z, f, {"hatT": hatT, "P_hat": P_hat})
    raise KindMismatch(f"unknown window kind {kind!r}")


def window_kind(pic: PicardGroup) -> str:
    if pic.k <= 1:
        return "rank1"
    if pic.k == 2:
        return "rank2"
    if pic.fan.d == 2:
        return "delpezzo"
    raise KindMismatch("no window construction for Picard rank >= 3 in lattice rank >= 3")


# ---------------------------------------------------------------------------
# Generic shifts and enumeration

def boundary_points(window: WindowP, p: Sequence) -> list[tuple[int, ...]]:
    region = window.region(p)
    closed = lattice_points(region)
    interior = set(lattice_points(region, strict=True))
    return [x for x in closed if x not in interior]


@dataclass(frozen=True)
class ShiftCertificate:
    p: tuple[Fraction, ...]
    seed: int
    attempts: int
    interior_count: int
    boundary_hits: int = 0

    def to_dict(self) -> dict:
        return {"p": [str(x) for x in self.p], "seed": self.seed, "attempts": self.attempts,
                "interior_count": self.interior_count, "boundary_hits": self.boundary_hits}


def generic_shift(pic: PicardGroup, window: WindowP, seed: int = 0,
                  retries: int = 64, extra_windows: Sequence[WindowP] = ()) -> ShiftCertificate:
    """
    A small rational ``p`` such that no lattice point lies on the boundary of
    ``p + window`` (nor of ``p + W`` for every ``W`` in ``extra_windows``).
    """
    rng = random.Random(seed)
    k = window.dim
    candidates = []
    if window.kind == "rank1":
        candidates.append(((pic.kappa[0] + 1) / 2,))
    for _ in range(retries):
        candidates.append(tuple(Fraction(rng.randint(-400, 400), 1009) for _ in range(k)))
    for attempt, p in enumerate(candidates[:retries], start=1):
        if boundary_points(window, p):
            continue
        if any(boundary_points(w, p) for w in extra_windows):
            continue
        count = len(lattice_points(window.region(p), strict=True))
        return ShiftCertificate(p, seed, attempt, count)
    raise GenericityFailure(f"no generic shift found in {retries} attempts")


def classes_in(pic: PicardGroup, p: Sequence, window: WindowP) -> list[PicClass]:
    region = window.region(p)
    closed = lattice_points(region)
    interior = lattice_points(region, strict=True)
    if len(closed) != len(interior):
        hits = sorted(set(closed) - set(interior))
        raise NonGenericShift(f"lattice points on the window boundary: {hits[:5]}")
    return sorted(pic.make_class(x, t) for x in closed for t in pic.torsion_elements())


def forbidden_cone_meets_interior(pic: PicardGroup, I: Sequence[int], P: HPolyhedron) -> bool:
    """Does ``q_I + cone(E_i (i in I), -E_i (else))`` meet the interior of ``P``?

    Solved as an LP in ``(r, t)``: maximize the slack ``t <= 1`` left in the
    window rows; the interior is met iff the optimum is positive.
    """
    n = pic.n
    S = set(I)
    A, b = [], []
    for i in range(n):
        row = [0] * (n + 1)
        if i in S:
            row[i] = -1  # r_i >= 0
            A.append(row)
            b.append(0)
        else:
            row[i] = 1  # r_i <= -1
            A.append(row)
            b.append(-1)
    for a, c in P.ineqs:
        A.append([dot(a, pic.E_real[i]) for i in range(n)] + [1])
        b.append(c)
    A.append([0] * n + [1])
    b.append(1)
    status, value, _ = lp_maximize([0] * n + [1], A, b)
    return status == "optimal" and value > 0
