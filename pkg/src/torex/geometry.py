"""
Exact rational convex geometry.

Polyhedra are stored in inequality form ``a . x <= c`` with ``Fraction``
data.  Feasibility goes through Fourier-Motzkin elimination; a small exact
simplex is available for optimization (bounding boxes, max-min problems).
"""
from __future__ import annotations

import functools
import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from math import ceil, floor, gcd, lcm
from typing import Iterable, Optional, Sequence

from .errors import DegenerateZonotope, UnboundedPolyhedron
from .exactlin import dot, nullspace, primitive, rational_rank

Vec = tuple


def _fvec(v: Iterable) -> tuple[Fraction, ...]:
    return tuple(Fraction(x) for x in v)


def _lcm(a: int, b: int) -> int:
    return a * b // gcd(a, b)


def _integer_row(a: Sequence[Fraction], c: Fraction) -> tuple[tuple[int, ...], Fraction]:
    """Scale ``a.x <= c`` by a positive factor so ``a`` is a primitive integer vector."""
    den = 1
    for x in a:
        den = _lcm(den, Fraction(x).denominator)
    ints = [int(Fraction(x) * den) for x in a]
    g = 0
    for x in ints:
        g = gcd(g, x)
    if g == 0:
        return tuple(ints), Fraction(c) * den
    return tuple(x // g for x in ints), Fraction(c) * den / g


# ---------------------------------------------------------------------------
# H-polyhedra

@dataclass(frozen=True)
class HPolyhedron:
    """``{x : a . x <= c for every (a, c) in ineqs}`` in ``Q^dim``.

    ``box`` optionally carries a known integer bounding box, used to skip the
    LP stage of lattice point enumeration.
    """
    dim: int
    ineqs: tuple[tuple[tuple[Fraction, ...], Fraction], ...]
    box: Optional[tuple[tuple[int, int], ...]] = field(default=None, compare=False)

    def __post_init__(self):
        clean = []
        for a, c in self.ineqs:
            a = _fvec(a)
            if len(a) != self.dim:
                raise ValueError(f"inequality of length {len(a)} in dimension {self.dim}")
            if not any(a):
                raise ValueError("inequality with zero normal")
            clean.append((a, Fraction(c)))
        object.__setattr__(self, "ineqs", tuple(clean))

    def contains(self, x: Sequence, strict: bool = False) -> bool:
        if strict:
            return all(dot(a, x) < c for a, c in self.ineqs)
        return all(dot(a, x) <= c for a, c in self.ineqs)

    def on_boundary(self, x: Sequence) -> bool:
        return self.contains(x) and any(dot(a, x) == c for a, c in self.ineqs)

    def shift(self, p: Sequence) -> "HPolyhedron":
        p = _fvec(p)
        box = None
        if self.box is not None and all(x.denominator == 1 for x in p):
            box = tuple((lo + int(q), hi + int(q)) for (lo, hi), q in zip(self.box, p))
        elif self.box is not None:
            box = tuple((floor(lo + q), ceil(hi + q)) for (lo, hi), q in zip(self.box, p))
        return HPolyhedron(self.dim, tuple((a, c + dot(a, p)) for a, c in self.ineqs), box)

    def scale(self, lam) -> "HPolyhedron":
        lam = Fraction(lam)
        if lam <= 0:
            raise ValueError("scale factor must be positive")
        box = None
        if self.box is not None:
            box = tuple((floor(lo * lam), ceil(hi * lam)) for lo, hi in self.box)
        return HPolyhedron(self.dim, tuple((a, c * lam) for a, c in self.ineqs), box)

    def intersect(self, other: "HPolyhedron") -> "HPolyhedron":
        if other.dim != self.dim:
            raise ValueError("dimension mismatch")
        box = self.box or other.box
        if self.box and other.box:
            box = tuple((max(a, c), min(b, d)) for (a, b), (c, d) in zip(self.box, other.box))
        return HPolyhedron(self.dim, self.ineqs + other.ineqs, box)

    def inflate(self, eps) -> "HPolyhedron":
        """Relax every inequality by ``eps`` times the 1-norm of its normal."""
        eps = Fraction(eps)
        box = None
        if self.box is not None:
            box = tuple((lo - 1, hi + 1) for lo, hi in self.box)
        return HPolyhedron(
            self.dim,
            tuple((a, c + eps * sum(abs(x) for x in a)) for a, c in self.ineqs),
            box,
        )


def contains(P: HPolyhedron, x: Sequence, strict: bool = False) -> bool:
    return P.contains(x, strict)


def shift(P, p):
    return P.shift(p)


# ---------------------------------------------------------------------------
# Fourier-Motzkin

Row = tuple  # (coeffs: tuple[int], rhs: Fraction, strict: bool)


def _normalize_rows(rows: Iterable[Row]) -> Optional[dict]:
    """Deduplicate rows by normal, keeping the tightest; None if a constant row fails."""
    best: dict = {}
    for a, c, s in rows:
        a, c = _integer_row(a, c)
        if not any(a):
            if c < 0 or (s and c == 0):
                return None
            continue
        old = best.get(a)
        if old is None or c < old[0] or (c == old[0] and s and not old[1]):
            best[a] = (c, s)
    return best


def _eliminate(best: dict, j: int) -> Optional[dict]:
    pos, neg, zero = [], [], []
    for a, (c, s) in best.items():
        if a[j] > 0:
            pos.append((a, c, s))
        elif a[j] < 0:
            neg.append((a, c, s))
        else:
            zero.append((a, c, s))
    new = list(zero)
    for ap, cp, sp in pos:
        for an, cn, sn in neg:
            lp, ln = -an[j], ap[j]
            a = tuple(lp * x + ln * y for x, y in zip(ap, an))
            new.append((a, lp * cp + ln * cn, sp or sn))
    return _normalize_rows(new)


def _substitute_equalities(rows, eqs, dim):
    """
    Use rational equalities to eliminate variables.

    Returns (rows over the remaining free variables, count of them) or None if
    the equality system is inconsistent.  The returned rows are expressed in
    the coordinates of the kernel parametrization ``x = x0 + B y``.
    """
    if not eqs:
        return [(tuple(Fraction(x) for x in a), Fraction(c), s) for a, c, s in rows], dim
    from .exactlin import solve_rational
    A = [list(a) for a, _ in eqs]
    b = [c for _, c in eqs]
    x0 = solve_rational(A, b)
    if x0 is None:
        return None
    B = nullspace(A)
    out = []
    for a, c, s in rows:
        out.append((tuple(dot(a, v) for v in B), Fraction(c) - dot(a, x0), s))
    return out, len(B)


def fm_feasible(rows: Sequence[Row], dim: int, eqs: Sequence = ()) -> bool:
    """Exact feasibility of ``{a.x (<|<=) c} and {e.x = d}`` by Fourier-Motzkin."""
    sub = _substitute_equalities(rows, eqs, dim)
    if sub is None:
        return False
    rows, m = sub
    best = _normalize_rows(rows)
    if best is None:
        return False
    remaining = set(range(m))
    while remaining and best:
        # eliminate the variable producing the fewest new rows
        def cost(j):
            p = sum(1 for a in best if a[j] > 0)
            q = sum(1 for a in best if a[j] < 0)
            return p * q - p - q
        j = min(sorted(remaining), key=cost)
        remaining.discard(j)
        best = _eliminate(best, j)
        if best is None:
            return False
    return True


def lp_feasible(P: HPolyhedron, strict_mask: Optional[Sequence[bool]] = None,
                equalities: Sequence = ()) -> bool:
    """Exact feasibility of ``P`` where ``strict_mask[i]`` makes row ``i`` strict."""
    if strict_mask is None:
        strict_mask = [False] * len(P.ineqs)
    if len(strict_mask) != len(P.ineqs):
        raise ValueError("strict mask length differs from the inequality count")
    rows = [(a, c, bool(s)) for (a, c), s in zip(P.ineqs, strict_mask)]
    return fm_feasible(rows, P.dim, equalities)


def fm_project_bounds(P: HPolyhedron, keep: int) -> list[tuple[tuple[int, ...], Fraction, bool]]:
    """Rows of the projection of ``P`` onto the first ``keep`` coordinates."""
    best = _normalize_rows((a, c, False) for a, c in P.ineqs)
    if best is None:
        return [((0,) * P.dim, Fraction(-1), False)]
    for j in range(P.dim - 1, keep - 1, -1):
        best = _eliminate(best, j)
        if best is None:
            return [((0,) * P.dim, Fraction(-1), False)]
    return [(a, c, s) for a, (c, s) in sorted(best.items())]


# ---------------------------------------------------------------------------
# Exact simplex (Bland's rule)

def lp_maximize(c: Sequence, A: Sequence[Sequence], b: Sequence,
                A_eq: Sequence[Sequence] = (), b_eq: Sequence = ()):
    """
    Maximize ``c.x`` over ``{A x <= b, A_eq x = b_eq}`` with free ``x``.

    Returns ``(status, value, x)`` with status one of ``"optimal"``,
    ``"infeasible"``, ``"unbounded"``.
    """
    n = len(c)
    m1, m2 = len(A), len(A_eq)
    # columns: x+ (n), x- (n), slack (m1), artificial (m1 + m2)
    ncols = 2 * n + m1 + m1 + m2
    T = []
    basis = []
    art0 = 2 * n + m1
    for i in range(m1):
        row = [Fraction(0)] * (ncols + 1)
        for j in range(n):
            row[j] = Fraction(A[i][j])
            row[n + j] = -Fraction(A[i][j])
        row[2 * n + i] = Fraction(1)
        rhs = Fraction(b[i])
        if rhs < 0:
            row = [-x for x in row]
            rhs = -rhs
        row[art0 + i] = Fraction(1)
        row[-1] = rhs
        T.append(row)
        basis.append(art0 + i)
    for i in range(m2):
        row = [Fraction(0)] * (ncols + 1)
        for j in range(n):
            row[j] = Fraction(A_eq[i][j])
            row[n + j] = -Fraction(A_eq[i][j])
        rhs = Fraction(b_eq[i])
        if rhs < 0:
            row = [-x for x in row]
            rhs = -rhs
        row[art0 + m1 + i] = Fraction(1)
        row[-1] = rhs
        T.append(row)
        basis.append(art0 + m1 + i)

    def pivot(r, col):
        pv = T[r][col]
        T[r] = [x / pv for x in T[r]]
        for i in range(len(T)):
            if i != r and T[i][col] != 0:
                f = T[i][col]
                Ti, Tr = T[i], T[r]
                T[i] = [x - f * y for x, y in zip(Ti, Tr)]
        basis[r] = col

    def run(obj, allowed):
        # obj: coefficient list to maximize over columns
        while True:
            # reduced costs
            red = []
            for col in range(ncols):
                if not allowed[col] or col in basis:
                    continue
                rc = obj[col] - sum(obj[basis[i]] * T[i][col] for i in range(len(T)))
                if rc > 0:
                    red.append(col)
                    break
            if not red:
                return "optimal"
            col = red[0]
            best_r = None
            for i in range(len(T)):
                if T[i][col] > 0:
                    ratio = T[i][-1] / T[i][col]
                    if best_r is None or ratio < best_r[0] or (ratio == best_r[0] and basis[i] < basis[best_r[1]]):
                        best_r = (ratio, i)
            if best_r is None:
                return "unbounded"
            pivot(best_r[1], col)

    phase1 = [Fraction(0)] * ncols
    for j in range(art0, ncols):
        phase1[j] = Fraction(-1)
    run(phase1, [True] * ncols)
    if any(T[i][-1] != 0 for i in range(len(T)) if basis[i] >= art0):
        return "infeasible", None, None
    # drive remaining artificials out of the basis
    for i in range(len(T)):
        if basis[i] >= art0:
            col = next((j for j in range(art0) if T[i][j] != 0), None)
            if col is not None:
                pivot(i, col)
    allowed = [j < art0 for j in range(ncols)]
    obj = [Fraction(0)] * ncols
    for j in range(n):
        obj[j] = Fraction(c[j])
        obj[n + j] = -Fraction(c[j])
    status = run(obj, allowed)
    if status == "unbounded":
        return "unbounded", None, None
    vals = [Fraction(0)] * ncols
    for i, col in enumerate(basis):
        vals[col] = T[i][-1]
    x = tuple(vals[j] - vals[n + j] for j in range(n))
    return "optimal", dot(c, x), x


# ---------------------------------------------------------------------------
# Lattice points

def bounding_box(P: HPolyhedron) -> tuple[tuple[int, int], ...]:
    """Integer box containing ``P``; raises UnboundedPolyhedron."""
    if P.box is not None:
        return P.box
    if not P.ineqs:
        raise UnboundedPolyhedron("polyhedron without inequalities")
    A = [a for a, _ in P.ineqs]
    b = [c for _, c in P.ineqs]
    out = []
    for j in range(P.dim):
        e = [Fraction(int(i == j)) for i in range(P.dim)]
        st, hi, _ = lp_maximize(e, A, b)
        if st == "infeasible":
            return tuple((0, -1) for _ in range(P.dim))
        if st == "unbounded":
            raise UnboundedPolyhedron(f"coordinate {j} unbounded above")
        st, lo, _ = lp_maximize([-x for x in e], A, b)
        if st == "unbounded":
            raise UnboundedPolyhedron(f"coordinate {j} unbounded below")
        out.append((ceil(-lo), floor(hi)))
    return tuple(out)


def lattice_points(P: HPolyhedron, strict: bool = False) -> list[tuple[int, ...]]:
    """
    All integer points of ``P`` (of its interior if ``strict``), sorted.

    The search walks the bounding box coordinate by coordinate and prunes each
    level with interval bounds derived from the remaining box coordinates.
    """
    box = bounding_box(P)
    if any(lo > hi for lo, hi in box):
        return []
    rows = []
    for a, c in P.ineqs:
        ia, ic = _integer_row(a, c)
        # integer points: a.x <= floor(c), or < c meaning <= ceil(c) - 1
        bound = (ceil(ic) - 1) if strict else floor(ic)
        rows.append((ia, bound))
    d = P.dim
    # tail_min[k][j]: minimum of sum_{l>=j} a_l x_l over the box
    tail_min = []
    for a, _ in rows:
        tm = [0] * (d + 1)
        for j in range(d - 1, -1, -1):
            lo, hi = box[j]
            tm[j] = tm[j + 1] + min(a[j] * lo, a[j] * hi)
        tail_min.append(tm)
    out: list[tuple[int, ...]] = []
    prefix = [0] * len(rows)  # running a . x over fixed coordinates
    x = [0] * d

    def rec(j):
        lo, hi = box[j]
        for k, (a, bound) in enumerate(rows):
            aj = a[j]
            if aj == 0:
                if prefix[k] + tail_min[k][j + 1] > bound:
                    return
                continue
            slack = bound - prefix[k] - tail_min[k][j + 1]
            if aj > 0:
                hi = min(hi, slack // aj)
            else:
                lo = max(lo, -(slack // -aj))
            if lo > hi:
                return
        for v in range(lo, hi + 1):
            x[j] = v
            for k, (a, _) in enumerate(rows):
                prefix[k] += a[j] * v
            if j + 1 == d:
                out.append(tuple(x))
            else:
                rec(j + 1)
            for k, (a, _) in enumerate(rows):
                prefix[k] -= a[j] * v

    if d == 0:
        return [()] if all(0 <= b for _, b in rows) else []
    rec(0)
    return out


# ---------------------------------------------------------------------------
# Zonotopes

@dataclass(frozen=True)
class Facet:
    normal: tuple[int, ...]
    offset: Fraction
    label: Optional[tuple] = None


@dataclass(frozen=True)
class Zonotope:
    """``center + sum [-g, g]`` (symmetric) or ``center + sum [0, g]`` (segment mode)."""
    dim: int
    center: tuple[Fraction, ...]
    generators: tuple[tuple[Fraction, ...], ...]
    symmetric: bool = True

    def __post_init__(self):
        object.__setattr__(self, "center", _fvec(self.center))
        object.__setattr__(self, "generators", tuple(_fvec(g) for g in self.generators))
        if len(self.center) != self.dim or any(len(g) != self.dim for g in self.generators):
            raise ValueError("zonotope data does not match its dimension")

    def as_symmetric(self) -> "Zonotope":
        if self.symmetric:
            return self
        half = Fraction(1, 2)
        c = list(self.center)
        for g in self.generators:
            c = [x + half * y for x, y in zip(c, g)]
        return Zonotope(self.dim, tuple(c), tuple(tuple(half * y for y in g) for g in self.generators))

    def support(self, u: Sequence) -> Fraction:
        Z = self.as_symmetric()
        return dot(u, Z.center) + sum(abs(dot(u, g)) for g in Z.generators)

    def bounding_box(self) -> tuple[tuple[int, int], ...]:
        Z = self.as_symmetric()
        out = []
        for j in range(self.dim):
            r = sum(abs(g[j]) for g in Z.generators)
            out.append((ceil(Z.center[j] - r), floor(Z.center[j] + r)))
        return tuple(out)

    def sign_sums(self) -> list[tuple[Fraction, ...]]:
        Z = self.as_symmetric()
        pts = []
        for signs in itertools.product((1, -1), repeat=len(Z.generators)):
            p = list(Z.center)
            for s, g in zip(signs, Z.generators):
                p = [x + s * y for x, y in zip(p, g)]
            pts.append(tuple(p))
        return pts

    def vertices_2d(self) -> list[tuple[Fraction, ...]]:
        """Vertices in clockwise order (dimension 2 only)."""
        if self.dim != 2:
            raise ValueError("vertices_2d needs a planar zonotope")
        Z = self.as_symmetric()
        gens = []
        for g in Z.generators:
            if not any(g):
                continue
            # orient every generator into the upper half plane
            if g[1] < 0 or (g[1] == 0 and g[0] < 0):
                g = (-g[0], -g[1])
            gens.append(g)
        if not gens:
            return [Z.center]
        # sort by angle in [0, pi), merging parallel generators

        def cmp(g, h):
            cr = g[0] * h[1] - g[1] * h[0]
            return -1 if cr > 0 else (1 if cr < 0 else 0)
        gens.sort(key=functools.cmp_to_key(cmp))
        merged = []
        for g in gens:
            if merged and merged[-1][0] * g[1] - merged[-1][1] * g[0] == 0:
                merged[-1] = (merged[-1][0] + g[0], merged[-1][1] + g[1])
            else:
                merged.append(g)
        start = (Z.center[0] - sum(g[0] for g in merged), Z.center[1] - sum(g[1] for g in merged))
        verts = [start]
        cur = start
        for g in merged:
            cur = (cur[0] + 2 * g[0], cur[1] + 2 * g[1])
            verts.append(cur)
        for g in merged[:-1]:
            cur = (cur[0] - 2 * g[0], cur[1] - 2 * g[1])
            verts.append(cur)
        # walking generators by increasing angle is counterclockwise; reverse
        return [verts[0]] + verts[1:][::-1]

    def to_hpolyhedron(self) -> HPolyhedron:
        facets = zonotope_facets(self)
        return HPolyhedron(
            self.dim,
            tuple((tuple(Fraction(x) for x in f.normal), f.offset) for f in facets),
            box=self.bounding_box(),
        )


def minkowski_scale(Z: Zonotope, lam) -> Zonotope:
    lam = Fraction(lam)
    return Zonotope(
        Z.dim,
        tuple(lam * x for x in Z.center),
        tuple(tuple(lam * x for x in g) for g in Z.generators),
        Z.symmetric,
    )


def canonical_normal(u: Sequence) -> tuple[int, ...]:
    """Primitive integer vector with first nonzero entry positive."""
    p = primitive(u)
    for x in p:
        if x != 0:
            return p if x > 0 else tuple(-y for y in p)
    return p


def zonotope_facets(Z: Zonotope) -> list[Facet]:
    """Irredundant facet list, sorted by normal."""
    Z = Z.as_symmetric()
    gens = [g for g in Z.generators if any(g)]
    spans = rational_rank(gens) == Z.dim if gens else Z.dim == 0
    if not spans:
        raise DegenerateZonotope("generators do not span the ambient space")
    normals = set()
    if Z.dim == 1:
        normals.add((1,))
    else:
        for sub in itertools.combinations(gens, Z.dim - 1):
            if rational_rank(list(sub)) != Z.dim - 1:
                continue
            ns = nullspace(list(sub))
            normals.add(canonical_normal(ns[0]))
    out = []
    for u in normals:
        for s in (1, -1):
            v = tuple(s * x for x in u)
            out.append(Facet(v, Z.support(v)))
    out.sort(key=lambda f: f.normal)
    return out


# ---------------------------------------------------------------------------
# Planar helpers

def cross2(o, a, b):
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])


def convex_cyclic_check(points: Sequence[Sequence]) -> bool:
    """
    True iff ``points`` are, in the given cyclic order, the clockwise
    vertices of a strictly convex polygon.
    """
    pts = [_fvec(p) for p in points]
    n = len(pts)
    if n < 3 or len(set(pts)) != n:
        return False
    for i in range(n):
        a, b = pts[i], pts[(i + 1) % n]
        for j in range(n):
            if j in (i, (i + 1) % n):
                continue
            if cross2(a, b, pts[j]) >= 0:
                return False
    return True


def convex_hull_2d(points: Sequence[Sequence]) -> list[tuple[Fraction, ...]]:
    """Strict hull vertices in clockwise order (monotone chain)."""
    pts = sorted(set(_fvec(p) for p in points))
    if len(pts) <= 2:
        return pts
    lower, upper = [], []
    for p in pts:
        while len(lower) >= 2 and cross2(lower[-2], lower[-1], p) <= 0:
            lower.pop()
        lower.append(p)
    for p in reversed(pts):
        while len(upper) >= 2 and cross2(upper[-2], upper[-1], p) <= 0:
            upper.pop()
        upper.append(p)
    ccw = lower[:-1] + upper[:-1]
    return [ccw[0]] + ccw[1:][::-1]


# ---------------------------------------------------------------------------
# Bounds of {A x <= b} as functions of b

def _integral(a, y):
    c = lcm(Fraction(a).denominator, *(Fraction(v).denominator for v in y))
    return int(a * c), tuple(int(v * c) for v in y)


def _dedupe(items):
    return list(dict.fromkeys(items))


class ParametricBox:
    """
    Per-coordinate bounds of ``{x : A x <= b}`` valid for every right-hand side.

    Fourier-Motzkin is run once on ``A`` while tracking the nonnegative
    multipliers of each derived row, so the projection onto coordinate ``j``
    is ``{a x_j <= y . b}`` for a fixed list of pairs ``(a, y)``.
    """

    def __init__(self, A: Sequence[Sequence]):
        self.A = [tuple(Fraction(x) for x in row) for row in A]
        self.m = len(self.A)
        self.dim = len(self.A[0]) if self.A else 0
        # everything is rescaled to integers so evaluation avoids Fractions
        self.rows_for = [_dedupe(_integral(a, y) for a, y in self._project(j))
                         for j in range(self.dim)]
        # full-elimination rows certify emptiness: 0 <= y . b
        self.empty_rows = _dedupe(_integral(0, y)[1] for y in self._eliminate_all()
                                  if any(y))

    def _base(self):
        return [(row, tuple(Fraction(int(i == k)) for k in range(self.m)))
                for i, row in enumerate(self.A)]

    @staticmethod
    def _step(rows, j):
        pos = [r for r in rows if r[0][j] > 0]
        neg = [r for r in rows if r[0][j] < 0]
        out = [r for r in rows if r[0][j] == 0]
        seen = set()
        for ap, yp in pos:
            for an, yn in neg:
                lp, ln = -an[j], ap[j]
                a = tuple(lp * x + ln * y for x, y in zip(ap, an))
                y = tuple(lp * x + ln * z for x, z in zip(yp, yn))
                # normalize so the multipliers are comparable
                s = max(abs(v) for v in a) or max(y)
                a = tuple(v / s for v in a)
                y = tuple(v / s for v in y)
                if (a, y) not in seen:
                    seen.add((a, y))
                    out.append((a, y))
        return out

    def _project(self, keep):
        rows = self._base()
        for j in range(self.dim):
            if j != keep:
                rows = self._step(rows, j)
        return [(a[keep], y) for a, y in rows if a[keep] != 0]

    def _eliminate_all(self):
        rows = self._base()
        for j in range(self.dim):
            rows = self._step(rows, j)
        return [y for _, y in rows]

    def box(self, b: Sequence) -> Optional[tuple[tuple[int, int], ...]]:
        """Integer bounding box, or None when the system is empty."""
        if not all(isinstance(x, int) for x in b):
            b = [Fraction(x) for x in b]
        for y in self.empty_rows:
            if sum(u * v for u, v in zip(y, b)) < 0:
                return None
        out = []
        for j in range(self.dim):
            lo = hi = None
            for a, y in self.rows_for[j]:
                s = sum(u * v for u, v in zip(y, b))
                if a > 0:
                    v = floor(s / a) if isinstance(s, Fraction) else s // a
                    hi = v if hi is None else min(hi, v)
                else:
                    v = -floor(-s / a) if isinstance(s, Fraction) else -((-s) // a)
                    lo = v if lo is None else max(lo, v)
            if lo is None or hi is None:
                raise UnboundedPolyhedron(f"coordinate {j} is unbounded")
            lo_i, hi_i = lo, hi
            if lo_i > hi_i:
                return None
            out.append((lo_i, hi_i))
        return tuple(out)
