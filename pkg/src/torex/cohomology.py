"""
Line bundle cohomology through simplicial homology.

Degree convention: the augmented chain complex puts a face ``J`` in degree
``|J|`` and the empty face in degree 0, so ``h_k`` is the standard reduced
homology ``H~_{k-1}``.  A representative ``r`` of ``L`` contributes
``h_{d-p}(Supp r)`` to ``H^p(L)``.  With this convention the complex of the
whole fan (a (d-1)-sphere) lands in ``H^0`` and the complex ``{emptyset}``
(all ``r_i <= -1``) lands in ``H^d``.
"""
from __future__ import annotations

import functools
import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .errors import NonProperConfiguration, TooManyRays, UnboundedPolyhedron
from .exactlin import rational_rank, solve_rational
from .fan import SimplicialComplexOnRays, StackyFan, c_complex, supp_complex
from .geometry import HPolyhedron, ParametricBox, fm_feasible, lattice_points
from .picard import PicardGroup, PicClass

MAX_RAYS = 20


def homology_dims(cx: SimplicialComplexOnRays, length: int | None = None) -> list[int]:
    """Rational Betti numbers ``h_0..`` of the augmented complex of ``cx``."""
    dims = list(_homology(cx.faces))
    if length is not None:
        if len(dims) > length:
            if any(dims[length:]):
                raise ValueError("homology beyond the requested length")
            dims = dims[:length]
        dims += [0] * (length - len(dims))
    return dims


@functools.lru_cache(maxsize=65536)
def _homology(faces: frozenset) -> tuple[int, ...]:
    top = max(len(f) for f in faces)
    by_size = [sorted(f for f in faces if len(f) == k) for k in range(top + 1)]
    ranks = [0] * (top + 2)  # ranks[k] = rank of boundary C_k -> C_{k-1}
    for k in range(1, top + 1):
        index = {f: i for i, f in enumerate(by_size[k - 1])}
        M = []
        for f in by_size[k]:
            row = [0] * len(by_size[k - 1])
            for j in range(k):
                row[index[f[:j] + f[j + 1:]]] = -1 if j % 2 else 1
            M.append(row)
        ranks[k] = rational_rank(M) if M else 0
    return tuple(len(by_size[k]) - ranks[k] - ranks[k + 1] for k in range(top + 1))


# ---------------------------------------------------------------------------
# Sign patterns with homology

@functools.lru_cache(maxsize=256)
def _non_acyclic(fan: StackyFan) -> tuple[tuple[tuple[int, ...], tuple[int, ...]], ...]:
    if fan.n > MAX_RAYS:
        raise TooManyRays(f"{fan.n} rays exceed the exhaustive limit of {MAX_RAYS}")
    out = []
    for mask in range(1 << fan.n):
        I = tuple(i for i in range(fan.n) if mask >> i & 1)
        h = homology_dims(c_complex(fan, I), fan.d + 1)
        if any(h):
            out.append((I, tuple(h)))
    out.sort(key=lambda t: (len(t[0]), t[0]))
    return tuple(out)


def non_acyclic_subsets(fan: StackyFan) -> list[tuple[int, ...]]:
    """All ``I`` (empty and full included) whose complex ``C_I`` has homology."""
    return [I for I, _ in _non_acyclic(fan)]


def non_acyclic_with_homology(fan: StackyFan) -> list[tuple[tuple[int, ...], tuple[int, ...]]]:
    return list(_non_acyclic(fan))


def proper_non_acyclic(fan: StackyFan) -> list[tuple[int, ...]]:
    return [I for I in non_acyclic_subsets(fan) if len(I) < fan.n]


# ---------------------------------------------------------------------------
# Representative polyhedra

class _SignSystem:
    """``{w : r0_i + w.v_i >= 0 (i in I), r0_i + w.v_i <= -1 (i not in I)}``."""

    def __init__(self, fan: StackyFan, I: Sequence[int]):
        self.fan = fan
        self.I = frozenset(I)
        self.A = []
        for i, v in enumerate(fan.rays):
            if i in self.I:
                self.A.append(tuple(-x for x in v))
            else:
                self.A.append(tuple(v))
        self._certify()
        self.pbox = ParametricBox(self.A) if fan.d else None

    def _certify(self):
        # recession cone {A w <= 0} must be {0}: no w with s * w_j >= 1
        d = self.fan.d
        rows = [(a, Fraction(0), False) for a in self.A]
        for j in range(d):
            for s in (1, -1):
                extra = (tuple(-s * int(k == j) for k in range(d)), Fraction(-1), False)
                if fm_feasible(rows + [extra], d):
                    raise NonProperConfiguration(
                        f"representative set for sign pattern {sorted(self.I)} is unbounded")

    def real_feasible(self, x: Sequence) -> bool:
        """Does some real ``w`` satisfy the sign pattern for the real lift ``x``?"""
        if self.pbox is None:
            return all(v >= 0 for v in self.rhs(x))
        b = self.rhs(x)
        return all(sum(y * v for y, v in zip(ys, b)) >= 0 for ys in self.pbox.empty_rows)

    def rhs(self, r0: Sequence[int]) -> list[int]:
        return [r0[i] if i in self.I else -1 - r0[i] for i in range(self.fan.n)]

    def points(self, r0: Sequence[int]) -> list[tuple[int, ...]]:
        b = self.rhs(r0)
        try:
            box = self.pbox.box(b)
        except UnboundedPolyhedron as exc:  # pragma: no cover - guarded by _certify
            raise NonProperConfiguration(str(exc)) from exc
        if box is None:
            return []
        P = HPolyhedron(self.fan.d, tuple(zip(self.A, b)), box=box)
        return lattice_points(P)


@functools.lru_cache(maxsize=4096)
def _sign_system(fan: StackyFan, I: tuple[int, ...]) -> _SignSystem:
    return _SignSystem(fan, I)


@dataclass
class CohomologyTable:
    dims: list
    contributions: list = field(default_factory=list)

    @property
    def higher_vanish(self) -> bool:
        return not any(self.dims[1:])

    @property
    def euler(self) -> int:
        return sum((-1) ** p * h for p, h in enumerate(self.dims))

    def to_dict(self) -> dict:
        return {"dims": list(self.dims), "contributions": list(self.contributions)}


def cohomology(pic: PicardGroup, L: PicClass) -> CohomologyTable:
    fan = pic.fan
    d = fan.d
    r0 = pic.representative(L)
    dims = [0] * (d + 1)
    contrib = []
    for I, h in _non_acyclic(fan):
        pts = _sign_system(fan, I).points(r0)
        if not pts:
            continue
        for k, mult in enumerate(h):
            if mult:
                dims[d - k] += mult * len(pts)
                for w in pts:
                    contrib.append({"I": list(I), "w": list(w), "homology_degree": k,
                                    "multiplicity": mult})
    return CohomologyTable(dims, contrib)


def cohomology_dims(pic: PicardGroup, L: PicClass) -> tuple[int, ...]:
    return _cohomology_cached(pic, L)


@functools.lru_cache(maxsize=200000)
def _cohomology_cached(pic, L):
    return tuple(cohomology(pic, L).dims)


def is_acyclic(pic: PicardGroup, L: PicClass) -> bool:
    fan = pic.fan
    r0 = pic.representative(L)
    for I in proper_non_acyclic(fan):
        if _sign_system(fan, I).points(r0):
            return False
    return True


def acyclicity_witness(pic: PicardGroup, L: PicClass):
    """A proper non-acyclic ``I`` and representative ``r`` showing non-acyclicity."""
    fan = pic.fan
    r0 = pic.representative(L)
    for I in proper_non_acyclic(fan):
        pts = _sign_system(fan, I).points(r0)
        if pts:
            w = pts[0]
            r = [r0[i] + sum(a * b for a, b in zip(w, fan.rays[i])) for i in range(fan.n)]
            return {"I": list(I), "r": r}
    return None


# ---------------------------------------------------------------------------
# Forbidden cones

@dataclass(frozen=True)
class ForbiddenCone:
    I: tuple[int, ...]
    apex: tuple[Fraction, ...]
    generators: tuple[tuple[Fraction, ...], ...]

    def to_dict(self) -> dict:
        return {
            "I": list(self.I),
            "apex": [str(x) for x in self.apex],
            "generators": [[str(x) for x in g] for g in self.generators],
        }


def forbidden_cones(pic: PicardGroup) -> list[ForbiddenCone]:
    out = []
    for I in proper_non_acyclic(pic.fan):
        S = set(I)
        q = pic.real_proj([0 if i in S else -1 for i in range(pic.n)])
        gens = tuple(
            e if i in S else tuple(-x for x in e) for i, e in enumerate(pic.E_real)
        )
        out.append(ForbiddenCone(tuple(I), q, gens))
    return out


def in_forbidden_cone(pic: PicardGroup, I: Sequence[int], x) -> bool:
    """Is the real point ``x`` in ``q_I + cone(E_i (i in I), -E_i (i not in I))``?

    Decided by the Fourier-Motzkin certificates precomputed per sign pattern.
    """
    xt = pic.representative(x) if isinstance(x, PicClass) else pic.real_lift(x)
    return _sign_system(pic.fan, tuple(sorted(I))).real_feasible(xt)


def in_forbidden_cone_direct(pic: PicardGroup, I: Sequence[int], x) -> bool:
    """Same question as :func:`in_forbidden_cone`, by a fresh elimination."""
    fan = pic.fan
    if isinstance(x, PicClass):
        x = pic.real_of(x)
    xt = pic.real_lift(x)
    S = set(I)
    rows = []
    for i, v in enumerate(fan.rays):
        if i in S:
            rows.append((tuple(-c for c in v), xt[i], False))
        else:
            rows.append((tuple(v), -1 - xt[i], False))
    return fm_feasible(rows, fan.d)


def is_strongly_acyclic(pic: PicardGroup, x) -> bool:
    """``x`` (a class or a real point) avoids every forbidden cone."""
    return not any(in_forbidden_cone(pic, I, x) for I in proper_non_acyclic(pic.fan))


def brute_force_cohomology(pic: PicardGroup, L: PicClass, radius: int) -> list[int]:
    """
    Independent oracle: sum ``h_{d-p}(Supp r)`` over all representatives
    ``r = r0 + rho*(w)`` with ``w`` in a cube of the given radius.  The cube
    is centered where ``r`` vanishes on the first maximal cone, which keeps
    the relevant representatives near the center.
    """
    fan = pic.fan
    d = fan.d
    r0 = pic.representative(L)
    cone = fan.max_cones[0]
    w0 = solve_rational([list(fan.rays[i]) for i in cone], [-r0[i] for i in cone])
    center = [round(x) for x in w0]
    dims = [0] * (d + 1)
    for dw in itertools.product(range(-radius, radius + 1), repeat=d):
        w = [a + b for a, b in zip(center, dw)]
        r = [r0[i] + sum(a * b for a, b in zip(w, fan.rays[i])) for i in range(fan.n)]
        h = homology_dims(supp_complex(fan, r), d + 1)
        for k, mult in enumerate(h):
            dims[d - k] += mult
    return dims
