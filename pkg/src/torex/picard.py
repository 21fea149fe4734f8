"""
Picard groups of stacky fans.

``Pic`` is the cokernel of ``Z^d -> Z^n, w -> (w . v_i)_i``.  Classes are
stored in the canonical coordinates of that cokernel: a free part in ``Z^k``
(``k = n - d``) and torsion residues.  Real points of ``Pic_R`` are rational
vectors of length ``k``.
"""
from __future__ import annotations

import functools
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

from .errors import NoInteriorRelation, NotRankTwo, RankTooLow, ZeroAlphaEntry
from .exactlin import (
    FGAbelianGroup, cokernel, dot, integer_kernel, matvec, nullspace, primitive,
    rational_rank, solve_rational, transpose,
)
from .fan import StackyFan, require_valid
from .geometry import lp_maximize


@dataclass(frozen=True, order=True)
class PicClass:
    free: tuple[int, ...]
    torsion: tuple[int, ...] = ()
    moduli: tuple[int, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "free", tuple(int(x) for x in self.free))
        mods = tuple(int(m) for m in self.moduli)
        if len(self.torsion) != len(mods):
            raise ValueError("torsion residues and moduli differ in length")
        object.__setattr__(self, "moduli", mods)
        object.__setattr__(self, "torsion", tuple(int(t) % m for t, m in zip(self.torsion, mods)))

    def __add__(self, other: "PicClass") -> "PicClass":
        self._check(other)
        return PicClass(
            tuple(a + b for a, b in zip(self.free, other.free)),
            tuple(a + b for a, b in zip(self.torsion, other.torsion)),
            self.moduli,
        )

    def __neg__(self) -> "PicClass":
        return PicClass(tuple(-a for a in self.free), tuple(-a for a in self.torsion), self.moduli)

    def __sub__(self, other: "PicClass") -> "PicClass":
        return self + (-other)

    def _check(self, other):
        if len(self.free) != len(other.free) or self.moduli != other.moduli:
            raise ValueError("classes from different Picard groups")

    def to_dict(self) -> dict:
        return {"free": list(self.free), "torsion": list(self.torsion)}

    def __repr__(self) -> str:
        tors = f", torsion={list(self.torsion)}" if self.moduli else ""
        return f"PicClass({list(self.free)}{tors})"


class PicardGroup:
    """Pic of a valid stacky fan together with its real and hat variants."""

    def __init__(self, fan: StackyFan):
        require_valid(fan)
        self.fan = fan
        self.n = fan.n
        self.d = fan.d
        self.group: FGAbelianGroup = cokernel([list(v) for v in fan.rays], ambient=fan.n)
        self.k = self.group.free_rank
        self.torsion = self.group.torsion
        # columns of the free rows are the images of the E_i in Pic_R
        self._free_rows = [list(r) for r in self.group.free_rows]
        start = self.n - self.k
        self._lift_rows = [row[start:] for row in self.group.inverse_transform]
        self.E_real = [tuple(Fraction(row[i]) for row in self._free_rows) for i in range(self.n)]

    # classes -------------------------------------------------------------
    def class_of(self, r: Sequence[int]) -> PicClass:
        free, tors = self.group.project([int(x) for x in r])
        return PicClass(free, tors, self.torsion)

    def representative(self, c: PicClass) -> tuple[int, ...]:
        return self.group.section(c.free, c.torsion)

    def make_class(self, free: Sequence[int], torsion: Sequence[int] = ()) -> PicClass:
        if len(free) != self.k or len(torsion) != len(self.torsion):
            raise ValueError(
                f"class needs {self.k} free and {len(self.torsion)} torsion coordinates")
        return PicClass(tuple(free), tuple(torsion), self.torsion)

    def E(self, i: int) -> PicClass:
        return self.class_of([int(j == i) for j in range(self.n)])

    def divisor(self, J) -> PicClass:
        """Class of ``sum_{i in J} E_i``."""
        J = set(J)
        return self.class_of([int(i in J) for i in range(self.n)])

    @property
    def zero(self) -> PicClass:
        return PicClass((0,) * self.k, (0,) * len(self.torsion), self.torsion)

    def torsion_elements(self) -> list[tuple[int, ...]]:
        out = [()]
        for m in self.torsion:
            out = [t + (x,) for t in out for x in range(m)]
        return out

    # real coordinates ----------------------------------------------------
    def real_proj(self, x: Sequence) -> tuple[Fraction, ...]:
        """Image in ``Pic_R`` of a rational vector on the ``E_i`` basis."""
        return tuple(sum(Fraction(a) * b for a, b in zip(row, x)) for row in self._free_rows)

    def real_of(self, c: PicClass) -> tuple[Fraction, ...]:
        return tuple(Fraction(x) for x in c.free)

    def real_lift(self, y: Sequence) -> tuple[Fraction, ...]:
        """A rational vector on the ``E_i`` basis whose image is ``y``."""
        y = [Fraction(v) for v in y]
        return tuple(sum(a * b for a, b in zip(row, y)) for row in self._lift_rows)

    def functional(self, values: Sequence) -> tuple[Fraction, ...]:
        """
        Covector ``g`` on ``Pic_R`` with ``g(E_i) = values[i]``; requires
        ``sum values[i] v_i = 0``.
        """
        A = [list(e) for e in self.E_real]
        g = solve_rational(A, [Fraction(v) for v in values])
        if g is None:
            raise ValueError("values do not descend to Pic_R")
        return g

    def evaluate(self, g: Sequence, x) -> Fraction:
        if isinstance(x, PicClass):
            x = x.free
        return dot(g, [Fraction(v) for v in x])

    @functools.cached_property
    def canonical(self) -> PicClass:
        return self.class_of([-1] * self.n)

    @functools.cached_property
    def kappa(self) -> tuple[Fraction, ...]:
        """Real image of the canonical class."""
        return self.real_proj([-1] * self.n)


def picard_group(fan: StackyFan) -> PicardGroup:
    return _picard_cached(fan)


@functools.lru_cache(maxsize=256)
def _picard_cached(fan: StackyFan) -> PicardGroup:
    return PicardGroup(fan)


def canonical_class(pic: PicardGroup) -> PicClass:
    return pic.canonical


# ---------------------------------------------------------------------------
# The functionals f and alpha

@functools.lru_cache(maxsize=256)
def f_functional(fan: StackyFan) -> tuple[Fraction, ...]:
    """
    Positive weights ``r`` with ``sum r = 1`` and ``sum r_i v_i = 0``.

    Chosen by maximizing ``min r_i``; ties are broken by maximizing ``r_0``,
    then ``r_1`` and so on.
    """
    n, d = fan.n, fan.d
    # variables r_0..r_{n-1}, t
    A = [[-int(j == i) for j in range(n)] + [1] for i in range(n)]
    b = [0] * n
    A_eq = [[1] * n + [0]] + [[v[k] for v in fan.rays] + [0] for k in range(d)]
    b_eq = [1] + [0] * d
    st, t_star, _ = lp_maximize([0] * n + [1], A, b, A_eq, b_eq)
    if st != "optimal" or t_star <= 0:
        raise NoInteriorRelation("no strictly positive relation among the rays")
    # fix t = t_star, then lexicographic maximization
    A2 = [[-int(j == i) for j in range(n)] for i in range(n)]
    b2 = [-t_star] * n
    A_eq2 = [row[:n] for row in A_eq]
    b_eq2 = list(b_eq)
    x = None
    for i in range(n):
        c = [int(j == i) for j in range(n)]
        st, val, x = lp_maximize(c, A2, b2, A_eq2, b_eq2)
        A_eq2.append(c)
        b_eq2.append(val)
    return tuple(x)


def f_covector(pic: PicardGroup) -> tuple[Fraction, ...]:
    return pic.functional(f_functional(pic.fan))


@functools.lru_cache(maxsize=256)
def alpha_functional(fan: StackyFan) -> tuple[int, ...]:
    """Primitive integer relation with ``sum a_i = 0``, ``sum a_i v_i = 0``, ``a_0 > 0``."""
    if fan.n - fan.d != 2:
        raise NotRankTwo(f"Picard rank is {fan.n - fan.d}, not 2")
    M = [[1] * fan.n] + [[v[k] for v in fan.rays] for k in range(fan.d)]
    ns = nullspace(M)
    if len(ns) != 1:
        raise NotRankTwo("relation space is not one-dimensional")
    a = primitive(ns[0])
    if any(x == 0 for x in a):
        raise ZeroAlphaEntry("a relation coefficient vanishes; the hull is not simplicial")
    if a[0] < 0:
        a = tuple(-x for x in a)
    return a


def alpha_covector(pic: PicardGroup) -> tuple[Fraction, ...]:
    return pic.functional(alpha_functional(pic.fan))


# ---------------------------------------------------------------------------
# Pic modulo the canonical class

@dataclass(frozen=True)
class PicHat:
    """Linear projection ``Pic_R -> Q^{k-1}`` whose kernel is spanned by ``K``."""
    H: tuple[tuple[int, ...], ...]
    f: tuple[Fraction, ...]
    kappa: tuple[Fraction, ...]

    @property
    def dim(self) -> int:
        return len(self.H)

    def __call__(self, y: Sequence) -> tuple[Fraction, ...]:
        if isinstance(y, PicClass):
            y = y.free
        return tuple(dot(row, [Fraction(v) for v in y]) for row in self.H)

    def section(self, z: Sequence) -> tuple[Fraction, ...]:
        """The lift of ``z`` on which ``f`` vanishes."""
        A = [list(r) for r in self.H] + [list(self.f)]
        x = solve_rational(A, [Fraction(v) for v in z] + [Fraction(0)])
        assert x is not None
        return x


def pic_hat(pic: PicardGroup) -> PicHat:
    if pic.k < 2:
        raise RankTooLow("the quotient by K needs Picard rank at least 2")
    kap = primitive(pic.kappa)
    H = integer_kernel([list(kap)])
    return PicHat(tuple(tuple(r) for r in H), f_covector(pic), pic.kappa)


def hat_E(pic: PicardGroup, hat: Optional[PicHat] = None) -> list[tuple[Fraction, ...]]:
    hat = hat or pic_hat(pic)
    return [hat(e) for e in pic.E_real]
