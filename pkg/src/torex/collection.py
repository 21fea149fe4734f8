"""
Exceptional collections of line bundles: construction, verification,
ordering and Koszul closure.
"""
from __future__ import annotations

import heapq
import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Optional, Sequence

from .cohomology import cohomology_dims, is_acyclic, is_strongly_acyclic
from .errors import HomCycle, NonIntegralCount, NotFano, UnsupportedShape
from .fan import (
    FanClass, StackyFan, arc, classify, ensure_clockwise, minimal_nonfaces,
    normalized_volume,
)
from .geometry import HPolyhedron, lattice_points
from .picard import PicardGroup, PicClass, picard_group
from .windows import (
    ShiftCertificate, WindowP, build_window, classes_in, crossing_diagonal_facets,
    generic_shift, label_to_two_arc,
)


@dataclass
class ExceptionalCollection:
    fan: StackyFan
    pic: PicardGroup
    classes: list
    window: WindowP
    shift: ShiftCertificate
    expected: int
    report: Optional[dict] = None

    @property
    def count_check(self) -> bool:
        return len(self.classes) == self.expected

    def to_dict(self) -> dict:
        out = {
            "kind": self.window.kind,
            "classes": [c.to_dict() for c in self.classes],
            "count": len(self.classes),
            "expected_count": self.expected,
            "count_check": self.count_check,
            "shift": self.shift.to_dict(),
        }
        if self.report is not None:
            out["verification"] = self.report
        return out


def expected_count(fan: StackyFan) -> int:
    vol = normalized_volume(fan)
    if vol.denominator != 1:
        raise NonIntegralCount(f"normalized volume {vol} is not an integer")
    return int(vol)


def build_collection(fan: StackyFan, seed: int = 0) -> ExceptionalCollection:
    k = fan.n - fan.d
    if k >= 3 and fan.d >= 3:
        raise UnsupportedShape("Picard rank >= 3 is only handled in lattice rank 2")
    if classify(fan) is not FanClass.FANO:
        raise NotFano("collections are built for Fano fans only")
    kind = "rank1" if k <= 1 else ("rank2" if k == 2 else "delpezzo")
    if kind == "delpezzo":
        fan, _ = ensure_clockwise(fan)
    pic = picard_group(fan)
    window = build_window(pic, kind)
    cert = generic_shift(pic, window, seed)
    classes = classes_in(pic, cert.p, window)
    ordered = hom_order(pic, classes)
    return ExceptionalCollection(fan, pic, ordered, window, cert, expected_count(fan))


# ---------------------------------------------------------------------------
# Verification

def verify_strong_exceptional(pic: PicardGroup, classes: Sequence[PicClass]) -> dict:
    """Full cohomology of all pairwise differences, plus the strong-acyclicity shortcut."""
    classes = list(classes)
    if len(set(classes)) != len(classes):
        raise ValueError("classes are not distinct")
    N = len(classes)
    h0 = [[0] * N for _ in range(N)]
    strong = [[True] * N for _ in range(N)]
    failures = []
    inconsistent = []
    for a, b in itertools.product(range(N), repeat=2):
        if a == b:
            h0[a][b] = 1
            continue
        diff = classes[b] - classes[a]
        dims = cohomology_dims(pic, diff)
        h0[a][b] = dims[0]
        if any(dims[1:]):
            failures.append({"from": classes[a].to_dict(), "to": classes[b].to_dict(),
                             "dims": list(dims)})
        sa = is_strongly_acyclic(pic, diff)
        strong[a][b] = sa
        if sa and any(dims[1:]):
            inconsistent.append({"from": classes[a].to_dict(), "to": classes[b].to_dict()})
    return {
        "passed": not failures,
        "pairs": N * (N - 1),
        "h0": h0,
        "strongly_acyclic": strong,
        "failures": failures,
        "strong_implies_acyclic": not inconsistent,
        "inconsistencies": inconsistent,
    }


def hom_order(pic: PicardGroup, classes: Sequence[PicClass],
              h0: Optional[Callable[[int, int], int]] = None) -> list[PicClass]:
    """
    Topological order of ``a -> b`` whenever ``h0(b - a) > 0``; ties broken by
    the natural order of classes.  ``h0(i, j)`` may be supplied as a callable
    on indices (for testing).
    """
    classes = list(classes)
    N = len(classes)
    if h0 is None:
        def h0(i, j):
            return cohomology_dims(pic, classes[j] - classes[i])[0]
    succ = [[] for _ in range(N)]
    indeg = [0] * N
    for i, j in itertools.product(range(N), repeat=2):
        if i != j and h0(i, j) > 0:
            succ[i].append(j)
            indeg[j] += 1
    heap = [(classes[i], i) for i in range(N) if indeg[i] == 0]
    heapq.heapify(heap)
    out = []
    while heap:
        _, i = heapq.heappop(heap)
        out.append(classes[i])
        for j in succ[i]:
            indeg[j] -= 1
            if indeg[j] == 0:
                heapq.heappush(heap, (classes[j], j))
    if len(out) != N:
        stuck = [classes[i].to_dict() for i in range(N) if indeg[i] > 0]
        raise HomCycle(f"nonzero homomorphisms in both directions among {stuck[:4]}")
    return out


# ---------------------------------------------------------------------------
# Koszul moves and closure

@dataclass(frozen=True)
class KoszulMove:
    """
    Exact Koszul complex built from divisors ``D_a = sum_{i in S_a} E_i``
    with no common zero.  For a subset ``T`` of divisors the term is the
    anchor twisted by ``-sum_{a in T} D_a`` in homological position ``|T|``.
    """
    support: tuple[int, ...]
    divisors: tuple[tuple[int, ...], ...]
    kind: str = "koszul"

    def offsets(self, pic: PicardGroup) -> list[tuple[PicClass, int]]:
        out = []
        for r in range(len(self.divisors) + 1):
            for T in itertools.combinations(self.divisors, r):
                vec = [0] * pic.n
                for D in T:
                    for i in D:
                        vec[i] -= 1
                out.append((pic.class_of(vec), r))
        return out

    def to_dict(self) -> dict:
        return {"kind": self.kind, "support": list(self.support),
                "divisors": [list(D) for D in self.divisors]}


def koszul_moves(fan: StackyFan) -> list[KoszulMove]:
    moves = []
    seen = set()
    for R in minimal_nonfaces(fan):
        key = frozenset(frozenset((i,)) for i in R)
        seen.add(key)
        moves.append(KoszulMove(tuple(R), tuple((i,) for i in R), "koszul"))
    if fan.d == 2 and fan.n >= 4:
        n = fan.n
        for label in crossing_diagonal_facets(n):
            plus, minus = label
            I = label_to_two_arc(label, n)
            i1, i2 = sorted(minus)
            j1 = next(j for j in sorted(plus) if i1 < j < i2)
            j2 = next(j for j in plus if j != j1)
            A = tuple(sorted(arc(j1, i2, n)))
            B = tuple(sorted(arc(j2, i1, n)))
            if not all(not fan.is_face((a, b)) for a in A for b in B):
                continue
            key = frozenset((frozenset(A), frozenset(B)))
            if key in seen:
                continue
            seen.add(key)
            moves.append(KoszulMove(tuple(sorted(A + B)), (A, B), "arc"))
    return moves


@dataclass
class ClosureTrace:
    start: list
    region: list
    generations: list = field(default_factory=list)
    complete: bool = False
    rounds: int = 0
    moves: list = field(default_factory=list)

    def known(self) -> set:
        return set(self.start) | {g["added"] for g in self.generations}

    def to_dict(self) -> dict:
        return {
            "complete": self.complete,
            "rounds": self.rounds,
            "start": [c.to_dict() for c in self.start],
            "region": [c.to_dict() for c in self.region],
            "generations": [
                {"added": g["added"].to_dict(), "move": g["move"], "anchor": g["anchor"].to_dict(),
                 "round": g["round"]}
                for g in self.generations
            ],
            "moves": [m.to_dict() for m in self.moves],
        }


def region_classes(pic: PicardGroup, region: HPolyhedron) -> list[PicClass]:
    pts = lattice_points(region)
    return sorted(pic.make_class(x, t) for x in pts for t in pic.torsion_elements())


def closure(pic: PicardGroup, start: Sequence[PicClass], region: HPolyhedron,
            moves: Optional[Sequence[KoszulMove]] = None, max_rounds: int = 10000) -> ClosureTrace:
    """
    Fixpoint of Koszul generation inside ``region``: a class joins the known
    set when some move instance has it as the only unknown term.
    """
    moves = list(koszul_moves(pic.fan) if moves is None else moves)
    W = region_classes(pic, region)
    Wset = set(W)
    start = sorted(set(start))
    known = set(start)
    trace = ClosureTrace(start, W)
    offsets = [m.offsets(pic) for m in moves]
    rnd = 0
    while rnd < max_rounds:
        rnd += 1
        added = []
        for X in W:
            if X in known:
                continue
            hit = _derive(X, known, offsets)
            if hit is not None:
                mi, anchor = hit
                added.append({"added": X, "move": mi, "anchor": anchor, "round": rnd})
        if not added:
            break
        for g in added:
            known.add(g["added"])
        trace.generations.extend(added)
    trace.rounds = rnd
    trace.complete = Wset <= known
    trace.moves = moves
    return trace


def _derive(X, known, offsets):
    for mi, terms in enumerate(offsets):
        for t, (o_t, _) in enumerate(terms):
            anchor = X - o_t
            if all((anchor + o) in known for s, (o, _) in enumerate(terms) if s != t):
                return mi, anchor
    return None


def replay(pic: PicardGroup, trace: ClosureTrace, moves: Sequence[KoszulMove]) -> set:
    """Re-check every derivation of a trace; returns the reconstructed known set."""
    known = set(trace.start)
    offsets = [m.offsets(pic) for m in moves]
    by_round: dict = {}
    for g in trace.generations:
        by_round.setdefault(g["round"], []).append(g)
    for rnd in sorted(by_round):
        batch = by_round[rnd]
        for g in batch:
            terms = offsets[g["move"]]
            anchor = g["anchor"]
            vals = [anchor + o for o, _ in terms]
            if g["added"] not in vals:
                raise ValueError("derivation does not involve the added class")
            rest = list(vals)
            rest.remove(g["added"])
            if not all(v in known for v in rest):
                raise ValueError(f"derivation in round {rnd} uses an unknown class")
        for g in batch:
            known.add(g["added"])
    return known


def fullness_region(collection: ExceptionalCollection, scale=3) -> HPolyhedron:
    """``p + scale * P``; it already enforces ``|f(x - p)| <= scale / 2``."""
    w = collection.window.scaled(Fraction(scale))
    return w.region(collection.shift.p)
