"""
Static SVG pictures of the plane in which windows and forbidden cones live.

* Picard rank 2: the plane is ``Pic_R``; drawn are the shifted window
  ``p + P`` (one polygon), the forbidden cones and the collection.
* lattice rank 2 with five rays: the plane is ``Pic_R / R K``; drawn are
  ``Q`` and ``P^`` (two polygons), the images of the forbidden cones, the
  image lattice and the collection.

All geometry is exact until the last step.  Coordinates are written with
six decimals, rounded half-to-even from the exact rational value.
"""
from __future__ import annotations

from fractions import Fraction
from typing import Optional

from .cohomology import proper_non_acyclic
from .errors import InputError, UnsupportedDimension
from .exactlin import hermite_rows, solve_rational, transpose
from .picard import PicardGroup, pic_hat
from .windows import build_Q, build_window

PRECISION = 10 ** 6
MARGIN = Fraction(1)


def fmt(x) -> str:
    """Fixed-precision decimal of a rational, rounded half-to-even at 1e-6."""
    q = round(Fraction(x) * PRECISION)
    sign = "-" if q < 0 else ""
    whole, frac = divmod(abs(q), PRECISION)
    if not frac:
        return f"{sign}{whole}"
    return f"{sign}{whole}." + f"{frac:06d}".rstrip("0")


def _cross(a, b):
    return a[0] * b[1] - a[1] * b[0]


def cone_halfplanes(apex, gens) -> Optional[list]:
    """
    Half-planes ``(n, c)`` meaning ``n . x >= c`` whose intersection is the
    planar cone ``apex + cone(gens)``.  Returns ``[]`` for the whole plane.
    """
    gens = [g for g in gens if any(g)]
    if not gens:
        return None  # a single point; never happens for forbidden cones

    def hp(u):
        # n . x >= n . apex with n = rot90(u) keeps the left side of u
        n = (-u[1], u[0])
        return (n, n[0] * apex[0] + n[1] * apex[1])

    for e1 in gens:
        if all(_cross(e1, g) > 0 or (_cross(e1, g) == 0 and e1[0] * g[0] + e1[1] * g[1] > 0)
               for g in gens):
            # pointed: sector from e1 counterclockwise to e2
            e2 = next(g for g in gens if all(_cross(g, h) <= 0 for h in gens))
            out = [hp(e1)]
            out.append(hp((-e2[0], -e2[1])))
            return out
    for e1 in gens:
        if all(_cross(e1, g) >= 0 for g in gens):
            line = all(_cross(e1, g) == 0 for g in gens)
            out = [hp(e1)]
            if line:
                out.append(hp((-e1[0], -e1[1])))
            return out
    return []


def clip(polygon: list, halfplanes: list) -> list:
    """Sutherland-Hodgman clipping of a convex polygon by ``n . x >= c``."""
    pts = list(polygon)
    for n, c in halfplanes:
        if not pts:
            break
        out = []
        m = len(pts)
        for k in range(m):
            a, b = pts[k], pts[(k + 1) % m]
            va = n[0] * a[0] + n[1] * a[1] - c
            vb = n[0] * b[0] + n[1] * b[1] - c
            if va >= 0:
                out.append(a)
            if (va > 0 > vb) or (va < 0 < vb):
                t = va / (va - vb)
                out.append((a[0] + t * (b[0] - a[0]), a[1] + t * (b[1] - a[1])))
        dedup = []
        for p in out:
            if not dedup or dedup[-1] != p:
                dedup.append(p)
        if len(dedup) > 1 and dedup[0] == dedup[-1]:
            dedup.pop()
        pts = dedup
    return pts


def _image_lattice(H) -> list:
    """Basis of the lattice ``H Z^k`` in the plane."""
    return hermite_rows(transpose([list(r) for r in H]))


def _lattice_in_box(basis, lo, hi) -> list:
    """Points of the planar lattice spanned by ``basis`` inside the box."""
    B = [list(b) for b in basis]
    corners = [(x, y) for x in (lo[0], hi[0]) for y in (lo[1], hi[1])]
    coeffs = [solve_rational(transpose(B), [Fraction(c[0]), Fraction(c[1])]) for c in corners]
    rng = [range(int(min(c[j] for c in coeffs)) - 1, int(max(c[j] for c in coeffs)) + 2)
           for j in range(2)]
    out = []
    for a in rng[0]:
        for b in rng[1]:
            p = (a * B[0][0] + b * B[1][0], a * B[0][1] + b * B[1][1])
            if lo[0] <= p[0] <= hi[0] and lo[1] <= p[1] <= hi[1]:
                out.append(p)
    return sorted(set(out))


def figure_scene(pic: PicardGroup, collection) -> dict:
    """Exact planar data of the figure; raises UnsupportedDimension."""
    fan = pic.fan
    if pic.k == 2:
        window = collection.window
        p = collection.shift.p
        Z = window.zonotope
        poly = [tuple(v[j] + p[j] for j in range(2)) for v in Z.vertices_2d()]
        polygons = [("window", poly)]
        cones = []
        for I in proper_non_acyclic(fan):
            S = set(I)
            apex = pic.real_proj([0 if i in S else -1 for i in range(pic.n)])
            gens = [e if i in S else tuple(-x for x in e) for i, e in enumerate(pic.E_real)]
            cones.append((I, apex, gens))
        points = [tuple(Fraction(x) for x in c.free) for c in collection.classes]
        basis = [[1, 0], [0, 1]]
    elif fan.d == 2 and pic.k == 3:
        hat = pic_hat(pic)
        Q = build_Q(pic, hat)
        P_hat = collection.window.hat_part.get("P_hat")
        if P_hat is None:
            P_hat = build_window(pic, "delpezzo").hat_part["P_hat"]
        polygons = [("Q", Q.vertices_2d()), ("P_hat", P_hat.vertices_2d())]
        Eh = [hat(e) for e in pic.E_real]
        cones = []
        for I in proper_non_acyclic(fan):
            S = set(I)
            apex = hat(pic.real_proj([0 if i in S else -1 for i in range(pic.n)]))
            gens = [e if i in S else tuple(-x for x in e) for i, e in enumerate(Eh)]
            cones.append((I, apex, gens))
        points = [hat(c.free) for c in collection.classes]
        basis = _image_lattice(hat.H)
    else:
        plane = pic.k if pic.k <= 2 else pic.k - 1
        raise UnsupportedDimension(f"the drawing plane would have dimension {plane}, not 2")
    xs = [v[0] for _, poly in polygons for v in poly] + [c[1][0] for c in cones] + [q[0] for q in points]
    ys = [v[1] for _, poly in polygons for v in poly] + [c[1][1] for c in cones] + [q[1] for q in points]
    lo = (min(xs) - MARGIN, min(ys) - MARGIN)
    hi = (max(xs) + MARGIN, max(ys) + MARGIN)
    return {
        "polygons": polygons,
        "cones": cones,
        "points": points,
        "lattice": _lattice_in_box(basis, lo, hi),
        "box": (lo, hi),
    }


def render_svg(scene: dict, width: int = 600, height: int = 600, title: str = "") -> bytes:
    if width <= 0 or height <= 0:
        raise InputError(f"viewport must be positive, got {width}x{height}")
    (x0, y0), (x1, y1) = scene["box"]
    scale = min(Fraction(width) / (x1 - x0), Fraction(height) / (y1 - y0))
    ox = (width - scale * (x1 - x0)) / 2
    oy = (height - scale * (y1 - y0)) / 2

    def X(p):
        return fmt(ox + scale * (p[0] - x0)), fmt(oy + scale * (y1 - p[1]))

    rect = [(x0, y0), (x1, y0), (x1, y1), (x0, y1)]
    lines = [
        '<?xml version="1.0" encoding="UTF-8" standalone="no"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{width}" '
        f'height="{height}" viewBox="0 0 {width} {height}">',
    ]
    if title:
        safe = title.replace("&", "&amp;").replace("<", "&lt;").replace(">", "&gt;")
        lines.append(f"<title>{safe}</title>")
    lines.append('<g id="wedges" fill="#d62728" fill-opacity="0.12" stroke="#d62728" '
                 'stroke-width="1">')
    for I, apex, gens in scene["cones"]:
        region = clip(rect, cone_halfplanes(apex, gens))
        if not region:
            d = ""
        else:
            pts = [X(p) for p in region]
            d = "M " + " L ".join(f"{a} {b}" for a, b in pts)
            if len(pts) > 2:
                d += " Z"
        label = ",".join(str(i) for i in I) or "empty"
        lines.append(f'<path class="wedge" data-subset="{label}" d="{d}"/>')
    lines.append("</g>")
    lines.append('<g id="polygons" fill="none" stroke="#1f77b4" stroke-width="2">')
    for name, poly in scene["polygons"]:
        pts = " ".join(f"{a},{b}" for a, b in (X(p) for p in poly))
        lines.append(f'<polygon class="{name}" points="{pts}"/>')
    lines.append("</g>")
    lines.append('<g id="lattice" fill="#7f7f7f">')
    for p in scene["lattice"]:
        a, b = X(p)
        lines.append(f'<circle class="lattice" cx="{a}" cy="{b}" r="2"/>')
    lines.append("</g>")
    lines.append('<g id="collection" fill="#2ca02c" stroke="#000000" stroke-width="1">')
    for p in scene["points"]:
        a, b = X(p)
        lines.append(f'<circle class="collection" cx="{a}" cy="{b}" r="5"/>')
    lines.append("</g>")
    lines.append("</svg>")
    return ("\n".join(lines) + "\n").encode("utf-8")


def emit_figure(pic: PicardGroup, artifacts: Optional[dict] = None, path: Optional[str] = None,
                width: int = 600, height: int = 600) -> bytes:
    """
    Render the figure for ``pic``.  ``artifacts`` may carry a prebuilt
    ``collection``; otherwise one is built with seed 0.
    """
    if width <= 0 or height <= 0:
        raise InputError(f"viewport must be positive, got {width}x{height}")
    artifacts = artifacts or {}
    collection = artifacts.get("collection")
    if collection is None:
        from .collection import build_collection
        collection = build_collection(pic.fan, artifacts.get("seed", 0))
    pic = collection.pic
    scene = figure_scene(pic, collection)
    data = render_svg(scene, width, height, title=pic.fan.name)
    if path is not None:
        with open(path, "wb") as fh:
            fh.write(data)
    return data


def text_report(pic: PicardGroup, reason: str) -> str:
    """Fallback description when no planar figure exists."""
    lines = [f"no figure: {reason}", f"fan: {pic.fan.name or '(unnamed)'}",
             f"rays: {[list(v) for v in pic.fan.rays]}", f"Picard rank: {pic.k}"]
    lines.append(f"proper non-acyclic subsets: {[list(I) for I in proper_non_acyclic(pic.fan)]}")
    return "\n".join(lines) + "\n"
