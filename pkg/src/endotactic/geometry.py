"""Exact convex hulls (dimension <= 3) and sweep-direction machinery."""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cmp_to_key
from itertools import combinations
from typing import Sequence

from . import lp
from .exact import canonical_line, cross, dot, nullspace, primitive, rref
from .network import ReactionNetwork

log = logging.getLogger(__name__)

Point = tuple[Fraction, ...]


class UnsupportedDimensionError(ValueError):
    pass


@dataclass(frozen=True)
class Polytope:
    """Convex hull of finitely many rational points.

    ``facets`` holds inward facet inequalities ``normal . x >= offset`` and
    is only populated for full-dimensional hulls.  ``equations`` describes
    the affine span (``normal . x == offset``) and is empty when the hull
    is full-dimensional.
    """

    ambient_dim: int
    vertices: tuple[Point, ...]
    facets: tuple[tuple[tuple[int, ...], Fraction], ...]
    affine_dim: int
    equations: tuple[tuple[tuple[int, ...], Fraction], ...] = ()

    @property
    def is_full_dimensional(self) -> bool:
        return self.affine_dim == self.ambient_dim

    def contains(self, p: Sequence) -> bool:
        """Exact closed membership."""
        p = tuple(Fraction(v) for v in p)
        if len(p) != self.ambient_dim:
            raise ValueError("point dimension mismatch")
        if self.is_full_dimensional:
            return all(dot(nrm, p) >= off for nrm, off in self.facets)
        if any(dot(nrm, p) != off for nrm, off in self.equations):
            return False
        if len(self.vertices) == 1:
            return p == self.vertices[0]
        # convex-combination feasibility over the hull vertices
        rows = [[v[i] for v in self.vertices] for i in range(self.ambient_dim)]
        rows.append([1] * len(self.vertices))
        return lp.feasible_point(rows, list(p) + [1]) is not None

    def to_dict(self) -> dict:
        return {
            "ambient_dim": self.ambient_dim,
            "affine_dim": self.affine_dim,
            "vertices": [[str(c) for c in v] for v in self.vertices],
            "facets": [{"normal": list(nrm), "offset": str(off)} for nrm, off in self.facets],
            "equations": [{"normal": list(nrm), "offset": str(off)} for nrm, off in self.equations],
        }


def _cross2(o, a, b):
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])


def _hull2(pts: list[Point]) -> list[Point]:
    """Andrew's monotone chain; counter-clockwise, collinear points dropped."""
    pts = sorted(set(pts))
    if len(pts) <= 2:
        return pts
    lower: list[Point] = []
    for p in pts:
        while len(lower) >= 2 and _cross2(lower[-2], lower[-1], p) <= 0:
            lower.pop()
        lower.append(p)
    upper: list[Point] = []
    for p in reversed(pts):
        while len(upper) >= 2 and _cross2(upper[-2], upper[-1], p) <= 0:
            upper.pop()
        upper.append(p)
    return lower[:-1] + upper[:-1]


def _full_hull_vertices(pts: list[Point], dim: int) -> list[Point]:
    """Extreme points of a set that is full-dimensional in ``dim <= 2`` coordinates."""
    if dim == 0:
        return pts[:1]
    if dim == 1:
        return [min(pts), max(pts)]
    return _hull2(pts)


def _lower_dim_vertices(pts: list[Point], pivots: list[int]) -> list[Point]:
    # projection onto the pivot coordinates is injective on the affine span
    proj = {tuple(p[c] for c in pivots): p for p in pts}
    ext = _full_hull_vertices(list(proj), len(pivots))
    return [proj[q] for q in ext]


def _sub(a, b):
    return tuple(x - y for x, y in zip(a, b))


def _hull3_planes(pts: list[Point]) -> dict[tuple[int, ...], Fraction]:
    """Inward facet planes of a full-dimensional 3D point set (incremental hull)."""
    i0 = 0
    i1 = 1
    i2 = next(k for k in range(2, len(pts)) if any(cross(_sub(pts[i1], pts[i0]), _sub(pts[k], pts[i0]))))
    n012 = cross(_sub(pts[i1], pts[i0]), _sub(pts[i2], pts[i0]))
    i3 = next(k for k in range(len(pts)) if dot(n012, _sub(pts[k], pts[i0])) != 0)

    def normal(t):
        a, b, c = (pts[i] for i in t)
        return cross(_sub(b, a), _sub(c, a))

    def side(t, p):
        return dot(normal(t), _sub(p, pts[t[0]]))

    tris = []
    for t, opp in (((i0, i1, i2), i3), ((i0, i1, i3), i2), ((i0, i2, i3), i1), ((i1, i2, i3), i0)):
        if side(t, pts[opp]) > 0:
            t = (t[0], t[2], t[1])
        tris.append(t)
    done = {i0, i1, i2, i3}
    for k, p in enumerate(pts):
        if k in done:
            continue
        sides = [side(t, p) for t in tris]
        if all(sv <= 0 for sv in sides):
            continue
        visible = [t for t, sv in zip(tris, sides) if sv >= 0]
        keep = [t for t, sv in zip(tris, sides) if sv < 0]
        vis_edges = set()
        for a, b, c in visible:
            vis_edges.update(((a, b), (b, c), (c, a)))
        horizon = [(a, b) for a, b in vis_edges if (b, a) not in vis_edges]
        tris = keep + [(a, b, k) for a, b in horizon]
    planes: dict[tuple[int, ...], Fraction] = {}
    for t in tris:
        nrm = normal(t)
        if not any(nrm):
            raise AssertionError("degenerate hull triangle")
        inward = primitive(tuple(-v for v in nrm))
        planes[inward] = dot(inward, pts[t[0]])
    return planes


def convex_hull(points: Sequence[Sequence]) -> Polytope:
    pts = sorted({tuple(Fraction(c) for c in p) for p in points})
    if not pts:
        raise ValueError("convex hull of an empty set")
    n = len(pts[0])
    if any(len(p) != n for p in pts):
        raise ValueError("points of mixed dimension")
    if n > 3:
        raise UnsupportedDimensionError(f"hulls are supported up to dimension 3, got {n}")
    p0 = pts[0]
    diffs = [[a - b for a, b in zip(p, p0)] for p in pts[1:]]
    _, pivots = rref(diffs) if diffs else ([], [])
    r = len(pivots)
    if r < n:
        eqs = []
        for w in nullspace(diffs, n) if diffs else [tuple(int(i == j) for j in range(n)) for i in range(n)]:
            eqs.append((w, dot(w, p0)))
        verts = _lower_dim_vertices(pts, pivots)
        return Polytope(n, tuple(verts), (), r, tuple(eqs))

    if n == 1:
        lo, hi = pts[0], pts[-1]
        facets = (((1,), lo[0]), ((-1,), -hi[0]))
        return Polytope(1, (lo, hi), facets, 1)
    if n == 2:
        verts = _hull2(pts)
        facets = []
        for a, b in zip(verts, verts[1:] + verts[:1]):
            nrm = primitive((-(b[1] - a[1]), b[0] - a[0]))
            facets.append((nrm, dot(nrm, a)))
        return Polytope(2, tuple(verts), tuple(facets), 2)

    facets = _hull3_planes(pts)
    verts: set[Point] = set()
    for nrm, off in facets.items():
        on = [p for p in pts if dot(nrm, p) == off]
        d0 = on[0]
        _, piv = rref([[x - y for x, y in zip(p, d0)] for p in on[1:]])
        verts.update(_lower_dim_vertices(on, piv))
    return Polytope(3, tuple(sorted(verts)), tuple(sorted(facets.items())), 3)


def is_strictly_interior(poly: Polytope, p: Sequence) -> bool:
    p = tuple(Fraction(v) for v in p)
    if len(p) != poly.ambient_dim:
        raise ValueError("point dimension mismatch")
    if not poly.is_full_dimensional:
        return False
    return all(dot(nrm, p) > off for nrm, off in poly.facets)


@dataclass(frozen=True)
class SupportData:
    direction: tuple
    minimizers: tuple
    value: Fraction


def support_minimizers(points: Sequence[Sequence], u: Sequence) -> SupportData:
    if not any(u):
        raise ValueError("direction must be nonzero")
    pts = [tuple(p) for p in points]
    if not pts:
        raise ValueError("no points")
    vals = [dot(u, p) for p in pts]
    m = min(vals)
    return SupportData(tuple(u), tuple(p for p, v in zip(pts, vals) if v == m), Fraction(m))


# ---------------------------------------------------------------------------
# finite direction sets


@dataclass(frozen=True)
class DirectionSet:
    directions: tuple[tuple[int, ...], ...]
    normals: tuple[tuple[int, ...], ...] = field(default=())

    def __len__(self):
        return len(self.directions)

    def __iter__(self):
        return iter(self.directions)


def arrangement_normals(net: ReactionNetwork) -> list[tuple[int, ...]]:
    """Hyperplane normals whose sign pattern decides every sweep verdict.

    Source differences, reaction vectors, and the coordinate axes (the
    latter only refine the arrangement, and they guarantee full rank).
    """
    n = net.n
    vecs = []
    srcs = net.sources()
    for a, b in combinations(srcs, 2):
        vecs.append(tuple(x - y for x, y in zip(a, b)))
    vecs.extend(net.reaction_vectors())
    vecs.extend(tuple(int(i == j) for j in range(n)) for i in range(n))
    out = []
    seen = set()
    for v in vecs:
        if not any(v):
            continue
        c = canonical_line(v)
        if c not in seen:
            seen.add(c)
            out.append(c)
    return out


def _half(v):
    return 0 if (v[1] > 0 or (v[1] == 0 and v[0] > 0)) else 1


def _angle_cmp(a, b):
    ha, hb = _half(a), _half(b)
    if ha != hb:
        return ha - hb
    c = a[0] * b[1] - a[1] * b[0]
    return -1 if c > 0 else (1 if c < 0 else 0)


def _sort_by_angle(items, coords):
    """Sort ``items`` by the polar angle of ``coords(item)`` (a 2-vector)."""
    return sorted(items, key=cmp_to_key(lambda p, q: _angle_cmp(coords(p), coords(q))))


def _directions_2d(normals):
    rays = set()
    for v in normals:
        r = primitive((-v[1], v[0]))
        rays.add(r)
        rays.add(tuple(-c for c in r))
    ordered = _sort_by_angle(list(rays), lambda r: r)
    reps = list(ordered)
    for a, b in zip(ordered, ordered[1:] + ordered[:1]):
        # consecutive critical rays are less than pi apart when there are >= 2 lines
        reps.append(primitive((a[0] + b[0], a[1] + b[1])))
    return reps


def _directions_3d(normals):
    rays: set[tuple[int, ...]] = set()
    for a, b in combinations(normals, 2):
        c = primitive(cross(a, b))
        rays.add(c)
        rays.add(tuple(-x for x in c))
    rays_l = sorted(rays)
    reps = list(rays_l)
    neighbours: dict[tuple, set] = {r: set() for r in rays_l}
    for v in normals:
        on = [r for r in rays_l if dot(v, r) == 0]
        e1 = on[0]
        e2 = cross(v, e1)
        ordered = _sort_by_angle(on, lambda r: (dot(r, e1), dot(r, e2)))
        for a, b in zip(ordered, ordered[1:] + ordered[:1]):
            reps.append(primitive([x + y for x, y in zip(a, b)]))
            neighbours[a].add(b)
            neighbours[b].add(a)
    for w in rays_l:
        ww = dot(w, w)

        def tangent(p, w=w, ww=ww):
            pw = dot(p, w)
            return tuple(ww * pi - pw * wi for pi, wi in zip(p, w))

        nb = sorted(neighbours[w])
        f1 = tangent(nb[0])
        f2 = cross(w, f1)
        ordered = _sort_by_angle(nb, lambda p: (dot(tangent(p), f1), dot(tangent(p), f2)))
        for p1, p2 in zip(ordered, ordered[1:] + ordered[:1]):
            # open spherical triangle (w, p1, p2) lies inside a single cell
            reps.append(primitive([a + b + c for a, b, c in zip(w, p1, p2)]))
    return reps


WARN_NORMALS = 20


def representative_directions(net: ReactionNetwork) -> DirectionSet:
    """One direction in every face (cell, wall, ray) of the sweep arrangement.

    Every sweep verdict for ``u`` is a function of the signs of ``u . v``
    over the arrangement normals, so the verdict is constant on faces and
    checking these finitely many directions decides the "for all u"
    quantifier.
    """
    n = net.n
    if n > 3:
        raise UnsupportedDimensionError(f"direction enumeration supports n <= 3, got {n}")
    normals = arrangement_normals(net)
    if len(normals) > WARN_NORMALS:
        log.warning("%d arrangement normals; enumeration grows quadratically", len(normals))
    if n == 1:
        reps = [(1,), (-1,)]
    elif n == 2:
        reps = _directions_2d(normals)
    else:
        reps = _directions_3d(normals)
    uniq = sorted(set(reps))
    return DirectionSet(tuple(uniq), tuple(normals))


def sign_vector(u, normals) -> tuple[int, ...]:
    out = []
    for v in normals:
        d = dot(u, v)
        out.append((d > 0) - (d < 0))
    return tuple(out)


def source_hull(net: ReactionNetwork) -> Polytope:
    return convex_hull(net.sources())


__all__ = [
    "Polytope",
    "SupportData",
    "DirectionSet",
    "UnsupportedDimensionError",
    "convex_hull",
    "is_strictly_interior",
    "support_minimizers",
    "representative_directions",
    "arrangement_normals",
    "sign_vector",
    "source_hull",
]
