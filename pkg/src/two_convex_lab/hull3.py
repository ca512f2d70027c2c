"""Incremental 3-D convex hull with exact rational orientation predicates.

Input points live in a rational 3-D coordinate system (the slicing module
maps hyperplane points there).  Flat input is not an error: the hull is
returned with ``planar=True`` plus its spanning plane and ordered boundary
polygon, which is what the downstream Theorem-branch routing needs.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple

from .errors import CollinearAll, InternalError, PlanarHull, TooFewPoints
from .exact import cross2, cross3, dot, is_zero_vec, vadd, vscale, vsub

ORIGIN_W = None


class Face(NamedTuple):
    indices: tuple          # (i, j, k) into the point list, outward ccw
    normal: tuple           # outward normal m
    offset: object          # c with <m, y> <= c for all hull points


@dataclass
class ConvexHull3:
    points: list            # all input points (3-D rational tuples)
    planar: bool
    faces: list             # Face list; empty when planar
    vertex_indices: list    # indices of points that are hull vertices
    plane_normal: tuple = None    # set when planar
    plane_offset: object = None
    polygon: list = None          # ordered boundary indices when planar

    def contains(self, y) -> bool:
        """Closed membership test against the face half-spaces."""
        if self.planar:
            if dot(self.plane_normal, y) != self.plane_offset:
                return False
            poly = [self.points[i] for i in self.polygon]
            u, v = _planar_frame(self.plane_normal)
            py = (dot(u, y), dot(v, y))
            pp = [(dot(u, q), dot(v, q)) for q in poly]
            n = len(pp)
            return all(
                cross2(vsub(pp[(i + 1) % n], pp[i]), vsub(py, pp[i])) >= 0
                for i in range(n)
            )
        return all(dot(f.normal, y) <= f.offset for f in self.faces)

    def strictly_contains(self, y) -> bool:
        if self.planar:
            return False
        return all(dot(f.normal, y) < f.offset for f in self.faces)


def _planar_frame(normal):
    """Two exact direction vectors spanning the plane with the given normal."""
    if normal[0] != 0 or normal[1] != 0:
        u = (-normal[1], normal[0], normal[0] * 0)
    else:
        u = (normal[2], normal[2] * 0, -normal[0])
    v = cross3(normal, u)
    return u, v


def convex_hull_3d(points) -> ConvexHull3:
    """Build the hull by incremental insertion; deterministic in input order."""
    pts = [tuple(p) for p in points]
    if len(pts) < 3:
        raise TooFewPoints(f"need at least 3 points, got {len(pts)}")
    i1 = next((i for i in range(1, len(pts)) if pts[i] != pts[0]), None)
    if i1 is None:
        raise TooFewPoints("all points coincide")
    i2 = next(
        (
            i
            for i in range(1, len(pts))
            if not is_zero_vec(cross3(vsub(pts[i1], pts[0]), vsub(pts[i], pts[0])))
        ),
        None,
    )
    if i2 is None:
        raise CollinearAll("all points are collinear")
    normal = cross3(vsub(pts[i1], pts[0]), vsub(pts[i2], pts[0]))
    offset = dot(normal, pts[0])
    i3 = next((i for i in range(1, len(pts)) if dot(normal, pts[i]) != offset), None)
    if i3 is None:
        return _planar_hull(pts, normal, offset)

    base = [0, i1, i2, i3]
    ref = vscale(1, tuple(sum(pts[i][k] for i in base) / 4 for k in range(3)))
    faces = []
    for combo in ((0, 1, 2), (0, 1, 3), (0, 2, 3), (1, 2, 3)):
        tri = tuple(base[c] for c in combo)
        faces.append(_make_face(pts, tri, ref))
    for p in range(len(pts)):
        if p in base:
            continue
        pt = pts[p]
        visible = [f for f in faces if dot(f.normal, pt) > f.offset]
        if not visible:
            continue
        visible_set = {f.indices for f in visible}
        directed = set()
        for f in visible:
            a, b, c = f.indices
            directed.update(((a, b), (b, c), (c, a)))
        horizon = [(u, v) for (u, v) in directed if (v, u) not in directed]
        faces = [f for f in faces if f.indices not in visible_set]
        for (u, v) in horizon:
            faces.append(_make_face(pts, (u, v, p), ref))
    vertex_indices = sorted({i for f in faces for i in f.indices})
    hull = ConvexHull3(points=pts, planar=False, faces=faces, vertex_indices=vertex_indices)
    if not verify_hull(hull):
        raise InternalError("hull postcondition failed")
    return hull


def _make_face(pts, tri, ref) -> Face:
    a, b, c = tri
    m = cross3(vsub(pts[b], pts[a]), vsub(pts[c], pts[a]))
    off = dot(m, pts[a])
    side = dot(m, ref)
    if side > off:
        tri = (a, c, b)
        m = tuple(-x for x in m)
        off = -off
    elif side == off:
        raise InternalError("interior reference landed on a face plane")
    return Face(tri, m, off)


def _planar_hull(pts, normal, offset) -> ConvexHull3:
    u, v = _planar_frame(normal)
    flat = [(dot(u, p), dot(v, p)) for p in pts]
    order = sorted(range(len(pts)), key=lambda i: flat[i])
    hull_idx = _monotone_chain(flat, order)
    return ConvexHull3(
        points=pts,
        planar=True,
        faces=[],
        vertex_indices=sorted(set(hull_idx)),
        plane_normal=normal,
        plane_offset=offset,
        polygon=hull_idx,
    )


def _monotone_chain(flat, order):
    """Andrew's monotone chain on exact 2-D coordinates; returns ccw indices."""
    uniq = []
    for i in order:
        if not uniq or flat[i] != flat[uniq[-1]]:
            uniq.append(i)
    if len(uniq) == 1:
        return uniq
    lower, upper = [], []
    for i in uniq:
        while len(lower) >= 2 and cross2(
            vsub(flat[lower[-1]], flat[lower[-2]]), vsub(flat[i], flat[lower[-2]])
        ) <= 0:
            lower.pop()
        lower.append(i)
    for i in reversed(uniq):
        while len(upper) >= 2 and cross2(
            vsub(flat[upper[-1]], flat[upper[-2]]), vsub(flat[i], flat[upper[-2]])
        ) <= 0:
            upper.pop()
        upper.append(i)
    return lower[:-1] + upper[:-1]


def verify_hull(hull: ConvexHull3) -> bool:
    """Exact soundness check: every point on or inside every face half-space,
    every face's corners exactly on its plane."""
    if hull.planar:
        return all(dot(hull.plane_normal, p) == hull.plane_offset for p in hull.points)
    for f in hull.faces:
        if any(dot(f.normal, hull.points[i]) != f.offset for i in f.indices):
            return False
        if any(dot(f.normal, p) > f.offset for p in hull.points):
            return False
    return True


def interior_point_3d(hull: ConvexHull3):
    """A rational point strictly inside a non-planar hull.

    The barycenter of the hull vertices works: hull vertices affinely span
    3-space, so no face plane can contain all of them.
    """
    if hull.planar:
        raise PlanarHull("hull is flat; it has no interior")
    vs = [hull.points[i] for i in hull.vertex_indices]
    bary = tuple(sum(p[k] for p in vs) / len(vs) for k in range(3))
    if not hull.strictly_contains(bary):
        # cannot happen for a genuine 3-polytope; fail loudly rather than drift
        raise InternalError("barycenter not strictly interior")
    return bary


def interior_samples(hull: ConvexHull3, per_axis=(0, 1, -1)):
    """Deterministic strictly-interior sample points: the vertex barycenter
    plus half-extent offsets along the coordinate axes, filtered exactly."""
    if hull.planar:
        raise PlanarHull("hull is flat; it has no interior")
    bary = interior_point_3d(hull)
    vs = [hull.points[i] for i in hull.vertex_indices]
    out = [bary]
    for axis in range(3):
        lo = min(p[axis] for p in vs)
        hi = max(p[axis] for p in vs)
        half = (hi - lo) / 4
        for step in per_axis:
            if step == 0:
                continue
            cand = list(bary)
            cand[axis] = bary[axis] + half * step
            cand = tuple(cand)
            if hull.strictly_contains(cand) and cand not in out:
                out.append(cand)
    mids = []
    for v in vs:
        cand = tuple((b + x) / 2 for b, x in zip(bary, v))
        if hull.strictly_contains(cand) and cand not in out:
            mids.append(cand)
    return out + mids
