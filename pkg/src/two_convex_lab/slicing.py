"""Hyperplane slicing of triangulated surfaces: support vertices, the
near-tangent slice, the slice curve, the two sides, and the hull of the curve.

For a strict support vertex p in direction d, the slice offset is the
midpoint of the top two vertex levels, so the hyperplane separates p from
every other vertex and meets no vertex.  The positive side is then exactly
the clipped star of p: a cone over the link polygon of p.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .errors import (
    EmptyIntersection,
    InternalError,
    NotApplicable,
    NotStrictSupport,
    PlanarHull,
    VertexOnSlice,
)
from .exact import dot, is_zero_vec, mat_rank, nullspace, vadd, vec_str, vscale, vsub
from .hull3 import ConvexHull3, convex_hull_3d, interior_point_3d, interior_samples
from .mesh import SimplicialSurface


@dataclass(frozen=True)
class Hyperplane:
    """{x : <normal, x> = offset} in E^4."""

    normal: tuple
    offset: Fraction

    def __post_init__(self):
        if is_zero_vec(self.normal):
            raise ValueError("hyperplane normal must be nonzero")

    def eval(self, p) -> Fraction:
        return dot(self.normal, p) - self.offset

    def to_json(self):
        return {"normal": vec_str(self.normal), "offset": str(self.offset)}


@dataclass(frozen=True)
class SliceFrame:
    """Exact chart between the hyperplane and 3-D slice coordinates.

    Dropping the pivot coordinate is an affine bijection on the hyperplane;
    the pivot coordinate is reconstructed from the plane equation.
    """

    hyperplane: Hyperplane
    pivot: int

    def to3(self, p4):
        return tuple(c for k, c in enumerate(p4) if k != self.pivot)

    def to4(self, p3):
        n = self.hyperplane.normal
        rest = sum(
            n[k] * p3[i] for i, k in enumerate(k for k in range(4) if k != self.pivot)
        )
        out = list(p3)
        out.insert(self.pivot, (self.hyperplane.offset - rest) / n[self.pivot])
        return tuple(out)

    def lift_direction(self, d3):
        """Lift a 3-D direction to a hyperplane-tangent direction in E^4."""
        n = self.hyperplane.normal
        rest = sum(
            n[k] * d3[i] for i, k in enumerate(k for k in range(4) if k != self.pivot)
        )
        out = list(d3)
        out.insert(self.pivot, -rest / n[self.pivot])
        return tuple(out)


def frame_for(hyperplane: Hyperplane) -> SliceFrame:
    pivot = next(k for k in range(4) if hyperplane.normal[k] != 0)
    return SliceFrame(hyperplane, pivot)


@dataclass
class PolygonalCurve:
    """Closed polygonal chain in E^4, all points exactly on one hyperplane."""

    points: list
    closed: bool = True

    @property
    def segment_count(self) -> int:
        return len(self.points) if self.closed else len(self.points) - 1

    def segments(self):
        n = len(self.points)
        last = n if self.closed else n - 1
        for i in range(last):
            yield self.points[i], self.points[(i + 1) % n]


@dataclass
class SideComplex:
    """One side of the slice, as a polyhedral complex built from whole
    triangles, clipped pieces, partial edges and the cut segments."""

    sign: int
    full_triangles: list
    cut_triangles: list
    vertex_count: int
    edge_count: int
    face_count: int

    @property
    def euler_characteristic(self) -> int:
        return self.vertex_count - self.edge_count + self.face_count

    def to_json(self):
        return {
            "sign": self.sign,
            "full_triangles": list(self.full_triangles),
            "cut_triangles": list(self.cut_triangles),
            "vertices": self.vertex_count,
            "edges": self.edge_count,
            "faces": self.face_count,
            "euler_characteristic": self.euler_characteristic,
        }


@dataclass
class SliceHull:
    """Convex hull of the slice curve inside the slicing hyperplane."""

    hull: ConvexHull3
    frame: SliceFrame

    @property
    def planar(self) -> bool:
        return self.hull.planar

    def to_json(self):
        out = {"planar": self.hull.planar, "vertex_indices": list(self.hull.vertex_indices)}
        if self.hull.planar:
            out["plane_normal"] = vec_str(self.hull.plane_normal)
            out["plane_offset"] = str(self.hull.plane_offset)
            out["polygon"] = list(self.hull.polygon)
        else:
            out["faces"] = [
                {
                    "indices": list(f.indices),
                    "normal": vec_str(f.normal),
                    "offset": str(f.offset),
                }
                for f in self.hull.faces
            ]
        return out


@dataclass
class SlicingResult:
    pi: Hyperplane
    frame: SliceFrame
    curves: list
    s_plus: SideComplex
    s_minus: SideComplex
    support_vertex: int = None
    cone: bool = False
    hull: SliceHull = None

    @property
    def gamma(self):
        return self.curves[0] if len(self.curves) == 1 else None

    @property
    def k(self):
        g = self.gamma
        return g.segment_count if g is not None else None

    def to_json(self):
        return {
            "pi": self.pi.to_json(),
            "curves": [[vec_str(p) for p in c.points] for c in self.curves],
            "k": self.k,
            "support_vertex": self.support_vertex,
            "cone": self.cone,
            "s_plus": self.s_plus.to_json(),
            "s_minus": self.s_minus.to_json(),
            "hull": self.hull.to_json() if self.hull else None,
        }

    def plot_rows(self):
        """Plain-text plot data: the curve in the first two slice coordinates."""
        rows = []
        for c in self.curves:
            for p in c.points + (c.points[:1] if c.closed else []):
                q = self.frame.to3(p)
                rows.append(f"{q[0]} {q[1]}")
            rows.append("")
        return "\n".join(rows).rstrip("\n") + "\n"


# ---------------------------------------------------------------- operations

def find_support_vertex(surface: SimplicialSurface, direction):
    """Vertex maximizing <x, direction>; ties broken by lexicographically
    smallest coordinates.  Returns (index, strict)."""
    d = tuple(Fraction(c) for c in direction)
    if is_zero_vec(d):
        raise ValueError("direction must be nonzero")
    values = [dot(p, d) for p in surface.vertices]
    top = max(values)
    winners = [i for i, v in enumerate(values) if v == top]
    best = min(winners, key=lambda i: surface.vertices[i])
    return best, len(winners) == 1


def choose_slice(surface: SimplicialSurface, p: int, direction) -> Hyperplane:
    """Near-tangent hyperplane: offset midway between the top two levels."""
    d = tuple(Fraction(c) for c in direction)
    values = [dot(q, d) for q in surface.vertices]
    top = values[p]
    if any(v >= top for i, v in enumerate(values) if i != p):
        raise NotStrictSupport(
            f"vertex {p} is not a strict support vertex for this direction"
        )
    second = max(v for i, v in enumerate(values) if i != p)
    return Hyperplane(d, (top + second) / 2)


def slice_surface(surface: SimplicialSurface, pi: Hyperplane) -> SlicingResult:
    """Cut every mixed triangle along an exact segment and chain the segments
    into closed curves; no vertex may lie on the hyperplane."""
    levels = [pi.eval(p) for p in surface.vertices]
    for i, lv in enumerate(levels):
        if lv == 0:
            raise VertexOnSlice(f"vertex {i} lies exactly on the slice hyperplane")
    above = [lv > 0 for lv in levels]
    cut_points = {}
    for e, (a, b) in enumerate(surface.edges):
        if above[a] != above[b]:
            t = levels[a] / (levels[a] - levels[b])
            cut_points[(a, b)] = vadd(
                surface.vertices[a], vscale(t, vsub(surface.vertices[b], surface.vertices[a]))
            )
    if not cut_points:
        raise EmptyIntersection("the hyperplane misses the surface")

    cut_tris = []
    tri_cut_edges = {}
    for ti, t in enumerate(surface.triangles):
        mixed = []
        for (u, v) in t.directed_edges():
            key = (u, v) if u < v else (v, u)
            if key in cut_points:
                mixed.append(key)
        if mixed:
            if len(mixed) != 2:
                raise InternalError("a cut triangle must have exactly two cut edges")
            cut_tris.append(ti)
            tri_cut_edges[ti] = tuple(mixed)

    curves = _chain_curves(surface, pi, cut_points, tri_cut_edges)
    s_plus = _side_complex(surface, above, cut_points, cut_tris, True)
    s_minus = _side_complex(surface, above, cut_points, cut_tris, False)

    result = SlicingResult(
        pi=pi,
        frame=frame_for(pi),
        curves=curves,
        s_plus=s_plus,
        s_minus=s_minus,
    )
    plus_verts = [i for i, a in enumerate(above) if a]
    if len(plus_verts) == 1 and len(curves) == 1:
        p = plus_verts[0]
        k = curves[0].segment_count
        star_ok = (
            not s_plus.full_triangles
            and len(s_plus.cut_triangles) == k
            and k == surface.valence(p)
            and s_plus.euler_characteristic == 1
        )
        if not star_ok:
            raise InternalError("support-vertex slice is not the expected star cone")
        result.support_vertex = p
        result.cone = True
    if len(curves) == 1 and len(curves[0].points) >= 3:
        result.hull = convex_hull_in_slice(curves[0], result.frame)
    return result


def _chain_curves(surface, pi, cut_points, tri_cut_edges):
    """Cut segments form a 1-manifold (every cut edge joins exactly two cut
    triangles), so walking edge-triangle-edge yields disjoint closed loops."""
    edge_to_tris = {}
    for ti, (e1, e2) in tri_cut_edges.items():
        edge_to_tris.setdefault(e1, []).append(ti)
        edge_to_tris.setdefault(e2, []).append(ti)
    for e, ts in edge_to_tris.items():
        if len(ts) != 2:
            raise InternalError(f"cut edge {e} is not shared by two cut triangles")
    unvisited = set(cut_points)
    curves = []
    while unvisited:
        start = min(unvisited)
        pts = []
        prev_tri = None
        cur = start
        while True:
            pts.append(cut_points[cur])
            unvisited.discard(cur)
            nxt_tri = min(t for t in edge_to_tris[cur] if t != prev_tri) if prev_tri is None \
                else next(t for t in edge_to_tris[cur] if t != prev_tri)
            e1, e2 = tri_cut_edges[nxt_tri]
            cur, prev_tri = (e2 if e1 == cur else e1), nxt_tri
            if cur == start:
                break
        for p in pts:
            if pi.eval(p) != 0:
                raise InternalError("cut point drifted off the hyperplane")
        curves.append(PolygonalCurve(pts, closed=True))
    return curves


def _side_complex(surface, above, cut_points, cut_tris, plus: bool):
    on_side = [a == plus for a in above]
    full_tris = [
        ti
        for ti, t in enumerate(surface.triangles)
        if on_side[t.a] and on_side[t.b] and on_side[t.c]
    ]
    cut = list(cut_tris)
    n_cut_edges = len(cut_points)
    full_edges = sum(1 for (a, b) in surface.edges if on_side[a] and on_side[b])
    n_vertices = sum(on_side) + n_cut_edges
    n_edges = full_edges + n_cut_edges + len(cut)
    n_faces = len(full_tris) + len(cut)
    return SideComplex(
        sign=1 if plus else -1,
        full_triangles=full_tris,
        cut_triangles=cut,
        vertex_count=n_vertices,
        edge_count=n_edges,
        face_count=n_faces,
    )


def curve_hyperplane(gamma: PolygonalCurve) -> Hyperplane:
    """A hyperplane containing every curve point (error if none exists)."""
    p0 = gamma.points[0]
    vecs = [vsub(p, p0) for p in gamma.points[1:]]
    if vecs and mat_rank(vecs) >= 4:
        raise NotApplicable("curve does not lie in any hyperplane")
    basis = nullspace(vecs, 4) if vecs else nullspace([(1, 0, 0, 0)], 4)
    normal = basis[0]
    return Hyperplane(normal, dot(normal, p0))


def convex_hull_in_slice(gamma: PolygonalCurve, frame: SliceFrame = None) -> SliceHull:
    """Exact 3-D convex hull of the curve inside its hyperplane.

    A flat curve yields a planar-flagged hull, which routes the downstream
    configuration search to its single-line branch.
    """
    if frame is None:
        frame = frame_for(curve_hyperplane(gamma))
    pts3 = [frame.to3(p) for p in gamma.points]
    hull = convex_hull_3d(pts3)
    return SliceHull(hull=hull, frame=frame)


def interior_point(hull: SliceHull, seed: int = 0):
    """A rational point of E^4 strictly inside the hull (PlanarHull if flat)."""
    if hull.planar:
        raise PlanarHull("hull is flat; no interior point exists")
    return hull.frame.to4(interior_point_3d(hull.hull))


def interior_points(hull: SliceHull):
    """Deterministic strictly-interior candidates, lifted to E^4."""
    return [hull.frame.to4(p) for p in interior_samples(hull.hull)]


def curve_slice_fixture(points4) -> SlicingResult:
    """Wrap a closed curve lying in a hyperplane as a slice-shaped fixture.

    Used by tests and the link-word CLI to drive the configuration search on
    synthetic curves; the side complexes are empty placeholders.
    """
    gamma = PolygonalCurve([tuple(Fraction(c) for c in p) for p in points4])
    pi = curve_hyperplane(gamma)
    frame = frame_for(pi)
    empty_plus = SideComplex(1, [], [], 0, 0, 0)
    empty_minus = SideComplex(-1, [], [], 0, 0, 0)
    result = SlicingResult(
        pi=pi, frame=frame, curves=[gamma], s_plus=empty_plus, s_minus=empty_minus
    )
    if len(gamma.points) >= 3:
        result.hull = convex_hull_in_slice(gamma, frame)
    return result
