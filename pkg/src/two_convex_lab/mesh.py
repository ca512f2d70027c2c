"""Closed triangulated surfaces embedded in E^4 with exact rational coordinates.

A surface is immutable once built: validation, homology, slicing and the
convexity search all treat it as a shared read-only value, so everything
here is safe to use concurrently.
"""

from __future__ import annotations

from fractions import Fraction
from typing import NamedTuple

from .errors import (
    DegenerateTriangle,
    DuplicateVertex,
    IndexOutOfRange,
    InternalError,
    NonManifold,
    NotClosed,
    OffSyntaxError,
    ResolutionTooSmall,
    UnknownBuiltin,
)
from .exact import dot, frac, mat_rank, solve_linear, vsub

Point4 = tuple  # (x1, x2, x3, x4), all Fractions


def point4(x1, x2, x3, x4) -> Point4:
    return (frac(x1), frac(x2), frac(x3), frac(x4))


class Triangle(NamedTuple):
    """Oriented triangle, stored in the canonical rotation (a is the
    smallest index; the cyclic order carries the orientation)."""

    a: int
    b: int
    c: int

    @classmethod
    def make(cls, i: int, j: int, k: int) -> "Triangle":
        if i == j or j == k or i == k:
            raise DegenerateTriangle(f"repeated vertex index in ({i}, {j}, {k})")
        if i <= j and i <= k:
            return cls(i, j, k)
        if j <= i and j <= k:
            return cls(j, k, i)
        return cls(k, i, j)

    def directed_edges(self):
        return ((self.a, self.b), (self.b, self.c), (self.c, self.a))

    def vertex_set(self):
        return frozenset(self)


class SimplicialSurface:
    """Triangle mesh in E^4; edges and incidences are derived on construction.

    Construction performs only structural checks (index ranges, distinct
    triangle corners); the full manifold/closedness contract is enforced by
    :func:`validate`.
    """

    def __init__(self, vertices, triangles):
        self.vertices = tuple(tuple(frac(x) for x in p) for p in vertices)
        for p in self.vertices:
            if len(p) != 4:
                raise ValueError("vertices must have 4 coordinates")
        tris = []
        n = len(self.vertices)
        for t in triangles:
            i, j, k = t
            for idx in (i, j, k):
                if not 0 <= idx < n:
                    raise IndexOutOfRange(f"vertex index {idx} out of range 0..{n - 1}")
            tris.append(Triangle.make(i, j, k))
        self.triangles = tuple(tris)
        edge_tris: dict[tuple[int, int], list[int]] = {}
        for ti, t in enumerate(self.triangles):
            for u, v in t.directed_edges():
                key = (u, v) if u < v else (v, u)
                edge_tris.setdefault(key, []).append(ti)
        self.edges = tuple(sorted(edge_tris))
        self.edge_index = {e: i for i, e in enumerate(self.edges)}
        self.edge_triangles = {e: tuple(ts) for e, ts in edge_tris.items()}

    def __eq__(self, other):
        return (
            isinstance(other, SimplicialSurface)
            and self.vertices == other.vertices
            and self.triangles == other.triangles
        )

    def __hash__(self):
        return hash((self.vertices, self.triangles))

    @property
    def vertex_count(self):
        return len(self.vertices)

    @property
    def edge_count(self):
        return len(self.edges)

    @property
    def triangle_count(self):
        return len(self.triangles)

    def valence(self, v: int) -> int:
        return sum(1 for (a, b) in self.edges if a == v or b == v)

    def vertex_triangles(self, v: int):
        return [ti for ti, t in enumerate(self.triangles) if v in t]

    def bounding_box(self):
        mins = [min(p[i] for p in self.vertices) for i in range(4)]
        maxs = [max(p[i] for p in self.vertices) for i in range(4)]
        return tuple(mins), tuple(maxs)


class MeshReport(NamedTuple):
    vertex_count: int
    edge_count: int
    triangle_count: int
    euler_characteristic: int
    orientable: bool
    max_valence: int
    pl5_ok: bool
    gauss_bonnet_sum: int

    def to_json(self):
        return {
            "vertices": self.vertex_count,
            "edges": self.edge_count,
            "triangles": self.triangle_count,
            "euler_characteristic": self.euler_characteristic,
            "orientable": self.orientable,
            "max_valence": self.max_valence,
            "pl5_ok": self.pl5_ok,
            "gauss_bonnet_sum": self.gauss_bonnet_sum,
        }


def triangle_points(surface: SimplicialSurface, ti: int):
    t = surface.triangles[ti]
    return (surface.vertices[t.a], surface.vertices[t.b], surface.vertices[t.c])


def triangle_contains_point(surface: SimplicialSurface, ti: int, x: Point4) -> bool:
    """Closed exact test: does x lie on triangle ti (boundary included)?"""
    p, q, r = triangle_points(surface, ti)
    for k in range(4):
        lo = min(p[k], q[k], r[k])
        if x[k] < lo:
            return False
        hi = max(p[k], q[k], r[k])
        if x[k] > hi:
            return False
    u, v, w = vsub(q, p), vsub(r, p), vsub(x, p)
    sol = solve_linear([(u[i], v[i]) for i in range(4)], w)
    if sol is None:
        return False
    mu, nu = sol
    # the solver returns a least-structure solution; re-check consistency
    if any(mu * u[i] + nu * v[i] != w[i] for i in range(4)):
        return False
    return mu >= 0 and nu >= 0 and mu + nu <= 1


def surface_contains_point(surface: SimplicialSurface, x: Point4) -> bool:
    return any(
        triangle_contains_point(surface, ti, x) for ti in range(surface.triangle_count)
    )


# ------------------------------------------------------------------ validate

def validate(surface: SimplicialSurface) -> MeshReport:
    """Check the closed-2-manifold contract and measure the mesh.

    Raises NonManifold / DegenerateTriangle / DuplicateVertex on violations;
    degenerate or duplicate input is rejected, never repaired.
    """
    if not surface.triangles:
        raise NotClosed("surface has no triangles")
    seen_coords = {}
    for i, p in enumerate(surface.vertices):
        if p in seen_coords:
            raise DuplicateVertex(f"vertices {seen_coords[p]} and {i} share coordinates")
        seen_coords[p] = i
    seen_tris = {}
    for ti, t in enumerate(surface.triangles):
        key = t.vertex_set()
        if key in seen_tris:
            raise NonManifold(f"triangles {seen_tris[key]} and {ti} share a vertex set")
        seen_tris[key] = ti
        p, q, r = triangle_points(surface, ti)
        if mat_rank([vsub(q, p), vsub(r, p)]) < 2:
            raise DegenerateTriangle(f"triangle {ti} is affinely degenerate")
    for e, ts in surface.edge_triangles.items():
        if len(ts) != 2:
            raise NonManifold(f"edge {e} is incident to {len(ts)} triangles")
    _check_vertex_links(surface)
    orientable = _orientation_propagates(surface)

    v = surface.vertex_count
    e = surface.edge_count
    f = surface.triangle_count
    chi = v - e + f
    valences = [0] * v
    for (a, b) in surface.edges:
        valences[a] += 1
        valences[b] += 1
    max_valence = max(valences)
    gb = sum(6 - d for d in valences)
    if gb != 6 * chi:
        raise InternalError("combinatorial Gauss-Bonnet identity failed")
    pl5_ok = max_valence <= 5
    if pl5_ok and chi <= 0:
        # each term 6 - deg(v) >= 1, so the sum 6*chi is >= V > 0
        raise InternalError("PL(5) mesh with chi <= 0 slipped through")
    return MeshReport(v, e, f, chi, orientable, max_valence, pl5_ok, gb)


def _check_vertex_links(surface: SimplicialSurface):
    star: dict[int, list[Triangle]] = {}
    for t in surface.triangles:
        for v in t:
            star.setdefault(v, []).append(t)
    for v in range(surface.vertex_count):
        tris = star.get(v)
        if not tris:
            raise NonManifold(f"vertex {v} is isolated")
        link_adj: dict[int, list[int]] = {}
        for t in tris:
            others = [w for w in t if w != v]
            a, b = others
            link_adj.setdefault(a, []).append(b)
            link_adj.setdefault(b, []).append(a)
        if any(len(nb) != 2 for nb in link_adj.values()):
            raise NonManifold(f"link of vertex {v} is not a union of cycles")
        start = next(iter(link_adj))
        prev, cur = None, start
        count = 0
        while True:
            count += 1
            nxt = [w for w in link_adj[cur] if w != prev]
            # travel the cycle; a doubled neighbor means prev appears twice
            step = nxt[0] if nxt else prev
            prev, cur = cur, step
            if cur == start:
                break
            if count > len(link_adj):
                raise NonManifold(f"link of vertex {v} does not close up")
        if count != len(link_adj):
            raise NonManifold(f"link of vertex {v} is not a single cycle")


def _orientation_propagates(surface: SimplicialSurface) -> bool:
    """Try to orient all triangles consistently across the dual graph."""
    direction: dict[tuple[int, int], list[tuple[int, bool]]] = {}
    for ti, t in enumerate(surface.triangles):
        for (u, v) in t.directed_edges():
            key = (u, v) if u < v else (v, u)
            direction.setdefault(key, []).append((ti, u < v))
    flip = [None] * surface.triangle_count
    orientable = True
    for seed in range(surface.triangle_count):
        if flip[seed] is not None:
            continue
        flip[seed] = False
        stack = [seed]
        while stack:
            ti = stack.pop()
            t = surface.triangles[ti]
            for (u, v) in t.directed_edges():
                key = (u, v) if u < v else (v, u)
                for (tj, fwd_j) in direction[key]:
                    if tj == ti:
                        continue
                    fwd_i = u < v
                    # compatible orientation traverses the shared edge in
                    # opposite directions, accounting for flips
                    need_flip = not (fwd_i != fwd_j)
                    want = flip[ti] != need_flip
                    if flip[tj] is None:
                        flip[tj] = want
                        stack.append(tj)
                    elif flip[tj] != want:
                        orientable = False
    return orientable


# ------------------------------------------------------------------ builtins

def circle_points(n: int):
    """n distinct rational points on the unit circle in cyclic order.

    Uses the tangent-half-angle parametrization twice: t_k = k/(n-k) gives a
    monotone sweep of the half-angle over [0, pi), and angle doubling lands
    the points on the full circle in increasing angular order.
    """
    pts = []
    for k in range(n):
        t = Fraction(k, n - k)
        p, q = t.numerator, t.denominator
        den = p * p + q * q
        c = Fraction(q * q - p * p, den)
        s = Fraction(2 * p * q, den)
        pts.append((c * c - s * s, 2 * c * s))
    return pts


def torus_grid(nx: int, ny: int, big_radius=2, small_radius=1) -> SimplicialSurface:
    """Product-of-circles torus: an nx-by-ny grid triangulation in E^4."""
    if nx < 3 or ny < 3:
        raise ResolutionTooSmall("torus grid needs resolution >= 3")
    cx = circle_points(nx)
    cy = circle_points(ny)
    rb, rs = frac(big_radius), frac(small_radius)
    verts = []
    for i in range(nx):
        for j in range(ny):
            verts.append((rb * cx[i][0], rb * cx[i][1], rs * cy[j][0], rs * cy[j][1]))

    def vid(i, j):
        return (i % nx) * ny + (j % ny)

    tris = []
    for i in range(nx):
        for j in range(ny):
            a, b = vid(i, j), vid(i + 1, j)
            c, d = vid(i + 1, j + 1), vid(i, j + 1)
            tris.append((a, b, c))
            tris.append((a, c, d))
    return SimplicialSurface(verts, tris)


def _octahedron() -> SimplicialSurface:
    verts = [
        point4(1, 0, 0, 0),
        point4(-1, 0, 0, 0),
        point4(0, 1, 0, 0),
        point4(0, -1, 0, 0),
        point4(0, 0, 1, 0),
        point4(0, 0, -1, 0),
    ]
    xs, ys, zs = (0, 1), (2, 3), (4, 5)
    tris = []
    for sx in range(2):
        for sy in range(2):
            for sz in range(2):
                t = (xs[sx], ys[sy], zs[sz])
                if (sx + sy + sz) % 2:
                    t = (t[0], t[2], t[1])
                tris.append(t)
    return SimplicialSurface(verts, tris)


_P2_TRIANGLES = [
    (0, 1, 4), (0, 1, 5), (0, 2, 3), (0, 2, 5), (0, 3, 4),
    (1, 2, 3), (1, 2, 4), (1, 3, 5), (2, 4, 5), (3, 4, 5),
]


def _projective_plane() -> SimplicialSurface:
    # moment-curve coordinates: any three distinct curve points are affinely
    # independent, so no triangle can degenerate
    verts = [point4(t, t * t, t ** 3, t ** 4) for t in range(1, 7)]
    return SimplicialSurface(verts, _P2_TRIANGLES)


def _klein_bottle(n: int) -> SimplicialSurface:
    """Grid Klein bottle glued with a flip, embedded in E^4.

    The twisted direction uses half-angle circle points so the standard
    tube-with-reversal embedding ((R+cos v)cos u, (R+cos v)sin u,
    sin v cos(u/2), sin v sin(u/2)) stays rational; it satisfies
    f(u + 2pi, -v) = f(u, v), matching the gluing.
    """
    if n < 4:
        raise ResolutionTooSmall("klein bottle grid needs resolution >= 4")
    half = []
    for i in range(n):
        t = Fraction(i, n - i)
        p, q = t.numerator, t.denominator
        den = p * p + q * q
        half.append((Fraction(q * q - p * p, den), Fraction(2 * p * q, den)))
    cv = circle_points(n)
    rb = frac(2)
    verts = []
    for i in range(n):
        hx, hy = half[i]
        cu, su = hx * hx - hy * hy, 2 * hx * hy
        for j in range(n):
            c, s = cv[j]
            verts.append(((rb + c) * cu, (rb + c) * su, s * hx, s * hy))

    def vid(i, j):
        j %= n
        if i >= n:
            i -= n
            j = (n - j) % n
        return i * n + j

    tris = []
    for i in range(n):
        for j in range(n):
            a, b = vid(i, j), vid(i + 1, j)
            c, d = vid(i + 1, j + 1), vid(i, j + 1)
            tris.append((a, b, c))
            tris.append((a, c, d))
    return SimplicialSurface(verts, tris)


def _flat_torus_apex5(n: int) -> SimplicialSurface:
    """Flat torus grid with one diagonal flipped so vertex (0,0) has valence 5.

    The grid has valence 6 everywhere; flipping the (0,0)-(1,1) diagonal to
    (1,0)-(0,1) drops the valence at (0,0) and (1,1) to 5, which makes the
    support-vertex slice there a 5-segment cone.
    """
    base = torus_grid(n, n)

    def vid(i, j):
        return (i % n) * n + (j % n)

    a, b, c, d = vid(0, 0), vid(1, 0), vid(1, 1), vid(0, 1)
    removed = {frozenset((a, b, c)), frozenset((a, c, d))}
    tris = [tuple(t) for t in base.triangles if t.vertex_set() not in removed]
    tris.append((a, b, d))
    tris.append((b, c, d))
    return SimplicialSurface(base.vertices, tris)


BUILTIN_NAMES = (
    "octahedron_s2",
    "clifford_torus",
    "flat_torus_grid",
    "flat_torus_apex5",
    "klein_bottle",
    "projective_plane_min",
)


def generate_builtin(name: str, resolution: int = 0) -> SimplicialSurface:
    """Construct a named builtin surface; resolution applies to the grids."""
    if name == "octahedron_s2":
        surf = _octahedron()
    elif name == "clifford_torus":
        if resolution < 3:
            raise ResolutionTooSmall("clifford_torus needs resolution >= 3")
        surf = torus_grid(resolution, resolution, 1, 1)
    elif name == "flat_torus_grid":
        if resolution < 3:
            raise ResolutionTooSmall("flat_torus_grid needs resolution >= 3")
        surf = torus_grid(resolution, resolution)
    elif name == "flat_torus_apex5":
        if resolution < 4:
            raise ResolutionTooSmall("flat_torus_apex5 needs resolution >= 4")
        surf = _flat_torus_apex5(resolution)
    elif name == "klein_bottle":
        surf = _klein_bottle(resolution if resolution else 4)
    elif name == "projective_plane_min":
        surf = _projective_plane()
    else:
        raise UnknownBuiltin(f"unknown builtin {name!r}; choose from {BUILTIN_NAMES}")
    validate(surf)
    return surf


# ------------------------------------------------------------------- OFF4 IO

def parse_off4(text: str) -> SimplicialSurface:
    """Parse the OFF4 text format (see :func:`write_off4` for the grammar)."""
    rows = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        body = raw.split("#", 1)[0].strip()
        if body:
            rows.append((lineno, body))
    if not rows:
        raise OffSyntaxError(1, "empty file")
    it = iter(rows)
    lineno, header = next(it)
    if header != "OFF4":
        raise OffSyntaxError(lineno, f"expected 'OFF4' header, got {header!r}")
    try:
        lineno, counts = next(it)
    except StopIteration:
        raise OffSyntaxError(lineno, "missing vertex/face count line") from None
    parts = counts.split()
    if len(parts) != 2 or not all(p.isdigit() for p in parts):
        raise OffSyntaxError(lineno, "count line must be '<V> <F>'")
    nv, nf = int(parts[0]), int(parts[1])
    verts = []
    for _ in range(nv):
        try:
            lineno, row = next(it)
        except StopIteration:
            raise OffSyntaxError(lineno, "unexpected end of file in vertex block") from None
        toks = row.split()
        if len(toks) != 4:
            raise OffSyntaxError(lineno, f"expected 4 coordinates, got {len(toks)}")
        try:
            verts.append(tuple(Fraction(t) for t in toks))
        except (ValueError, ZeroDivisionError):
            raise OffSyntaxError(lineno, f"bad rational coordinate in {row!r}") from None
    tris = []
    for _ in range(nf):
        try:
            lineno, row = next(it)
        except StopIteration:
            raise OffSyntaxError(lineno, "unexpected end of file in face block") from None
        toks = row.split()
        if len(toks) != 4 or toks[0] != "3":
            raise OffSyntaxError(lineno, "face lines must read '3 <i> <j> <k>'")
        try:
            idx = [int(t) for t in toks[1:]]
        except ValueError:
            raise OffSyntaxError(lineno, f"bad vertex index in {row!r}") from None
        tris.append(tuple(idx))
    leftover = next(it, None)
    if leftover is not None:
        raise OffSyntaxError(leftover[0], "trailing content after face block")
    return SimplicialSurface(verts, tris)


def write_off4(surface: SimplicialSurface) -> str:
    """Serialize to canonical OFF4 text.

    Grammar: line 1 'OFF4'; line 2 '<V> <F>'; V lines of 4 rational
    coordinates; F lines of '3 i j k' (0-based, canonical rotation).
    '#' starts a comment.  parse(write(s)) == s for every surface.
    """
    out = ["OFF4", f"{surface.vertex_count} {surface.triangle_count}"]
    for p in surface.vertices:
        out.append(" ".join(str(x) for x in p))
    for t in surface.triangles:
        out.append(f"3 {t.a} {t.b} {t.c}")
    return "\n".join(out) + "\n"


def load_off4(path) -> SimplicialSurface:
    with open(path, "r", encoding="utf-8") as fh:
        return parse_off4(fh.read())


def save_off4(surface: SimplicialSurface, path):
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(write_off4(surface))
