"""Avoidance certificates: 2-planes through a query point that provably miss
every triangle of a surface.

The key reduction: the plane {base + s*u + t*v} meets a triangle iff, after
projecting E^4 onto exact coordinates for the orthogonal complement of
span(u, v), the projected base point lies in the projected (possibly
degenerate) triangle.  Avoidance is therefore witnessed per triangle by a
rational functional w with <w,u> = <w,v> = 0 and <w, corner> > <w, base>
for the three corners: w is constant on the plane and strictly larger on
the triangle, so re-checking those inequalities re-proves disjointness.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction

from .errors import DegeneratePlane, InternalError, NotApplicable, PointOnSurface
from .exact import (
    cross3,
    dist2_point_triangle_2d,
    dot,
    mat_rank,
    nullspace,
    orient2,
    point_in_triangle_2d,
    vadd,
    vec_from_strs,
    vec_str,
    vscale,
    vsub,
)
from .hull3 import convex_hull_3d
from .mesh import SimplicialSurface, surface_contains_point, triangle_points

ZERO = Fraction(0)


@dataclass(frozen=True)
class Plane2:
    """Affine 2-plane {base + s*u + t*v} with exactly rank-2 directions."""

    base: tuple
    u: tuple
    v: tuple

    def __post_init__(self):
        if mat_rank([self.u, self.v]) != 2:
            raise DegeneratePlane("direction vectors must be linearly independent")


def complement_basis(u, v):
    """Two exact vectors spanning the orthogonal complement of span(u, v)."""
    basis = nullspace([u, v], 4)
    if len(basis) != 2:
        raise DegeneratePlane("direction span is not 2-dimensional")
    return basis[0], basis[1]


@dataclass
class AvoidanceCertificate:
    plane: Plane2
    functionals: list        # per-triangle separating functionals, index-aligned
    mesh_shape: tuple        # (vertex_count, triangle_count) of the surface

    def to_json(self):
        return {
            "plane": {
                "base": vec_str(self.plane.base),
                "u": vec_str(self.plane.u),
                "v": vec_str(self.plane.v),
            },
            "witnesses": [
                {"triangle": i, "functional": vec_str(w)}
                for i, w in enumerate(self.functionals)
            ],
            "mesh": {"vertices": self.mesh_shape[0], "triangles": self.mesh_shape[1]},
        }

    @classmethod
    def from_json(cls, data):
        plane = Plane2(
            vec_from_strs(data["plane"]["base"]),
            vec_from_strs(data["plane"]["u"]),
            vec_from_strs(data["plane"]["v"]),
        )
        witnesses = sorted(data["witnesses"], key=lambda w: w["triangle"])
        functionals = [vec_from_strs(w["functional"]) for w in witnesses]
        if [w["triangle"] for w in witnesses] != list(range(len(witnesses))):
            raise ValueError("witness list must cover triangles 0..F-1")
        return cls(plane, functionals, (data["mesh"]["vertices"], data["mesh"]["triangles"]))


@dataclass
class Intersection:
    triangle: int
    point: tuple


@dataclass
class NegativeEvidence:
    """Failure to certify.  mode='hyperplane_reduction' is an exact proof
    that no avoiding 2-plane through the point exists; 'sampling_exhausted'
    is explicitly not a proof of anything."""

    mode: str
    details: dict = field(default_factory=dict)

    def to_json(self):
        return {"mode": self.mode, "details": self.details}


@dataclass(frozen=True)
class SearchBudget:
    grid: int = 2000
    refine: int = 8
    link_candidates: int = 400


def _separating_functional_2d(p, a, b, c):
    """A 2-D functional g with <g, corner> > <g, p> for all three corners,
    or None when p lies in the closed hull of {a, b, c}."""
    o = orient2(a, b, c)
    if o != 0:
        for (qa, qb) in ((a, b), (b, c), (c, a)):
            sp = orient2(qa, qb, p)
            if sp != 0 and sp != o:
                d = vsub(qb, qa)
                g = (-d[1], d[0])
                return g if o > 0 else vscale(-1, g)
        return None
    # projected triangle is a segment or a point
    pairs = [(a, b), (b, c), (c, a)]
    qa, qb = max(pairs, key=lambda pr: dot(vsub(pr[1], pr[0]), vsub(pr[1], pr[0])))
    d = vsub(qb, qa)
    if dot(d, d) == 0:
        if p == a:
            return None
        return vsub(a, p)
    side = orient2(qa, qb, p)
    if side != 0:
        g = (-d[1], d[0])
        return g if side < 0 else vscale(-1, g)
    t = dot(vsub(p, qa), d)
    if t < 0:
        return d
    if t > dot(d, d):
        return vscale(-1, d)
    return None


def _lift(g, w1, w2):
    return vadd(vscale(g[0], w1), vscale(g[1], w2))


def plane_avoids_surface(plane: Plane2, surface: SimplicialSurface):
    """Exact decision: AvoidanceCertificate, or the first Intersection found.

    Pure and side-effect free; per-triangle work is independent, so calls may
    run concurrently on shared surfaces.
    """
    w1, w2 = complement_basis(plane.u, plane.v)
    x0 = (dot(w1, plane.base), dot(w2, plane.base))
    functionals = []
    for ti in range(surface.triangle_count):
        p, q, r = triangle_points(surface, ti)
        qa = (dot(w1, p), dot(w2, p))
        qb = (dot(w1, q), dot(w2, q))
        qc = (dot(w1, r), dot(w2, r))
        g = _separating_functional_2d(x0, qa, qb, qc)
        if g is None:
            return Intersection(ti, _intersection_point(x0, (qa, qb, qc), (p, q, r)))
        functionals.append(_lift(g, w1, w2))
    return AvoidanceCertificate(plane, functionals, (surface.vertex_count, surface.triangle_count))


def _intersection_point(x0, proj, corners):
    """A point of the plane-triangle intersection, lifted back to E^4."""
    qa, qb, qc = proj
    den = (qb[0] - qa[0]) * (qc[1] - qa[1]) - (qb[1] - qa[1]) * (qc[0] - qa[0])
    if den != 0:
        la = ((qb[0] - x0[0]) * (qc[1] - x0[1]) - (qb[1] - x0[1]) * (qc[0] - x0[0])) / den
        mu = ((qc[0] - x0[0]) * (qa[1] - x0[1]) - (qc[1] - x0[1]) * (qa[0] - x0[0])) / den
        nu = 1 - la - mu
        return tuple(
            la * corners[0][k] + mu * corners[1][k] + nu * corners[2][k] for k in range(4)
        )
    # degenerate projection: x0 sits between the two extreme projections
    pairs = [(0, 1), (1, 2), (2, 0)]
    i, j = max(
        pairs,
        key=lambda pr: dot(vsub(proj[pr[1]], proj[pr[0]]), vsub(proj[pr[1]], proj[pr[0]])),
    )
    d = vsub(proj[j], proj[i])
    dd = dot(d, d)
    if dd == 0:
        return corners[0]
    t = dot(vsub(x0, proj[i]), d) / dd
    return tuple((1 - t) * corners[i][k] + t * corners[j][k] for k in range(4))


def verify_certificate(cert: AvoidanceCertificate, surface: SimplicialSurface) -> bool:
    """Independent exact re-verification of every witness.

    Only inequality checking happens here: no point-in-triangle predicates,
    so this is a genuinely separate route from the search that produced the
    certificate.
    """
    if cert.mesh_shape != (surface.vertex_count, surface.triangle_count):
        return False
    if len(cert.functionals) != surface.triangle_count:
        return False
    if mat_rank([cert.plane.u, cert.plane.v]) != 2:
        return False
    base = cert.plane.base
    for ti, w in enumerate(cert.functionals):
        if dot(w, cert.plane.u) != 0 or dot(w, cert.plane.v) != 0:
            return False
        level = dot(w, base)
        if any(dot(w, corner) <= level for corner in triangle_points(surface, ti)):
            return False
    return True


def project_and_test(surface: SimplicialSurface, x, directions):
    """Margin of the projected point against the projected surface.

    Returns 0 exactly when the plane x + span(directions) meets some closed
    triangle, else the squared distance to the nearest projected triangle.
    """
    u, v = directions
    w1, w2 = complement_basis(u, v)
    x0 = (dot(w1, x), dot(w2, x))
    best = None
    for ti in range(surface.triangle_count):
        p, q, r = triangle_points(surface, ti)
        qa = (dot(w1, p), dot(w2, p))
        qb = (dot(w1, q), dot(w2, q))
        qc = (dot(w1, r), dot(w2, r))
        if point_in_triangle_2d(x0, qa, qb, qc):
            return ZERO
        d2 = dist2_point_triangle_2d(x0, qa, qb, qc)
        if best is None or d2 < best:
            best = d2
    return best if best is not None else ZERO


# ------------------------------------------------------- candidate direction

_UNIT = [
    (Fraction(1), Fraction(0), Fraction(0), Fraction(0)),
    (Fraction(0), Fraction(1), Fraction(0), Fraction(0)),
    (Fraction(0), Fraction(0), Fraction(1), Fraction(0)),
    (Fraction(0), Fraction(0), Fraction(0), Fraction(1)),
]


def _graded_directions():
    """Nonzero integer vectors, first nonzero positive, by height then lex."""
    for height in (1, 2):
        span = range(-height, height + 1)
        batch = []
        for a in span:
            for b in span:
                for c in span:
                    for d in span:
                        vv = (a, b, c, d)
                        if all(x == 0 for x in vv):
                            continue
                        if max(abs(x) for x in vv) != height:
                            continue
                        first = next(x for x in vv if x != 0)
                        if first < 0:
                            continue
                        batch.append(tuple(Fraction(x) for x in vv))
        batch.sort()
        yield from batch


def plane_span_key(u, v):
    """Canonical key of span(u, v): its reduced row echelon form."""
    m = [list(u), list(v)]
    rank = 0
    for col in range(4):
        piv = next((i for i in range(rank, 2) if m[i][col] != 0), None)
        if piv is None:
            continue
        m[rank], m[piv] = m[piv], m[rank]
        inv = 1 / m[rank][col]
        m[rank] = [x * inv for x in m[rank]]
        for i in range(2):
            if i != rank and m[i][col] != 0:
                f = m[i][col]
                m[i] = [x - f * y for x, y in zip(m[i], m[rank])]
        rank += 1
    return tuple(tuple(row) for row in m)


def grassmann_candidates(limit: int, seed: int = 0):
    """Deterministic stream of rank-2 direction pairs covering Gr(2, 4):
    coordinate planes first, then graded integer pairs, then seeded ones."""
    seen = set()
    produced = 0

    def emit(u, v):
        nonlocal produced
        if mat_rank([u, v]) != 2:
            return None
        key = plane_span_key(u, v)
        if key in seen:
            return None
        seen.add(key)
        produced += 1
        return (u, v)

    for i in range(4):
        for j in range(i + 1, 4):
            out = emit(_UNIT[i], _UNIT[j])
            if out:
                yield out
                if produced >= limit:
                    return
    pool = list(_graded_directions())
    for i in range(len(pool)):
        for j in range(i + 1, len(pool)):
            out = emit(pool[i], pool[j])
            if out:
                yield out
                if produced >= limit:
                    return
    rng = random.Random(seed)
    while produced < limit:
        u = tuple(Fraction(rng.randint(-9, 9)) for _ in range(4))
        v = tuple(Fraction(rng.randint(-9, 9)) for _ in range(4))
        out = emit(u, v)
        if out:
            yield out


# ------------------------------------------------------------- certify_point

@dataclass
class CertifyResult:
    status: str                       # 'certificate' | 'negative'
    certificate: AvoidanceCertificate = None
    evidence: NegativeEvidence = None
    trace: dict = field(default_factory=dict)

    def to_json(self):
        out = {"status": self.status, "trace": self.trace}
        if self.certificate is not None:
            out["certificate"] = self.certificate.to_json()
        if self.evidence is not None:
            out["evidence"] = self.evidence.to_json()
        return out


def certify_point(
    surface: SimplicialSurface, x, budget: SearchBudget = SearchBudget(), seed: int = 0
) -> CertifyResult:
    """Find and exactly verify an avoiding 2-plane through x, or report
    negative evidence.

    Search order: the hyperplane reduction when the whole surface is
    coplanar with x in a hyperplane (its negative answers are conclusive),
    then a deterministic coarse grid over Gr(2, 4), then margin-guided
    refinement.  Candidate evaluations are independent; the first (lowest
    index) success wins, so a concurrent evaluation strategy must keep that
    selection rule to stay deterministic.
    """
    x = tuple(Fraction(c) for c in x)
    if surface_contains_point(surface, x):
        raise PointOnSurface("query point lies on the surface")
    trace = {"seed": seed, "grid_budget": budget.grid, "refine_budget": budget.refine}

    special = _hyperplane_route(surface, x, seed)
    if special is not None:
        special.trace.update(trace)
        return special

    tried = 0
    best_pair = None
    best_score = -1
    for (u, v) in grassmann_candidates(budget.grid, seed):
        tried += 1
        res = plane_avoids_surface(Plane2(x, u, v), surface)
        if isinstance(res, AvoidanceCertificate):
            trace["planes_tried"] = tried
            return CertifyResult(status="certificate", certificate=res, trace=trace)
        # deeper first hit = more triangles cleared; seed for refinement
        if res.triangle > best_score:
            best_score, best_pair = res.triangle, (u, v)
    trace["grid_tried"] = tried
    if best_pair is not None:
        found = _refine(surface, x, best_pair, ZERO, budget.refine, trace)
        if found is not None:
            return found
    trace["planes_tried"] = tried
    return CertifyResult(
        status="negative",
        evidence=NegativeEvidence("sampling_exhausted", {"planes_tried": tried, "seed": seed}),
        trace=trace,
    )


def _conclude(surface, x, pair, trace, tried, margins):
    plane = Plane2(x, pair[0], pair[1])
    res = plane_avoids_surface(plane, surface)
    if not isinstance(res, AvoidanceCertificate):
        raise InternalError("positive margin disagreed with the exact avoidance test")
    trace["planes_tried"] = tried
    trace["last_margins"] = margins[-4:]
    return CertifyResult(status="certificate", certificate=res, trace=trace)


def _refine(surface, x, pair, best_margin, rounds, trace):
    """Greedy local refinement; the best margin is non-decreasing by
    construction (the incumbent is only replaced by strict improvements)."""
    u, v = pair
    best = best_margin
    history = []
    tried = trace.get("grid_tried", 0)
    for rnd in range(1, rounds + 1):
        delta = Fraction(1, 2 ** rnd)
        improved = False
        for d in _UNIT:
            for sgn in (1, -1):
                for target in (0, 1):
                    step = vscale(sgn * delta, d)
                    uu = vadd(u, step) if target == 0 else u
                    vv = vadd(v, step) if target == 1 else v
                    if mat_rank([uu, vv]) != 2:
                        continue
                    tried += 1
                    margin = project_and_test(surface, x, (uu, vv))
                    if margin > best:
                        best, u, v, improved = margin, uu, vv, True
        history.append(str(best))
        if best > 0:
            trace["refine_history"] = history
            return _conclude(surface, x, (u, v), trace, tried, history)
        if not improved:
            break
    trace["refine_history"] = history
    trace["grid_tried"] = tried
    return None


# ------------------------------------------------- the hyperplane reduction

_DIR3 = [
    (1, 0, 0), (0, 1, 0), (0, 0, 1),
    (1, 1, 0), (1, 0, 1), (0, 1, 1), (1, 1, 1),
    (1, -1, 0), (1, 0, -1), (0, 1, -1), (2, 1, 0), (1, 2, 3), (3, 1, 2), (2, 3, 1),
    (1, -2, 3), (5, 2, -1), (7, 3, 2), (1, 4, -3), (3, -5, 2), (9, 1, 4),
]


def _drop(p, pivot):
    return tuple(c for k, c in enumerate(p) if k != pivot)


def _lift_direction(d3, normal, pivot):
    """Insert a pivot component so the lifted vector is tangent to the
    hyperplane {<normal, y> = c}."""
    rest = -sum(normal[k] * d3[i] for i, k in enumerate(k for k in range(4) if k != pivot))
    out = list(d3)
    out.insert(pivot, rest / normal[pivot])
    return tuple(out)


def surface_hyperplane(surface: SimplicialSurface):
    """(normal, offset) of a hyperplane containing all vertices, or None."""
    p0 = surface.vertices[0]
    vecs = [vsub(p, p0) for p in surface.vertices[1:]]
    if not vecs or mat_rank(vecs) >= 4:
        return None
    basis = nullspace(vecs, 4)
    normal = basis[0]
    return normal, dot(normal, p0)


def _hyperplane_route(surface, x, seed):
    hp = surface_hyperplane(surface)
    if hp is None:
        return None
    normal, offset = hp
    if dot(normal, x) != offset:
        # x is off the hyperplane: any plane through x parallel to it works
        dirs = nullspace([normal], 4)
        plane = Plane2(x, dirs[0], dirs[1])
        res = plane_avoids_surface(plane, surface)
        if not isinstance(res, AvoidanceCertificate):
            raise InternalError("parallel plane unexpectedly met the surface")
        return CertifyResult(status="certificate", certificate=res,
                             trace={"route": "parallel_to_hyperplane"})
    outcome = reduce_in_hyperplane(surface, x, seed=seed)
    if isinstance(outcome, NegativeEvidence):
        return CertifyResult(status="negative", evidence=outcome,
                             trace={"route": "hyperplane_reduction"})
    return CertifyResult(status="certificate", certificate=outcome,
                         trace={"route": "hyperplane_reduction"})


def reduce_in_hyperplane(surface: SimplicialSurface, x, seed: int = 0, line_budget: int = 200):
    """Decide the coplanar case: surface and x inside a common hyperplane H.

    Every 2-plane through x either lies in H or meets H in a line through x,
    and in both cases its intersection with the surface equals that of a
    line-in-H (or of the whole in-H plane), so the question reduces to lines
    through x inside H.  If the surface encloses x, every ray from x hits it:
    conclusive NegativeEvidence.  Otherwise an avoiding line is searched and
    promoted to a 2-plane.
    """
    x = tuple(Fraction(c) for c in x)
    hp = surface_hyperplane(surface)
    if hp is None:
        raise NotApplicable("surface is not contained in a hyperplane")
    normal, offset = hp
    if dot(normal, x) != offset:
        raise NotApplicable("x does not lie in the surface's hyperplane")
    if surface_contains_point(surface, x):
        raise PointOnSurface("query point lies on the surface")
    pivot = next(k for k in range(4) if normal[k] != 0)
    pts3 = [_drop(p, pivot) for p in surface.vertices]
    x3 = _drop(x, pivot)
    tris3 = [
        (pts3[t.a], pts3[t.b], pts3[t.c]) for t in surface.triangles
    ]

    parity, ray_dir, crossings = _crossing_parity(tris3, x3, seed)
    hull = convex_hull_3d(pts3)
    inside_hull = hull.contains(x3)
    if parity == 1:
        return NegativeEvidence(
            "hyperplane_reduction",
            {
                "statement": "every line through x inside the hyperplane meets the surface",
                "ray_parity": 1,
                "ray_direction": [str(c) for c in ray_dir],
                "ray_crossings": crossings,
                "inside_convex_hull": bool(inside_hull),
            },
        )
    if not hull.planar and not inside_hull:
        face = next(f for f in hull.faces if dot(f.normal, x3) > f.offset)
        m4 = [Fraction(0)] * 4
        for i, k in enumerate(k for k in range(4) if k != pivot):
            m4[k] = face.normal[i]
        dirs = nullspace([normal, tuple(m4)], 4)
        plane = Plane2(x, dirs[0], dirs[1])
        res = plane_avoids_surface(plane, surface)
        if not isinstance(res, AvoidanceCertificate):
            raise InternalError("separating support plane unexpectedly met the surface")
        return res
    # inside the hull but outside the surface: look for an avoiding line
    rng = random.Random(seed)
    tried = 0
    for d3 in _line_directions(rng, line_budget):
        tried += 1
        if not _line_hits_any(tris3, x3, d3):
            dl = _lift_direction(d3, normal, pivot)
            plane = Plane2(x, dl, _UNIT[pivot])
            res = plane_avoids_surface(plane, surface)
            if not isinstance(res, AvoidanceCertificate):
                raise InternalError("avoiding line failed to promote to a plane")
            return res
    return NegativeEvidence(
        "sampling_exhausted",
        {"lines_tried": tried, "seed": seed,
         "note": "inside hull, outside surface; no avoiding line found"},
    )


def _line_directions(rng, limit):
    for d in _DIR3:
        yield tuple(Fraction(c) for c in d)
    for _ in range(limit):
        yield tuple(Fraction(rng.randint(-9, 9)) for _ in range(3))


def _crossing_parity(tris3, x3, seed):
    """Parity of ray-surface crossings from x3, using a direction for which
    every crossing is transversal and interior (retry until one works)."""
    rng = random.Random(seed)
    for d3 in _line_directions(rng, 500):
        d = tuple(Fraction(c) for c in d3)
        count = 0
        ok = True
        for (a, b, c) in tris3:
            nt = cross3(vsub(b, a), vsub(c, a))
            den = dot(nt, d)
            lhs = dot(nt, x3)
            ct = dot(nt, a)
            if den == 0:
                if lhs == ct:
                    ok = False
                    break
                continue
            t = (ct - lhs) / den
            if t <= 0:
                continue
            y = vadd(x3, vscale(t, d))
            bary = _bary3(y, a, b, c)
            if bary is None:
                ok = False
                break
            mu, nu = bary
            if mu > 0 and nu > 0 and mu + nu < 1:
                count += 1
            elif mu >= 0 and nu >= 0 and mu + nu <= 1:
                ok = False   # grazes an edge or vertex; pick another direction
                break
        if ok:
            return count % 2, d, count
    raise InternalError("no generic ray direction found")


def _bary3(y, a, b, c):
    """(mu, nu) with y = a + mu*(b-a) + nu*(c-a) for y in the triangle plane."""
    ab, ac, ay = vsub(b, a), vsub(c, a), vsub(y, a)
    n = cross3(ab, ac)
    nn = dot(n, n)
    if nn == 0:
        return None
    mu = dot(cross3(ay, ac), n) / nn
    nu = dot(cross3(ab, ay), n) / nn
    return mu, nu


def _line_hits_any(tris3, x3, d) -> bool:
    """Does the full line {x3 + t d} meet any closed triangle?"""
    for (a, b, c) in tris3:
        nt = cross3(vsub(b, a), vsub(c, a))
        den = dot(nt, d)
        ct = dot(nt, a)
        if den == 0:
            if dot(nt, x3) != ct:
                continue
            if _coplanar_line_hits_triangle(x3, d, a, b, c):
                return True
            continue
        t = (ct - dot(nt, x3)) / den
        y = vadd(x3, vscale(t, d))
        bary = _bary3(y, a, b, c)
        if bary is None:
            continue
        mu, nu = bary
        if mu >= 0 and nu >= 0 and mu + nu <= 1:
            return True
    return False


def _coplanar_line_hits_triangle(x3, d, a, b, c) -> bool:
    """Line lying in the triangle's plane: check 2-D overlap exactly."""
    ab, ac = vsub(b, a), vsub(c, a)
    n = cross3(ab, ac)
    # build 2-D coordinates inside the plane
    u = ab
    v = cross3(n, u)

    def flat(p):
        return (dot(u, vsub(p, a)), dot(v, vsub(p, a)))

    fa, fb, fc = flat(a), flat(b), flat(c)
    fx = flat(x3)
    fd = (dot(u, d), dot(v, d))
    if fd == (0, 0):
        return point_in_triangle_2d(fx, fa, fb, fc)
    if point_in_triangle_2d(fx, fa, fb, fc):
        return True
    for (p1, p2) in ((fa, fb), (fb, fc), (fc, fa)):
        # segment [p1, p2] vs full line x + t*d
        s1 = (p2[0] - p1[0], p2[1] - p1[1])
        den = s1[0] * (-fd[1]) - s1[1] * (-fd[0])
        rhs = (fx[0] - p1[0], fx[1] - p1[1])
        if den == 0:
            # parallel: overlap iff p1 is on the line
            if (p1[0] - fx[0]) * fd[1] == (p1[1] - fx[1]) * fd[0]:
                return True
            continue
        s = (rhs[0] * (-fd[1]) - rhs[1] * (-fd[0])) / den
        if 0 <= s <= 1:
            return True
    return False


# -------------------------------------------------------------- point sampler

def sample_exterior_points(surface: SimplicialSurface, count: int, seed: int = 0):
    """Deterministic rational sample points from a padded bounding box.

    The points are off the surface (checked exactly) but carry no
    inside/outside meaning: the complement of a 2-surface in E^4 is
    connected.
    """
    if count < 1:
        raise ValueError("count must be >= 1")
    mins, maxs = surface.bounding_box()
    pads = [max(hi - lo, Fraction(1)) / 2 for lo, hi in zip(mins, maxs)]
    los = [lo - pad for lo, pad in zip(mins, pads)]
    his = [hi + pad for hi, pad in zip(maxs, pads)]
    rng = random.Random(seed)
    res = 1024
    out = []
    attempts = 0
    while len(out) < count:
        attempts += 1
        if attempts > 100 * count:
            raise InternalError("rejection sampling failed to find off-surface points")
        p = tuple(
            lo + Fraction(rng.randint(0, res), res) * (hi - lo)
            for lo, hi in zip(los, his)
        )
        if not surface_contains_point(surface, p):
            out.append(p)
    return out
