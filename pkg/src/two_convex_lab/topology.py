"""Z2 simplicial cohomology of closed surfaces: Betti numbers, cup products,
degree mod 2, and the exhaustive obstruction to degree-one maps onto the torus.

Cochains are bit masks (``z2bits``).  Cup products of 1-cocycles use the
ordered-simplex formula under the global vertex order: on a triangle with
vertices v0 < v1 < v2,  (alpha cup beta)(v0 v1 v2) = alpha(v0 v1) * beta(v1 v2),
then the 2-cochain is paired with the sum of all triangles.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .errors import InternalError, InvalidGenus, NotClosed, NotSimplicial
from .mesh import SimplicialSurface, validate
from .z2bits import (
    bit_count,
    bits_to_str,
    invertible_matrices,
    nullspace_bits,
    quotient_representatives,
    rank_bits,
)


def coboundary_rows(surface: SimplicialSurface):
    """(delta0 generator rows, delta1 triangle rows), both over edge bits.

    Row v of delta0 is the coboundary of the vertex indicator (the star of
    v); row t of delta1 marks the three edges of triangle t.
    """
    d0 = [0] * surface.vertex_count
    for e, (a, b) in enumerate(surface.edges):
        d0[a] |= 1 << e
        d0[b] |= 1 << e
    d1 = []
    for t in surface.triangles:
        m = 0
        for (u, v) in t.directed_edges():
            key = (u, v) if u < v else (v, u)
            m |= 1 << surface.edge_index[key]
        d1.append(m)
    return d0, d1


@dataclass
class CohomologyRing:
    """Z2 Betti data, H^1 cocycle representatives and the cup pairing table.

    For mesh-backed rings ``h1_basis`` entries are edge-indexed bit masks;
    abstract rings use unit masks over Z2^betti1.  Only basis-invariant data
    (betti numbers, the congruence class of ``cup_table``) are contractual:
    representatives depend on elimination pivoting.
    """

    surface_model: str
    betti0: int
    betti1: int
    betti2: int
    h1_basis: list = field(default_factory=list)
    cup_table: list = field(default_factory=list)
    n_edges: int = 0
    n_triangles: int = 0

    @property
    def fundamental_cycle(self) -> int:
        """The Z2 sum of all triangles, as a bit mask."""
        return (1 << self.n_triangles) - 1 if self.n_triangles else 0

    def pair_with_fundamental(self, two_cochain: int) -> int:
        return bit_count(two_cochain & self.fundamental_cycle) % 2

    def cup(self, v: int, w: int) -> int:
        """Pairing <v cup w, [S]> for v, w written in the h1 basis (bit masks)."""
        total = 0
        for i in range(self.betti1):
            if not (v >> i) & 1:
                continue
            for j in range(self.betti1):
                if (w >> j) & 1:
                    total ^= self.cup_table[i][j]
        return total

    def to_json(self):
        return {
            "surface_model": self.surface_model,
            "betti": [self.betti0, self.betti1, self.betti2],
            "h1_basis": [bits_to_str(b, self.n_edges) for b in self.h1_basis],
            "cup_table": [list(row) for row in self.cup_table],
            "edges": self.n_edges,
            "triangles": self.n_triangles,
        }


def cup_pairing(surface: SimplicialSurface, alpha: int, beta: int) -> int:
    """<alpha cup beta, [S]> for 1-cocycles given as edge bit masks."""
    total = 0
    for t in surface.triangles:
        v0, v1, v2 = sorted(t)
        e01 = surface.edge_index[(v0, v1)]
        e12 = surface.edge_index[(v1, v2)]
        total ^= (alpha >> e01) & (beta >> e12) & 1
    return total


def cohomology_ring(surface: SimplicialSurface) -> CohomologyRing:
    """Betti numbers, an H^1 cocycle basis and the cup product table."""
    try:
        validate(surface)
    except NotClosed:
        raise
    except Exception as exc:
        raise NotClosed(f"surface failed validation: {exc}") from exc
    d0, d1 = coboundary_rows(surface)
    nv, ne, nf = surface.vertex_count, surface.edge_count, surface.triangle_count
    rank0 = rank_bits(d0)
    rank1 = rank_bits(d1)
    b0 = nv - rank0
    b1 = ne - rank1 - rank0
    b2 = nf - rank1
    cocycles = nullspace_bits(d1, ne)
    basis = quotient_representatives(cocycles, d0)
    if len(basis) != b1:
        raise InternalError("H1 representative count disagrees with betti1")
    table = [[cup_pairing(surface, a, b) for b in basis] for a in basis]
    ring = CohomologyRing(
        surface_model=f"mesh(V={nv},E={ne},F={nf})",
        betti0=b0,
        betti1=b1,
        betti2=b2,
        h1_basis=basis,
        cup_table=table,
        n_edges=ne,
        n_triangles=nf,
    )
    _check_ring_invariants(ring)
    return ring


def _check_ring_invariants(ring: CohomologyRing):
    t = ring.cup_table
    b1 = ring.betti1
    for i in range(b1):
        for j in range(b1):
            if t[i][j] != t[j][i]:
                raise InternalError("cup pairing is not symmetric")
    rows = [sum((t[i][j] & 1) << j for j in range(b1)) for i in range(b1)]
    if rank_bits(rows) != b1:
        raise InternalError("cup pairing on H1 is degenerate")
    if ring.betti2 != ring.betti0:
        raise InternalError("betti2 != number of components over Z2")


def abstract_surface_ring(kind: str, genus: int) -> CohomologyRing:
    """Standard ring model without a mesh.

    kind='orientable' with genus g >= 0 gives the hyperbolic cup table of
    rank 2g; kind='nonorientable' with genus mu >= 1 gives H^1 = Z2^mu with
    e_i cup e_j = delta_ij (mu Mobius bands glued into a sphere).
    """
    if kind == "orientable":
        if not isinstance(genus, int) or genus < 0:
            raise InvalidGenus(f"orientable genus must be an integer >= 0, got {genus}")
        b1 = 2 * genus
        table = [[0] * b1 for _ in range(b1)]
        for g in range(genus):
            table[2 * g][2 * g + 1] = 1
            table[2 * g + 1][2 * g] = 1
        model = f"orientable_genus_{genus}"
    elif kind == "nonorientable":
        if not isinstance(genus, int) or genus < 1:
            raise InvalidGenus(f"nonorientable genus must be an integer >= 1, got {genus}")
        b1 = genus
        table = [[1 if i == j else 0 for j in range(b1)] for i in range(b1)]
        model = f"nonorientable_genus_{genus}"
    else:
        raise InvalidGenus(f"kind must be 'orientable' or 'nonorientable', got {kind!r}")
    return CohomologyRing(
        surface_model=model,
        betti0=1,
        betti1=b1,
        betti2=1,
        h1_basis=[1 << i for i in range(b1)],
        cup_table=table,
        n_edges=b1,
        n_triangles=1,
    )


# ---------------------------------------------------------------- degree mod 2

@dataclass(frozen=True)
class SimplicialMapZ2:
    """A simplicial map recorded by its vertex images."""

    domain: SimplicialSurface
    codomain: SimplicialSurface
    vertex_images: tuple

    def __post_init__(self):
        if len(self.vertex_images) != self.domain.vertex_count:
            raise NotSimplicial("vertex_images must cover every domain vertex")
        for w in self.vertex_images:
            if not 0 <= w < self.codomain.vertex_count:
                raise NotSimplicial(f"image vertex {w} out of range")


def degree_mod2(m: SimplicialMapZ2) -> int:
    """Mod-2 count of domain triangles mapping non-degenerately onto a fixed
    codomain triangle; checked to be independent of that choice."""
    img = m.vertex_images
    for (a, b) in m.domain.edges:
        fa, fb = img[a], img[b]
        if fa != fb and ((min(fa, fb), max(fa, fb)) not in m.codomain.edge_index):
            raise NotSimplicial(f"edge ({a},{b}) maps to a non-edge ({fa},{fb})")
    codomain_sets = {t.vertex_set(): ti for ti, t in enumerate(m.codomain.triangles)}
    counts = {fs: 0 for fs in codomain_sets}
    for t in m.domain.triangles:
        image = frozenset((img[t.a], img[t.b], img[t.c]))
        if len(image) == 3:
            if image not in codomain_sets:
                raise NotSimplicial(f"triangle {tuple(t)} maps onto a non-triangle")
            counts[image] += 1
    values = {c % 2 for c in counts.values()}
    if len(values) != 1:
        raise InternalError(
            "degree differs across target triangles; is the codomain connected?"
        )
    return values.pop()


# ----------------------------------------------------------- the obstruction

@dataclass
class ObstructionReport:
    """Exhaustive search over candidate pullback pairs (v, w) in H^1 x H^1.

    A pair is admissible iff v cup v = 0, w cup w = 0 and v cup w != 0; these
    are the conditions a degree-one map to the torus forces on the pullbacks
    of the torus generators.  Admissibility is necessary, not sufficient.
    """

    surface_model: str
    candidate_count: int
    admissible_count: int
    admissible_pairs: list
    betti1: int
    truncated: bool

    @property
    def exists_degree_one(self) -> bool:
        return self.admissible_count > 0

    def to_json(self):
        return {
            "surface_model": self.surface_model,
            "candidate_count": self.candidate_count,
            "admissible_count": self.admissible_count,
            "admissible_pairs": [
                [bits_to_str(v, self.betti1), bits_to_str(w, self.betti1)]
                for (v, w) in self.admissible_pairs
            ],
            "truncated": self.truncated,
            "exists_degree_one": self.exists_degree_one,
        }


def degree_one_obstruction(ring: CohomologyRing, pair_cap: int = 65536) -> ObstructionReport:
    """Enumerate all of H^1 x H^1 and report the admissible pairs.

    The count is always exact; the materialized pair list is truncated to
    ``pair_cap`` entries (with a witness pair kept) when the full list would
    be enormous, as happens for high-genus surfaces.
    """
    b1 = ring.betti1
    table = ring.cup_table
    for i in range(b1):
        for j in range(b1):
            if table[i][j] != table[j][i]:
                raise InternalError("cup table must be symmetric")
    cols = [sum((table[i][j] & 1) << i for i in range(b1)) for j in range(b1)]

    def mat_vec(w: int) -> int:
        out = 0
        for j in range(b1):
            if (w >> j) & 1:
                out ^= cols[j]
        return out

    diag = sum((table[i][i] & 1) << i for i in range(b1))
    # v cup v = <diag, v> since the table is symmetric, so the square-zero
    # vectors form the subgroup Z = ker(diag)
    if diag:
        zbasis = nullspace_bits([diag], b1)
    else:
        zbasis = [1 << i for i in range(b1)]
    zsize = 1 << len(zbasis)

    def z_elements():
        for mask in range(zsize):
            v = 0
            for k in range(len(zbasis)):
                if (mask >> k) & 1:
                    v ^= zbasis[k]
            yield v

    total = 0
    per_v_half = zsize // 2
    live = []
    for v in z_elements():
        cv = mat_vec(v)
        if any(bit_count(cv & zb) % 2 for zb in zbasis):
            total += per_v_half
            live.append((v, cv))
    pairs = []
    truncated = total > pair_cap
    limit = pair_cap if truncated else total
    if limit:
        for v, cv in live:
            for w in z_elements():
                if bit_count(cv & w) % 2:
                    pairs.append((v, w))
                    if len(pairs) >= limit:
                        break
            if len(pairs) >= limit:
                break
    return ObstructionReport(
        surface_model=ring.surface_model,
        candidate_count=(1 << b1) ** 2,
        admissible_count=total,
        admissible_pairs=pairs,
        betti1=b1,
        truncated=truncated,
    )


# -------------------------------------------------- cup table classification

def _bilinear(table, v: int, w: int) -> int:
    out = 0
    for i in range(len(table)):
        if (v >> i) & 1:
            for j in range(len(table)):
                if (w >> j) & 1:
                    out ^= table[i][j]
    return out


def cup_tables_isomorphic(t1, t2) -> bool:
    """Is there a Z2 basis change carrying one symmetric cup table to the other?

    Exhaustive over GL(b, Z2) for b <= 4; for larger b the complete
    congruence invariants of nondegenerate symmetric forms over Z2 are used
    (rank, and whether some v has v cup v != 0).
    """
    b = len(t1)
    if b != len(t2):
        return False
    if b == 0:
        return True
    if b <= 4:
        for cols in invertible_matrices(b):
            ok = True
            for i in range(b):
                for j in range(b):
                    if _bilinear(t1, cols[i], cols[j]) != t2[i][j]:
                        ok = False
                        break
                if not ok:
                    break
            if ok:
                return True
        return False
    rows1 = [sum((t1[i][j] & 1) << j for j in range(b)) for i in range(b)]
    rows2 = [sum((t2[i][j] & 1) << j for j in range(b)) for i in range(b)]
    if rank_bits(rows1) != rank_bits(rows2):
        return False
    diag1 = any(t1[i][i] for i in range(b))
    diag2 = any(t2[i][i] for i in range(b))
    return diag1 == diag2


TORUS_TABLE = [[0, 1], [1, 0]]            # a^2 = b^2 = 0, a cup b != 0
KLEIN_TABLE = [[0, 1], [1, 1]]            # c^2 = 0, d^2 = c cup d != 0
PROJECTIVE_TABLE = [[1]]                  # e^2 != 0
