"""Exact rational linear algebra in dimensions 2-4.

Every geometric predicate in the package goes through this module, and
everything here runs on ``fractions.Fraction``: no floating point ever
enters a correctness-bearing path.  Vectors are plain tuples of Fractions,
matrices are lists of such tuples.  All routines are pure functions and
deterministic (fixed pivot order), so results are reproducible bit for bit.
"""

from __future__ import annotations

from fractions import Fraction

ZERO = Fraction(0)
ONE = Fraction(1)


def frac(x) -> Fraction:
    """Coerce an int, a string like '3/5' or '0.25', or a Fraction."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, float):
        raise TypeError("floats are not accepted; pass ints, strings or Fractions")
    return Fraction(x)


def vec(*xs):
    return tuple(frac(x) for x in xs)


def vadd(a, b):
    return tuple(x + y for x, y in zip(a, b))


def vsub(a, b):
    return tuple(x - y for x, y in zip(a, b))


def vscale(k, a):
    return tuple(k * x for x in a)


def vneg(a):
    return tuple(-x for x in a)


def dot(a, b):
    return sum(x * y for x, y in zip(a, b))


def is_zero_vec(a):
    return all(x == 0 for x in a)


def cross2(a, b):
    return a[0] * b[1] - a[1] * b[0]


def cross3(a, b):
    return (
        a[1] * b[2] - a[2] * b[1],
        a[2] * b[0] - a[0] * b[2],
        a[0] * b[1] - a[1] * b[0],
    )


def det3(a, b, c):
    return dot(a, cross3(b, c))


def sign(x) -> int:
    return (x > 0) - (x < 0)


def orient2(a, b, c) -> int:
    """Orientation of the triple a,b,c in the plane: +1 ccw, -1 cw, 0 flat."""
    return sign(cross2(vsub(b, a), vsub(c, a)))


def orient3(a, b, c, d) -> int:
    """Sign of the determinant [b-a, c-a, d-a] in 3-space."""
    return sign(det3(vsub(b, a), vsub(c, a), vsub(d, a)))


# ------------------------------------------------------------------ solving

def mat_rank(rows) -> int:
    """Rank of a rational matrix given as a list of row tuples."""
    m = [list(r) for r in rows]
    rank = 0
    ncols = len(m[0]) if m else 0
    for col in range(ncols):
        piv = next((i for i in range(rank, len(m)) if m[i][col] != 0), None)
        if piv is None:
            continue
        m[rank], m[piv] = m[piv], m[rank]
        inv = 1 / m[rank][col]
        m[rank] = [x * inv for x in m[rank]]
        for i in range(len(m)):
            if i != rank and m[i][col] != 0:
                f = m[i][col]
                m[i] = [x - f * y for x, y in zip(m[i], m[rank])]
        rank += 1
    return rank


def nullspace(rows, ncols):
    """Basis of the right kernel {x : A x = 0} of a rational matrix.

    Deterministic: free columns are taken left to right, each basis vector
    has a 1 in "its" free column.
    """
    m = [list(r) for r in rows]
    pivots = []
    rank = 0
    for col in range(ncols):
        piv = next((i for i in range(rank, len(m)) if m[i][col] != 0), None)
        if piv is None:
            continue
        m[rank], m[piv] = m[piv], m[rank]
        inv = 1 / m[rank][col]
        m[rank] = [x * inv for x in m[rank]]
        for i in range(len(m)):
            if i != rank and m[i][col] != 0:
                f = m[i][col]
                m[i] = [x - f * y for x, y in zip(m[i], m[rank])]
        pivots.append(col)
        rank += 1
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for fc in free:
        v = [ZERO] * ncols
        v[fc] = ONE
        for r, pc in enumerate(pivots):
            v[pc] = -m[r][fc]
        basis.append(tuple(v))
    return basis


def solve_linear(rows, rhs):
    """One exact solution of A x = b, or None if the system is inconsistent.

    When the system is underdetermined the free variables are set to 0.
    """
    m = [list(r) + [b] for r, b in zip(rows, rhs)]
    ncols = len(rows[0]) if rows else 0
    pivots = []
    rank = 0
    for col in range(ncols):
        piv = next((i for i in range(rank, len(m)) if m[i][col] != 0), None)
        if piv is None:
            continue
        m[rank], m[piv] = m[piv], m[rank]
        inv = 1 / m[rank][col]
        m[rank] = [x * inv for x in m[rank]]
        for i in range(len(m)):
            if i != rank and m[i][col] != 0:
                f = m[i][col]
                m[i] = [x - f * y for x, y in zip(m[i], m[rank])]
        pivots.append(col)
        rank += 1
    for i in range(rank, len(m)):
        if m[i][ncols] != 0:
            return None
    x = [ZERO] * ncols
    for r, pc in enumerate(pivots):
        x[pc] = m[r][ncols]
    return tuple(x)


def solve3(col_a, col_b, col_c, rhs):
    """Solve the 3x3 system with columns a,b,c by Cramer; None if singular."""
    d = det3(col_a, col_b, col_c)
    if d == 0:
        return None
    return (
        det3(rhs, col_b, col_c) / d,
        det3(col_a, rhs, col_c) / d,
        det3(col_a, col_b, rhs) / d,
    )


# ----------------------------------------------------------- 2-D predicates

def point_on_segment_2d(p, a, b) -> bool:
    """Closed test: p on the segment [a, b] (endpoints included)."""
    if orient2(a, b, p) != 0:
        return False
    ab = vsub(b, a)
    t = dot(vsub(p, a), ab)
    return 0 <= t <= dot(ab, ab)


def point_in_triangle_2d(p, a, b, c) -> bool:
    """Closed membership of p in the convex hull of {a, b, c}.

    Degenerate triangles (collinear or coincident corners) are handled: the
    hull is then a segment or a point.
    """
    o = orient2(a, b, c)
    if o != 0:
        s1 = orient2(a, b, p)
        s2 = orient2(b, c, p)
        s3 = orient2(c, a, p)
        if o < 0:
            s1, s2, s3 = -s1, -s2, -s3
        return s1 >= 0 and s2 >= 0 and s3 >= 0
    return (
        point_on_segment_2d(p, a, b)
        or point_on_segment_2d(p, b, c)
        or point_on_segment_2d(p, c, a)
    )


def barycentric_2d(p, a, b, c):
    """(la, mu, nu) with p = la*a + mu*b + nu*c, summing to 1; None if flat."""
    den = cross2(vsub(b, a), vsub(c, a))
    if den == 0:
        return None
    la = cross2(vsub(b, p), vsub(c, p)) / den
    mu = cross2(vsub(c, p), vsub(a, p)) / den
    return (la, mu, 1 - la - mu)


def dist2_point_segment_2d(p, a, b):
    """Exact squared distance from p to the closed segment [a, b]."""
    ab = vsub(b, a)
    den = dot(ab, ab)
    if den == 0:
        d = vsub(p, a)
        return dot(d, d)
    t = dot(vsub(p, a), ab) / den
    if t < 0:
        t = ZERO
    elif t > 1:
        t = ONE
    q = vadd(a, vscale(t, ab))
    d = vsub(p, q)
    return dot(d, d)


def dist2_point_triangle_2d(p, a, b, c):
    """Exact squared distance from p to the closed triangle abc (0 if inside)."""
    if point_in_triangle_2d(p, a, b, c):
        return ZERO
    return min(
        dist2_point_segment_2d(p, a, b),
        dist2_point_segment_2d(p, b, c),
        dist2_point_segment_2d(p, c, a),
    )


# --------------------------------------------------------------- formatting

def frac_str(x: Fraction) -> str:
    return str(x)


def vec_str(v):
    return [str(x) for x in v]


def vec_from_strs(xs):
    return tuple(Fraction(s) for s in xs)
