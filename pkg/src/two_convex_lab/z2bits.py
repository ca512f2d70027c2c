"""Bit-packed linear algebra over the two-element field.

A vector in Z2^n is a Python int whose bit j is coordinate j; a matrix is a
list of such row masks plus an explicit column count.  Plain Gaussian
elimination throughout: the matrices here are desk-scale (at most a few
thousand edges), so nothing fancier is warranted.
"""

from __future__ import annotations


def bit_count(x: int) -> int:
    return bin(x).count("1")


def vec_to_bits(bits_iterable) -> int:
    mask = 0
    for j, b in enumerate(bits_iterable):
        if b:
            mask |= 1 << j
    return mask


def bits_to_str(mask: int, n: int) -> str:
    """Render a Z2 vector as a left-to-right bit string ('110' = e0+e1)."""
    return "".join("1" if (mask >> j) & 1 else "0" for j in range(n))


def bits_from_str(s: str) -> int:
    return vec_to_bits(c == "1" for c in s)


class _Eliminator:
    """Maintains a row basis in echelon form keyed by lowest set bit."""

    def __init__(self):
        self.rows = {}  # pivot bit -> row mask

    def reduce(self, v: int) -> int:
        while v:
            low = v & -v
            if low not in self.rows:
                return v
            v ^= self.rows[low]
        return 0

    def add(self, v: int) -> bool:
        """Reduce v and insert it if independent; True iff rank grew."""
        v = self.reduce(v)
        if v == 0:
            return False
        self.rows[v & -v] = v
        return True

    @property
    def rank(self) -> int:
        return len(self.rows)


def rank_bits(rows) -> int:
    elim = _Eliminator()
    for r in rows:
        elim.add(r)
    return elim.rank


def in_row_span(rows, v: int) -> bool:
    elim = _Eliminator()
    for r in rows:
        elim.add(r)
    return elim.reduce(v) == 0


def nullspace_bits(rows, ncols):
    """Basis of the right kernel of the bit matrix.

    Columns are fed left to right into an eliminator that tracks which input
    columns combine to zero, so the basis is deterministic.
    """
    cols = [0] * ncols
    for i, r in enumerate(rows):
        rr = r
        while rr:
            low = rr & -rr
            j = low.bit_length() - 1
            cols[j] |= 1 << i
            rr ^= low
    basis = {}  # pivot bit of column vector -> (column vector, combination)
    kernel = []
    for j in range(ncols):
        v = cols[j]
        combo = 1 << j
        while v:
            low = v & -v
            if low not in basis:
                break
            bv, bc = basis[low]
            v ^= bv
            combo ^= bc
        if v:
            basis[v & -v] = (v, combo)
        else:
            kernel.append(combo)
    return kernel


def quotient_representatives(vectors, modulo_rows):
    """Independent representatives of span(vectors) / span(modulo_rows).

    Returns a sublist of reduced vectors whose classes form a basis of the
    quotient space.
    """
    elim = _Eliminator()
    for r in modulo_rows:
        elim.add(r)
    reps = []
    for v in vectors:
        red = elim.reduce(v)
        if red and elim.add(red):
            reps.append(red)
    return reps


def invertible_matrices(n):
    """Yield all invertible n x n matrices over Z2 as tuples of column masks.

    Exhaustive (2^(n*n) candidates filtered by rank); intended for n <= 4.
    """
    if n > 4:
        raise ValueError("exhaustive GL(n, Z2) enumeration is capped at n = 4")
    total = 1 << n
    for combo in range(total ** n):
        cols = []
        c = combo
        for _ in range(n):
            cols.append(c % total)
            c //= total
        elim = _Eliminator()
        if all(elim.add(col) for col in cols):
            yield tuple(cols)
