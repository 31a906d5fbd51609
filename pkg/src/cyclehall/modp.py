"""Dense matrix arithmetic over prime fields F_p.

Matrices are tuples of row tuples of ints in ``range(p)``.  Everything here is
small (dimension <= ~10), so plain Python beats any array library.
"""

from __future__ import annotations

import itertools
from functools import lru_cache

from sympy import isprime, prime

Matrix = tuple[tuple[int, ...], ...]
Vector = tuple[int, ...]


class PrimeField:
    """The field Z/pZ for a prime p."""

    __slots__ = ("p",)

    def __init__(self, p: int):
        if not isinstance(p, int) or not isprime(p):
            raise ValueError(f"field modulus must be prime, got {p!r}")
        self.p = p

    def inv(self, a: int) -> int:
        a %= self.p
        if a == 0:
            raise ZeroDivisionError(f"0 has no inverse mod {self.p}")
        return pow(a, -1, self.p)

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self):
        return hash(("F", self.p))

    def __repr__(self):
        return f"PrimeField({self.p})"


def first_primes(count: int) -> list[int]:
    return [prime(i) for i in range(1, count + 1)]


def zeros(rows: int, cols: int) -> Matrix:
    return tuple((0,) * cols for _ in range(rows))


def identity(size: int) -> Matrix:
    return tuple(tuple(int(r == c) for c in range(size)) for r in range(size))


def shape(a: Matrix, cols_if_empty: int = 0) -> tuple[int, int]:
    return (len(a), len(a[0]) if a else cols_if_empty)


def matmul(a: Matrix, b: Matrix, p: int, cols: int | None = None) -> Matrix:
    """Product ``a @ b`` mod p.

    Zero-row matrices carry no column count, so callers multiplying through
    empty spaces pass ``cols`` explicitly.
    """
    if cols is None:
        cols = len(b[0]) if b else 0
    bt = tuple(zip(*b)) if b else ((),) * cols
    return tuple(
        tuple(sum(x * y for x, y in zip(row, col)) % p for col in bt) for row in a
    )


def matvec(a: Matrix, v: Vector, p: int) -> Vector:
    return tuple(sum(x * y for x, y in zip(row, v)) % p for row in a)


def transpose(a: Matrix, cols: int = 0) -> Matrix:
    if not a:
        return ((),) * cols
    return tuple(zip(*a))


def row_reduce(a, p: int) -> tuple[list[list[int]], list[int]]:
    """Reduced row echelon form of ``a`` mod p; returns (rows, pivot columns)."""
    m = [[x % p for x in row] for row in a]
    if not m:
        return m, []
    ncols = len(m[0])
    pivots = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(m)) if m[i][c]), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        inv = pow(m[r][c], -1, p)
        m[r] = [x * inv % p for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c]:
                f = m[i][c]
                m[i] = [(x - f * y) % p for x, y in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    return m, pivots


def rank(a, p: int) -> int:
    return len(row_reduce(a, p)[1])


def nullspace(a, p: int, ncols: int) -> list[Vector]:
    """Basis of ``{x : a x = 0}`` over F_p; ``ncols`` is needed when ``a`` has no rows."""
    rows, pivots = row_reduce(a, p)
    free = [c for c in range(ncols) if c not in set(pivots)]
    basis = []
    for f in free:
        x = [0] * ncols
        x[f] = 1
        for row, pc in zip(rows, pivots):
            x[pc] = (-row[f]) % p
        basis.append(tuple(x))
    return basis


def inverse(a: Matrix, p: int) -> Matrix:
    size = len(a)
    aug = [list(row) + list(e) for row, e in zip(a, identity(size))]
    rows, pivots = row_reduce(aug, p)
    if pivots[:size] != list(range(size)):
        raise ValueError("matrix is singular mod %d" % p)
    return tuple(tuple(row[size:]) for row in rows)


def is_invertible(a: Matrix, p: int) -> bool:
    return rank(a, p) == len(a)


@lru_cache(maxsize=None)
def grassmannian(m: int, k: int, p: int) -> tuple[tuple[Vector, ...], ...]:
    """All k-dimensional subspaces of F_p^m, one echelon representative each.

    A subspace is a tuple of k basis vectors ordered by pivot.  The pivot of a
    basis vector is its last nonzero coordinate, which equals 1; entries below
    a pivot are zero, and every other basis vector is zero at that pivot row.
    Entries above a pivot that are not themselves pivot rows are free, so the
    cell with pivot rows ``J`` has ``p ** sum(j - c)`` points (0-based ``j``,
    column ``c``).  Cells are produced in lexicographic order of ``J``.
    """
    out = []
    for piv in itertools.combinations(range(m), k):
        pivset = set(piv)
        free_slots = [(c, r) for c, pr in enumerate(piv) for r in range(pr) if r not in pivset]
        for values in itertools.product(range(p), repeat=len(free_slots)):
            cols = [[0] * m for _ in range(k)]
            for c, pr in enumerate(piv):
                cols[c][pr] = 1
            for (c, r), v in zip(free_slots, values):
                cols[c][r] = v
            out.append(tuple(tuple(col) for col in cols))
    return tuple(out)


def pivot_rows(basis) -> tuple[int, ...]:
    """Pivot (last nonzero) row of each echelon basis vector."""
    out = []
    for b in basis:
        r = len(b) - 1
        while b[r] == 0:
            r -= 1
        out.append(r)
    return tuple(out)


def reduce_mod_subspace(v: Vector, basis, pivots, p: int) -> Vector:
    """Normal form of v modulo span(basis): zero at every pivot row."""
    w = list(v)
    for b, r in zip(basis, pivots):
        c = w[r]
        if c:
            for i, x in enumerate(b):
                if x:
                    w[i] = (w[i] - c * x) % p
    return tuple(w)


def in_span(v: Vector, basis, pivots, p: int) -> bool:
    return not any(reduce_mod_subspace(v, basis, pivots, p))


def format_matrix(a: Matrix) -> str:
    """Row-major bracketed text, for debugging output."""
    return "[" + ", ".join("[" + " ".join(str(x) for x in row) + "]" for row in a) + "]"
