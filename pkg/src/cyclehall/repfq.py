"""Explicit nilpotent representations of the n-cycle over a prime field.

An :class:`FqRep` stores one matrix per arrow ``i -> i+1``; ``maps[i]`` has
shape ``dims[i+1] x dims[i]``.  Submodules are enumerated cell by cell in the
per-vertex Grassmannians and kept when arrow-invariant, which makes Hall
numbers a matter of counting.
"""

from __future__ import annotations

import logging
import random
from collections import Counter
from dataclasses import dataclass
from functools import lru_cache
from typing import Sequence

import sympy

from . import modp
from .modp import Matrix, PrimeField
from .quiver_core import (
    DimVector,
    Multipartition,
    dim_vector,
    enumerate_classes,
)

log = logging.getLogger(__name__)


class NotNilpotentError(ValueError):
    pass


@dataclass(frozen=True)
class FqRep:
    n: int
    p: int
    dims: DimVector
    maps: tuple[Matrix, ...]

    def __post_init__(self):
        dims = tuple(self.dims)
        maps = tuple(tuple(tuple(x % self.p for x in row) for row in a) for a in self.maps)
        if len(dims) != self.n or len(maps) != self.n:
            raise ValueError("need one dimension and one map per vertex")
        for i, a in enumerate(maps):
            rows, cols = dims[(i + 1) % self.n], dims[i]
            if len(a) != rows or any(len(r) != cols for r in a):
                raise ValueError(f"arrow {i}->{(i + 1) % self.n} needs a {rows}x{cols} matrix")
        object.__setattr__(self, "dims", dims)
        object.__setattr__(self, "maps", maps)

    @property
    def field(self) -> PrimeField:
        return PrimeField(self.p)

    @property
    def total(self) -> int:
        return sum(self.dims)

    def arrow(self, i: int) -> Matrix:
        return self.maps[i % self.n]

    def path(self, start: int, length: int) -> Matrix:
        """Composite of ``length`` consecutive arrows starting at ``start``."""
        acc = modp.identity(self.dims[start % self.n])
        v = start
        for _ in range(length):
            acc = modp.matmul(self.arrow(v), acc, self.p, cols=self.dims[start % self.n])
            v += 1
        return acc

    def is_nilpotent(self) -> bool:
        return all(not any(any(r) for r in self.path(t, max(self.total, 1))) for t in range(self.n))

    def __str__(self):
        lines = [f"F_{self.p}-rep of the {self.n}-cycle, dims {self.dims}"]
        for i, a in enumerate(self.maps):
            lines.append(f"  {i}->{(i + 1) % self.n}: {modp.format_matrix(a)}")
        return "\n".join(lines)


def zero_rep(dims: Sequence[int], p: int) -> FqRep:
    n = len(dims)
    return FqRep(n, p, tuple(dims), tuple(modp.zeros(dims[(i + 1) % n], dims[i]) for i in range(n)))


def canonical_rep(pi: Multipartition, p: int) -> FqRep:
    """Block-diagonal representative of ``pi``.

    Summand S_i[l] contributes basis vectors at positions 0 (top) to l-1
    (socle), position s sitting at vertex i-l+1+s; each arrow moves position s
    to s+1 and kills the socle.  Summands are laid out in storage order.
    """
    PrimeField(p)
    n = pi.n
    dims = dim_vector(pi)
    counters = [0] * n
    entries = [[] for _ in range(n)]  # (row, col) of each 1 in maps[v]
    for i, l in pi.summands():
        top = (i - l + 1) % n
        idx = []
        for s in range(l):
            v = (top + s) % n
            idx.append((v, counters[v]))
            counters[v] += 1
        for (v, c), (_, r) in zip(idx, idx[1:]):
            entries[v].append((r, c))
    maps = []
    for v in range(n):
        rows, cols = dims[(v + 1) % n], dims[v]
        a = [[0] * cols for _ in range(rows)]
        for r, c in entries[v]:
            a[r][c] = 1
        maps.append(a)
    return FqRep(n, p, dims, tuple(maps))


def base_change(x: FqRep, g: Sequence[Matrix]) -> FqRep:
    """Act by ``g``: each arrow map A_i becomes g_{i+1} A_i g_i^{-1}."""
    if len(g) != x.n:
        raise ValueError("need one matrix per vertex")
    for i, gi in enumerate(g):
        if len(gi) != x.dims[i] or any(len(r) != x.dims[i] for r in gi):
            raise ValueError(f"g_{i} must be {x.dims[i]}x{x.dims[i]}")
    ginv = [modp.inverse(gi, x.p) if gi else () for gi in g]
    maps = []
    for i, a in enumerate(x.maps):
        j = (i + 1) % x.n
        left = modp.matmul(g[j], a, x.p, cols=x.dims[i])
        maps.append(modp.matmul(left, ginv[i], x.p, cols=x.dims[i]))
    return FqRep(x.n, x.p, x.dims, tuple(maps))


def random_invertible(size: int, p: int, rng: random.Random) -> Matrix:
    while True:
        g = tuple(tuple(rng.randrange(p) for _ in range(size)) for _ in range(size))
        if modp.is_invertible(g, p):
            return g


def random_base_change(x: FqRep, rng: random.Random) -> tuple[Matrix, ...]:
    return tuple(random_invertible(d, x.p, rng) for d in x.dims)


# -- homomorphisms --------------------------------------------------------------

def _hom_system(a: FqRep, b: FqRep):
    if a.n != b.n or a.p != b.p:
        raise ValueError("representations live on different quivers or fields")
    n, p = a.n, a.p
    offsets = []
    nvars = 0
    for i in range(n):
        offsets.append(nvars)
        nvars += b.dims[i] * a.dims[i]

    def var(i, r, c):  # entry (r, c) of T_i, which is dims_b[i] x dims_a[i]
        return offsets[i] + r * a.dims[i] + c

    rows = []
    for i in range(n):
        j = (i + 1) % n
        A, B = a.maps[i], b.maps[i]
        # (T_j A_i - B_i T_i)[r][c] = 0
        for r in range(b.dims[j]):
            for c in range(a.dims[i]):
                eq = [0] * nvars
                for k in range(a.dims[j]):
                    if A[k][c]:
                        eq[var(j, r, k)] += A[k][c]
                for k in range(b.dims[i]):
                    if B[r][k]:
                        eq[var(i, k, c)] -= B[r][k]
                rows.append([x % p for x in eq])
    return rows, nvars, offsets


def hom_dim(a: FqRep, b: FqRep) -> int:
    """dim Hom(a, b): the solution space of T_{i+1} A_i = B_i T_i for all i."""
    rows, nvars, _ = _hom_system(a, b)
    return nvars - modp.rank(rows, a.p)


def hom_space(a: FqRep, b: FqRep) -> list[tuple[Matrix, ...]]:
    """A basis of Hom(a, b), each element a tuple of per-vertex matrices."""
    rows, nvars, offsets = _hom_system(a, b)
    basis = []
    for sol in modp.nullspace(rows, a.p, nvars):
        mats = []
        for i in range(a.n):
            cols = a.dims[i]
            mats.append(tuple(
                tuple(sol[offsets[i] + r * cols + c] for c in range(cols))
                for r in range(b.dims[i])
            ))
        basis.append(tuple(mats))
    return basis


def indecomposable_hom_dim(i: int, l: int, j: int, m: int, n: int) -> int:
    """dim Hom(S_i[l], S_j[m]), independent of the field.

    S_i[l] is generated by its top at vertex t = i-l+1 subject to killing
    paths of length l, so homs out of it are the vectors of S_j[m] at vertex t
    that die after l steps.
    """
    t = (i - l + 1) % n
    top_j = j - m + 1
    return sum(1 for s in range(m) if (top_j + s) % n == t and s + l >= m)


def class_hom_dim(a: Multipartition, b: Multipartition) -> int:
    """dim Hom between the classes, summed over pairs of indecomposable summands."""
    if a.n != b.n:
        raise ValueError("multipartitions live on different quivers")
    return sum(
        indecomposable_hom_dim(i, l, j, m, a.n)
        for i, l in a.summands()
        for j, m in b.summands()
    )


def indecomposables_up_to(n: int, max_length: int) -> list[tuple[int, int]]:
    return [(i, l) for l in range(1, max_length + 1) for i in range(n)]


# -- classification ---------------------------------------------------------------

@lru_cache(maxsize=None)
def _hom_matrix_inverse(n: int, max_length: int) -> tuple[tuple[int, ...], ...]:
    ind = indecomposables_up_to(n, max_length)
    H = sympy.Matrix([[indecomposable_hom_dim(i, l, j, m, n) for (j, m) in ind] for (i, l) in ind])
    if H.det() == 0:
        raise ArithmeticError(f"indecomposable hom matrix is singular for n={n}, L={max_length}")
    Hinv = H.inv()
    if any(not x.is_integer for x in Hinv):
        raise ArithmeticError("indecomposable hom matrix is not unimodular")
    return tuple(tuple(int(Hinv[r, c]) for c in range(len(ind))) for r in range(len(ind)))


def hom_profile_fq(x: FqRep, max_length: int | None = None) -> dict[tuple[int, int], int]:
    """dim Hom(S_i[l], x) for every indecomposable with l <= max_length.

    Computed as the kernel dimension of the length-l path out of the top
    vertex of S_i[l] (agrees with ``hom_dim(canonical_rep(S_i[l]), x)``).
    """
    L = x.total if max_length is None else max_length
    out = {}
    for t in range(x.n):
        d = x.dims[t]
        acc = modp.identity(d)
        v = t
        for l in range(1, L + 1):
            acc = modp.matmul(x.arrow(v), acc, x.p, cols=d)
            v += 1
            out[((t + l - 1) % x.n, l)] = d - modp.rank(acc, x.p)
    return out


def classify(x: FqRep) -> Multipartition:
    """The class of ``x``, recovered from its hom-profile against indecomposables.

    Solves sum_{(j,m)} mult_{j,m} * dim Hom(S_i[l], S_j[m]) = dim Hom(S_i[l], x)
    with the (cached, integer) inverse of the indecomposable hom matrix.
    """
    L = x.total
    if L == 0:
        return Multipartition(((),) * x.n)
    profile = hom_profile_fq(x, L)
    # with Loewy length <= L, paths of length L vanish exactly when x is nilpotent
    if any(profile[((t + L - 1) % x.n, L)] != x.dims[t] for t in range(x.n)):
        raise NotNilpotentError("representation is not nilpotent")
    ind = indecomposables_up_to(x.n, L)
    Hinv = _hom_matrix_inverse(x.n, L)
    h = [profile[key] for key in ind]
    comps = [[] for _ in range(x.n)]
    for (j, m), row in zip(ind, Hinv):
        mult = sum(a * b for a, b in zip(row, h))
        if mult < 0:
            raise ArithmeticError(f"negative multiplicity {mult} for S_{j}[{m}]; classification bug")
        comps[j].extend([m] * mult)
    result = Multipartition(tuple(tuple(sorted(c, reverse=True)) for c in comps))
    if dim_vector(result) != x.dims:
        raise ArithmeticError("classified class has the wrong dimension vector; classification bug")
    return result


# -- submodules -------------------------------------------------------------------

@dataclass(frozen=True)
class Subrep:
    """Arrow-invariant subspaces of ``parent``, one echelon basis per vertex."""

    parent: FqRep
    bases: tuple[tuple[modp.Vector, ...], ...]

    @property
    def dims(self) -> DimVector:
        return tuple(len(b) for b in self.bases)

    @property
    def pivots(self) -> tuple[tuple[int, ...], ...]:
        return tuple(modp.pivot_rows(b) for b in self.bases)

    def is_invariant(self) -> bool:
        x = self.parent
        piv = self.pivots
        for i in range(x.n):
            j = (i + 1) % x.n
            for b in self.bases[i]:
                if not modp.in_span(modp.matvec(x.maps[i], b, x.p), self.bases[j], piv[j], x.p):
                    return False
        return True


def echelon_basis(vectors, length: int, p: int) -> tuple[modp.Vector, ...]:
    """The canonical echelon basis (pivot = last nonzero entry) of a span."""
    rev = [tuple(reversed(v)) for v in vectors]
    rows, pivots = modp.row_reduce(rev, p) if rev else ([], [])
    basis = [tuple(reversed(rows[r])) for r in range(len(pivots))]
    return tuple(sorted(basis, key=lambda b: modp.pivot_rows([b])[0]))


def generated_subrep(x: FqRep, generators: dict[int, Sequence[modp.Vector]]) -> Subrep:
    """Smallest subrepresentation containing the given vectors at their vertices."""
    spans = [echelon_basis(generators.get(i, ()), x.dims[i], x.p) for i in range(x.n)]
    changed = True
    while changed:
        changed = False
        for i in range(x.n):
            j = (i + 1) % x.n
            images = [modp.matvec(x.maps[i], b, x.p) for b in spans[i]]
            merged = echelon_basis(list(spans[j]) + images, x.dims[j], x.p)
            if len(merged) != len(spans[j]):
                spans[j] = merged
                changed = True
    return Subrep(x, tuple(spans))


def enumerate_submodules(x: FqRep, d: Sequence[int]) -> list[Subrep]:
    """Every subrepresentation of ``x`` with dimension vector ``d``, once each.

    Walks the Grassmannian cells vertex by vertex (0, 1, ..., n-1), keeping a
    choice only if the previous vertex's subspace maps into it, and closes the
    cycle with the check at arrow n-1 -> 0.  Order is lexicographic in the
    per-vertex cell order of :func:`modp.grassmannian`.
    """
    d = tuple(d)
    if len(d) != x.n or any(not 0 <= a <= b for a, b in zip(d, x.dims)):
        return []
    n, p = x.n, x.p
    spaces = [modp.grassmannian(x.dims[i], d[i], p) for i in range(n)]
    pivs = [[modp.pivot_rows(u) for u in spaces[i]] for i in range(n)]
    out = []

    def maps_into(i, images, k):
        j = (i + 1) % n
        return all(modp.in_span(v, spaces[j][k], pivs[j][k], p) for v in images)

    chosen = []

    def walk(i, images):
        if i == n:
            if maps_into(n - 1, images, chosen[0]):
                out.append(Subrep(x, tuple(spaces[v][k] for v, k in enumerate(chosen))))
            return
        for k in range(len(spaces[i])):
            if i > 0 and not maps_into(i - 1, images, k):
                continue
            chosen.append(k)
            walk(i + 1, [modp.matvec(x.maps[i], b, p) for b in spaces[i][k]])
            chosen.pop()

    walk(0, [])
    return out


def sub_rep(u: Subrep) -> FqRep:
    """The subrepresentation as a representation in its own echelon basis."""
    x = u.parent
    piv = u.pivots
    maps = []
    for i in range(x.n):
        j = (i + 1) % x.n
        cols = []
        for b in u.bases[i]:
            w = modp.matvec(x.maps[i], b, x.p)
            if not modp.in_span(w, u.bases[j], piv[j], x.p):
                raise ValueError("subspaces are not arrow-invariant")
            cols.append(tuple(w[r] for r in piv[j]))
        maps.append(modp.transpose(tuple(cols), len(u.bases[j])) if cols else modp.zeros(len(u.bases[j]), 0))
    return FqRep(x.n, x.p, u.dims, tuple(maps))


def quotient_rep(x: FqRep, u: Subrep) -> FqRep:
    """x / u on the coordinates not used as pivots by u."""
    if u.parent != x:
        raise ValueError("subrepresentation belongs to a different representation")
    piv = u.pivots
    keep = [[r for r in range(x.dims[i]) if r not in set(piv[i])] for i in range(x.n)]
    maps = []
    for i in range(x.n):
        j = (i + 1) % x.n
        cols = []
        for r in keep[i]:
            w = tuple(row[r] for row in x.maps[i])
            w = modp.reduce_mod_subspace(w, u.bases[j], piv[j], x.p)
            cols.append(tuple(w[c] for c in keep[j]))
        for b in u.bases[i]:
            w = modp.matvec(x.maps[i], b, x.p)
            if not modp.in_span(w, u.bases[j], piv[j], x.p):
                raise ValueError("subspaces are not arrow-invariant")
        maps.append(modp.transpose(tuple(cols), len(keep[j])) if cols else modp.zeros(len(keep[j]), 0))
    return FqRep(x.n, x.p, tuple(len(k) for k in keep), tuple(maps))


# -- Hall numbers -----------------------------------------------------------------

@lru_cache(maxsize=None)
def hall_table(x: Multipartition, sub_dims: DimVector, p: int) -> dict[tuple[Multipartition, Multipartition], int]:
    """Counts of submodules U of canonical_rep(x, p) with dimension vector
    ``sub_dims``, keyed by (class of U, class of x/U)."""
    rep = canonical_rep(x, p)
    counts = Counter()
    for u in enumerate_submodules(rep, sub_dims):
        counts[(classify(sub_rep(u)), classify(quotient_rep(rep, u)))] += 1
    return dict(counts)


def hall_count(rep: FqRep, m: Multipartition, n: Multipartition) -> int:
    """F^X_{MN} counted on an explicit representative ``rep`` of X."""
    count = 0
    for u in enumerate_submodules(rep, dim_vector(n)):
        if classify(sub_rep(u)) == n and classify(quotient_rep(rep, u)) == m:
            count += 1
    return count


def hall_number_brute(x: Multipartition, m: Multipartition, n: Multipartition, p: int) -> int:
    """F^X_{MN} over F_p: submodules U of X with U ~ N and X/U ~ M."""
    PrimeField(p)
    dx, dm, dn = dim_vector(x), dim_vector(m), dim_vector(n)
    if tuple(a + b for a, b in zip(dm, dn)) != dx or not (x.n == m.n == n.n):
        return 0
    return hall_table(x, dn, p).get((n, m), 0)


def submodule_count(x: Multipartition, n: Multipartition, p: int) -> int:
    """Number of submodules of X isomorphic to N."""
    return sum(c for (sub, _), c in hall_table(x, dim_vector(n), p).items() if sub == n)


DEFAULT_PROBES = (2, 3)


def ext_probe_counts(x: Multipartition, m: Multipartition, n: Multipartition,
                     probes: Sequence[int] = DEFAULT_PROBES) -> dict[int, int]:
    return {p: hall_number_brute(x, m, n, p) for p in probes}


def ext_exists(x: Multipartition, m: Multipartition, n: Multipartition,
               probes: Sequence[int] = DEFAULT_PROBES) -> bool:
    """Is there a short exact sequence 0 -> N -> X -> M -> 0?

    True when some probe field sees a positive Hall number.  Probes that
    disagree on zero versus nonzero are logged as warnings.
    """
    if not probes:
        raise ValueError("need at least one probe prime")
    counts = ext_probe_counts(x, m, n, probes)
    hits = [p for p, c in counts.items() if c > 0]
    if hits and len(hits) != len(counts):
        log.warning("ext probes disagree for X=%s M=%s N=%s: %s", x, m, n, counts)
    return bool(hits)


def classes_with_sub(x: Multipartition, n: Multipartition, p: int) -> set[Multipartition]:
    """Quotient classes M with F^X_{MN} > 0 over F_p."""
    return {quo for (sub, quo) in hall_table(x, dim_vector(n), p) if sub == n}


def extension_classes(m: Multipartition, n: Multipartition,
                      probes: Sequence[int] = DEFAULT_PROBES) -> list[Multipartition]:
    """Every X (in enumeration order) admitting 0 -> N -> X -> M -> 0."""
    grade = tuple(a + b for a, b in zip(dim_vector(m), dim_vector(n)))
    return [x for x in enumerate_classes(grade) if ext_exists(x, m, n, probes)]


def socle_dims(pi: Multipartition) -> DimVector:
    return tuple(len(c) for c in pi.components)


__all__ = [
    "FqRep", "Subrep", "NotNilpotentError", "canonical_rep", "zero_rep", "base_change",
    "random_invertible", "random_base_change", "hom_dim", "hom_space",
    "indecomposable_hom_dim", "class_hom_dim", "hom_profile_fq", "classify",
    "enumerate_submodules", "generated_subrep", "echelon_basis", "sub_rep",
    "quotient_rep", "hall_table", "hall_count", "hall_number_brute", "submodule_count",
    "ext_probe_counts", "ext_exists", "classes_with_sub", "extension_classes",
    "socle_dims", "DEFAULT_PROBES",
]
