"""The generic Hall algebra of the n-cycle, evaluated at a prime q.

Elements are integer combinations of class symbols u_pi.  Structure
constants come from brute-force Hall numbers, so every product here is an
honest count over F_q.  Hall polynomials are recovered by interpolating those
counts across primes.
"""

from __future__ import annotations

from functools import lru_cache
from typing import Mapping, Sequence

from .modp import PrimeField, first_primes
from .polynomial import IntPolynomial, interpolate_integer
from .quiver_core import (
    DimVector,
    Multipartition,
    Word,
    class_order_key,
    dim_vector,
    enumerate_classes,
    semisimple,
)
from .repfq import hall_number_brute, hall_table


class InterpolationError(ValueError):
    """The degree bound was too small to pin down a Hall polynomial."""


class HallElement:
    """A homogeneous element sum c_pi u_pi with integer coefficients."""

    __slots__ = ("n", "grade", "_terms")

    def __init__(self, terms: Mapping[Multipartition, int], grade: Sequence[int] | None = None):
        clean = {m: int(c) for m, c in terms.items() if c}
        grades = {dim_vector(m) for m in clean}
        if grade is not None:
            grades.add(tuple(grade))
        if len(grades) != 1:
            raise ValueError(f"terms are not homogeneous: grades {sorted(grades)}")
        self.grade: DimVector = grades.pop()
        self.n = len(self.grade)
        self._terms = dict(sorted(clean.items(), key=lambda kv: class_order_key(kv[0])))

    @classmethod
    def unit(cls, n: int) -> HallElement:
        return cls.basis(Multipartition(((),) * n))

    @classmethod
    def basis(cls, m: Multipartition) -> HallElement:
        return cls({m: 1})

    @classmethod
    def indicator(cls, members, grade: Sequence[int]) -> HallElement:
        return cls({m: 1 for m in members}, grade)

    def coeff(self, m: Multipartition) -> int:
        return self._terms.get(m, 0)

    def items(self):
        return self._terms.items()

    def support(self) -> list[Multipartition]:
        return list(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def __eq__(self, other):
        return isinstance(other, HallElement) and self.grade == other.grade and self._terms == other._terms

    def __hash__(self):
        return hash((self.grade, tuple(self._terms.items())))

    def __add__(self, other: HallElement) -> HallElement:
        if self.grade != other.grade:
            raise ValueError("cannot add elements of different grades")
        out = dict(self._terms)
        for m, c in other.items():
            out[m] = out.get(m, 0) + c
        return HallElement(out, self.grade)

    def __rmul__(self, scalar: int) -> HallElement:
        return HallElement({m: scalar * c for m, c in self.items()}, self.grade)

    def __repr__(self):
        if not self._terms:
            return f"HallElement(0, grade={self.grade})"
        return " + ".join(f"{c}*u{m}" for m, c in self.items())

    def to_json(self) -> dict:
        return {
            "grade": list(self.grade),
            "terms": [{"class": str(m), "coeff": str(c)} for m, c in self.items()],
        }

    @classmethod
    def from_json(cls, data: Mapping) -> HallElement:
        from .quiver_core import parse_multipartition

        grade = tuple(data["grade"])
        terms = {parse_multipartition(t["class"], len(grade)): int(t["coeff"]) for t in data["terms"]}
        return cls(terms, grade)


def multiply_at_q(a: HallElement, b: HallElement, p: int) -> HallElement:
    """The product a <> b with u_M <> u_N = sum_X F^X_{MN}(p) u_X."""
    if a.n != b.n:
        raise ValueError("elements live on different quivers")
    PrimeField(p)
    grade = tuple(x + y for x, y in zip(a.grade, b.grade))
    out = {}
    for x in enumerate_classes(grade):
        table = hall_table(x, b.grade, p)
        total = 0
        for (sub, quo), count in table.items():
            ca, cb = a.coeff(quo), b.coeff(sub)
            if ca and cb:
                total += ca * cb * count
        if total:
            out[x] = total
    return HallElement(out, grade)


@lru_cache(maxsize=None)
def word_monomial(w: Word, p: int) -> HallElement:
    """u_{N_1} <> u_{N_2} <> ... <> u_{N_r} at q = p, folded from the left."""
    if not w.letters:
        return HallElement.unit(w.n)
    return multiply_at_q(word_monomial(w.prefix(), p), HallElement.basis(semisimple(w.letters[-1])), p)


INCONSISTENT = None


def constant_term_mod(w: Word, primes: Sequence[int] = (2, 3)) -> dict[Multipartition, int | None]:
    """Constant term of each coefficient of u_w, read off residues mod p.

    The coefficient at q = p is congruent to its value at q = 0 modulo p.
    Classes map to 1 (residue 1 at every prime), 0 (residue 0 at every
    prime), or :data:`INCONSISTENT` when the residues disagree with both.
    """
    if len(set(primes)) != len(primes) or not primes:
        raise ValueError("need a non-empty list of distinct primes")
    monomials = [word_monomial(w, p) for p in primes]
    out = {}
    for x in enumerate_classes(w.grade):
        residues = {mono.coeff(x) % p for mono, p in zip(monomials, primes)}
        out[x] = residues.pop() if len(residues) == 1 and residues <= {0, 1} else INCONSISTENT
    return out


def default_degree_bound(x: Multipartition) -> int:
    return x.total ** 2


def interpolate_hall_polynomial(x: Multipartition, m: Multipartition, n: Multipartition,
                                degree_bound: int | None = None) -> IntPolynomial:
    """The Hall polynomial f^X_{MN}(q), by interpolation through brute-force counts.

    Uses the first ``degree_bound + 1`` primes as nodes and the next prime as a
    held-out check.  Raises :class:`InterpolationError` on a non-integral
    interpolant or a held-out mismatch; both mean the bound is too small.
    """
    if degree_bound is None:
        degree_bound = default_degree_bound(x)
    if degree_bound < 0:
        raise ValueError("degree bound must be non-negative")
    primes = first_primes(degree_bound + 2)
    values = [hall_number_brute(x, m, n, p) for p in primes]
    try:
        poly = interpolate_integer(primes[:-1], values[:-1])
    except ValueError as exc:
        raise InterpolationError(f"degree bound {degree_bound} too small: {exc}") from exc
    if poly(primes[-1]) != values[-1]:
        raise InterpolationError(
            f"degree bound {degree_bound} too small: interpolant gives {poly(primes[-1])} "
            f"at held-out q={primes[-1]}, count is {values[-1]}"
        )
    return poly
