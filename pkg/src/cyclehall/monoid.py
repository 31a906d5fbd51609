"""The generic extension monoid of the n-cycle.

Degenerations are decided by the hom order: M degenerates to N when both
have the same dimension vector and every indecomposable I has
dim Hom(I, M) <= dim Hom(I, N).  A monoid element is stored as the
orbit closure of a single generator class; :func:`eval_word` computes the
same sets independently by iterating extensions, and
:func:`monoid_element` refuses to return when the two disagree.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Sequence

from .hall import HallElement
from .quiver_core import (
    DimVector,
    Multipartition,
    Word,
    class_order_key,
    dim_vector,
    direct_sum,
    enumerate_classes,
    semisimple,
)
from .repfq import DEFAULT_PROBES, class_hom_dim, classes_with_sub, ext_exists, indecomposables_up_to


class GenericExtensionError(RuntimeError):
    """No unique extension of maximal orbit dimension."""


class ConsistencyError(RuntimeError):
    """Two independent descriptions of the same monoid element disagree."""


@lru_cache(maxsize=None)
def hom_profile(m: Multipartition, max_length: int | None = None) -> tuple[int, ...]:
    """dim Hom(S_i[l], M) over indecomposables ordered by (l, i), l <= max_length."""
    L = m.total if max_length is None else max_length
    n = m.n
    return tuple(
        class_hom_dim(Multipartition(tuple((l,) if v == i else () for v in range(n))), m)
        for i, l in indecomposables_up_to(n, L)
    )


def deg_leq(m: Multipartition, n: Multipartition) -> bool:
    """M <=_deg N in the hom order (N is the more degenerate class)."""
    if m.n != n.n or dim_vector(m) != dim_vector(n):
        return False
    L = m.total
    return all(a <= b for a, b in zip(hom_profile(m, L), hom_profile(n, L)))


def end_dim(m: Multipartition) -> int:
    return class_hom_dim(m, m)


def orbit_dim(m: Multipartition) -> int:
    return sum(d * d for d in dim_vector(m)) - end_dim(m)


@lru_cache(maxsize=None)
def generic_extension(m: Multipartition, n: Multipartition,
                      probes: tuple[int, ...] = DEFAULT_PROBES) -> Multipartition:
    """The extension of M (quotient) by N (sub) whose orbit has maximal dimension."""
    grade = tuple(a + b for a, b in zip(dim_vector(m), dim_vector(n)))
    candidates = [x for x in enumerate_classes(grade) if ext_exists(x, m, n, probes)]
    if not candidates:
        raise GenericExtensionError(f"no extension of {m} by {n} found; the split one must exist")
    best = max(orbit_dim(x) for x in candidates)
    top = [x for x in candidates if orbit_dim(x) == best]
    if len(top) > 1:
        raise GenericExtensionError(
            f"extensions of {m} by {n} tie at orbit dimension {best}: {', '.join(map(str, top))}"
        )
    return top[0]


@dataclass(frozen=True)
class IsoClassSet:
    grade: DimVector
    members: frozenset

    def __post_init__(self):
        object.__setattr__(self, "members", frozenset(self.members))
        for m in self.members:
            if dim_vector(m) != tuple(self.grade):
                raise ValueError(f"{m} does not have grade {self.grade}")

    def sorted(self) -> list[Multipartition]:
        return sorted(self.members, key=class_order_key)

    def __contains__(self, m):
        return m in self.members

    def __len__(self):
        return len(self.members)


@dataclass(frozen=True)
class MonoidElement:
    """The orbit closure of ``generator``."""

    generator: Multipartition

    @property
    def grade(self) -> DimVector:
        return dim_vector(self.generator)

    def iso_classes(self) -> IsoClassSet:
        return IsoClassSet(
            self.grade,
            (y for y in enumerate_classes(self.grade) if deg_leq(self.generator, y)),
        )


def unit(n: int) -> MonoidElement:
    return MonoidElement(Multipartition(((),) * n))


@lru_cache(maxsize=None)
def eval_word(w: Word, probes: tuple[int, ...] = DEFAULT_PROBES) -> IsoClassSet:
    """[A_w] by iterated extension: X is in [A_{wN}] when some M in [A_w]
    admits 0 -> N -> X -> M -> 0."""
    if not w.letters:
        return IsoClassSet((0,) * w.n, {Multipartition(((),) * w.n)})
    previous = eval_word(w.prefix(), probes).members
    letter = semisimple(w.letters[-1])
    members = set()
    for x in enumerate_classes(w.grade):
        quotients = set().union(*(classes_with_sub(x, letter, p) for p in probes))
        if quotients & previous:
            members.add(x)
    return IsoClassSet(w.grade, members)


def fold_generic(w: Word, probes: tuple[int, ...] = DEFAULT_PROBES) -> Multipartition:
    """G_w: the generic extension folded over the letters of w."""
    g = Multipartition(((),) * w.n)
    for letter in w.letters:
        g = generic_extension(g, semisimple(letter), probes)
    return g


def monoid_element(w: Word, probes: tuple[int, ...] = DEFAULT_PROBES) -> MonoidElement:
    """A_w as an orbit closure, after checking it against :func:`eval_word`."""
    elem = MonoidElement(fold_generic(w, probes))
    expected = eval_word(w, probes)
    got = elem.iso_classes()
    if got != expected:
        raise ConsistencyError(
            f"word {w}: closure of {elem.generator} is {sorted(map(str, got.members))}, "
            f"iterated extensions give {sorted(map(str, expected.members))}"
        )
    return elem


def psi(a: MonoidElement) -> HallElement:
    """Sum of u_M over the isomorphism classes M in a."""
    classes = a.iso_classes()
    return HallElement.indicator(classes.members, classes.grade)


def multiply(a: MonoidElement, b: MonoidElement, probes: tuple[int, ...] = DEFAULT_PROBES) -> MonoidElement:
    """a * b for orbit closures: the closure of the generic extension."""
    return MonoidElement(generic_extension(a.generator, b.generator, probes))


def is_extension_degeneration(x: Multipartition, m: Multipartition, n: Multipartition,
                              probes: Sequence[int] = DEFAULT_PROBES) -> bool:
    """An extension X of M by N always degenerates to M + N; True when that holds
    (vacuously when there is no such extension)."""
    return not ext_exists(x, m, n, tuple(probes)) or deg_leq(x, direct_sum(m, n))


def minimal_elements(classes: Iterable[Multipartition]) -> list[Multipartition]:
    classes = list(classes)
    return [c for c in classes if not any(d != c and deg_leq(d, c) for d in classes)]
