"""Field-free combinatorics of the oriented cycle with n vertices.

Vertices are ``0..n-1`` with one arrow ``i -> i+1 (mod n)``.  The indecomposable
nilpotent module ``S_i[l]`` has socle ``S_i`` and composition factors
``S_i, S_{i-1}, ..., S_{i-l+1}`` from the socle up to the top.  A nilpotent
module is named by a :class:`Multipartition`: component ``i`` lists the lengths
of its summands with socle ``S_i``.

Partitions are plain tuples of positive ints in weakly decreasing order, and
part indices are 1-based wherever they appear in an API (``k`` in
:func:`insert_pi`, :func:`q_single`).
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Iterator, Sequence

from .polynomial import IntPolynomial, geometric_sum

Partition = tuple[int, ...]
DimVector = tuple[int, ...]


# -- partitions --------------------------------------------------------------

def is_partition(parts) -> bool:
    return all(isinstance(x, int) and x > 0 for x in parts) and all(
        a >= b for a, b in zip(parts, parts[1:])
    )


def check_partition(parts) -> Partition:
    parts = tuple(parts)
    if not is_partition(parts):
        raise ValueError(f"not a partition (positive, weakly decreasing): {parts}")
    return parts


def delete_part(p: Partition, k: int) -> Partition:
    """p(k): drop the k-th part (1-based)."""
    if not 1 <= k <= len(p):
        raise IndexError(f"part index {k} out of range for {p}")
    return p[: k - 1] + p[k:]


def decrement(p: Partition) -> Partition:
    """p - 1, with parts that hit zero dropped."""
    return tuple(x - 1 for x in p if x > 1)


def select(p: Partition, positions: Iterable[int]) -> Partition:
    """p_T for a set T of 1-based positions."""
    return tuple(p[t - 1] for t in sorted(set(positions)))


def union(*ps: Partition) -> Partition:
    return tuple(sorted(itertools.chain.from_iterable(ps), reverse=True))


def partitions_of(total: int, max_part: int | None = None) -> Iterator[Partition]:
    """Partitions of ``total`` in reverse-lexicographic order ((3), (2,1), (1,1,1))."""
    if max_part is None:
        max_part = total
    if total == 0:
        yield ()
        return
    for first in range(min(total, max_part), 0, -1):
        for rest in partitions_of(total - first, first):
            yield (first,) + rest


# -- the quiver and its modules ---------------------------------------------

@dataclass(frozen=True)
class CycleQuiver:
    n: int

    def __post_init__(self):
        if not isinstance(self.n, int) or self.n < 1:
            raise ValueError(f"cycle needs at least one vertex, got {self.n!r}")

    def vertex(self, i: int) -> int:
        return i % self.n

    @property
    def arrows(self) -> list[tuple[int, int]]:
        return [(i, (i + 1) % self.n) for i in range(self.n)]

    def zero(self) -> Multipartition:
        return Multipartition(((),) * self.n)

    def simple(self, i: int) -> Multipartition:
        return self.indecomposable(i, 1)

    def indecomposable(self, i: int, length: int) -> Multipartition:
        comps = [()] * self.n
        comps[i % self.n] = (length,)
        return Multipartition(tuple(comps))


@dataclass(frozen=True)
class Multipartition:
    """Isomorphism class of a nilpotent representation of the n-cycle."""

    components: tuple[Partition, ...]

    def __post_init__(self):
        comps = tuple(check_partition(c) for c in self.components)
        if not comps:
            raise ValueError("a multipartition needs at least one component")
        object.__setattr__(self, "components", comps)

    @property
    def n(self) -> int:
        return len(self.components)

    @property
    def quiver(self) -> CycleQuiver:
        return CycleQuiver(self.n)

    def __getitem__(self, i: int) -> Partition:
        return self.components[i % self.n]

    def __iter__(self):
        # indexing wraps around the cycle, so iteration must be bounded explicitly
        return iter(self.components)

    def __len__(self):
        return self.n

    def __str__(self):
        return "(" + ",".join("(" + ",".join(map(str, c)) + ")" for c in self.components) + ")"

    def __repr__(self):
        return f"Multipartition({self})"

    @property
    def total(self) -> int:
        return sum(sum(c) for c in self.components)

    @property
    def num_summands(self) -> int:
        return sum(len(c) for c in self.components)

    def summands(self) -> list[tuple[int, int]]:
        """(socle vertex, length) for each indecomposable summand, in storage order."""
        return [(i, l) for i, c in enumerate(self.components) for l in c]

    def is_zero(self) -> bool:
        return not any(self.components)

    def is_semisimple(self) -> bool:
        return all(l == 1 for c in self.components for l in c)

    def __add__(self, other: Multipartition) -> Multipartition:
        return direct_sum(self, other)


_PART_RE = re.compile(r"\(([0-9,\s]*)\)")


def parse_multipartition(text: str, n: int | None = None) -> Multipartition:
    """Parse the text form ``((3,1),(2),())``.

    Raises ValueError on malformed syntax, on parts that are not weakly
    decreasing, or when ``n`` is given and the component count differs.
    """
    s = text.strip()
    if not (s.startswith("(") and s.endswith(")")):
        raise ValueError(f"multipartition must be parenthesised: {text!r}")
    inner = s[1:-1].strip()
    comps = []
    pos = 0
    while pos < len(inner):
        m = _PART_RE.match(inner, pos)
        if not m:
            raise ValueError(f"cannot parse multipartition {text!r} near position {pos + 1}")
        body = m.group(1).strip()
        parts = [] if not body else [int(x) for x in body.split(",")]
        comps.append(tuple(parts))
        pos = m.end()
        rest = inner[pos:].lstrip()
        if rest.startswith(","):
            rest = rest[1:].lstrip()
            if not rest:
                raise ValueError(f"trailing comma in {text!r}")
        pos = len(inner) - len(rest)
    if not comps:
        raise ValueError(f"empty multipartition {text!r}; write one () per vertex")
    if n is not None and len(comps) != n:
        raise ValueError(f"expected {n} components, got {len(comps)} in {text!r}")
    return Multipartition(tuple(comps))


def indecomposable_dims(i: int, length: int, n: int) -> DimVector:
    """Dimension vector of S_i[length]: one at each of i, i-1, ..., i-length+1."""
    full, rest = divmod(length, n)
    return tuple(full + ((i - v) % n < rest) for v in range(n))


def dim_vector(m: Multipartition) -> DimVector:
    d = [0] * m.n
    for i, l in m.summands():
        for v, x in enumerate(indecomposable_dims(i, l, m.n)):
            d[v] += x
    return tuple(d)


def direct_sum(a: Multipartition, b: Multipartition) -> Multipartition:
    if a.n != b.n:
        raise ValueError("multipartitions live on different quivers")
    return Multipartition(tuple(union(x, y) for x, y in zip(a.components, b.components)))


def semisimple(multiplicities: Sequence[int]) -> Multipartition:
    """The class of S_0^{a_0} + ... + S_{n-1}^{a_{n-1}}."""
    if any(a < 0 for a in multiplicities):
        raise ValueError(f"negative multiplicity in {tuple(multiplicities)}")
    return Multipartition(tuple((1,) * a for a in multiplicities))


# -- insertion and its inverse ------------------------------------------------

def insert_pi(pi: Multipartition, a: int, k: int) -> Multipartition:
    """The class pi_{a,k} of an extension of pi by the simple S_a.

    Deletes the k-th part of pi^(a-1) and adds that part plus one to pi^(a).
    ``k = 0`` stands for the zero part past the end, i.e. the split extension
    pi + S_a with a new part of length 1.
    """
    n = pi.n
    a %= n
    src = (a - 1) % n
    source = pi[src]
    if k == 0:
        moved = 0
        remaining = source
    elif 1 <= k <= len(source):
        moved = source[k - 1]
        remaining = delete_part(source, k)
    else:
        raise IndexError(f"part index {k} out of range for component {src} of {pi}")
    comps = list(pi.components)
    comps[src] = remaining
    comps[a] = union(comps[a], (moved + 1,))
    return Multipartition(tuple(comps))


def remove_inserted(rho: Multipartition, a: int, l: int) -> Multipartition:
    """Undo an insertion: take a part ``l`` out of rho^(a) and put ``l - 1`` back
    into rho^(a-1) (nothing when ``l == 1``)."""
    n = rho.n
    a %= n
    target = list(rho[a])
    if l not in target:
        raise ValueError(f"component {a} of {rho} has no part {l}")
    target.remove(l)
    comps = list(rho.components)
    comps[a] = tuple(target)
    src = (a - 1) % n
    comps[src] = union(comps[src], (l - 1,) if l > 1 else ())
    return Multipartition(tuple(comps))


def insertion_sources(rho: Multipartition, a: int, k: int) -> list[tuple[Multipartition, int]]:
    """All (pi, l) with ``insert_pi(pi, a, k) == rho``."""
    out = []
    for l in sorted(set(rho[a % rho.n])):
        pi = remove_inserted(rho, a, l)
        try:
            if insert_pi(pi, a, k) == rho:
                out.append((pi, l))
        except IndexError:
            pass
    return out


# -- distinguished quotients by semisimples -----------------------------------

def q_single(i: int, p: Partition, k: int, n: int) -> Multipartition:
    """Q(X, k) for X = S_i[p]: S_{i-1}[p_{1..k} - 1] + S_i[p_{k+1..m}]."""
    p = check_partition(p)
    if not 0 <= k <= len(p):
        raise IndexError(f"cannot quotient S_{i}[{p}] by {k} copies of its socle simple")
    comps = [()] * n
    comps[(i - 1) % n] = decrement(p[:k])
    comps[i % n] = union(comps[i % n], p[k:])
    return Multipartition(tuple(comps))


def q_semisimple(x: Multipartition, nvec: Sequence[int]) -> Multipartition:
    """Q(X, N) for N = sum_i S_i^{a_i}.

    Raises ValueError when some ``a_i`` exceeds the number of summands of X
    with socle S_i, i.e. when N does not embed in X at all.
    """
    if len(nvec) != x.n:
        raise ValueError(f"semisimple {tuple(nvec)} has wrong length for n={x.n}")
    for i, a in enumerate(nvec):
        if a > len(x[i]):
            raise ValueError(f"S_{i}^{a} does not embed in {x}: socle multiplicity is {len(x[i])}")
    result = x.quiver.zero()
    for i, a in enumerate(nvec):
        result = direct_sum(result, q_single(i, x[i], a, x.n))
    return result


# -- extensions by a simple ----------------------------------------------------

@dataclass(frozen=True)
class SimpleExtensionProfile:
    """Data entering the closed form for extensions of M by S_a.

    ``n_l`` counts parts of rho^(a) equal to ``l``; ``m_l`` counts parts
    strictly greater than ``l``.
    """

    a: int
    l: int
    n_l: int
    m_l: int

    def polynomial(self) -> IntPolynomial:
        return IntPolynomial.monomial(self.m_l) * geometric_sum(self.n_l)


def simple_extension_profile(rho: Multipartition, a: int, l: int) -> SimpleExtensionProfile:
    parts = rho[a]
    return SimpleExtensionProfile(
        a=a % rho.n,
        l=l,
        n_l=sum(1 for x in parts if x == l),
        m_l=sum(1 for x in parts if x > l),
    )


def closed_form_simple(rho: Multipartition, a: int, k: int, source: Multipartition | None = None) -> IntPolynomial:
    """Hall polynomial of rho as an extension of its source by S_a.

    Returns ``q^m_l * (1 + q + ... + q^(n_l - 1))``.  The source pi is found by
    reversing the insertion; when (rho, a, k) admits more than one source
    (possible once rho^(a-1) is short), pass it explicitly.
    """
    candidates = insertion_sources(rho, a, k)
    if source is not None:
        candidates = [(pi, l) for pi, l in candidates if pi == source]
    if not candidates:
        raise ValueError(f"{rho} is not an insertion at (a={a}, k={k})"
                         + (f" of {source}" if source is not None else ""))
    if len(candidates) > 1:
        raise ValueError(f"{rho} arises from several sources at (a={a}, k={k}); pass source=")
    _, l = candidates[0]
    return simple_extension_profile(rho, a, l).polynomial()


# -- enumeration ----------------------------------------------------------------

def class_order_key(m: Multipartition):
    """Fewer summands first, then componentwise reverse-lexicographic."""
    return (m.num_summands, tuple(tuple(-x for x in c) + (0,) for c in m.components))


@lru_cache(maxsize=None)
def _enumerate_classes(d: DimVector) -> tuple[Multipartition, ...]:
    n = len(d)
    total = sum(d)
    found = []
    for sizes in itertools.product(range(total + 1), repeat=n):
        if sum(sizes) != total:
            continue
        for comps in itertools.product(*(list(partitions_of(s)) for s in sizes)):
            m = Multipartition(comps)
            if dim_vector(m) == d:
                found.append(m)
    found.sort(key=class_order_key)
    return tuple(found)


def enumerate_classes(d: Sequence[int]) -> list[Multipartition]:
    """Every isomorphism class with dimension vector ``d``, once, in
    :func:`class_order_key` order.  The quiver is the cycle with ``len(d)``
    vertices."""
    d = tuple(d)
    if not d or any(x < 0 for x in d):
        raise ValueError(f"bad dimension vector {d}")
    return list(_enumerate_classes(d))


def grades_up_to(n: int, bound: int) -> Iterator[DimVector]:
    """Dimension vectors with total in ``0..bound``, by total then lexicographically."""
    for total in range(bound + 1):
        for d in sorted(itertools.product(range(total + 1), repeat=n), reverse=True):
            if sum(d) == total:
                yield d


# -- words of semisimples -----------------------------------------------------

@dataclass(frozen=True)
class Word:
    """A sequence of semisimple classes, each given by its multiplicity vector."""

    letters: tuple[tuple[int, ...], ...]
    n: int

    def __post_init__(self):
        letters = tuple(tuple(int(x) for x in letter) for letter in self.letters)
        for letter in letters:
            if len(letter) != self.n:
                raise ValueError(f"letter {letter} does not have {self.n} entries")
            if any(x < 0 for x in letter):
                raise ValueError(f"negative multiplicity in letter {letter}")
            if not any(letter):
                raise ValueError("empty letters are not allowed; use the empty word for the unit")
        object.__setattr__(self, "letters", letters)

    def __len__(self):
        return len(self.letters)

    @property
    def grade(self) -> DimVector:
        return tuple(sum(col) for col in zip(*self.letters)) if self.letters else (0,) * self.n

    def prefix(self) -> Word:
        return Word(self.letters[:-1], self.n)

    def semisimples(self) -> list[Multipartition]:
        return [semisimple(letter) for letter in self.letters]

    def __str__(self):
        return ";".join(",".join(map(str, letter)) for letter in self.letters)


def parse_word(text: str, n: int) -> Word:
    """Letters are comma-separated multiplicities joined by semicolons: ``1,0;0,1``."""
    text = text.strip()
    if not text:
        return Word((), n)
    try:
        letters = [tuple(int(x) for x in chunk.split(",")) for chunk in text.split(";")]
    except ValueError as exc:
        raise ValueError(f"cannot parse word {text!r}") from exc
    return Word(tuple(letters), n)


def _letters_within(budget: int, n: int) -> list[tuple[int, ...]]:
    out = [v for v in itertools.product(range(budget + 1), repeat=n) if 0 < sum(v) <= budget]
    return sorted(out, key=lambda v: (sum(v), tuple(-x for x in v)))


def words_up_to(n: int, bound: int, simple_only: bool = False) -> Iterator[Word]:
    """All words of semisimples with total dimension at most ``bound``.

    With ``simple_only`` every letter is a single simple S_i.
    """
    def extend(prefix, budget):
        yield Word(tuple(prefix), n)
        letters = (
            [tuple(int(j == i) for j in range(n)) for i in range(n)] if simple_only
            else _letters_within(budget, n)
        )
        for letter in letters:
            if sum(letter) <= budget:
                yield from extend(prefix + [letter], budget - sum(letter))

    yield from extend([], bound)
