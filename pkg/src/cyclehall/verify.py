"""Sweeps that check the structural theorems on every small instance.

Each ``verify_*`` function returns one or more :class:`Report` objects and
never raises on a mathematical failure; failures are collected with enough
context (classes as text) to reproduce them.  Sweeps accept ``jobs`` and farm
instances out to worker processes; results are merged in instance order, so
the output does not depend on the worker count.
"""

from __future__ import annotations

import graphlib
import itertools
import math
import random
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Callable, Iterable, Sequence

from . import modp, repfq
from .hall import HallElement, constant_term_mod
from .monoid import MonoidElement, deg_leq, eval_word, monoid_element, psi
from .quiver_core import (
    CycleQuiver,
    Multipartition,
    Word,
    closed_form_simple,
    dim_vector,
    direct_sum,
    enumerate_classes,
    grades_up_to,
    insert_pi,
    q_semisimple,
    semisimple,
    words_up_to,
)


@dataclass
class Report:
    check: str
    instances: int = 0
    failures: list[dict] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.failures

    def to_json(self) -> dict:
        return {"check": self.check, "instances": self.instances, "failures": self.failures}


def _run(fn: Callable, items: Sequence, jobs: int = 1) -> list:
    if jobs <= 1 or len(items) < 2:
        return [fn(item) for item in items]
    chunk = max(1, math.ceil(len(items) / (jobs * 4)))
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        return list(pool.map(fn, items, chunksize=chunk))


def _collect(check: str, results: Iterable[tuple[int, list[dict]]]) -> Report:
    report = Report(check)
    for count, failures in results:
        report.instances += count
        report.failures.extend(failures)
    return report


def classes_up_to(n: int, bound: int, nonzero: bool = False) -> list[Multipartition]:
    return [x for d in grades_up_to(n, bound) if not (nonzero and not any(d))
            for x in enumerate_classes(d)]


def semisimple_vectors(x: Multipartition, embeddable_only: bool = True) -> list[tuple[int, ...]]:
    """Nonzero multiplicity vectors a with a_i <= dim X_i (or <= socle multiplicity)."""
    caps = repfq.socle_dims(x) if embeddable_only else dim_vector(x)
    return [a for a in itertools.product(*(range(c + 1) for c in caps)) if any(a)]


# -- closed form for extensions by a simple -------------------------------------

def _simple_extension_instance(args):
    pi, a, k, primes = args
    rho = insert_pi(pi, a, k)
    poly = closed_form_simple(rho, a, k, source=pi)
    s = CycleQuiver(pi.n).simple(a)
    failures = []
    for p in primes:
        count = repfq.hall_number_brute(rho, pi, s, p)
        if count != poly(p):
            failures.append({"X": str(rho), "M": str(pi), "N": str(s), "a": a, "k": k,
                             "q": p, "closed_form": str(poly(p)), "brute": str(count)})
    return len(primes), failures


def simple_extension_instances(n: int, dim_bound: int) -> list[tuple[Multipartition, int, int]]:
    """Every (pi, a, k) whose insertion has total dimension <= dim_bound."""
    out = []
    for pi in classes_up_to(n, dim_bound - 1):
        for a in range(n):
            for k in range(len(pi[a - 1]) + 1):
                out.append((pi, a, k))
    return out


def verify_simple_extensions(n: int, dim_bound: int, primes: Sequence[int] = (2, 3, 5), jobs: int = 1) -> Report:
    items = [(pi, a, k, tuple(primes)) for pi, a, k in simple_extension_instances(n, dim_bound)]
    return _collect("simple_extensions", _run(_simple_extension_instance, items, jobs))


# -- Hall numbers modulo q for semisimple subs -----------------------------------

def _quotients_by_semisimple(x: Multipartition, a: Sequence[int], p: int) -> dict[Multipartition, int]:
    return {m: repfq.hall_number_brute(x, m, semisimple(a), p)
            for m in enumerate_classes(tuple(d - e for d, e in zip(dim_vector(x), a)))}


def _factorized_counts(x: Multipartition, a: Sequence[int], p: int) -> dict[Multipartition, int]:
    """sum over (M_0..M_{n-1}) with sum M_i ~ M of prod_i F^{X_i}_{M_i, S_i^{a_i}}."""
    n = x.n
    acc = {Multipartition(((),) * n): 1}
    for i in range(n):
        xi = Multipartition(tuple(x[i] if v == i else () for v in range(n)))
        ai = tuple(a[i] if v == i else 0 for v in range(n))
        if any(d < e for d, e in zip(dim_vector(xi), ai)):
            return {}
        local = {m: c for m, c in _quotients_by_semisimple(xi, ai, p).items() if c}
        nxt = {}
        for m1, c1 in acc.items():
            for m2, c2 in local.items():
                s = direct_sum(m1, m2)
                nxt[s] = nxt.get(s, 0) + c1 * c2
        acc = nxt
    return acc


def _semisimple_residue_instance(args):
    x, a, primes = args
    try:
        q = q_semisimple(x, a)
    except ValueError:
        q = None
    count = 0
    failures = []
    for p in primes:
        brute = _quotients_by_semisimple(x, a, p)
        factored = _factorized_counts(x, a, p)
        for m, c in brute.items():
            count += 1
            residue = c % p
            expected = 1 if m == q else 0
            if residue != expected:
                failures.append({"X": str(x), "N": str(semisimple(a)), "M": str(m), "q": p,
                                 "count": str(c), "Q": str(q), "kind": "residue"})
            if factored.get(m, 0) != c:
                failures.append({"X": str(x), "N": str(semisimple(a)), "M": str(m), "q": p,
                                 "count": str(c), "factorized": str(factored.get(m, 0)),
                                 "kind": "factorization"})
    return count, failures


def verify_semisimple_residues(n: int, dim_bound: int, primes: Sequence[int] = (2, 3), jobs: int = 1) -> Report:
    """Residues of F^X_{MN} for semisimple N: 1 exactly at M = Q(X, N), 0 elsewhere;
    plus the vertex-by-vertex factorization of the counts."""
    items = [(x, a, tuple(primes)) for x in classes_up_to(n, dim_bound, nonzero=True)
             for a in semisimple_vectors(x, embeddable_only=False)]
    return _collect("semisimple_residues", _run(_semisimple_residue_instance, items, jobs))


# -- monomials of words modulo q ------------------------------------------------

def _word_residue_instance(args):
    w, primes = args
    residues = constant_term_mod(w, primes)
    members = eval_word(w, primes).members
    failures = []
    for x, r in residues.items():
        want = int(x in members)
        if r != want:
            failures.append({"word": str(w), "class": str(x),
                             "constant_term": "inconsistent" if r is None else r,
                             "in_A_w": bool(want)})
    return 1, failures


def verify_word_residues(n: int, dim_bound: int, primes: Sequence[int] = (2, 3), jobs: int = 1,
                    simple_only: bool = False, check: str = "word_residues") -> Report:
    items = [(w, tuple(primes)) for w in words_up_to(n, dim_bound, simple_only)]
    return _collect(check, _run(_word_residue_instance, items, jobs))


# -- degenerations of quotients -------------------------------------------------

def _quotient_degeneration_instance(args):
    x, a, primes = args
    q = q_semisimple(x, a)
    n_class = semisimple(a)
    quotients = set()
    for p in primes:
        quotients |= repfq.classes_with_sub(x, n_class, p)
    failures = [{"X": str(x), "N": str(n_class), "M": str(m), "Q": str(q)}
                for m in sorted(quotients, key=str) if not deg_leq(m, q)]
    return len(quotients), failures


def verify_quotient_degenerations(n: int, dim_bound: int, primes: Sequence[int] = (2, 3), jobs: int = 1) -> Report:
    items = [(x, a, tuple(primes)) for x in classes_up_to(n, dim_bound, nonzero=True)
             for a in semisimple_vectors(x)]
    return _collect("quotient_degenerations", _run(_quotient_degeneration_instance, items, jobs))


def _line_quotient(rep: repfq.FqRep, vertex: int, v) -> Multipartition:
    u = repfq.generated_subrep(rep, {vertex: [v]})
    return repfq.classify(repfq.quotient_rep(rep, u))


def sample_line_quotients(n: int, dim_bound: int, samples: int, p: int = 2, seed: int = 0):
    """Yield random (M, vertex, h, g) with h a socle vector and g in End(M), g h != 0.

    M is realised as a random base change of its canonical representative so
    that h and g are not aligned with the block structure.
    """
    rng = random.Random(seed)
    pool = classes_up_to(n, dim_bound, nonzero=True)
    produced = 0
    while produced < samples:
        m = rng.choice(pool)
        rep = repfq.canonical_rep(m, p)
        rep = repfq.base_change(rep, repfq.random_base_change(rep, rng))
        vertex = rng.choice([i for i in range(n) if m[i]])
        socle = modp.nullspace(rep.maps[vertex], p, rep.dims[vertex])
        weights = [rng.randrange(p) for _ in socle]
        h = tuple(sum(c * b[r] for c, b in zip(weights, socle)) % p for r in range(rep.dims[vertex]))
        if not any(h):
            continue
        ends = repfq.hom_space(rep, rep)
        coeffs = [rng.randrange(p) for _ in ends]
        g = tuple(
            tuple(tuple(sum(c * e[i][r][s] for c, e in zip(coeffs, ends)) % p for s in range(rep.dims[i]))
                  for r in range(rep.dims[i]))
            for i in range(n)
        )
        gh = modp.matvec(g[vertex], h, p)
        if not any(gh):
            continue
        produced += 1
        yield m, rep, vertex, h, gh


def verify_line_quotients(n: int, dim_bound: int = 4, samples: int = 200, p: int = 2, seed: int = 0) -> Report:
    report = Report("line_quotients")
    for m, rep, vertex, h, gh in sample_line_quotients(n, dim_bound, samples, p, seed):
        report.instances += 1
        low, high = _line_quotient(rep, vertex, h), _line_quotient(rep, vertex, gh)
        if not deg_leq(low, high):
            report.failures.append({"M": str(m), "vertex": vertex, "h": list(h), "gh": list(gh),
                                    "M/h(S)": str(low), "M/gh(S)": str(high)})
    return report


def verify_degeneration_lemmas(n: int, dim_bound: int, samples: int = 200, sample_dim_bound: int = 4,
                               seed: int = 0, jobs: int = 1) -> list[Report]:
    return [
        verify_quotient_degenerations(n, dim_bound, jobs=jobs),
        verify_line_quotients(n, min(dim_bound, sample_dim_bound), samples, seed=seed),
    ]


# -- the map to the Hall algebra at q = 0 ----------------------------------------

def _order_checks(classes: list[Multipartition]) -> list[dict]:
    failures = []
    for a in classes:
        if not deg_leq(a, a):
            failures.append({"class": str(a), "kind": "reflexivity"})
    for a, b in itertools.permutations(classes, 2):
        if deg_leq(a, b) and deg_leq(b, a):
            failures.append({"classes": [str(a), str(b)], "kind": "antisymmetry"})
    for a, b, c in itertools.permutations(classes, 3):
        if deg_leq(a, b) and deg_leq(b, c) and not deg_leq(a, c):
            failures.append({"classes": [str(a), str(b), str(c)], "kind": "transitivity"})
    return failures


def _psi_grade(d):
    classes = enumerate_classes(d)
    failures = _order_checks(classes)
    images = {x: psi(MonoidElement(x)) for x in classes}
    for x, img in images.items():
        upset = {y for y in classes if deg_leq(x, y)}
        if img.coeff(x) != 1 or set(img.support()) != upset or any(c != 1 for _, c in img.items()):
            failures.append({"class": str(x), "kind": "unitriangular",
                             "image": [str(m) for m in img.support()]})
    # the images are triangular with respect to any linear extension of the order
    sorter = graphlib.TopologicalSorter({x: [y for y in classes if y != x and deg_leq(y, x)] for x in classes})
    try:
        order = list(sorter.static_order())
    except graphlib.CycleError as exc:
        failures.append({"grade": list(d), "kind": "order_cycle", "cycle": [str(c) for c in exc.args[1]]})
        order = classes
    pos = {x: i for i, x in enumerate(order)}
    for x, img in images.items():
        if any(pos[y] < pos[x] for y in img.support()):
            failures.append({"class": str(x), "kind": "not_triangular"})
    return len(classes), failures


def _graded_dim(d):
    classes = enumerate_classes(d)
    distinct = len({psi(MonoidElement(x)) for x in classes})
    if distinct != len(classes):
        return 1, [{"grade": list(d), "classes": len(classes), "distinct_images": distinct}]
    return 1, []


def _psi_word(args):
    w, primes = args
    residues = constant_term_mod(w, primes)
    image = psi(monoid_element(w, primes))
    if any(r is None for r in residues.values()):
        return 1, [{"word": str(w), "kind": "inconsistent residues"}]
    target = HallElement({x: r for x, r in residues.items()}, w.grade)
    if image != target:
        return 1, [{"word": str(w), "psi": [str(m) for m in image.support()],
                    "u_w_mod_q": [str(m) for m in target.support()]}]
    return 1, []


def verify_psi_iso(n: int, dim_bound: int, triangular_bound: int | None = None,
                   word_bound: int | None = None, primes: Sequence[int] = (2, 3),
                   jobs: int = 1) -> list[Report]:
    """Unitriangularity of psi on orbit closures, equality of graded dimensions,
    and psi(A_w) = u_w mod q on words (all semisimple words, then simple-only)."""
    tri = dim_bound if triangular_bound is None else triangular_bound
    wb = dim_bound if word_bound is None else word_bound
    grades_tri = list(grades_up_to(n, tri))
    grades_all = list(grades_up_to(n, dim_bound))
    words = [(w, tuple(primes)) for w in words_up_to(n, wb)]
    simple_words = [(w, tuple(primes)) for w in words_up_to(n, wb, simple_only=True)]
    return [
        _collect("psi_unitriangular", _run(_psi_grade, grades_tri, jobs)),
        _collect("psi_graded_dimension", _run(_graded_dim, grades_all, jobs)),
        _collect("psi_words", _run(_psi_word, words, jobs)),
        _collect("simple_words", _run(_psi_word, simple_words, jobs)),
    ]


SUITES = ("simple_extensions", "semisimple_residues", "word_residues", "degeneration", "psi")
# older short names, still accepted on the command line
SUITE_ALIASES = {"corollary2": "simple_extensions", "lemma3": "semisimple_residues", "theorem7": "word_residues"}


def run_suite(name: str, n: int, dim_bound: int, jobs: int = 1) -> list[Report]:
    name = SUITE_ALIASES.get(name, name)
    if name == "simple_extensions":
        return [verify_simple_extensions(n, dim_bound, jobs=jobs)]
    if name == "semisimple_residues":
        return [verify_semisimple_residues(n, dim_bound, jobs=jobs)]
    if name == "word_residues":
        return [verify_word_residues(n, dim_bound, jobs=jobs)]
    if name == "degeneration":
        return verify_degeneration_lemmas(n, dim_bound, jobs=jobs)
    if name == "psi":
        return verify_psi_iso(n, dim_bound, jobs=jobs)
    if name == "all":
        return [r for s in SUITES for r in run_suite(s, n, dim_bound, jobs)]
    raise ValueError(f"unknown suite {name!r}")
