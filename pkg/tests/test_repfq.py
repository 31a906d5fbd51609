import itertools
import random

import pytest
from hypothesis import given, settings, strategies as st

from cyclehall import modp
from cyclehall.quiver_core import (
    CycleQuiver,
    dim_vector,
    enumerate_classes,
    grades_up_to,
    parse_multipartition as P,
    semisimple,
)
from cyclehall.repfq import (
    FqRep,
    NotNilpotentError,
    base_change,
    canonical_rep,
    class_hom_dim,
    classify,
    enumerate_submodules,
    ext_exists,
    ext_probe_counts,
    generated_subrep,
    hall_count,
    hall_number_brute,
    hall_table,
    hom_dim,
    hom_profile_fq,
    hom_space,
    quotient_rep,
    random_base_change,
    sub_rep,
    submodule_count,
    zero_rep,
)

from conftest import multipartitions
from oracles import brute_hall, brute_hom_count, invariant_subspace_tuples, oracle_classify, oracle_sub_and_quotient


def classes(n, bound, nonzero=False):
    return [x for d in grades_up_to(n, bound) for x in enumerate_classes(d) if x.total or not nonzero]


def test_canonical_rep_jordan_block():
    x = canonical_rep(P("((2))"), 2)
    assert x.dims == (2,)
    assert x.maps == (((0, 0), (1, 0)),)


def test_canonical_rep_two_cycle():
    x = canonical_rep(P("((2),())"), 3)
    assert x.dims == (1, 1)
    # S_0[2] has top S_1 and socle S_0: the arrow 1 -> 0 carries it
    assert sorted(x.maps) == [((0,),), ((1,),)]
    assert x.maps[1] == ((1,),)
    assert classify(x) == P("((2),())")


def test_canonical_rep_semisimple_is_zero():
    assert canonical_rep(P("((1,1))"), 2).maps == (((0, 0), (0, 0)),)


def test_rep_validation():
    with pytest.raises(ValueError):
        FqRep(1, 2, (2,), (((0,),),))
    with pytest.raises(ValueError):
        canonical_rep(P("((1))"), 4)


def test_hom_dim_examples():
    s0 = canonical_rep(P("((1),())"), 2)
    s1 = canonical_rep(P("((),(1))"), 2)
    assert hom_dim(s0, s0) == 1
    assert hom_dim(s0, s1) == 0
    j2 = canonical_rep(P("((2))"), 2)
    assert hom_dim(j2, j2) == 2


@pytest.mark.parametrize("a,b,p", [
    ("((2))", "((2))", 2), ("((2))", "((1,1))", 3), ("((2),())", "((1),(1))", 2),
    ("((),(2))", "((2),())", 3), ("((1),(1))", "((1),(1))", 2), ("((2,1))", "((1))", 2),
])
def test_hom_dim_against_exhaustive_count(a, b, p):
    ra, rb = canonical_rep(P(a), p), canonical_rep(P(b), p)
    assert p ** hom_dim(ra, rb) == brute_hom_count(ra, rb)
    assert hom_dim(ra, rb) == class_hom_dim(P(a), P(b))


@pytest.mark.parametrize("n", [1, 2])
def test_hom_dim_field_independent(n):
    cls = classes(n, 5)
    for a, b in itertools.product(cls, repeat=2):
        if a.total + b.total > 5:
            continue
        expected = class_hom_dim(a, b)
        for p in (2, 3, 5):
            assert hom_dim(canonical_rep(a, p), canonical_rep(b, p)) == expected, (a, b, p)


def test_hom_profile_is_hom_from_indecomposables():
    rng = random.Random(1)
    for n in (1, 2, 3):
        for x in classes(n, 4, nonzero=True):
            rep = canonical_rep(x, 3)
            rep = base_change(rep, random_base_change(rep, rng))
            prof = hom_profile_fq(rep)
            for (i, l), h in prof.items():
                ind = canonical_rep(CycleQuiver(n).indecomposable(i, l), 3)
                assert hom_dim(ind, rep) == h


def test_hom_space_elements_intertwine():
    a, b = canonical_rep(P("((2,1),(1))"), 3), canonical_rep(P("((2),(2))"), 3)
    basis = hom_space(a, b)
    assert len(basis) == hom_dim(a, b)
    for t in basis:
        for i in range(2):
            j = (i + 1) % 2
            lhs = modp.matmul(t[j], a.maps[i], 3, cols=a.dims[i])
            rhs = modp.matmul(b.maps[i], t[i], 3, cols=a.dims[i])
            assert lhs == rhs


@pytest.mark.parametrize("n,bound", [(1, 5), (2, 5), (3, 5)])
def test_classify_round_trip(n, bound):
    for x in classes(n, bound):
        for p in (2, 3):
            assert classify(canonical_rep(x, p)) == x


def test_classify_zero_maps_is_semisimple():
    for d in [(3,), (2, 1), (1, 0, 2)]:
        assert classify(zero_rep(d, 3)) == semisimple(d)


def test_classify_invariant_under_base_change():
    rng = random.Random(7)
    for pi in [P("((2,1),(1))"), P("((3),(),(1,1))"), P("((3,2,1))")]:
        x = canonical_rep(pi, 3)
        for _ in range(100):
            y = base_change(x, random_base_change(x, rng))
            assert classify(y) == pi


@given(multipartitions(max_total=5), st.integers(0, 2 ** 32), st.sampled_from([2, 3]))
@settings(max_examples=60, deadline=None)
def test_classify_matches_rank_oracle(pi, seed, p):
    x = canonical_rep(pi, p)
    y = base_change(x, random_base_change(x, random.Random(seed)))
    assert classify(y) == oracle_classify(y) == pi


def test_classify_rejects_non_nilpotent():
    with pytest.raises(NotNilpotentError):
        classify(FqRep(1, 2, (1,), (((1,),),)))
    with pytest.raises(NotNilpotentError):
        classify(FqRep(2, 3, (1, 1), (((1,),), ((2,),))))


def test_base_change_group_action():
    rng = random.Random(3)
    x = canonical_rep(P("((2,1),(2))"), 3)
    ident = tuple(modp.identity(d) for d in x.dims)
    assert base_change(x, ident) == x
    g = random_base_change(x, rng)
    ginv = tuple(modp.inverse(gi, 3) for gi in g)
    assert base_change(base_change(x, g), ginv) == x
    with pytest.raises(ValueError):
        base_change(x, tuple(modp.zeros(d, d) for d in x.dims))


def test_enumerate_submodules_examples():
    x = canonical_rep(P("((1,1))"), 2)
    assert len(enumerate_submodules(x, (1,))) == 3
    y = canonical_rep(P("((2,1),(1))"), 3)
    assert len(enumerate_submodules(y, y.dims)) == 1
    assert len(enumerate_submodules(y, (0, 0))) == 1
    assert enumerate_submodules(y, (3, 0)) == []


@pytest.mark.parametrize("pi,p", [
    ("((2,1))", 2), ("((1,1,1))", 2), ("((2,1))", 3), ("((2),(1))", 2), ("((1),(2))", 3),
    ("((1,1),(1))", 2), ("((2),(),(1))", 2), ("((),(3),())", 2), ("((2,2))", 2),
])
def test_enumerate_submodules_matches_oracle(pi, p):
    x = canonical_rep(P(pi), p)
    x = base_change(x, random_base_change(x, random.Random(11)))
    for d in itertools.product(*(range(k + 1) for k in x.dims)):
        subs = enumerate_submodules(x, d)
        assert len(subs) == len(invariant_subspace_tuples(x, d))
        for u in subs:
            assert u.is_invariant()
            # quotient built on pivot complements agrees with the rank oracle
            choice = tuple(frozenset(_span(b, p, m)) for b, m in zip(u.bases, x.dims))
            sub_cls, quo_cls = oracle_sub_and_quotient(x, choice)
            assert classify(sub_rep(u)) == sub_cls
            assert classify(quotient_rep(x, u)) == quo_cls


def _span(basis, p, m):
    from oracles import span
    return span(basis, p, m)


def test_quotient_rep_examples():
    x = canonical_rep(P("((2,1))"), 2)
    zero = enumerate_submodules(x, (0,))[0]
    assert classify(quotient_rep(x, zero)) == P("((2,1))")
    whole = enumerate_submodules(x, (3,))[0]
    assert quotient_rep(x, whole).dims == (0,)
    # basis: top and socle of the length-2 block, then the length-1 block
    socle_line = generated_subrep(x, {0: [(0, 1, 0)]})
    assert socle_line.dims == (1,)
    assert classify(quotient_rep(x, socle_line)) == P("((1,1))")


def test_quotient_rep_rejects_non_invariant():
    from cyclehall.repfq import Subrep
    x = canonical_rep(P("((2))"), 2)
    bad = Subrep(x, (((1, 0),),))
    assert not bad.is_invariant()
    with pytest.raises(ValueError):
        quotient_rep(x, bad)
    with pytest.raises(ValueError):
        sub_rep(bad)


def test_hall_number_examples():
    assert hall_number_brute(P("((1,1))"), P("((1))"), P("((1))"), 2) == 3
    assert hall_number_brute(P("((2,1))"), P("((1,1))"), P("((1))"), 2) == 1
    assert hall_number_brute(P("((2,1))"), P("((2))"), P("((1))"), 2) == 2
    assert hall_number_brute(P("((2))"), P("((2))"), P("((1))"), 2) == 0


@pytest.mark.parametrize("n,bound,p", [(1, 4, 2), (2, 3, 2), (1, 3, 3), (2, 3, 3), (3, 3, 2)])
def test_hall_number_matches_exhaustive_oracle(n, bound, p):
    checked = 0
    for x in classes(n, bound, nonzero=True):
        rep = canonical_rep(x, p)
        for dn in grades_up_to(n, x.total):
            dm = tuple(a - b for a, b in zip(dim_vector(x), dn))
            if any(v < 0 for v in dm):
                continue
            for nn in enumerate_classes(dn):
                for m in enumerate_classes(dm):
                    assert hall_number_brute(x, m, nn, p) == brute_hall(rep, m, nn), (x, m, nn, p)
                    checked += 1
    assert checked > 20


def test_hall_numbers_partition_the_submodules():
    for x in classes(2, 4, nonzero=True):
        for nn in classes(2, x.total):
            dm = tuple(a - b for a, b in zip(dim_vector(x), dim_vector(nn)))
            if any(v < 0 for v in dm):
                continue
            total = sum(hall_number_brute(x, m, nn, 2) for m in enumerate_classes(dm))
            assert total == submodule_count(x, nn, 2)
            rep = canonical_rep(x, 2)
            assert total == sum(1 for u in enumerate_submodules(rep, dim_vector(nn)) if classify(sub_rep(u)) == nn)


def test_hall_number_invariant_under_base_change():
    rng = random.Random(5)
    x, m, nn = P("((2,1),(1))"), P("((1),(1))"), P("((1),())")
    rep = canonical_rep(x, 3)
    for _ in range(20):
        y = base_change(rep, random_base_change(rep, rng))
        assert hall_count(y, m, nn) == hall_number_brute(x, m, nn, 3)


def test_hall_number_dimension_mismatch():
    assert hall_number_brute(P("((2))"), P("((2))"), P("((2))"), 2) == 0
    assert hall_table(P("((1,1))"), (1,), 2) == {(P("((1))"), P("((1))")): 3}


def test_ext_exists_examples():
    assert ext_exists(P("((2))"), P("((1))"), P("((1))"))
    s0, s2 = P("((1),(),())"), P("((),(),(1))")
    assert ext_exists(P("((1),(),(1))"), s0, s2)
    assert not ext_exists(P("((),(),(2))"), s0, s2)
    # S_0[2] does extend S_2 (top) by S_0 (socle)
    assert ext_exists(P("((2),(),())"), s2, s0)
    assert not ext_exists(P("((2))"), P("((2))"), P("((1))"))
    assert ext_probe_counts(P("((1,1))"), P("((1))"), P("((1))"), (2, 3, 5)) == {2: 3, 3: 4, 5: 6}
    with pytest.raises(ValueError):
        ext_exists(P("((2))"), P("((1))"), P("((1))"), ())
