import itertools

import pytest
from hypothesis import given, strategies as st

from cyclehall.quiver_core import (
    CycleQuiver,
    Multipartition,
    Word,
    closed_form_simple,
    decrement,
    delete_part,
    dim_vector,
    direct_sum,
    enumerate_classes,
    grades_up_to,
    insert_pi,
    insertion_sources,
    parse_multipartition,
    parse_word,
    partitions_of,
    q_semisimple,
    q_single,
    remove_inserted,
    select,
    semisimple,
    simple_extension_profile,
    union,
    words_up_to,
)
from cyclehall.polynomial import IntPolynomial
from cyclehall.repfq import canonical_rep

from conftest import multipartitions
from oracles import all_partitions, brute_classes, naive_dims

P = parse_multipartition


def test_partition_helpers():
    assert delete_part((5, 3, 3, 1), 2) == (5, 3, 1)
    assert decrement((3, 1, 1)) == (2,)
    assert select((5, 3, 2, 1), {1, 3}) == (5, 2)
    assert union((3, 1), (2, 2)) == (3, 2, 2, 1)
    with pytest.raises(IndexError):
        delete_part((1,), 2)


def test_parse_and_format_round_trip():
    for text in ["((3,1),(2),())", "(())", "((1,1))", "((),(),(4,4,1))"]:
        assert str(P(text)) == text
    assert P(" ( (2, 1) , () ) ") == Multipartition(((2, 1), ()))


@pytest.mark.parametrize("text", ["((2,3))", "(1,2)", "((1),", "()", "((0))", "((1),)", "((a))"])
def test_parse_rejects_malformed(text):
    with pytest.raises(ValueError):
        P(text)


def test_parse_checks_component_count():
    with pytest.raises(ValueError):
        P("((1),())", n=3)


def test_cycle_quiver():
    q = CycleQuiver(3)
    assert q.arrows == [(0, 1), (1, 2), (2, 0)]
    assert q.vertex(-1) == 2
    assert q.indecomposable(1, 2) == P("((),(2),())")
    assert CycleQuiver(1).arrows == [(0, 0)]
    with pytest.raises(ValueError):
        CycleQuiver(0)


def test_dim_vector_examples():
    assert dim_vector(P("((3))")) == (3,)
    assert dim_vector(P("((2),())")) == (1, 1)


def test_dim_vector_n3_against_canonical_rep():
    pi = P("((1),(),(4))")
    # S_0[1] sits at 0; S_2[4] runs over 2, 1, 0, 2
    assert naive_dims(pi) == (2, 1, 2)
    assert dim_vector(pi) == (2, 1, 2)
    assert canonical_rep(pi, 2).dims == (2, 1, 2)


@given(multipartitions(), st.data())
def test_dim_vector_additive(a, data):
    b = data.draw(multipartitions(n=a.n))
    s = direct_sum(a, b)
    assert dim_vector(s) == tuple(x + y for x, y in zip(dim_vector(a), dim_vector(b)))
    assert sum(dim_vector(s)) == s.total
    assert dim_vector(s) == naive_dims(s)


def test_insert_pi_examples():
    assert insert_pi(P("((1))"), 0, 1) == P("((2))")
    assert insert_pi(P("((1),(1))"), 0, 1) == P("((2,1),())")
    with pytest.raises(IndexError):
        insert_pi(P("((),())"), 0, 1)


def test_insert_pi_zero_part_is_split_extension():
    pi = P("((2),(1))")
    assert insert_pi(pi, 1, 0) == direct_sum(pi, CycleQuiver(2).simple(1))


def _insertions(max_total):
    for n in (1, 2, 3):
        for d in grades_up_to(n, max_total - 1):
            for pi in enumerate_classes(d):
                for a in range(n):
                    for k in range(len(pi[a - 1]) + 1):
                        yield pi, a, k


def test_insertion_round_trip_up_to_dim_6():
    count = 0
    for pi, a, k in _insertions(6):
        rho = insert_pi(pi, a, k)
        l = (pi[a - 1][k - 1] if k else 0) + 1
        assert dim_vector(rho) == tuple(x + (v == a) for v, x in enumerate(dim_vector(pi)))
        assert remove_inserted(rho, a, l) == pi
        assert (pi, l) in insertion_sources(rho, a, k)
        count += 1
    assert count > 500


def test_q_single_examples():
    assert q_single(0, (3, 1), 1, 1) == P("((2,1))")
    assert q_single(1, (2, 2), 2, 2) == P("((1,1),())")
    assert q_single(0, (1, 1), 2, 1) == P("(())")
    with pytest.raises(IndexError):
        q_single(0, (1,), 2, 1)


def test_q_semisimple_examples():
    assert q_semisimple(P("((2,1),(1))"), (1, 1)) == P("((1),(1))")
    x = P("((3,1),(2))")
    assert q_semisimple(x, (0, 0)) == x
    assert q_semisimple(P("((2,2))"), (2,)) == P("((1,1))")
    with pytest.raises(ValueError):
        q_semisimple(P("((2),())"), (0, 1))


@given(multipartitions(max_total=6), st.data())
def test_q_semisimple_dimension(x, data):
    a = tuple(data.draw(st.integers(0, len(x[i]))) for i in range(x.n))
    q = q_semisimple(x, a)
    assert tuple(u + v for u, v in zip(dim_vector(q), a)) == dim_vector(x)


def test_closed_form_examples():
    assert closed_form_simple(P("((1,1))"), 0, 0) == IntPolynomial((1, 1))
    assert closed_form_simple(P("((2,1))"), 0, 1, source=P("((1,1))")) == IntPolynomial((1,))
    assert closed_form_simple(P("((2,1))"), 0, 0) == IntPolynomial((0, 1))


def test_closed_form_rejects_non_insertions_and_ambiguity():
    with pytest.raises(ValueError):
        closed_form_simple(P("((2),())"), 1, 1)
    # ((3,2),()) at a=0, k=1 comes from ((2),(2)) or from ((3),(1))
    with pytest.raises(ValueError, match="several sources"):
        closed_form_simple(P("((3,2),())"), 0, 1)
    # l = 3: the part 3 is alone and nothing is longer
    assert closed_form_simple(P("((3,2),())"), 0, 1, source=P("((2),(2))")) == IntPolynomial((1,))
    # l = 2: one part equal to 2, one longer
    assert closed_form_simple(P("((3,2),())"), 0, 1, source=P("((3),(1))")) == IntPolynomial((0, 1))


def test_closed_form_constant_term_dichotomy():
    for pi, a, k in _insertions(6):
        rho = insert_pi(pi, a, k)
        l = (pi[a - 1][k - 1] if k else 0) + 1
        prof = simple_extension_profile(rho, a, l)
        poly = closed_form_simple(rho, a, k, source=pi)
        assert prof.n_l >= 1 and prof.m_l + prof.n_l <= len(rho[a])
        assert (poly(0) == 1) == (prof.m_l == 0)


def test_enumerate_classes_examples():
    assert enumerate_classes((2,)) == [P("((2))"), P("((1,1))")]
    assert enumerate_classes((1, 0)) == [P("((1),())")]
    assert enumerate_classes((1, 1)) == [P("((2),())"), P("((),(2))"), P("((1),(1))")]


@pytest.mark.parametrize("n,bound", [(1, 7), (2, 5), (3, 4)])
def test_enumerate_classes_matches_exhaustive_search(n, bound):
    for d in grades_up_to(n, bound):
        got = enumerate_classes(d)
        assert len(got) == len(set(got))
        assert set(got) == brute_classes(d)


def test_enumerate_classes_n1_counts_partitions():
    for total in range(9):
        assert len(enumerate_classes((total,))) == len(all_partitions(total)) == len(list(partitions_of(total)))


def test_words():
    w = parse_word("1,0;0,1", 2)
    assert w.grade == (1, 1) and len(w) == 2 and str(w) == "1,0;0,1"
    assert w.semisimples() == [semisimple((1, 0)), semisimple((0, 1))]
    assert parse_word("", 2) == Word((), 2)
    with pytest.raises(ValueError):
        parse_word("1,0;0,0", 2)
    with pytest.raises(ValueError):
        parse_word("1;x", 1)
    with pytest.raises(ValueError):
        Word(((1, 0, 0),), 2)


def test_words_up_to_counts():
    # words in a single letter type: compositions of 0..4
    assert sum(1 for _ in words_up_to(1, 4)) == 1 + 1 + 2 + 4 + 8
    simple = list(words_up_to(2, 3, simple_only=True))
    assert len(simple) == 1 + 2 + 4 + 8
    assert all(sum(letter) == 1 for w in simple for letter in w.letters)
    seen = [w.letters for w in words_up_to(2, 3)]
    assert len(seen) == len(set(seen))
    assert set(seen) >= {tuple(x) for x in itertools.product([(1, 0), (0, 1)], repeat=3)}


def test_multipartition_iteration_is_finite():
    m = parse_multipartition("((2,1),(1),())")
    assert list(m) == [(2, 1), (1,), ()]
    assert len(m) == 3
    with pytest.raises((ValueError, TypeError)):
        q_single(0, m, 1, 3)
