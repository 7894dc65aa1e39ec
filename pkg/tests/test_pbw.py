from fractions import Fraction

import pytest
from hypothesis import assume, given, strategies as st

from gradedwhittaker.algebra import WindowExceeded, virasoro, w22
from gradedwhittaker.grading import Degree
from gradedwhittaker.pbw import (
    Partition, UElement, commutator_monomial, enumerate_basis, multiply, normal_order_word,
    phi_component, power, split_parts, term_degree,
)
from oracles import brute_partitions, naive_normal_form

D = Degree
VIR = virasoro(level=8)
W22 = w22(level=8)


def mono(alg, *parts, coeff=1):
    return UElement.monomial(alg, [D(p) for p in parts], coeff)


def test_partition_surgery():
    lam = Partition([D(0), D(-2), D(-1), D(-2)])
    assert tuple(lam) == (D(-2), D(-2), D(-1), D(0))
    assert lam.length == 4
    assert lam.multiplicity(D(-2)) == 2
    assert lam.size(1) == D(-5)
    assert lam.prefix(1) == Partition([D(-2)])
    assert lam.suffix(2) == Partition([D(-1), D(0)])
    assert lam.delete(3) == Partition([D(-2), D(-2), D(0)])
    assert Partition().size(2) == D((0, 0))


def test_multiply_examples():
    assert mono(VIR, -1) * mono(VIR, -2) == mono(VIR, -2, -1) - mono(VIR, -3)
    assert mono(VIR, -2) * mono(VIR, -1) == mono(VIR, -2, -1)
    assert mono(VIR, 1) * mono(VIR, -1) == mono(VIR, -1, 1) - mono(VIR, 0, coeff=2)


def test_commutator_examples():
    lhs = commutator_monomial(VIR, D(2), [D(-1), D(-1)])
    assert lhs == mono(VIR, -1, 1, coeff=-6) + mono(VIR, 0, coeff=6)
    a, lam = mono(VIR, 2), mono(VIR, -1, -1)
    assert lhs == a * lam - lam * a
    assert commutator_monomial(VIR, D(1), []).is_zero()
    assert commutator_monomial(VIR, D(1), [D(-2)]) == mono(VIR, -1, coeff=-3)


def test_central_terms_appear():
    u = mono(VIR, 2) * mono(VIR, -2)
    c = UElement.generator(VIR, VIR.resolve("c"))
    assert u == mono(VIR, -2, 2) - mono(VIR, 0, coeff=4) + c.scale(Fraction(1, 2))


def test_enumerate_examples():
    got = enumerate_basis(VIR, "b_minus", 2, 2)
    assert set(got) == {(), (D(0),), (D(0), D(0)), (D(-1),), (D(-1), D(0)), (D(-1), D(-1)),
                        (D(-2),), (D(-2), D(0))}
    assert enumerate_basis(W22, "b_minus", 0, 0) == [()]
    assert set(enumerate_basis(VIR, "b_minus", 1, 3)) == {
        (), (D(0),), (D(0),) * 2, (D(0),) * 3, (D(-1),), (D(-1), D(0)), (D(-1), D(0), D(0))}
    with pytest.raises(WindowExceeded):
        enumerate_basis(virasoro(level=3), "b_minus", 4, 1)


@pytest.mark.parametrize("alg,d,h", [(VIR, 4, 4), (W22, 3, 3), (VIR, 5, 2)])
def test_enumerate_matches_brute_force(alg, d, h):
    degs = [x for x in alg.x_degrees if -d <= alg.pi(x) <= 0]
    got = enumerate_basis(alg, "b_minus", d, h)
    assert len(got) == len(set(got))
    assert set(got) == brute_partitions(degs, alg.pi, d, h)
    levels = [sum(alg.pi(p) for p in lam) for lam in got]
    assert levels == sorted(levels, reverse=True)


def test_full_sector_enumeration():
    got = enumerate_basis(VIR, "full", 2, 2)
    assert all(abs(sum(p[0] for p in lam)) <= 2 for lam in got)
    assert (D(-2), D(2)) in got and (D(1), D(1)) in got and (D(-1), D(-2)) not in got


vir_words = st.lists(st.integers(-2, 2).map(D), max_size=4)
w22_words = st.lists(st.tuples(st.integers(-2, 2), st.integers(0, 1)).map(D), max_size=4)


@given(vir_words)
def test_normal_form_matches_naive_rewriting_vir(word):
    assert normal_order_word(VIR, word) == naive_normal_form(VIR, word)


@given(w22_words)
def test_normal_form_matches_naive_rewriting_w22(word):
    assert normal_order_word(W22, word) == naive_normal_form(W22, word)


@given(vir_words, vir_words, vir_words)
def test_associativity(a, b, c):
    assume(sum(abs(d[0]) for d in a + b + c) <= 8)
    u, v, w = (UElement.word(VIR, x) for x in (a, b, c))
    assert (u * v) * w == u * (v * w)


@given(w22_words, w22_words)
def test_height_subadditive_and_degree_additive(a, b):
    assume(sum(abs(d[0]) for d in a + b) <= 8)
    u, v = UElement.word(W22, a), UElement.word(W22, b)
    p = u * v
    if not p.is_zero():
        assert p.height() <= u.height() + v.height()
        target = sum(a + b, D((0, 0)))
        assert all(term_degree(W22, parts, ce) == target for parts, ce in p.data)


def test_normal_form_is_canonical():
    u = mono(W22, (-2, 0), (-1, 1), (0, 0), (0, 1), (2, 1))
    assert multiply(W22, UElement.one(W22), u) == u
    assert UElement.word(W22, [D((-2, 0)), D((-1, 1))]) == mono(W22, (-2, 0), (-1, 1))


all_vir = st.integers(-4, 4).map(D)
all_w22 = st.tuples(st.integers(-3, 3), st.integers(0, 1)).map(D)


def _reordering_drops_height(alg, a, b, t, k):
    if b < a:
        a, b = b, a
    assume(abs(a[0]) * k + abs(b[0]) * t <= alg.level)
    lhs = multiply(alg, power(alg, b, t), power(alg, a, k))
    diff = lhs - UElement.monomial(alg, [a] * k + [b] * t)
    return diff.is_zero() or diff.height() < t + k


@given(all_vir, all_vir, st.integers(0, 3), st.integers(0, 2))
def test_reordering_height_drop_vir(a, b, t, k):
    assert _reordering_drops_height(VIR, a, b, t, k)


@given(all_w22, all_w22, st.integers(0, 3), st.integers(0, 2))
def test_reordering_height_drop_w22(a, b, t, k):
    assert _reordering_drops_height(W22, a, b, t, k)


def _b_minus_partitions(alg, depth, height):
    return enumerate_basis(alg, "b_minus", depth, height)


@pytest.mark.parametrize("alg", [VIR, W22])
def test_commutator_expansion_bounds(alg):
    for sigma in alg.positive_degrees(3):
        for lam in _b_minus_partitions(alg, 4, 3):
            if not lam:
                continue
            com = commutator_monomial(alg, sigma, lam)
            target = sigma + lam.size(alg.rank)
            for parts, ce in com.data:
                low, high = split_parts(alg, parts)
                assert term_degree(alg, parts, ce) == target
                if high:
                    assert len(low) < len(lam)
                else:
                    assert len(parts) <= len(lam)


def test_phi_component_examples():
    phi = {D(2): Fraction(5), D(1): Fraction(7)}.get
    f = lambda d: phi(d) or Fraction(0)
    assert phi_component(VIR, mono(VIR, -1, 2), f) == mono(VIR, -1, coeff=5)
    u = mono(VIR, -2, -1) + mono(VIR, 0, coeff=3)
    assert phi_component(VIR, u, f) == u
    assert phi_component(VIR, mono(VIR, 1), f) == UElement.one(VIR, 7)
    assert phi_component(VIR, mono(VIR, 1, 3), f).is_zero()
