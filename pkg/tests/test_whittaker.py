from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from gradedwhittaker.algebra import LieElement, X, from_spec, virasoro, w22
from gradedwhittaker.exactmath import IdealSpec, CentralPoly
from gradedwhittaker.grading import Degree
from gradedwhittaker.pbw import UElement, enumerate_basis, phi_component, term_degree
from gradedwhittaker.whittaker import (
    CharacterError, UndefinedStats, UnsupportedIdealError, WhittakerModule, make_character,
    nonsingularity_report, substitution_ideal, vector_stats,
)
from oracles import naive_act_on_w

D = Degree
VIR = virasoro(level=8)
W22 = w22(level=8)
VPHI = make_character(VIR, {(1,): 1, (2,): 1})
WPHI = make_character(W22, {(1, 0): 1, (2, 0): 1, (1, 1): 1, (2, 1): 1})


def test_make_character_examples():
    assert VPHI.support == [D(1), D(2)]
    assert VPHI.alpha_phi == D(2)
    assert VPHI(D(3)) == 0 and VPHI(D(5)) == 0
    assert WPHI.alpha_phi == D((2, 1))
    with pytest.raises(CharacterError, match=r"L1, L2.*L3"):
        make_character(VIR, {(1,): 1, (2,): 0, (3,): 5})
    with pytest.raises(CharacterError):
        make_character(VIR, {(-1,): 1})


def test_virasoro_nonsingular_rows():
    rep = nonsingularity_report(VIR, VPHI, 8)
    assert rep.nonsingular and rep.alpha_phi == D(2) and rep.family_flag
    for row in rep.rows:
        m = -row.beta[0]
        assert row.witness == D(2 + m)
        assert row.value == -(2 * m + 2)
    assert [b[0] for b in rep.unchecked] == [-8, -7]


def test_zero_character_fails_condition1():
    rep = nonsingularity_report(VIR, make_character(VIR, {}), 8)
    assert not rep.condition1 and not rep.nonsingular


def test_w22_witnesses():
    rep = nonsingularity_report(W22, WPHI, 6)
    assert rep.nonsingular and rep.alpha_phi == D((2, 1))
    for row in rep.rows:
        m = -row.beta[0]
        assert row.witness == (D((2 + m, 1)) if row.beta[1] == 0 else D((2 + m, 0)))
        assert row.ok


def test_def31_and_family_flag_disagree():
    phi = make_character(VIR, {(1,): 1})
    rep = nonsingularity_report(VIR, phi, 8)
    assert rep.nonsingular and rep.alpha_phi == D(1)
    assert rep.family_flag is False


def test_module_construction_and_central_action():
    M = WhittakerModule(VIR, VPHI, substitution_ideal(VIR, {"c": Fraction(1, 2)}))
    v = M.basis_vector([D(-2), D(-1)], 3)
    assert M.act(VIR.resolve("c"), v) == v.scale(Fraction(1, 2))
    Q = WhittakerModule(W22, WPHI, substitution_ideal(W22, {"c": "z"}))
    assert Q.survivors == ("z",)
    r = Q.act(X(D((2, 0))), Q.basis_vector([D((-2, 1))]))
    assert all(len(ce) == 2 and ce[0] == 0 for _, ce in r.data)
    M0 = WhittakerModule(VIR, VPHI)
    assert M0.survivors == ("c",)


def test_unsupported_ideal():
    doc = {"rank": 1, "pi_weights": [1], "window_level": 1, "generators": [-1, 0, 1],
           "centrals": [{"name": "k", "degree": -1}], "brackets": []}
    alg = from_spec(doc)
    phi = make_character(alg, {(1,): 1})
    k = CentralPoly.constant(alg.central_names, 1)
    with pytest.raises(UnsupportedIdealError):
        WhittakerModule(alg, phi, IdealSpec((("k", k),)))
    WhittakerModule(alg, phi)


def test_action_examples():
    phi = make_character(VIR, {(1,): 3, (2,): 1})
    M = WhittakerModule(VIR, phi)
    v = M.basis_vector([D(-1)])
    assert M.act(X(D(1)), v) == v.scale(3) - M.basis_vector([D(0)], 2)
    assert M.act(X(D(2)), M.w) == M.w.scale(phi(D(2)))
    assert M.act(X(D(2)), v) == v - M.w.scale(9)


def test_stats_examples():
    M = WhittakerModule(VIR, VPHI)
    v = M.basis_vector([D(-1)]) + M.basis_vector([D(-2), D(-1)])
    s = vector_stats(M, v)
    assert (s.mindeg, s.ell, s.mindeg1, s.ell1) == (D(-3), 2, -3, 2)
    s = vector_stats(M, M.w)
    assert (s.mindeg, s.ell) == (D(0), 0)
    s = vector_stats(M, M.basis_vector([D(-2), D(-1)]) + M.basis_vector([D(-3)]))
    assert (s.mindeg, s.ell) == (D(-3), 2)
    with pytest.raises(UndefinedStats):
        vector_stats(M, M.zero())


MODULES = [
    WhittakerModule(VIR, VPHI),
    WhittakerModule(VIR, VPHI, substitution_ideal(VIR, {"c": 1})),
    WhittakerModule(W22, WPHI),
    WhittakerModule(W22, WPHI, substitution_ideal(W22, {"c": "z"})),
]
BASES = [enumerate_basis(m.alg, "b_minus", 3, 3) for m in MODULES]


def _gens(alg, lo=-3, hi=3):
    return [d for d in alg.x_degrees if lo <= alg.pi(d) <= hi]


@settings(max_examples=60)
@given(st.integers(0, 3), st.data())
def test_module_axiom(i, data):
    M, basis = MODULES[i], BASES[i]
    gens = _gens(M.alg)
    x, y = data.draw(st.sampled_from(gens)), data.draw(st.sampled_from(gens))
    v = M.basis_vector(data.draw(st.sampled_from(basis)))
    br = M.alg.bracket_x(x, y)
    lhs = M.act(br, v)
    rhs = M.act(X(x), M.act(X(y), v)) - M.act(X(y), M.act(X(x), v))
    assert lhs == rhs


@settings(max_examples=60)
@given(st.integers(0, 3), st.data())
def test_phi_collapse_and_naive_oracle(i, data):
    M = MODULES[i]
    alg = M.alg
    word = data.draw(st.lists(st.sampled_from(_gens(alg, -2, 2)), max_size=4))
    u = UElement.word(alg, word)
    direct = M.act(u, M.w)
    assert direct == M.act(phi_component(alg, u, M.phi), M.w)
    if M.ideal.is_zero:
        oracle = naive_act_on_w(alg, M.phi, word)
        assert direct.data == oracle


def test_w_is_whittaker():
    for M in MODULES:
        for d in M.alg.positive_degrees():
            assert M.act(X(d), M.w) == M.w.scale(M.phi(d))


@pytest.mark.parametrize("i", range(4))
def test_level_bound(i):
    M = MODULES[i]
    alg = M.alg
    supp = M.phi.support
    for sigma in alg.positive_degrees(3):
        for lam in BASES[i]:
            base = sigma + lam.size(alg.rank)
            t = alg.pi(lam.size(alg.rank))
            r = M.probe(sigma, M.basis_vector(lam))
            for parts, ce in r.data:
                d = term_degree(alg, parts, ce)
                assert alg.pi(d) >= t
                if M.ideal.is_zero:
                    assert d == base or any(d == base - a for a in supp)


@pytest.mark.parametrize("M", [MODULES[0], MODULES[1], MODULES[2]])
def test_b_minus_homogeneity(M):
    alg = M.alg
    for sigma in [d for d in alg.x_degrees if -3 <= alg.pi(d) <= 0]:
        for lam in enumerate_basis(alg, "b_minus", 2, 2):
            v = M.basis_vector(lam)
            target = sigma + lam.size(alg.rank)
            r = M.act(X(sigma), v)
            assert all(term_degree(alg, p, ce) == target for p, ce in r.data)
