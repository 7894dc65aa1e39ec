"""Acceptance criteria 1 to 9, each at its stated tolerance and time limit.

Run ``pytest tests/test_acceptance.py -v``; the summary lists one PASS/FAIL line per criterion.
"""

import random
import time
from fractions import Fraction

from gradedwhittaker.algebra import X, validate_algebra, virasoro, w22
from gradedwhittaker.analysis import (
    SolveWindow, annihilator_check, distinguish_simples, simplicity_witness, solve_whittaker,
    submodule_ideal,
)
from gradedwhittaker.exactmath import CentralPoly
from gradedwhittaker.grading import Degree
from gradedwhittaker.pbw import UElement, enumerate_basis, multiply, phi_component, power
from gradedwhittaker.whittaker import (
    WhittakerModule, make_character, nonsingularity_report, substitution_ideal,
)

D = Degree
VIR_PHI = {(1,): 1, (2,): 1}
W22_PHI = {(1, 0): 1, (2, 0): 1, (1, 1): 1, (2, 1): 1}


def timed(fn):
    t = time.perf_counter()
    out = fn()
    return out, time.perf_counter() - t


# -- 1 -----------------------------------------------------------------------


def test_criterion_1_builtins_validate(acceptance):
    (reps, dt) = timed(lambda: [validate_algebra(virasoro(level=8)), validate_algebra(w22(level=8))])
    bad = sum(r.violation_count for r in reps)
    ok = bad == 0 and dt < 10
    acceptance(1, ok, f"virasoro and w22 at level 8: {bad} violations in {dt:.2f}s (limit 10s)")
    assert ok


def test_criterion_1_mutation_n3_over_12(acceptance):
    # n^3/12 differs from (n^3 - n)/12 by n/12, a coboundary: it is again a valid cocycle
    rep = validate_algebra(virasoro(level=8, cocycle=lambda n: Fraction(n ** 3, 12)))
    ok = rep.violation_count >= 1
    acceptance(1, ok, f"n^3/12 mutation: {rep.violation_count} violations (need >= 1)")
    assert ok


def test_criterion_1_mutations_that_break_jacobi_are_caught(acceptance):
    counts = {}
    for label, f in [("n^5/12", lambda n: Fraction(n ** 5, 12)), ("n^2/12", lambda n: Fraction(n ** 2, 12))]:
        counts[label] = validate_algebra(virasoro(level=8, cocycle=f)).violation_count
    ok = all(v >= 1 for v in counts.values())
    acceptance(1, ok, "other mutations detected: " + ", ".join(f"{k} -> {v}" for k, v in counts.items()))
    assert ok


# -- 2 -----------------------------------------------------------------------


def test_criterion_2_nonsingularity(acceptance):
    vir, w = virasoro(level=8), w22(level=8)
    r1, t1 = timed(lambda: nonsingularity_report(vir, make_character(vir, VIR_PHI)))
    r2, t2 = timed(lambda: nonsingularity_report(w, make_character(w, W22_PHI)))
    r3, t3 = timed(lambda: nonsingularity_report(vir, make_character(vir, {})))
    ok = (r1.nonsingular and r1.alpha_phi == D(2)
          and r2.nonsingular and r2.alpha_phi == D((2, 1)) and all(r.ok for r in r2.rows) and r2.rows
          and not r3.condition1
          and max(t1, t2, t3) < 1)
    acceptance(2, ok, f"alpha_phi {r1.alpha_phi}/{r2.alpha_phi}, {len(r2.rows)} w22 rows ok, "
                      f"zero phi condition1={r3.condition1}; max {max(t1, t2, t3):.3f}s (limit 1s)")
    assert ok


# -- 3 -----------------------------------------------------------------------


def random_pairs(alg, rng, n, level):
    degs = list(alg.x_degrees)
    out = []
    while len(out) < n:
        a, b = sorted((rng.choice(degs), rng.choice(degs)))
        t = rng.randint(1, 4)
        k = rng.randint(1, 5 - t)
        if abs(alg.pi(a)) * k + abs(alg.pi(b)) * t <= level:
            out.append((a, b, t, k))
    return out


def reordering_failures(alg, cases):
    bad = []
    for a, b, t, k in cases:
        diff = multiply(alg, power(alg, b, t), power(alg, a, k)) - UElement.monomial(alg, [a] * k + [b] * t)
        if not diff.is_zero() and diff.height() >= t + k:
            bad.append((a, b, t, k))
    return bad


def test_criterion_3_reordering_height(acceptance):
    rng = random.Random(2022)
    total = 0
    details = []
    for alg in (virasoro(level=8), w22(level=8)):
        cases = random_pairs(alg, rng, 100, alg.level)
        bad = reordering_failures(alg, cases)
        total += len(bad)
        details.append(f"{alg.name} {len(cases)} cases, {len(bad)} failures")
    ok = total == 0
    acceptance(3, ok, "; ".join(details))
    assert ok


# -- 4 -----------------------------------------------------------------------


def module_checks(M, rng, n, lo=-3, hi=3, depth=3, height=3):
    alg = M.alg
    gens = [d for d in alg.x_degrees if lo <= alg.pi(d) <= hi]
    basis = enumerate_basis(alg, "b_minus", depth, height)
    axiom_bad = collapse_bad = 0
    for _ in range(n):
        x, y = rng.choice(gens), rng.choice(gens)
        v = M.basis_vector(rng.choice(basis))
        lhs = M.act(alg.bracket_x(x, y), v)
        rhs = M.act(X(x), M.act(X(y), v)) - M.act(X(y), M.act(X(x), v))
        axiom_bad += lhs != rhs
    small = [d for d in gens if abs(alg.pi(d)) <= 2]
    for _ in range(n):
        u = UElement.zero(alg)
        for _ in range(rng.randint(1, 3)):
            u = u + UElement.word(alg, [rng.choice(small) for _ in range(rng.randint(0, 4))]).scale(rng.randint(-3, 3))
        collapse_bad += M.act(u, M.w) != M.act(phi_component(alg, u, M.phi), M.w)
    return axiom_bad, collapse_bad


def test_criterion_4_module_axiom_and_collapse(acceptance):
    rng = random.Random(4)

    def run():
        out = []
        vir = virasoro(level=8)
        out.append(module_checks(WhittakerModule(vir, make_character(vir, VIR_PHI)), rng, 100))
        w = w22(level=8)
        out.append(module_checks(WhittakerModule(w, make_character(w, W22_PHI)), rng, 100))
        return out

    res, dt = timed(run)
    bad = sum(a + b for a, b in res)
    ok = bad == 0 and dt < 30
    acceptance(4, ok, f"axiom/collapse failures {res} over 100+100 per algebra in {dt:.2f}s (limit 30s)")
    assert ok


# -- 5 -----------------------------------------------------------------------


def test_criterion_5_whittaker_dimensions(acceptance):
    def run():
        rows = []
        vir = virasoro(level=6)
        phi = make_character(vir, VIR_PHI)
        for xi in (0, 1, Fraction(1, 2)):
            M = WhittakerModule(vir, phi, substitution_ideal(vir, {"c": xi}))
            s = solve_whittaker(M, SolveWindow(6, 6))
            rows.append((f"c->{xi}", s.dimension, 1, s.basis == [M.w]))
        M0 = WhittakerModule(vir, phi)
        s = solve_whittaker(M0, SolveWindow(6, 6, 3))
        c = CentralPoly.variable(("c",), "c")
        rows.append(("zero ideal e=3", s.dimension, 4, [v.terms for v in s.basis] == [{(): c ** i} for i in range(4)]))
        w = w22(level=6)
        wphi = make_character(w, W22_PHI)
        for cv, zv in ((0, 0), (1, 2), (Fraction(1, 2), -1)):
            M = WhittakerModule(w, wphi, substitution_ideal(w, {"c": cv, "z": zv}))
            s = solve_whittaker(M, SolveWindow(6, 6))
            rows.append((f"w22 c->{cv} z->{zv}", s.dimension, 1, s.basis == [M.w]))
        return rows

    rows, dt = timed(run)
    ok = all(d == e and shape for _, d, e, shape in rows) and dt < 120
    acceptance(5, ok, ", ".join(f"{n}: dim {d}" for n, d, _, _ in rows) + f" in {dt:.2f}s (limit 120s)")
    assert ok


# -- 6 -----------------------------------------------------------------------


def test_criterion_6_simplicity_witnesses(acceptance):
    def run():
        vir = virasoro(level=6)
        M = WhittakerModule(vir, make_character(vir, VIR_PHI), substitution_ideal(vir, {"c": 0}))
        bad, n = [], 0
        for lam in enumerate_basis(vir, "b_minus", 5, 5):
            t = simplicity_witness(M, M.basis_vector(lam))
            n += 1
            if not (t.monotone and t.final_scalar):
                bad.append(lam)
        return n, bad

    (n, bad), dt = timed(run)
    ok = not bad and dt < 60
    acceptance(6, ok, f"{n} basis vectors, {len(bad)} without a monotone trace, {dt:.2f}s (limit 60s)")
    assert ok


# -- 7 -----------------------------------------------------------------------


def test_criterion_7_submodule_ideals(acceptance):
    vir = virasoro(level=6)
    phi = make_character(vir, VIR_PHI)
    M = WhittakerModule(vir, phi)
    c = CentralPoly.variable(("c",), "c")
    win = SolveWindow(3, 3, 3)
    got = {}
    for label, gen in (("c", M.basis_vector([], 1, (1,))), ("c^2", M.basis_vector([], 1, (2,))), ("1", M.w)):
        got[label] = submodule_ideal(vir, phi, [gen], win).polys
    ok = (got["c"] == [c ** 3, c ** 2, c]
          and got["c^2"] == [c ** 3, c ** 2]
          and got["1"] == [c ** 3, c ** 2, c, c ** 0])
    acceptance(7, ok, "; ".join(f"{k}*w -> span{{{', '.join(map(str, v))}}}" for k, v in got.items()))
    assert ok


# -- 8 -----------------------------------------------------------------------


def test_criterion_8_annihilator_and_distinguish(acceptance):
    vir = virasoro(level=6)
    phi = make_character(vir, VIR_PHI)
    rep = annihilator_check(WhittakerModule(vir, phi, substitution_ideal(vir, {"c": 1})), samples=200)
    v1 = distinguish_simples(vir, phi, substitution_ideal(vir, {"c": 0}), substitution_ideal(vir, {"c": 1}))
    v2 = distinguish_simples(vir, phi, substitution_ideal(vir, {"c": 1}), substitution_ideal(vir, {"c": 1}))
    w = w22(level=6)
    wphi = make_character(w, W22_PHI)
    v3 = distinguish_simples(w, wphi, substitution_ideal(w, {"c": 1, "z": 2}), substitution_ideal(w, {"c": 1, "z": 3}))
    ok = (rep.ok and rep.samples == 200 and not v1.identical and v1.witness == "c"
          and v2.identical and not v3.identical and v3.witness == "z")
    acceptance(8, ok, f"{len(rep.violations)} violations in 200 samples; (c-0)/(c-1) {v1.to_dict()['verdict']}, "
                      f"(c-1)/(c-1) {v2.to_dict()['verdict']}, (c-1,z-2)/(c-1,z-3) {v3.to_dict()['verdict']}")
    assert ok


# -- 9 -----------------------------------------------------------------------


def test_criterion_9_w22_quotient(acceptance):
    def run():
        # depth-4 windows; level 8 leaves room for composed actions in the axiom check
        w = w22(level=8)
        phi = make_character(w, W22_PHI)
        M = WhittakerModule(w, phi, substitution_ideal(w, {"c": "z"}))
        rng = random.Random(9)
        c3 = reordering_failures(w, random_pairs(w, rng, 100, 4))
        c4 = module_checks(M, rng, 100, -2, 2, 4, 3)
        s = solve_whittaker(M, SolveWindow(4, 4, 3))
        z = CentralPoly.variable(("z",), "z")
        shape = [v.terms for v in s.basis] == [{(): z ** i} for i in range(4)]
        one_var = all(ce[0] == 0 for v in s.basis for _, ce in v.data)
        return M.survivors, len(c3), c4, s.dimension, shape, one_var

    (surv, c3, c4, dim, shape, one_var), dt = timed(run)
    ok = surv == ("z",) and c3 == 0 and sum(c4) == 0 and dim == 4 and shape and one_var
    acceptance(9, ok, f"survivors {surv}; reordering failures {c3}; axiom/collapse {c4}; "
                      f"whittaker dim {dim} = span(z^i w, i<=3) at depth 4 in {dt:.2f}s")
    assert ok
