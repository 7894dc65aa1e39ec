"""Built-in algebras, their brackets, and what the axiom checker catches."""

from fractions import Fraction

from gradedwhittaker import (
    X, classify_degrees, from_spec, validate_algebra, virasoro, w22,
)
from gradedwhittaker.grading import Degree

vir = virasoro(level=8)
print("Virasoro brackets")
for a, b in [(1, -1), (2, -2), (1, 2)]:
    print(f"  [L{a}, L{b}] =", vir.bracket_x(Degree(a), Degree(b)).render(vir))

w = w22(level=8)
print("W(2,2) brackets")
for a, b in [((1, 0), (-1, 1)), ((2, 0), (-2, 1)), ((1, 1), (2, 1))]:
    print(f"  [{w.name_of(X(Degree(a)))}, {w.name_of(X(Degree(b)))}] =",
          w.bracket_x(Degree(a), Degree(b)).render(w))

for alg in (vir, w):
    rep = validate_algebra(alg)
    print(f"{alg.name}: {rep.violation_count} violations on level window {rep.level}")

# Perturbing the central term. Only some perturbations break the Jacobi identity:
# n^3/12 differs from the true term by n/12, which a shift of L0 absorbs.
for label, f in [("n^3/12", lambda n: Fraction(n ** 3, 12)), ("n^5/12", lambda n: Fraction(n ** 5, 12))]:
    rep = validate_algebra(virasoro(level=8, cocycle=f))
    print(f"central term {label}: {len(rep.jacobi)} Jacobi failures")

# A custom three-generator algebra (sl2 in a graded basis).
sl2 = from_spec({
    "name": "sl2", "rank": 1, "pi_weights": [1], "window_level": 1,
    "generators": [-1, 0, 1], "centrals": [],
    "brackets": [
        {"a": -1, "b": 0, "x_coeff_degree_sum": "1"},
        {"a": -1, "b": 1, "x_coeff_degree_sum": "-2"},
        {"a": 0, "b": 1, "x_coeff_degree_sum": "1"},
    ],
})
print("sl2 valid:", validate_algebra(sl2).ok)
print("W(2,2) sectors at level 2:", classify_degrees(w22(level=2)).to_dict()["K''\\R''"])
