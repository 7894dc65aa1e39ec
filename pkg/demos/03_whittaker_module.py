"""Characters, the nonsingularity check and the action on the universal module."""

from gradedwhittaker import (
    WhittakerModule, nonsingularity_report, vector_stats, virasoro, w22,
)
from gradedwhittaker.syntax import parse_character, parse_element, parse_vector

vir = virasoro(level=6)
phi = parse_character(vir, "L1=1,L2=1")
rep = nonsingularity_report(vir, phi)
print("Virasoro nonsingular:", rep.nonsingular, "alpha_phi =", rep.alpha_phi)
for row in rep.rows[:3]:
    print(f"  beta {row.beta}: phi([x_{row.witness}, x_beta]) = {row.value}")

only_l1 = parse_character(vir, "L1=1")
rep = nonsingularity_report(vir, only_l1)
print("phi(L2) = 0: condition-based verdict", rep.nonsingular, "| per-family flag", rep.family_flag)

try:
    parse_character(vir, "L1=1,L2=0,L3=5")
except ValueError as exc:
    print("rejected:", exc)

M = WhittakerModule(vir, phi)
v = parse_vector(M, "L-1")
print("L1 . L-1 w =", M.act(parse_element(vir, "L1"), v))
print("L2 . L-1 w =", M.act(parse_element(vir, "L2"), v))
print("stats of L-1 w + L-2*L-1 w:", vector_stats(M, parse_vector(M, "L-1 + L-2*L-1")))

w = w22(level=6)
print("W(2,2) alpha_phi:", nonsingularity_report(w, parse_character(w, "L1=1,L2=1,W1=1,W2=1")).alpha_phi)
