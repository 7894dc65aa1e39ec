"""Normal ordering in the enveloping algebra and the commutator expansion."""

from gradedwhittaker import commutator_monomial, make_character, phi_component, virasoro
from gradedwhittaker.grading import Degree
from gradedwhittaker.syntax import parse_element

vir = virasoro(level=6)
for text in ["L-1*L-2", "L1*L-1", "L2*L-2", "L2*L-1*L-1 - L-1*L-1*L2"]:
    print(f"{text:28s} = {parse_element(vir, text)}")

print("[L2, L-1*L-1] =", commutator_monomial(vir, Degree(2), [Degree(-1), Degree(-1)]))

# The component in U(b_minus): positive factors sit on the right and collapse to scalars.
phi = make_character(vir, {(1,): 1, (2,): 5})
u = parse_element(vir, "L-1*L2 + 3*L1 + L-2*L1*L2")
print("u      =", u)
print("u^phi  =", phi_component(vir, u, phi))
