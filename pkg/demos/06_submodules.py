"""Submodules come from central ideals; simple quotients are told apart by central scalars."""

from gradedwhittaker import (
    SolveWindow, WhittakerModule, annihilator_check, distinguish_simples, submodule_ideal,
    virasoro, w22,
)
from gradedwhittaker.syntax import parse_character, parse_ideal, parse_vector

vir = virasoro(level=6)
phi = parse_character(vir, "L1=1,L2=1")
M = WhittakerModule(vir, phi)
for gen in ["c", "c^2", "1", "c*L-1 + L-1"]:
    det = submodule_ideal(vir, phi, [parse_vector(M, gen)], SolveWindow(3, 3, 3))
    print(f"N = U.({gen}) w  ->  N meets A w in span{{{', '.join(map(str, det.polys))}}}")

rep = annihilator_check(WhittakerModule(vir, phi, parse_ideal(vir, "c=1")), samples=200)
print("annihilator check on I=(c-1):", rep.samples, "samples,", len(rep.violations), "violations")

print(distinguish_simples(vir, phi, parse_ideal(vir, "c=0"), parse_ideal(vir, "c=1")).to_dict())
w = w22(level=6)
wphi = parse_character(w, "L1=1,L2=1,W1=1,W2=1")
print(distinguish_simples(w, wphi, parse_ideal(w, "c=1,z=2"), parse_ideal(w, "c=1,z=3")).to_dict())
