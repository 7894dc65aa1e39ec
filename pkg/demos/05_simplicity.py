"""Driving any vector back to the cyclic vector with probes (x - phi(x))."""

from gradedwhittaker import WhittakerModule, enumerate_basis, simplicity_witness, virasoro
from gradedwhittaker.syntax import parse_character, parse_ideal, parse_vector

vir = virasoro(level=6)
M = WhittakerModule(vir, parse_character(vir, "L1=1,L2=1"), parse_ideal(vir, "c=0"))

for text in ["L-1", "L0", "L-3*L-1 + 2*L-2*L0*L0"]:
    v = parse_vector(M, text)
    t = simplicity_witness(M, v)
    print(f"v = {v}")
    for s in t.steps:
        print(f"   probe {list(s.sigma)}: (mindeg1, -ell1) {s.before.key()} -> {s.after.key()}")
    print(f"   ends at {t.final_scalar} * w")

basis = enumerate_basis(vir, "b_minus", 5, 5)
traces = [simplicity_witness(M, M.basis_vector(lam)) for lam in basis]
print(f"{len(basis)} basis vectors; all monotone: {all(t.monotone for t in traces)}; "
      f"longest trace {max(len(t.steps) for t in traces)} steps")
