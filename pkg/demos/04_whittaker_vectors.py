"""Whittaker vectors in truncated modules: only p w survives."""

import time

from gradedwhittaker import SolveWindow, WhittakerModule, solve_whittaker, virasoro, w22
from gradedwhittaker.syntax import parse_character, parse_ideal

cases = [
    (virasoro(level=6), "L1=1,L2=1", "c=1", SolveWindow(6, 6)),
    (virasoro(level=6), "L1=1,L2=1", "0", SolveWindow(6, 6, 3)),
    (w22(level=6), "L1=1,L2=1,W1=1,W2=1", "c=1,z=2", SolveWindow(6, 6)),
    (w22(level=6), "L1=1,L2=1,W1=1,W2=1", "c=z", SolveWindow(4, 4, 3)),
    (w22(level=6), "L1=1,L2=1,W1=1,W2=1", "0", SolveWindow(4, 4, 2)),
]
for alg, phi, ideal, win in cases:
    M = WhittakerModule(alg, parse_character(alg, phi), parse_ideal(alg, ideal))
    t = time.perf_counter()
    sol = solve_whittaker(M, win)
    dt = time.perf_counter() - t
    print(f"{alg.name:8s} I=({ideal:7s}) d={win.depth} h={win.height} e={win.central_degree}: "
          f"{sol.domain_size:5d} unknowns, dim {sol.dimension} in {dt:.2f}s")
    print("    ", ", ".join(str(v) for v in sol.basis))
