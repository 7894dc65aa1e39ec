"""Whittaker-vector solver, simplicity witnesses and ideal/submodule checks.

All of these work on finite windows: b_minus partitions of level >= -depth and
at most ``height`` parts, with central coefficients of degree <= ``central_degree``.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .algebra import GradedLieAlgebra, X
from .exactmath import CentralPoly, IdealSpec, echelon, nullspace, reduced_echelon
from .grading import Degree, format_degree
from .pbw import Flat, UElement, _accumulate, enumerate_basis, multiply, phi_component
from .whittaker import Character, ModuleVector, VectorStats, WhittakerModule, vector_stats


class GenerationError(ValueError):
    """The probe set does not Lie-generate the positive part of the window."""

    def __init__(self, degree):
        self.degree = degree
        super().__init__(f"probe set does not generate degree {format_degree(degree)}")


class WitnessStall(RuntimeError):
    def __init__(self, message, trace, vector):
        super().__init__(message)
        self.trace = trace
        self.vector = vector


@dataclass(frozen=True)
class SolveWindow:
    depth: int
    height: int
    central_degree: int = 0
    probes: tuple[Degree, ...] | None = None

    def to_dict(self):
        return {
            "depth": self.depth,
            "height": self.height,
            "central_degree": self.central_degree,
            "probes": None if self.probes is None else [list(p) for p in self.probes],
        }


def default_probes(alg: GradedLieAlgebra) -> tuple[Degree, ...]:
    """All positive generator degrees of level <= 2."""
    return tuple(alg.positive_degrees(2))


def generated_degrees(alg: GradedLieAlgebra, probes: Sequence[Degree]) -> set[Degree]:
    """Positive window degrees reachable from ``probes`` by iterated brackets."""
    reached = set(probes)
    frontier = list(reached)
    while frontier:
        new = []
        for a in frontier:
            for b in list(reached):
                for x, y in ((a, b), (b, a)):
                    s = x + y
                    if alg.pi(s) > alg.level or s in reached:
                        continue
                    if alg.bracket_x(x, y).x_terms.get(s):
                        reached.add(s)
                        new.append(s)
        frontier = new
    return reached


def check_generation(alg: GradedLieAlgebra, probes: Sequence[Degree]):
    for p in probes:
        if not alg.has_x(p) or alg.pi(p) <= 0:
            raise ValueError(f"probe {format_degree(p)} is not a positive generator")
    reached = generated_degrees(alg, probes)
    for d in alg.positive_degrees():
        if d not in reached:
            raise GenerationError(d)


def central_monomials(nvars: int, max_degree: int) -> list[tuple[int, ...]]:
    """Exponent vectors of total degree <= max_degree, ascending by degree."""
    out = [e for e in itertools.product(range(max_degree + 1), repeat=nvars) if sum(e) <= max_degree]
    out.sort(key=lambda e: (sum(e), tuple(-x for x in e)))
    return out


def _domain(module: WhittakerModule, win: SolveWindow) -> list[tuple]:
    parts = enumerate_basis(module.alg, "b_minus", win.depth, win.height)
    monos = central_monomials(len(module.survivors), win.central_degree if module.survivors else 0)
    return [(tuple(p), module.lift_exps(m)) for p in parts for m in monos]


@dataclass
class WhittakerSolution:
    window: SolveWindow
    probes: tuple[Degree, ...]
    basis: list[ModuleVector]
    domain_size: int

    @property
    def dimension(self) -> int:
        return len(self.basis)

    def to_dict(self):
        return {
            "window": self.window.to_dict(),
            "probe_set": [list(p) for p in self.probes],
            "domain_size": self.domain_size,
            "dimension": self.dimension,
            "basis": [v.records() for v in self.basis],
        }


def solve_whittaker(module: WhittakerModule, win: SolveWindow) -> WhittakerSolution:
    """Basis of the Whittaker vectors inside the truncated space, by exact elimination.

    The equations ``(x - phi(x)) v = 0`` are imposed for ``x`` in the probe set
    only; the probe set must Lie-generate n on the window.
    """
    alg = module.alg
    if win.depth > alg.level:
        raise ValueError(f"depth {win.depth} exceeds the algebra window {alg.level}")
    probes = tuple(win.probes) if win.probes is not None else default_probes(alg)
    check_generation(alg, probes)
    cols = _domain(module, win)
    row_ids: dict[tuple, int] = {}
    rows: dict[int, dict[int, Fraction]] = {}
    for a in probes:
        val = module.phi(a)
        for j, (parts, ce) in enumerate(cols):
            img = dict(module._apply_gen(a, {(parts, ce): Fraction(1)}))
            if val:
                _accumulate(img, (parts, ce), -val)
            for key, q in img.items():
                rid = row_ids.setdefault((a, key), len(row_ids))
                rows.setdefault(rid, {})[j] = q
    kernel = nullspace(rows.values(), len(cols))
    basis = [ModuleVector(module, {cols[j]: q for j, q in vec.items()}) for vec in kernel]
    return WhittakerSolution(win, probes, basis, len(cols))


def is_whittaker(module: WhittakerModule, v: ModuleVector, level: int | None = None) -> bool:
    """Check ``x v = phi(x) v`` for every positive generator of level <= level."""
    return all(module.probe(d, v).is_zero() for d in module.alg.positive_degrees(level))


# ---------------------------------------------------------------------------
# simplicity witnesses
# ---------------------------------------------------------------------------


@dataclass
class WitnessStep:
    sigma: Degree
    before: VectorStats
    after: VectorStats

    @property
    def improves(self) -> bool:
        return self.after.key() > self.before.key()

    def to_dict(self):
        return {"sigma": list(self.sigma), "mindeg1": self.after.mindeg1, "ell1": self.after.ell1,
                "before": self.before.to_dict(), "after": self.after.to_dict()}


@dataclass
class WitnessTrace:
    start: ModuleVector
    steps: list[WitnessStep] = field(default_factory=list)
    final_scalar: Fraction | None = None

    @property
    def monotone(self) -> bool:
        return all(s.improves for s in self.steps)

    def to_dict(self):
        return {
            "start": self.start.records(),
            "steps": [s.to_dict() for s in self.steps],
            "final_scalar": None if self.final_scalar is None else str(self.final_scalar),
        }


def simplicity_witness(module: WhittakerModule, v: ModuleVector, budget: int = 100,
                       probes: Sequence[Degree] | None = None) -> WitnessTrace:
    """Drive ``v`` to a nonzero multiple of ``w'`` by repeated ``v -> (x - phi(x)) v``.

    Each step takes the first probe that strictly raises ``(mindeg1, -ell1)``.
    Probes are tried from the largest degree down; if none improves, every
    positive window generator is tried, then pairs of them.
    """
    if not module.is_maximal:
        raise ValueError("simplicity witnesses need a maximal ideal (scalar coefficients)")
    if v.is_zero():
        raise ValueError("the zero vector has no witness")
    alg = module.alg
    primary = sorted(default_probes(alg) if probes is None else probes, reverse=True)
    extended = sorted(alg.positive_degrees(), reverse=True)
    trace = WitnessTrace(start=v)
    cur = v
    for _ in range(budget + 1):
        s = cur.scalar_multiple_of_w()
        if s is not None:
            trace.final_scalar = s
            return trace
        if len(trace.steps) >= budget:
            break
        before = vector_stats(module, cur)
        path = _improving_step(module, cur, before, primary) or _improving_step(module, cur, before, extended)
        if path is None:
            path = _improving_pair(module, cur, before, extended)
        if path is None:
            raise WitnessStall("no probe sequence improves the vector", trace, cur)
        for sigma, nxt in path:
            trace.steps.append(WitnessStep(sigma, vector_stats(module, cur), vector_stats(module, nxt)))
            cur = nxt
    raise WitnessStall(f"witness budget of {budget} steps exhausted", trace, cur)


def _improving_step(module, cur, before, probes):
    for sigma in probes:
        nxt = module.probe(sigma, cur)
        if nxt and vector_stats(module, nxt).key() > before.key():
            return [(sigma, nxt)]
    return None


def _improving_pair(module, cur, before, probes):
    for s1 in probes:
        mid = module.probe(s1, cur)
        if not mid:
            continue
        for s2 in probes:
            nxt = module.probe(s2, mid)
            if nxt and vector_stats(module, nxt).key() > before.key():
                return [(s1, mid), (s2, nxt)]
    return None


# ---------------------------------------------------------------------------
# submodules and ideals
# ---------------------------------------------------------------------------


@dataclass
class DetectedIdeal:
    """Polynomials ``p`` with ``p w`` in the submodule, found inside the window."""

    names: tuple[str, ...]
    polys: list[CentralPoly]
    central_degree: int
    windowed: bool = True

    @property
    def is_unit(self) -> bool:
        return any(p.is_constant() and not p.is_zero() for p in self.polys)

    def contains(self, p: CentralPoly) -> bool:
        """Membership of ``p`` in the detected span."""
        return _span_contains([q.terms for q in self.polys], p.terms)

    def to_dict(self):
        return {"windowed": self.windowed, "central_degree": self.central_degree,
                "polys": [str(p) for p in self.polys]}


def _span_contains(vectors, target) -> bool:
    keys = sorted({k for v in vectors for k in v} | set(target))
    idx = {k: i for i, k in enumerate(keys)}
    base = echelon([{idx[k]: q for k, q in v.items()} for v in vectors])
    ext = echelon([{idx[k]: q for k, q in v.items()} for v in list(vectors) + [target]])
    return len(base) == len(ext)


def poly_span_basis(polys: Sequence[CentralPoly]) -> list[CentralPoly]:
    """Canonical (reduced echelon) basis of the span of ``polys``."""
    if not polys:
        return []
    names = polys[0].names
    keys = sorted({k for p in polys for k in p.terms}, key=lambda e: (-sum(e), tuple(-x for x in e)))
    idx = {k: i for i, k in enumerate(keys)}
    rref = reduced_echelon(echelon([{idx[k]: q for k, q in p.terms.items()} for p in polys]))
    return [CentralPoly(names, {keys[j]: q for j, q in row.items()}) for _, row in sorted(rref.items())]


def submodule_ideal(alg: GradedLieAlgebra, phi: Character, generators: Sequence[ModuleVector],
                    win: SolveWindow, module: WhittakerModule | None = None) -> DetectedIdeal:
    """Intersect the windowed span of ``U(g) * generators`` with the line ``A w``.

    Spans ``c^e x_lam g`` over full-sector partitions ``lam`` (``|level| <= depth``,
    at most ``height`` parts) and central monomials of degree <= ``central_degree``,
    and keeps the part lying in ``{p w : deg p <= central_degree}``.  Every returned
    ``p`` satisfies ``p w in N``; completeness holds only within the window.
    """
    if module is None:
        module = generators[0].module if generators else WhittakerModule(alg, phi)
    if not module.ideal.is_zero:
        raise ValueError("submodule_ideal works in the universal module M_phi (zero ideal)")
    names = alg.central_names
    lams = enumerate_basis(alg, "full", win.depth, win.height)
    monos = central_monomials(len(names), win.central_degree)
    vectors: list[Flat] = []
    for g in generators:
        if g.module is not module:
            raise ValueError("generators must live in the same module")
        for lam in lams:
            base = module.act(UElement.monomial(alg, lam), g)
            if not base:
                continue
            for m in monos:
                vec = module._apply_exps(m, base.data)
                if vec:
                    vectors.append(vec)
    target = lambda key: not key[0] and sum(key[1]) <= win.central_degree
    keys = sorted({k for v in vectors for k in v}, key=lambda k: (target(k), sum(k[1]), k))
    idx = {k: i for i, k in enumerate(keys)}
    piv = echelon([{idx[k]: q for k, q in v.items()} for v in vectors])
    found = []
    for col, row in piv.items():
        if target(keys[col]):
            found.append(CentralPoly(names, {keys[j][1]: q for j, q in row.items()}))
    return DetectedIdeal(names, poly_span_basis(found), win.central_degree)


# ---------------------------------------------------------------------------
# annihilators and isomorphism classes
# ---------------------------------------------------------------------------


@dataclass
class AnnihilatorReport:
    samples: int
    violations: list[tuple[str, str]] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations

    def to_dict(self):
        return {"samples": self.samples, "ok": self.ok,
                "violations": [{"kind": k, "element": e} for k, e in self.violations]}


def _random_monomial(rng: random.Random, alg: GradedLieAlgebra, degs, max_len: int) -> UElement:
    while True:
        parts = [rng.choice(degs) for _ in range(rng.randint(0, max_len))]
        if sum(abs(alg.pi(p)) for p in parts) <= alg.level:
            break
    ce = tuple(rng.randint(0, 1) for _ in alg.central_names)
    return UElement.monomial(alg, parts, rng.choice([1, -1, 2, Fraction(1, 2), -3]), ce)


def annihilator_check(module: WhittakerModule, samples: int = 200, win: SolveWindow | None = None,
                      seed: int = 0) -> AnnihilatorReport:
    """Sampled check that the annihilator of ``w'`` is ``U(g) I + I_phi``.

    Half the samples are drawn from ``U(g) I + I_phi`` and must kill ``w'``;
    the other half are random ``u0`` corrected to ``u = u0 - lift(u0 w')`` and
    must have ``u^phi`` in ``I U(b_minus)``.  Both halves also check that the
    projection ``u^phi`` reduces to zero modulo I.
    """
    win = win or SolveWindow(depth=3, height=3)
    alg = module.alg
    rng = random.Random(seed)
    degs = [d for d in alg.x_degrees if abs(alg.pi(d)) <= win.depth]
    pos = alg.positive_degrees(win.depth)
    names = alg.central_names
    gens: list[UElement] = []
    for name, poly in module.ideal.assignments:
        diff = CentralPoly.variable(names, name) - poly
        gens.append(UElement(alg, {((), ce): q for ce, q in diff.terms.items()}))
    for d in pos:
        gens.append(UElement.monomial(alg, (d,)) - UElement.one(alg).scale(module.phi(d)))
    report = AnnihilatorReport(samples)
    w = module.w
    for i in range(samples):
        if i % 2 == 0:
            u = UElement.zero(alg)
            for _ in range(rng.randint(1, 3)):
                m = _random_monomial(rng, alg, degs, min(win.height, 3))
                u = u + multiply(alg, m, rng.choice(gens))
            if module.act(u, w):
                report.violations.append(("ideal-element-acts-nonzero", str(u)))
        else:
            u0 = _random_monomial(rng, alg, degs, win.height)
            u0 = u0 + _random_monomial(rng, alg, degs, win.height)
            u = u0 - module.lift(module.act(u0, w))
            if module.act(u, w):
                report.violations.append(("corrected-element-acts-nonzero", str(u)))
        if module.reduce_flat(phi_component(alg, u, module.phi).data):
            report.violations.append(("projection-not-in-ideal", str(u)))
    return report


@dataclass
class SimplesVerdict:
    identical: bool
    witness: str | None
    scalars: tuple[dict, dict]

    def to_dict(self):
        return {
            "verdict": "Identical" if self.identical else "NonIsomorphic",
            "witness": self.witness,
            "scalars": [{n: str(q) for n, q in s.items()} for s in self.scalars],
        }


def distinguish_simples(alg: GradedLieAlgebra, phi: Character, ideal1: IdealSpec, ideal2: IdealSpec) -> SimplesVerdict:
    """Separate two simple quotients by the scalars their central generators act by."""
    names = alg.central_names
    for ideal in (ideal1, ideal2):
        if not ideal.is_maximal(names):
            raise ValueError(f"ideal ({ideal}) is not maximal: every central generator needs a constant value")
    s1, s2 = ideal1.constant_values(), ideal2.constant_values()
    for n in names:
        if s1[n] != s2[n]:
            return SimplesVerdict(False, n, (s1, s2))
    return SimplesVerdict(True, None, (s1, s2))
