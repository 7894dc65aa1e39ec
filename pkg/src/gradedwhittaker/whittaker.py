"""Characters of n, Whittaker modules M_phi and their quotients L_{phi,I}.

The module action is computed without going through U(g) normal form: for a
generator ``x`` of positive level,

    x x_b x_rest w = x_b (x x_rest w) + [x, x_b] x_rest w,      x w = phi(x) w,

and generators of level <= 0 simply left-multiply in U(b_minus).  This keeps
the action independent of :func:`~gradedwhittaker.pbw.phi_component`, which
is checked against it in the test suite.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping, Sequence

from .algebra import C, GeneratorId, GradedLieAlgebra, LieElement, X
from .exactmath import CentralPoly, IdealError, IdealSpec, reduce_poly, to_rational
from .grading import Degree, format_degree
from .pbw import (
    Exps, Flat, Partition, Parts, UElement, _accumulate, _add_exps, _state, join_signed,
    lmul, render_monomial, term_degree,
)


class CharacterError(ValueError):
    """Assignments that do not define a Lie homomorphism n -> Q."""


class UnsupportedIdealError(ValueError):
    pass


# ---------------------------------------------------------------------------
# characters
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Character:
    """A homomorphism n -> Q, stored by its nonzero values on positive generators.

    Values at degrees outside the validation window are taken to be zero.
    """

    values: Mapping[Degree, Fraction]
    level: int

    def __call__(self, d: Sequence[int]) -> Fraction:
        return self.values.get(d, Fraction(0))

    @property
    def support(self) -> list[Degree]:
        return sorted(self.values)

    @property
    def alpha_phi(self) -> Degree | None:
        return max(self.values) if self.values else None

    def to_dict(self):
        return {format_degree(d): str(q) for d, q in sorted(self.values.items())}


def forced_zero_relations(alg: GradedLieAlgebra, level: int | None = None) -> dict[Degree, tuple[Degree, Degree, Fraction]]:
    """Degrees of n whose character value is forced to 0 by a bracket of two n elements.

    Maps each such degree ``s`` to one witnessing relation ``[x_a, x_b] = k x_s``.
    """
    level = alg.level if level is None else min(level, alg.level)
    pos = alg.positive_degrees(level)
    out: dict[Degree, tuple[Degree, Degree, Fraction]] = {}
    for i, a in enumerate(pos):
        for b in pos[i:]:
            s = a + b
            if alg.pi(s) > level:
                continue
            k = alg.bracket_x(a, b).x_terms.get(s)
            if k and s not in out:
                out[s] = (a, b, k)
    return out


def make_character(alg: GradedLieAlgebra, assignments: Mapping, level: int | None = None) -> Character:
    """Complete and validate a character from values on positive generators.

    Keys are degrees or :class:`X` generators.  Unassigned generators get 0;
    an assigned nonzero value on a commutator ``[x_a, x_b]`` is rejected.
    """
    level = alg.level if level is None else min(level, alg.level)
    values: dict[Degree, Fraction] = {}
    for key, val in assignments.items():
        d = key.degree if isinstance(key, X) else Degree(key)
        if isinstance(key, C):
            raise CharacterError(f"{key.name} is central and not part of n")
        if not alg.has_x(d):
            raise CharacterError(f"no generator at degree {format_degree(d)}")
        if alg.pi(d) <= 0:
            raise CharacterError(f"{alg.name_of(X(d))} has level {alg.pi(d)} and is not in n")
        if alg.pi(d) > level:
            raise CharacterError(f"{alg.name_of(X(d))} lies outside the level window {level}")
        q = to_rational(val)
        if d in values and values[d] != q:
            raise CharacterError(f"{alg.name_of(X(d))} assigned two different values")
        if q:
            values[d] = q
    forced = forced_zero_relations(alg, level)
    for d, q in values.items():
        if d in forced:
            a, b, k = forced[d]
            raise CharacterError(
                f"[{alg.name_of(X(a))}, {alg.name_of(X(b))}] = {k}*{alg.name_of(X(d))} "
                f"forces phi({alg.name_of(X(d))}) = 0, but it was assigned {q}")
    return Character(values, level)


def character_relation_failures(alg: GradedLieAlgebra, phi: Character) -> list[tuple[Degree, Degree]]:
    """All positive pairs ``(a, b)`` in the window with ``phi([x_a, x_b]) != 0``."""
    pos = alg.positive_degrees(phi.level)
    bad = []
    for i, a in enumerate(pos):
        for b in pos[i:]:
            if alg.pi(a + b) > phi.level:
                continue
            val = sum((q * phi(d) for d, q in alg.bracket_x(a, b).x_terms.items()), Fraction(0))
            if val:
                bad.append((a, b))
    return bad


@dataclass
class Condition2Row:
    beta: Degree
    witness: Degree
    has_generator: bool
    value: Fraction

    @property
    def ok(self) -> bool:
        return self.has_generator and self.value != 0


@dataclass
class NonsingularityReport:
    level: int
    alpha_phi: Degree | None
    condition1: bool
    rows: list[Condition2Row] = field(default_factory=list)
    unchecked: list[Degree] = field(default_factory=list)
    family_flag: bool | None = None

    @property
    def condition2(self) -> bool:
        return self.condition1 and all(r.ok for r in self.rows)

    @property
    def nonsingular(self) -> bool:
        return self.condition1 and self.condition2

    def to_dict(self):
        return {
            "level": self.level,
            "alpha_phi": None if self.alpha_phi is None else list(self.alpha_phi),
            "condition1": self.condition1,
            "condition2": self.condition2,
            "nonsingular": self.nonsingular,
            "family_flag": self.family_flag,
            "rows": [
                {"beta": list(r.beta), "witness": list(r.witness), "has_generator": r.has_generator,
                 "value": str(r.value), "ok": r.ok}
                for r in self.rows
            ],
            "unchecked": [list(d) for d in self.unchecked],
        }


def nonsingularity_report(alg: GradedLieAlgebra, phi: Character, level: int | None = None) -> NonsingularityReport:
    """Windowed check that the support of phi has a maximum and every b_minus generator is detected.

    For each non-central ``beta`` of level <= 0 the witness is ``x_{alpha_phi - beta}``;
    rows whose witness would leave the window are listed under ``unchecked``.
    """
    level = alg.level if level is None else min(level, alg.level)
    fam = alg.family_check(alg, phi) if alg.family_check else None
    alpha = max((d for d in phi.support if alg.pi(d) <= level), default=None)
    report = NonsingularityReport(level, alpha, alpha is not None, family_flag=fam)
    if alpha is None:
        return report
    for beta in alg.b_minus_degrees(level):
        gamma = alpha - beta
        if alg.pi(gamma) > level:
            report.unchecked.append(beta)
            continue
        has = alg.has_x(gamma)
        value = Fraction(0)
        if has:
            br = alg.bracket_x(gamma, beta)
            value = sum((q * phi(d) for d, q in br.x_terms.items()), Fraction(0))
        report.rows.append(Condition2Row(beta, gamma, has, value))
    return report


# ---------------------------------------------------------------------------
# ideals
# ---------------------------------------------------------------------------


def substitution_ideal(alg: GradedLieAlgebra, assignments: Mapping[str, object]) -> IdealSpec:
    """Build a substitution ideal from ``{name: rational | CentralPoly | name}``."""
    names = alg.central_names
    out = []
    for n, val in assignments.items():
        if n not in names:
            raise IdealError(f"unknown central generator {n!r}")
        if isinstance(val, CentralPoly):
            poly = val
        elif isinstance(val, str) and val in names:
            poly = CentralPoly.variable(names, val)
        else:
            poly = CentralPoly.constant(names, to_rational(val))
        out.append((n, poly))
    return IdealSpec(tuple(out))


# ---------------------------------------------------------------------------
# modules and vectors
# ---------------------------------------------------------------------------


class WhittakerModule:
    """``M_phi`` (zero ideal) or ``L_{phi,I} = M_phi / I M_phi`` for a substitution ideal."""

    def __init__(self, alg: GradedLieAlgebra, phi: Character, ideal: IdealSpec | None = None):
        ideal = IdealSpec.zero() if ideal is None else ideal
        names = alg.central_names
        for n, poly in ideal.assignments:
            if n not in names:
                raise UnsupportedIdealError(f"unknown central generator {n!r}")
            if poly.names != names:
                raise UnsupportedIdealError("substitution polynomials must use the algebra's central variables")
            if alg.pi(alg.central_degree(n)) != 0:
                raise UnsupportedIdealError(
                    f"cannot eliminate {n!r}: only level-0 central generators support substitution")
        self.alg = alg
        self.phi = phi
        self.ideal = ideal
        self.survivors = ideal.survivors(names)
        self._keep = [i for i, n in enumerate(names) if n in self.survivors]
        self._zero = _state(alg)["zero"]
        self._red: dict[Exps, dict[Exps, Fraction]] = {}
        self._act: dict[tuple[Degree, Parts], Flat] = {}

    def __repr__(self):
        return f"<WhittakerModule {self.alg.name} phi={self.phi.to_dict()} I=({self.ideal})>"

    @property
    def is_maximal(self) -> bool:
        return self.ideal.is_maximal(self.alg.central_names)

    @property
    def w(self) -> "ModuleVector":
        """The cyclic Whittaker vector ``w'``."""
        return ModuleVector(self, {((), self._zero): Fraction(1)})

    def zero(self) -> "ModuleVector":
        return ModuleVector(self, {})

    # -- coefficient reduction ---------------------------------------------

    def reduce_exps(self, ce: Exps) -> dict[Exps, Fraction]:
        hit = self._red.get(ce)
        if hit is None:
            names = self.alg.central_names
            p = reduce_poly(CentralPoly(names, {ce: 1}), self.ideal)
            hit = dict(p.terms)
            self._red[ce] = hit
        return hit

    def reduce_flat(self, data: Mapping) -> Flat:
        out: Flat = {}
        for (parts, ce), q in data.items():
            if not any(ce) or self.ideal.is_zero:
                _accumulate(out, (parts, ce), q)
                continue
            for ce2, q2 in self.reduce_exps(ce).items():
                _accumulate(out, (parts, ce2), q * q2)
        return out

    def coefficient_poly(self, ce_terms: Mapping[Exps, Fraction]) -> CentralPoly:
        """Project full-variable exponent vectors onto the surviving variables."""
        return CentralPoly(self.survivors, {tuple(ce[i] for i in self._keep): q for ce, q in ce_terms.items()})

    def lift_exps(self, ce: Sequence[int]) -> Exps:
        full = [0] * len(self.alg.central_names)
        for i, k in zip(self._keep, ce):
            full[i] = k
        return tuple(full)

    # -- the action ---------------------------------------------------------

    def act_basis(self, a: Degree, parts: Parts) -> Flat:
        """``x_a x_parts w'`` as a reduced flat vector (memoized; do not mutate)."""
        key = (a, parts)
        hit = self._act.get(key)
        if hit is not None:
            return hit
        alg = self.alg
        if alg.pi(a) <= 0:
            res = self.reduce_flat(lmul(alg, a, parts))
        elif not parts:
            q = self.phi(a)
            res = {((), self._zero): q} if q else {}
        else:
            b, rest = parts[0], parts[1:]
            res = self._apply_gen(b, self.act_basis(a, rest))
            br = alg.bracket_x(a, b)
            for d, q in br.x_terms.items():
                for k, q2 in self.act_basis(d, rest).items():
                    _accumulate(res, k, q * q2)
            st = _state(alg)
            for name, q in br.central_terms.items():
                for ce, q2 in self.reduce_exps(st["unit"][name]).items():
                    _accumulate(res, (rest, ce), q * q2)
        self._act[key] = res
        return res

    def _apply_gen(self, a: Degree, data: Mapping) -> Flat:
        out: Flat = {}
        for (p, ce), q in data.items():
            for (p2, ce2), q2 in self.act_basis(a, p).items():
                _accumulate(out, (p2, _add_exps(ce, ce2)), q * q2)
        return out

    def _apply_exps(self, ce: Exps, data: Mapping) -> Flat:
        if not any(ce):
            return dict(data)
        red = self.reduce_exps(ce)
        out: Flat = {}
        for (p, ce1), q in data.items():
            for ce2, q2 in red.items():
                _accumulate(out, (p, _add_exps(ce1, ce2)), q * q2)
        return out

    def act(self, x, v: "ModuleVector") -> "ModuleVector":
        """Action of a generator, degree, LieElement or UElement on a module vector."""
        if v.module is not self:
            raise ValueError("vector belongs to a different module")
        st = _state(self.alg)
        if isinstance(x, X):
            self.alg.check_window(x.degree)
            return ModuleVector._wrap(self, self._apply_gen(x.degree, v.data))
        if isinstance(x, C):
            return ModuleVector._wrap(self, self._apply_exps(st["unit"][x.name], v.data))
        if isinstance(x, Degree):
            return self.act(X(x), v)
        if isinstance(x, LieElement):
            x = UElement.from_lie(self.alg, x)
        if isinstance(x, UElement):
            out: Flat = {}
            for (parts, ce), q in x.data.items():
                cur: Mapping = v.data
                for p in reversed(parts):
                    cur = self._apply_gen(p, cur)
                for k, q2 in self._apply_exps(ce, cur).items():
                    _accumulate(out, k, q * q2)
            return ModuleVector._wrap(self, out)
        raise TypeError(f"cannot act by {x!r}")

    def probe(self, a: Degree, v: "ModuleVector") -> "ModuleVector":
        """``(x_a - phi(x_a)) v``."""
        return self.act(X(a), v) - v.scale(self.phi(a))

    # -- construction helpers ----------------------------------------------

    def basis_vector(self, parts: Sequence = (), coeff=1, exps: Sequence[int] | None = None) -> "ModuleVector":
        """``coeff * c^exps * x_parts w'`` with ``exps`` over the surviving variables."""
        parts = tuple(Partition(parts))
        if any(self.alg.pi(p) > 0 for p in parts):
            raise ValueError("module basis vectors use b_minus parts only")
        ce = self._zero if exps is None else self.lift_exps(exps)
        return ModuleVector(self, {(parts, ce): to_rational(coeff)})

    def vector(self, terms: Mapping[Sequence, object]) -> "ModuleVector":
        """Vector from ``{partition: rational or CentralPoly over the survivors}``."""
        out: Flat = {}
        for parts, coeff in terms.items():
            key = tuple(Partition(parts))
            if isinstance(coeff, CentralPoly):
                if coeff.names != self.survivors:
                    raise ValueError(f"coefficients must be polynomials in {self.survivors}")
                for ce, q in coeff.terms.items():
                    _accumulate(out, (key, self.lift_exps(ce)), q)
            else:
                q = to_rational(coeff)
                if q:
                    _accumulate(out, (key, self._zero), q)
        return ModuleVector(self, self.reduce_flat(out))

    def from_uelement(self, u: UElement) -> "ModuleVector":
        """``u w'``."""
        return self.act(u, self.w)

    def lift(self, v: "ModuleVector") -> UElement:
        """The U(b_minus) element ``sum p_lam x_lam`` with ``v = sum p_lam x_lam w'``."""
        return UElement(self.alg, v.data)


def make_module(alg: GradedLieAlgebra, phi: Character, ideal: IdealSpec | None = None) -> WhittakerModule:
    return WhittakerModule(alg, phi, ideal)


def act(module: WhittakerModule, x, v: "ModuleVector") -> "ModuleVector":
    return module.act(x, v)


class ModuleVector:
    __slots__ = ("module", "data")

    def __init__(self, module: WhittakerModule, data: Mapping | None = None):
        self.module = module
        clean: Flat = {}
        for (parts, ce), q in (data or {}).items():
            q = to_rational(q)
            if q:
                _accumulate(clean, (tuple(parts), tuple(ce)), q)
        self.data = clean

    @classmethod
    def _wrap(cls, module, data: Flat) -> "ModuleVector":
        obj = cls.__new__(cls)
        obj.module = module
        obj.data = data
        return obj

    @property
    def terms(self) -> dict[Partition, CentralPoly]:
        grouped: dict[Parts, dict] = {}
        for (parts, ce), q in self.data.items():
            grouped.setdefault(parts, {})[ce] = q
        return {Partition(p): self.module.coefficient_poly(t) for p, t in sorted(grouped.items())}

    def is_zero(self) -> bool:
        return not self.data

    def __bool__(self):
        return bool(self.data)

    def height(self) -> int:
        return max((len(p) for p, _ in self.data), default=-1)

    def __add__(self, other: "ModuleVector") -> "ModuleVector":
        if other.module is not self.module:
            raise ValueError("vectors belong to different modules")
        out = dict(self.data)
        for k, q in other.data.items():
            _accumulate(out, k, q)
        return ModuleVector._wrap(self.module, out)

    def __neg__(self):
        return ModuleVector._wrap(self.module, {k: -q for k, q in self.data.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, q) -> "ModuleVector":
        q = to_rational(q)
        if not q:
            return ModuleVector._wrap(self.module, {})
        return ModuleVector._wrap(self.module, {k: q * v for k, v in self.data.items()})

    def __mul__(self, q):
        return self.scale(q)

    __rmul__ = __mul__

    def __eq__(self, other):
        if not isinstance(other, ModuleVector):
            return NotImplemented
        return self.module is other.module and self.data == other.data

    def __hash__(self):
        return hash(frozenset(self.data.items()))

    def scalar_multiple_of_w(self) -> Fraction | None:
        """The scalar ``s`` when ``self == s w'`` with ``s`` a nonzero rational, else None."""
        if len(self.data) != 1:
            return None
        ((parts, ce), q), = self.data.items()
        if parts or any(ce):
            return None
        return q

    def render_lines(self) -> list[str]:
        alg = self.module.alg
        lines = []
        for part, poly in self.terms.items():
            mono = render_monomial(alg, part) + "*w" if part else "w"
            if len(poly.terms) == 1 and poly.is_constant():
                lines.append(f"{poly} * {mono}")
            else:
                lines.append(f"({poly}) * {mono}")
        return lines

    def records(self) -> list[dict]:
        return [{"partition": [list(d) for d in part], "coeff": str(poly)} for part, poly in self.terms.items()]

    def __str__(self):
        return join_signed(self.render_lines())

    def __repr__(self):
        return f"ModuleVector({self})"


# ---------------------------------------------------------------------------
# statistics
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class VectorStats:
    mindeg: Degree
    mindeg1: int
    ell: int
    ell1: int

    def key(self) -> tuple[int, int]:
        """The quantity the witness search improves: ``(mindeg1, -ell1)``."""
        return (self.mindeg1, -self.ell1)

    def to_dict(self):
        return {"mindeg": list(self.mindeg), "mindeg1": self.mindeg1, "ell": self.ell, "ell1": self.ell1}


class UndefinedStats(ValueError):
    pass


def vector_stats(module: WhittakerModule, v: ModuleVector) -> VectorStats:
    """Minimal Q-degree and level of v's homogeneous components, and their heights."""
    if v.is_zero():
        raise UndefinedStats("statistics of the zero vector are undefined")
    alg = module.alg
    degs = {}
    for parts, ce in v.data:
        d = term_degree(alg, parts, ce)
        degs[(parts, ce)] = d
    mindeg = min(degs.values())
    ell = max(len(p) for (p, ce), d in degs.items() if d == mindeg)
    levels = {k: alg.pi(d) for k, d in degs.items()}
    mindeg1 = min(levels.values())
    ell1 = max(len(p) for (p, ce), lv in levels.items() if lv == mindeg1)
    return VectorStats(mindeg, mindeg1, ell, ell1)
