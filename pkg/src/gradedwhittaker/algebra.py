"""Q-good graded Lie algebras: built-in families, custom windowed tables, validation.

An algebra has at most one non-central basis vector ``x_a`` per degree ``a``
plus finitely many named central generators.  Brackets of basis vectors are
returned as :class:`LieElement` values and are cached per algebra.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Callable, Iterable, Mapping, Sequence

from .exactmath import format_rational, to_rational
from .grading import Degree, GradingMap, format_degree, parse_degree


class AlgebraError(ValueError):
    """Malformed algebra definition."""


class QGoodError(AlgebraError):
    """Two non-central generators declared at one degree."""


class WindowExceeded(ValueError):
    """A degree outside the algebra's level window was reached."""

    def __init__(self, degree, level):
        self.degree = degree
        self.level = level
        super().__init__(f"degree {format_degree(degree)} lies outside the level window [-{level}, {level}]")


@dataclass(frozen=True)
class X:
    """The chosen non-central basis vector of degree ``degree``."""

    degree: Degree


@dataclass(frozen=True)
class C:
    """A central generator."""

    name: str
    degree: Degree


GeneratorId = X | C


class LieElement:
    """Finite rational combination of basis vectors ``x_a`` and central generators."""

    __slots__ = ("x_terms", "central_terms")

    def __init__(self, x_terms: Mapping[Degree, object] | None = None,
                 central_terms: Mapping[str, object] | None = None):
        self.x_terms = {Degree(d): to_rational(q) for d, q in (x_terms or {}).items() if q}
        self.central_terms = {n: to_rational(q) for n, q in (central_terms or {}).items() if q}

    @classmethod
    def zero(cls) -> "LieElement":
        return cls()

    @classmethod
    def of(cls, gen: GeneratorId, coeff=1) -> "LieElement":
        if isinstance(gen, X):
            return cls({gen.degree: coeff})
        return cls({}, {gen.name: coeff})

    def is_zero(self) -> bool:
        return not self.x_terms and not self.central_terms

    def __bool__(self):
        return not self.is_zero()

    def __add__(self, other: "LieElement") -> "LieElement":
        xs = dict(self.x_terms)
        for d, q in other.x_terms.items():
            xs[d] = xs.get(d, 0) + q
        cs = dict(self.central_terms)
        for n, q in other.central_terms.items():
            cs[n] = cs.get(n, 0) + q
        return LieElement(xs, cs)

    def __neg__(self):
        return self.scale(-1)

    def __sub__(self, other):
        return self + (-other)

    def scale(self, q) -> "LieElement":
        q = to_rational(q)
        return LieElement({d: q * v for d, v in self.x_terms.items()},
                          {n: q * v for n, v in self.central_terms.items()})

    def __eq__(self, other):
        if not isinstance(other, LieElement):
            return NotImplemented
        return self.x_terms == other.x_terms and self.central_terms == other.central_terms

    def __hash__(self):
        return hash((frozenset(self.x_terms.items()), frozenset(self.central_terms.items())))

    def render(self, alg: "GradedLieAlgebra | None" = None) -> str:
        parts = []
        for d in sorted(self.x_terms):
            name = alg.name_of(X(d)) if alg else x_name(d)
            parts.append(f"{format_rational(self.x_terms[d])}*{name}")
        for n in sorted(self.central_terms):
            parts.append(f"{format_rational(self.central_terms[n])}*{n}")
        return " + ".join(parts) if parts else "0"

    def __repr__(self):
        return f"LieElement({self.render()})"


def x_name(d: Sequence[int]) -> str:
    return "X[" + ",".join(str(x) for x in d) + "]"


BracketRule = Callable[[Degree, Degree], LieElement]


class GradedLieAlgebra:
    """A Q-good Lie algebra truncated to the level window ``[-level, level]``.

    ``x_degrees`` lists the degrees in the window that carry a non-central
    generator.  ``rule`` evaluates ``[x_a, x_b]`` for two such degrees.
    ``families`` maps a letter such as ``"L"`` to a function from an integer
    index to a degree; it only affects parsing and display.
    """

    def __init__(self, name: str, pi: GradingMap, level: int, x_degrees: Iterable[Degree],
                 centrals: Sequence[tuple[str, Degree]], rule: BracketRule,
                 families: Mapping[str, Callable[[int], Degree]] | None = None,
                 family_check: Callable[["GradedLieAlgebra", object], bool] | None = None):
        self.name = name
        self.pi = pi
        self.rank = pi.rank
        self.level = int(level)
        degs = [Degree(d) for d in x_degrees]
        seen = set()
        for d in degs:
            if len(d) != self.rank:
                raise AlgebraError(f"degree {format_degree(d)} has the wrong rank")
            if d in seen:
                raise QGoodError(f"two non-central generators declared at degree {format_degree(d)}")
            seen.add(d)
            if abs(pi(d)) > self.level:
                raise AlgebraError(f"generator degree {format_degree(d)} lies outside the window")
        self.x_degrees: tuple[Degree, ...] = tuple(sorted(degs))
        self._x_set = frozenset(self.x_degrees)
        self.centrals: tuple[tuple[str, Degree], ...] = tuple((n, Degree(d)) for n, d in centrals)
        names = [n for n, _ in self.centrals]
        if len(set(names)) != len(names):
            raise AlgebraError("duplicate central generator names")
        self.central_names: tuple[str, ...] = tuple(names)
        self._central_degree = dict(self.centrals)
        for n, d in self.centrals:
            if len(d) != self.rank:
                raise AlgebraError(f"central {n!r} has a degree of the wrong rank")
            if pi(d) > 0:
                raise AlgebraError(
                    f"central {n!r} has positive level; declare it as an ordinary generator instead")
        self.rule = rule
        self.families = dict(families or {})
        self.family_check = family_check
        self._cache: dict[tuple[Degree, Degree], LieElement] = {}

    def __repr__(self):
        return f"<GradedLieAlgebra {self.name} rank={self.rank} level={self.level}>"

    # -- degree bookkeeping -------------------------------------------------

    def level_of(self, d: Sequence[int]) -> int:
        return self.pi(d)

    def in_window(self, d: Sequence[int]) -> bool:
        return abs(self.pi(d)) <= self.level

    def has_x(self, d: Sequence[int]) -> bool:
        return d in self._x_set

    def central_degree(self, name: str) -> Degree:
        return self._central_degree[name]

    def positive_degrees(self, max_level: int | None = None) -> list[Degree]:
        top = self.level if max_level is None else min(max_level, self.level)
        return [d for d in self.x_degrees if 0 < self.pi(d) <= top]

    def b_minus_degrees(self, depth: int | None = None) -> list[Degree]:
        """Degrees of K''\\R'' with level >= -depth."""
        lo = -self.level if depth is None else -depth
        return [d for d in self.x_degrees if lo <= self.pi(d) <= 0]

    def generators(self) -> list[GeneratorId]:
        return [X(d) for d in self.x_degrees] + [C(n, d) for n, d in self.centrals]

    # -- names --------------------------------------------------------------

    def name_of(self, gen: GeneratorId) -> str:
        if isinstance(gen, C):
            return gen.name
        for letter, fn in self.families.items():
            # families are injective; invert by the first coordinate's level
            idx = self.pi(gen.degree)
            if fn(idx) == gen.degree:
                return f"{letter}{idx}"
        return x_name(gen.degree)

    def resolve(self, letter: str, index: int | None = None, degree: Degree | None = None) -> GeneratorId:
        """Look up a generator by family letter and index, central name, or ``X`` and degree."""
        if degree is not None:
            if letter != "X":
                raise KeyError(f"unknown generator {letter}[...]")
            if not self.has_x(degree):
                if not self.in_window(degree):
                    raise WindowExceeded(degree, self.level)
                raise KeyError(f"no generator at degree {format_degree(degree)}")
            return X(degree)
        if index is None:
            if letter in self._central_degree:
                return C(letter, self._central_degree[letter])
            raise KeyError(f"unknown central generator {letter!r}")
        if letter not in self.families:
            raise KeyError(f"unknown generator family {letter!r}")
        d = self.families[letter](index)
        if not self.in_window(d):
            raise WindowExceeded(d, self.level)
        return X(d)

    # -- brackets -----------------------------------------------------------

    def check_window(self, d: Sequence[int]):
        if not self.in_window(d):
            raise WindowExceeded(d, self.level)

    def bracket_x(self, a: Degree, b: Degree) -> LieElement:
        """``[x_a, x_b]`` for two generator degrees, cached."""
        key = (a, b)
        hit = self._cache.get(key)
        if hit is not None:
            return hit
        self.check_window(a)
        self.check_window(b)
        if a == b:
            # antisymmetry forces zero, even when 2a leaves the window
            val = LieElement()
            self._cache[key] = val
            return val
        s = a + b
        self.check_window(s)
        val = self.rule(a, b)
        self._cache[key] = val
        return val

    def bracket(self, a: GeneratorId, b: GeneratorId) -> LieElement:
        if isinstance(a, C) or isinstance(b, C):
            for g in (a, b):
                if isinstance(g, X):
                    self.check_window(g.degree)
            return LieElement.zero()
        return self.bracket_x(a.degree, b.degree)

    def bracket_elements(self, u: LieElement, v: LieElement) -> LieElement:
        out = LieElement.zero()
        for a, p in u.x_terms.items():
            for b, q in v.x_terms.items():
                out = out + self.bracket_x(a, b).scale(p * q)
        return out


# ---------------------------------------------------------------------------
# Built-in families
# ---------------------------------------------------------------------------


def virasoro_cocycle(n: int) -> Fraction:
    return Fraction(n ** 3 - n, 12)


def virasoro(level: int = 6, cocycle: Callable[[int], Fraction] = virasoro_cocycle) -> GradedLieAlgebra:
    """Virasoro algebra: ``L_n`` at degree n, central ``c`` at degree 0.

    ``cocycle`` gives the coefficient of ``c`` in ``[L_n, L_{-n}]``; it is a
    parameter only so that tests can mutate it.
    """

    def rule(a: Degree, b: Degree) -> LieElement:
        n, m = a[0], b[0]
        xs = {Degree(n + m): m - n} if m != n else {}
        cs = {"c": cocycle(n)} if n + m == 0 else {}
        return LieElement(xs, cs)

    return GradedLieAlgebra(
        "virasoro", GradingMap((1,)), level,
        [Degree(n) for n in range(-level, level + 1)],
        [("c", Degree(0))], rule,
        families={"L": lambda n: Degree(n)},
        family_check=lambda alg, phi: all(phi(Degree(i)) != 0 for i in (1, 2)),
    )


def w22(level: int = 6, cocycle: Callable[[int], Fraction] = virasoro_cocycle) -> GradedLieAlgebra:
    """W'(2,2): ``L_n`` at (n,0), ``W_n`` at (n,1), central ``c`` at (0,0) and ``z`` at (0,1)."""

    def rule(a: Degree, b: Degree) -> LieElement:
        (n, i), (m, j) = a, b
        if i == 1 and j == 1:
            return LieElement()
        if i == 1:
            # [W_n, L_m] = -[L_m, W_n]
            return rule(b, a).scale(-1)
        xs = {Degree((n + m, j)): m - n} if m != n else {}
        cs = {("c" if j == 0 else "z"): cocycle(n)} if n + m == 0 else {}
        return LieElement(xs, cs)

    degs = [Degree((n, i)) for n in range(-level, level + 1) for i in (0, 1)]
    return GradedLieAlgebra(
        "w22", GradingMap((1, 0)), level, degs,
        [("c", Degree((0, 0))), ("z", Degree((0, 1)))], rule,
        families={"L": lambda n: Degree((n, 0)), "W": lambda n: Degree((n, 1))},
        family_check=lambda alg, phi: all(
            phi(Degree((i, k))) != 0 for i in (1, 2) for k in (0, 1)),
    )


BUILTINS = {"virasoro": virasoro, "w22": w22}


def builtin(name: str, level: int = 6) -> GradedLieAlgebra:
    try:
        factory = BUILTINS[name]
    except KeyError:
        raise AlgebraError(f"unknown built-in algebra {name!r}; choose from {sorted(BUILTINS)}") from None
    return factory(level)


# ---------------------------------------------------------------------------
# Custom algebras from a JSON-compatible document
# ---------------------------------------------------------------------------

_REQUIRED = ("rank", "pi_weights", "window_level", "generators")


def from_spec(document: Mapping | str | Path) -> GradedLieAlgebra:
    """Build a windowed algebra from an algebra document (mapping or JSON file path).

    Brackets are listed for pairs ``a <= b``; the opposite order is filled in by
    antisymmetry and unlisted pairs bracket to zero.  Validation is not run.
    """
    if isinstance(document, (str, Path)):
        document = json.loads(Path(document).read_text())
    if not isinstance(document, Mapping):
        raise AlgebraError("algebra document must be a JSON object")
    for key in _REQUIRED:
        if key not in document:
            raise AlgebraError(f"algebra document is missing field {key!r}")
    unknown = set(document) - set(_REQUIRED) - {"centrals", "brackets", "name"}
    if unknown:
        raise AlgebraError(f"unknown algebra document fields: {sorted(unknown)}")
    rank = int(document["rank"])
    pi = GradingMap(tuple(document["pi_weights"]))
    if pi.rank != rank:
        raise AlgebraError("pi_weights length differs from rank")
    level = int(document["window_level"])
    gens = [parse_degree(d) for d in document["generators"]]
    centrals = []
    for entry in document.get("centrals", []):
        try:
            centrals.append((str(entry["name"]), parse_degree(entry["degree"])))
        except (KeyError, TypeError) as exc:
            raise AlgebraError(f"malformed central entry {entry!r}") from exc
    gen_set = set(gens)
    central_deg = dict(centrals)
    table: dict[tuple[Degree, Degree], LieElement] = {}
    for entry in document.get("brackets", []):
        try:
            a, b = parse_degree(entry["a"]), parse_degree(entry["b"])
        except (KeyError, TypeError) as exc:
            raise AlgebraError(f"malformed bracket entry {entry!r}") from exc
        if a not in gen_set or b not in gen_set:
            raise AlgebraError(f"bracket [{format_degree(a)}, {format_degree(b)}] names an undeclared generator")
        if b < a:
            raise AlgebraError(f"bracket pairs must be listed with a <= b, got {format_degree(a)}, {format_degree(b)}")
        if (a, b) in table:
            raise AlgebraError(f"bracket [{format_degree(a)}, {format_degree(b)}] listed twice")
        s = a + b
        xq = to_rational(entry.get("x_coeff_degree_sum", 0))
        if xq and s not in gen_set:
            raise AlgebraError(f"bracket [{format_degree(a)}, {format_degree(b)}] has an x-term at "
                               f"{format_degree(s)}, where no generator is declared")
        cs = {}
        for n, q in (entry.get("central_coeffs") or {}).items():
            if n not in central_deg:
                raise AlgebraError(f"bracket mentions unknown central {n!r}")
            cs[n] = to_rational(q)
        val = LieElement({s: xq} if xq else {}, cs)
        table[(a, b)] = val
        if a != b:
            table[(b, a)] = val.scale(-1)

    def rule(a: Degree, b: Degree) -> LieElement:
        return table.get((a, b), LieElement())

    return GradedLieAlgebra(str(document.get("name", "custom")), pi, level, gens, centrals, rule)


def to_spec(alg: GradedLieAlgebra) -> dict:
    """Serialize an algebra's window as an algebra document."""
    brackets = []
    for a, b in itertools.combinations_with_replacement(alg.x_degrees, 2):
        if not alg.in_window(a + b):
            continue
        val = alg.bracket_x(a, b)
        if val.is_zero():
            continue
        entry = {"a": list(a), "b": list(b)}
        xq = val.x_terms.get(a + b)
        if xq:
            entry["x_coeff_degree_sum"] = format_rational(xq)
        if val.central_terms:
            entry["central_coeffs"] = {n: format_rational(q) for n, q in sorted(val.central_terms.items())}
        brackets.append(entry)
    return {
        "name": alg.name,
        "rank": alg.rank,
        "pi_weights": list(alg.pi.weights),
        "window_level": alg.level,
        "generators": [list(d) for d in alg.x_degrees],
        "centrals": [{"name": n, "degree": list(d)} for n, d in alg.centrals],
        "brackets": brackets,
    }


# ---------------------------------------------------------------------------
# Validation and sector classification
# ---------------------------------------------------------------------------


@dataclass
class AlgebraReport:
    level: int
    qgood: list[str] = field(default_factory=list)
    antisymmetry: list[tuple[Degree, Degree]] = field(default_factory=list)
    jacobi: list[tuple[Degree, Degree, Degree]] = field(default_factory=list)
    grading: list[tuple[Degree, Degree]] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not (self.qgood or self.antisymmetry or self.jacobi or self.grading)

    @property
    def violation_count(self) -> int:
        return len(self.qgood) + len(self.antisymmetry) + len(self.jacobi) + len(self.grading)

    def to_dict(self):
        return {
            "level": self.level,
            "ok": self.ok,
            "qgood": list(self.qgood),
            "antisymmetry": [[list(a), list(b)] for a, b in self.antisymmetry],
            "jacobi": [[list(a), list(b), list(c)] for a, b, c in self.jacobi],
            "grading": [[list(a), list(b)] for a, b in self.grading],
        }


def validate_algebra(alg: GradedLieAlgebra, level: int | None = None) -> AlgebraReport:
    """Check Q-goodness, antisymmetry, grade additivity and Jacobi on a window.

    Only pairs and triples whose brackets stay inside the window are examined.
    """
    level = alg.level if level is None else min(level, alg.level)
    report = AlgebraReport(level)
    degs = [d for d in alg.x_degrees if abs(alg.pi(d)) <= level]

    per_degree: dict[Degree, int] = {}
    for d in degs:
        per_degree[d] = per_degree.get(d, 0) + 1
    for d, n in per_degree.items():
        if n > 1:
            report.qgood.append(f"{n} non-central generators at degree {format_degree(d)}")
    for name, d in alg.centrals:
        if alg.pi(d) > 0 and d in per_degree:
            report.qgood.append(f"degree {format_degree(d)} has level > 0 and dimension 2 ({name} and x)")

    def inside(d):
        return abs(alg.pi(d)) <= level

    for a, b in itertools.product(degs, repeat=2):
        s = a + b
        if not inside(s):
            continue
        ab = alg.bracket_x(a, b)
        if a <= b and ab + alg.bracket_x(b, a) != LieElement.zero():
            report.antisymmetry.append((a, b))
        bad_x = any(d != s for d in ab.x_terms) or (ab.x_terms and not alg.has_x(s))
        bad_c = any(alg.central_degree(n) != s for n in ab.central_terms)
        if bad_x or bad_c:
            report.grading.append((a, b))

    def br(a: Degree, v: LieElement) -> LieElement:
        out = LieElement.zero()
        for d, q in v.x_terms.items():
            if alg.has_x(d):
                out = out + alg.bracket_x(a, d).scale(q)
        return out

    for a, b, c in itertools.product(degs, repeat=3):
        if not (inside(a + b) and inside(b + c) and inside(a + c) and inside(a + b + c)):
            continue
        total = (br(a, alg.bracket_x(b, c)) + br(b, alg.bracket_x(c, a))
                 + br(c, alg.bracket_x(a, b)))
        if not total.is_zero():
            report.jacobi.append((a, b, c))
    return report


@dataclass
class SectorTable:
    level: int
    K: list[Degree]
    K_pos: list[Degree]       # K'
    K_nonpos: list[Degree]    # K''
    R: list[Degree]
    R_pos: list[Degree]       # R'
    R_nonpos: list[Degree]    # R''
    z2: list[str]             # central generators of level <= 0
    sectors: dict[GeneratorId, str]

    @property
    def b_minus_x_degrees(self) -> list[Degree]:
        """K''\\R''."""
        r = set(self.R_nonpos)
        return [d for d in self.K_nonpos if d not in r]

    def to_dict(self):
        fmt = lambda ds: [list(d) for d in ds]
        return {
            "level": self.level,
            "K": fmt(self.K), "K'": fmt(self.K_pos), "K''": fmt(self.K_nonpos),
            "R": fmt(self.R), "R'": fmt(self.R_pos), "R''": fmt(self.R_nonpos),
            "K''\\R''": fmt(self.b_minus_x_degrees),
            "Z''": list(self.z2),
        }


def classify_degrees(alg: GradedLieAlgebra, level: int | None = None) -> SectorTable:
    """Windowed sector sets and the n / h / n_minus assignment of each generator."""
    level = alg.level if level is None else min(level, alg.level)
    inside = lambda d: abs(alg.pi(d)) <= level
    xs = {d for d in alg.x_degrees if inside(d)}
    cs = {d for _, d in alg.centrals if inside(d)}
    K = sorted(xs | cs)
    R = sorted(cs - xs)
    sectors: dict[GeneratorId, str] = {}
    for g in alg.generators():
        d = g.degree
        if not inside(d):
            continue
        lv = alg.pi(d)
        sectors[g] = "n" if lv > 0 else ("h" if lv == 0 else "n_minus")
    return SectorTable(
        level=level,
        K=K,
        K_pos=[d for d in K if alg.pi(d) > 0],
        K_nonpos=[d for d in K if alg.pi(d) <= 0],
        R=R,
        R_pos=[d for d in R if alg.pi(d) > 0],
        R_nonpos=[d for d in R if alg.pi(d) <= 0],
        z2=[n for n, d in alg.centrals if alg.pi(d) <= 0],
        sectors=sectors,
    )

