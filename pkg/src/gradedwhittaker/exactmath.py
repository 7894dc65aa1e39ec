"""Exact rational arithmetic, central polynomials and sparse linear algebra.

Everything here works over :class:`fractions.Fraction`; no floating point is
used anywhere in the package.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd
from typing import Iterable, Mapping, Sequence

Rational = Fraction

Exponents = tuple[int, ...]


def to_rational(value) -> Fraction:
    """Coerce ints, Fractions and ``"p/q"`` strings to a Fraction."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise TypeError("booleans are not rationals")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        try:
            return Fraction(value.strip())
        except (ValueError, ZeroDivisionError) as exc:
            raise ValueError(f"not a rational number: {value!r}") from exc
    raise TypeError(f"cannot interpret {value!r} as an exact rational")


def format_rational(q: Fraction) -> str:
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


# ---------------------------------------------------------------------------
# Central polynomials
# ---------------------------------------------------------------------------


def _grlex_key(exps: Exponents):
    return (sum(exps), exps)


class CentralPoly:
    """Sparse polynomial with rational coefficients in named commuting variables.

    ``terms`` maps exponent tuples (one entry per name, in declaration order)
    to nonzero coefficients.
    """

    __slots__ = ("names", "terms")

    def __init__(self, names: Sequence[str], terms: Mapping[Exponents, object] | None = None):
        self.names = tuple(names)
        clean: dict[Exponents, Fraction] = {}
        for exps, coeff in (terms or {}).items():
            exps = tuple(exps)
            if len(exps) != len(self.names):
                raise ValueError(f"exponent vector {exps} does not match variables {self.names}")
            q = to_rational(coeff)
            if q:
                clean[exps] = clean.get(exps, Fraction(0)) + q
                if not clean[exps]:
                    del clean[exps]
        self.terms = clean

    @classmethod
    def constant(cls, names: Sequence[str], value=1) -> "CentralPoly":
        return cls(names, {(0,) * len(names): value})

    @classmethod
    def variable(cls, names: Sequence[str], name: str) -> "CentralPoly":
        names = tuple(names)
        if name not in names:
            raise KeyError(f"unknown central generator {name!r}")
        exps = tuple(1 if n == name else 0 for n in names)
        return cls(names, {exps: 1})

    def _check(self, other: "CentralPoly"):
        if self.names != other.names:
            raise ValueError(f"variable mismatch: {self.names} vs {other.names}")

    def _coerce(self, other) -> "CentralPoly":
        if isinstance(other, CentralPoly):
            self._check(other)
            return other
        return CentralPoly.constant(self.names, to_rational(other))

    def __add__(self, other):
        other = self._coerce(other)
        out = dict(self.terms)
        for e, q in other.terms.items():
            out[e] = out.get(e, 0) + q
        return CentralPoly(self.names, out)

    __radd__ = __add__

    def __neg__(self):
        return CentralPoly(self.names, {e: -q for e, q in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        other = self._coerce(other)
        out: dict[Exponents, Fraction] = {}
        for e1, q1 in self.terms.items():
            for e2, q2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                out[e] = out.get(e, 0) + q1 * q2
        return CentralPoly(self.names, out)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative powers are not polynomials")
        result = CentralPoly.constant(self.names)
        for _ in range(n):
            result = result * self
        return result

    def __eq__(self, other):
        try:
            other = self._coerce(other)
        except (TypeError, ValueError):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        return hash((self.names, frozenset(self.terms.items())))

    def __bool__(self):
        return bool(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def is_constant(self) -> bool:
        return all(not any(e) for e in self.terms)

    def constant_term(self) -> Fraction:
        return self.terms.get((0,) * len(self.names), Fraction(0))

    def degree(self) -> int:
        """Total degree; -1 for the zero polynomial."""
        return max((sum(e) for e in self.terms), default=-1)

    def monomials(self) -> list[tuple[Exponents, Fraction]]:
        """Terms in descending graded-lex order."""
        return sorted(self.terms.items(), key=lambda t: _grlex_key(t[0]), reverse=True)

    def __str__(self):
        if not self.terms:
            return "0"
        pieces = []
        for exps, q in self.monomials():
            mono = "*".join(
                n if k == 1 else f"{n}^{k}" for n, k in zip(self.names, exps) if k
            )
            if not mono:
                pieces.append(format_rational(q))
            elif q == 1:
                pieces.append(mono)
            elif q == -1:
                pieces.append(f"-{mono}")
            else:
                pieces.append(f"{format_rational(q)}*{mono}")
        return " + ".join(pieces).replace("+ -", "- ")

    def __repr__(self):
        return f"CentralPoly({str(self)!r})"


# ---------------------------------------------------------------------------
# Substitution ideals
# ---------------------------------------------------------------------------


class IdealError(ValueError):
    pass


@dataclass(frozen=True)
class IdealSpec:
    """Zero ideal (no assignments) or a triangular affine substitution.

    ``assignments`` is an ordered tuple of ``(name, poly)`` pairs sending the
    central generator ``name`` to an affine polynomial in the other generators.
    """

    assignments: tuple[tuple[str, CentralPoly], ...] = ()
    _resolved: dict = field(default=None, init=False, repr=False, compare=False)

    def __post_init__(self):
        seen = set()
        for name, poly in self.assignments:
            if name in seen:
                raise IdealError(f"central generator {name!r} assigned twice")
            seen.add(name)
            if poly.degree() > 1:
                raise IdealError(f"substitution for {name!r} is not affine: {poly}")
        object.__setattr__(self, "_resolved", self._resolve())

    @classmethod
    def zero(cls) -> "IdealSpec":
        return cls(())

    @property
    def is_zero(self) -> bool:
        return not self.assignments

    @property
    def eliminated(self) -> tuple[str, ...]:
        return tuple(n for n, _ in self.assignments)

    def survivors(self, names: Sequence[str]) -> tuple[str, ...]:
        gone = set(self.eliminated)
        return tuple(n for n in names if n not in gone)

    def is_maximal(self, names: Sequence[str]) -> bool:
        """True when every generator is eliminated to a constant, i.e. A/I is the base field."""
        return set(self.eliminated) >= set(names) and all(
            p.is_constant() for p in self._resolved.values()
        )

    def constant_values(self) -> dict[str, Fraction]:
        return {n: p.constant_term() for n, p in self._resolved.items() if p.is_constant()}

    def resolved(self) -> dict[str, CentralPoly]:
        return dict(self._resolved)

    def _resolve(self) -> dict[str, CentralPoly]:
        subs = {name: poly for name, poly in self.assignments}
        if not subs:
            return {}
        resolved: dict[str, CentralPoly] = {}
        for name in subs:
            poly = subs[name]
            for _ in range(len(subs) + 1):
                hit = [n for n in subs if _mentions(poly, n)]
                if not hit:
                    break
                poly = _substitute(poly, {n: subs[n] for n in hit})
            else:
                raise IdealError(f"substitutions are cyclic at {name!r}")
            if _mentions(poly, name):
                raise IdealError(f"substitutions are cyclic at {name!r}")
            resolved[name] = poly
        return resolved

    def __str__(self):
        if self.is_zero:
            return "0"
        return ",".join(f"{n}={p}" for n, p in self.assignments)


def _mentions(poly: CentralPoly, name: str) -> bool:
    i = poly.names.index(name)
    return any(e[i] for e in poly.terms)


def _substitute(poly: CentralPoly, subs: Mapping[str, CentralPoly]) -> CentralPoly:
    names = poly.names
    result = CentralPoly(names)
    for exps, q in poly.terms.items():
        term = CentralPoly.constant(names, q)
        kept = [0] * len(names)
        for i, (n, k) in enumerate(zip(names, exps)):
            if not k:
                continue
            if n in subs:
                term = term * (subs[n] ** k)
            else:
                kept[i] = k
        result = result + term * CentralPoly(names, {tuple(kept): 1})
    return result


def reduce_poly(p: CentralPoly, s: IdealSpec) -> CentralPoly:
    """Image of ``p`` in A/I for a substitution ideal: eliminated generators are replaced."""
    if s.is_zero:
        return p
    subs = {n: q for n, q in s.resolved().items() if n in p.names}
    for n in s.eliminated:
        if n not in p.names:
            raise IdealError(f"ideal mentions {n!r}, which is not a variable of {p.names}")
    return _substitute(p, subs)


# ---------------------------------------------------------------------------
# Sparse fraction-free elimination
# ---------------------------------------------------------------------------


@dataclass
class SparseMatrix:
    """Row-sparse rational matrix; ``rows[i]`` maps column index to a nonzero entry."""

    nrows: int
    ncols: int
    rows: dict[int, dict[int, Fraction]] = field(default_factory=dict)

    @classmethod
    def from_dense(cls, dense: Sequence[Sequence[object]]) -> "SparseMatrix":
        nrows = len(dense)
        ncols = len(dense[0]) if nrows else 0
        rows = {}
        for i, row in enumerate(dense):
            if len(row) != ncols:
                raise ValueError("ragged matrix")
            entries = {j: to_rational(x) for j, x in enumerate(row) if to_rational(x)}
            if entries:
                rows[i] = entries
        return cls(nrows, ncols, rows)

    def dense(self) -> list[list[Fraction]]:
        out = [[Fraction(0)] * self.ncols for _ in range(self.nrows)]
        for i, row in self.rows.items():
            for j, x in row.items():
                out[i][j] = x
        return out

    def apply(self, vec: Sequence[object]) -> list[Fraction]:
        out = [Fraction(0)] * self.nrows
        for i, row in self.rows.items():
            out[i] = sum((x * to_rational(vec[j]) for j, x in row.items()), Fraction(0))
        return out

    def rank(self) -> int:
        return len(echelon(self.rows.values()))

    def kernel(self) -> list[tuple[Fraction, ...]]:
        basis = nullspace(self.rows.values(), self.ncols)
        return [tuple(v.get(j, Fraction(0)) for j in range(self.ncols)) for v in basis]


def kernel(m: SparseMatrix) -> list[tuple[Fraction, ...]]:
    return m.kernel()


def _integer_row(row: Mapping[int, object]) -> dict[int, int]:
    entries = {j: to_rational(x) for j, x in row.items() if x}
    if not entries:
        return {}
    den = 1
    for q in entries.values():
        den = den * q.denominator // gcd(den, q.denominator)
    ints = {j: int(q * den) for j, q in entries.items()}
    return _primitive(ints)


def _primitive(row: dict[int, int]) -> dict[int, int]:
    g = 0
    for x in row.values():
        g = gcd(g, x)
        if g == 1:
            return row
    if g > 1:
        return {j: x // g for j, x in row.items()}
    return row


def _eliminate(row: dict[int, int], pivot_row: dict[int, int], col: int) -> dict[int, int]:
    # row <- p*row - r*pivot_row, with p, r the entries at col (divided by their gcd)
    p, r = pivot_row[col], row[col]
    g = gcd(p, r)
    p, r = p // g, r // g
    out = {j: p * x for j, x in row.items()} if p != 1 else dict(row)
    for j, x in pivot_row.items():
        v = out.get(j, 0) - r * x
        if v:
            out[j] = v
        else:
            out.pop(j, None)
    return _primitive(out)


def echelon(rows: Iterable[Mapping[int, object]], order: Sequence[int] | None = None) -> dict[int, dict[int, int]]:
    """Fraction-free row echelon form.

    Returns ``{pivot column: primitive integer row}``.  ``order`` optionally
    ranks the columns: pivots are taken at the earliest column in that order.
    """
    rank_of = None if order is None else {c: i for i, c in enumerate(order)}

    def lead(row):
        if rank_of is None:
            return min(row)
        return min(row, key=rank_of.__getitem__)

    pivots: dict[int, dict[int, int]] = {}
    for raw in rows:
        row = _integer_row(raw)
        while row:
            col = lead(row)
            piv = pivots.get(col)
            if piv is None:
                if row[col] < 0:
                    row = {j: -x for j, x in row.items()}
                pivots[col] = row
                break
            row = _eliminate(row, piv, col)
    return pivots


def reduced_echelon(pivots: dict[int, dict[int, int]], order: Sequence[int] | None = None) -> dict[int, dict[int, Fraction]]:
    """Back-substitute an echelon form so every pivot column is a unit vector."""
    rank_of = None if order is None else {c: i for i, c in enumerate(order)}
    cols = sorted(pivots, key=(lambda c: c) if rank_of is None else rank_of.__getitem__)
    rows = {c: dict(pivots[c]) for c in cols}
    for c in reversed(cols):
        prow = rows[c]
        for other in cols:
            if other == c:
                continue
            orow = rows[other]
            if c in orow:
                rows[other] = _eliminate(orow, prow, c)
    out = {}
    for c in cols:
        row = rows[c]
        lead = row[c]
        out[c] = {j: Fraction(x, lead) for j, x in row.items()}
    return out


def nullspace(rows: Iterable[Mapping[int, object]], ncols: int) -> list[dict[int, Fraction]]:
    """Exact null space basis, one vector per free column in ascending column order.

    Each basis vector has a 1 in its free column and 0 in all other free columns.
    """
    # sparse rows first: keeps fill-in low on the partition-indexed systems
    rref = reduced_echelon(echelon(sorted((r for r in rows if r), key=len)))
    free = [j for j in range(ncols) if j not in rref]
    by_free: dict[int, dict[int, Fraction]] = {f: {f: Fraction(1)} for f in free}
    for pc, row in rref.items():
        for j, x in row.items():
            if j != pc:
                by_free[j][pc] = -x
    return [by_free[f] for f in free]
