"""PBW normal form in U(g) over the polynomial ring of central generators.

A PBW monomial is ``c^e * x_lam`` where ``lam`` is a nondecreasing tuple of
generator degrees (a :class:`Partition`) and ``e`` an exponent vector over the
algebra's central generators.  Elements are stored flat, as a dict from
``(parts, exponents)`` to a nonzero Fraction.

Normal ordering uses the recursion

    x_a x_b x_rest = x_b (x_a x_rest) + [x_a, x_b] x_rest      (a > b)

memoized per algebra on ``(a, rest)``.
"""

from __future__ import annotations

import itertools
from fractions import Fraction
from typing import Callable, Iterable, Mapping, Sequence

from .algebra import C, GeneratorId, GradedLieAlgebra, LieElement, WindowExceeded, X
from .exactmath import CentralPoly, format_rational, to_rational
from .grading import Degree, format_degree

Parts = tuple[Degree, ...]
Exps = tuple[int, ...]
Flat = dict[tuple[Parts, Exps], Fraction]

_ONE = Fraction(1)


class Partition(tuple):
    """Nondecreasing sequence of degrees; the empty partition is the identity monomial."""

    __slots__ = ()

    def __new__(cls, parts: Iterable = ()):
        return super().__new__(cls, sorted(Degree(p) for p in parts))

    @property
    def length(self) -> int:
        return len(self)

    def multiplicity(self, d) -> int:
        return self.count(Degree(d))

    def size(self, rank: int) -> Degree:
        """``|lam|``, the sum of the parts."""
        total = Degree.zero(rank)
        for p in self:
            total = total + p
        return total

    def prefix(self, i: int) -> "Partition":
        """``lam{i}``: the first ``i`` parts."""
        return Partition(self[:i])

    def suffix(self, j: int) -> "Partition":
        """``lam[j]``: the parts after the first ``j``."""
        return Partition(self[j:])

    def delete(self, i: int) -> "Partition":
        """``lam<i>``: drop the ``i``-th part (1-indexed)."""
        if not 1 <= i <= len(self):
            raise IndexError(f"part index {i} out of range for length {len(self)}")
        return Partition(self[: i - 1] + self[i:])

    def __repr__(self):
        return "Partition(" + ", ".join(format_degree(p) for p in self) + ")"


# ---------------------------------------------------------------------------
# the rewriting core (flat dictionaries, memoized per algebra)
# ---------------------------------------------------------------------------


def _state(alg: GradedLieAlgebra) -> dict:
    st = getattr(alg, "_pbw_state", None)
    if st is None:
        k = len(alg.central_names)
        st = {
            "zero": (0,) * k,
            "unit": {n: tuple(1 if m == n else 0 for m in alg.central_names) for n in alg.central_names},
            "lmul": {},
            "mono": {},
        }
        alg._pbw_state = st
    return st


def _add_exps(a: Exps, b: Exps) -> Exps:
    if not any(b):
        return a
    if not any(a):
        return b
    return tuple(x + y for x, y in zip(a, b))


def _accumulate(out: Flat, key, q: Fraction):
    v = out.get(key)
    if v is None:
        out[key] = q
    else:
        v = v + q
        if v:
            out[key] = v
        else:
            del out[key]


def lmul(alg: GradedLieAlgebra, a: Degree, mu: Parts) -> Flat:
    """Normal form of ``x_a * x_mu`` for a generator degree ``a`` and sorted ``mu``.

    The returned dict is shared with the memo table; do not mutate it.
    """
    st = _state(alg)
    cache = st["lmul"]
    key = (a, mu)
    hit = cache.get(key)
    if hit is not None:
        return hit
    zero = st["zero"]
    if not mu or a <= mu[0]:
        res = {((a,) + mu, zero): _ONE}
    else:
        b, rest = mu[0], mu[1:]
        res: Flat = {}
        for (p, ce), q in lmul(alg, a, rest).items():
            for (p2, ce2), q2 in lmul(alg, b, p).items():
                _accumulate(res, (p2, _add_exps(ce, ce2)), q * q2)
        br = alg.bracket_x(a, b)
        for d, q in br.x_terms.items():
            for k2, q2 in lmul(alg, d, rest).items():
                _accumulate(res, k2, q * q2)
        for name, q in br.central_terms.items():
            _accumulate(res, (rest, st["unit"][name]), q)
    cache[key] = res
    return res


def monomial_product(alg: GradedLieAlgebra, lam: Parts, mu: Parts) -> Flat:
    """Normal form of ``x_lam * x_mu`` for sorted ``lam`` and ``mu``."""
    st = _state(alg)
    cache = st["mono"]
    key = (lam, mu)
    hit = cache.get(key)
    if hit is not None:
        return hit
    if not lam:
        res = {(mu, st["zero"]): _ONE}
    elif len(lam) == 1:
        res = lmul(alg, lam[0], mu)
    else:
        res = {}
        for (p, ce), q in monomial_product(alg, lam[1:], mu).items():
            for (p2, ce2), q2 in lmul(alg, lam[0], p).items():
                _accumulate(res, (p2, _add_exps(ce, ce2)), q * q2)
    cache[key] = res
    return res


def normal_order_word(alg: GradedLieAlgebra, word: Sequence[Degree]) -> Flat:
    """Normal form of an arbitrary (unsorted) product of generators."""
    st = _state(alg)
    acc: Flat = {((), st["zero"]): _ONE}
    for a in reversed(word):
        nxt: Flat = {}
        for (p, ce), q in acc.items():
            for (p2, ce2), q2 in lmul(alg, Degree(a), p).items():
                _accumulate(nxt, (p2, _add_exps(ce, ce2)), q * q2)
        acc = nxt
    return acc


# ---------------------------------------------------------------------------
# UElement
# ---------------------------------------------------------------------------


class UElement:
    """An element of U(g), as an S(Z)-combination of PBW monomials ``x_lam``."""

    __slots__ = ("alg", "data")

    def __init__(self, alg: GradedLieAlgebra, data: Mapping | None = None):
        self.alg = alg
        clean: Flat = {}
        for (parts, ce), q in (data or {}).items():
            q = to_rational(q)
            if q:
                _accumulate(clean, (tuple(parts), tuple(ce)), q)
        self.data = clean

    @classmethod
    def _wrap(cls, alg, data: Flat) -> "UElement":
        obj = cls.__new__(cls)
        obj.alg = alg
        obj.data = data
        return obj

    # -- constructors -------------------------------------------------------

    @classmethod
    def zero(cls, alg) -> "UElement":
        return cls._wrap(alg, {})

    @classmethod
    def one(cls, alg, coeff=1) -> "UElement":
        return cls.monomial(alg, (), coeff)

    @classmethod
    def monomial(cls, alg, parts: Iterable = (), coeff=1, exps: Exps | None = None) -> "UElement":
        """``coeff * c^exps * x_parts``; ``parts`` is sorted first."""
        ce = _state(alg)["zero"] if exps is None else tuple(exps)
        return cls(alg, {(tuple(Partition(parts)), ce): coeff})

    @classmethod
    def generator(cls, alg, gen: GeneratorId, coeff=1) -> "UElement":
        if isinstance(gen, C):
            return cls(alg, {((), _state(alg)["unit"][gen.name]): coeff})
        alg.check_window(gen.degree)
        return cls(alg, {((gen.degree,), _state(alg)["zero"]): coeff})

    @classmethod
    def from_lie(cls, alg, e: LieElement) -> "UElement":
        st = _state(alg)
        data: Flat = {}
        for d, q in e.x_terms.items():
            _accumulate(data, ((d,), st["zero"]), q)
        for n, q in e.central_terms.items():
            _accumulate(data, ((), st["unit"][n]), q)
        return cls._wrap(alg, data)

    @classmethod
    def from_terms(cls, alg, terms: Mapping[Sequence, CentralPoly]) -> "UElement":
        data: Flat = {}
        for parts, poly in terms.items():
            if poly.names != alg.central_names:
                raise ValueError("coefficient variables differ from the algebra's centrals")
            key = tuple(Partition(parts))
            for ce, q in poly.terms.items():
                _accumulate(data, (key, ce), q)
        return cls._wrap(alg, data)

    @classmethod
    def word(cls, alg, word: Sequence[Degree]) -> "UElement":
        return cls._wrap(alg, dict(normal_order_word(alg, word)))

    # -- views --------------------------------------------------------------

    @property
    def terms(self) -> dict[Partition, CentralPoly]:
        grouped: dict[Parts, dict] = {}
        for (parts, ce), q in self.data.items():
            grouped.setdefault(parts, {})[ce] = q
        names = self.alg.central_names
        return {Partition(p): CentralPoly(names, t) for p, t in sorted(grouped.items())}

    def is_zero(self) -> bool:
        return not self.data

    def __bool__(self):
        return bool(self.data)

    def height(self) -> int:
        """Maximum number of x-factors over the support; -1 for zero."""
        return max((len(p) for p, _ in self.data), default=-1)

    def term_degree(self, parts: Parts, ce: Exps) -> Degree:
        return term_degree(self.alg, parts, ce)

    def components(self) -> dict[Degree, "UElement"]:
        """Homogeneous components keyed by Q-degree."""
        out: dict[Degree, Flat] = {}
        for (parts, ce), q in self.data.items():
            out.setdefault(term_degree(self.alg, parts, ce), {})[(parts, ce)] = q
        return {d: UElement._wrap(self.alg, v) for d, v in sorted(out.items())}

    def mindeg(self) -> Degree:
        if not self.data:
            raise ValueError("mindeg of the zero element is undefined")
        return min(term_degree(self.alg, p, ce) for p, ce in self.data)

    # -- arithmetic ---------------------------------------------------------

    def _same(self, other: "UElement"):
        if other.alg is not self.alg:
            raise ValueError("elements belong to different algebras")

    def __add__(self, other: "UElement") -> "UElement":
        self._same(other)
        out = dict(self.data)
        for k, q in other.data.items():
            _accumulate(out, k, q)
        return UElement._wrap(self.alg, out)

    def __neg__(self):
        return UElement._wrap(self.alg, {k: -q for k, q in self.data.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, q) -> "UElement":
        q = to_rational(q)
        if not q:
            return UElement.zero(self.alg)
        return UElement._wrap(self.alg, {k: q * v for k, v in self.data.items()})

    def scale_poly(self, p: CentralPoly) -> "UElement":
        out: Flat = {}
        for (parts, ce), q in self.data.items():
            for ce2, q2 in p.terms.items():
                _accumulate(out, (parts, _add_exps(ce, ce2)), q * q2)
        return UElement._wrap(self.alg, out)

    def __mul__(self, other):
        if isinstance(other, UElement):
            return multiply(self.alg, self, other)
        if isinstance(other, CentralPoly):
            return self.scale_poly(other)
        return self.scale(other)

    def __rmul__(self, other):
        if isinstance(other, CentralPoly):
            return self.scale_poly(other)
        return self.scale(other)

    def __eq__(self, other):
        if not isinstance(other, UElement):
            return NotImplemented
        return self.alg is other.alg and self.data == other.data

    def __hash__(self):
        return hash(frozenset(self.data.items()))

    # -- rendering ----------------------------------------------------------

    def render_lines(self) -> list[str]:
        lines = []
        for part, poly in self.terms.items():
            mono = render_monomial(self.alg, part)
            lines.append(f"({poly}) * {mono}" if len(poly.terms) > 1 else _term(poly, mono))
        return lines

    def records(self) -> list[dict]:
        return [
            {"partition": [list(d) for d in part], "central_poly": str(poly)}
            for part, poly in self.terms.items()
        ]

    def __str__(self):
        return join_signed(self.render_lines())

    def __repr__(self):
        return f"UElement({self})"


def _term(poly: CentralPoly, mono: str) -> str:
    (ce, q), = poly.terms.items()
    cpart = CentralPoly(poly.names, {ce: 1})
    coeff = format_rational(q)
    if any(ce):
        coeff = f"{coeff}*{cpart}" if q != 1 else str(cpart)
    return f"{coeff} * {mono}"


def join_signed(lines: Sequence[str]) -> str:
    if not lines:
        return "0"
    return " + ".join(lines).replace("+ -", "- ")


def render_monomial(alg: GradedLieAlgebra, parts: Sequence[Degree]) -> str:
    if not parts:
        return "1"
    return "*".join(alg.name_of(X(d)) for d in parts)


def term_degree(alg: GradedLieAlgebra, parts: Parts, ce: Exps) -> Degree:
    total = [0] * alg.rank
    for p in parts:
        for i, x in enumerate(p):
            total[i] += x
    for k, (_, d) in zip(ce, alg.centrals):
        if k:
            for i, x in enumerate(d):
                total[i] += k * x
    return Degree(total)


def term_level(alg: GradedLieAlgebra, parts: Parts) -> int:
    return sum(alg.pi(p) for p in parts)


# ---------------------------------------------------------------------------
# operations
# ---------------------------------------------------------------------------


def multiply(alg: GradedLieAlgebra, u: UElement, v: UElement) -> UElement:
    """Product in PBW normal form."""
    out: Flat = {}
    for (lam, ce1), q1 in u.data.items():
        for (mu, ce2), q2 in v.data.items():
            ce = _add_exps(ce1, ce2)
            q = q1 * q2
            for (p, ce3), q3 in monomial_product(alg, lam, mu).items():
                _accumulate(out, (p, _add_exps(ce, ce3)), q * q3)
    return UElement._wrap(alg, out)


def power(alg: GradedLieAlgebra, d: Degree, k: int) -> UElement:
    """``x_d^k`` (already a normal-ordered monomial)."""
    return UElement.monomial(alg, (d,) * k)


def commutator_monomial(alg: GradedLieAlgebra, sigma: Degree, lam: Sequence[Degree]) -> UElement:
    """``[x_sigma, x_lam]`` via the sum over i of ``x_{lam{i-1}} [x_sigma, x_{lam_i}] x_{lam[i]}``."""
    lam = Partition(lam)
    alg.check_window(sigma)
    total = UElement.zero(alg)
    for i in range(1, len(lam) + 1):
        br = UElement.from_lie(alg, alg.bracket_x(sigma, lam[i - 1]))
        if br.is_zero():
            continue
        head = UElement.monomial(alg, lam.prefix(i - 1))
        tail = UElement.monomial(alg, lam.suffix(i))
        total = total + multiply(alg, head, multiply(alg, br, tail))
    return total


def split_parts(alg: GradedLieAlgebra, parts: Parts) -> tuple[Parts, Parts]:
    """Split a sorted monomial into its b_minus prefix and its n suffix."""
    for i, p in enumerate(parts):
        if alg.pi(p) > 0:
            return parts[:i], parts[i:]
    return parts, ()


def phi_component(alg: GradedLieAlgebra, u: UElement, phi: Callable[[Degree], Fraction]) -> UElement:
    """Component of ``u`` in U(b_minus) along U(g) = U(b_minus) + U(g)U_phi(n).

    Each monomial ``f x_lam'' x_lam'`` (b_minus part, then n part) maps to
    ``f phi(x_lam') x_lam''`` with ``phi`` extended multiplicatively.
    """
    out: Flat = {}
    for (parts, ce), q in u.data.items():
        low, high = split_parts(alg, parts)
        val = q
        for p in high:
            val = val * phi(p)
            if not val:
                break
        if val:
            _accumulate(out, (low, ce), val)
    return UElement._wrap(alg, out)


def _basis_order(alg: GradedLieAlgebra, parts: Parts):
    return (-term_level(alg, parts), parts)


def enumerate_basis(alg: GradedLieAlgebra, sector: str, depth: int, height: int) -> list[Partition]:
    """PBW partitions of the b_minus sector (level >= -depth) or full sector (|level| <= depth).

    At most ``height`` parts.  Ordered by descending level, then lex on parts.
    """
    if depth < 0 or height < 0:
        raise ValueError("depth and height must be nonnegative")
    if depth > alg.level:
        raise WindowExceeded(Degree([-depth] + [0] * (alg.rank - 1)), alg.level)
    if sector == "b_minus":
        avail = alg.b_minus_degrees(depth)
        levels = [alg.pi(d) for d in avail]
        found: list[Parts] = []

        def rec(start: int, room: int, level: int, prefix: Parts):
            found.append(prefix)
            if not room:
                return
            for j in range(start, len(avail)):
                lv = level + levels[j]
                if lv >= -depth:
                    rec(j, room - 1, lv, prefix + (avail[j],))

        rec(0, height, 0, ())
    elif sector == "full":
        avail = [d for d in alg.x_degrees if abs(alg.pi(d)) <= depth]
        found = [
            combo
            for r in range(height + 1)
            for combo in itertools.combinations_with_replacement(avail, r)
            if abs(sum(alg.pi(p) for p in combo)) <= depth
        ]
    else:
        raise ValueError(f"unknown sector {sector!r}; use 'b_minus' or 'full'")
    found.sort(key=lambda p: _basis_order(alg, p))
    return [Partition(p) for p in found]
