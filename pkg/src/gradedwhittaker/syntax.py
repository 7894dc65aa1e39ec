"""Text grammars for elements, characters, ideals and module vectors.

Elements are sums of products of generator tokens with optional rational
coefficients and powers::

    L-1*L-2*W3      c^2*L-1      L2*L-2 - 1/2*c + 3

Built-in generator tokens are a family letter with an integer index
(``L-2``, ``W0``); custom algebras use ``X[degree]`` (``X[-1]``, ``X[2,1]``).
Central generators are written by name.  A minus sign directly after a family
letter is part of the index, so write ``c - 1`` rather than ``c-1``.
"""

from __future__ import annotations

import re
from fractions import Fraction

from .algebra import C, GradedLieAlgebra, X
from .exactmath import CentralPoly, IdealSpec, IdealError, to_rational
from .grading import Degree, parse_degree
from .pbw import UElement, _state, normal_order_word
from .whittaker import Character, ModuleVector, WhittakerModule, make_character


class ParseError(ValueError):
    pass


_TOKEN = re.compile(
    r"\s*(?:(?P<num>\d+(?:/\d+)?)"
    r"|(?P<xgen>X\[[^\]]*\])"
    r"|(?P<gen>[A-Za-z_][A-Za-z_]*(?:-?\d+)?)"
    r"|(?P<op>[-+*^]))"
)


def _tokens(text: str):
    pos = 0
    text = text.rstrip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            raise ParseError(f"unexpected input at {text[pos:]!r}")
        pos = m.end()
        kind = m.lastgroup
        yield kind, m.group(kind)


_GEN_SPLIT = re.compile(r"^([A-Za-z_]+)(-?\d+)?$")


def resolve_token(alg: GradedLieAlgebra, tok: str):
    if tok.startswith("X["):
        return alg.resolve("X", degree=parse_degree(tok[2:-1]))
    if tok in alg.central_names:
        return C(tok, alg.central_degree(tok))
    m = _GEN_SPLIT.match(tok)
    if not m or m.group(2) is None:
        raise ParseError(f"unknown generator {tok!r}")
    try:
        return alg.resolve(m.group(1), int(m.group(2)))
    except KeyError as exc:
        raise ParseError(str(exc.args[0])) from None


def parse_element(alg: GradedLieAlgebra, text: str) -> UElement:
    """Parse a sum of products into its PBW normal form."""
    toks = list(_tokens(text))
    if not toks:
        raise ParseError("empty expression")
    st = _state(alg)
    total = UElement.zero(alg)
    i = 0
    while i < len(toks):
        sign = 1
        while i < len(toks) and toks[i][0] == "op" and toks[i][1] in "+-":
            if toks[i][1] == "-":
                sign = -sign
            i += 1
        coeff = Fraction(sign)
        word: list[Degree] = []
        exps = list(st["zero"])
        expect_factor = True
        while i < len(toks):
            kind, val = toks[i]
            if kind == "op" and val in "+-" and not expect_factor:
                break
            if kind == "op" and val == "*" and not expect_factor:
                expect_factor = True
                i += 1
                continue
            if not expect_factor:
                raise ParseError(f"expected '*', '+' or '-' before {val!r}")
            if kind == "num":
                coeff *= Fraction(val)
                i += 1
            elif kind in ("gen", "xgen"):
                gen = resolve_token(alg, val)
                i += 1
                power = 1
                if i < len(toks) and toks[i] == ("op", "^"):
                    if i + 1 >= len(toks) or toks[i + 1][0] != "num" or "/" in toks[i + 1][1]:
                        raise ParseError("'^' needs a nonnegative integer exponent")
                    power = int(toks[i + 1][1])
                    i += 2
                if isinstance(gen, C):
                    exps[alg.central_names.index(gen.name)] += power
                else:
                    word.extend([gen.degree] * power)
            else:
                raise ParseError(f"unexpected {val!r}")
            expect_factor = False
        if expect_factor:
            raise ParseError("expression ends with an operator")
        nf = normal_order_word(alg, word)
        ce = tuple(exps)
        term = UElement(alg, {(p, tuple(a + b for a, b in zip(ce, ce2))): q for (p, ce2), q in nf.items()})
        total = total + term.scale(coeff)
    return total


def parse_central_poly(alg: GradedLieAlgebra, text: str) -> CentralPoly:
    u = parse_element(alg, text)
    if any(p for p, _ in u.data):
        raise ParseError(f"{text!r} is not a polynomial in the central generators")
    return CentralPoly(alg.central_names, {ce: q for (_, ce), q in u.data.items()})


def parse_character(alg: GradedLieAlgebra, text: str, level: int | None = None) -> Character:
    """``L1=1,L2=2`` or ``X[1,0]=1,X[2,1]=3``; an empty string is the zero character."""
    values = {}
    for item in _split_assignments(text):
        name, _, val = item.partition("=")
        gen = resolve_token(alg, name.strip())
        if not isinstance(gen, X):
            raise ParseError(f"{name.strip()} is central; characters are defined on n")
        try:
            values[gen] = to_rational(val.strip())
        except ValueError as exc:
            raise ParseError(str(exc)) from None
    return make_character(alg, values, level)


def parse_ideal(alg: GradedLieAlgebra, text: str) -> IdealSpec:
    """``0`` for the zero ideal, else substitutions such as ``c=1/2`` or ``c=z,z=2``."""
    text = text.strip()
    if text in ("", "0"):
        return IdealSpec.zero()
    out = []
    for item in _split_assignments(text):
        name, _, rhs = item.partition("=")
        name = name.strip()
        if name not in alg.central_names:
            raise ParseError(f"unknown central generator {name!r}")
        out.append((name, parse_central_poly(alg, rhs)))
    try:
        return IdealSpec(tuple(out))
    except IdealError as exc:
        raise ParseError(str(exc)) from None


def parse_vector(module: WhittakerModule, text: str) -> ModuleVector:
    """A vector written as an element acting on ``w'``, e.g. ``L-2*L-1 + 3*c*L0``."""
    return module.act(parse_element(module.alg, text), module.w)


def _split_assignments(text: str) -> list[str]:
    items = [s for s in (p.strip() for p in re.split(r",(?![^\[]*\])", text)) if s]
    for s in items:
        if "=" not in s:
            raise ParseError(f"expected NAME=VALUE, got {s!r}")
    return items
