"""Multivariate polynomials with exact rational coefficients.

Terms are stored as a map from exponent tuples to nonzero Fractions over a
fixed ordered variable tuple.  The string form uses the same small grammar
the CLI accepts: rationals like ``1/2``, ``+ - *``, integer ``^`` powers and
parentheses, e.g. ``1/2*y1 - x1^2``.
"""

from __future__ import annotations

import re
from fractions import Fraction

from .errors import StructureParseError

__all__ = ["Polynomial", "parse_polynomial"]

_ZERO = Fraction(0)


class Polynomial:
    __slots__ = ("variables", "terms")

    def __init__(self, variables, terms):
        object.__setattr__(self, "variables", tuple(variables))
        clean = {}
        width = len(self.variables)
        for exps, coeff in terms.items():
            coeff = Fraction(coeff)
            if coeff == 0:
                continue
            exps = tuple(int(e) for e in exps)
            if len(exps) != width or any(e < 0 for e in exps):
                raise ValueError(f"bad exponent tuple {exps}")
            clean[exps] = coeff
        object.__setattr__(self, "terms", clean)

    def __setattr__(self, name, value):
        raise AttributeError("Polynomial is immutable")

    # -- constructors -------------------------------------------------------

    @classmethod
    def zero(cls, variables) -> "Polynomial":
        return cls(variables, {})

    @classmethod
    def constant(cls, variables, value) -> "Polynomial":
        variables = tuple(variables)
        return cls(variables, {(0,) * len(variables): Fraction(value)})

    @classmethod
    def variable(cls, variables, name: str) -> "Polynomial":
        variables = tuple(variables)
        idx = variables.index(name)
        exps = tuple(1 if i == idx else 0 for i in range(len(variables)))
        return cls(variables, {exps: Fraction(1)})

    # -- ring operations ----------------------------------------------------

    def _check(self, other: "Polynomial"):
        if self.variables != other.variables:
            raise ValueError("mixing polynomials over different variables")

    def __add__(self, other):
        if not isinstance(other, Polynomial):
            other = Polynomial.constant(self.variables, other)
        self._check(other)
        terms = dict(self.terms)
        for e, c in other.terms.items():
            terms[e] = terms.get(e, _ZERO) + c
        return Polynomial(self.variables, terms)

    __radd__ = __add__

    def __neg__(self):
        return Polynomial(self.variables, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        if not isinstance(other, Polynomial):
            other = Polynomial.constant(self.variables, other)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, Polynomial):
            c = Fraction(other)
            return Polynomial(self.variables, {e: c * v for e, v in self.terms.items()})
        self._check(other)
        terms: dict = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                terms[e] = terms.get(e, _ZERO) + c1 * c2
        return Polynomial(self.variables, terms)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative polynomial power")
        out = Polynomial.constant(self.variables, 1)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def __eq__(self, other):
        if isinstance(other, Polynomial):
            return self.variables == other.variables and self.terms == other.terms
        try:
            c = Fraction(other)
        except (TypeError, ValueError):
            return NotImplemented
        if c == 0:
            return not self.terms
        return self.terms == {(0,) * len(self.variables): c}

    def __hash__(self):
        return hash((self.variables, frozenset(self.terms.items())))

    # -- calculus and evaluation --------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def degree(self) -> int:
        if not self.terms:
            return 0
        return max(sum(e) for e in self.terms)

    def diff(self, var: int | str) -> "Polynomial":
        idx = var if isinstance(var, int) else self.variables.index(var)
        terms: dict = {}
        for e, c in self.terms.items():
            k = e[idx]
            if k == 0:
                continue
            e2 = e[:idx] + (k - 1,) + e[idx + 1:]
            terms[e2] = terms.get(e2, _ZERO) + c * k
        return Polynomial(self.variables, terms)

    def evaluate(self, point) -> Fraction:
        point = [Fraction(x) for x in point]
        if len(point) != len(self.variables):
            raise ValueError("point dimension mismatch")
        total = _ZERO
        for e, c in self.terms.items():
            v = c
            for x, k in zip(point, e):
                if k:
                    v *= x ** k
            total += v
        return total

    def substitute(self, replacements) -> "Polynomial":
        """Compose with polynomials: variable i is replaced by replacements[i]."""
        replacements = list(replacements)
        if len(replacements) != len(self.variables):
            raise ValueError("substitution arity mismatch")
        target_vars = replacements[0].variables if replacements else self.variables
        out = Polynomial.zero(target_vars)
        for e, c in self.terms.items():
            term = Polynomial.constant(target_vars, c)
            for rep, k in zip(replacements, e):
                if k:
                    term = term * rep ** k
            out = out + term
        return out

    # -- formatting ----------------------------------------------------------

    def _sorted_terms(self):
        return sorted(self.terms.items(), key=lambda item: (-sum(item[0]), tuple(-e for e in item[0])))

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for e, c in self._sorted_terms():
            factors = []
            for name, k in zip(self.variables, e):
                if k == 1:
                    factors.append(name)
                elif k > 1:
                    factors.append(f"{name}^{k}")
            mag = abs(c)
            if not factors:
                body = str(mag)
            elif mag == 1:
                body = "*".join(factors)
            else:
                body = "*".join([str(mag)] + factors)
            if not parts:
                parts.append(body if c > 0 else f"-{body}")
            else:
                parts.append(f"+ {body}" if c > 0 else f"- {body}")
        return " ".join(parts)

    __repr__ = __str__


# ---------------------------------------------------------------------------
# Parser
# ---------------------------------------------------------------------------

_TOKEN = re.compile(
    r"\s*(?:(?P<number>\d+(?:/\d+)?)|(?P<name>[A-Za-z_][A-Za-z_0-9]*)|(?P<op>[-+*^()]))"
)


def _tokenize(text: str):
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:
            stripped = text[pos:].lstrip()
            if not stripped:
                break
            raise StructureParseError(f"unexpected character {stripped[0]!r}", position=pos)
        if m.lastgroup == "number":
            tokens.append(("number", m.group("number"), m.start("number")))
        elif m.lastgroup == "name":
            tokens.append(("name", m.group("name"), m.start("name")))
        else:
            tokens.append(("op", m.group("op"), m.start("op")))
        pos = m.end()
    tokens.append(("end", "", len(text)))
    return tokens


class _Parser:
    def __init__(self, tokens, variables):
        self.tokens = tokens
        self.variables = tuple(variables)
        self.i = 0

    def peek(self):
        return self.tokens[self.i]

    def advance(self):
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def expect_op(self, op):
        kind, val, pos = self.peek()
        if kind != "op" or val != op:
            raise StructureParseError(f"expected {op!r}", position=pos)
        return self.advance()

    def parse_expr(self) -> Polynomial:
        node = self.parse_term()
        while True:
            kind, val, _ = self.peek()
            if kind == "op" and val in "+-":
                self.advance()
                rhs = self.parse_term()
                node = node + rhs if val == "+" else node - rhs
            else:
                return node

    def parse_term(self) -> Polynomial:
        node = self.parse_unary()
        while True:
            kind, val, _ = self.peek()
            if kind == "op" and val == "*":
                self.advance()
                node = node * self.parse_unary()
            else:
                return node

    def parse_unary(self) -> Polynomial:
        sign = 1
        while True:
            kind, val, _ = self.peek()
            if kind == "op" and val in "+-":
                self.advance()
                if val == "-":
                    sign = -sign
            else:
                break
        node = self.parse_power()
        return node if sign == 1 else -node

    def parse_power(self) -> Polynomial:
        node = self.parse_atom()
        kind, val, _ = self.peek()
        if kind == "op" and val == "^":
            self.advance()
            kind, val, pos = self.advance()
            if kind != "number" or "/" in val:
                raise StructureParseError("exponent must be a nonnegative integer", position=pos)
            node = node ** int(val)
        return node

    def parse_atom(self) -> Polynomial:
        kind, val, pos = self.advance()
        if kind == "number":
            return Polynomial.constant(self.variables, Fraction(val))
        if kind == "name":
            if val not in self.variables:
                raise StructureParseError(f"unknown variable {val!r}", position=pos)
            return Polynomial.variable(self.variables, val)
        if kind == "op" and val == "(":
            node = self.parse_expr()
            self.expect_op(")")
            return node
        raise StructureParseError(f"unexpected token {val!r}", position=pos)


def parse_polynomial(text: str, variables) -> Polynomial:
    """Parse an expression over the named variables; exact rationals only."""
    parser = _Parser(_tokenize(text), variables)
    node = parser.parse_expr()
    kind, val, pos = parser.peek()
    if kind != "end":
        raise StructureParseError(f"trailing input {val!r}", position=pos)
    return node
