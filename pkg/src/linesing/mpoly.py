"""Sparse multivariate polynomials over the rationals, in up to three
named variables, plus the shared text grammar.

Terms map exponent tuples to nonzero Fraction coefficients.  Graded-lex
ordering fixes a canonical printing order.  The text grammar accepted by
``parse_polynomial`` is sums of '*'-separated factors, each a rational
literal or a variable with an optional positive integer '^' exponent;
implicit multiplication is not allowed and whitespace is insignificant.
"""

from __future__ import annotations

import re
from fractions import Fraction

from .errors import InputError, ParseError


class InfiniteOrderError(InputError):
    """Vanishing order requested for the zero polynomial."""


def _grlex_key(exps):
    return (sum(exps), exps)


class MPoly:
    __slots__ = ("vars", "terms")

    def __init__(self, vars, terms=None):
        vars = tuple(vars)
        if not 1 <= len(vars) <= 3:
            raise InputError("between one and three variables required")
        if len(set(vars)) != len(vars):
            raise InputError("duplicate variable names")
        self.vars = vars
        clean = {}
        for exps, c in (terms or {}).items():
            c = Fraction(c)
            if c:
                clean[tuple(exps)] = c
        self.terms = clean

    # -- constructors ---------------------------------------------------

    @classmethod
    def zero(cls, vars):
        return cls(vars, {})

    @classmethod
    def constant(cls, vars, c):
        return cls(vars, {(0,) * len(tuple(vars)): Fraction(c)})

    @classmethod
    def variable(cls, vars, name):
        vars = tuple(vars)
        if name not in vars:
            raise InputError(f"unknown variable {name!r}")
        exps = tuple(1 if v == name else 0 for v in vars)
        return cls(vars, {exps: Fraction(1)})

    # -- basic structure --------------------------------------------------

    def is_zero(self):
        return not self.terms

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = MPoly.constant(self.vars, other)
        return (isinstance(other, MPoly) and self.vars == other.vars
                and self.terms == other.terms)

    def __hash__(self):
        return hash((self.vars, frozenset(self.terms.items())))

    def degree(self):
        """Total degree; -1 for the zero polynomial."""
        return max((sum(e) for e in self.terms), default=-1)

    def degree_in(self, name):
        i = self._index(name)
        return max((e[i] for e in self.terms), default=-1)

    def order(self):
        """Smallest total degree of a term; -1 for zero."""
        return min((sum(e) for e in self.terms), default=-1)

    def used_vars(self):
        used = set()
        for e in self.terms:
            for i, k in enumerate(e):
                if k:
                    used.add(self.vars[i])
        return used

    def constant_term(self):
        return self.terms.get((0,) * len(self.vars), Fraction(0))

    def _index(self, name):
        try:
            return self.vars.index(name)
        except ValueError:
            raise InputError(f"unknown variable {name!r}") from None

    def _check_compatible(self, other):
        if self.vars != other.vars:
            raise InputError(
                f"variable contexts differ: {self.vars} vs {other.vars}")

    # -- ring operations ------------------------------------------------------

    def __add__(self, other):
        if isinstance(other, (int, Fraction)):
            other = MPoly.constant(self.vars, other)
        self._check_compatible(other)
        out = dict(self.terms)
        for e, c in other.terms.items():
            s = out.get(e, Fraction(0)) + c
            if s:
                out[e] = s
            else:
                out.pop(e, None)
        return MPoly(self.vars, out)

    def __radd__(self, other):
        return self + other

    def __neg__(self):
        return MPoly(self.vars, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        if isinstance(other, (int, Fraction)):
            other = MPoly.constant(self.vars, other)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            c = Fraction(other)
            return MPoly(self.vars,
                         {e: c * v for e, v in self.terms.items()})
        self._check_compatible(other)
        out = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                s = out.get(e, Fraction(0)) + c1 * c2
                if s:
                    out[e] = s
                else:
                    out.pop(e, None)
        return MPoly(self.vars, out)

    def __rmul__(self, other):
        return self * other

    def __pow__(self, k):
        if not isinstance(k, int) or k < 0:
            raise InputError("exponent must be a nonnegative integer")
        result = MPoly.constant(self.vars, 1)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    # -- calculus and substitution ----------------------------------------------

    def partial_derivative(self, name):
        i = self._index(name)
        out = {}
        for e, c in self.terms.items():
            if e[i] == 0:
                continue
            ne = list(e)
            ne[i] -= 1
            out[tuple(ne)] = c * e[i]
        return MPoly(self.vars, out)

    def substitute(self, assignments):
        """Substitute polynomials (or constants) for variables.

        Unassigned variables map to themselves; all substituted values
        live in the same variable context.
        """
        values = {}
        for name, val in assignments.items():
            self._index(name)
            if isinstance(val, (int, Fraction, str)):
                val = MPoly.constant(self.vars, Fraction(val))
            else:
                self._check_compatible(val)
            values[name] = val
        for v in self.vars:
            values.setdefault(v, MPoly.variable(self.vars, v))
        power_cache = {v: {0: MPoly.constant(self.vars, 1)}
                       for v in self.vars}

        def power(v, k):
            cache = power_cache[v]
            if k not in cache:
                cache[k] = power(v, k - 1) * values[v]
            return cache[k]

        total = MPoly.zero(self.vars)
        for e, c in self.terms.items():
            term = MPoly.constant(self.vars, c)
            for i, k in enumerate(e):
                if k:
                    term = term * power(self.vars[i], k)
            total = total + term
        return total

    def coefficient_in(self, name, k):
        """Coefficient of name**k, as a polynomial free of name."""
        i = self._index(name)
        out = {}
        for e, c in self.terms.items():
            if e[i] == k:
                ne = list(e)
                ne[i] = 0
                out[tuple(ne)] = c
        return MPoly(self.vars, out)

    def truncate(self, max_total_degree):
        return MPoly(self.vars, {e: c for e, c in self.terms.items()
                                 if sum(e) <= max_total_degree})

    def vanishing_order(self, name=None):
        """Order at 0 of an (effectively) univariate polynomial."""
        if self.is_zero():
            raise InfiniteOrderError(
                "the zero polynomial vanishes to infinite order")
        used = self.used_vars()
        if len(used) > 1:
            raise InputError(
                f"polynomial is not univariate; it uses {sorted(used)}")
        if name is None:
            name = next(iter(used)) if used else self.vars[0]
        i = self._index(name)
        return min(e[i] for e in self.terms)

    # -- printing ------------------------------------------------------------------

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for e in sorted(self.terms, key=_grlex_key, reverse=True):
            c = self.terms[e]
            factors = []
            for name, k in zip(self.vars, e):
                if k == 1:
                    factors.append(name)
                elif k > 1:
                    factors.append(f"{name}^{k}")
            if not factors or abs(c) != 1:
                factors.insert(0, str(abs(c)))
            body = "*".join(factors)
            parts.append(("- " if c < 0 else "+ ") + body)
        head = parts[0]
        head = "-" + head[2:] if head.startswith("- ") else head[2:]
        return " ".join([head] + parts[1:])

    def __repr__(self):
        return f"MPoly({self})"


_TOKEN = re.compile(r"\s*(?:(?P<num>\d+(?:/\d+)?)|(?P<name>[A-Za-z_]\w*)"
                    r"|(?P<op>[-+*^]))")


def _tokenize(text):
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None or m.end() == m.start():
            stripped = text[pos:].lstrip()
            at = len(text) - len(stripped)
            if not stripped:
                break
            raise ParseError(f"unexpected character {stripped[0]!r}", at)
        if m.lastgroup == "num":
            kind = "num"
        elif m.lastgroup == "name":
            kind = "name"
        else:
            kind = m.group("op")
        tokens.append((kind, m.group(m.lastgroup),
                       m.start(m.lastgroup)))
        pos = m.end()
    return tokens


def parse_polynomial(text: str, vars=("t", "x", "y")) -> MPoly:
    """Parse the shared polynomial grammar; positions in errors are byte
    offsets into the input."""
    vars = tuple(vars)
    tokens = _tokenize(text)
    if not tokens:
        raise ParseError("empty polynomial", 0)
    pos = 0

    def peek():
        return tokens[pos] if pos < len(tokens) else (None, None, len(text))

    def take():
        nonlocal pos
        tok = peek()
        pos += 1
        return tok

    def parse_factor():
        kind, value, at = take()
        if kind == "num":
            if "/" in value and value.endswith("/0"):
                raise ParseError("zero denominator", at)
            base = MPoly.constant(vars, Fraction(value))
        elif kind == "name":
            if value not in vars:
                raise ParseError(f"unknown variable {value!r}", at)
            base = MPoly.variable(vars, value)
        else:
            raise ParseError("expected a number or variable", at)
        if peek()[0] == "^":
            take()
            ekind, evalue, eat = take()
            if ekind != "num" or "/" in evalue:
                raise ParseError("exponent must be a positive integer", eat)
            exp = int(evalue)
            if exp <= 0:
                raise ParseError("exponent must be a positive integer", eat)
            base = base ** exp
        return base

    def parse_term():
        out = parse_factor()
        while peek()[0] == "*":
            take()
            out = out * parse_factor()
        return out

    sign = 1
    kind, _, _ = peek()
    if kind in ("+", "-"):
        take()
        sign = -1 if kind == "-" else 1
    total = parse_term() * sign
    while pos < len(tokens):
        kind, _, at = take()
        if kind == "+":
            total = total + parse_term()
        elif kind == "-":
            total = total - parse_term()
        else:
            raise ParseError("expected '+' or '-' between terms", at)
    return total


def series_inverse(p: MPoly, max_total_degree: int) -> MPoly:
    """Multiplicative inverse of p as a power series, truncated."""
    c0 = p.constant_term()
    if not c0:
        raise InputError("series inverse needs a unit (nonzero constant "
                         "term)")
    w = (MPoly.constant(p.vars, 1) - p * (1 / c0)).truncate(
        max_total_degree)
    out = MPoly.constant(p.vars, 1)
    power = MPoly.constant(p.vars, 1)
    for _ in range(max_total_degree):
        power = (power * w).truncate(max_total_degree)
        if power.is_zero():
            break
        out = out + power
    return (out * (1 / c0)).truncate(max_total_degree)
