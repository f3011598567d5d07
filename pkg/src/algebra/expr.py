"""
Polynomial expressions in x and y: tokenizer, recursive-descent parser, and the
linear-like split p(x, y) = r(x) + s(x)*y.
"""

import re
from dataclasses import dataclass
from fractions import Fraction

from src.algebra.polynomial import UniPoly
from src.utils.errors import DegreeLimitError, ExpressionSyntaxError, NonPolynomialError, NotLinearInYError

# Highest total degree a parsed expression may reach
MAX_DEGREE = 400


class BivarPoly:
    """Sparse polynomial in x, y: {(i, j): coefficient} with no zero coefficients"""

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        self.terms = {key: Fraction(c) for key, c in (terms or {}).items() if c != 0}

    @classmethod
    def constant(cls, value):
        return cls({(0, 0): value})

    @classmethod
    def variable(cls, name):
        return cls({(1, 0) if name == "x" else (0, 1): 1})

    @property
    def is_constant(self):
        return all(key == (0, 0) for key in self.terms)

    @property
    def constant_value(self):
        return self.terms.get((0, 0), Fraction(0))

    def __eq__(self, other):
        if not isinstance(other, BivarPoly):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __repr__(self):
        return f"BivarPoly({self.format()!r})"

    def __add__(self, other):
        merged = dict(self.terms)
        for key, coeff in other.terms.items():
            merged[key] = merged.get(key, Fraction(0)) + coeff
        return BivarPoly(merged)

    def __neg__(self):
        return BivarPoly({key: -c for key, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        product = {}
        for (i1, j1), a in self.terms.items():
            for (i2, j2), b in other.terms.items():
                key = (i1 + i2, j1 + j2)
                product[key] = product.get(key, Fraction(0)) + a * b
        return BivarPoly(product)

    @property
    def degree(self):
        return max((i + j for i, j in self.terms), default=-1)

    def __pow__(self, exponent):
        result = BivarPoly.constant(1)
        square = self
        while exponent:
            if exponent & 1:
                result = result * square
            exponent >>= 1
            if exponent:
                square = square * square
        return result

    def scale(self, factor):
        return BivarPoly({key: c * factor for key, c in self.terms.items()})

    def format(self):
        """Canonical text: y-degree ascending, x-degree descending, '*' explicit"""
        if not self.terms:
            return "0"
        parts = []
        for i, j in sorted(self.terms, key=lambda key: (key[1], -key[0])):
            coeff = self.terms[(i, j)]
            factors = []
            if i:
                factors.append("x" if i == 1 else f"x^{i}")
            if j:
                factors.append("y" if j == 1 else f"y^{j}")
            monomial = "*".join(factors)
            magnitude = abs(coeff)
            if not monomial:
                body = str(magnitude)
            elif magnitude == 1:
                body = monomial
            else:
                body = f"{magnitude}*{monomial}"
            if not parts:
                # "-x^2" reads as (-x)^2, so a bare leading power keeps its unit coefficient
                if coeff < 0 and body.startswith(("x^", "y^")):
                    body = f"1*{body}"
                parts.append(body if coeff > 0 else f"-{body}")
            else:
                parts.append(f"+ {body}" if coeff > 0 else f"- {body}")
        return " ".join(parts)


@dataclass(frozen=True)
class LinearLikeMap:
    """p(x, y) = r(x) + s(x)*y"""

    r: UniPoly
    s: UniPoly

    def __str__(self):
        return format_map(self)

    def to_bivar(self):
        terms = {(i, 0): c for i, c in enumerate(self.r.coeffs)}
        terms.update({(i, 1): c for i, c in enumerate(self.s.coeffs)})
        return BivarPoly(terms)

    def __call__(self, x, y):
        return self.r(x) + self.s(x) * y

    def hflip(self):
        """p(-x, y)"""
        return LinearLikeMap(self.r.reflect(), self.s.reflect())

    def vflip(self):
        """p(x, -y)"""
        return LinearLikeMap(self.r, -self.s)

    def rotate(self):
        """p(-x, -y)"""
        return LinearLikeMap(self.r.reflect(), -self.s.reflect())

    def negate(self):
        return LinearLikeMap(-self.r, -self.s)

    def compose_level(self, alpha, beta):
        """alpha*p + beta"""
        return LinearLikeMap(self.r * alpha + beta, self.s * alpha)

    def shift_rescale(self, offset, factor):
        """r(x - offset) + factor*s(x - offset)*y"""
        return LinearLikeMap(self.r.shift(offset), self.s.shift(offset) * factor)

    def transformed(self, name):
        return {
            "identity": lambda: self,
            "hflip": self.hflip,
            "vflip": self.vflip,
            "rotation": self.rotate,
        }[name]()


_TOKEN = re.compile(r"(?P<number>\d+(?:\.\d+)?|\.\d+)|(?P<name>[A-Za-z_]\w*)|(?P<op>[-+*/^()−])")


def _tokenize(text):
    tokens = []
    position = 0
    while position < len(text):
        if text[position].isspace():
            position += 1
            continue
        match = _TOKEN.match(text, position)
        if match is None:
            raise ExpressionSyntaxError(
                f"unexpected character {text[position]!r}", position, "number, x, y, operator or parenthesis"
            )
        kind = match.lastgroup
        value = match.group(kind)
        if value == "−":
            value = "-"
        tokens.append((kind, value, position))
        position = match.end()
    tokens.append(("end", "", len(text)))
    return tokens


class _Parser:
    def __init__(self, text):
        self.tokens = _tokenize(text)
        self.index = 0

    def peek(self):
        return self.tokens[self.index]

    def advance(self):
        token = self.tokens[self.index]
        self.index += 1
        return token

    def fail(self, expected):
        kind, value, position = self.peek()
        found = "end of input" if kind == "end" else repr(value)
        raise ExpressionSyntaxError(f"expected {expected}, found {found}", position, expected)

    def parse(self):
        poly = self.expr()
        if self.peek()[0] != "end":
            self.fail("operator or end of input")
        return poly

    def expr(self):
        result = self.term()
        while self.peek()[1] in ("+", "-") and self.peek()[0] == "op":
            operator = self.advance()[1]
            rhs = self.term()
            result = result + rhs if operator == "+" else result - rhs
        return result

    def term(self):
        result = self.factor()
        while self.peek()[0] == "op" and self.peek()[1] in ("*", "/"):
            operator = self.advance()[1]
            rhs = self.factor()
            if operator == "*":
                if result.degree + rhs.degree > MAX_DEGREE:
                    raise DegreeLimitError(f"product exceeds degree {MAX_DEGREE}")
                result = result * rhs
                continue
            if not rhs.is_constant:
                raise NonPolynomialError("division by a non-constant expression")
            if rhs.constant_value == 0:
                raise NonPolynomialError("division by zero")
            result = result.scale(1 / rhs.constant_value)
        return result

    def factor(self):
        base = self.base()
        if self.peek()[0] != "op" or self.peek()[1] != "^":
            return base
        self.advance()
        kind, value, position = self.peek()
        if kind != "number" or not value.isdigit():
            found = "end of input" if kind == "end" else repr(value)
            raise NonPolynomialError(
                f"exponent must be a nonnegative integer literal, found {found}", position=position
            )
        self.advance()
        power = int(value)
        if power > MAX_DEGREE or max(base.degree, 0) * power > MAX_DEGREE:
            raise DegreeLimitError(f"power {power} exceeds degree {MAX_DEGREE}", position=position)
        return base**power

    def base(self):
        kind, value, position = self.peek()
        if kind == "op" and value == "-":
            self.advance()
            return -self.base()
        if kind == "number":
            self.advance()
            number = Fraction(value)
            if self.peek()[1] == "/" and self.tokens[self.index + 1][0] == "number":
                # rational literal a/b binds tighter than '^'
                self.advance()
                denominator = Fraction(self.advance()[1])
                if denominator == 0:
                    raise NonPolynomialError("division by zero", position=position)
                number /= denominator
            return BivarPoly.constant(number)
        if kind == "name":
            if value not in ("x", "y"):
                self.fail("x, y, number or '('")
            self.advance()
            return BivarPoly.variable(value)
        if kind == "op" and value == "(":
            self.advance()
            inner = self.expr()
            if self.peek()[1] != ")" or self.peek()[0] != "op":
                self.fail("')'")
            self.advance()
            return inner
        self.fail("x, y, number or '('")


def parse(text):
    """Fully expanded polynomial of an expression in x and y"""
    return _Parser(text).parse()


def to_linear_like(poly):
    if any(j >= 2 for _, j in poly.terms):
        raise NotLinearInYError("expression has a term of degree >= 2 in y")
    degree = max((i for i, _ in poly.terms), default=-1)
    r = UniPoly(poly.terms.get((i, 0), 0) for i in range(degree + 1))
    s = UniPoly(poly.terms.get((i, 1), 0) for i in range(degree + 1))
    return LinearLikeMap(r, s)


def parse_map(text):
    return to_linear_like(parse(text))


def format_map(linear_map):
    return linear_map.to_bivar().format()
