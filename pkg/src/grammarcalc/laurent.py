"""Exact multivariate Laurent polynomials over the rationals.

Every value is immutable. A polynomial is a mapping from :class:`Monomial`
to a nonzero :class:`~fractions.Fraction`; the zero polynomial has no terms.

The text format is ``-1/2*x^-1*y^2 + 3*x``: terms are joined by ``" + "``,
negative coefficients are written explicitly, exponent 1 and coefficient 1
are omitted (except for the constant term).
"""

from __future__ import annotations

import re
from fractions import Fraction
from typing import Iterable, Iterator, Mapping, Union

__all__ = [
    "Monomial",
    "LaurentPoly",
    "ParseError",
    "NotInvertibleError",
    "PoleError",
    "var",
    "const",
    "parse_poly",
    "poly_add",
    "poly_mul",
    "poly_pow",
    "substitute",
    "evaluate",
    "coefficient",
]

VAR_RE = re.compile(r"[a-z][a-z0-9]*\Z")

Number = Union[int, Fraction]


class ParseError(ValueError):
    """Malformed polynomial or grammar text."""

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class NotInvertibleError(ArithmeticError):
    pass


class PoleError(ZeroDivisionError):
    pass


def _var_key(name: str) -> tuple[str, int]:
    # natural order: x2 sorts before x10
    head = name.rstrip("0123456789")
    tail = name[len(head):]
    return (head, int(tail) if tail else -1)


def check_var(name: str) -> str:
    if not isinstance(name, str) or not VAR_RE.match(name):
        raise ValueError(f"invalid variable name {name!r}")
    return name


class Monomial:
    """A product of variables raised to nonzero integer powers."""

    __slots__ = ("exps", "_hash")

    def __init__(self, exps: Mapping[str, int] | Iterable[tuple[str, int]] = ()):
        items = exps.items() if isinstance(exps, Mapping) else exps
        merged: dict[str, int] = {}
        for name, e in items:
            merged[name] = merged.get(name, 0) + int(e)
        self.exps: tuple[tuple[str, int], ...] = tuple(
            sorted(((v, e) for v, e in merged.items() if e), key=lambda t: _var_key(t[0]))
        )
        self._hash = hash(self.exps)

    @classmethod
    def _raw(cls, exps: tuple[tuple[str, int], ...]) -> Monomial:
        m = cls.__new__(cls)
        m.exps = exps
        m._hash = hash(exps)
        return m

    def __hash__(self) -> int:
        return self._hash

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Monomial) and self.exps == other.exps

    def __repr__(self) -> str:
        return f"Monomial({dict(self.exps)!r})"

    def __str__(self) -> str:
        if not self.exps:
            return "1"
        return "*".join(v if e == 1 else f"{v}^{e}" for v, e in self.exps)

    def __mul__(self, other: Monomial) -> Monomial:
        if not other.exps:
            return self
        if not self.exps:
            return other
        d = dict(self.exps)
        for v, e in other.exps:
            d[v] = d.get(v, 0) + e
        return Monomial._raw(
            tuple(sorted(((v, e) for v, e in d.items() if e), key=lambda t: _var_key(t[0])))
        )

    def inverse(self) -> Monomial:
        return Monomial._raw(tuple((v, -e) for v, e in self.exps))

    def __pow__(self, k: int) -> Monomial:
        if k == 0:
            return ONE_MONO
        return Monomial._raw(tuple((v, e * k) for v, e in self.exps))

    def exponent(self, name: str) -> int:
        for v, e in self.exps:
            if v == name:
                return e
        return 0

    @property
    def degree(self) -> int:
        return sum(e for _, e in self.exps)

    @property
    def variables(self) -> tuple[str, ...]:
        return tuple(v for v, _ in self.exps)


ONE_MONO = Monomial()


class LaurentPoly:
    """Immutable Laurent polynomial with rational coefficients."""

    __slots__ = ("terms", "_hash")

    def __init__(self, terms: Mapping[Monomial, Number] | None = None):
        clean: dict[Monomial, Fraction] = {}
        if terms:
            for m, c in terms.items():
                c = Fraction(c)
                if c:
                    clean[m] = clean.get(m, 0) + c
            clean = {m: c for m, c in clean.items() if c}
        self.terms: dict[Monomial, Fraction] = clean
        self._hash: int | None = None

    @classmethod
    def _raw(cls, terms: dict[Monomial, Fraction]) -> LaurentPoly:
        # caller guarantees canonical form
        p = cls.__new__(cls)
        p.terms = terms
        p._hash = None
        return p

    # -- construction helpers -------------------------------------------------

    @classmethod
    def coerce(cls, value: LaurentPoly | Number | str) -> LaurentPoly:
        if isinstance(value, LaurentPoly):
            return value
        if isinstance(value, str):
            return parse_poly(value)
        if isinstance(value, (int, Fraction)):
            return const(value)
        raise TypeError(f"cannot convert {type(value).__name__} to LaurentPoly")

    @classmethod
    def monomial(cls, mono: Monomial, coef: Number = 1) -> LaurentPoly:
        coef = Fraction(coef)
        return cls._raw({mono: coef} if coef else {})

    # -- queries --------------------------------------------------------------

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __len__(self) -> int:
        return len(self.terms)

    def __iter__(self) -> Iterator[tuple[Monomial, Fraction]]:
        return iter(self.terms.items())

    def __eq__(self, other: object) -> bool:
        if isinstance(other, (int, Fraction)):
            other = const(other)
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(frozenset(self.terms.items()))
        return self._hash

    def coefficient(self, mono: Monomial) -> Fraction:
        return self.terms.get(mono, Fraction(0))

    @property
    def variables(self) -> tuple[str, ...]:
        names = {v for m in self.terms for v in m.variables}
        return tuple(sorted(names, key=_var_key))

    def is_monomial(self) -> bool:
        """True for ``c * m`` with ``c != 0``: the units of the Laurent ring."""
        return len(self.terms) == 1

    def is_constant(self) -> bool:
        return not self.terms or (len(self.terms) == 1 and ONE_MONO in self.terms)

    def constant_term(self) -> Fraction:
        return self.terms.get(ONE_MONO, Fraction(0))

    def is_integral(self) -> bool:
        return all(c.denominator == 1 for c in self.terms.values())

    # -- arithmetic -----------------------------------------------------------

    def __add__(self, other: LaurentPoly | Number) -> LaurentPoly:
        other = _coerce_operand(other)
        if other is NotImplemented:
            return other
        if len(other.terms) > len(self.terms):
            big, small = other.terms, self.terms
        else:
            big, small = self.terms, other.terms
        out = dict(big)
        for m, c in small.items():
            s = out.get(m, 0) + c
            if s:
                out[m] = s
            else:
                out.pop(m, None)
        return LaurentPoly._raw(out)

    __radd__ = __add__

    def __neg__(self) -> LaurentPoly:
        return LaurentPoly._raw({m: -c for m, c in self.terms.items()})

    def __sub__(self, other: LaurentPoly | Number) -> LaurentPoly:
        other = _coerce_operand(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other: LaurentPoly | Number) -> LaurentPoly:
        return (-self) + other

    def __mul__(self, other: LaurentPoly | Number) -> LaurentPoly:
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        out: dict[Monomial, Fraction] = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = m1 * m2
                out[m] = out.get(m, 0) + c1 * c2
        return LaurentPoly._raw({m: c for m, c in out.items() if c})

    __rmul__ = __mul__

    def scale(self, c: Number) -> LaurentPoly:
        c = Fraction(c)
        if not c:
            return ZERO
        return LaurentPoly._raw({m: c * v for m, v in self.terms.items()})

    def shift(self, mono: Monomial, c: Number = 1) -> LaurentPoly:
        """Return ``c * mono * self`` without a general product."""
        c = Fraction(c)
        if not c:
            return ZERO
        return LaurentPoly._raw({m * mono: c * v for m, v in self.terms.items()})

    def __pow__(self, k: int) -> LaurentPoly:
        return poly_pow(self, k)

    def __truediv__(self, other: LaurentPoly | Number) -> LaurentPoly:
        if isinstance(other, (int, Fraction)):
            if not other:
                raise ZeroDivisionError("division by zero")
            return self.scale(1 / Fraction(other))
        if isinstance(other, LaurentPoly):
            return self * poly_pow(other, -1)
        return NotImplemented

    # -- display --------------------------------------------------------------

    def sorted_terms(self) -> list[tuple[Monomial, Fraction]]:
        names = self.variables

        def key(item: tuple[Monomial, Fraction]):
            m = item[0]
            return (m.degree, tuple(m.exponent(v) for v in names))

        return sorted(self.terms.items(), key=key)

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for m, c in self.sorted_terms():
            if not m.exps:
                parts.append(_fmt_coef(c))
            elif c == 1:
                parts.append(str(m))
            elif c == -1:
                parts.append(f"-{m}")
            else:
                parts.append(f"{_fmt_coef(c)}*{m}")
        return " + ".join(parts)

    def __repr__(self) -> str:
        return f"LaurentPoly('{self}')"


def _fmt_coef(c: Fraction) -> str:
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


def _coerce_operand(other):
    if isinstance(other, LaurentPoly):
        return other
    if isinstance(other, (int, Fraction)):
        return const(other)
    return NotImplemented


ZERO = LaurentPoly._raw({})
ONE = LaurentPoly._raw({ONE_MONO: Fraction(1)})


def var(name: str) -> LaurentPoly:
    return LaurentPoly._raw({Monomial._raw(((check_var(name), 1),)): Fraction(1)})


def const(c: Number) -> LaurentPoly:
    return LaurentPoly.monomial(ONE_MONO, c)


# -- module level operations ------------------------------------------------------


def poly_add(p: LaurentPoly, q: LaurentPoly) -> LaurentPoly:
    return p + q


def poly_mul(p: LaurentPoly, q: LaurentPoly) -> LaurentPoly:
    return p * q


def poly_pow(p: LaurentPoly, k: int) -> LaurentPoly:
    """``p**k``; negative ``k`` only for a single (nonzero) term."""
    if k < 0:
        if not p.is_monomial():
            raise NotInvertibleError(f"not invertible: ({p})^{k}")
        (m, c), = p.terms.items()
        return LaurentPoly._raw({m ** k: Fraction(c) ** k})
    if k == 0:
        return ONE
    if p.is_monomial():
        (m, c), = p.terms.items()
        return LaurentPoly._raw({m ** k: c ** k})
    result = ONE
    base = p
    while k:
        if k & 1:
            result = result * base
        k >>= 1
        if k:
            base = base * base
    return result


def substitute(p: LaurentPoly, image: Mapping[str, LaurentPoly | Number]) -> LaurentPoly:
    """Apply the ring map sending each variable ``v`` to ``image[v]``.

    Unmapped variables are left alone. A variable with a negative exponent in
    ``p`` must map to a unit (a single nonzero term).
    """
    img = {v: LaurentPoly.coerce(q) for v, q in image.items()}
    powers: dict[tuple[str, int], LaurentPoly] = {}
    out = ZERO
    for m, c in p.terms.items():
        fixed: list[tuple[str, int]] = []
        term = const(c)
        for v, e in m.exps:
            if v not in img:
                fixed.append((v, e))
                continue
            key = (v, e)
            if key not in powers:
                powers[key] = poly_pow(img[v], e)
            term = term * powers[key]
        if fixed:
            term = term.shift(Monomial._raw(tuple(fixed)))
        out = out + term
    return out


def evaluate(p: LaurentPoly, point: Mapping[str, Number]) -> Fraction:
    total = Fraction(0)
    for m, c in p.terms.items():
        val = Fraction(c)
        for v, e in m.exps:
            if v not in point:
                raise ValueError(f"variable {v!r} is not assigned")
            x = Fraction(point[v])
            if e < 0 and x == 0:
                raise PoleError(f"pole at evaluation point: {v}=0")
            val *= x ** e
        total += val
    return total


def coefficient(p: LaurentPoly, m: Monomial | LaurentPoly | str) -> Fraction:
    if isinstance(m, str):
        m = parse_poly(m)
    if isinstance(m, LaurentPoly):
        if not (len(m.terms) == 1 and next(iter(m.terms.values())) == 1):
            raise ValueError(f"{m} is not a monomial")
        m = next(iter(m.terms))
    return p.coefficient(m)


# -- parser ----------------------------------------------------------------------

_TOKEN_RE = re.compile(
    r"\s*(?:(?P<num>\d+(?:/\d+)?)|(?P<name>[a-z][a-z0-9]*)|(?P<op>[-+*^()])|(?P<bad>\S))"
)


def _tokenize(text: str) -> list[tuple[str, str]]:
    tokens = []
    pos = 0
    text = text.rstrip()
    while pos < len(text):
        mt = _TOKEN_RE.match(text, pos)
        if mt is None:
            break
        pos = mt.end()
        kind = mt.lastgroup
        if kind == "bad":
            raise ParseError(f"unexpected character {mt.group(kind)!r}")
        tokens.append((kind, mt.group(kind)))
    return tokens


class _Parser:
    def __init__(self, text: str):
        self.tokens = _tokenize(text)
        self.i = 0

    def peek(self) -> tuple[str, str] | None:
        return self.tokens[self.i] if self.i < len(self.tokens) else None

    def take(self, value: str | None = None) -> tuple[str, str]:
        tok = self.peek()
        if tok is None:
            raise ParseError("unexpected end of input")
        if value is not None and tok[1] != value:
            raise ParseError(f"expected {value!r}, found {tok[1]!r}")
        self.i += 1
        return tok

    def parse(self) -> LaurentPoly:
        if not self.tokens:
            raise ParseError("empty polynomial")
        p = self.expr()
        if self.peek() is not None:
            raise ParseError(f"unexpected token {self.peek()[1]!r}")
        return p

    def expr(self) -> LaurentPoly:
        p = self.term()
        while (tok := self.peek()) is not None and tok[1] in "+-":
            self.take()
            q = self.term()
            p = p + q if tok[1] == "+" else p - q
        return p

    def term(self) -> LaurentPoly:
        p = self.factor()
        while (tok := self.peek()) is not None and tok[1] == "*":
            self.take()
            p = p * self.factor()
        return p

    def factor(self) -> LaurentPoly:
        tok = self.peek()
        if tok is not None and tok[1] in "+-":
            self.take()
            p = self.factor()
            return -p if tok[1] == "-" else p
        base = self.atom()
        if (tok := self.peek()) is not None and tok[1] == "^":
            self.take()
            return poly_pow(base, self.exponent())
        return base

    def exponent(self) -> int:
        tok = self.peek()
        if tok is not None and tok[1] == "(":
            self.take()
            k = self.exponent()
            self.take(")")
            return k
        sign = 1
        while tok is not None and tok[1] in "+-":
            self.take()
            if tok[1] == "-":
                sign = -sign
            tok = self.peek()
        kind, value = self.take()
        if kind != "num" or "/" in value:
            raise ParseError(f"exponent must be an integer, found {value!r}")
        return sign * int(value)

    def atom(self) -> LaurentPoly:
        kind, value = self.take()
        if kind == "num":
            return const(Fraction(value))
        if kind == "name":
            return var(value)
        if value == "(":
            p = self.expr()
            self.take(")")
            return p
        raise ParseError(f"unexpected token {value!r}")


def parse_poly(text: str) -> LaurentPoly:
    """Parse the text format; also accepts parentheses and integer powers."""
    return _Parser(text).parse()
