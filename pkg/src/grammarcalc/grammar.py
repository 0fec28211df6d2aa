"""Context-free grammars as substitution rules and their formal derivative."""

from __future__ import annotations

import re
import threading
from pathlib import Path
from typing import Callable, Iterable, Mapping

from .laurent import (
    ZERO,
    LaurentPoly,
    Monomial,
    ParseError,
    check_var,
    parse_poly,
    substitute,
    var,
)

__all__ = [
    "Grammar",
    "GRAMMAR_NAMES",
    "builtin",
    "parse_grammar",
    "load_grammar",
    "formal_derivative",
    "derive_n",
    "check_morphism",
]


class Grammar:
    """Substitution rules ``v -> rules[v]`` plus an optional indexed family.

    ``family`` maps an index ``i`` to the rule for the letter
    ``f"{family_prefix}{i}"``. Letters with no rule are constants.
    """

    def __init__(
        self,
        rules: Mapping[str, LaurentPoly | str],
        family: Callable[[int], LaurentPoly] | None = None,
        family_prefix: str = "x",
        name: str | None = None,
    ):
        self.rules: dict[str, LaurentPoly] = {
            check_var(v): LaurentPoly.coerce(p) for v, p in rules.items()
        }
        self.family = family
        self.family_prefix = family_prefix
        self.name = name
        self._family_re = re.compile(re.escape(family_prefix) + r"(0|[1-9][0-9]*)\Z")
        if family is not None:
            clash = [v for v in self.rules if self._family_re.match(v)]
            if clash:
                raise ValueError(f"rules overlap the indexed family: {clash}")
        self._family_cache: dict[int, LaurentPoly] = {}
        self._lock = threading.Lock()

    def __repr__(self) -> str:
        label = self.name or "Grammar"
        return f"<{label}: {'; '.join(f'{v} -> {p}' for v, p in self.rules.items())}>"

    def family_rule(self, i: int) -> LaurentPoly:
        if self.family is None:
            raise ValueError("grammar has no indexed family")
        if i < 0:
            raise ValueError("family index must be nonnegative")
        rule = self._family_cache.get(i)
        if rule is None:
            rule = LaurentPoly.coerce(self.family(i))
            with self._lock:
                self._family_cache.setdefault(i, rule)
        return rule

    def rule(self, v: str) -> LaurentPoly:
        """D(v) for a single letter; zero for constants."""
        p = self.rules.get(v)
        if p is not None:
            return p
        if self.family is not None:
            m = self._family_re.match(v)
            if m:
                return self.family_rule(int(m.group(1)))
        return ZERO

    def is_constant(self, v: str) -> bool:
        return not self.rule(v)

    def to_text(self) -> str:
        if self.family is not None:
            raise ValueError("an indexed family has no finite text form")
        return "\n".join(f"{v} -> {p}" for v, p in self.rules.items()) + "\n"

    def derive(self, p: LaurentPoly) -> LaurentPoly:
        return formal_derivative(self, p)

    def derive_n(self, p: LaurentPoly, n: int) -> LaurentPoly:
        return derive_n(self, p, n)


def formal_derivative(g: Grammar, p: LaurentPoly | str) -> LaurentPoly:
    """D(p): linear, Leibniz, and ``D(v^e) = e v^(e-1) D(v)`` for any integer e."""
    p = LaurentPoly.coerce(p)
    out: dict[Monomial, object] = {}
    for m, c in p.terms.items():
        for v, e in m.exps:
            dv = g.rule(v)
            if not dv:
                continue
            # e * m / v * D(v)
            rest = m * Monomial._raw(((v, -1),))
            ce = c * e
            for m2, c2 in dv.terms.items():
                mm = rest * m2
                out[mm] = out.get(mm, 0) + ce * c2
    return LaurentPoly._raw({m: c for m, c in out.items() if c})


def derive_n(g: Grammar, p: LaurentPoly | str, n: int) -> LaurentPoly:
    if n < 0:
        raise ValueError("n must be nonnegative")
    p = LaurentPoly.coerce(p)
    for _ in range(n):
        p = formal_derivative(g, p)
    return p


def derivatives(g: Grammar, p: LaurentPoly | str, n: int) -> list[LaurentPoly]:
    """``[D^0(p), D^1(p), ..., D^n(p)]``."""
    p = LaurentPoly.coerce(p)
    out = [p]
    for _ in range(n):
        out.append(formal_derivative(g, out[-1]))
    return out


# -- catalog ---------------------------------------------------------------------


def _tree_degree_rule(i: int) -> LaurentPoly:
    return var("x0") * var(f"x{i + 1}")


def stirling(r: int = 2) -> Grammar:
    if r < 2:
        raise ValueError("stirling grammar needs r >= 2")
    rhs = var("x") * var("y") ** r
    return Grammar({"x": rhs, "y": rhs}, name=f"stirling({r})")


_CATALOG: dict[str, Callable[[], Grammar]] = {
    "eulerian": lambda: Grammar({"x": "x*y", "y": "x*y"}, name="eulerian"),
    "lah": lambda: Grammar({"z": "x*y*z", "x": "x*y", "y": "x*y"}, name="lah"),
    "lah_signless": lambda: Grammar({"z": "x^2*z", "x": "x^2"}, name="lah_signless"),
    "andre": lambda: Grammar({"x": "x*y", "y": "x"}, name="andre"),
    "ext_peaks": lambda: Grammar({"x": "x*y", "y": "x^2"}, name="ext_peaks"),
    "ext_peaks_weighted": lambda: Grammar({"x": "x*y", "y": "w*x^2"}, name="ext_peaks_weighted"),
    "aux_uv": lambda: Grammar({"u": "v^2", "v": "v"}, name="aux_uv"),
    "tree_degrees": lambda: Grammar({}, family=_tree_degree_rule, name="tree_degrees"),
}

GRAMMAR_NAMES = ("eulerian", "stirling", *(k for k in _CATALOG if k != "eulerian"))

_STIRLING_RE = re.compile(r"stirling(?:\((\d+)\)|_?(\d+))?\Z")


def builtin(name: str) -> Grammar:
    """Look up a catalog grammar.

    ``stirling`` defaults to r=2; ``stirling(3)``, ``stirling3`` and
    ``stirling_3`` select other r.
    """
    m = _STIRLING_RE.match(name)
    if m:
        r = m.group(1) or m.group(2)
        return stirling(int(r) if r else 2)
    try:
        return _CATALOG[name]()
    except KeyError:
        raise ValueError(f"unknown grammar {name!r}") from None


def parse_grammar(text: str) -> Grammar:
    rules: dict[str, LaurentPoly] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        lhs, sep, rhs = line.partition("->")
        if not sep:
            raise ParseError("expected '<var> -> <polynomial>'", lineno)
        lhs = lhs.strip()
        try:
            check_var(lhs)
        except ValueError:
            raise ParseError(f"invalid variable {lhs!r}", lineno) from None
        if lhs in rules:
            raise ParseError(f"duplicate rule for {lhs!r}", lineno)
        try:
            rules[lhs] = parse_poly(rhs)
        except ParseError as exc:
            raise ParseError(str(exc), lineno) from None
    if not rules:
        raise ParseError("grammar has no rules")
    return Grammar(rules)


def load_grammar(source: str) -> Grammar:
    """Resolve a builtin name, else read a grammar file."""
    try:
        return builtin(source)
    except ValueError:
        pass
    path = Path(source)
    if not path.is_file():
        raise ValueError(f"{source!r} is neither a builtin grammar nor a file")
    return parse_grammar(path.read_text())


def check_morphism(
    g_src: Grammar,
    g_dst: Grammar,
    phi: Mapping[str, LaurentPoly | str],
    variables: Iterable[str],
) -> bool:
    """True iff ``D_dst(phi(v)) == phi(D_src(v))`` for each v in ``variables``."""
    image = {v: LaurentPoly.coerce(p) for v, p in phi.items()}
    for v in variables:
        lhs = formal_derivative(g_dst, image.get(v, var(v)))
        rhs = substitute(formal_derivative(g_src, var(v)), image)
        if lhs != rhs:
            return False
    return True
