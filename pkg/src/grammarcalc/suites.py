"""Named verification suites: grammar output against enumeration, series
against closed forms, and the bijection checks.

Every suite takes ``(max_n, order)`` and returns a list of checks. Suites
cap ``max_n`` at the largest size their oracle supports.
"""

from __future__ import annotations

import math
import random
from typing import Callable

from . import combinat as cb
from .bijection import verify_bijection
from .grammar import builtin, check_morphism, derivatives
from .laurent import ONE, LaurentPoly, Monomial, parse_poly, poly_pow, substitute, var
from .report import Check, Report
from .series import (
    TruncatedSeries,
    andre_gf_rhs,
    aux_gf_rhs,
    egf,
    gessel_gf_rhs,
    series_ddt,
    series_div,
    series_mul,
)

P = parse_poly

SuiteFn = Callable[[int, int], list]


def _check(suite: str, name: str, lhs, rhs, detail: str = "") -> Check:
    return Check(suite, name, lhs == rhs, detail if lhs == rhs else f"{lhs} != {rhs}")


def suite_eulerian(max_n: int, order: int) -> list[Check]:
    g = builtin("eulerian")
    out = []
    ders = derivatives(g, var("x"), max_n)
    for n in range(1, max_n + 1):
        oracle = cb.eulerian_oracle(n)
        out.append(_check("eulerian", f"D^{n}(x) = sum over S_{n}", ders[n], oracle))
        total = sum(oracle.terms.values())
        out.append(_check("eulerian", f"row sum n={n}", total, math.factorial(n)))
    w = P("x^-1*y")
    ders = derivatives(g, w, 10)
    for n in range(11):
        out.append(_check("eulerian", f"D^{n}(x^-1*y) = x^-1*y*(x-y)^{n}",
                          ders[n], w * poly_pow(P("x - y"), n)))
    return out


def suite_cyclic(max_n: int, order: int) -> list[Check]:
    out = []
    for n in range(1, min(max_n, 8) + 1):
        cyc = cb.cyclic_oracle(n)
        out.append(_check("cyclic", f"C_{n + 1} cyclic sum = S_{n} sum", cyc, cb.eulerian_oracle(n)))
    return out


def suite_stirling(max_n: int, order: int) -> list[Check]:
    out = []
    for r, cap in ((2, min(max_n, 7)), (3, 4), (4, 3)):
        ders = derivatives(builtin(f"stirling({r})"), var("x"), cap)
        for n in range(1, cap + 1):
            out.append(_check("stirling", f"r={r} D^{n}(x) = r-Stirling words",
                              ders[n], cb.stirling_oracle(n, r)))
    return out


def suite_lah(max_n: int, order: int) -> list[Check]:
    out = []
    ders = derivatives(builtin("lah"), var("z"), min(max_n, 7))
    for n in range(1, min(max_n, 7) + 1):
        out.append(_check("lah", f"D^{n}(z) = lists of [{n}]", ders[n], cb.list_partition_oracle(n)))
    ders = derivatives(builtin("lah_signless"), var("z"), max_n)
    for n in range(1, max_n + 1):
        closed = LaurentPoly({Monomial({"x": n + k, "z": 1}): cb.lah_number(n, k)
                              for k in range(1, n + 1)})
        out.append(_check("lah", f"signless D^{n}(z) = x^{n} z sum L({n},k) x^k", ders[n], closed))
    return out


def suite_andre(max_n: int, order: int) -> list[Check]:
    g = builtin("andre")
    out = []
    cap = min(max(max_n, 1), 10)
    ders = derivatives(g, var("y"), cap)
    for n in range(0, cap + 1):
        out.append(_check("andre", f"D^{n}(y) = 0-1-2 trees on {n} vertices", ders[n], cb.andre_oracle(n)))
    w = P("x^-1*y")
    ders = derivatives(g, w, 11)
    base = P("y^2 - 2*x")
    for m in range(6):
        out.append(_check("andre", f"D^{2 * m + 1}(x^-1*y)", ders[2 * m + 1],
                          P("1 - x^-1*y^2") * poly_pow(base, m)))
        out.append(_check("andre", f"D^{2 * m}(x^-1*y)", ders[2 * m], w * poly_pow(base, m)))
    return out


def suite_peaks(max_n: int, order: int) -> list[Check]:
    out = []
    weighted = derivatives(builtin("ext_peaks_weighted"), var("x"), max_n)
    for n in range(1, max_n + 1):
        row = cb.peaks_oracle(n)
        out.append(_check("peaks", f"T({n},k) grammar = enumeration", cb.peaks_from_grammar(n), row))
        out.append(_check("peaks", f"row sum n={n}", sum(row.values()), math.factorial(n)))
        closed = LaurentPoly({Monomial({"x": 2 * k + 1, "y": n - 2 * k, "w": k}): c
                              for k, c in row.items()})
        out.append(_check("peaks", f"weighted D^{n}(x) carries w^k", weighted[n], closed))
    ders = derivatives(builtin("ext_peaks"), P("x^-1"), 11)
    base = P("y^2 - x^2")
    for m in range(6):
        out.append(_check("peaks", f"D^{2 * m + 1}(x^-1)", ders[2 * m + 1],
                          -P("x^-1*y") * poly_pow(base, m)))
        out.append(_check("peaks", f"D^{2 * m}(x^-1)", ders[2 * m], P("x^-1") * poly_pow(base, m)))
    return out


def parity_collapse(p: LaurentPoly) -> LaurentPoly:
    """Send ``x_{2i} -> x`` and ``x_{2i+1} -> y``."""
    image = {}
    for v in p.variables:
        if v.startswith("x") and v[1:].isdigit():
            image[v] = var("x") if int(v[1:]) % 2 == 0 else var("y")
    return substitute(p, image)


def suite_trees(max_n: int, order: int) -> list[Check]:
    out = []
    ders = derivatives(builtin("tree_degrees"), var("x0"), max_n)
    for n in range(1, max_n + 1):
        degree_poly = cb.tree_degree_oracle(n)
        parity = cb.tree_parity_oracle(n)
        out.append(_check("trees", f"D^{n}(x0) = degree enumerator", ders[n], degree_poly))
        out.append(_check("trees", f"parity collapse n={n}", parity_collapse(degree_poly), parity))
        out.append(_check("trees", f"parity enumerator = peaks n={n}", parity,
                          cb.peaks_polynomial(cb.peaks_oracle(n), n)))
        odd = all(sum(1 for d in t.degrees() if d % 2 == 0) % 2 == 1
                  for t in cb.enumerate_increasing_trees(n))
        out.append(Check("trees", f"odd number of even-degree vertices n={n}", odd))
    return out


def _random_words(rng: random.Random, names: list[str], count: int) -> list[LaurentPoly]:
    words = []
    for _ in range(count):
        terms = {}
        for _ in range(rng.randint(1, 3)):
            m = Monomial({v: rng.randint(-1, 2) for v in rng.sample(names, rng.randint(1, len(names)))})
            terms[m] = rng.randint(-3, 3) or 1
        words.append(LaurentPoly(terms))
    return words


def peaks_egf_from_grammar(order: int) -> TruncatedSeries:
    """``sum T_n(x) t^n / n!`` with T_n read off the ext_peaks grammar."""
    nums = [ONE]
    for n in range(1, order + 1):
        row = cb.peaks_from_grammar(n)
        nums.append(LaurentPoly({Monomial({"x": k}): c for k, c in row.items()}))
    return TruncatedSeries.from_numerators(nums)


def suite_gf(max_n: int, order: int) -> list[Check]:
    out = []
    rng = random.Random(20111)
    finite = ["eulerian", "stirling", "lah", "lah_signless", "andre",
              "ext_peaks", "ext_peaks_weighted", "aux_uv"]
    n8 = min(order, 8)
    for name in finite + ["tree_degrees"]:
        g = builtin(name)
        names = sorted(g.rules) if g.rules else ["x0", "x1", "x2"]
        w = _random_words(rng, names, 1)[0]
        out.append(_check("gf", f"{name}: d/dt Gen(w) = Gen(D(w))",
                          series_ddt(egf(g, w, n8)), egf(g, g.derive(w), n8 - 1)))
    n6 = min(order, 6)
    for name in finite:
        g = builtin(name)
        u, v = _random_words(rng, sorted(g.rules), 2)
        out.append(_check("gf", f"{name}: Gen(u+v) = Gen(u)+Gen(v)",
                          egf(g, u + v, n6), egf(g, u, n6) + egf(g, v, n6)))
        out.append(_check("gf", f"{name}: Gen(uv) = Gen(u)Gen(v)",
                          egf(g, u * v, n6), series_mul(egf(g, u, n6), egf(g, v, n6))))
    eul = builtin("eulerian")
    out.append(_check("gf", "Gen(x)Gen(x^-1) = 1",
                      series_mul(egf(eul, "x", n6), egf(eul, "x^-1", n6)),
                      TruncatedSeries.constant(1, n6)))

    andre = egf(builtin("andre"), "y", order)
    out.append(_check("gf", f"André EGF closed form, order {order}", andre, andre_gf_rhs(order)))
    euler = [int(p.constant_term()) for p in andre.map(lambda c: substitute(c, {"x": 1, "y": 1})).numerators()]
    expected = [1, 1, 1, 2, 5, 16, 61, 272, 1385, 7936, 50521, 353792, 2702765][: order + 1]
    out.append(_check("gf", "sec t + tan t at x=y=1", euler, expected))

    out.append(_check("gf", f"Gessel EGF closed form, order {order}",
                      peaks_egf_from_grammar(order), gessel_gf_rhs(order)))
    out.append(_check("gf", f"Gen(u^-1*v) closed form, order {order}",
                      egf(builtin("aux_uv"), "u^-1*v", order), aux_gf_rhs(order)))

    for a, b in zip(_random_words(rng, ["x", "y"], 3), _random_words(rng, ["x", "y"], 3)):
        unit = LaurentPoly.monomial(Monomial({"x": rng.randint(-2, 2), "y": 1}), rng.choice([1, -2, 3]))
        sa = TruncatedSeries((a,) * (n6 + 1))
        sb = TruncatedSeries((unit,) + (b,) * n6)
        out.append(_check("gf", "(a/b)*b = a", series_mul(series_div(sa, sb), sb), sa))
    return out


def suite_recurrences(max_n: int, order: int) -> list[Check]:
    return cb.verify_recurrences(min(max(max_n, 1), 10))


def suite_bijection(max_n: int, order: int) -> list[Check]:
    return verify_bijection(max_n)


def suite_morphism(max_n: int, order: int) -> list[Check]:
    phi = {"x": P("u^-1*v"), "y": P("1 - u^-1*v^2"), "w": P("v^2 - 2*u")}
    ok = check_morphism(builtin("ext_peaks_weighted"), builtin("aux_uv"), phi, ["x", "y", "w"])
    out = [Check("morphism", "peaks_weighted -> aux_uv under x=u^-1 v, y=1-u^-1 v^2, w=v^2-2u", ok)]
    # the same map, pushed through n derivatives
    g_src, g_dst = builtin("ext_peaks_weighted"), builtin("aux_uv")
    src = derivatives(g_src, var("x"), max_n)
    dst = derivatives(g_dst, phi["x"], max_n)
    for n in range(max_n + 1):
        out.append(_check("morphism", f"phi(D^{n}(x)) = D^{n}(u^-1*v)", substitute(src[n], phi), dst[n]))
    return out


SUITES: dict[str, SuiteFn] = {
    "andre": suite_andre,
    "bijection": suite_bijection,
    "cyclic": suite_cyclic,
    "eulerian": suite_eulerian,
    "gf": suite_gf,
    "lah": suite_lah,
    "morphism": suite_morphism,
    "peaks": suite_peaks,
    "recurrences": suite_recurrences,
    "stirling": suite_stirling,
    "trees": suite_trees,
}

MAX_N_RANGE = (1, 8)
ORDER_RANGE = (1, 12)


def run_suites(suite: str, max_n: int = 7, order: int = 10) -> Report:
    if not MAX_N_RANGE[0] <= max_n <= MAX_N_RANGE[1]:
        raise ValueError(f"max_n must be in {MAX_N_RANGE[0]}..{MAX_N_RANGE[1]}")
    if not ORDER_RANGE[0] <= order <= ORDER_RANGE[1]:
        raise ValueError(f"order must be in {ORDER_RANGE[0]}..{ORDER_RANGE[1]}")
    names = sorted(SUITES) if suite == "all" else [suite]
    report = Report()
    for name in names:
        if name not in SUITES:
            raise ValueError(f"unknown suite {name!r}")
        report.extend(SUITES[name](max_n, order))
    return report
