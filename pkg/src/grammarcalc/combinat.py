"""Brute-force enumeration oracles.

Each oracle enumerates a combinatorial family directly and sums the weight
of every object, with no reference to any grammar. They are deliberately
naive: small n only.
"""

from __future__ import annotations

import itertools
import math
from collections import Counter
from dataclasses import dataclass
from typing import Iterator, Sequence

from .grammar import builtin, derive_n
from .laurent import ONE, LaurentPoly, Monomial, poly_pow, substitute, var

__all__ = [
    "Permutation",
    "PermutationStats",
    "IncreasingTree",
    "check_permutation",
    "perm_stats",
    "is_down_up",
    "cyclic_permutations",
    "stirling_words",
    "list_partitions",
    "eulerian_oracle",
    "cyclic_oracle",
    "stirling_oracle",
    "list_partition_oracle",
    "lah_number",
    "enumerate_increasing_trees",
    "tree_degree_oracle",
    "tree_parity_oracle",
    "andre_oracle",
    "peaks_oracle",
    "peaks_from_grammar",
    "peaks_polynomial",
    "eulerian_row",
    "verify_recurrences",
]

Permutation = tuple[int, ...]


def _check_range(name: str, n: int, lo: int, hi: int) -> None:
    if not lo <= n <= hi:
        raise ValueError(f"{name}: n={n} outside supported range {lo}..{hi}")


def check_permutation(perm: Sequence[int]) -> Permutation:
    perm = tuple(int(v) for v in perm)
    if sorted(perm) != list(range(1, len(perm) + 1)):
        raise ValueError(f"not a permutation of [n]: {perm}")
    return perm


def _counter_poly(weights: Counter, names: Sequence[str]) -> LaurentPoly:
    return LaurentPoly({Monomial(zip(names, exps)): c for exps, c in weights.items()})


# -- permutations ---------------------------------------------------------------


@dataclass(frozen=True)
class PermutationStats:
    asc: int
    des: int
    ext_peaks: int
    valleys: int


def perm_stats(perm: Sequence[int]) -> PermutationStats:
    p = check_permutation(perm)
    n = len(p)
    asc = sum(1 for i in range(n - 1) if p[i] < p[i + 1])
    peaks = 0
    valleys = 0
    if n >= 2 and p[0] > p[1]:
        peaks += 1
    for i in range(1, n - 1):
        if p[i - 1] < p[i] > p[i + 1]:
            peaks += 1
        elif p[i - 1] > p[i] < p[i + 1]:
            valleys += 1
    return PermutationStats(asc=asc, des=max(n - 1, 0) - asc, ext_peaks=peaks, valleys=valleys)


def ext_peaks(p: Permutation) -> int:
    n = len(p)
    k = 1 if n >= 2 and p[0] > p[1] else 0
    return k + sum(1 for i in range(1, n - 1) if p[i - 1] < p[i] > p[i + 1])


def is_down_up(perm: Sequence[int]) -> bool:
    """``p1 > p2 < p3 > ...``"""
    return all((perm[i] > perm[i + 1]) == (i % 2 == 0) for i in range(len(perm) - 1))


def eulerian_oracle(n: int) -> LaurentPoly:
    """Sum of ``x^(asc+1) y^(des+1)`` over S_n."""
    _check_range("eulerian_oracle", n, 1, 9)
    weights: Counter = Counter()
    for p in itertools.permutations(range(1, n + 1)):
        asc = sum(1 for i in range(n - 1) if p[i] < p[i + 1])
        weights[(asc + 1, n - asc)] += 1
    return _counter_poly(weights, ("x", "y"))


def eulerian_row(n: int) -> list[int]:
    """A(n, m) for m = 1..n from the oracle."""
    poly = eulerian_oracle(n)
    return [int(poly.coefficient(Monomial({"x": m, "y": n + 1 - m}))) for m in range(1, n + 1)]


def cyclic_permutations(size: int) -> Iterator[dict[int, int]]:
    """All single cycles on [size] as successor maps."""
    for rest in itertools.permutations(range(2, size + 1)):
        cycle = (1,) + rest
        yield {cycle[i]: cycle[(i + 1) % size] for i in range(size)}


def cyclic_oracle(n: int) -> LaurentPoly:
    """Sum of ``x^asc y^des`` over the cyclic permutations of [n+1]."""
    _check_range("cyclic_oracle", n, 1, 8)
    weights: Counter = Counter()
    for succ in cyclic_permutations(n + 1):
        asc = sum(1 for i, j in succ.items() if i < j)
        weights[(asc, n + 1 - asc)] += 1
    return _counter_poly(weights, ("x", "y"))


# -- Stirling permutations ----------------------------------------------------------


def stirling_words(n: int, r: int = 2) -> Iterator[tuple[int, ...]]:
    """r-Stirling permutations of {1^r, ..., n^r}, built by inserting i^r blocks."""
    words: list[tuple[int, ...]] = [()]
    for i in range(1, n + 1):
        block = (i,) * r
        words = [w[:pos] + block + w[pos:] for w in words for pos in range(len(w) + 1)]
    return iter(words)


def is_stirling_word(word: Sequence[int], r: int) -> bool:
    n = len(word) // r
    for i in range(1, n + 1):
        pos = [k for k, v in enumerate(word) if v == i]
        if len(pos) != r:
            return False
        if any(word[k] < i for k in range(pos[0], pos[-1] + 1)):
            return False
    return len(word) == n * r


def stirling_oracle(n: int, r: int = 2) -> LaurentPoly:
    """Padded words ``0 w 0``: ascents weigh x, descents and plateaux weigh y."""
    if n < 1 or r < 2 or r * n > 14:
        raise ValueError(f"stirling_oracle: unsupported (n={n}, r={r})")
    weights: Counter = Counter()
    for w in stirling_words(n, r):
        padded = (0,) + w + (0,)
        asc = sum(1 for a, b in zip(padded, padded[1:]) if a < b)
        weights[(asc, len(padded) - 1 - asc)] += 1
    return _counter_poly(weights, ("x", "y"))


# -- partitions into lists ----------------------------------------------------------


def list_partitions(n: int) -> Iterator[list[tuple[int, ...]]]:
    """Set partitions of [n] whose blocks are linearly ordered."""
    parts: list[list[tuple[int, ...]]] = [[]]
    for i in range(1, n + 1):
        nxt = []
        for blocks in parts:
            nxt.append(blocks + [(i,)])
            for b, lst in enumerate(blocks):
                for pos in range(len(lst) + 1):
                    new = list(blocks)
                    new[b] = lst[:pos] + (i,) + lst[pos:]
                    nxt.append(new)
        parts = nxt
    return iter(parts)


def list_partition_oracle(n: int) -> LaurentPoly:
    _check_range("list_partition_oracle", n, 1, 7)
    weights: Counter = Counter()
    for blocks in list_partitions(n):
        asc = des = 0
        for lst in blocks:
            padded = (0,) + lst + (0,)
            a = sum(1 for s, t in zip(padded, padded[1:]) if s < t)
            asc += a
            des += len(padded) - 1 - a
        weights[(asc, des, 1)] += 1
    return _counter_poly(weights, ("x", "y", "z"))


def lah_number(n: int, k: int) -> int:
    """Signless Lah number ``binom(n-1, k-1) * n! / k!``."""
    if not 1 <= k <= n:
        raise ValueError(f"lah_number: need 1 <= k <= n, got n={n}, k={k}")
    return math.comb(n - 1, k - 1) * math.factorial(n) // math.factorial(k)


# -- increasing trees ---------------------------------------------------------------


@dataclass(frozen=True)
class IncreasingTree:
    """Rooted tree on {0..n}, root 0, with ``parents[v-1] < v``; children unordered."""

    parents: tuple[int, ...]

    def __post_init__(self):
        parents = tuple(int(p) for p in self.parents)
        for v, p in enumerate(parents, start=1):
            if not 0 <= p < v:
                raise ValueError(f"not an increasing tree: parent({v}) = {p}")
        object.__setattr__(self, "parents", parents)

    @property
    def n(self) -> int:
        return len(self.parents)

    def parent(self, v: int) -> int:
        return self.parents[v - 1]

    def degrees(self) -> list[int]:
        """Number of children of each vertex 0..n."""
        deg = [0] * (self.n + 1)
        for p in self.parents:
            deg[p] += 1
        return deg

    def children(self, v: int) -> list[int]:
        return [u for u, p in enumerate(self.parents, start=1) if p == v]

    def even_degree_count(self) -> int:
        return sum(1 for d in self.degrees() if d % 2 == 0)

    def to_wire(self) -> str:
        return ",".join(map(str, self.parents))

    def to_dict(self) -> dict:
        return {"n": self.n, "parents": list(self.parents)}

    @classmethod
    def from_wire(cls, text: str) -> IncreasingTree:
        text = text.strip()
        if not text:
            return cls(())
        return cls(tuple(int(s) for s in text.split(",")))


def enumerate_increasing_trees(n: int) -> Iterator[IncreasingTree]:
    """All n! increasing trees on {0..n}: vertex v picks any parent below it."""
    _check_range("enumerate_increasing_trees", n, 0, 9)
    for parents in itertools.product(*(range(v) for v in range(1, n + 1))):
        yield IncreasingTree(parents)


def _degree_counter(n: int) -> Iterator[list[int]]:
    for parents in itertools.product(*(range(v) for v in range(1, n + 1))):
        deg = [0] * (n + 1)
        for p in parents:
            deg[p] += 1
        yield deg


def tree_degree_oracle(n: int) -> LaurentPoly:
    """Sum over increasing trees of ``prod_i x_i^(m_i)``, variables ``x0, x1, ...``."""
    _check_range("tree_degree_oracle", n, 0, 8)
    weights: Counter = Counter()
    for deg in _degree_counter(n):
        weights[tuple(sorted(Counter(deg).items()))] += 1
    return LaurentPoly(
        {Monomial((f"x{d}", m) for d, m in key): c for key, c in weights.items()}
    )


def tree_parity_oracle(n: int) -> LaurentPoly:
    """Even-degree vertices weigh x, odd-degree vertices weigh y."""
    _check_range("tree_parity_oracle", n, 0, 9)
    weights: Counter = Counter()
    for deg in _degree_counter(n):
        even = sum(1 for d in deg if d % 2 == 0)
        weights[(even, n + 1 - even)] += 1
    return _counter_poly(weights, ("x", "y"))


def _zero_one_two_trees(size: int) -> Iterator[list[int]]:
    """Degree sequences of 0-1-2 increasing trees on {0..size-1}."""
    deg = [0] * size

    def grow(v: int):
        if v == size:
            yield deg
            return
        for p in range(v):
            if deg[p] < 2:
                deg[p] += 1
                yield from grow(v + 1)
                deg[p] -= 1

    if size >= 1:
        yield from grow(1)


def andre_oracle(n: int) -> LaurentPoly:
    """Sum over 0-1-2 increasing trees on {0..n-1} of ``x^leaves y^(unary)``.

    ``n = 0`` (no vertices) is taken as ``y`` so that the values line up
    with ``D^n(y)`` under the André grammar.
    """
    _check_range("andre_oracle", n, 0, 10)
    if n == 0:
        return var("y")
    weights: Counter = Counter()
    for deg in _zero_one_two_trees(n):
        weights[(deg.count(0), deg.count(1))] += 1
    return _counter_poly(weights, ("x", "y"))


# -- exterior peaks --------------------------------------------------------------------


def peaks_oracle(n: int) -> dict[int, int]:
    """T(n, k): permutations of [n] with k exterior peaks."""
    _check_range("peaks_oracle", n, 1, 9)
    counts = Counter(ext_peaks(p) for p in itertools.permutations(range(1, n + 1)))
    return {k: counts[k] for k in range(max(counts) + 1)}


def peaks_from_grammar(n: int) -> dict[int, int]:
    """Read T(n, k) off ``D^n(x)`` under ``x -> xy, y -> x^2``."""
    if n < 1:
        raise ValueError("peaks_from_grammar: n must be >= 1")
    poly = derive_n(builtin("ext_peaks"), var("x"), n)
    row: dict[int, int] = {}
    for m, c in poly:
        ex, ey = m.exponent("x"), m.exponent("y")
        k, rem = divmod(ex - 1, 2)
        if rem or k < 0 or ey != n - 2 * k or set(m.variables) - {"x", "y"} or c.denominator != 1:
            raise ValueError(f"grammar output violates the peak shape: term {c}*{m}")
        row[k] = int(c)
    return {k: row.get(k, 0) for k in range(max(row) + 1)}


def peaks_polynomial(row: dict[int, int], n: int) -> LaurentPoly:
    """``sum_k T(n,k) x^(2k+1) y^(n-2k)``."""
    return LaurentPoly({Monomial({"x": 2 * k + 1, "y": n - 2 * k}): c for k, c in row.items()})


# -- recurrences -----------------------------------------------------------------------


def _at_y1(p: LaurentPoly) -> LaurentPoly:
    return substitute(p, {"y": ONE})


def _halve_odd(p: LaurentPoly) -> LaurentPoly:
    """Invert ``T(x) -> x T(x^2)``."""
    out = {}
    for m, c in p:
        e = m.exponent("x")
        if e % 2 != 1 or set(m.variables) - {"x"}:
            raise ValueError(f"expected x*T(x^2), got term {c}*{m}")
        out[Monomial({"x": (e - 1) // 2})] = c
    return LaurentPoly(out)


def verify_recurrences(max_n: int):
    """Check the Eulerian and exterior-peak recurrences for n = 1..max_n.

    Returns a list of :class:`grammarcalc.report.Check`.
    """
    from .report import Check

    _check_range("verify_recurrences", max_n, 1, 10)
    x = var("x")
    eul, peaks = builtin("eulerian"), builtin("ext_peaks")
    # A_0 is D^0(x) at y=1, i.e. x: the recurrence is homogeneous, and with
    # A_n = sum x^(asc+1) it needs this seed rather than 1.
    A = [x]
    T = [ONE]
    dx_e = x
    dx_p = x
    checks = []
    for n in range(1, max_n + 1):
        dx_e = eul.derive(dx_e)
        dx_p = peaks.derive(dx_p)
        A.append(_at_y1(dx_e))
        T.append(_halve_odd(_at_y1(dx_p)))
        rhs = sum(
            (A[k] * poly_pow(x - 1, n - 1 - k)).scale(math.comb(n, k)) for k in range(n)
        )
        checks.append(Check("recurrences", f"eulerian A_{n}(x)", A[n] == rhs, f"A_{n} = {A[n]}"))
        rhs = sum(
            (poly_pow(1 - x, j // 2) * T[n - j]).scale(math.comb(n, j) * (-1) ** (j - 1))
            for j in range(1, n + 1)
        )
        checks.append(Check("recurrences", f"peaks T_{n}(x)", T[n] == rhs, f"T_{n} = {T[n]}"))
    return checks
