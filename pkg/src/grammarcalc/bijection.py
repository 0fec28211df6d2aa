"""Bijection between permutations with k exterior peaks and increasing trees
with 2k+1 vertices of even degree.

``phi`` reads the code (inversion table) of a permutation left to right and
grows a forest one vertex per step; ``psi`` peels the largest root off the
forest and recovers the code right to left.

At step k >= 2 the current roots ``j_1 > ... > j_l`` (with ``j_0 = n+1`` and
``j_{l+1} = 0``) cut the unused labels into gaps. A free label lying below an
odd number of roots belongs to ``U``, below an even number to ``V``. The new
vertex is chosen from ``M`` (``U`` or ``V``, decided by the code) and adopts
every current root above it.
"""

from __future__ import annotations

import itertools
import math
from collections import Counter
from dataclasses import dataclass
from typing import Sequence

from .combinat import (
    IncreasingTree,
    Permutation,
    check_permutation,
    enumerate_increasing_trees,
    ext_peaks,
    is_down_up,
    peaks_oracle,
)
from .report import Check

__all__ = [
    "PhiConstructionError",
    "PhiState",
    "perm_code",
    "code_to_perm",
    "check_code",
    "phi",
    "phi_trace",
    "psi",
    "format_trace",
    "verify_bijection",
]


class PhiConstructionError(AssertionError):
    """An internal invariant of the construction failed; this is a bug."""

    def __init__(self, step: int, message: str, state: dict | None = None):
        self.step = step
        self.state = state or {}
        super().__init__(f"step {step}: {message} {self.state}")


@dataclass(frozen=True)
class PhiState:
    """Snapshot after step ``k``.

    ``U``, ``V`` and ``M`` are the sets used to pick ``i_k`` (all ``None`` at
    step 1); ``I`` and ``J`` are the vertices and roots of the forest built
    so far, and ``parents`` maps each non-root vertex to its parent.
    """

    k: int
    U: tuple[int, ...] | None
    V: tuple[int, ...] | None
    M: tuple[int, ...] | None
    i_k: int
    I: tuple[int, ...]
    J: tuple[int, ...]
    parents: tuple[tuple[int, int], ...]

    @property
    def uses_U(self) -> bool | None:
        if self.M is None:
            return None
        return self.M == self.U


def perm_code(perm: Sequence[int]) -> tuple[int, ...]:
    """``c_i = #{j > i : p_i > p_j}``."""
    p = check_permutation(perm)
    n = len(p)
    return tuple(sum(1 for j in range(i + 1, n) if p[j] < p[i]) for i in range(n))


def check_code(code: Sequence[int]) -> tuple[int, ...]:
    code = tuple(int(c) for c in code)
    n = len(code)
    for k, c in enumerate(code, start=1):
        if not 0 <= c <= n - k:
            raise ValueError(f"invalid code: c_{k} = {c} not in 0..{n - k}")
    return code


def code_to_perm(code: Sequence[int]) -> Permutation:
    code = check_code(code)
    avail = list(range(1, len(code) + 1))
    return tuple(avail.pop(c) for c in code)


def _split(free: Sequence[int], roots: Sequence[int]) -> tuple[tuple[int, ...], tuple[int, ...]]:
    """Partition sorted ``free`` labels into (U, V) relative to ``roots``."""
    U, V = [], []
    for m in free:
        above = sum(1 for j in roots if j > m)
        (U if above % 2 else V).append(m)
    return tuple(U), tuple(V)


def phi_trace(perm: Sequence[int]) -> list[PhiState]:
    p = check_permutation(perm)
    n = len(p)
    if n == 0:
        raise ValueError("phi needs n >= 1")
    code = perm_code(p)
    c = (0,) + code  # c[k] = c_k, c_0 = 0

    first = n - c[1]
    placed = {first}
    roots = [first]
    parents: dict[int, int] = {}
    steps = [PhiState(1, None, None, None, first, (first,), (first,), ())]

    for k in range(2, n + 1):
        free = [m for m in range(1, n + 1) if m not in placed]
        U, V = _split(free, roots)
        before, prev, cur = c[k - 2], c[k - 1], c[k]
        M = U if (before <= prev <= cur or before > prev > cur) else V

        expected = prev if prev > cur else n - k + 1 - prev
        state = {"U": U, "V": V, "M": M, "roots": sorted(roots, reverse=True), "code": code}
        if len(M) != expected:
            raise PhiConstructionError(k, f"|M_k| = {len(M)}, expected {expected}", state)
        pos = cur + 1 if prev > cur else n - k + 1 - cur
        if not 1 <= pos <= len(M):
            raise PhiConstructionError(k, f"no element m_{pos} in M_k", state)
        new = M[pos - 1]

        for j in roots:
            if j > new:
                parents[j] = new
        roots = [j for j in roots if j < new] + [new]
        placed.add(new)
        steps.append(
            PhiState(k, U, V, M, new, tuple(sorted(placed)), tuple(sorted(roots)),
                     tuple(sorted(parents.items())))
        )
    return steps


def phi(perm: Sequence[int]) -> IncreasingTree:
    steps = phi_trace(perm)
    last = steps[-1]
    parents = dict(last.parents)
    n = len(last.I)
    return IncreasingTree(tuple(parents.get(v, 0) for v in range(1, n + 1)))


def psi(tree: IncreasingTree | Sequence[int]) -> Permutation:
    if not isinstance(tree, IncreasingTree):
        tree = IncreasingTree(tuple(tree))
    n = tree.n
    if n < 1:
        raise ValueError("psi needs n >= 1")
    children: dict[int, list[int]] = {v: [] for v in range(n + 1)}
    for v, par in enumerate(tree.parents, start=1):
        children[par].append(v)

    roots = set(children[0])
    present = set(range(1, n + 1))
    size: dict[int, int] = {}
    in_U: dict[int, bool] = {}
    for k in range(n, 1, -1):
        top = max(roots)
        roots.remove(top)
        roots.update(children[top])
        present.remove(top)
        free = [m for m in range(1, n + 1) if m not in present]
        U, V = _split(free, roots)
        in_U[k] = top in U
        size[k] = len(U) if in_U[k] else len(V)

    c = [0] * (n + 2)  # c[k] = c_k
    if n >= 2:
        c[n - 1] = 1 if len(children[0]) % 2 == 0 else 0
    for k in range(n - 2, 0, -1):
        big = c[k + 1] > c[k + 2]
        if in_U[k + 2] == big:
            c[k] = size[k + 1]
        else:
            c[k] = n - k - size[k + 1]
    return code_to_perm(c[1 : n + 1])


def _fmt_set(s) -> str:
    if s is None:
        return "-"
    return "{" + ",".join(map(str, sorted(s))) + "}"


def format_trace(steps: Sequence[PhiState]) -> str:
    rows = [("k", "M_k", "i_k", "J_k")]
    rows += [(str(s.k), _fmt_set(s.M), str(s.i_k), _fmt_set(s.J)) for s in steps]
    widths = [max(len(r[i]) for r in rows) for i in range(4)]
    return "\n".join("  ".join(cell.ljust(w) for cell, w in zip(r, widths)).rstrip() for r in rows)


def verify_bijection(max_n: int) -> list[Check]:
    """Exhaustive checks of phi and psi over S_n and all trees, n = 1..max_n."""
    if not 1 <= max_n <= 8:
        raise ValueError("verify_bijection: max_n must be in 1..8")
    checks = []
    for n in range(1, max_n + 1):
        seen: set[tuple[int, ...]] = set()
        round_trip = transport = root_law = down_up = leaf = True
        even_hist: Counter = Counter()
        bad: dict[str, tuple] = {}
        for perm in itertools.permutations(range(1, n + 1)):
            steps = phi_trace(perm)
            tree = phi(perm)
            seen.add(tree.parents)
            deg = tree.degrees()
            evens = sum(1 for d in deg if d % 2 == 0)
            even_hist[evens] += 1
            if psi(tree) != perm:
                round_trip = False
                bad.setdefault("round trip", perm)
            if evens != 2 * ext_peaks(perm) + 1:
                transport = False
                bad.setdefault("transport", perm)
            if n >= 2 and (deg[0] % 2 == 0) != (perm[n - 2] > perm[n - 1]):
                root_law = False
                bad.setdefault("root parity", perm)
            if is_down_up(perm) and any(d % 2 for d in deg[1:]):
                down_up = False
                bad.setdefault("down-up", perm)
            if deg[steps[0].i_k] != 0:
                leaf = False
                bad.setdefault("i_1 leaf", perm)

        total = math.factorial(n)
        inverse = all(phi(psi(t)).parents == t.parents for t in enumerate_increasing_trees(n))
        row = peaks_oracle(n)
        hist_ok = dict(even_hist) == {2 * k + 1: v for k, v in row.items() if v}

        def add(name, ok, detail=""):
            if not ok and name in bad:
                detail = f"counterexample {bad[name]}"
            checks.append(Check("bijection", f"n={n} {name}", ok, detail))

        add("phi injective", len(seen) == total, f"{len(seen)} trees from {total} permutations")
        add("round trip", round_trip)
        add("phi(psi(T)) = T", inverse)
        add("transport", transport, "even-degree vertices = 2*ext_peaks + 1")
        add("even-degree histogram", hist_ok, str(dict(sorted(even_hist.items()))))
        add("root parity", root_law)
        add("down-up", down_up, "non-root vertices of even degree")
        add("i_1 leaf", leaf)
    return checks
