import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from grammarcalc.bijection import (
    PhiConstructionError,
    code_to_perm,
    format_trace,
    perm_code,
    phi,
    phi_trace,
    psi,
    verify_bijection,
)
from grammarcalc.combinat import IncreasingTree, enumerate_increasing_trees, perm_stats

EXAMPLE = (5, 3, 4, 6, 7, 2, 1)
EXAMPLE_TREE = (0, 1, 2, 0, 4, 2, 2)

perms = st.integers(1, 8).flatmap(lambda n: st.permutations(range(1, n + 1))).map(tuple)


class TestCode:
    def test_example(self):
        assert perm_code(EXAMPLE) == (4, 2, 2, 2, 2, 1, 0)
        assert code_to_perm((4, 2, 2, 2, 2, 1, 0)) == EXAMPLE

    def test_extremes(self):
        assert perm_code(range(1, 6)) == (0,) * 5
        assert perm_code((5, 4, 3, 2, 1)) == (4, 3, 2, 1, 0)
        assert code_to_perm((0, 0, 0)) == (1, 2, 3)
        assert code_to_perm((1, 0)) == (2, 1)

    def test_invalid(self):
        with pytest.raises(ValueError, match="invalid code"):
            code_to_perm((3, 0, 0))
        with pytest.raises(ValueError, match="invalid code"):
            code_to_perm((0, 1))

    @given(perms)
    def test_round_trip(self, p):
        c = perm_code(p)
        assert all(0 <= ck <= len(p) - k for k, ck in enumerate(c, start=1))
        assert code_to_perm(c) == p


class TestPhi:
    def test_example(self):
        assert phi(EXAMPLE).parents == EXAMPLE_TREE

    def test_single(self):
        assert phi((1,)).parents == (0,)

    def test_21(self):
        t = phi((2, 1))
        assert t.even_degree_count() == 3

    def test_trace_rows(self):
        steps = phi_trace(EXAMPLE)
        table = [(s.k, s.M, s.i_k, s.J) for s in steps]
        assert table == [
            (1, None, 3, (3,)),
            (2, (4, 5, 6, 7), 6, (3, 6)),
            (3, (1, 2, 7), 7, (3, 6, 7)),
            (4, (1, 2), 2, (2,)),
            (5, (1,), 1, (1,)),
            (6, (4, 5), 5, (1, 5)),
            (7, (4,), 4, (1, 4)),
        ]
        assert [s.I for s in steps][:3] == [(3,), (3, 6), (3, 6, 7)]

    def test_trace_invariants(self):
        for p in itertools.permutations(range(1, 6)):
            steps = phi_trace(p)
            for s in steps:
                assert len(s.I) == s.k
                if s.M is not None:
                    assert not set(s.U) & set(s.V)
                    free = set(range(1, 6)) - set(s.I) | {s.i_k}
                    assert set(s.U) | set(s.V) == free
            final = dict(steps[-1].parents)
            t = phi(p)
            assert {v: t.parent(v) for v in final} == final
            assert all(t.parent(v) == 0 for v in steps[-1].J)

    def test_trace_table(self):
        text = format_trace(phi_trace(EXAMPLE))
        lines = text.splitlines()
        assert lines[0].split() == ["k", "M_k", "i_k", "J_k"]
        assert lines[2].split() == ["2", "{4,5,6,7}", "6", "{3,6}"]
        assert lines[1].split() == ["1", "-", "3", "{3}"]

    def test_error_carries_step(self):
        err = PhiConstructionError(4, "boom", {"M": (1,)})
        assert err.step == 4 and "step 4" in str(err)

    @settings(max_examples=200)
    @given(perms)
    def test_statistics(self, p):
        t = phi(p)
        assert t.even_degree_count() == 2 * perm_stats(p).ext_peaks + 1
        assert psi(t) == p


class TestPsi:
    def test_example(self):
        assert psi(IncreasingTree(EXAMPLE_TREE)) == EXAMPLE
        assert psi(EXAMPLE_TREE) == EXAMPLE

    def test_single_edge(self):
        assert psi(IncreasingTree((0,))) == (1,)

    def test_n2(self):
        for parents in ((0, 1), (0, 0)):
            t = IncreasingTree(parents)
            assert phi(psi(t)) == t
        assert {psi(IncreasingTree(p)) for p in ((0, 1), (0, 0))} == {(1, 2), (2, 1)}

    def test_malformed(self):
        with pytest.raises(ValueError, match="not an increasing tree"):
            psi((0, 3, 1))

    @pytest.mark.parametrize("n", range(1, 7))
    def test_inverse_on_trees(self, n):
        for t in enumerate_increasing_trees(n):
            assert phi(psi(t)) == t


class TestVerify:
    def test_small(self):
        checks = verify_bijection(4)
        assert all(c.passed for c in checks), [c.line() for c in checks if not c.passed]
        assert {c.name.split(" ", 1)[1] for c in checks} >= {
            "phi injective", "round trip", "transport", "root parity", "down-up"}

    def test_trivial(self):
        assert all(c.passed for c in verify_bijection(1))

    def test_bounds(self):
        with pytest.raises(ValueError):
            verify_bijection(9)
