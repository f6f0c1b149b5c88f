from math import comb

import pytest
from hypothesis import given

from wnlie import grading
from wnlie.arith import Poly
from wnlie.deriv import Deriv, bracket, divergence, euler, parse_deriv
from wnlie.grading import (
    NotHomogeneous,
    component_basis,
    component_dim,
    component_space,
    graded_parts,
    grading_index,
    is_euler_multiple,
    mn_project,
    module_generate,
    n_dim,
    submodule_types,
    verify_bracket_table,
    verify_euler_identities,
    weight_basis_w0,
)
from wnlie.linalg import Frame, subspace_equal, subspace_span, zero_subspace
from wnlie.sampling import make_rng, random_homogeneous_deriv

from conftest import derivs


def D(t, n=2):
    return parse_deriv(t, n)


class TestGradedParts:
    def test_examples(self):
        assert graded_parts(D("[1, 1 + x*y]")) == {-1: D("[1, 1]"), 1: D("[0, x*y]")}
        assert graded_parts(euler(3)) == {0: euler(3)}
        assert graded_parts(Deriv.zero(2)) == {}

    @given(derivs(3))
    def test_reassembly_and_membership(self, d):
        parts = graded_parts(d)
        assert sum(parts.values(), Deriv.zero(3)) == d
        for i, p in parts.items():
            assert grading_index(p) == i
            frame = Frame(3, i + 1)
            assert component_space(frame, i).contains(p)

    @given(derivs(2), derivs(2))
    def test_grading_respects_bracket(self, a, b):
        for i, pa in graded_parts(a).items():
            for j, pb in graded_parts(b).items():
                w = bracket(pa, pb)
                assert w.is_zero() or grading_index(w) == i + j


class TestMN:
    def test_examples(self):
        f = Poly.monomial((1, 2))
        d = f * euler(2)
        assert mn_project(d, 3) == (Deriv.zero(2), d)
        m = D("[x^2, -2*x*y]")
        assert divergence(m).is_zero()
        assert mn_project(m, 1) == (m, Deriv.zero(2))

    def test_not_homogeneous(self):
        with pytest.raises(NotHomogeneous):
            mn_project(D("[1, x]"), 0)

    def test_dimension_formulas(self):
        for n in range(1, 5):
            for i in range(-1, 5):
                comp = component_basis(n, i)
                assert comp.dim == component_dim(n, i) == n * comb(n + i, n - 1)
                if i >= 0:
                    assert len(comp.n_basis) == n_dim(n, i) == comb(n + i - 1, n - 1)
                    assert len(comp.m_basis) + len(comp.n_basis) == comp.dim

    def test_projections_seeded(self):
        rng = make_rng()
        for n in (2, 3, 4):
            for i in range(0, 4):
                d = random_homogeneous_deriv(rng, n, i)
                m, e = mn_project(d, i)
                assert m + e == d
                assert divergence(m).is_zero()
                assert is_euler_multiple(e)
                assert mn_project(m, i)[0] == m and mn_project(e, i)[1] == e

    def test_m_part_vanishes_in_one_variable(self):
        # n = 1: W^[i] is spanned by x^(i+1) d/dx = x^i E, so M_i = 0
        for i in range(4):
            assert component_basis(1, i).m_basis == ()


class TestModules:
    def test_examples(self):
        frame = Frame(2, 1)
        g = module_generate(frame, subspace_span(frame, [D("[1, 0]")]))
        assert g.dim == 2 and subspace_equal(g, component_space(frame, -1))
        g = module_generate(frame, subspace_span(frame, [euler(2)]))
        assert g.dim == 1
        assert module_generate(frame, zero_subspace(frame)).dim == 0

    def test_fixpoint(self):
        frame = Frame(3, 2)
        g = module_generate(frame, subspace_span(frame, [D("[x*y, 0, z^2]", 3)]))
        for a in weight_basis_w0(3):
            for b in g.basis():
                assert g.contains(bracket(a, b))

    @pytest.mark.parametrize("n,i", [(2, 0), (2, 1), (2, 2), (3, 0), (3, 1)])
    def test_generated_submodules_are_known(self, n, i):
        counts = submodule_types(n, i)
        assert "other" not in counts

    def test_m_and_n_are_irreducible_pieces(self):
        frame = Frame(2, 3)
        m = component_space(frame, 2, "M")
        assert subspace_equal(module_generate(frame, subspace_span(frame, [m.basis()[0]])), m)


class TestTables:
    def test_euler_identities(self):
        for n in (2, 3):
            assert verify_euler_identities(n, 3)["passed"]

    def test_bracket_table_small(self):
        rep = verify_bracket_table(2, 2)
        assert rep["passed"]
        assert set(rep["table"]) == {f"{i},{j}" for i in range(-1, 3) for j in range(i, 3)}
        for v in rep["table"].values():
            assert set(v) >= {"lhs_dim", "rhs_dim", "equal"}

    def test_exceptions_are_present(self):
        rep = verify_bracket_table(2, 2)["table"]
        assert rep["0,0"]["cells"]["M0,N0"]["rhs"] == "0"
        assert rep["0,2"]["cells"]["M0,N2"]["rhs"] == "N2"
        assert rep["1,1"]["cells"]["N1,N1"]["rhs"] == "0"
        assert rep["1,2"]["cells"]["M1,N2"]["rhs"] == "W3"
        assert rep["0,0"]["cells"]["W0,W0"]["rhs"] == "M0"

    def test_wrong_rule_detected(self, monkeypatch):
        real = grading.expected_bracket

        def broken(n, i, pi, j, pj):
            if (pi, pj) == ("N", "N") and i != j:
                return i + j, "M"
            return real(n, i, pi, j, pj)

        monkeypatch.setattr(grading, "expected_bracket", broken)
        rep = verify_bracket_table(2, 2)
        assert not rep["passed"]
        assert not rep["table"]["0,1"]["equal"]
