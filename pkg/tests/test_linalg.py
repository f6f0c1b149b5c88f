from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from wnlie.deriv import euler, parse_deriv
from wnlie.grading import component_basis
from wnlie.linalg import (
    Frame,
    FrameOverflow,
    Mat,
    kernel,
    rank,
    rref,
    span_vectors,
    subspace_contains,
    subspace_equal,
    subspace_intersection,
    subspace_le,
    subspace_span,
    subspace_sum,
    zero_subspace,
)
from wnlie.sampling import make_rng, random_deriv

matrices = st.integers(1, 4).flatmap(
    lambda c: st.lists(st.lists(st.integers(-3, 3), min_size=c, max_size=c), min_size=1, max_size=4)
)


def D(text, n=2):
    return parse_deriv(text, n)


class TestRref:
    def test_identity(self):
        m, r = rref(Mat.identity(3))
        assert m == Mat.identity(3) and r == 3

    def test_zero(self):
        m, r = rref(Mat.zeros(2, 3))
        assert m == Mat.zeros(2, 3) and r == 0

    def test_hand_example(self):
        m, r = rref(Mat([[1, 2], [2, 4]]))
        assert m == Mat([[1, 2], [0, 0]]) and r == 1

    @given(matrices)
    def test_idempotent(self, rows):
        m = Mat(rows)
        r1, k = rref(m)
        r2, k2 = rref(r1)
        assert r1 == r2 and k == k2 == rank(m)

    @given(matrices)
    def test_kernel(self, rows):
        m = Mat(rows)
        ker = kernel(m)
        assert len(ker) == m.cols - rank(m)
        for v in ker:
            assert all(sum(a * b for a, b in zip(row, v)) == 0 for row in m.data)


class TestSubspaces:
    frame = Frame(2, 2)

    def test_span_examples(self):
        assert subspace_span(self.frame, [D("[1, 0]"), D("[2, 0]")]).dim == 1
        assert subspace_span(self.frame, []).dim == 0
        assert subspace_span(self.frame, component_basis(2, 0).basis).dim == 4

    def test_contains_examples(self):
        s = subspace_span(self.frame, [D("[x, 0]"), D("[0, y]")])
        assert subspace_contains(s, D("[x, 0]"))
        assert not subspace_contains(subspace_span(self.frame, [D("[x, 0]")]), D("[1, 0]"))
        assert subspace_contains(s, euler(2))

    def test_sum_example(self):
        a = subspace_span(self.frame, [D("[1, 0]")])
        b = subspace_span(self.frame, [D("[0, 1]")])
        assert subspace_sum(a, b).dim == 2

    def test_overflow_is_recoverable(self):
        with pytest.raises(FrameOverflow):
            self.frame.coords(D("[x^3, 0]"))
        assert not subspace_contains(subspace_span(self.frame, [D("[1, 0]")]), D("[x^3, 0]"))

    def test_frame_order_and_basis(self):
        f = Frame(2, 1)
        assert f.dim == 6
        assert [f.basis_deriv(i) for i in range(2)] == [D("[1, 0]"), D("[0, 1]")]
        d = D("[3*x - 1, 2/5*y]")
        assert f.deriv(f.coords(d)) == d

    def test_zero_space(self):
        z = zero_subspace(self.frame)
        assert z.dim == 0 and subspace_le(z, subspace_span(self.frame, [D("[1, 0]")]))

    def test_seeded_properties(self):
        rng = make_rng()
        frame = Frame(2, 2)
        for _ in range(25):
            vs = [random_deriv(rng, 2, 2, 0.3) for _ in range(rng.randint(1, 5))]
            ws = [random_deriv(rng, 2, 2, 0.3) for _ in range(rng.randint(1, 5))]
            us = [random_deriv(rng, 2, 2, 0.3) for _ in range(rng.randint(1, 3))]
            a, b, c = (subspace_span(frame, x) for x in (vs, ws, us))
            assert all(subspace_contains(a, v) for v in vs)
            assert subspace_equal(subspace_sum(a, b), subspace_sum(b, a))
            assert subspace_equal(subspace_sum(subspace_sum(a, b), c), subspace_sum(a, subspace_sum(b, c)))
            assert subspace_equal(subspace_sum(a, a), a)
            inter = subspace_intersection(a, b)
            assert subspace_sum(a, b).dim + inter.dim == a.dim + b.dim
            assert subspace_le(inter, a) and subspace_le(inter, b)

    def test_rref_basis_is_canonical(self):
        frame = Frame(2, 1)
        a = subspace_span(frame, [D("[x, y]"), D("[1, x]")])
        b = subspace_span(frame, [D("[2+2*x, 2*x + 2*y]"), D("[-1, -x]")])
        assert subspace_equal(a, b)
        assert a.basis() == b.basis()

    def test_vectors_and_fractions(self):
        frame = Frame(1, 1)
        s = span_vectors(frame, [{0: Fraction(1, 3)}, {0: 2, 1: 1}])
        assert s.dim == 2
