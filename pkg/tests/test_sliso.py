from fractions import Fraction

import pytest

from wnlie.arith import Poly
from wnlie.deriv import Deriv, bracket, euler
from wnlie.linalg import Mat
from wnlie.sampling import make_rng
from wnlie.sliso import NotInL, commutator, phi, phi_table, verify_iso
from wnlie.subalg import l_basis


def unit(size, i, j):
    m = [[0] * size for _ in range(size)]
    m[i][j] = 1
    return Mat(m)


@pytest.mark.parametrize("n", [2, 3, 4])
def test_iso(n):
    rep = verify_iso(n)
    assert rep["passed"], rep["failures"]
    assert rep["dim_L"] == n * n + 2 * n == rep["rank"] == rep["dim_sl"]
    assert rep["pairs_checked"] == (n * n + 2 * n) ** 2


def test_basis_images():
    n = 2
    assert phi(Deriv.coordinate(2, 1)) == unit(3, 2, 0)
    xy = Deriv.monomial((1, 0), 2)  # x d/dy
    assert phi(xy) == unit(3, 0, 1)
    xx = Deriv.monomial((1, 0), 1)
    shift = Fraction(1, n + 1)
    assert phi(xx) == Mat([[1 - shift, 0, 0], [0, -shift, 0], [0, 0, -shift]])
    assert phi(Poly.var(2, 2) * euler(2)) == Mat([[0, 0, 0], [0, 0, -1], [0, 0, 0]])
    assert phi(euler(2)) == Mat([[Fraction(1, 3), 0, 0], [0, Fraction(1, 3), 0], [0, 0, Fraction(-2, 3)]])


def test_linear():
    rng = make_rng()
    basis = l_basis(3)
    for _ in range(10):
        cu = [rng.randint(-5, 5) for _ in basis]
        cv = [rng.randint(-5, 5) for _ in basis]
        u = sum((b * c for b, c in zip(basis, cu)), Deriv.zero(3))
        v = sum((b * c for b, c in zip(basis, cv)), Deriv.zero(3))
        alpha, beta = Fraction(rng.randint(-4, 4), 3), rng.randint(-4, 4)
        lhs = phi(u * alpha + v * beta)
        pu, pv = phi(u), phi(v)
        rhs = Mat([[alpha * a + beta * b for a, b in zip(r1, r2)] for r1, r2 in zip(pu.data, pv.data)])
        assert lhs == rhs


def test_bracket_rule_before_phi():
    # [x_i d/dx_j, x_k E] = delta_jk x_i E
    n = 3
    e = euler(n)
    for i in range(1, n + 1):
        for j in range(1, n + 1):
            alpha = [0] * n
            alpha[i - 1] = 1
            a = Deriv.monomial(alpha, j)
            for k in range(1, n + 1):
                expected = Poly.var(n, i) * e if j == k else Deriv.zero(n)
                assert bracket(a, Poly.var(n, k) * e) == expected


def test_outside_L():
    with pytest.raises(NotInL):
        phi(Deriv.monomial((2, 0), 1))
    with pytest.raises(NotInL):
        phi(Deriv.monomial((3, 0), 2))


def test_table_and_commutator():
    table = phi_table(2)
    assert len(table) == 8
    a, b = unit(3, 0, 1), unit(3, 1, 0)
    assert commutator(a, b) == Mat([[1, 0, 0], [0, -1, 0], [0, 0, 0]])
