"""Seeded random polynomials and derivations for property checks.

Coefficients are integers in ``[-5, 5]``; the default seed spells ``WN`` in
ASCII.
"""

from __future__ import annotations

import random
from typing import Optional, Sequence

from .arith import Poly, monomials_of_degree, monomials_up_to
from .deriv import Deriv

DEFAULT_SEED = 0x574E
COEFF_RANGE = 5


def make_rng(seed: Optional[int] = None) -> random.Random:
    return random.Random(DEFAULT_SEED if seed is None else seed)


def _coeff(rng: random.Random, nonzero: bool = False) -> int:
    while True:
        c = rng.randint(-COEFF_RANGE, COEFF_RANGE)
        if c or not nonzero:
            return c


def random_poly(rng: random.Random, n: int, max_degree: int = 3, density: float = 0.5,
                homogeneous: Optional[int] = None, variables: Optional[Sequence[int]] = None) -> Poly:
    """Random polynomial; ``variables`` (1-based) restricts which variables occur."""
    monos = monomials_of_degree(n, homogeneous) if homogeneous is not None else monomials_up_to(n, max_degree)
    if variables is not None:
        allowed = {v - 1 for v in variables}
        monos = [m for m in monos if all(a == 0 or k in allowed for k, a in enumerate(m))]
    return Poly(n, {m: _coeff(rng) for m in monos if rng.random() < density})


def random_deriv(rng: random.Random, n: int, max_degree: int = 3, density: float = 0.4) -> Deriv:
    return Deriv([random_poly(rng, n, max_degree, density) for _ in range(n)])


def random_homogeneous_deriv(rng: random.Random, n: int, i: int, density: float = 0.6) -> Deriv:
    """Nonzero element of ``W^[i]``."""
    while True:
        d = Deriv([random_poly(rng, n, homogeneous=i + 1, density=density) for _ in range(n)])
        if d:
            return d


def random_weight_deriv(rng: random.Random, n: int, max_degree: int = 2) -> Deriv:
    """Nonzero multihomogeneous derivation ``sum_j c_j x^(w + e_j) d/dx_j``.

    The weight ``w = alpha - e_j`` is read off a random monomial derivation.
    """
    while True:
        deg = rng.randint(0, max_degree)
        alpha = rng.choice(monomials_of_degree(n, deg))
        j = rng.randrange(n)
        w = list(alpha)
        w[j] -= 1
        coeffs = []
        for k in range(n):
            exp = list(w)
            exp[k] += 1
            if min(exp) < 0:
                coeffs.append(Poly.zero(n))
            else:
                c = _coeff(rng, nonzero=(k == j))
                coeffs.append(Poly.monomial(exp, c))
        d = Deriv(coeffs)
        if d:
            return d
