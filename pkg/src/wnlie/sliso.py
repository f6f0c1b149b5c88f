"""The isomorphism from ``L = W^[-1] + W^[0] + N_1`` onto traceless matrices.

On the canonical basis::

    d/dx_i     -> E_{n+1,i}
    x_i d/dx_j -> E_{ij}               (i != j)
    x_i d/dx_i -> E_{ii} - I/(n+1)
    x_i E      -> -E_{i,n+1}

Matrix indices are 1-based in these formulas and 0-based in code.
"""

from __future__ import annotations

from fractions import Fraction
from typing import List, Tuple

from .deriv import Deriv, bracket, divergence
from .grading import graded_parts, is_euler_multiple
from .linalg import Mat, rank
from .subalg import l_basis


class NotInL(ValueError):
    """The derivation has a graded part outside ``W^[-1] + W^[0] + N_1``."""


def _unit(size: int, i: int, j: int) -> List[List[Fraction]]:
    m = [[Fraction(0)] * size for _ in range(size)]
    m[i][j] = Fraction(1)
    return m


def commutator(a: Mat, b: Mat) -> Mat:
    return a * b - b * a


def phi(d: Deriv) -> Mat:
    n = d.n
    size = n + 1
    out = [[Fraction(0)] * size for _ in range(size)]
    for idx, part in graded_parts(d).items():
        if idx == -1:
            for i, c in enumerate(part.coeffs):
                out[n][i] += c.constant_term()
        elif idx == 0:
            shift = Fraction(0)
            for j, c in enumerate(part.coeffs):
                for exp, v in c.terms.items():
                    i = exp.index(1)
                    out[i][j] += v
                    if i == j:
                        shift += v
            # the -I/(n+1) correction of every diagonal basis element
            for k in range(size):
                out[k][k] -= shift / size
        elif idx == 1:
            if not is_euler_multiple(part):
                raise NotInL(f"degree-2 part {part} is not a multiple of the Euler field")
            f = divergence(part).scale(Fraction(1, n + 1))
            for exp, v in f.terms.items():
                out[exp.index(1)][n] -= v
        else:
            raise NotInL(f"graded part of index {idx}: {part}")
    return Mat(out, size)


def verify_iso(n: int) -> dict:
    """Exhaustive check over all ordered basis pairs of ``L``, plus rank."""
    if n < 2:
        raise ValueError("n must be at least 2")
    basis = l_basis(n)
    images = [phi(b) for b in basis]
    traceless = all(m.trace() == 0 for m in images)
    failures = []
    checked = 0
    for a, ma in zip(basis, images):
        for b, mb in zip(basis, images):
            checked += 1
            if phi(bracket(a, b)) != commutator(ma, mb):
                failures.append(f"[{a}, {b}]")
    flat = Mat([[v for row in m.data for v in row] for m in images], (n + 1) ** 2)
    rk = rank(flat)
    dim = n * n + 2 * n
    return {
        "n": n,
        "dim_L": len(basis),
        "pairs_checked": checked,
        "pairs_failed": len(failures),
        "failures": failures[:20],
        "rank": rk,
        "dim_sl": (n + 1) ** 2 - 1,
        "traceless": traceless,
        "passed": not failures and rk == dim == len(basis) and traceless,
    }


def phi_table(n: int) -> List[Tuple[str, List[List[str]]]]:
    """Images of the canonical basis, as printable rows."""
    return [(str(b), [[str(v) for v in row] for row in phi(b).data]) for b in l_basis(n)]
