"""The standard grading of W_n and the W^[0]-module structure of its components.

``W^[i]`` consists of derivations whose coefficients are homogeneous of
degree ``i + 1``.  For ``i >= 0`` it splits as ``M_i + N_i``: the
divergence-free part and the polynomial multiples of the Euler field.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import comb
from typing import Dict, List, Optional, Tuple

from .arith import Poly, monomials_of_degree
from .deriv import Deriv, bracket, divergence, euler
from .linalg import (
    Echelon,
    Frame,
    Mat,
    Subspace,
    kernel,
    subspace_equal,
    subspace_span,
    zero_subspace,
)


class NotHomogeneous(ValueError):
    pass


def graded_parts(d: Deriv) -> Dict[int, Deriv]:
    """Split into homogeneous components keyed by grading index (degree - 1)."""
    n = d.n
    parts: Dict[int, List[Dict]] = {}
    for j, c in enumerate(d.coeffs):
        for alpha, v in c.terms.items():
            idx = sum(alpha) - 1
            parts.setdefault(idx, [dict() for _ in range(n)])[j][alpha] = v
    return {i: Deriv([Poly(n, t) for t in parts[i]]) for i in sorted(parts)}


def grading_index(d: Deriv) -> Optional[int]:
    """Index ``i`` if ``d`` is nonzero and lies in ``W^[i]``, else None."""
    parts = graded_parts(d)
    if len(parts) != 1:
        return None
    return next(iter(parts))


def component_dim(n: int, i: int) -> int:
    return n * comb(n + i, n - 1) if i >= -1 else 0


def n_dim(n: int, i: int) -> int:
    return comb(n + i - 1, n - 1) if i >= 0 else 0


def mn_project(d: Deriv, i: int) -> Tuple[Deriv, Deriv]:
    """``(m_part, n_part)`` of a homogeneous ``d`` in ``W^[i]``.

    ``n_part = div(d) / (i + n) * E``, using ``div(f E) = (deg f + n) f``.
    """
    if i < 0:
        raise ValueError("M/N split is defined for i >= 0")
    if d and grading_index(d) != i:
        raise NotHomogeneous(f"{d} is not homogeneous of grading index {i}")
    n = d.n
    f = divergence(d).scale(Fraction(1, i + n))
    n_part = f * euler(n)
    return d - n_part, n_part


def is_euler_multiple(d: Deriv) -> bool:
    """``d = f * E`` for a polynomial ``f``, i.e. ``x_i d_j = x_j d_i`` for all i, j."""
    n = d.n
    xs = [Poly.var(n, k) for k in range(1, n + 1)]
    return all(
        xs[i] * d.coeffs[j] == xs[j] * d.coeffs[i] for i in range(n) for j in range(i + 1, n)
    ) and all(c.constant_term() == 0 for c in d.coeffs)


@dataclass(frozen=True)
class GradedComponent:
    n: int
    i: int
    basis: Tuple[Deriv, ...]
    m_basis: Tuple[Deriv, ...]
    n_basis: Tuple[Deriv, ...]

    @property
    def dim(self) -> int:
        return len(self.basis)

    def frame(self) -> Frame:
        return Frame(self.n, max(self.i + 1, 0))


@lru_cache(maxsize=None)
def component_basis(n: int, i: int) -> GradedComponent:
    if i < -1:
        raise ValueError("grading index must be >= -1")
    basis = tuple(
        Deriv.monomial(alpha, j + 1) for alpha in monomials_of_degree(n, i + 1) for j in range(n)
    )
    if i == -1:
        return GradedComponent(n, i, basis, (), ())
    e = euler(n)
    n_basis = tuple(Poly.monomial(beta) * e for beta in monomials_of_degree(n, i))
    # divergence as a matrix from the monomial basis to degree-i monomials
    targets = {beta: r for r, beta in enumerate(monomials_of_degree(n, i))}
    rows = [[Fraction(0)] * len(basis) for _ in targets]
    for c, b in enumerate(basis):
        for beta, v in divergence(b).terms.items():
            rows[targets[beta]][c] += v
    m_basis = tuple(
        sum((b * v for b, v in zip(basis, vec) if v), Deriv.zero(n))
        for vec in kernel(Mat(rows, len(basis)))
    )
    return GradedComponent(n, i, basis, m_basis, n_basis)


def component_space(frame: Frame, i: int, part: str = "W") -> Subspace:
    """``W^[i]``, ``M_i`` or ``N_i`` as a subspace of ``frame``."""
    comp = component_basis(frame.n, i)
    vecs = {"W": comp.basis, "M": comp.m_basis, "N": comp.n_basis}[part]
    return subspace_span(frame, vecs)


def weight_basis_w0(n: int) -> List[Deriv]:
    """Monomial basis ``x_i d/dx_j`` of ``W^[0]``."""
    return list(component_basis(n, 0).basis)


def module_generate(frame: Frame, seed: Subspace) -> Subspace:
    """Smallest subspace containing ``seed`` and closed under ``ad(x_i d/dx_j)``."""
    acting = weight_basis_w0(frame.n)
    ech = seed.copy_echelon()
    queue = seed.basis()
    while queue:
        v = queue.pop()
        for a in acting:
            w = bracket(a, v)
            if w and ech.add(frame.coords(w)):
                queue.append(w)
    return Subspace(frame, ech)


# --- the bracket table -------------------------------------------------------


def _pieces(n: int, i: int) -> Dict[str, Tuple[Deriv, ...]]:
    comp = component_basis(n, i)
    if i == -1:
        return {"W": comp.basis}
    return {"W": comp.basis, "M": comp.m_basis, "N": comp.n_basis}


def _bracket_span(frame: Frame, left, right, symmetric: bool) -> Subspace:
    ech = Echelon()
    for a_idx, a in enumerate(left):
        others = right[a_idx + 1:] if symmetric else right
        for b in others:
            w = bracket(a, b)
            if w:
                ech.add(frame.coords(w))
    return Subspace(frame, ech)


def expected_bracket(n: int, i: int, pi: str, j: int, pj: str) -> Tuple[int, str]:
    """Right-hand side ``(index, part)`` of ``[P_i, Q_j]``; part ``"0"`` means zero.

    Encodes the product table for M, N components with its exceptions, the
    ``[W^[-1], N_j]`` rule, and ``[W^[i], W^[j]] = W^[i+j]`` with the
    ``i = j = 0`` and ``i = j = -1`` cases.
    """
    k = i + j
    if pi == "W" and pj == "W":
        if i == j == -1:
            return k, "0"
        if i == j == 0:
            return k, "M"
        return k, "W"
    if pi == "W" and i == -1 and pj == "N":
        return k, "W"
    if pi == pj == "M":
        return k, "M"
    if pi == pj == "N":
        return (k, "0") if i == j else (k, "N")
    if pi == "N" and pj == "M":
        # [N_i, M_j] = [M_j, N_i]
        return expected_bracket(n, j, "M", i, "N")
    if pi == "M" and pj == "N":
        if i == 0 and j == 0:
            return k, "0"
        if i == 0:
            return k, "N"
        if j == 0:
            return k, "M"
        return k, "W"
    raise ValueError(f"no table entry for [{pi}_{i}, {pj}_{j}]")


def _cells(i: int, j: int) -> List[Tuple[str, str]]:
    if i == -1 and j == -1:
        return [("W", "W")]
    if i == -1:
        return [("W", "W"), ("W", "N")]
    cells = [("W", "W"), ("M", "M"), ("N", "N"), ("M", "N")]
    if i != j:
        cells.append(("N", "M"))
    return cells


def verify_bracket_table(n: int, imax: int) -> dict:
    """For every ``-1 <= i <= j <= imax``, compare spans of basis-pair brackets
    with the table's right-hand side.

    Bilinearity makes basis pairs sufficient.  Report keys are ``"i,j"``;
    each entry carries the ``[W^[i], W^[j]]`` comparison at the top level and
    every M/N cell under ``"cells"``.
    """
    if n < 2 or imax < 1:
        raise ValueError("need n >= 2 and imax >= 1")
    report = {}
    all_ok = True
    for i in range(-1, imax + 1):
        for j in range(i, imax + 1):
            k = i + j
            frame = Frame(n, max(k + 1, 0))
            pi, pj = _pieces(n, i), _pieces(n, j)
            cells = {}
            for a, b in _cells(i, j):
                idx, part = expected_bracket(n, i, a, j, b)
                lhs = _bracket_span(frame, pi[a], pj[b], symmetric=(i == j and a == b))
                if part == "0":
                    rhs = zero_subspace(frame)
                else:
                    rhs = component_space(frame, idx, part)
                eq = subspace_equal(lhs, rhs)
                all_ok = all_ok and eq
                cells[f"{a}{i},{b}{j}"] = {
                    "lhs_dim": lhs.dim,
                    "rhs_dim": rhs.dim,
                    "rhs": "0" if part == "0" else f"{part}{idx}",
                    "equal": eq,
                }
            top = cells[f"W{i},W{j}"]
            report[f"{i},{j}"] = {
                "lhs_dim": top["lhs_dim"],
                "rhs_dim": top["rhs_dim"],
                "equal": all(c["equal"] for c in cells.values()),
                "cells": cells,
            }
    return {"n": n, "imax": imax, "table": report, "passed": all_ok}


def submodule_types(n: int, i: int) -> Dict[str, int]:
    """Generate a W^[0]-submodule from every monomial basis vector of ``W^[i]``
    and classify each result as ``0``, ``M``, ``N`` or ``W``.

    Returns counts per class; any other outcome is counted under ``"other"``.
    """
    frame = Frame(n, i + 1)
    known = {"W": component_space(frame, i, "W")}
    if i >= 0:
        known["M"] = component_space(frame, i, "M")
        known["N"] = component_space(frame, i, "N")
    counts: Dict[str, int] = {}
    seeds = list(component_basis(n, i).basis)
    if i >= 0:
        seeds += list(component_basis(n, i).m_basis) + list(component_basis(n, i).n_basis)
    for d in seeds:
        gen = module_generate(frame, subspace_span(frame, [d]))
        label = "0" if gen.dim == 0 else next(
            (name for name, sp in known.items() if subspace_equal(gen, sp)), "other"
        )
        counts[label] = counts.get(label, 0) + 1
    return counts


def verify_euler_identities(n: int, max_degree: int) -> dict:
    """``E(f) = m f``, ``[E, D] = i D`` and ``div(f E) = (m + n) f`` for every
    monomial ``f`` of degree ``m <= max_degree`` and every monomial derivation
    ``D`` in ``W^[i]`` with coefficient degree ``<= max_degree``."""
    e = euler(n)
    counts = {"E(f)": 0, "[E,D]": 0, "div(fE)": 0}
    failures = []
    for m in range(max_degree + 1):
        for alpha in monomials_of_degree(n, m):
            f = Poly.monomial(alpha)
            counts["E(f)"] += 1
            if e(f) != f.scale(m):
                failures.append(f"E({f})")
            counts["div(fE)"] += 1
            if divergence(f * e) != f.scale(m + n):
                failures.append(f"div(({f}) E)")
    for i in range(-1, max_degree):
        for d in component_basis(n, i).basis:
            counts["[E,D]"] += 1
            if bracket(e, d) != d * i:
                failures.append(f"[E, {d}]")
    return {"n": n, "max_degree": max_degree, "checked": counts,
            "failures": failures, "passed": not failures}
