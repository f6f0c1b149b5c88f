"""Ideals of the polynomial ring: reduced Groebner bases, membership, invariance.

Invariance ``D(I) <= I`` is checked on generators only.  This suffices
because ``D(fg) = D(f) g + f D(g)`` keeps every element of the form
``sum h_k g_k`` mapped into the ideal once each ``D(g_k)`` is.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass
from typing import Iterable, List, Sequence, Tuple

from .arith import (
    ArityError,
    Exponent,
    Poly,
    as_rat,
    divide,
    exp_divides,
    exp_lcm,
    exp_sub,
    order_key,
)
from .deriv import Deriv, apply

DEFAULT_ORDER = "grevlex"


class PointOnVariety(ValueError):
    """Every generator vanishes at the point."""


@dataclass(frozen=True)
class GroebnerBasis:
    order: str
    basis: Tuple[Poly, ...]
    n: int

    def __iter__(self):
        return iter(self.basis)

    def __len__(self) -> int:
        return len(self.basis)

    def is_unit(self) -> bool:
        return len(self.basis) == 1 and self.basis[0].is_constant()


def _spoly(f: Poly, g: Poly, lf: Exponent, lg: Exponent) -> Poly:
    # f, g monic
    m = exp_lcm(lf, lg)
    return f.mul_term(exp_sub(m, lf), 1) - g.mul_term(exp_sub(m, lg), 1)


def _reduce_fully(p: Poly, basis: Sequence[Poly], order: str) -> Poly:
    return divide(p, basis, order)[1]


def buchberger(gens: Iterable[Poly], order: str = DEFAULT_ORDER) -> List[Poly]:
    """Groebner basis (not yet reduced) with the product and chain criteria."""
    key = order_key(order)
    G: List[Poly] = []
    leads: List[Exponent] = []
    pairs = set()

    def add(f: Poly) -> None:
        f = f.monic(order)
        lf = f.leading_term(order)[0]
        k = len(G)
        G.append(f)
        leads.append(lf)
        for i in range(k):
            pairs.add((i, k))

    for g in gens:
        g = _reduce_fully(g, G, order) if G else g
        if g:
            add(g)
    while pairs:
        i, j = min(pairs, key=lambda p: (key(exp_lcm(leads[p[0]], leads[p[1]])), p))
        pairs.discard((i, j))
        li, lj = leads[i], leads[j]
        m = exp_lcm(li, lj)
        # product criterion: coprime leading monomials reduce to zero
        if all(a == 0 or b == 0 for a, b in zip(li, lj)):
            continue
        # chain criterion
        if any(
            k != i
            and k != j
            and exp_divides(leads[k], m)
            and (min(i, k), max(i, k)) not in pairs
            and (min(j, k), max(j, k)) not in pairs
            for k in range(len(G))
        ):
            continue
        r = _reduce_fully(_spoly(G[i], G[j], li, lj), G, order)
        if r:
            add(r)
    return G


def reduce_basis(G: Sequence[Poly], order: str = DEFAULT_ORDER) -> Tuple[Poly, ...]:
    key = order_key(order)
    G = [g.monic(order) for g in G if g]
    leads = [g.leading_term(order)[0] for g in G]
    # drop elements whose leading monomial is divisible by another's
    keep = []
    for i, li in enumerate(leads):
        if any(
            j != i and exp_divides(lj, li) and (lj != li or j < i)
            for j, lj in enumerate(leads)
        ):
            continue
        keep.append(G[i])
    out = []
    for i, g in enumerate(keep):
        others = keep[:i] + keep[i + 1:]
        lt, lc = g.leading_term(order)
        tail = g - Poly.monomial(lt, lc)
        r = _reduce_fully(tail, others, order)
        out.append((Poly.monomial(lt, 1) + r))
    out.sort(key=lambda p: key(p.leading_term(order)[0]), reverse=True)
    return tuple(out)


def groebner(ideal: "IdealGens | Sequence[Poly]", order: str = DEFAULT_ORDER) -> GroebnerBasis:
    """Reduced Groebner basis; empty for the zero ideal."""
    if isinstance(ideal, IdealGens):
        return ideal.groebner(order)
    gens = [g for g in ideal if g]
    n = ideal[0].n if ideal else 0
    return _groebner(n, gens, order)


def _groebner(n: int, gens: Sequence[Poly], order: str) -> GroebnerBasis:
    if not gens:
        return GroebnerBasis(order, (), n)
    if any(g.is_constant() for g in gens):
        return GroebnerBasis(order, (Poly.one(n),), n)
    return GroebnerBasis(order, reduce_basis(buchberger(gens, order), order), n)


def normal_form(p: Poly, gb: GroebnerBasis) -> Poly:
    """Remainder on division by a Groebner basis; zero iff ``p`` is in the ideal."""
    if gb.basis and p.n != gb.n:
        raise ArityError(f"polynomial in {p.n} variables, ideal in {gb.n}")
    if not gb.basis:
        return p
    return divide(p, gb.basis, gb.order)[1]


class IdealGens:
    """An ideal given by generators, with a lazily cached Groebner basis.

    Concurrent first calls may both compute the basis; the result is
    canonical, so either can win the cache slot.
    """

    def __init__(self, n: int, gens: Iterable[Poly] = ()):
        gens = [g for g in gens if g]
        for g in gens:
            if g.n != n:
                raise ArityError(f"generator in {g.n} variables for an ideal of K[x1..x{n}]")
        self.n = n
        self.gens: Tuple[Poly, ...] = tuple(gens)
        self._gb = {}
        self._lock = threading.Lock()

    @classmethod
    def coordinate(cls, n: int, k: int) -> "IdealGens":
        """``I_k = (x_{k+1}, ..., x_n)``."""
        return cls(n, [Poly.var(n, i) for i in range(k + 1, n + 1)])

    def groebner(self, order: str = DEFAULT_ORDER) -> GroebnerBasis:
        gb = self._gb.get(order)
        if gb is None:
            gb = _groebner(self.n, self.gens, order)
            with self._lock:
                gb = self._gb.setdefault(order, gb)
        return gb

    def contains(self, p: Poly) -> bool:
        return normal_form(p, self.groebner()).is_zero()

    def __contains__(self, p: Poly) -> bool:
        return self.contains(p)

    def is_zero(self) -> bool:
        return not self.gens

    def is_unit(self) -> bool:
        return self.groebner().is_unit()

    def __repr__(self) -> str:
        return f"IdealGens({self.n}, [{', '.join(str(g) for g in self.gens)}])"


def contains(ideal: IdealGens, p: Poly) -> bool:
    return ideal.contains(p)


def is_invariant(ideal: IdealGens, d: Deriv) -> bool:
    """``D(I) <= I``, checked on generators."""
    if d.n != ideal.n:
        raise ArityError(f"W_{d.n} element and an ideal in {ideal.n} variables")
    return all(ideal.contains(apply(d, g)) for g in ideal.gens)


def ideal_product(a: IdealGens, b: IdealGens) -> IdealGens:
    if a.n != b.n:
        raise ArityError("ideals in different rings")
    return IdealGens(a.n, [f * g for f in a.gens for g in b.gens])


def tangent_realizer(ideal: IdealGens, point: Sequence, u: Sequence) -> Deriv:
    """``D = (F / F(p)) * sum u_i d/dx_i`` for the first generator ``F`` with ``F(p) != 0``.

    ``D`` preserves the ideal (its coefficients lie in it) and its vector at
    ``p`` is ``u``.
    """
    n = ideal.n
    if len(point) != n or len(u) != n:
        raise ArityError(f"point and vector must have {n} coordinates")
    u = [as_rat(c) for c in u]
    for F in ideal.gens:
        value = F.eval(point)
        if value:
            scaled = F.scale(1 / value)
            return Deriv([scaled.scale(c) for c in u])
    raise PointOnVariety("point lies on the variety: every generator vanishes there")


def monomial_ideal_contains_oracle(gen_exps: Sequence[Exponent], exp: Exponent) -> bool:
    """Brute force: ``x^exp`` lies in a monomial ideal iff some generator divides it."""
    return any(exp_divides(g, exp) for g in gen_exps)
