"""Darboux polynomials and bounded simplicity probes.

``f`` is a Darboux polynomial of ``D`` when it is non-constant and
``D(f) = lambda * f`` for a polynomial cofactor ``lambda``; then ``(f)`` is a
proper nonzero ``D``-invariant ideal.  A search that finds nothing proves
nothing: the probe verdict is worded accordingly.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd, isqrt
from typing import Dict, List, Optional, Sequence, Tuple

from .arith import Exponent, Poly, divide, format_poly, grevlex_key, monomials_up_to, multi_gcd
from .deriv import Deriv, apply
from .ideals import IdealGens, groebner

NO_OBSTRUCTION = "no obstruction up to bounds"
REFUTED = "refuted"

_TRIAL_VALUES = (0, 1, -1, 2, -2, 3)


@dataclass(frozen=True)
class DarbouxWitness:
    f: Poly
    cofactor: Poly
    check: bool

    def to_json(self) -> dict:
        return {"f": format_poly(self.f), "cofactor": format_poly(self.cofactor), "check": self.check}


def is_darboux(d: Deriv, f: Poly) -> Tuple[bool, Optional[Poly]]:
    """``(True, cofactor)`` if ``f`` divides ``D(f)``, else ``(False, None)``."""
    if f.is_constant():
        raise ValueError("Darboux polynomials are non-constant")
    (quot,), rem = divide(apply(d, f), [f])
    if rem:
        return False, None
    return True, quot


def default_cofactor_degree(d: Deriv) -> int:
    return max(int(d.degree()) - 1, 0) if d else 0


# --- rational solutions of small polynomial systems -------------------------


def _divisors(k: int) -> List[int]:
    k = abs(k)
    out = set()
    for a in range(1, isqrt(k) + 1):
        if k % a == 0:
            out.update((a, k // a))
    return sorted(out)


def rational_roots(coeffs: Dict[int, Fraction]) -> Tuple[List[Fraction], int]:
    """Distinct rational roots of ``sum c_k t^k`` and the degree left unresolved."""
    if not coeffs:
        raise ValueError("zero polynomial")
    den = 1
    for c in coeffs.values():
        den = den * c.denominator // gcd(den, c.denominator)
    deg = max(coeffs)
    ints = [int(coeffs.get(k, 0) * den) for k in range(deg + 1)]
    roots: List[Fraction] = []
    # strip the factor t^m
    low = next(k for k, c in enumerate(ints) if c)
    if low:
        roots.append(Fraction(0))
        ints = ints[low:]
    cands = set()
    if len(ints) > 1:
        for p in _divisors(ints[0]):
            for q in _divisors(ints[-1]):
                cands.update((Fraction(p, q), Fraction(-p, q)))

    def value(poly, r):
        acc = Fraction(0)
        for c in reversed(poly):
            acc = acc * r + c
        return acc

    work = [Fraction(c) for c in ints]
    for r in sorted(cands):
        if len(work) <= 1:
            break
        if value(work, r) == 0:
            roots.append(r)
            while len(work) > 1 and value(work, r) == 0:
                # synthetic division by (t - r)
                out = [Fraction(0)] * (len(work) - 1)
                acc = Fraction(0)
                for k in range(len(work) - 1, 0, -1):
                    acc = acc * r + work[k]
                    out[k - 1] = acc
                work = out
    return sorted(roots), len(work) - 1


def _substitute(eqs: Sequence[Poly], var: int, value: Fraction) -> List[Poly]:
    return [q for q in (p.substitute({var: value}) for p in eqs) if q]


def solve_rational(eqs: Sequence[Poly], nvars: int) -> Tuple[List[Dict[int, Fraction]], int]:
    """Rational points of ``eqs = 0``, by lex Groebner bases and back-substitution.

    The lex-smallest variable still occurring is either constrained by a
    univariate basis element (branch over its rational roots) or free (take
    the first trial value that stays consistent).  Variables that never
    occur are set to zero.  Returns the solutions and a count of branches
    abandoned because of irrational roots or exhausted trial values.
    """
    eqs = [p for p in eqs if p]
    if not eqs:
        return [{}], 0
    gb = groebner(eqs, "lex")
    if gb.is_unit():
        return [], 0
    used = sorted({v for g in gb.basis for v in g.variables()})
    if not used:
        return [{}], 0
    v = used[-1]
    uni = [g for g in gb.basis if g.variables() == [v]]
    solutions: List[Dict[int, Fraction]] = []
    unresolved = 0
    if uni:
        g = uni[0]
        coeffs = {e[v - 1]: c for e, c in g.terms.items()}
        roots, left = rational_roots(coeffs)
        if left:
            unresolved += 1
        for r in roots:
            sols, u = solve_rational(_substitute(gb.basis, v, r), nvars)
            unresolved += u
            for s in sols:
                s[v] = r
                solutions.append(s)
        return solutions, unresolved
    for t in _TRIAL_VALUES:
        sols, u = solve_rational(_substitute(gb.basis, v, Fraction(t)), nvars)
        if sols:
            for s in sols:
                s[v] = Fraction(t)
            return sols, u
    return [], 1


# --- Darboux search ----------------------------------------------------------


def _darboux_system(d: Deriv, lead: Exponent, f_monos: Sequence[Exponent],
                    cof_monos: Sequence[Exponent]):
    """Equations ``coeffs(D(f) - lambda*f) = 0`` with ``f = x^lead + lower terms``.

    Unknowns (1-based): coefficients of the lower ``f`` monomials, then the
    coefficients of ``lambda``.
    """
    lower = [m for m in f_monos if grevlex_key(m) < grevlex_key(lead)]
    nv = len(lower) + len(cof_monos)
    f_coef: Dict[Exponent, Poly] = {lead: Poly.one(nv)}
    for k, m in enumerate(lower, start=1):
        f_coef[m] = Poly.var(nv, k)
    lam = {m: Poly.var(nv, len(lower) + k) for k, m in enumerate(cof_monos, start=1)}
    eqs: Dict[Exponent, Poly] = {}

    def add(exp, p):
        eqs[exp] = eqs.get(exp, Poly.zero(nv)) + p

    for m, c in f_coef.items():
        for exp, v in apply(d, Poly.monomial(m)).terms.items():
            add(exp, c.scale(v))
        for nu, l in lam.items():
            add(tuple(a + b for a, b in zip(m, nu)), -(l * c))
    return lower, list(cof_monos), [p for p in eqs.values() if p]


def find_darboux_detailed(d: Deriv, deg_f: int, deg_cof: Optional[int] = None) -> dict:
    """Witnesses plus the number of unresolved (irrational) branches."""
    if deg_f < 1:
        raise ValueError("deg_f must be at least 1")
    if deg_cof is None:
        deg_cof = default_cofactor_degree(d)
    if deg_cof < 0:
        raise ValueError("deg_cof must be non-negative")
    n = d.n
    f_monos = monomials_up_to(n, deg_f)
    cof_monos = monomials_up_to(n, deg_cof)
    leads = sorted((m for m in f_monos if sum(m)), key=grevlex_key, reverse=True)
    found: Dict[Poly, DarbouxWitness] = {}
    unresolved = 0
    for lead in leads:
        lower, cofs, eqs = _darboux_system(d, lead, f_monos, cof_monos)
        nv = len(lower) + len(cofs)
        if eqs and groebner(eqs, "grevlex").is_unit():
            continue
        sols, u = solve_rational(eqs, nv)
        unresolved += u
        for s in sols:
            f = Poly.monomial(lead) + Poly(n, {m: s.get(k, 0) for k, m in enumerate(lower, start=1)})
            lam = Poly(n, {m: s.get(len(lower) + k, 0) for k, m in enumerate(cofs, start=1)})
            ok, cof = is_darboux(d, f)
            witness = DarbouxWitness(f, lam, bool(ok and cof == lam))
            found.setdefault(f, witness)
    return {"witnesses": list(found.values()), "unresolved_branches": unresolved}


def find_darboux(d: Deriv, deg_f: int, deg_cof: Optional[int] = None) -> List[DarbouxWitness]:
    """Darboux polynomials with ``deg f <= deg_f`` and ``deg cofactor <= deg_cof``.

    For each candidate leading monomial (grevlex, descending) the bilinear
    system is solved by Groebner bases in the unknown coefficients.  Free
    parameters are fixed to the first consistent trial value, so one
    representative is returned per branch.
    """
    return find_darboux_detailed(d, deg_f, deg_cof)["witnesses"]


def simplicity_probe(d: Deriv, deg_f: int, deg_cof: Optional[int] = None) -> dict:
    """Look for an obstruction to simplicity; never claims simplicity."""
    if d.is_zero():
        raise ValueError("the zero derivation is not simple")
    coeffs = [c for c in d.coeffs if c]
    g = multi_gcd(coeffs)
    coeff_ideal = IdealGens(d.n, coeffs)
    out = {"derivation": str(d), "deg_f": deg_f, "coefficient_gcd": format_poly(g)}
    if not g.is_constant():
        out.update(verdict=REFUTED, reason="coefficient gcd", witness=format_poly(g))
        return out
    if not coeff_ideal.is_unit():
        out.update(verdict=REFUTED, reason="proper coefficient ideal",
                   witness=[format_poly(c) for c in coeffs])
        return out
    if deg_cof is None:
        deg_cof = default_cofactor_degree(d)
    search = find_darboux_detailed(d, deg_f, deg_cof)
    out["deg_cof"] = deg_cof
    out["unresolved_branches"] = search["unresolved_branches"]
    if search["witnesses"]:
        w = search["witnesses"][0]
        out.update(verdict=REFUTED, reason="Darboux polynomial", witness=w.to_json())
    else:
        out.update(verdict=NO_OBSTRUCTION)
    return out
