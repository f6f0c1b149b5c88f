"""Derivations of the polynomial ring and the W_n-level operations on them.

A derivation ``D = f_1 d/dx_1 + ... + f_n d/dx_n`` is stored as the tuple of
its coefficients ``(D(x_1), ..., D(x_n))``.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import combinations
from typing import List, NamedTuple, Optional, Sequence, Tuple

from .arith import (
    NEG_INF,
    ArityError,
    Poly,
    PolyParseError,
    divide,
    exact_div,
    format_poly,
    partial,
    parse_poly,
    poly_gcd,
)


class BracketNotInSpan(ValueError):
    """``[a, b]`` is not the stated combination ``mu1*a + mu2*b``."""


class DependentInputs(ValueError):
    """The two derivations are linearly dependent over the polynomial ring."""


class Deriv:
    __slots__ = ("n", "coeffs", "_hash")

    def __init__(self, coeffs: Sequence[Poly]):
        coeffs = tuple(coeffs)
        n = len(coeffs)
        for c in coeffs:
            if not isinstance(c, Poly):
                raise TypeError("derivation coefficients must be Poly")
            if c.n != n:
                raise ArityError(f"coefficient in {c.n} variables for a derivation of W_{n}")
        self.n = n
        self.coeffs = coeffs
        self._hash = None

    @classmethod
    def zero(cls, n: int) -> "Deriv":
        return cls([Poly.zero(n)] * n)

    @classmethod
    def coordinate(cls, n: int, i: int) -> "Deriv":
        """The coordinate field ``d/dx_i`` (1-based)."""
        return cls.monomial((0,) * n, i)

    @classmethod
    def monomial(cls, alpha: Sequence[int], j: int, c=1) -> "Deriv":
        """``c * x^alpha d/dx_j`` with ``j`` 1-based."""
        n = len(alpha)
        if not 1 <= j <= n:
            raise IndexError(f"partial index {j} out of range 1..{n}")
        coeffs = [Poly.zero(n)] * n
        coeffs[j - 1] = Poly.monomial(alpha, c)
        return cls(coeffs)

    # structure
    def __iter__(self):
        return iter(self.coeffs)

    def __getitem__(self, i: int) -> Poly:
        return self.coeffs[i]

    def is_zero(self) -> bool:
        return all(c.is_zero() for c in self.coeffs)

    def __bool__(self) -> bool:
        return not self.is_zero()

    def degree(self):
        """Largest total degree among the coefficients."""
        return max((c.degree() for c in self.coeffs), default=NEG_INF)

    def _check(self, other: "Deriv") -> None:
        if self.n != other.n:
            raise ArityError(f"cannot combine W_{self.n} and W_{other.n}")

    # vector space and module structure
    def __add__(self, other: "Deriv") -> "Deriv":
        if not isinstance(other, Deriv):
            return NotImplemented
        self._check(other)
        return Deriv([a + b for a, b in zip(self.coeffs, other.coeffs)])

    def __sub__(self, other: "Deriv") -> "Deriv":
        if not isinstance(other, Deriv):
            return NotImplemented
        self._check(other)
        return Deriv([a - b for a, b in zip(self.coeffs, other.coeffs)])

    def __neg__(self) -> "Deriv":
        return Deriv([-a for a in self.coeffs])

    def __rmul__(self, f) -> "Deriv":
        if isinstance(f, Poly):
            if f.n != self.n:
                raise ArityError(f"cannot scale a W_{self.n} element by a polynomial in {f.n} variables")
            return Deriv([f * a for a in self.coeffs])
        if isinstance(f, (int, Fraction)):
            return Deriv([a.scale(f) for a in self.coeffs])
        return NotImplemented

    __mul__ = __rmul__

    def __eq__(self, other) -> bool:
        if not isinstance(other, Deriv):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(self.coeffs)
        return self._hash

    # action
    def __call__(self, p: Poly) -> Poly:
        return apply(self, p)

    def __repr__(self) -> str:
        return f"Deriv({format_deriv(self)!r})"

    def __str__(self) -> str:
        return format_deriv(self)


def _check_pair(a: Deriv, b: Deriv) -> None:
    if a.n != b.n:
        raise ArityError(f"cannot combine W_{a.n} and W_{b.n}")


def apply(d: Deriv, p: Poly) -> Poly:
    """``D(p) = sum_i D(x_i) * dp/dx_i``."""
    if p.n != d.n:
        raise ArityError(f"W_{d.n} element applied to a polynomial in {p.n} variables")
    total = Poly.zero(d.n)
    for i, c in enumerate(d.coeffs, start=1):
        if c:
            dp = partial(p, i)
            if dp:
                total = total + c * dp
    return total


def bracket(a: Deriv, b: Deriv) -> Deriv:
    """``[a, b] = a o b - b o a``; coefficient ``j`` is ``a(b(x_j)) - b(a(x_j))``."""
    _check_pair(a, b)
    return Deriv([apply(a, bj) - apply(b, aj) for aj, bj in zip(a.coeffs, b.coeffs)])


def divergence(d: Deriv) -> Poly:
    total = Poly.zero(d.n)
    for i, c in enumerate(d.coeffs, start=1):
        total = total + partial(c, i)
    return total


def euler(n: int) -> Deriv:
    """The Euler derivation ``x_1 d/dx_1 + ... + x_n d/dx_n``."""
    if n < 1:
        raise ValueError("n must be at least 1")
    return Deriv([Poly.var(n, i) for i in range(1, n + 1)])


def evaluate_at(d: Deriv, point: Sequence) -> Tuple[Fraction, ...]:
    """The vector of ``d`` at a point of K^n."""
    return tuple(c.eval(point) for c in d.coeffs)


# --- Jacobian derivations (n = 2) ------------------------------------------


def jacobian_deriv(f: Poly) -> Deriv:
    """``D_f(h) = det J(f, h)``, i.e. ``-f_y d/dx + f_x d/dy``."""
    if f.n != 2:
        raise ArityError("Jacobian derivations are defined for two variables")
    return Deriv([-partial(f, 2), partial(f, 1)])


def _integrate(p: Poly, i: int) -> Poly:
    k = i - 1
    out = {}
    for e, c in p.terms.items():
        e2 = e[:k] + (e[k] + 1,) + e[k + 1:]
        out[e2] = c / (e[k] + 1)
    return Poly(p.n, out)


def jacobian_potential(d: Deriv) -> Optional[Poly]:
    """``f`` with ``jacobian_deriv(f) == d`` and zero constant term, or None.

    Exists exactly when ``div d = 0``.
    """
    if d.n != 2:
        raise ArityError("Jacobian derivations are defined for two variables")
    if divergence(d):
        return None
    p, q = d.coeffs
    f = _integrate(q, 1)
    # g'(y) = -p - f_y, free of x because div d = 0
    g_prime = -p - partial(f, 2)
    f = f + _integrate(g_prime, 2)
    return f - f.constant_term()


# --- minors and the identities of a bracket-closed pair --------------------


def _check_index(n: int, *idx: int) -> None:
    for i in idx:
        if not 1 <= i <= n:
            raise IndexError(f"index {i} out of range 1..{n}")


def minor(a: Deriv, b: Deriv, i: int, j: int) -> Poly:
    """``det [[a(x_i), a(x_j)], [b(x_i), b(x_j)]]`` (1-based indices)."""
    _check_pair(a, b)
    _check_index(a.n, i, j)
    return a.coeffs[i - 1] * b.coeffs[j - 1] - a.coeffs[j - 1] * b.coeffs[i - 1]


def _require_bracket_relation(a: Deriv, b: Deriv, mu1: Poly, mu2: Poly) -> None:
    if bracket(a, b) != mu1 * a + mu2 * b:
        raise BracketNotInSpan(f"[a, b] != ({mu1})*a + ({mu2})*b")


def minor_identity_sides(a: Deriv, b: Deriv, mu1: Poly, mu2: Poly, i: int, j: int):
    """Left and right sides of the two minor identities for the pair ``(i, j)``.

    Returns ``((a(Dij), rhs_a), (b(Dij), rhs_b))`` where the right sides are
    ``mu2*Dij + sum_k d_k a(x_i) Dkj - sum_k d_k a(x_j) Dki`` and the analogue
    for ``b`` with ``-mu1``.
    """
    n = a.n
    dij = minor(a, b, i, j)
    out = []
    for d, mu in ((a, mu2), (b, -mu1)):
        rhs = mu * dij
        for k in range(1, n + 1):
            rhs = rhs + partial(d.coeffs[i - 1], k) * minor(a, b, k, j)
            rhs = rhs - partial(d.coeffs[j - 1], k) * minor(a, b, k, i)
        out.append((apply(d, dij), rhs))
    return tuple(out)


def verify_minor_identity(a: Deriv, b: Deriv, mu1: Poly, mu2: Poly) -> dict:
    """Check both minor identities for every ordered pair ``(i, j)``.

    Also checks that each ``a(Dij)`` and ``b(Dij)`` lies in the ideal generated
    by all minors, which is what the identities imply.
    """
    _check_pair(a, b)
    _require_bracket_relation(a, b, mu1, mu2)
    from .ideals import IdealGens  # deferred: ideals depends on this module

    n = a.n
    minors = {(i, j): minor(a, b, i, j) for i in range(1, n + 1) for j in range(1, n + 1)}
    ideal = IdealGens(n, list(minors.values()))
    pairs = {}
    invariant = True
    for i in range(1, n + 1):
        for j in range(1, n + 1):
            (la, ra), (lb, rb) = minor_identity_sides(a, b, mu1, mu2, i, j)
            pairs[f"{i},{j}"] = {"first": la == ra, "second": lb == rb}
            if i < j:
                invariant = invariant and ideal.contains(la) and ideal.contains(lb)
    passed = all(v["first"] and v["second"] for v in pairs.values()) and invariant
    return {"pairs": pairs, "ideal_invariant": invariant, "passed": passed}


def verify_delta_corollary(a: Deriv, b: Deriv, mu1: Poly, mu2: Poly) -> dict:
    """In two variables: ``a(D12) = (mu2 + div a) D12`` and ``b(D12) = (div b - mu1) D12``."""
    if a.n != 2 or b.n != 2:
        raise ArityError("the determinant identity concerns W_2 only")
    _require_bracket_relation(a, b, mu1, mu2)
    delta = minor(a, b, 1, 2)
    cof_a = mu2 + divergence(a)
    cof_b = divergence(b) - mu1
    first = apply(a, delta) == cof_a * delta
    second = apply(b, delta) == cof_b * delta
    return {
        "delta": format_poly(delta),
        "cofactor_first": format_poly(cof_a),
        "cofactor_second": format_poly(cof_b),
        "first": first,
        "second": second,
        "passed": first and second,
    }


# --- rank over A -----------------------------------------------------------


def coefficient_matrix(ds: Sequence[Deriv]) -> List[List[Poly]]:
    return [list(d.coeffs) for d in ds]


def rank_over_A(ds: Sequence[Deriv]) -> int:
    """Rank over the rational function field, by fraction-free elimination."""
    ds = list(ds)
    if not ds:
        raise ValueError("need at least one derivation")
    n = ds[0].n
    for d in ds:
        _check_pair(ds[0], d)
    m = [list(d.coeffs) for d in ds]
    rows, cols = len(m), n
    prev = Poly.one(n)
    rank = 0
    for k in range(min(rows, cols)):
        pivot = None
        for r in range(k, rows):
            for c in range(k, cols):
                if m[r][c]:
                    pivot = (r, c)
                    break
            if pivot:
                break
        if pivot is None:
            break
        r, c = pivot
        m[k], m[r] = m[r], m[k]
        if c != k:
            for row in m:
                row[k], row[c] = row[c], row[k]
        rank += 1
        pk = m[k][k]
        for r in range(k + 1, rows):
            for c in range(k + 1, cols):
                m[r][c] = exact_div(pk * m[r][c] - m[r][k] * m[k][c], prev)
            m[r][k] = Poly.zero(n)
        prev = pk
    return rank


class Proportionality(NamedTuple):
    """``t = (num / den) * d`` with ``num / den`` in lowest terms."""

    num: Poly
    den: Poly
    polynomial: bool


def proportionality_witness(d: Deriv, t: Deriv) -> Optional[Proportionality]:
    """Ratio ``mu`` with ``t = mu * d`` when every 2x2 minor vanishes, else None."""
    _check_pair(d, t)
    if d.is_zero():
        raise ValueError("d must be nonzero")
    n = d.n
    for i, j in combinations(range(1, n + 1), 2):
        if minor(d, t, i, j):
            return None
    k = next(i for i, c in enumerate(d.coeffs) if c)
    num, den = t.coeffs[k], d.coeffs[k]
    if num.is_zero():
        return Proportionality(Poly.zero(n), Poly.one(n), True)
    g = poly_gcd(num, den)
    num, den = exact_div(num, g), exact_div(den, g)
    lc = den.leading_coefficient()
    num, den = num.scale(1 / lc), den.scale(1 / lc)
    return Proportionality(num, den, den.is_constant())


def bracket_span_coeffs(a: Deriv, b: Deriv) -> Optional[Tuple[Poly, Poly]]:
    """Polynomials ``(mu1, mu2)`` with ``[a, b] = mu1*a + mu2*b``, or None.

    Solves over the fraction field by Cramer's rule on a nonvanishing minor,
    then requires the denominators to clear and the full system to hold.
    """
    _check_pair(a, b)
    n = a.n
    pivot = None
    for i, j in combinations(range(1, n + 1), 2):
        dij = minor(a, b, i, j)
        if dij:
            pivot = (i, j, dij)
            break
    if pivot is None:
        raise DependentInputs("a and b are linearly dependent over A")
    i, j, dij = pivot
    c = bracket(a, b)
    ci, cj = c.coeffs[i - 1], c.coeffs[j - 1]
    num1 = ci * b.coeffs[j - 1] - cj * b.coeffs[i - 1]
    num2 = a.coeffs[i - 1] * cj - a.coeffs[j - 1] * ci
    (q1,), r1 = divide(num1, [dij])
    (q2,), r2 = divide(num2, [dij])
    if r1 or r2:
        return None
    if q1 * a + q2 * b != c:
        return None
    return q1, q2


# --- text syntax -----------------------------------------------------------


def format_deriv(d: Deriv) -> str:
    return "[" + ", ".join(format_poly(c) for c in d.coeffs) + "]"


def _split_top_level(body: str) -> List[str]:
    return [part.strip() for part in body.split(",")]


def parse_deriv(text: str, n: int) -> Deriv:
    """Parse ``"[f1, ..., fn]"``; ``"E"`` denotes the Euler derivation."""
    s = text.strip()
    if s == "E":
        return euler(n)
    if not (s.startswith("[") and s.endswith("]")):
        raise PolyParseError(f"derivation must look like [f1, ..., f{n}] or E: {text!r}")
    parts = _split_top_level(s[1:-1])
    if len(parts) != n:
        raise PolyParseError(f"derivation has {len(parts)} coefficients, expected {n}")
    return Deriv([parse_poly(p, n) for p in parts])


def deriv_to_json(d: Deriv) -> dict:
    return {"n": d.n, "coeffs": [format_poly(c) for c in d.coeffs], "text": format_deriv(d)}
