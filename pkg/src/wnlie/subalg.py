"""Subalgebras of W_n under a coefficient-degree cap.

Every computation works inside a :class:`~wnlie.linalg.Frame`.  A bracket
that does not fit the frame is never dropped silently: it marks the result
``"saturated-at-cap"``.  Elements that are reported are always genuine
members of the subalgebra being approximated, so "contains everything up to
degree k" is sound evidence even when saturated.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

from .arith import Exponent, Poly, monomials_up_to
from .deriv import Deriv, apply, bracket, euler
from .grading import component_basis
from .ideals import IdealGens, ideal_product, is_invariant, normal_form
from .linalg import (
    Echelon,
    Frame,
    Mat,
    Subspace,
    full_subspace,
    kernel,
    span_vectors,
    subspace_le,
    subspace_span,
)

CLOSED = "closed"
SATURATED = "saturated-at-cap"


class AlreadyInside(ValueError):
    """The candidate already lies in the subalgebra."""


@dataclass
class TruncatedSubalgebra:
    frame: Frame
    space: Subspace
    status: str
    stages: Tuple[Subspace, ...] = field(default=(), repr=False)

    @property
    def dim(self) -> int:
        return self.space.dim

    def basis(self) -> List[Deriv]:
        return self.space.basis()

    def contains(self, d: Deriv) -> bool:
        return self.frame.fits(d) and self.space.contains(d)


def lie_closure(gens: Sequence[Deriv], cap: int, n: Optional[int] = None,
                keep_stages: bool = False) -> TruncatedSubalgebra:
    """Iterate ``S_{i+1} = S_i + [S_i, S_i]`` inside the frame of degree ``cap``.

    Only brackets involving elements new at the previous stage are formed;
    older pairs are already in the span.
    """
    gens = list(gens)
    if n is None:
        if not gens:
            raise ValueError("need n when there are no generators")
        n = gens[0].n
    frame = Frame(n, cap)
    ech = Echelon()
    elems: List[Deriv] = []
    for g in gens:
        if ech.add(frame.coords(g)):
            elems.append(g)
    stages = [Subspace(frame, _copy(ech))] if keep_stages else []
    saturated = False
    full = len(ech) == frame.dim
    new_from = 0
    while new_from < len(elems) and not full:
        snapshot = len(elems)
        fresh = []
        for ai in range(new_from, snapshot):
            a = elems[ai]
            # each unordered pair once; pairs of old elements were done earlier
            for bi in range(ai):
                w = bracket(a, elems[bi])
                if not w:
                    continue
                if w.degree() > cap:
                    saturated = True
                    continue
                if ech.add(frame.coords(w)):
                    fresh.append(w)
                    if len(ech) == frame.dim:
                        full = True
                        break
            if full:
                break
        new_from = snapshot
        elems.extend(fresh)
        if keep_stages and fresh:
            stages.append(Subspace(frame, _copy(ech)))
    if full and not saturated:
        saturated = _frame_overflows(frame)
    return TruncatedSubalgebra(
        frame, Subspace(frame, ech), SATURATED if saturated else CLOSED, tuple(stages)
    )


def _frame_overflows(frame: Frame) -> bool:
    """Does some bracket of two frame basis vectors exceed the cap?

    Once the closure is the whole frame, this decides its status without
    forming the remaining brackets; top-degree pairs are tried first.
    """
    order = sorted(range(frame.dim), key=lambda c: -sum(frame.keys[c][0]))
    basis = [frame.basis_deriv(c) for c in order]
    for ai, a in enumerate(basis):
        if 2 * a.degree() - 1 <= frame.cap:
            break
        for b in basis[ai:]:
            if a.degree() + b.degree() - 1 <= frame.cap:
                break
            w = bracket(a, b)
            if w and w.degree() > frame.cap:
                return True
    return False


def _copy(ech: Echelon) -> Echelon:
    e = Echelon()
    e.rows = {p: dict(r) for p, r in ech.rows.items()}
    return e


def _embed(s: Subspace, frame: Frame) -> Subspace:
    """Re-express ``s`` in another frame (raises FrameOverflow if it cannot fit)."""
    if s.frame == frame:
        return s
    return subspace_span(frame, s.basis())


def a_span(s: Subspace, cap: int) -> Subspace:
    """Span of ``x^alpha * d`` over basis elements ``d`` with degree at most ``cap``."""
    n = s.frame.n
    frame = Frame(n, cap)
    ech = Echelon()
    for d in s.basis():
        deg = d.degree()
        if deg > cap:
            continue
        for alpha in monomials_up_to(n, cap - int(deg)):
            ech.add(frame.coords(Poly.monomial(alpha) * d))
    return Subspace(frame, ech)


def closure_lemma_check(d1: Deriv, d2: Deriv, cap: int, compare: Optional[int] = None) -> dict:
    """Executable instance of: if ``A d1 + A d2 <= L`` then ``A <d1, d2> <= L``.

    ``L`` is the truncated subalgebra generated by ``A d1 + A d2``; each stage
    ``S_i`` of the Lie closure of ``{d1, d2}`` is multiplied by monomials up
    to degree ``compare`` and tested for containment in ``L``.
    """
    n = d1.n
    if compare is None:
        compare = cap - 2
    frame = Frame(n, cap)
    generated = a_span(subspace_span(frame, [d1, d2]), cap)
    L = lie_closure(generated.basis(), cap, n=n)
    S = lie_closure([d1, d2], cap, n=n, keep_stages=True)
    stages = []
    ok = True
    for idx, st in enumerate(S.stages, start=1):
        module = _embed(a_span(st, compare), frame)
        inside = subspace_le(module, L.space)
        ok = ok and inside
        stages.append({"stage": idx, "dim": st.dim, "a_span_dim": module.dim, "contained": inside})
    return {
        "cap": cap,
        "compare": compare,
        "L_dim": L.dim,
        "L_status": L.status,
        "S_status": S.status,
        "stages": stages,
        "holds": ok,
    }


# --- stabilizers of ideals ---------------------------------------------------


def _solve_frame(frame: Frame, conditions) -> Subspace:
    """Subspace of the frame where the linear map ``conditions`` vanishes.

    ``conditions(d)`` returns polynomials, linear in ``d``, that must be zero.
    """
    eqs: Dict[Tuple[int, Exponent], Dict[int, Fraction]] = {}
    for col in range(frame.dim):
        for g_idx, p in enumerate(conditions(frame.basis_deriv(col))):
            for exp, v in p.terms.items():
                eqs.setdefault((g_idx, exp), {})[col] = v
    rows = []
    for row in eqs.values():
        dense = [Fraction(0)] * frame.dim
        for c, v in row.items():
            dense[c] = v
        rows.append(dense)
    if not rows:
        return full_subspace(frame)
    null = kernel(Mat(rows, frame.dim))
    return span_vectors(frame, ({c: v for c, v in enumerate(vec) if v} for vec in null))


def stabilizer_truncated(ideal: IdealGens, cap: int) -> Subspace:
    """All ``D`` of coefficient degree <= ``cap`` with ``D(I) <= I``.

    Solved as one linear system: normal forms of ``D(g)`` are linear in the
    coordinates of ``D``.
    """
    frame = Frame(ideal.n, cap)
    gb = ideal.groebner()
    return _solve_frame(frame, lambda d: [normal_form(apply(d, g), gb) for g in ideal.gens])


def ideal_module_truncated(ideal: IdealGens, cap: int) -> Subspace:
    """``I * W_n`` truncated: derivations whose coefficients all lie in ``I``."""
    frame = Frame(ideal.n, cap)
    gb = ideal.groebner()
    return _solve_frame(frame, lambda d: [normal_form(c, gb) for c in d.coeffs])


def explicit_lk(n: int, k: int, cap: int) -> Subspace:
    """``A d/dx_1 + ... + A d/dx_k + I_k d/dx_{k+1} + ... + I_k d/dx_n`` truncated."""
    _check_k(n, k)
    frame = Frame(n, cap)
    vecs = []
    for idx, (alpha, j) in enumerate(frame.keys):
        if j < k or any(alpha[k:]):
            vecs.append({idx: Fraction(1)})
    return span_vectors(frame, vecs)


def _check_k(n: int, k: int) -> None:
    if not 1 <= k <= n - 1:
        raise ValueError(f"k must satisfy 1 <= k <= n-1, got k={k}, n={n}")


def lk_member(d: Deriv, k: int) -> bool:
    """``D`` preserves ``I_k = (x_{k+1}, ..., x_n)``."""
    _check_k(d.n, k)
    return is_invariant(IdealGens.coordinate(d.n, k), d)


def lk_generators(n: int, k: int, cap: int) -> List[Deriv]:
    """Elements of ``L_k`` used to act on the quotient.

    ``d/dx_1..d/dx_k``; the linear fields ``x_i d/dx_j`` lying in ``L_k``;
    and ``x_j x^beta d/dx_q`` for ``j, q > k`` and ``beta`` in the first
    ``k`` variables with ``|beta| <= cap``.
    """
    _check_k(n, k)
    gens = [Deriv.coordinate(n, i) for i in range(1, k + 1)]
    for i in range(n):
        for j in range(n):
            if j < k or i >= k:
                alpha = [0] * n
                alpha[i] = 1
                gens.append(Deriv.monomial(alpha, j + 1))
    for beta in monomials_up_to(k, cap):
        for j in range(k, n):
            for q in range(k, n):
                alpha = list(beta) + [0] * (n - k)
                alpha[j] += 1
                gens.append(Deriv.monomial(alpha, q + 1))
    return gens


class _Quotient:
    """Coordinates of ``W_n / L_k`` truncated at degree ``cap``.

    A class is represented by its ``d/dx_q`` coefficients for ``q > k``
    reduced mod ``I_k``, i.e. by polynomials in ``x_1..x_k``.
    """

    def __init__(self, n: int, k: int, cap: int):
        self.n, self.k, self.cap = n, k, cap
        self.keys = [
            (tuple(beta) + (0,) * (n - k), q) for beta in monomials_up_to(k, cap) for q in range(k, n)
        ]
        self.index = {key: i for i, key in enumerate(self.keys)}

    @property
    def dim(self) -> int:
        return len(self.keys)

    def project(self, d: Deriv) -> Dict[int, Fraction]:
        out = {}
        for q in range(self.k, self.n):
            for exp, v in d.coeffs[q].terms.items():
                if any(exp[self.k:]) or sum(exp) > self.cap:
                    continue
                out[self.index[(exp, q)]] = v
        return out

    def lift(self, vec: Dict[int, Fraction]) -> Deriv:
        terms = [{} for _ in range(self.n)]
        for idx, v in vec.items():
            exp, q = self.keys[idx]
            terms[q][exp] = v
        return Deriv([Poly(self.n, t) for t in terms])


def _quotient_orbit(quot: _Quotient, gens: Sequence[Deriv], start: Dict[int, Fraction]) -> Echelon:
    ech = Echelon()
    if not ech.add(start):
        return ech
    queue = [quot.lift(start)]
    while queue:
        v = queue.pop()
        for g in gens:
            w = quot.project(bracket(g, v))
            if w and ech.add(w):
                queue.append(quot.lift(w))
    return ech


def lk_quotient_irreducibility_probe(n: int, k: int, cap: int) -> dict:
    """Check that every basis vector of the truncated quotient ``W_n / L_k``
    generates all of it under brackets with :func:`lk_generators`."""
    _check_k(n, k)
    quot = _Quotient(n, k, cap)
    gens = lk_generators(n, k, cap)
    failures = []
    for idx, key in enumerate(quot.keys):
        orbit = _quotient_orbit(quot, gens, {idx: Fraction(1)})
        if len(orbit) != quot.dim:
            failures.append({"vector": str(quot.lift({idx: Fraction(1)})), "orbit_dim": len(orbit)})
    zero_orbit = len(_quotient_orbit(quot, gens, {}))
    return {
        "n": n,
        "k": k,
        "cap": cap,
        "quotient_dim": quot.dim,
        "vectors_checked": quot.dim,
        "zero_orbit_dim": zero_orbit,
        "failures": failures,
        "passed": not failures and zero_orbit == 0,
    }


# --- named subalgebras and maximality probes ---------------------------------


def l_basis(n: int) -> List[Deriv]:
    """Basis of ``W^[-1] + W^[0] + N_1``: ``d/dx_i``, ``x_i d/dx_j``, ``x_i E``."""
    e = euler(n)
    basis = list(component_basis(n, -1).basis) + list(component_basis(n, 0).basis)
    basis += [Poly.var(n, i) * e for i in range(1, n + 1)]
    return basis


def build_L(n: int) -> TruncatedSubalgebra:
    if n < 2:
        raise ValueError("n must be at least 2")
    basis = l_basis(n)
    frame = Frame(n, 2)
    space = subspace_span(frame, basis)
    closed = True
    for i, a in enumerate(basis):
        for b in basis[i + 1:]:
            w = bracket(a, b)
            if w and not (frame.fits(w) and space.contains(w)):
                closed = False
    if space.dim != n * n + 2 * n:
        raise AssertionError(f"dim L = {space.dim}, expected {n * n + 2 * n}")
    return TruncatedSubalgebra(frame, space, CLOSED if closed else SATURATED)


def nonnegative_part(n: int, cap: int) -> TruncatedSubalgebra:
    """``W^[0] + W^[1] + ...`` truncated at coefficient degree ``cap``."""
    frame = Frame(n, cap)
    gens = [frame.basis_deriv(c) for c in frame.columns_of_degree(1, cap)]
    return lie_closure(gens, cap, n=n)


def maximality_probe(sub: TruncatedSubalgebra, d: Deriv, cap: int,
                     compare: Optional[int] = None) -> dict:
    """Close ``sub + {d}`` at ``cap`` and test whether every monomial
    derivation of coefficient degree <= ``compare`` (default ``cap - 2``) is
    reached.  Evidence only: the subalgebras involved are infinite-dimensional.
    """
    if compare is None:
        compare = cap - 2
    frame = Frame(d.n, cap)
    base = [b for b in sub.basis() if frame.fits(b)]
    if subspace_span(frame, base).contains(d):
        raise AlreadyInside(f"{d} already lies in the subalgebra")
    closure = lie_closure(base + [d], cap, n=d.n)
    low = frame.columns_of_degree(0, compare)
    reached = sum(1 for c in low if closure.space.contains({c: Fraction(1)}))
    return {
        "candidate": str(d),
        "status": closure.status,
        "closed_dim": closure.dim,
        "full_dim_at_compare": len(low),
        "dim_at_compare": reached,
        "compare": compare,
        "cap": cap,
        "equal": reached == len(low),
    }


def i2wn_ideal_check(ideal: IdealGens, cap: int) -> dict:
    """At ``cap``: ``I^2 W_n`` sits inside the stabilizer ``M`` of ``I``, is
    nonzero and proper there, and ``[M, I^2 W_n] <= I^2 W_n``.

    Brackets are tested exactly (coefficients reduced against ``I^2``), so
    they need not fit the frame.
    """
    if ideal.is_zero() or ideal.is_unit():
        raise ValueError("ideal must be nonzero and proper")
    sq = ideal_product(ideal, ideal)
    gb = sq.groebner()
    stab = stabilizer_truncated(ideal, cap)
    sq_w = ideal_module_truncated(sq, cap)
    inside = subspace_le(sq_w, stab)
    closed = True
    for s in stab.basis():
        for t in sq_w.basis():
            w = bracket(s, t)
            if any(normal_form(c, gb) for c in w.coeffs):
                closed = False
                break
        if not closed:
            break
    i_w = ideal_module_truncated(ideal, cap)
    return {
        "cap": cap,
        "stabilizer_dim": stab.dim,
        "i2w_dim": sq_w.dim,
        "iw_dim": i_w.dim,
        "i2w_in_stabilizer": inside,
        "bracket_closed": closed,
        "nonzero": sq_w.dim > 0,
        "proper": sq_w.dim < stab.dim,
        "passed": inside and closed and 0 < sq_w.dim < stab.dim,
    }
