"""Named verification suites, each returning a JSON-ready report with ``passed``."""

from __future__ import annotations

import random
from typing import Callable, Dict, List, Optional, Tuple

from .arith import Poly, format_poly
from .darboux import NO_OBSTRUCTION, simplicity_probe
from .deriv import (
    Deriv,
    bracket_span_coeffs,
    divergence,
    euler,
    format_deriv,
    rank_over_A,
    verify_delta_corollary,
    verify_minor_identity,
)
from .grading import (
    component_basis,
    component_dim,
    mn_project,
    n_dim,
    verify_bracket_table,
    verify_euler_identities,
)
from .ideals import IdealGens
from .linalg import Frame, subspace_equal, subspace_span
from .sampling import DEFAULT_SEED, make_rng, random_homogeneous_deriv, random_poly, random_weight_deriv
from .sliso import verify_iso
from .subalg import (
    build_L,
    closure_lemma_check,
    explicit_lk,
    lk_quotient_irreducibility_probe,
    maximality_probe,
    nonnegative_part,
    stabilizer_truncated,
)

SUITES = (
    "euler", "products", "sl-iso", "th5-probe", "lk",
    "minor-identity", "delta", "closure", "example-simple",
)

SIMPLE_EXAMPLE = "[1, 1 + x*y]"


class SuiteOptions:
    """Parameters shared by the suites; ``None`` means the suite default."""

    def __init__(self, n: Optional[int] = None, imax: Optional[int] = None,
                 cap: Optional[int] = None, compare: Optional[int] = None,
                 deg_f: Optional[int] = None, deg_cof: Optional[int] = None,
                 seed: Optional[int] = None, count: Optional[int] = None):
        self.n = n
        self.imax = imax
        self.cap = cap
        self.compare = compare
        self.deg_f = deg_f
        self.deg_cof = deg_cof
        self.seed = DEFAULT_SEED if seed is None else seed
        self.count = count

    def ns(self, default: Tuple[int, ...]) -> Tuple[int, ...]:
        return (self.n,) if self.n is not None else default


def _summary(items: Dict[str, dict]) -> dict:
    failing = sorted(k for k, v in items.items() if not v["passed"])
    return {"results": items, "failing": failing, "passed": not failing}


def mn_decomposition_check(n: int, max_index: int) -> dict:
    """Dimensions, idempotence and divergence-freeness of the M/N split."""
    rows = {}
    for m in range(max_index + 1):
        comp = component_basis(n, m)
        frame = Frame(n, m + 1)
        dims_ok = (
            len(comp.m_basis) + len(comp.n_basis) == comp.dim == component_dim(n, m)
            and len(comp.n_basis) == n_dim(n, m)
        )
        spans_ok = subspace_span(frame, comp.m_basis + comp.n_basis).dim == comp.dim
        idem = div_free = True
        for d in comp.basis:
            mp, np_ = mn_project(d, m)
            div_free = div_free and divergence(mp).is_zero()
            mm, mn = mn_project(mp, m)
            nm, nn = mn_project(np_, m)
            idem = idem and mm == mp and mn.is_zero() and nn == np_ and nm.is_zero()
        rows[str(m)] = {
            "dim_W": comp.dim,
            "dim_M": len(comp.m_basis),
            "dim_N": len(comp.n_basis),
            "direct_sum": dims_ok and spans_ok,
            "idempotent": idem,
            "m_part_divergence_free": div_free,
            "passed": dims_ok and spans_ok and idem and div_free,
        }
    return {"n": n, "max_index": max_index, **_summary(rows)}


def suite_euler(opts: SuiteOptions) -> dict:
    deg = opts.imax if opts.imax is not None else 4
    items = {}
    for n in opts.ns((2, 3, 4)):
        items[f"identities n={n}"] = verify_euler_identities(n, deg)
        items[f"mn-split n={n}"] = mn_decomposition_check(n, deg)
    return _summary(items)


def suite_products(opts: SuiteOptions) -> dict:
    imax = opts.imax if opts.imax is not None else 3
    return _summary({f"n={n}": verify_bracket_table(n, imax) for n in opts.ns((2, 3))})


def suite_sl_iso(opts: SuiteOptions) -> dict:
    return _summary({f"n={n}": verify_iso(n) for n in opts.ns((2, 3, 4))})


def monomials_outside_L(n: int, max_degree: int) -> List[Deriv]:
    """Monomial derivations of degree ``<= max_degree`` outside ``W^[-1] + W^[0] + N_1``."""
    L = build_L(n)
    frame = Frame(n, max_degree)
    out = []
    for idx in range(frame.dim):
        d = frame.basis_deriv(idx)
        if not L.contains(d):
            out.append(d)
    return out


def suite_maximality(opts: SuiteOptions) -> dict:
    n = opts.n or 2
    cap = opts.cap or 5
    compare = opts.compare if opts.compare is not None else 3
    L = build_L(n)
    items = {}
    for d in monomials_outside_L(n, compare):
        rep = maximality_probe(L, d, cap, compare)
        rep["passed"] = rep["equal"]
        items[f"L + {format_deriv(d)}"] = rep
    nonneg = nonnegative_part(n, cap)
    rep = maximality_probe(nonneg, Deriv.coordinate(n, 1), cap, compare)
    rep["passed"] = rep["equal"]
    items["nonnegative + d/dx1"] = rep
    return _summary(items)


def lk_check(n: int, k: int, cap: int) -> dict:
    stab = stabilizer_truncated(IdealGens.coordinate(n, k), cap)
    expl = explicit_lk(n, k, cap)
    equal = subspace_equal(stab, expl)
    probe = lk_quotient_irreducibility_probe(n, k, cap)
    return {
        "stabilizer_dim": stab.dim,
        "explicit_dim": expl.dim,
        "stabilizer_equals_explicit": equal,
        "quotient": probe,
        "passed": equal and probe["passed"],
    }


def suite_lk(opts: SuiteOptions) -> dict:
    cap = opts.cap or 3
    if opts.n is not None:
        cases = [(opts.n, k) for k in range(1, opts.n)]
    else:
        cases = [(2, 1), (3, 1), (3, 2)]
    return _summary({f"n={n},k={k}": lk_check(n, k, cap) for n, k in cases})


# --- pair families for the minor identities ----------------------------------


def homogeneous_euler_pairs(rng: random.Random, n: int, per_index: int
                            ) -> List[Tuple[str, Deriv, Deriv, Poly, Poly]]:
    """``(D, E)`` with ``D`` in ``W^[i]``, where ``[D, E] = -i D``."""
    e = euler(n)
    out = []
    for i in range(-1, 3):
        made = 0
        while made < per_index:
            d = random_homogeneous_deriv(rng, n, i)
            if rank_over_A([d, e]) < 2:
                continue
            out.append((f"homogeneous i={i}", d, e, Poly.const(n, -i), Poly.zero(n)))
            made += 1
    return out


def triangular_pairs(rng: random.Random, n: int, count: int
                     ) -> List[Tuple[str, Deriv, Deriv, Poly, Poly]]:
    """Two triangular shapes with known bracket coefficients.

    ``d/dx_n`` against a field whose coefficients avoid ``x_n`` commutes;
    ``d/dx_1`` against ``E + sum h_k d/dx_k`` with ``h_k`` free of ``x_1``
    brackets to ``d/dx_1``.
    """
    out = []
    shift_last = Deriv.coordinate(n, n)
    shift_first = Deriv.coordinate(n, 1)
    early = list(range(1, n))
    late = list(range(2, n + 1))
    made = 0
    while made < count:
        b = Deriv([random_poly(rng, n, 3, variables=early) for _ in range(n)])
        if rank_over_A([shift_last, b]) == 2:
            out.append(("commuting", shift_last, b, Poly.zero(n), Poly.zero(n)))
            made += 1
    made = 0
    while made < count:
        b = euler(n) + Deriv([random_poly(rng, n, 3, density=0.3, variables=late) for _ in range(n)])
        if rank_over_A([shift_first, b]) == 2:
            out.append(("euler-shifted", shift_first, b, Poly.one(n), Poly.zero(n)))
            made += 1
    return out


def minor_pairs(seed: int, ns: Tuple[int, ...], per_index: int = 6, triangular: int = 4):
    rng = make_rng(seed)
    pairs = []
    for n in ns:
        pairs += homogeneous_euler_pairs(rng, n, per_index)
        pairs += triangular_pairs(rng, n, triangular)
    return pairs


def _pair_entry(kind: str, a: Deriv, b: Deriv, mu1: Poly, mu2: Poly) -> dict:
    solved = bracket_span_coeffs(a, b)
    return {
        "family": kind,
        "a": format_deriv(a),
        "b": format_deriv(b),
        "mu1": format_poly(mu1),
        "mu2": format_poly(mu2),
        "coefficients_recovered": solved == (mu1, mu2),
    }


def suite_minor_identity(opts: SuiteOptions) -> dict:
    per = opts.count or 6
    items = {}
    for k, (kind, a, b, mu1, mu2) in enumerate(minor_pairs(opts.seed, opts.ns((2, 3)), per)):
        entry = _pair_entry(kind, a, b, mu1, mu2)
        rep = verify_minor_identity(a, b, mu1, mu2)
        entry.update(ideal_invariant=rep["ideal_invariant"],
                     passed=rep["passed"] and entry["coefficients_recovered"])
        items[f"pair {k:03d} n={a.n}"] = entry
    return _summary(items)


def suite_delta(opts: SuiteOptions) -> dict:
    per = opts.count or 6
    items = {}
    for k, (kind, a, b, mu1, mu2) in enumerate(minor_pairs(opts.seed, (2,), per, triangular=6)):
        entry = _pair_entry(kind, a, b, mu1, mu2)
        rep = verify_delta_corollary(a, b, mu1, mu2)
        entry.update({key: rep[key] for key in ("delta", "cofactor_first", "cofactor_second",
                                                "first", "second")})
        entry["passed"] = rep["passed"] and entry["coefficients_recovered"]
        items[f"pair {k:03d}"] = entry
    return _summary(items)


def closure_pairs(seed: int, n: int, count: int) -> List[Tuple[Deriv, Deriv]]:
    rng = make_rng(seed)
    out = []
    while len(out) < count:
        d1, d2 = random_weight_deriv(rng, n), random_weight_deriv(rng, n)
        if rank_over_A([d1, d2]) == 2:
            out.append((d1, d2))
    return out


def suite_closure(opts: SuiteOptions) -> dict:
    n = opts.n or 2
    cap = opts.cap or 6
    compare = opts.compare if opts.compare is not None else 4
    items = {}
    for k, (d1, d2) in enumerate(closure_pairs(opts.seed, n, opts.count or 20)):
        rep = closure_lemma_check(d1, d2, cap, compare)
        rep.update(d1=format_deriv(d1), d2=format_deriv(d2), passed=rep["holds"])
        items[f"pair {k:03d}"] = rep
    return _summary(items)


def suite_example_simple(opts: SuiteOptions) -> dict:
    from .deriv import parse_deriv

    d = parse_deriv(SIMPLE_EXAMPLE, 2)
    deg_f = opts.deg_f or 3
    deg_cof = opts.deg_cof if opts.deg_cof is not None else 2
    rep = simplicity_probe(d, deg_f, deg_cof)
    rep["passed"] = rep["verdict"] == NO_OBSTRUCTION and rep["coefficient_gcd"] == "1"
    return _summary({"d/dx + (1 + xy) d/dy": rep})


RUNNERS: Dict[str, Callable[[SuiteOptions], dict]] = {
    "euler": suite_euler,
    "products": suite_products,
    "sl-iso": suite_sl_iso,
    "th5-probe": suite_maximality,
    "lk": suite_lk,
    "minor-identity": suite_minor_identity,
    "delta": suite_delta,
    "closure": suite_closure,
    "example-simple": suite_example_simple,
}


def run_suite(name: str, opts: Optional[SuiteOptions] = None) -> dict:
    if name not in RUNNERS:
        raise KeyError(f"unknown suite {name!r}; choose from {', '.join(SUITES)}")
    opts = opts or SuiteOptions()
    report = RUNNERS[name](opts)
    return {"suite": name, "seed": opts.seed, **report}
