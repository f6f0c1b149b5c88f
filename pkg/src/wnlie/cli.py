"""Command-line front end.

Every command prints one key-sorted JSON object (or an indented text
rendering with ``--format pretty``).  Exit codes: 0 success, 1 failed
verification or domain error, 2 usage error, 3 unparsable polynomial or
derivation input.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from fractions import Fraction
from typing import Callable, Dict, List, Optional, Sequence

from .arith import ArityError, Poly, PolyParseError, as_rat, format_poly, multi_gcd, parse_poly
from .darboux import find_darboux_detailed, simplicity_probe
from .deriv import (
    Deriv,
    apply,
    bracket,
    bracket_span_coeffs,
    deriv_to_json,
    divergence,
    evaluate_at,
    format_deriv,
    jacobian_potential,
    minor,
    parse_deriv,
    rank_over_A,
    verify_minor_identity,
)
from .grading import graded_parts, grading_index, mn_project
from .ideals import IdealGens, groebner, is_invariant, normal_form, tangent_realizer
from .linalg import Frame, subspace_span
from .sampling import DEFAULT_SEED
from .sliso import phi, phi_table, verify_iso
from .subalg import (
    a_span,
    build_L,
    lie_closure,
    lk_member,
    lk_quotient_irreducibility_probe,
    maximality_probe,
    nonnegative_part,
    stabilizer_truncated,
)
from .suites import SUITES, SuiteOptions, run_suite

DEFAULT_MAX_CAP = 12


class UsageError(Exception):
    """Bad arguments that argparse cannot detect (exit code 2)."""


class VerificationFailed(Exception):
    """Carries a report whose checks did not all pass (exit code 1)."""

    def __init__(self, report: dict):
        super().__init__("verification failed")
        self.report = report


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        raise UsageError(message)


# --- argument helpers ---------------------------------------------------------


def max_cap() -> int:
    raw = os.environ.get("WN_MAX_CAP", str(DEFAULT_MAX_CAP))
    try:
        return int(raw)
    except ValueError:
        raise UsageError(f"WN_MAX_CAP must be an integer, got {raw!r}")


def _check_bound(name: str, value: Optional[int], minimum: int = 1) -> None:
    if value is None:
        return
    if value < minimum:
        raise UsageError(f"{name} must be at least {minimum}")
    limit = max_cap()
    if value > limit:
        raise UsageError(f"{name}={value} exceeds WN_MAX_CAP={limit}")


def _seed(text: str) -> int:
    try:
        return int(text, 0)
    except ValueError:
        raise argparse.ArgumentTypeError(f"seed must be an integer (decimal or 0x-hex): {text!r}")


def _vector(text: str, n: int) -> List[Fraction]:
    parts = [p for p in text.replace(" ", "").split(",") if p]
    try:
        values = [as_rat(p) for p in parts]
    except (ValueError, ZeroDivisionError):
        raise PolyParseError(f"not a vector of rationals: {text!r}")
    if len(values) != n:
        raise ArityError(f"expected {n} coordinates, got {len(values)} in {text!r}")
    return values


def _polys(texts: Sequence[str], n: int) -> List[Poly]:
    return [parse_poly(t, n) for t in texts]


def _derivs(texts: Sequence[str], n: int) -> List[Deriv]:
    return [parse_deriv(t, n) for t in texts]


def _ideal(args) -> IdealGens:
    return IdealGens(args.n, _polys(args.ideal, args.n))


def _dj(d: Deriv) -> dict:
    return deriv_to_json(d)


def _basis_out(space, show: bool) -> dict:
    out = {"dim": space.dim}
    if show:
        out["basis"] = [format_deriv(b) for b in space.basis()]
    return out


# --- command handlers ---------------------------------------------------------


def cmd_bracket(args) -> dict:
    a, b = _derivs([args.a, args.b], args.n)
    return {"result": _dj(bracket(a, b))}


def cmd_apply(args) -> dict:
    d = parse_deriv(args.deriv, args.n)
    return {"result": format_poly(apply(d, parse_poly(args.poly, args.n)))}


def cmd_div(args) -> dict:
    return {"divergence": format_poly(divergence(parse_deriv(args.deriv, args.n)))}


def cmd_grade(args) -> dict:
    d = parse_deriv(args.deriv, args.n)
    return {
        "parts": {str(i): format_deriv(p) for i, p in graded_parts(d).items()},
        "homogeneous_index": grading_index(d),
    }


def cmd_mn_project(args) -> dict:
    d = parse_deriv(args.deriv, args.n)
    i = args.index if args.index is not None else grading_index(d)
    if i is None:
        raise ValueError("derivation is not homogeneous; pass --index for the zero field")
    m_part, n_part = mn_project(d, i)
    return {"index": i, "m_part": format_deriv(m_part), "n_part": format_deriv(n_part)}


def cmd_rank(args) -> dict:
    return {"rank": rank_over_A(_derivs(args.derivs, args.n))}


def cmd_gcd(args) -> dict:
    return {"gcd": format_poly(multi_gcd(_polys(args.polys, args.n)))}


def cmd_groebner(args) -> dict:
    gb = groebner(_polys(args.polys, args.n), args.order)
    return {"order": args.order, "basis": [format_poly(g, args.order) for g in gb.basis]}


def cmd_member(args) -> dict:
    ideal = _ideal(args)
    p = parse_poly(args.poly, args.n)
    nf = normal_form(p, ideal.groebner())
    return {"member": nf.is_zero(), "normal_form": format_poly(nf)}


def cmd_invariant(args) -> dict:
    return {"invariant": is_invariant(_ideal(args), parse_deriv(args.deriv, args.n))}


def cmd_tangent(args) -> dict:
    ideal = _ideal(args)
    p = _vector(args.point, args.n)
    u = _vector(args.vector, args.n)
    d = tangent_realizer(ideal, p, u)
    value = list(evaluate_at(d, p))
    report = {
        "derivation": _dj(d),
        "invariant": is_invariant(ideal, d),
        "value_at_point": [str(v) for v in value],
        "matches": value == u,
    }
    if not (report["invariant"] and report["matches"]):
        raise VerificationFailed(report)
    return report


def cmd_minor(args) -> dict:
    a, b = _derivs([args.a, args.b], args.n)
    return {"minor": format_poly(minor(a, b, args.i, args.j))}


def _mus(args, a: Deriv, b: Deriv):
    if (args.mu1 is None) != (args.mu2 is None):
        raise UsageError("give both --mu1 and --mu2, or neither")
    if args.mu1 is not None:
        return parse_poly(args.mu1, args.n), parse_poly(args.mu2, args.n)
    mus = bracket_span_coeffs(a, b)
    if mus is None:
        raise ValueError("[a, b] is not a polynomial combination of a and b")
    return mus


def cmd_minor_identity(args) -> dict:
    a, b = _derivs([args.a, args.b], args.n)
    mu1, mu2 = _mus(args, a, b)
    report = verify_minor_identity(a, b, mu1, mu2)
    report.update(mu1=format_poly(mu1), mu2=format_poly(mu2))
    if not report["passed"]:
        raise VerificationFailed(report)
    return report


def cmd_span_coeffs(args) -> dict:
    a, b = _derivs([args.a, args.b], args.n)
    mus = bracket_span_coeffs(a, b)
    if mus is None:
        return {"in_span": False}
    return {"in_span": True, "mu1": format_poly(mus[0]), "mu2": format_poly(mus[1])}


def cmd_closure(args) -> dict:
    _check_bound("--cap", args.cap)
    sub = lie_closure(_derivs(args.derivs, args.n), args.cap, n=args.n)
    return {"cap": args.cap, "status": sub.status, **_basis_out(sub.space, args.basis)}


def cmd_a_span(args) -> dict:
    _check_bound("--cap", args.cap)
    ds = _derivs(args.derivs, args.n)
    frame = Frame(args.n, max([args.cap] + [int(d.degree()) for d in ds if d]))
    return {"cap": args.cap, **_basis_out(a_span(subspace_span(frame, ds), args.cap), args.basis)}


def cmd_stabilizer(args) -> dict:
    _check_bound("--cap", args.cap)
    return {"cap": args.cap, **_basis_out(stabilizer_truncated(_ideal(args), args.cap), args.basis)}


def cmd_lk_member(args) -> dict:
    return {"k": args.k, "member": lk_member(parse_deriv(args.deriv, args.n), args.k)}


def cmd_lk_irred(args) -> dict:
    _check_bound("--cap", args.cap)
    report = lk_quotient_irreducibility_probe(args.n, args.k, args.cap)
    if not report["passed"]:
        raise VerificationFailed(report)
    return report


def cmd_build_l(args) -> dict:
    L = build_L(args.n)
    return {"status": L.status, "dim": L.dim, "basis": [format_deriv(b) for b in L.basis()]}


def cmd_max_probe(args) -> dict:
    _check_bound("--cap", args.cap)
    d = parse_deriv(args.deriv, args.n)
    sub = build_L(args.n) if args.base == "L" else nonnegative_part(args.n, args.cap)
    report = maximality_probe(sub, d, args.cap, args.compare)
    report["base"] = args.base
    return report


def cmd_phi(args) -> dict:
    if args.deriv is not None:
        m = phi(parse_deriv(args.deriv, args.n))
        return {"matrix": [[str(v) for v in row] for row in m.data]}
    summary = verify_iso(args.n)
    report = {"table": {name: rows for name, rows in phi_table(args.n)}, "summary": summary}
    if not summary["passed"]:
        raise VerificationFailed(report)
    return report


def cmd_verify(args) -> dict:
    for name in ("imax", "cap", "deg_f"):
        _check_bound("--" + name.replace("_", "-"), getattr(args, name))
    opts = SuiteOptions(n=args.n, imax=args.imax, cap=args.cap, compare=args.compare,
                        deg_f=args.deg_f, deg_cof=args.deg_cof, seed=args.seed, count=args.count)
    report = run_suite(args.suite, opts)
    if not report["passed"]:
        raise VerificationFailed(report)
    return report


def cmd_darboux(args) -> dict:
    _check_bound("--deg-f", args.deg_f)
    d = parse_deriv(args.deriv, args.n)
    res = find_darboux_detailed(d, args.deg_f, args.deg_cof)
    return {
        "derivation": format_deriv(d),
        "witnesses": [w.to_json() for w in res["witnesses"]],
        "unresolved_branches": res["unresolved_branches"],
    }


def cmd_simple_probe(args) -> dict:
    _check_bound("--deg-f", args.deg_f)
    return simplicity_probe(parse_deriv(args.deriv, args.n), args.deg_f, args.deg_cof)


def cmd_potential(args) -> dict:
    f = jacobian_potential(parse_deriv(args.deriv, args.n))
    return {"potential": None if f is None else format_poly(f)}


# --- parser -------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--seed", type=_seed, default=DEFAULT_SEED,
                        help="seed for randomized suites (default 0x574E)")
    common.add_argument("--format", choices=("json", "pretty"), default="json")
    common.add_argument("--pretty", dest="format", action="store_const", const="pretty",
                        help="shorthand for --format pretty")

    def need_n(p, required=True):
        p.add_argument("-n", type=int, required=required, help="number of variables")

    parser = _Parser(prog="wnlie", description="Exact computations in W_n, the Lie algebra "
                     "of derivations of K[x1..xn].")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)
    handlers: Dict[str, Callable] = {}

    def add(name, handler, help_text, n_required=True):
        p = sub.add_parser(name, parents=[common], help=help_text)
        need_n(p, n_required)
        handlers[name] = handler
        p.set_defaults(handler=handler)
        return p

    p = add("bracket", cmd_bracket, "Lie bracket of two derivations")
    p.add_argument("a")
    p.add_argument("b")
    p = add("apply", cmd_apply, "apply a derivation to a polynomial")
    p.add_argument("deriv")
    p.add_argument("poly")
    p = add("div", cmd_div, "divergence")
    p.add_argument("deriv")
    p = add("grade", cmd_grade, "homogeneous components by grading index")
    p.add_argument("deriv")
    p = add("mn-project", cmd_mn_project, "M/N parts of a homogeneous derivation")
    p.add_argument("deriv")
    p.add_argument("--index", type=int)
    p = add("rank", cmd_rank, "rank over the polynomial ring")
    p.add_argument("derivs", nargs="+")
    p = add("gcd", cmd_gcd, "monic gcd of polynomials")
    p.add_argument("polys", nargs="+")
    p = add("groebner", cmd_groebner, "reduced Groebner basis")
    p.add_argument("polys", nargs="+")
    p.add_argument("--order", choices=("grevlex", "lex"), default="grevlex")
    for name, handler, help_text in (
        ("member", cmd_member, "ideal membership"),
        ("invariant", cmd_invariant, "is the ideal preserved by a derivation"),
    ):
        p = add(name, handler, help_text)
        p.add_argument("poly" if name == "member" else "deriv")
        p.add_argument("--ideal", "-I", nargs="+", required=True, metavar="GEN")
    p = add("tangent", cmd_tangent, "derivation preserving I with a prescribed vector at p")
    p.add_argument("--ideal", "-I", nargs="+", required=True, metavar="GEN")
    p.add_argument("--point", required=True, help="comma-separated rationals")
    p.add_argument("--vector", required=True, help="comma-separated rationals")
    p = add("minor", cmd_minor, "2x2 minor a_i b_j - a_j b_i")
    p.add_argument("a")
    p.add_argument("b")
    p.add_argument("i", type=int)
    p.add_argument("j", type=int)
    p = add("minor-identity", cmd_minor_identity, "check the minor identities for a pair")
    p.add_argument("a")
    p.add_argument("b")
    p.add_argument("--mu1")
    p.add_argument("--mu2")
    p = add("span-coeffs", cmd_span_coeffs, "polynomial mu with [a,b] = mu1 a + mu2 b")
    p.add_argument("a")
    p.add_argument("b")
    for name, handler, help_text in (
        ("closure", cmd_closure, "truncated Lie closure"),
        ("a-span", cmd_a_span, "polynomial span truncated at the cap"),
    ):
        p = add(name, handler, help_text)
        p.add_argument("derivs", nargs="+")
        p.add_argument("--cap", type=int, required=True)
        p.add_argument("--basis", action="store_true", help="list a basis")
    p = add("stabilizer", cmd_stabilizer, "truncated stabilizer of an ideal")
    p.add_argument("--ideal", "-I", nargs="+", required=True, metavar="GEN")
    p.add_argument("--cap", type=int, required=True)
    p.add_argument("--basis", action="store_true", help="list a basis")
    p = add("lk-member", cmd_lk_member, "membership in L_k")
    p.add_argument("deriv")
    p.add_argument("-k", type=int, required=True)
    p = add("lk-irred", cmd_lk_irred, "irreducibility probe of W_n / L_k")
    p.add_argument("-k", type=int, required=True)
    p.add_argument("--cap", type=int, default=3)
    add("build-L", cmd_build_l, "basis of W^[-1] + W^[0] + N_1")
    p = add("max-probe", cmd_max_probe, "does adding d generate everything up to --compare")
    p.add_argument("deriv")
    p.add_argument("--cap", type=int, default=5)
    p.add_argument("--compare", type=int)
    p.add_argument("--base", choices=("L", "nonnegative"), default="L")
    p = add("phi", cmd_phi, "matrix image in sl_{n+1}; without a derivation, the full table")
    p.add_argument("deriv", nargs="?")
    p = add("verify", cmd_verify, "run a named verification suite", n_required=False)
    p.add_argument("suite", choices=SUITES)
    p.add_argument("--imax", type=int)
    p.add_argument("--cap", type=int)
    p.add_argument("--compare", type=int)
    p.add_argument("--deg-f", type=int)
    p.add_argument("--deg-cof", type=int)
    p.add_argument("--count", type=int, help="pairs per family in randomized suites")
    for name, handler, help_text in (
        ("darboux", cmd_darboux, "search for Darboux polynomials"),
        ("simple-probe", cmd_simple_probe, "bounded search for obstructions to simplicity"),
    ):
        p = add(name, handler, help_text)
        p.add_argument("--deriv", required=True)
        p.add_argument("--deg-f", type=int, required=True)
        p.add_argument("--deg-cof", type=int)
    p = add("potential", cmd_potential, "f with D = D_f, for divergence-free D in two variables")
    p.add_argument("deriv")
    return parser


# --- output -------------------------------------------------------------------


def _scalar(value) -> str:
    if value is None:
        return "null"
    if isinstance(value, bool):
        return "true" if value else "false"
    return str(value)


def _pretty_lines(value, indent: int) -> List[str]:
    pad = "  " * indent
    if isinstance(value, dict):
        out = []
        for k in sorted(value):
            v = value[k]
            if isinstance(v, (dict, list)) and v and not _flat_list(v):
                out.append(f"{pad}{k}:")
                out.extend(_pretty_lines(v, indent + 1))
            else:
                out.append(f"{pad}{k}: {_inline(v)}")
        return out
    if isinstance(value, list) and not _flat_list(value):
        out = []
        for v in value:
            out.append(f"{pad}-")
            out.extend(_pretty_lines(v, indent + 1))
        return out
    return [pad + _inline(value)]


def _flat_list(value) -> bool:
    return isinstance(value, list) and all(not isinstance(v, (dict, list)) for v in value)


def _inline(value) -> str:
    if isinstance(value, list):
        return "[" + ", ".join(_scalar(v) for v in value) + "]"
    if isinstance(value, dict):
        return "{}"
    return _scalar(value)


def render(obj, fmt: str) -> str:
    if fmt == "json":
        return json.dumps(obj, sort_keys=True)
    return "\n".join(_pretty_lines(obj, 0))


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except UsageError as exc:
        print(f"wnlie: error: {exc}", file=sys.stderr)
        return 2
    except SystemExit as exc:  # --help
        return int(exc.code or 0)
    fmt = args.format
    try:
        if args.n is not None and args.n < 1:
            raise UsageError("-n must be at least 1")
        header = {"command": args.command, "n": args.n, "seed": args.seed}
        body = args.handler(args)
        code = 0
    except UsageError as exc:
        print(f"wnlie: error: {exc}", file=sys.stderr)
        return 2
    except (PolyParseError, ArityError) as exc:
        print(render({"error": str(exc), "kind": "parse"}, fmt))
        return 3
    except VerificationFailed as exc:
        body, code = exc.report, 1
    except (ValueError, ZeroDivisionError) as exc:
        print(render({"error": str(exc), "kind": type(exc).__name__}, fmt))
        return 1
    print(render({**header, **body}, fmt))
    return code


if __name__ == "__main__":
    sys.exit(main())
