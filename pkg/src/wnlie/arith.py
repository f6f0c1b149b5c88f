"""Exact rational scalars and sparse multivariate polynomials.

Coefficients are :class:`fractions.Fraction` values, always reduced.  A
polynomial in ``n`` variables is a map from exponent tuples to nonzero
coefficients.  Variables are numbered ``1..n`` in every public signature,
matching the ``x1, x2, ...`` text syntax.
"""

from __future__ import annotations

import re
from fractions import Fraction
from itertools import combinations_with_replacement
from typing import Callable, Dict, Iterable, Iterator, List, Sequence, Tuple

Exponent = Tuple[int, ...]
Rat = Fraction

#: Degree of the zero polynomial.  Compares below every integer, and is
#: never confused with the grading index -1.
NEG_INF = float("-inf")


class ArityError(ValueError):
    """Operands live in polynomial rings with different variable counts."""


class PolyParseError(ValueError):
    """Text could not be parsed with the polynomial grammar."""


def as_rat(value) -> Fraction:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return Fraction(value)
    raise TypeError(f"cannot use {type(value).__name__} as an exact rational")


# --- monomial orders -------------------------------------------------------


def grevlex_key(exp: Exponent):
    return (sum(exp), tuple(-e for e in reversed(exp)))


def lex_key(exp: Exponent):
    return exp


ORDERS: Dict[str, Callable] = {"grevlex": grevlex_key, "lex": lex_key}


def order_key(order: str) -> Callable:
    try:
        return ORDERS[order]
    except KeyError:
        raise ValueError(f"unknown monomial order {order!r}") from None


def monomials_of_degree(n: int, d: int) -> List[Exponent]:
    """All exponent vectors of total degree ``d``, ascending in grevlex."""
    if d < 0:
        return []
    out = []
    for combo in combinations_with_replacement(range(n), d):
        exp = [0] * n
        for v in combo:
            exp[v] += 1
        out.append(tuple(exp))
    out.sort(key=grevlex_key)
    return out


def monomials_up_to(n: int, d: int) -> List[Exponent]:
    out = []
    for k in range(d + 1):
        out.extend(monomials_of_degree(n, k))
    return out


def exp_divides(a: Exponent, b: Exponent) -> bool:
    return all(x <= y for x, y in zip(a, b))


def exp_lcm(a: Exponent, b: Exponent) -> Exponent:
    return tuple(max(x, y) for x, y in zip(a, b))


def exp_sub(a: Exponent, b: Exponent) -> Exponent:
    return tuple(x - y for x, y in zip(a, b))


def exp_add(a: Exponent, b: Exponent) -> Exponent:
    return tuple(x + y for x, y in zip(a, b))


# --- polynomials -----------------------------------------------------------


class Poly:
    """Immutable sparse polynomial with rational coefficients."""

    __slots__ = ("n", "terms", "_hash")

    def __init__(self, n: int, terms: Dict[Exponent, Fraction] | None = None):
        if n < 0:
            raise ValueError("variable count must be non-negative")
        clean = {}
        if terms:
            for exp, c in terms.items():
                if len(exp) != n:
                    raise ArityError(f"monomial {exp} does not have {n} exponents")
                c = as_rat(c)
                if c:
                    clean[tuple(exp)] = c
        self.n = n
        self.terms = clean
        self._hash = None

    @classmethod
    def _raw(cls, n: int, terms: Dict[Exponent, Fraction]) -> "Poly":
        # terms already canonical: right arity, no zero coefficients
        p = object.__new__(cls)
        p.n = n
        p.terms = terms
        p._hash = None
        return p

    # constructors
    @classmethod
    def zero(cls, n: int) -> "Poly":
        return cls._raw(n, {})

    @classmethod
    def const(cls, n: int, c) -> "Poly":
        c = as_rat(c)
        return cls._raw(n, {(0,) * n: c} if c else {})

    @classmethod
    def one(cls, n: int) -> "Poly":
        return cls.const(n, 1)

    @classmethod
    def var(cls, n: int, i: int) -> "Poly":
        """The variable ``x_i`` (1-based)."""
        if not 1 <= i <= n:
            raise IndexError(f"variable index {i} out of range 1..{n}")
        exp = [0] * n
        exp[i - 1] = 1
        return cls._raw(n, {tuple(exp): Fraction(1)})

    @classmethod
    def monomial(cls, exp: Sequence[int], c=1) -> "Poly":
        c = as_rat(c)
        exp = tuple(exp)
        return cls._raw(len(exp), {exp: c} if c else {})

    # predicates and basic data
    def __bool__(self) -> bool:
        return bool(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def is_constant(self) -> bool:
        return not self.terms or (len(self.terms) == 1 and (0,) * self.n in self.terms)

    def constant_term(self) -> Fraction:
        return self.terms.get((0,) * self.n, Fraction(0))

    def degree(self):
        """Total degree; :data:`NEG_INF` for the zero polynomial."""
        if not self.terms:
            return NEG_INF
        return max(sum(e) for e in self.terms)

    def degree_in(self, i: int):
        """Degree in ``x_i`` (1-based)."""
        if not self.terms:
            return NEG_INF
        return max(e[i - 1] for e in self.terms)

    def is_homogeneous(self) -> bool:
        return len({sum(e) for e in self.terms}) <= 1

    def variables(self) -> List[int]:
        """1-based indices of variables that occur."""
        used = set()
        for e in self.terms:
            used.update(k + 1 for k, a in enumerate(e) if a)
        return sorted(used)

    def coeff(self, exp: Sequence[int]) -> Fraction:
        return self.terms.get(tuple(exp), Fraction(0))

    def sorted_terms(self, order: str = "grevlex") -> List[Tuple[Exponent, Fraction]]:
        """Terms from largest to smallest monomial."""
        key = order_key(order)
        return sorted(self.terms.items(), key=lambda t: key(t[0]), reverse=True)

    def leading_term(self, order: str = "grevlex") -> Tuple[Exponent, Fraction]:
        if not self.terms:
            raise ValueError("zero polynomial has no leading term")
        key = order_key(order)
        exp = max(self.terms, key=key)
        return exp, self.terms[exp]

    def leading_coefficient(self, order: str = "grevlex") -> Fraction:
        return self.leading_term(order)[1]

    def monic(self, order: str = "grevlex") -> "Poly":
        if not self.terms:
            return self
        lc = self.leading_coefficient(order)
        if lc == 1:
            return self
        return self._raw(self.n, {e: c / lc for e, c in self.terms.items()})

    # arithmetic
    def _check(self, other: "Poly") -> None:
        if self.n != other.n:
            raise ArityError(f"variable count mismatch: {self.n} vs {other.n}")

    def _coerce(self, other) -> "Poly":
        if isinstance(other, Poly):
            self._check(other)
            return other
        if isinstance(other, (int, Fraction)):
            return Poly.const(self.n, other)
        return NotImplemented

    def __add__(self, other) -> "Poly":
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if len(other.terms) > len(self.terms):
            big, small = other.terms, self.terms
        else:
            big, small = self.terms, other.terms
        out = dict(big)
        for e, c in small.items():
            s = out.get(e)
            if s is None:
                out[e] = c
            else:
                s += c
                if s:
                    out[e] = s
                else:
                    del out[e]
        return self._raw(self.n, out)

    __radd__ = __add__

    def __neg__(self) -> "Poly":
        return self._raw(self.n, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other) -> "Poly":
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out = dict(self.terms)
        for e, c in other.terms.items():
            s = out.get(e)
            if s is None:
                out[e] = -c
            else:
                s -= c
                if s:
                    out[e] = s
                else:
                    del out[e]
        return self._raw(self.n, out)

    def __rsub__(self, other) -> "Poly":
        return (-self) + other

    def scale(self, c) -> "Poly":
        c = as_rat(c)
        if not c:
            return Poly.zero(self.n)
        return self._raw(self.n, {e: v * c for e, v in self.terms.items()})

    def mul_term(self, exp: Exponent, c) -> "Poly":
        """Multiply by the single term ``c * x^exp``."""
        c = as_rat(c)
        if not c:
            return Poly.zero(self.n)
        return self._raw(
            self.n,
            {tuple(a + b for a, b in zip(e, exp)): v * c for e, v in self.terms.items()},
        )

    def __mul__(self, other) -> "Poly":
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        if not isinstance(other, Poly):
            return NotImplemented
        self._check(other)
        if not self.terms or not other.terms:
            return Poly.zero(self.n)
        out: Dict[Exponent, Fraction] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                s = out.get(e)
                out[e] = c1 * c2 if s is None else s + c1 * c2
        return self._raw(self.n, {e: c for e, c in out.items() if c})

    def __rmul__(self, other) -> "Poly":
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        return NotImplemented

    def __truediv__(self, other) -> "Poly":
        if isinstance(other, (int, Fraction)):
            return self.scale(Fraction(1) / as_rat(other))
        return NotImplemented

    def __pow__(self, k: int) -> "Poly":
        if k < 0:
            raise ValueError("negative powers are not polynomials")
        result = Poly.one(self.n)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __eq__(self, other) -> bool:
        if isinstance(other, Poly):
            return self.n == other.n and self.terms == other.terms
        if isinstance(other, (int, Fraction)):
            return self.is_constant() and self.constant_term() == other
        return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.n, frozenset(self.terms.items())))
        return self._hash

    # calculus and evaluation
    def partial(self, i: int) -> "Poly":
        return partial(self, i)

    def eval(self, point: Sequence) -> Fraction:
        return eval_poly(self, point)

    def substitute(self, values: Dict[int, object]) -> "Poly":
        """Substitute rationals for some variables (1-based keys); arity is kept."""
        vals = {i - 1: as_rat(v) for i, v in values.items()}
        out: Dict[Exponent, Fraction] = {}
        for e, c in self.terms.items():
            e2 = list(e)
            for k, v in vals.items():
                if e2[k]:
                    c = c * v ** e2[k]
                    e2[k] = 0
            if c:
                e2 = tuple(e2)
                out[e2] = out.get(e2, 0) + c
        return Poly(self.n, out)

    def homogeneous_parts(self) -> Dict[int, "Poly"]:
        return homogeneous_parts(self)

    def coeffs_in(self, i: int) -> Dict[int, "Poly"]:
        """Coefficients of powers of ``x_i``; each has ``x_i`` removed."""
        out: Dict[int, Dict[Exponent, Fraction]] = {}
        k = i - 1
        for e, c in self.terms.items():
            e2 = e[:k] + (0,) + e[k + 1:]
            out.setdefault(e[k], {})[e2] = c
        return {d: self._raw(self.n, t) for d, t in out.items()}

    def __repr__(self) -> str:
        return f"Poly({self.n}, {format_poly(self)!r})"

    def __str__(self) -> str:
        return format_poly(self)


def _check_pair(p: Poly, q: Poly) -> None:
    if p.n != q.n:
        raise ArityError(f"variable count mismatch: {p.n} vs {q.n}")


def poly_add(p: Poly, q: Poly) -> Poly:
    _check_pair(p, q)
    return p + q


def poly_mul(p: Poly, q: Poly) -> Poly:
    _check_pair(p, q)
    return p * q


def partial(p: Poly, i: int) -> Poly:
    """Formal partial derivative with respect to ``x_i`` (1-based)."""
    if not 1 <= i <= p.n:
        raise IndexError(f"variable index {i} out of range 1..{p.n}")
    k = i - 1
    out = {}
    for e, c in p.terms.items():
        a = e[k]
        if a:
            out[e[:k] + (a - 1,) + e[k + 1:]] = c * a
    return Poly._raw(p.n, out)


def homogeneous_parts(p: Poly) -> Dict[int, Poly]:
    parts: Dict[int, Dict[Exponent, Fraction]] = {}
    for e, c in p.terms.items():
        parts.setdefault(sum(e), {})[e] = c
    return {d: Poly._raw(p.n, parts[d]) for d in sorted(parts)}


def eval_poly(p: Poly, point: Sequence) -> Fraction:
    if len(point) != p.n:
        raise ArityError(f"point has {len(point)} coordinates, polynomial has {p.n} variables")
    pt = [as_rat(v) for v in point]
    total = Fraction(0)
    for e, c in p.terms.items():
        t = c
        for v, a in zip(pt, e):
            if a:
                t *= v ** a
        total += t
    return total


# --- division --------------------------------------------------------------


def divide(p: Poly, divisors: Sequence[Poly], order: str = "grevlex") -> Tuple[List[Poly], Poly]:
    """Multivariate division: ``p = sum(q_i * g_i) + r``.

    No term of ``r`` is divisible by any leading monomial of the divisors.
    """
    key = order_key(order)
    divs = []
    for g in divisors:
        _check_pair(p, g)
        if g.is_zero():
            divs.append(None)
        else:
            divs.append(g.leading_term(order))
    quots: List[Dict[Exponent, Fraction]] = [{} for _ in divisors]
    work = dict(p.terms)
    rem: Dict[Exponent, Fraction] = {}
    while work:
        lt = max(work, key=key)
        lc = work[lt]
        for idx, lead in enumerate(divs):
            if lead is None or not exp_divides(lead[0], lt):
                continue
            shift = exp_sub(lt, lead[0])
            factor = lc / lead[1]
            q = quots[idx]
            q[shift] = q.get(shift, 0) + factor
            for e, c in divisors[idx].terms.items():
                e2 = tuple(a + b for a, b in zip(e, shift))
                v = work.get(e2, 0) - factor * c
                if v:
                    work[e2] = v
                else:
                    work.pop(e2, None)
            break
        else:
            rem[lt] = lc
            del work[lt]
    return [Poly(p.n, q) for q in quots], Poly._raw(p.n, rem)


def exact_div(p: Poly, q: Poly) -> Poly:
    """Quotient ``p / q``; raises ``ArithmeticError`` unless ``q`` divides ``p``."""
    if q.is_zero():
        raise ZeroDivisionError("division by the zero polynomial")
    (quot,), rem = divide(p, [q])
    if rem:
        raise ArithmeticError(f"{q} does not divide {p}")
    return quot


def divides(q: Poly, p: Poly) -> bool:
    if q.is_zero():
        return p.is_zero()
    return divide(p, [q])[1].is_zero()


# --- gcd -------------------------------------------------------------------


def _lc_in(p: Poly, v: int) -> Poly:
    cs = p.coeffs_in(v)
    return cs[max(cs)]


def _prem(a: Poly, b: Poly, v: int) -> Poly:
    """Pseudo-remainder ``lc(b)^(da-db+1) * a mod b`` in ``x_v``."""
    db = b.degree_in(v)
    lb = _lc_in(b, v)
    steps = a.degree_in(v) - db + 1
    r = a
    xv = [0] * a.n
    while r and r.degree_in(v) >= db:
        dr = r.degree_in(v)
        lr = _lc_in(r, v)
        xv[v - 1] = dr - db
        r = lb * r - (lr * b).mul_term(tuple(xv), 1)
        steps -= 1
    if steps > 0:
        r = r * lb ** steps
    return r


def _content(p: Poly, v: int) -> Poly:
    g = Poly.zero(p.n)
    for c in p.coeffs_in(v).values():
        g = _gcd(g, c) if g else c
        if g.is_constant():
            return Poly.one(p.n)
    return g.monic()


def _primitive(p: Poly, v: int) -> Poly:
    return exact_div(p, _content(p, v))


def _subresultant_gcd(a: Poly, b: Poly, v: int) -> Poly:
    """gcd of two polynomials primitive in ``x_v`` via the subresultant PRS."""
    if a.degree_in(v) < b.degree_in(v):
        a, b = b, a
    one = Poly.one(a.n)
    g = h = one
    while True:
        delta = a.degree_in(v) - b.degree_in(v)
        r = _prem(a, b, v)
        if r.is_zero():
            return _primitive(b, v)
        if r.degree_in(v) == 0:
            return one
        a, b = b, exact_div(r, g * h ** delta)
        g = _lc_in(a, v)
        if delta == 1:
            h = g
        elif delta > 1:
            h = exact_div(g ** delta, h ** (delta - 1))


def _gcd(p: Poly, q: Poly) -> Poly:
    if p.is_zero():
        return q
    if q.is_zero():
        return p
    used = set(p.variables()) | set(q.variables())
    if not used:
        return Poly.one(p.n)
    v = max(used)
    if p.degree_in(v) == 0:
        return _gcd(p, _content(q, v))
    if q.degree_in(v) == 0:
        return _gcd(_content(p, v), q)
    cp, cq = _content(p, v), _content(q, v)
    c = _gcd(cp, cq)
    g = _subresultant_gcd(exact_div(p, cp), exact_div(q, cq), v)
    return c * g


def poly_gcd(p: Poly, q: Poly) -> Poly:
    """Monic greatest common divisor (grevlex leading coefficient 1)."""
    _check_pair(p, q)
    if p.is_zero() and q.is_zero():
        raise ValueError("gcd(0, 0) is undefined")
    return _gcd(p, q).monic()


def multi_gcd(ps: Iterable[Poly]) -> Poly:
    ps = list(ps)
    if not ps or all(p.is_zero() for p in ps):
        raise ValueError("gcd of an all-zero list is undefined")
    g = Poly.zero(ps[0].n)
    for p in ps:
        _check_pair(g, p)
        if p:
            g = _gcd(g, p) if g else p
        if g.is_constant() and g:
            return Poly.one(g.n)
    return g.monic()


# --- text grammar ----------------------------------------------------------

_ALIASES = "xyz"
_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z]\d*)|(\^)|(\*)|(/)|([+-])|(.))")


def _var_index(name: str, n: int) -> int:
    if name in _ALIASES and len(name) == 1:
        if n > 3:
            raise PolyParseError(f"alias {name!r} only allowed for n <= 3")
        i = _ALIASES.index(name) + 1
    elif name[0] == "x" and name[1:].isdigit():
        i = int(name[1:])
    else:
        raise PolyParseError(f"unknown variable {name!r}")
    if not 1 <= i <= n:
        raise PolyParseError(f"variable {name!r} out of range for n = {n}")
    return i


def _tokens(text: str) -> Iterator[Tuple[str, str]]:
    pos = 0
    text = text.rstrip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        pos = m.end()
        num, name, caret, star, slash, sign, bad = m.groups()
        if bad is not None:
            raise PolyParseError(f"unexpected character {bad!r}")
        if num is not None:
            yield "num", num
        elif name is not None:
            yield "var", name
        elif caret:
            yield "^", caret
        elif star:
            yield "*", star
        elif slash:
            yield "/", slash
        else:
            yield "sign", sign


def parse_poly(text: str, n: int) -> Poly:
    """Parse e.g. ``"1 + x*y"`` or ``"3/2*x1^2*x2 - x3"`` in ``n`` variables."""
    toks = list(_tokens(text))
    if not toks:
        raise PolyParseError("empty polynomial")
    pos = 0

    def peek(kind=None):
        if pos < len(toks) and (kind is None or toks[pos][0] == kind):
            return toks[pos]
        return None

    def take(kind):
        nonlocal pos
        tok = peek(kind)
        if tok is None:
            got = toks[pos][1] if pos < len(toks) else "end of input"
            raise PolyParseError(f"expected {kind}, got {got!r}")
        pos += 1
        return tok[1]

    terms: Dict[Exponent, Fraction] = {}
    first = True
    while pos < len(toks):
        sign = 1
        if peek("sign"):
            sign = -1 if take("sign") == "-" else 1
        elif not first:
            raise PolyParseError(f"expected '+' or '-', got {toks[pos][1]!r}")
        first = False
        coef = Fraction(1)
        exp = [0] * n
        factor_needed = True
        if peek("num"):
            coef = Fraction(int(take("num")))
            if peek("/"):
                take("/")
                den = int(take("num"))
                if den == 0:
                    raise PolyParseError("zero denominator")
                coef /= den
            factor_needed = False
            if peek("*"):
                take("*")
                factor_needed = True
        if factor_needed:
            while True:
                i = _var_index(take("var"), n)
                e = 1
                if peek("^"):
                    take("^")
                    e = int(take("num"))
                exp[i - 1] += e
                if peek("*") and pos + 1 < len(toks) and toks[pos + 1][0] == "var":
                    take("*")
                    continue
                break
        key = tuple(exp)
        terms[key] = terms.get(key, 0) + sign * coef
    return Poly(n, terms)


def _var_name(k: int, n: int) -> str:
    return _ALIASES[k] if n <= 3 else f"x{k + 1}"


def format_monomial(exp: Exponent) -> str:
    n = len(exp)
    parts = []
    for k, a in enumerate(exp):
        if a == 1:
            parts.append(_var_name(k, n))
        elif a > 1:
            parts.append(f"{_var_name(k, n)}^{a}")
    return "*".join(parts)


def format_poly(p: Poly, order: str = "grevlex") -> str:
    if not p.terms:
        return "0"
    out = []
    for idx, (exp, c) in enumerate(p.sorted_terms(order)):
        sign = "-" if c < 0 else "+"
        mag = -c if c < 0 else c
        mono = format_monomial(exp)
        if not mono:
            body = str(mag)
        elif mag == 1:
            body = mono
        else:
            body = f"{mag}*{mono}"
        if idx == 0:
            out.append(("-" if sign == "-" else "") + body)
        else:
            out.append(f" {sign} {body}")
    return "".join(out)
