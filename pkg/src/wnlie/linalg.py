"""Exact linear algebra over the rationals.

Dense matrices with RREF and kernels, plus finite-dimensional subspaces of
derivations expressed in the coordinates of monomial derivations
``x^alpha d/dx_j`` up to a degree cap.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from .arith import Exponent, Poly, as_rat, monomials_up_to
from .deriv import Deriv

Vec = Dict[int, Fraction]


class FrameOverflow(ValueError):
    """A coefficient degree exceeds the frame's cap."""


class FrameMismatch(ValueError):
    pass


# --- dense matrices --------------------------------------------------------


class Mat:
    __slots__ = ("rows", "cols", "data")

    def __init__(self, data: Sequence[Sequence], cols: Optional[int] = None):
        self.data = [[as_rat(v) for v in row] for row in data]
        self.rows = len(self.data)
        if cols is None:
            cols = len(self.data[0]) if self.data else 0
        if any(len(row) != cols for row in self.data):
            raise ValueError("ragged matrix")
        self.cols = cols

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "Mat":
        return cls([[0] * cols for _ in range(rows)], cols)

    @classmethod
    def identity(cls, k: int) -> "Mat":
        return cls([[int(i == j) for j in range(k)] for i in range(k)], k)

    def __getitem__(self, rc):
        r, c = rc
        return self.data[r][c]

    def __eq__(self, other) -> bool:
        if not isinstance(other, Mat):
            return NotImplemented
        return (self.rows, self.cols, self.data) == (other.rows, other.cols, other.data)

    def __mul__(self, other: "Mat") -> "Mat":
        if self.cols != other.rows:
            raise ValueError("shape mismatch")
        cols_t = list(zip(*other.data)) if other.data else []
        return Mat(
            [[sum((a * b for a, b in zip(row, col)), Fraction(0)) for col in cols_t] for row in self.data],
            other.cols,
        )

    def __sub__(self, other: "Mat") -> "Mat":
        return Mat([[a - b for a, b in zip(r1, r2)] for r1, r2 in zip(self.data, other.data)], self.cols)

    def trace(self) -> Fraction:
        return sum((self.data[i][i] for i in range(min(self.rows, self.cols))), Fraction(0))

    def tolist(self) -> List[List[Fraction]]:
        return [list(r) for r in self.data]

    def __repr__(self) -> str:
        return f"Mat({[[str(v) for v in r] for r in self.data]})"


def rref(m: Mat) -> Tuple[Mat, int]:
    """Reduced row-echelon form and rank."""
    a = [list(r) for r in m.data]
    rows, cols = m.rows, m.cols
    r = 0
    for c in range(cols):
        if r == rows:
            break
        piv = next((i for i in range(r, rows) if a[i][c]), None)
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        inv = 1 / a[r][c]
        a[r] = [v * inv for v in a[r]]
        for i in range(rows):
            if i != r and a[i][c]:
                f = a[i][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[r])]
        r += 1
    return Mat(a, cols), r


def rank(m: Mat) -> int:
    return rref(m)[1]


def kernel(m: Mat) -> List[List[Fraction]]:
    """Basis of the right null space, one vector per free column."""
    red, rk = rref(m)
    pivots = []
    for row in red.data[:rk]:
        pivots.append(next(c for c, v in enumerate(row) if v))
    free = [c for c in range(m.cols) if c not in set(pivots)]
    basis = []
    for f in free:
        v = [Fraction(0)] * m.cols
        v[f] = Fraction(1)
        for row, p in zip(red.data, pivots):
            v[p] = -row[f]
        basis.append(v)
    return basis


# --- incremental sparse echelon form ---------------------------------------


class Echelon:
    """Mutable RREF basis of sparse vectors, grown one vector at a time.

    Rows are kept fully reduced, so reducing a vector is a single pass over
    its pivot entries.  Vectors supported on disjoint coordinates never
    interact, which keeps multigraded spans cheap.
    """

    __slots__ = ("rows",)

    def __init__(self):
        self.rows: Dict[int, Vec] = {}

    def __len__(self) -> int:
        return len(self.rows)

    def reduce(self, vec: Vec) -> Vec:
        v = dict(vec)
        for p in [c for c in v if c in self.rows]:
            f = v.get(p)
            if not f:
                continue
            for c, x in self.rows[p].items():
                y = v.get(c, 0) - f * x
                if y:
                    v[c] = y
                else:
                    v.pop(c, None)
        return v

    def add(self, vec: Vec) -> bool:
        """Insert ``vec``; True if it was independent of the current rows."""
        v = self.reduce(vec)
        if not v:
            return False
        p = min(v)
        inv = 1 / v[p]
        v = {c: x * inv for c, x in v.items()}
        for q, row in self.rows.items():
            f = row.get(p)
            if f:
                for c, x in v.items():
                    y = row.get(c, 0) - f * x
                    if y:
                        row[c] = y
                    else:
                        row.pop(c, None)
        self.rows[p] = v
        return True

    def contains(self, vec: Vec) -> bool:
        return not self.reduce(vec)

    def sorted_rows(self) -> Tuple[Tuple[Tuple[int, Fraction], ...], ...]:
        return tuple(tuple(sorted(self.rows[p].items())) for p in sorted(self.rows))


# --- frames ------------------------------------------------------------------


class Frame:
    """Coordinates for derivations whose coefficients have degree <= cap.

    Coordinate order: monomial ``alpha`` ascending in grevlex, then the
    partial index ``j``.
    """

    def __init__(self, n: int, cap: int):
        if n < 1 or cap < 0:
            raise ValueError("need n >= 1 and cap >= 0")
        self.n = n
        self.cap = cap
        self.keys: List[Tuple[Exponent, int]] = [
            (alpha, j) for alpha in monomials_up_to(n, cap) for j in range(n)
        ]
        self.index: Dict[Tuple[Exponent, int], int] = {k: i for i, k in enumerate(self.keys)}

    @property
    def dim(self) -> int:
        return len(self.keys)

    def __eq__(self, other) -> bool:
        return isinstance(other, Frame) and (self.n, self.cap) == (other.n, other.cap)

    def __hash__(self) -> int:
        return hash((self.n, self.cap))

    def __repr__(self) -> str:
        return f"Frame(n={self.n}, cap={self.cap})"

    def fits(self, d: Deriv) -> bool:
        return d.degree() <= self.cap

    def coords(self, d: Deriv) -> Vec:
        if d.n != self.n:
            raise FrameMismatch(f"W_{d.n} element in a frame for W_{self.n}")
        out: Vec = {}
        for j, c in enumerate(d.coeffs):
            for alpha, v in c.terms.items():
                idx = self.index.get((alpha, j))
                if idx is None:
                    raise FrameOverflow(f"coefficient degree {sum(alpha)} exceeds cap {self.cap}")
                out[idx] = v
        return out

    def deriv(self, vec: Vec | Sequence) -> Deriv:
        items = vec.items() if isinstance(vec, dict) else enumerate(vec)
        terms: List[Dict[Exponent, Fraction]] = [{} for _ in range(self.n)]
        for idx, v in items:
            if v:
                alpha, j = self.keys[idx]
                terms[j][alpha] = as_rat(v)
        return Deriv([Poly(self.n, t) for t in terms])

    def basis_deriv(self, idx: int) -> Deriv:
        alpha, j = self.keys[idx]
        return Deriv.monomial(alpha, j + 1)

    def columns_of_degree(self, lo: int, hi: int) -> List[int]:
        """Coordinates whose monomial degree lies in ``[lo, hi]``."""
        return [i for i, (alpha, _) in enumerate(self.keys) if lo <= sum(alpha) <= hi]


# --- subspaces ---------------------------------------------------------------


class Subspace:
    """Rational span of derivations, stored as an RREF basis in a frame."""

    __slots__ = ("frame", "_ech")

    def __init__(self, frame: Frame, ech: Optional[Echelon] = None):
        self.frame = frame
        self._ech = ech if ech is not None else Echelon()

    @property
    def dim(self) -> int:
        return len(self._ech)

    def __len__(self) -> int:
        return self.dim

    @property
    def pivots(self) -> List[int]:
        return sorted(self._ech.rows)

    def rows(self) -> List[Vec]:
        return [dict(self._ech.rows[p]) for p in self.pivots]

    def basis(self) -> List[Deriv]:
        return [self.frame.deriv(r) for r in self.rows()]

    def as_mat(self) -> Mat:
        data = []
        for r in self.rows():
            row = [Fraction(0)] * self.frame.dim
            for c, v in r.items():
                row[c] = v
            data.append(row)
        return Mat(data, self.frame.dim)

    def contains(self, d: Deriv | Vec) -> bool:
        """Membership; a derivation above the cap is never a member."""
        if isinstance(d, dict):
            return self._ech.contains(d)
        if not self.frame.fits(d):
            return False
        return self._ech.contains(self.frame.coords(d))

    def __contains__(self, d) -> bool:
        return self.contains(d)

    def _check(self, other: "Subspace") -> None:
        if self.frame != other.frame:
            raise FrameMismatch(f"{self.frame} vs {other.frame}")

    def __eq__(self, other) -> bool:
        if not isinstance(other, Subspace):
            return NotImplemented
        return subspace_equal(self, other)

    def __repr__(self) -> str:
        return f"Subspace(dim={self.dim}, {self.frame})"

    def copy_echelon(self) -> Echelon:
        e = Echelon()
        e.rows = {p: dict(r) for p, r in self._ech.rows.items()}
        return e


def span_vectors(frame: Frame, vecs: Iterable[Vec]) -> Subspace:
    ech = Echelon()
    for v in vecs:
        ech.add(v)
    return Subspace(frame, ech)


def subspace_span(frame: Frame, ds: Iterable[Deriv]) -> Subspace:
    """RREF basis of the span; raises FrameOverflow if an element does not fit."""
    return span_vectors(frame, (frame.coords(d) for d in ds))


def subspace_contains(s: Subspace, d: Deriv) -> bool:
    return s.contains(d)


def subspace_equal(a: Subspace, b: Subspace) -> bool:
    a._check(b)
    return a._ech.sorted_rows() == b._ech.sorted_rows()


def subspace_sum(a: Subspace, b: Subspace) -> Subspace:
    a._check(b)
    ech = a.copy_echelon()
    for r in b._ech.rows.values():
        ech.add(r)
    return Subspace(a.frame, ech)


def subspace_le(a: Subspace, b: Subspace) -> bool:
    """``a`` is contained in ``b``."""
    a._check(b)
    return all(b._ech.contains(r) for r in a._ech.rows.values())


def subspace_intersection(a: Subspace, b: Subspace) -> Subspace:
    """Zassenhaus: reduce rows ``(u | u)`` for u in a and ``(v | 0)`` for v in b."""
    a._check(b)
    off = a.frame.dim
    ech = Echelon()
    for r in a._ech.rows.values():
        v = dict(r)
        v.update({c + off: x for c, x in r.items()})
        ech.add(v)
    for r in b._ech.rows.values():
        ech.add(dict(r))
    out = Echelon()
    for p, row in ech.rows.items():
        if p >= off:
            out.add({c - off: x for c, x in row.items()})
    return Subspace(a.frame, out)


def zero_subspace(frame: Frame) -> Subspace:
    return Subspace(frame)


def full_subspace(frame: Frame, max_degree: Optional[int] = None) -> Subspace:
    """All monomial derivations with coefficient degree <= ``max_degree``."""
    hi = frame.cap if max_degree is None else max_degree
    return span_vectors(frame, ({c: Fraction(1)} for c in frame.columns_of_degree(0, hi)))
