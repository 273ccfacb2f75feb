"""Concrete simple Euclidean Jordan algebras.

Three families are implemented:

  * rank1(lam)   -- V = R with a free positive parameter lam,
  * minkowski(n) -- V = R^{1,n-1} with product
                    x*y = (x1 y1 + x'.y', x1 y' + y1 x'),
  * symmat(k)    -- V = Sym(k, R) with x*y = (xy + yx)/2.

Each algebra fixes one basis that is *orthogonal* for the trace form
(x|y) = (r/n) Tr L(x y); the squared norms of the basis vectors are kept
as exact rationals in ``gram``.  Working with an orthogonal (not
orthonormal) basis keeps every coordinate and structure constant inside
the Gaussian rationals: the trace-form gradient that enters the Bessel
operator simply picks up the dual-basis weights 1/gram[a].

Derived invariants carried by the descriptor: rank r, dimension n, the
short-root multiplicity d (rank > 1), and lam = d/2 (rank > 1) or the
user parameter (rank 1).
"""

from __future__ import annotations

import json
from fractions import Fraction

from .gaussrat import QQi

__all__ = [
    "Algebra", "Element", "rank1", "minkowski", "symmat", "algebra_from_json",
    "jordan_product", "trace_form", "jordan_trace", "quad_rep",
    "jordan_frame", "offdiag_unit", "on_cone_orbit", "on_complex_orbit",
]

_HALF = Fraction(1, 2)


class Algebra:
    """Descriptor of one of the three supported Jordan algebras."""

    def __init__(self, kind, param, rank, dim, mult_d, lam, gram, unit, table):
        self.kind = kind
        self.param = param
        self.r = rank
        self.n = dim
        self.d = mult_d            # None for rank 1
        self.lam = lam             # Fraction (or float for exotic rank-1 use)
        self.rlam = rank * lam
        self.gram = gram           # squared trace-form norms of the basis
        self._unit = unit
        self._table = table        # table[a][b] = coords of e_a * e_b
        self._lmats = {}
        self._pmats = None

    # -- basic data -----------------------------------------------------
    @property
    def unit(self):
        return Element(self, self._unit)

    def element(self, coords):
        coords = tuple(coords)
        if len(coords) != self.n:
            raise ValueError(f"expected {self.n} coordinates, got {len(coords)}")
        return Element(self, coords)

    def basis_element(self, a):
        return Element(self, tuple(1 if j == a else 0 for j in range(self.n)))

    def zero(self):
        return Element(self, (0,) * self.n)

    def __repr__(self):
        return f"Algebra({self.kind}:{self.param}, r={self.r}, n={self.n})"

    def __eq__(self, other):
        return isinstance(other, Algebra) and self.kind == other.kind \
            and self.param == other.param

    def __hash__(self):
        return hash((self.kind, self.param))

    # -- structure tensors ----------------------------------------------
    def lmat(self, coords):
        """Matrix of left multiplication L(x) in the fixed basis."""
        n = self.n
        rows = [[0] * n for _ in range(n)]
        for a, xa in enumerate(coords):
            if not xa:
                continue
            for b in range(n):
                col = self._table[a][b]
                for g in range(n):
                    if col[g]:
                        rows[g][b] = rows[g][b] + xa * col[g]
        return rows

    def pmats(self):
        """Cached matrices of the polarized quadratic representation
        P(e_a, e_b) for all basis pairs."""
        if self._pmats is None:
            n = self.n
            lb = [self.lmat(self.basis_element(a).coords) for a in range(n)]
            out = [[None] * n for _ in range(n)]
            for a in range(n):
                for b in range(a, n):
                    lab = self.lmat(self._table[a][b])
                    m = [[0] * n for _ in range(n)]
                    for i in range(n):
                        for j in range(n):
                            s = -lab[i][j]
                            for k_ in range(n):
                                s = s + lb[a][i][k_] * lb[b][k_][j] \
                                    + lb[b][i][k_] * lb[a][k_][j]
                            m[i][j] = s
                    out[a][b] = m
                    out[b][a] = m
            self._pmats = out
        return self._pmats

    # -- serialization ----------------------------------------------------
    def to_json(self):
        param = self.param
        if isinstance(param, Fraction):
            param = str(param)
        return json.dumps({"kind": self.kind, "param": param})


class Element:
    """A Jordan-algebra element as a coordinate vector in the fixed basis."""

    __slots__ = ("alg", "coords")

    def __init__(self, alg, coords):
        self.alg = alg
        self.coords = tuple(coords)

    def __add__(self, other):
        _same(self, other)
        return Element(self.alg, tuple(a + b for a, b in zip(self.coords, other.coords)))

    def __sub__(self, other):
        _same(self, other)
        return Element(self.alg, tuple(a - b for a, b in zip(self.coords, other.coords)))

    def __neg__(self):
        return Element(self.alg, tuple(-a for a in self.coords))

    def __rmul__(self, c):
        return Element(self.alg, tuple(c * a for a in self.coords))

    __mul__ = __rmul__

    def __eq__(self, other):
        return isinstance(other, Element) and self.alg == other.alg \
            and self.coords == other.coords

    def __repr__(self):
        return f"Element({self.coords})"

    def conjugate(self):
        return Element(self.alg, tuple(
            c.conjugate() if isinstance(c, (QQi, complex)) else c
            for c in self.coords))

    def as_floats(self):
        return tuple(complex(c) if isinstance(c, QQi) else c for c in self.coords)


def _same(x, y):
    if x.alg != y.alg:
        raise ValueError("elements belong to different algebras")


# ---------------------------------------------------------------------------
# constructors
# ---------------------------------------------------------------------------

def rank1(lam) -> Algebra:
    """The one-dimensional algebra V = R with free parameter lam > 0."""
    lam = Fraction(lam) if not isinstance(lam, float) else lam
    if lam <= 0:
        raise ValueError("rank-1 parameter must be positive")
    return Algebra("rank1", lam, 1, 1, None, lam,
                   gram=(Fraction(1),), unit=(1,), table=(((1,),),))


def minkowski(n: int) -> Algebra:
    """V = R^{1,n-1}; rank 2, multiplicity d = n-2, lam = (n-2)/2.

    The stored basis is the standard one, with (std_i | std_j) = 2 delta_ij.
    """
    if n < 3:
        raise ValueError("minkowski algebra needs n >= 3")
    table = [[None] * n for _ in range(n)]
    for a in range(n):
        for b in range(n):
            if a == 0:
                col = tuple(1 if j == b else 0 for j in range(n))
            elif b == 0:
                col = tuple(1 if j == a else 0 for j in range(n))
            else:
                col = tuple(1 if (j == 0 and a == b) else 0 for j in range(n))
            table[a][b] = col
    lam = Fraction(n - 2, 2)
    return Algebra("minkowski", n, 2, n, n - 2, lam,
                   gram=tuple(Fraction(2) for _ in range(n)),
                   unit=tuple(1 if j == 0 else 0 for j in range(n)),
                   table=tuple(tuple(row) for row in table))


def symmat(k: int) -> Algebra:
    """V = Sym(k, R); rank k, d = 1, lam = 1/2.

    Basis: E_ii (i < k) followed by E_ij + E_ji (i < j, lexicographic).
    Trace form is the matrix trace of the product, so the basis norms are
    1 on the diagonal part and 2 off it.
    """
    if k < 2:
        raise ValueError("symmat algebra needs k >= 2")
    idx = [(i, i) for i in range(k)] + [(i, j) for i in range(k) for j in range(i + 1, k)]
    pos = {p: a for a, p in enumerate(idx)}
    n = len(idx)

    def to_mat(coords):
        m = [[0] * k for _ in range(k)]
        for (i, j), a in pos.items():
            m[i][j] = coords[a]
            m[j][i] = coords[a]
        return m

    def from_mat(m):
        return tuple(m[i][j] for (i, j) in idx)

    def jp(ma, mb):
        out = [[0] * k for _ in range(k)]
        for i in range(k):
            for j in range(k):
                s = 0
                for t in range(k):
                    s += ma[i][t] * mb[t][j] + mb[i][t] * ma[t][j]
                out[i][j] = Fraction(s, 2)
        return out

    basis_m = [to_mat(tuple(1 if c == a else 0 for c in range(n))) for a in range(n)]
    table = tuple(tuple(from_mat(jp(basis_m[a], basis_m[b])) for b in range(n))
                  for a in range(n))
    gram = tuple(Fraction(1) if i == j else Fraction(2) for (i, j) in idx)
    alg = Algebra("symmat", k, k, n, 1, _HALF,
                  gram=gram,
                  unit=tuple(1 if i == j else 0 for (i, j) in idx),
                  table=table)
    alg.matrix_index = tuple(idx)
    return alg


def algebra_from_json(text: str) -> Algebra:
    rec = json.loads(text)
    kind, param = rec["kind"], rec["param"]
    if kind == "rank1":
        return rank1(Fraction(param) if isinstance(param, str) else param)
    if kind == "minkowski":
        return minkowski(int(param))
    if kind == "symmat":
        return symmat(int(param))
    raise ValueError(f"unknown algebra kind {kind!r}")


# ---------------------------------------------------------------------------
# operations
# ---------------------------------------------------------------------------

def jordan_product(x: Element, y: Element) -> Element:
    _same(x, y)
    alg = x.alg
    n = alg.n
    out = [0] * n
    for a, xa in enumerate(x.coords):
        if not xa:
            continue
        for b, yb in enumerate(y.coords):
            if not yb:
                continue
            col = alg._table[a][b]
            f = xa * yb
            for g in range(n):
                if col[g]:
                    out[g] = out[g] + f * col[g]
    return Element(alg, tuple(out))


def trace_form(x: Element, y: Element):
    """(x|y) = (r/n) Tr L(x y), evaluated through the stored basis norms."""
    _same(x, y)
    s = 0
    for g, a, b in zip(x.alg.gram, x.coords, y.coords):
        s = s + g * a * b
    return s


def jordan_trace(x: Element):
    """tr(x) = (x|e)."""
    return trace_form(x, x.alg.unit)


def quad_rep(x: Element, y: Element, z: Element) -> Element:
    """Polarized quadratic representation P(x,y)z with
    P(x,y) = L(x)L(y) + L(y)L(x) - L(x*y);  P(x) = P(x,x)."""
    _same(x, y)
    _same(x, z)
    a = jordan_product(x, jordan_product(y, z))
    b = jordan_product(y, jordan_product(x, z))
    c = jordan_product(jordan_product(x, y), z)
    return a + b - c


def jordan_frame(alg: Algebra):
    """A fixed Jordan frame c_1, ..., c_r (orthogonal primitive idempotents
    summing to the unit)."""
    if alg.kind == "rank1":
        return [alg.unit]
    if alg.kind == "minkowski":
        n = alg.n
        c1 = alg.element(tuple(_HALF if j in (0, n - 1) else 0 for j in range(n)))
        c2 = alg.element(tuple(_HALF if j == 0 else (-_HALF if j == n - 1 else 0)
                               for j in range(n)))
        return [c1, c2]
    # symmat: the diagonal matrix units come first in the basis
    k = alg.param
    return [alg.basis_element(i) for i in range(k)]


def offdiag_unit(alg: Algebra) -> Element:
    """An element x0 of the (1,2) Peirce space with (x0|x0) = 2."""
    if alg.r < 2:
        raise ValueError("offdiag_unit requires rank >= 2")
    if alg.kind == "minkowski":
        return alg.element(tuple(1 if j == 1 else 0 for j in range(alg.n)))
    # symmat: E_12 + E_21 is the basis element right after the diagonal
    k = alg.param
    return alg.basis_element(k)


def _p_residual(w: Element, z: Element) -> Element:
    return quad_rep(w, w, z) - trace_form(z, w) * w


def on_complex_orbit(w: Element, tol: float = 1e-12) -> bool:
    """Membership test for the rank-one complex orbit: P(w)z = (z|w) w for
    every basis vector z, and w != 0.  Exact coordinates are tested exactly."""
    alg = w.alg
    if all(not c for c in w.coords):
        return False
    exact = all(isinstance(c, (int, Fraction, QQi)) for c in w.coords)
    for a in range(alg.n):
        res = _p_residual(w, alg.basis_element(a))
        if exact:
            if any(res.coords):
                return False
        else:
            if max(abs(complex(c)) for c in res.coords) > tol:
                return False
    return True


def on_cone_orbit(x: Element, tol: float = 1e-12) -> bool:
    """Membership test for the real rank-one orbit: on_complex_orbit plus
    real coordinates and positive trace."""
    for c in x.coords:
        if abs(complex(c).imag) > tol:
            return False
    tr = complex(jordan_trace(x))
    if not tr.real > tol:
        return False
    return on_complex_orbit(x, tol)
