"""Exact multivariate polynomials and the symbolic operator layer.

MPoly is a sparse polynomial over the Gaussian rationals (QQi); VPoly is
an algebra-valued polynomial (one MPoly per basis coordinate); WeightedFn
is p(x) * exp(s * tr(x)), the class closed under every operator that
appears in the models.

The differential operators all come from one object, a vector-valued
second-order operator written in an orthogonal basis (e_a) with
trace-form norms g_a:

    bessel(u) = sum_{a,b} d2u/dx_a dx_b P(e_a, e_b) x / (g_a g_b)
              + lam * sum_a du/dx_a e_a / g_a,

its coordinate components, its trace component (pairing with the unit),
the Euler operator, and linear derivation actions.  Everything here is
exact; floats never enter.
"""

from __future__ import annotations

import json
import math
from fractions import Fraction

import numpy as np

from .gaussrat import QQi, to_complex
from .jordan import Algebra, Element, jordan_trace, trace_form

__all__ = [
    "MPoly", "VPoly", "WeightedFn",
    "bessel_apply", "bessel_e_apply", "bessel_component_apply",
    "bessel_dir_apply", "weighted_bessel_apply", "weighted_bessel_dir",
    "fischer_inner", "normal_form", "euler_apply", "derivation_apply",
    "linear_map_apply", "mono_poly", "coord_poly", "trace_poly",
    "pairing_poly", "ground_state",
]


def _qq(c) -> QQi:
    if isinstance(c, QQi):
        return c
    return QQi(c)


class MPoly:
    """Sparse multivariate polynomial with QQi coefficients.

    terms maps exponent tuples to nonzero coefficients.  The variable
    count is fixed; math operations require matching nvars.
    """

    __slots__ = ("nvars", "terms")

    def __init__(self, nvars: int, terms=None):
        self.nvars = nvars
        clean = {}
        if terms:
            for e, c in terms.items():
                c = _qq(c)
                if c:
                    clean[tuple(e)] = c
        self.terms = clean

    # -- constructors ---------------------------------------------------
    @staticmethod
    def zero(nvars: int) -> "MPoly":
        return MPoly(nvars)

    @staticmethod
    def const(nvars: int, c) -> "MPoly":
        return MPoly(nvars, {(0,) * nvars: _qq(c)})

    @staticmethod
    def one(nvars: int) -> "MPoly":
        return MPoly.const(nvars, 1)

    @staticmethod
    def variable(nvars: int, j: int) -> "MPoly":
        e = tuple(1 if i == j else 0 for i in range(nvars))
        return MPoly(nvars, {e: QQi(1)})

    # -- ring structure ---------------------------------------------------
    def __add__(self, other):
        if not isinstance(other, MPoly):
            other = MPoly.const(self.nvars, other)
        out = dict(self.terms)
        for e, c in other.terms.items():
            s = out.get(e, QQi(0)) + c
            if s:
                out[e] = s
            elif e in out:
                del out[e]
        return MPoly(self.nvars, out)

    __radd__ = __add__

    def __neg__(self):
        return MPoly(self.nvars, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        if not isinstance(other, MPoly):
            other = MPoly.const(self.nvars, other)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, MPoly):
            c = _qq(other)
            if not c:
                return MPoly(self.nvars)
            return MPoly(self.nvars, {e: c * v for e, v in self.terms.items()})
        out = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                s = out.get(e, QQi(0)) + c1 * c2
                if s:
                    out[e] = s
                elif e in out:
                    del out[e]
        return MPoly(self.nvars, out)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative polynomial power")
        out = MPoly.one(self.nvars)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def __eq__(self, other):
        if not isinstance(other, MPoly):
            return (self - MPoly.const(self.nvars, other)).is_zero()
        return self.nvars == other.nvars and self.terms == other.terms

    def is_zero(self) -> bool:
        return not self.terms

    # -- calculus -----------------------------------------------------------
    def diff(self, j: int) -> "MPoly":
        out = {}
        for e, c in self.terms.items():
            if e[j]:
                e2 = e[:j] + (e[j] - 1,) + e[j + 1:]
                out[e2] = out.get(e2, QQi(0)) + e[j] * c
        return MPoly(self.nvars, out)

    def degree(self) -> int:
        return max((sum(e) for e in self.terms), default=0)

    def is_homogeneous(self) -> bool:
        degs = {sum(e) for e in self.terms}
        return len(degs) <= 1

    def homogeneous_part(self, m: int) -> "MPoly":
        return MPoly(self.nvars,
                     {e: c for e, c in self.terms.items() if sum(e) == m})

    def conjugate_coeffs(self) -> "MPoly":
        return MPoly(self.nvars, {e: c.conjugate() for e, c in self.terms.items()})

    def scale_vars(self, factor) -> "MPoly":
        """p(factor * x); factor is a scalar."""
        f = _qq(factor)
        return MPoly(self.nvars,
                     {e: c * f ** sum(e) for e, c in self.terms.items()})

    def compose(self, polys) -> "MPoly":
        """Substitute polys[j] (MPoly over a possibly different variable
        set) for variable j."""
        if len(polys) != self.nvars:
            raise ValueError("need one substitution polynomial per variable")
        nv = polys[0].nvars
        out = MPoly.zero(nv)
        powers = [{0: MPoly.one(nv)} for _ in range(self.nvars)]

        def power(j, k):
            cache = powers[j]
            if k not in cache:
                cache[k] = power(j, k - 1) * polys[j]
            return cache[k]

        for e, c in self.terms.items():
            term = MPoly.const(nv, c)
            for j, k in enumerate(e):
                if k:
                    term = term * power(j, k)
            out = out + term
        return out

    # -- evaluation ---------------------------------------------------------
    def eval(self, point):
        """Exact evaluation at a sequence of scalars (QQi/Fraction/number)."""
        total = QQi(0)
        for e, c in self.terms.items():
            v = c
            for j, k in enumerate(e):
                for _ in range(k):
                    v = v * point[j]
            total = total + v
        return total

    def eval_array(self, pts: np.ndarray) -> np.ndarray:
        """Vectorized evaluation at float/complex points of shape (N, nvars)."""
        pts = np.asarray(pts)
        out = np.zeros(pts.shape[0], dtype=complex)
        for e, c in self.terms.items():
            v = np.full(pts.shape[0], to_complex(c))
            for j, k in enumerate(e):
                if k:
                    v = v * pts[:, j] ** k
            out += v
        return out

    # -- io -------------------------------------------------------------------
    def to_json(self) -> str:
        rows = []
        for e, c in sorted(self.terms.items()):
            rows.append({"exponents": list(e),
                         "re_num": c.re.numerator, "re_den": c.re.denominator,
                         "im_num": c.im.numerator, "im_den": c.im.denominator})
        return json.dumps(rows)

    @staticmethod
    def from_json(nvars: int, text: str) -> "MPoly":
        rows = json.loads(text)
        terms = {}
        for row in rows:
            c = QQi(Fraction(row["re_num"], row["re_den"]),
                    Fraction(row["im_num"], row["im_den"]))
            terms[tuple(row["exponents"])] = c
        return MPoly(nvars, terms)

    def __repr__(self):
        if not self.terms:
            return "MPoly(0)"
        bits = []
        for e, c in sorted(self.terms.items(), key=lambda t: (sum(t[0]), t[0])):
            mono = "*".join(f"x{j}^{k}" for j, k in enumerate(e) if k) or "1"
            bits.append(f"({c.re}{'+' if c.im >= 0 else ''}{c.im}i)*{mono}")
        return " + ".join(bits)


class VPoly:
    """Algebra-valued polynomial: one MPoly per basis coordinate."""

    __slots__ = ("alg", "comps")

    def __init__(self, alg: Algebra, comps):
        self.alg = alg
        self.comps = tuple(comps)

    @staticmethod
    def zero(alg: Algebra) -> "VPoly":
        return VPoly(alg, [MPoly.zero(alg.n) for _ in range(alg.n)])

    def __add__(self, other):
        return VPoly(self.alg, [a + b for a, b in zip(self.comps, other.comps)])

    def __sub__(self, other):
        return VPoly(self.alg, [a - b for a, b in zip(self.comps, other.comps)])

    def __rmul__(self, c):
        return VPoly(self.alg, [c * a for a in self.comps])

    def is_zero(self) -> bool:
        return all(c.is_zero() for c in self.comps)

    def __eq__(self, other):
        return isinstance(other, VPoly) and self.alg == other.alg \
            and all(a == b for a, b in zip(self.comps, other.comps))

    def pair(self, a: Element) -> MPoly:
        """Trace-form pairing (a | value) as a scalar polynomial."""
        out = MPoly.zero(self.alg.n)
        for g, coeff, comp in zip(self.alg.gram, a.coords, self.comps):
            if coeff:
                out = out + (g * _qq(coeff)) * comp
        return out


class WeightedFn:
    """p(x) * exp(s * tr(x)) with exact polynomial part and rational slope."""

    __slots__ = ("alg", "poly", "slope")

    def __init__(self, alg: Algebra, poly: MPoly, slope):
        self.alg = alg
        self.poly = poly
        self.slope = Fraction(slope) if not isinstance(slope, float) else slope

    def __add__(self, other):
        if self.slope != other.slope:
            raise ValueError("weighted functions with different slopes")
        return WeightedFn(self.alg, self.poly + other.poly, self.slope)

    def __sub__(self, other):
        if self.slope != other.slope:
            raise ValueError("weighted functions with different slopes")
        return WeightedFn(self.alg, self.poly - other.poly, self.slope)

    def __rmul__(self, c):
        return WeightedFn(self.alg, c * self.poly, self.slope)

    __mul__ = __rmul__

    def mul_poly(self, q: MPoly) -> "WeightedFn":
        return WeightedFn(self.alg, self.poly * q, self.slope)

    def __eq__(self, other):
        return isinstance(other, WeightedFn) and self.alg == other.alg \
            and self.slope == other.slope and self.poly == other.poly

    def eval_element(self, x: Element):
        tr = jordan_trace(x)
        return complex(self.poly.eval(x.coords)) * math.exp(float(self.slope) * float(tr))

    def eval_array(self, pts: np.ndarray) -> np.ndarray:
        g = np.array([float(a) for a in self.alg.gram])
        e = np.array([float(c) for c in self.alg._unit])
        tr = pts @ (g * e)
        return self.poly.eval_array(pts) * np.exp(float(self.slope) * tr)

    def __repr__(self):
        return f"WeightedFn({self.poly!r}, slope={self.slope})"


# ---------------------------------------------------------------------------
# polynomial builders tied to an algebra
# ---------------------------------------------------------------------------

def coord_poly(alg: Algebra, j: int) -> MPoly:
    return MPoly.variable(alg.n, j)


def pairing_poly(alg: Algebra, a: Element) -> MPoly:
    """The linear polynomial x -> (a|x)."""
    terms = {}
    for j, (g, c) in enumerate(zip(alg.gram, a.coords)):
        c = _qq(g * c)
        if c:
            e = tuple(1 if i == j else 0 for i in range(alg.n))
            terms[e] = c
    return MPoly(alg.n, terms)


def trace_poly(alg: Algebra) -> MPoly:
    return pairing_poly(alg, alg.unit)


def mono_poly(alg: Algebra, alpha) -> MPoly:
    """The monomial prod_j (e_j | x)^alpha_j attached to a multi-index."""
    out = MPoly.one(alg.n)
    for j, k in enumerate(alpha):
        if k:
            out = out * pairing_poly(alg, alg.basis_element(j)) ** k
    return out


def ground_state(alg: Algebra) -> WeightedFn:
    """exp(-tr(x)), the unit-norm ground vector of the models."""
    return WeightedFn(alg, MPoly.one(alg.n), Fraction(-1))


# ---------------------------------------------------------------------------
# the Bessel operator and friends
# ---------------------------------------------------------------------------

def _linear_from_matrix(alg: Algebra, mat, row: int) -> MPoly:
    """Row `row` of matrix*x as a linear polynomial."""
    terms = {}
    for d in range(alg.n):
        c = _qq(mat[row][d])
        if c:
            e = tuple(1 if i == d else 0 for i in range(alg.n))
            terms[e] = c
    return MPoly(alg.n, terms)


def bessel_apply(alg: Algebra, p: MPoly, lam=None) -> VPoly:
    """The vector-valued Bessel operator applied to p, exactly."""
    if lam is None:
        lam = alg.lam
    n = alg.n
    pm = alg.pmats()
    g = alg.gram
    comps = [MPoly.zero(n) for _ in range(n)]
    for a in range(n):
        da = p.diff(a)
        if da.is_zero():
            continue
        for b in range(a, n):
            dab = da.diff(b)
            if dab.is_zero():
                continue
            w = Fraction(1 if a == b else 2) / (g[a] * g[b])
            for c in range(n):
                lin = _linear_from_matrix(alg, pm[a][b], c)
                if not lin.is_zero():
                    comps[c] = comps[c] + (w * dab) * lin
        comps[a] = comps[a] + (Fraction(lam) / g[a]) * da
    return VPoly(alg, comps)


def bessel_component_apply(alg: Algebra, c: int, p: MPoly, lam=None) -> MPoly:
    """Coordinate c of bessel_apply(p), computed directly."""
    if lam is None:
        lam = alg.lam
    n = alg.n
    pm = alg.pmats()
    g = alg.gram
    out = MPoly.zero(n)
    for a in range(n):
        da = p.diff(a)
        if da.is_zero():
            continue
        for b in range(a, n):
            dab = da.diff(b)
            if dab.is_zero():
                continue
            w = Fraction(1 if a == b else 2) / (g[a] * g[b])
            lin = _linear_from_matrix(alg, pm[a][b], c)
            if not lin.is_zero():
                out = out + (w * dab) * lin
    da = p.diff(c)
    if not da.is_zero():
        out = out + (Fraction(lam) / g[c]) * da
    return out


def bessel_dir_apply(alg: Algebra, a: Element, p: MPoly, lam=None) -> MPoly:
    """(a | bessel p) for a fixed direction a, exactly."""
    bp = bessel_apply(alg, p, lam)
    return bp.pair(a)


def bessel_e_apply(alg: Algebra, p: MPoly, lam=None) -> MPoly:
    """Trace component (e | bessel p); degree drops by one."""
    return bessel_dir_apply(alg, alg.unit, p, lam)


def weighted_bessel_dir(alg: Algebra, a: Element, f: WeightedFn, lam=None) -> WeightedFn:
    """(a | bessel) applied to q * exp(s tr), staying in the class:

    (a|B)(q e^{s tr}) = [ (a|B q) + 2 s (a | L(x) grad q)
                          + q (s^2 (a|x) + s lam (a|e)) ] e^{s tr}.
    """
    if lam is None:
        lam = alg.lam
    q, s = f.poly, f.slope
    out = bessel_dir_apply(alg, a, q, lam)
    # 2 s (a | x . grad q) = 2 s sum_c (1/g_c) dq/dx_c (a | x * e_c)
    if s:
        mix = MPoly.zero(alg.n)
        for c in range(alg.n):
            dc = q.diff(c)
            if dc.is_zero():
                continue
            lmat = alg.lmat(alg.basis_element(c).coords)
            lin = MPoly.zero(alg.n)
            for row in range(alg.n):
                coeff = _qq(alg.gram[row]) * _qq(a.coords[row])
                if coeff:
                    lin = lin + coeff * _linear_from_matrix(alg, lmat, row)
            mix = mix + (Fraction(1, 1) / alg.gram[c]) * dc * lin
        out = out + (2 * s) * mix
        out = out + (s * s) * (q * pairing_poly(alg, a))
        out = out + (s * Fraction(lam) * trace_form(a, alg.unit)) * q
    return WeightedFn(alg, out, s)


def weighted_bessel_apply(alg: Algebra, f: WeightedFn, lam=None):
    """Full vector of (e_c | bessel) f / g_c, i.e. the coordinates of the
    vector-valued operator on the weighted class."""
    out = []
    for c in range(alg.n):
        comp = weighted_bessel_dir(alg, alg.basis_element(c), f, lam)
        out.append(WeightedFn(alg, (Fraction(1, 1) / alg.gram[c]) * comp.poly, f.slope))
    return out


def euler_apply(p: MPoly) -> MPoly:
    """Euler operator sum_j x_j d/dx_j; multiplies degree-m terms by m."""
    return MPoly(p.nvars, {e: sum(e) * c for e, c in p.terms.items()})


def linear_map_apply(alg: Algebra, mat, x: Element) -> Element:
    """Apply an n x n matrix (rows over the fixed basis) to an element."""
    n = alg.n
    out = [0] * n
    for i in range(n):
        s = 0
        for j in range(n):
            if mat[i][j]:
                s = s + mat[i][j] * x.coords[j]
        out[i] = s
    return Element(alg, tuple(out))


def derivation_apply(alg: Algebra, mat, p: MPoly) -> MPoly:
    """Action (X . p)(x) = -d/dt p(x + t X x)|_0 of a linear vector field,
    with X given as a matrix over the fixed basis."""
    out = MPoly.zero(alg.n)
    for c in range(alg.n):
        dc = p.diff(c)
        if dc.is_zero():
            continue
        out = out - dc * _linear_from_matrix(alg, mat, c)
    return out


# ---------------------------------------------------------------------------
# Bessel-Fischer inner product
# ---------------------------------------------------------------------------

def fischer_inner(alg: Algebra, p: MPoly, q: MPoly, lam=None) -> QQi:
    """[p, q] = p(B) conj_coeffs(q)(4 z) at z = 0, exactly.

    p(B) substitutes the coordinate components of the Bessel operator for
    the variables of p (they commute).  Vanishes across different
    homogeneous degrees.
    """
    if lam is None:
        lam = alg.lam
    target0 = q.conjugate_coeffs().scale_vars(4)
    total = QQi(0)
    for e, c in p.terms.items():
        cur = target0
        for j, k in enumerate(e):
            for _ in range(k):
                if cur.is_zero():
                    break
                cur = bessel_component_apply(alg, j, cur, lam)
        val = cur.terms.get((0,) * alg.n, QQi(0))
        total = total + c * val
    return total


# ---------------------------------------------------------------------------
# normal forms on the rank-one orbit ideal
# ---------------------------------------------------------------------------

def normal_form(alg: Algebra, p: MPoly) -> MPoly:
    """Canonical representative of p as a regular function on the complex
    rank-one orbit.

    rank1: identity.  minkowski: reduce the power of the first coordinate
    below 2 using x_0^2 = x_1^2 + ... + x_{n-1}^2.  symmat: pull back
    through the complexified folding map, returning an even polynomial in
    k vector variables.  Polynomials agreeing on the orbit get identical
    normal forms.
    """
    if alg.kind == "rank1":
        return p
    if alg.kind == "minkowski":
        n = alg.n
        quad = MPoly.zero(n)
        for j in range(1, n):
            quad = quad + MPoly.variable(n, j) ** 2
        out = {}
        work = dict(p.terms)
        while work:
            e, c = work.popitem()
            if e[0] < 2:
                prev = out.get(e, QQi(0)) + c
                if prev:
                    out[e] = prev
                elif e in out:
                    del out[e]
                continue
            base = (e[0] - 2,) + e[1:]
            repl = MPoly(n, {base: c}) * quad
            for e2, c2 in repl.terms.items():
                prev = work.get(e2, QQi(0)) + c2
                if prev:
                    work[e2] = prev
                elif e2 in work:
                    del work[e2]
        return MPoly(n, out)
    if alg.kind == "symmat":
        k = alg.param
        subs = []
        for (i, j) in alg.matrix_index:
            subs.append(MPoly.variable(k, i) * MPoly.variable(k, j))
        return p.compose(subs)
    raise ValueError(f"unsupported algebra kind {alg.kind}")
