"""Transforms between the cone model and the holomorphic model.

Contents: the conformal-algebra triples (u, T, v) with T = L(a) + D and
the Cayley transform between the compact and structure pictures; the
exact Lie-algebra actions on weighted functions and on polynomials; the
reproducing kernel; the Segal-Bargmann transform (numeric on quadrature
rules, exact on Hermite expansions); generalized Hermite functions and
the triangular expansion in them; the order-two inversion operator with
its oscillatory kernel; the sl2 radial ladder and its embedding into the
cone; and the comparison of the transform with the classical one through
the folding map.
"""

from __future__ import annotations

import math
from fractions import Fraction

import numpy as np

from .gaussrat import QQi
from .jordan import (Algebra, Element, jordan_frame, jordan_trace,
                     offdiag_unit, on_complex_orbit, trace_form)
from .orbit import Quadrature, evaluate_on_nodes, xi_quadrature
from .poly import (MPoly, WeightedFn, bessel_e_apply, euler_apply,
                   ground_state, linear_map_apply, mono_poly, normal_form,
                   pairing_poly, trace_poly, weighted_bessel_dir)
from .specialfn import DEFAULT_CTRL, SeriesControl, kernel_b, kernel_f, laguerre_poly

__all__ = [
    "GTriple", "triple_E", "triple_H", "triple_F", "cayley_transform",
    "dpi_apply", "drho_apply",
    "repro_kernel", "repro_kernel_m",
    "segal_bargmann_numeric", "segal_bargmann_exact",
    "inverse_segal_bargmann_rank1",
    "hermite_function", "hermite_trace_function", "hermite_expand",
    "unitary_inversion_numeric", "unitary_inversion_exact",
    "Sl2Model", "folding_compare_symk", "classical_sb_rk",
]


# ---------------------------------------------------------------------------
# conformal-algebra triples and the Cayley transform
# ---------------------------------------------------------------------------

class GTriple:
    """(u, T, v) in the conformal algebra, T = L(a) + D with D a
    derivation (D e = 0).  Coordinates may be Gaussian rational."""

    def __init__(self, alg: Algebra, u: Element, a: Element, dmat, v: Element):
        self.alg = alg
        self.u = u
        self.a = a
        self.dmat = dmat if dmat is not None else \
            tuple(tuple(0 for _ in range(alg.n)) for _ in range(alg.n))
        self.v = v
        de = linear_map_apply(alg, self.dmat, alg.unit)
        if any(de.coords):
            raise ValueError("derivation part must annihilate the unit")

    @staticmethod
    def from_parts(alg, u=None, a=None, dmat=None, v=None):
        z = alg.zero()
        return GTriple(alg, u or z, a or z, dmat, v or z)

    def tmatrix(self, star: bool = False):
        """Matrix of T = L(a) + D (or of the trace-form adjoint
        T* = L(a) - D)."""
        n = self.alg.n
        la = self.alg.lmat(self.a.coords)
        sgn = -1 if star else 1
        return [[la[i][j] + sgn * self.dmat[i][j] for j in range(n)]
                for i in range(n)]

    def __repr__(self):
        return f"GTriple(u={self.u.coords}, a={self.a.coords}, v={self.v.coords})"


def triple_E(alg: Algebra) -> GTriple:
    return GTriple.from_parts(alg, u=alg.unit)


def triple_H(alg: Algebra) -> GTriple:
    return GTriple.from_parts(alg, a=2 * alg.unit)


def triple_F(alg: Algebra) -> GTriple:
    return GTriple.from_parts(alg, v=alg.unit)


_I = QQi(0, 1)
_QUARTER = Fraction(1, 4)
_HALF = Fraction(1, 2)


def cayley_transform(x: GTriple, direction: str = "forward") -> GTriple:
    """The inner automorphism connecting the compact and structure
    pictures; complex-linear on triples.

    forward:  (u, L(a)+D, v) -> ((u+v)/4 + i a/4, L(i(u-v))+D, u+v - i a)
    inverse:  solves the same linear system the other way.
    """
    alg = x.alg
    if direction == "forward":
        u2 = _QUARTER * (x.u + x.v) + (_I * _QUARTER) * x.a
        a2 = _I * (x.u - x.v)
        v2 = (x.u + x.v) - _I * x.a
        return GTriple(alg, u2, a2, x.dmat, v2)
    if direction == "inverse":
        u2 = x.u + _QUARTER * x.v - (_I * _HALF) * x.a
        v2 = x.u + _QUARTER * x.v + (_I * _HALF) * x.a
        a2 = QQi(0, -2) * x.u + (_I * _HALF) * x.v
        return GTriple(alg, u2, a2, x.dmat, v2)
    raise ValueError("direction must be 'forward' or 'inverse'")


# ---------------------------------------------------------------------------
# Lie algebra actions
# ---------------------------------------------------------------------------

def _matrix_trace(mat):
    t = 0
    for i in range(len(mat)):
        t = t + mat[i][i]
    return t


def _row_poly(alg, mat, row):
    terms = {}
    for d in range(alg.n):
        c = mat[row][d]
        if c:
            e = tuple(1 if i == d else 0 for i in range(alg.n))
            terms[e] = QQi(c) if not isinstance(c, QQi) else c
    return MPoly(alg.n, terms)


def dpi_apply(x: GTriple, f: WeightedFn) -> WeightedFn:
    """The cone-model action of a triple on p * exp(s tr):

        i (u|z) f  +  [D_{T* z} + (r lam / 2n) Tr(T*)] f  +  i (v|B) f.

    Exact; complex triples (the holomorphic extension) are handled by the
    same formulas.
    """
    alg = f.alg
    out = f.mul_poly(_I * pairing_poly(alg, x.u))
    tstar = x.tmatrix(star=True)
    p, s = f.poly, f.slope
    dir_part = MPoly.zero(alg.n)
    for c in range(alg.n):
        dc = p.diff(c)
        if not dc.is_zero():
            dir_part = dir_part + dc * _row_poly(alg, tstar, c)
    if s:
        # slope term: s (T* z | e) p = s (z | T e) p
        te = linear_map_apply(alg, x.tmatrix(star=False), alg.unit)
        dir_part = dir_part + s * (p * pairing_poly(alg, te))
    const = Fraction(alg.r) * Fraction(alg.lam) / (2 * alg.n)
    tr_t = _matrix_trace(tstar)
    out = out + WeightedFn(alg, dir_part + (const * tr_t) * p, s)
    out = out + _I * weighted_bessel_dir(alg, x.v, f)
    return out


def drho_apply(x: GTriple, p: MPoly) -> MPoly:
    """The holomorphic-model action: conjugate the cone action by the
    Cayley transform and act on polynomials."""
    if p.nvars != x.alg.n:
        raise ValueError("polynomial does not match the algebra")
    f = WeightedFn(x.alg, p, Fraction(0))
    return dpi_apply(cayley_transform(x, "forward"), f).poly


# ---------------------------------------------------------------------------
# reproducing kernel
# ---------------------------------------------------------------------------

def repro_kernel(alg: Algebra, z: Element, w: Element,
                 ctrl: SeriesControl = DEFAULT_CTRL,
                 check_membership: bool = True) -> complex:
    """K(z, w) = kernel_b(lam, (z|conj w)/4) on the complex orbit."""
    if check_membership and not (on_complex_orbit(z, 1e-9) and on_complex_orbit(w, 1e-9)):
        raise ValueError("reproducing kernel arguments must lie on the orbit")
    pair = complex(trace_form(z, w.conjugate()))
    return complex(kernel_b(float(alg.lam), pair / 4.0, ctrl))


def repro_kernel_m(alg: Algebra, m: int, z: Element, w: Element) -> complex:
    """Degree-m layer (z|conj w)^m / (4^m m! (lam)_m)."""
    pair = complex(trace_form(z, w.conjugate()))
    denom = 4.0 ** m * math.factorial(m)
    lam = float(alg.lam)
    for j in range(m):
        denom *= lam + j
    return pair ** m / denom


# ---------------------------------------------------------------------------
# Segal-Bargmann transform
# ---------------------------------------------------------------------------

def _pairings_with(quad: Quadrature, z_coords: np.ndarray) -> np.ndarray:
    g = np.array([float(a) for a in quad.alg.gram])
    return quad.node_array @ (g * z_coords)


def _trace_values(quad: Quadrature) -> np.ndarray:
    g = np.array([float(a) for a in quad.alg.gram])
    e = np.array([float(c) for c in quad.alg._unit])
    return (quad.node_array @ (g * e)).real


def segal_bargmann_numeric(alg: Algebra, f, quad: Quadrature, z,
                           ctrl: SeriesControl = DEFAULT_CTRL) -> complex:
    """exp(-tr(z)/2) * integral of kernel_b(lam, (x|z)) e^{-tr x} f(x).

    z is an Element with complex coordinates (or a plain coordinate
    array); f a WeightedFn, callable on node arrays, or a value array.
    WeightedFn slopes must keep the integrand decaying (slope < 1).
    """
    if isinstance(f, WeightedFn) and float(f.slope) >= 1.0:
        raise ValueError("integrand grows too fast for the transform")
    zc = np.asarray(z.coords if isinstance(z, Element) else z, dtype=complex)
    pair = _pairings_with(quad, zc)
    kb = kernel_b(float(alg.lam), pair, ctrl)
    tr = _trace_values(quad)
    fv = evaluate_on_nodes(quad, f)
    g = np.array([float(a) for a in alg.gram])
    e = np.array([float(c) for c in alg._unit])
    trz = zc @ (g * e)
    return complex(np.exp(-0.5 * trz) * np.sum(quad.weights * kb * np.exp(-tr) * fv))


def segal_bargmann_exact(alg: Algebra, coeffs: dict) -> MPoly:
    """Image of sum_a c_a h_a: the polynomial sum_a c_a z^a in normal form."""
    out = MPoly.zero(alg.n)
    for alpha, c in coeffs.items():
        out = out + c * mono_poly(alg, alpha)
    return normal_form(alg, out)


def inverse_segal_bargmann_rank1(fpoly, quad: Quadrature, x: float,
                                 ctrl: SeriesControl = DEFAULT_CTRL) -> complex:
    """Rank-one inverse transform against the K-Bessel-weighted rule:

        e^{-x} * integral of kernel_b(lam, x conj(z)) e^{-conj(z)/2} F(z).
    """
    if quad.meta.get("side") != "fock":
        raise ValueError("inverse transform needs the holomorphic-side rule")
    if x <= 0:
        raise ValueError("evaluation point must be on the positive ray")
    lam = quad.meta["lam"]
    zbar = np.conj(quad.node_array[:, 0])
    kb = kernel_b(lam, x * zbar, ctrl)
    fv = evaluate_on_nodes(quad, fpoly)
    return complex(math.exp(-x) * np.sum(quad.weights * kb * np.exp(-0.5 * zbar) * fv))


# ---------------------------------------------------------------------------
# generalized Hermite functions
# ---------------------------------------------------------------------------

_hermite_cache: dict = {}


def hermite_function(alg: Algebra, alpha) -> WeightedFn:
    """h_alpha = e^{tr} B^alpha e^{-2 tr}: polynomial times e^{-tr},
    computed by repeated exact directional Bessel applications."""
    alpha = tuple(alpha)
    if len(alpha) != alg.n:
        raise ValueError("multi-index length must match the dimension")
    key = (alg.kind, alg.param, alg.lam, alpha)
    got = _hermite_cache.get(key)
    if got is not None:
        return got
    # peel one step off a smaller index (cache-friendly)
    j = next((i for i, k in enumerate(alpha) if k), None)
    if j is None:
        out = WeightedFn(alg, MPoly.one(alg.n), Fraction(-1))
    else:
        prev = hermite_function(alg, alpha[:j] + (alpha[j] - 1,) + alpha[j + 1:])
        inner = WeightedFn(alg, prev.poly, Fraction(-2))
        stepped = weighted_bessel_dir(alg, alg.basis_element(j), inner)
        out = WeightedFn(alg, stepped.poly, Fraction(-1))
    _hermite_cache[key] = out
    return out


def hermite_trace_function(alg: Algebra, m: int) -> WeightedFn:
    """e^{tr} (e|B)^m e^{-2 tr}; proportional to the Laguerre vector
    e^{-tr} L_m^lam(2 tr)."""
    poly = MPoly.one(alg.n)
    for _ in range(m):
        w = weighted_bessel_dir(alg, alg.unit, WeightedFn(alg, poly, Fraction(-2)))
        poly = w.poly
    return WeightedFn(alg, poly, Fraction(-1))


def _leading_scale(alg: Algebra, alpha) -> QQi:
    out = QQi(4) ** sum(alpha)
    for j, k in enumerate(alpha):
        out = out * QQi(alg.gram[j]) ** k
    return out


def hermite_expand(alg: Algebra, p: MPoly) -> dict:
    """Unique coefficients c_alpha with p = sum c_alpha H_alpha (the
    Hermite polynomials are triangular with invertible diagonal in the
    monomial basis)."""
    coeffs = {}
    rest = p
    while not rest.is_zero():
        deg = rest.degree()
        alpha = next(e for e in rest.terms if sum(e) == deg)
        c = rest.terms[alpha] / _leading_scale(alg, alpha)
        coeffs[alpha] = coeffs.get(alpha, QQi(0)) + c
        rest = rest - c * hermite_function(alg, alpha).poly
    return {a: c for a, c in coeffs.items() if c}


# ---------------------------------------------------------------------------
# the unitary inversion operator
# ---------------------------------------------------------------------------

def unitary_inversion_numeric(alg: Algebra, f, quad: Quadrature, x,
                              ctrl: SeriesControl = DEFAULT_CTRL) -> complex:
    """integral of kernel_f(r lam, lam, (x|y)) f(y) over the orbit.

    The quadrature should be built with scale close to the decay of f
    (scale=1.0 for the polynomial-times-e^{-tr} class).
    """
    if isinstance(f, WeightedFn) and float(f.slope) >= 0.0:
        raise ValueError("inversion integrand must decay")
    xc = np.asarray(x.coords if isinstance(x, Element) else x, dtype=float)
    pair = _pairings_with(quad, xc)
    kf = kernel_f(float(alg.rlam), float(alg.lam), pair, ctrl)
    fv = evaluate_on_nodes(quad, f)
    return complex(np.sum(quad.weights * kf * fv))


def unitary_inversion_exact(coeffs: dict) -> dict:
    """Hermite-side action: flip the sign of odd-degree coefficients."""
    return {a: (QQi(-1) ** sum(a)) * c for a, c in coeffs.items()}


# ---------------------------------------------------------------------------
# sl2 radial ladder
# ---------------------------------------------------------------------------

def _upoly_divide_t(q: MPoly, power: int = 1) -> MPoly:
    out = {}
    for (e,), c in q.terms.items():
        if e < power:
            raise ArithmeticError("polynomial not divisible by the radial variable")
        out[(e - power,)] = c
    return MPoly(1, out)


class Sl2Model:
    """Radial lowest-weight ladder with weight s = r lam + 2m on the
    half-line with measure t^(r lam - 1) dt.

    Basis polynomials q_k (the functions are q_k(t) e^{-t}):
        q_k(t) = t^m L_k^s(2t).
    Operators act on the polynomial part; e/h/f are the standard triple,
    the *_tilde variants the Cayley-rotated one whose ladder is
        e~ q_k = 2i q_{k+1},   h~ q_k = (s + 2k) q_k,
        f~ q_k = (1/2) k (s + k - 1) i q_{k-1}.
    """

    def __init__(self, alg: Algebra, m: int):
        self.alg = alg
        self.m = m
        self.mu = Fraction(alg.r) * Fraction(alg.lam) - 1
        self.s = Fraction(alg.r) * Fraction(alg.lam) + 2 * m
        self.cnum = (self.s - 1) ** 2 - self.mu ** 2  # = 4 m (m + r lam - 1)

    def phi(self, k: int) -> MPoly:
        t = MPoly.variable(1, 0)
        lk = laguerre_poly(k, self.s, 2 * t)
        if isinstance(lk, Fraction):
            lk = MPoly.const(1, lk)
        return t ** self.m * lk

    def op_e(self, q: MPoly) -> MPoly:
        return _I * (MPoly.variable(1, 0) * q)

    def op_h(self, q: MPoly) -> MPoly:
        t = MPoly.variable(1, 0)
        return 2 * (t * q.diff(0)) - 2 * (t * q) + (self.mu + 1) * q

    def op_f(self, q: MPoly) -> MPoly:
        t = MPoly.variable(1, 0)
        inner = t * t * (q.diff(0).diff(0) - 2 * q.diff(0) + q) \
            + (self.mu + 1) * (t * (q.diff(0) - q)) \
            - (self.cnum * Fraction(1, 4)) * q
        return _I * _upoly_divide_t(inner)

    # Cayley-rotated triple
    def op_e_tilde(self, q: MPoly) -> MPoly:
        return self.op_e(q) + self.op_f(q) - _I * self.op_h(q)

    def op_h_tilde(self, q: MPoly) -> MPoly:
        return -_I * (self.op_e(q) - self.op_f(q))

    def op_f_tilde(self, q: MPoly) -> MPoly:
        return Fraction(1, 4) * (self.op_e(q) + self.op_f(q) + _I * self.op_h(q))

    def ladder(self, kmax: int):
        """Tridiagonal coefficients {raise, weight, lower} for k <= kmax."""
        return {
            "raise": [QQi(0, 2)] * (kmax + 1),
            "weight": [QQi(self.s + 2 * k) for k in range(kmax + 1)],
            "lower": [QQi(0, 1) * QQi(Fraction(k) * (self.s + k - 1) / 2)
                      for k in range(kmax + 1)],
        }

    def embed(self, q: MPoly, harm: MPoly) -> WeightedFn:
        """Realize (q e^{-t}) tensor (degree-m harmonic) on the cone:
        the function q(|x|) |x|^{-m} harm(x) e^{-|x|}, which for q
        divisible by t^m is polynomial times e^{-tr}."""
        quot = _upoly_divide_t(q, self.m)
        radial = quot.compose([trace_poly(self.alg)])
        return WeightedFn(self.alg, radial * harm, Fraction(-1))


# ---------------------------------------------------------------------------
# folding comparison with the classical transform
# ---------------------------------------------------------------------------

def classical_sb_rk(qpoly: MPoly, zeta: np.ndarray, order: int = 48) -> complex:
    """Classical transform of q(x) e^{-|x|^2} on R^k at a complex point:

        e^{-zeta.zeta/2} * integral e^{2 zeta.x} e^{-2|x|^2} q(x) dx,

    by tensor Gauss-Hermite after x -> u/sqrt(2)."""
    k = qpoly.nvars
    u, w = np.polynomial.hermite.hermgauss(order)
    grids = np.meshgrid(*([u] * k), indexing="ij")
    pts = np.stack([g.reshape(-1) for g in grids], axis=1)
    wts = np.ones(pts.shape[0])
    for j in range(k):
        wts = wts * w[np.argmin(np.abs(u[None, :] - pts[:, j:j + 1]), axis=1)]
    x = pts / math.sqrt(2.0)
    vals = qpoly.eval_array(x) * np.exp(2.0 * (x @ zeta))
    zz = complex(zeta @ zeta)
    return complex(np.exp(-0.5 * zz) * np.sum(wts * vals) / 2.0 ** (k / 2.0))


def folding_compare_symk(k: int, gpolys, zetas=None, quad: Quadrature = None):
    """Compare the cone-side transform pulled through the folding map with
    the classical transform on R^k, for even inputs.

    gpolys: polynomials q~ on the symmat(k) algebra; the cone-side input
    is q~(X) e^{-tr X} and the classical input its pullback
    q~(v v^T) e^{-|v|^2}.  Returns the fitted scalar and the relative
    spread across all inputs and sample points (the theorem says the
    ratio is one constant)."""
    from .jordan import symmat
    from .orbit import folding_map

    alg = symmat(k)
    if quad is None:
        quad = xi_quadrature(alg, 70, 18)
    if zetas is None:
        rng = np.random.default_rng(7)
        zetas = [rng.normal(size=k) * 0.4 + 1j * rng.normal(size=k) * 0.3
                 for _ in range(4)]
    ratios = []
    for gpoly in gpolys:
        qpull = normal_form(alg, gpoly)
        f = WeightedFn(alg, gpoly, Fraction(-1))
        for zeta in zetas:
            zeta = np.asarray(zeta, dtype=complex)
            z = folding_map(alg, zeta)
            ours = segal_bargmann_numeric(alg, f, quad, z)
            ref = classical_sb_rk(qpull, zeta)
            ratios.append(ours / ref)
    ratios = np.array(ratios)
    scalar = complex(np.mean(ratios))
    spread = float(np.max(np.abs(ratios - scalar)) / abs(scalar))
    return {"scalar": scalar, "relative_spread": spread,
            "expected_scalar": (2.0 / math.pi) ** (k / 2.0)}
