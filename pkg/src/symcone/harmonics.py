"""Spherical harmonics on the rank-one orbit.

Degree-m harmonics are the kernel of the trace component of the Bessel
operator on regular functions of the orbit.  The kernel is computed by
exact fraction-free elimination over the Gaussian rationals, working in
normal-form coordinates, so dimensions are certified integers.

Also here: the explicit decomposition of an arbitrary homogeneous
polynomial into trace-power times harmonic layers, the rotation-invariant
(spherical) vector, the extreme weight vector built from the Jordan
frame, and the dimension formulas.
"""

from __future__ import annotations

import itertools
import math
from fractions import Fraction

from .gaussrat import QQi
from .jordan import Algebra, Element, jordan_frame, offdiag_unit
from .poly import (MPoly, bessel_e_apply, mono_poly, normal_form,
                   pairing_poly, trace_poly)
from .specialfn import pochhammer

__all__ = [
    "HarmonicBasis", "harmonic_basis", "harmonic_decompose",
    "spherical_vector", "highest_weight_vector", "dim_harmonic", "dim_pm",
    "x0_commutator_matrix", "nullspace", "rref",
]


# ---------------------------------------------------------------------------
# exact linear algebra over QQi
# ---------------------------------------------------------------------------

def rref(rows):
    """Reduced row echelon form; returns (rows, pivot_columns)."""
    rows = [list(r) for r in rows]
    if not rows:
        return rows, []
    ncols = len(rows[0])
    pivots = []
    r = 0
    for c in range(ncols):
        pr = next((i for i in range(r, len(rows)) if rows[i][c]), None)
        if pr is None:
            continue
        rows[r], rows[pr] = rows[pr], rows[r]
        inv = rows[r][c].inverse() if isinstance(rows[r][c], QQi) else 1 / rows[r][c]
        rows[r] = [v * inv for v in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][c]:
                f = rows[i][c]
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
        if r == len(rows):
            break
    return rows, pivots


def nullspace(rows, ncols):
    """Basis of the exact nullspace of the matrix given by `rows`."""
    red, pivots = rref(rows)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for fc in free:
        v = [QQi(0)] * ncols
        v[fc] = QQi(1)
        for ri, pc in enumerate(pivots):
            v[pc] = -red[ri][fc]
        basis.append(v)
    return basis


# ---------------------------------------------------------------------------
# normal-form coordinates
# ---------------------------------------------------------------------------

def _nf_monomials(alg: Algebra, m: int):
    """Monomial basis of the degree-m normal-form space."""
    if m < 0:
        return []
    if alg.kind == "rank1":
        return [(m,)]
    if alg.kind == "minkowski":
        n = alg.n
        out = []
        for first in (0, 1):
            if first > m:
                continue
            for rest in _exponents(n - 1, m - first):
                out.append((first,) + rest)
        return out
    if alg.kind == "symmat":
        return list(_exponents(alg.param, 2 * m))
    raise ValueError(alg.kind)


def _exponents(nvars: int, total: int):
    if nvars == 1:
        yield (total,)
        return
    for head in range(total, -1, -1):
        for rest in _exponents(nvars - 1, total - head):
            yield (head,) + rest


def _nf_vector(p_nf: MPoly, index: dict):
    v = [QQi(0)] * len(index)
    for e, c in p_nf.terms.items():
        v[index[e]] = c
    return v


def monomial_section(alg: Algebra, m: int):
    """Degree-m monomial exponents over the algebra whose normal forms are
    a basis of the degree-m regular functions on the orbit."""
    if alg.kind == "rank1":
        return [(m,)] if m >= 0 else []
    if alg.kind == "minkowski":
        return _nf_monomials(alg, m)
    # symmat: row-reduce the pullbacks of all degree-m monomials
    monos = _nf_monomials(alg, m)
    index = {e: i for i, e in enumerate(monos)}
    chosen = []
    rows = []
    for e in _exponents(alg.n, m):
        p = MPoly(alg.n, {e: QQi(1)})
        vec = _nf_vector(normal_form(alg, p), index)
        trial = rows + [vec]
        red, piv = rref(trial)
        if len(piv) > len(rows):
            rows = [r for r in red if any(r)]
            chosen.append(e)
        if len(chosen) == len(monos):
            break
    return chosen


# ---------------------------------------------------------------------------
# dimensions
# ---------------------------------------------------------------------------

def dim_pm(alg: Algebra, m: int) -> int:
    """Dimension of the degree-m regular functions on the complex orbit:
    (n/r)_m (r lam)_m / (m! (lam)_m)."""
    if m < 0:
        return 0
    lam = Fraction(alg.lam)
    val = pochhammer(Fraction(alg.n, alg.r), m) * pochhammer(Fraction(alg.r) * lam, m) \
        / (Fraction(math.factorial(m)) * pochhammer(lam, m))
    if val.denominator != 1:
        raise ArithmeticError(f"dimension formula produced {val}")
    return int(val)


def dim_harmonic(alg: Algebra, m: int) -> int:
    return dim_pm(alg, m) - dim_pm(alg, m - 1)


# ---------------------------------------------------------------------------
# the harmonic space
# ---------------------------------------------------------------------------

class HarmonicBasis:
    """Exact basis of the degree-m harmonics.

    polys holds representatives as polynomials on the ambient algebra
    (linear combinations of the monomial section); normal_forms the
    corresponding canonical representatives on the orbit.
    """

    def __init__(self, alg, degree, polys, normal_forms):
        self.alg = alg
        self.degree = degree
        self.polys = polys
        self.normal_forms = normal_forms

    def __len__(self):
        return len(self.polys)

    def to_json(self):
        import json
        return json.dumps([json.loads(p.to_json()) for p in self.polys])


def harmonic_basis(alg: Algebra, m: int) -> HarmonicBasis:
    """Kernel of the Bessel trace component on degree-m regular functions."""
    if m == 0:
        one = MPoly.one(alg.n)
        return HarmonicBasis(alg, 0, [one], [normal_form(alg, one)])
    section = monomial_section(alg, m)
    lower = _nf_monomials(alg, m - 1)
    lower_index = {e: i for i, e in enumerate(lower)}
    cols = []
    for e in section:
        p = MPoly(alg.n, {e: QQi(1)})
        img = normal_form(alg, bessel_e_apply(alg, p))
        cols.append(_nf_vector(img, lower_index))
    # rows of the elimination problem = transpose (one column per section
    # monomial); nullspace vectors give harmonic combinations
    rows = [[cols[j][i] for j in range(len(section))] for i in range(len(lower))]
    kernel = nullspace(rows, len(section))
    polys = []
    nfs = []
    for vec in kernel:
        p = MPoly(alg.n, {e: c for e, c in zip(section, vec) if c})
        polys.append(p)
        nfs.append(normal_form(alg, p))
    return HarmonicBasis(alg, m, polys, nfs)


def harmonic_decompose(alg: Algebra, p: MPoly):
    """Split a homogeneous degree-m polynomial into layers
    p = sum_k tr^k h_{m-k} with each h_{m-k} harmonic; returns
    [h_m, h_{m-1}, ..., h_0], exactly.

    Layer k:  h_{m-k} = sum_j (-1)^j / (j! k!)
              / poch(rl+2m-2k, k) / poch(rl+2m-2k-1-j, j)
              * tr^j * Btr^{k+j} p,
    where Btr is the Bessel trace component and rl = r*lam.
    """
    if not p.is_homogeneous():
        raise ValueError("harmonic_decompose needs a homogeneous polynomial")
    m = p.degree()
    rl = Fraction(alg.r) * Fraction(alg.lam)
    tr = trace_poly(alg)
    powers = [p]
    for _ in range(m):
        powers.append(bessel_e_apply(alg, powers[-1]))
    layers = []
    for k in range(m + 1):
        h = MPoly.zero(alg.n)
        for j in range(m - k + 1):
            d1 = pochhammer(rl + 2 * m - 2 * k, k)
            d2 = pochhammer(rl + 2 * m - 2 * k - 1 - j, j)
            if d1 == 0 or d2 == 0:
                raise ArithmeticError("degenerate parameters in the layer formula")
            coeff = Fraction((-1) ** j) / (Fraction(math.factorial(j) * math.factorial(k)) * d1 * d2)
            h = h + coeff * (tr ** j * powers[k + j])
        layers.append(h)
    return layers


def spherical_vector(alg: Algebra, m: int) -> MPoly:
    """The rotation-invariant harmonic of degree m: the homogeneous
    extension of 2F1(-m, m+r*lam-1; lam; (x|c1)) from the unit-trace slice,

        sum_j (-m)_j (m+r*lam-1)_j / (j! (lam)_j) (x|c1)^j tr(x)^(m-j).
    """
    if alg.r < 2:
        raise ValueError("spherical vectors need rank >= 2")
    lam = Fraction(alg.lam)
    rl = Fraction(alg.r) * lam
    c1 = jordan_frame(alg)[0]
    xc1 = pairing_poly(alg, c1)
    tr = trace_poly(alg)
    out = MPoly.zero(alg.n)
    for j in range(m + 1):
        coeff = pochhammer(Fraction(-m), j) * pochhammer(Fraction(m) + rl - 1, j) \
            / (Fraction(math.factorial(j)) * pochhammer(lam, j))
        out = out + coeff * (xc1 ** j * tr ** (m - j))
    return out


def highest_weight_vector(alg: Algebra, m: int) -> MPoly:
    """(x | c1 + i x0 - c2)^m, an extreme weight vector among the degree-m
    harmonics; harmonic because its direction squares to zero and is
    trace-free."""
    if alg.r < 2:
        raise ValueError("extreme weight vectors need rank >= 2")
    frame = jordan_frame(alg)
    a = frame[0] + QQi(0, 1) * offdiag_unit(alg) - frame[1]
    return pairing_poly(alg, a) ** m


def x0_commutator_matrix(alg: Algebra):
    """Matrix of [L(c1), L(x0)] over the fixed basis (a derivation that
    rotates the frame plane; the weight generator for the extreme vector)."""
    c1 = jordan_frame(alg)[0]
    x0 = offdiag_unit(alg)
    n = alg.n
    l1 = alg.lmat(c1.coords)
    l0 = alg.lmat(x0.coords)
    out = [[0] * n for _ in range(n)]
    for i in range(n):
        for j in range(n):
            s = 0
            for k in range(n):
                s = s + l1[i][k] * l0[k][j] - l0[i][k] * l1[k][j]
            out[i][j] = s
    return out
