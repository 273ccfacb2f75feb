"""Points and quadrature on the rank-one orbits.

The real orbit carries the measure

    int f dmu = 2^(r lam) / Gamma(r lam) *
                int_{angular} int_0^inf f(t sigma) t^(r lam - 1) dt dsigma,

with the angular average normalized to total mass one over the unit-trace
slice.  Quadrature rules combine a generalized Gauss-Laguerre radial rule
(weight t^(r lam - 1) e^{-scale * t}, built by Golub-Welsch from the exact
recurrence coefficients) with product Gauss rules on spheres.  The
``scale`` should match the exponential decay of the integrands the rule
will see; the e^{scale t} compensation is folded into the weights so the
stored rule integrates against dmu itself.

The rank-one complex orbit gets its own rule for the K-Bessel-weighted
Fock measure, built from composite Gauss-Legendre radial panels whose
accuracy is pinned by the closed-form K-Bessel moments.
"""

from __future__ import annotations

import csv
import math
from dataclasses import dataclass, field

import numpy as np
from scipy.special import roots_jacobi

from .jordan import Algebra, Element, jordan_trace, on_cone_orbit
from .specialfn import DEFAULT_CTRL, SeriesControl, ktilde

__all__ = [
    "Quadrature", "xi_point", "xi_quadrature", "fock_quadrature_rank1",
    "folding_map", "sphere_rule", "gauss_genlaguerre",
]


@dataclass
class Quadrature:
    """Nodes (as Elements and as a float/complex array) plus weights."""

    alg: Algebra
    nodes: list
    weights: np.ndarray
    node_array: np.ndarray
    meta: dict = field(default_factory=dict)

    def __len__(self):
        return len(self.weights)

    def integrate(self, values: np.ndarray):
        return np.sum(self.weights * values)

    def integrate_fn(self, f):
        return self.integrate(evaluate_on_nodes(self, f))

    def to_csv(self, path):
        with open(path, "w", newline="") as fh:
            w = csv.writer(fh)
            n = self.alg.n
            if np.iscomplexobj(self.node_array):
                header = [f"re_x{j}" for j in range(n)] + [f"im_x{j}" for j in range(n)]
            else:
                header = [f"x{j}" for j in range(n)]
            w.writerow(header + ["weight"])
            for row, wt in zip(self.node_array, self.weights):
                if np.iscomplexobj(self.node_array):
                    vals = [f"{v.real!r}" for v in row] + [f"{v.imag!r}" for v in row]
                else:
                    vals = [f"{v!r}" for v in row]
                w.writerow(vals + [f"{wt!r}"])


def evaluate_on_nodes(quad: Quadrature, f) -> np.ndarray:
    """Evaluate a WeightedFn / callable / precomputed array on the rule."""
    if isinstance(f, np.ndarray):
        return f
    if hasattr(f, "eval_array"):
        return f.eval_array(quad.node_array)
    return f(quad.node_array)


# ---------------------------------------------------------------------------
# radial rules
# ---------------------------------------------------------------------------

def gauss_genlaguerre(order: int, alpha: float):
    """Golub-Welsch nodes/weights for the weight u^alpha e^-u on (0, inf).

    The Jacobi matrix uses the exact three-term recurrence of generalized
    Laguerre polynomials: a_i = 2i + alpha + 1, b_i = sqrt(i (i + alpha)).
    """
    if order < 1:
        raise ValueError("radial order must be >= 1")
    if alpha <= -1:
        raise ValueError("generalized Laguerre weight needs alpha > -1")
    i = np.arange(order)
    diag = 2 * i + alpha + 1
    off = np.sqrt((i[1:]) * (i[1:] + alpha))
    evals, evecs = np.linalg.eigh(np.diag(diag) + np.diag(off, 1) + np.diag(off, -1))
    weights = math.gamma(alpha + 1.0) * evecs[0] ** 2
    return evals, weights


def _radial_rule(rlam: float, order: int, scale: float):
    """Nodes t_i and weights rho_i with
    int_0^inf g(t) t^(rlam-1) dt ~ sum rho_i g(t_i), tuned for integrands
    decaying like e^{-scale * t}."""
    u, w = gauss_genlaguerre(order, rlam - 1.0)
    t = u / scale
    rho = w * np.exp(u) * scale ** (-rlam)
    return t, rho


# ---------------------------------------------------------------------------
# angular rules on spheres
# ---------------------------------------------------------------------------

def sphere_rule(sphere_dim: int, degree: int):
    """Points and weights on S^sphere_dim (unit sphere in R^(sphere_dim+1)),
    normalized to total weight 1 and exact for polynomials of the given
    degree.  S^1 uses a uniform angle grid, higher spheres a recursive
    Gauss-Gegenbauer product."""
    if sphere_dim == 0:
        pts = np.array([[1.0], [-1.0]])
        return pts, np.array([0.5, 0.5])
    if sphere_dim == 1:
        m = max(degree + 1, 4)
        th = 2.0 * math.pi * np.arange(m) / m
        pts = np.stack([np.cos(th), np.sin(th)], axis=1)
        return pts, np.full(m, 1.0 / m)
    half = (sphere_dim - 2) / 2.0
    nu = max((degree + 2) // 2, 2)
    u, uw = roots_jacobi(nu, half, half)
    sub_pts, sub_w = sphere_rule(sphere_dim - 1, degree)
    pts = []
    wts = []
    for ui, wi in zip(u, uw):
        s = math.sqrt(max(0.0, 1.0 - ui * ui))
        for p, pw in zip(sub_pts, sub_w):
            pts.append(np.concatenate(([ui], s * p)))
            wts.append(wi * pw)
    pts = np.array(pts)
    wts = np.array(wts)
    return pts, wts / np.sum(wts)


def _angular_nodes(alg: Algebra, degree: int):
    """Unit-trace slice points sigma (as coordinate arrays) and weights."""
    if alg.kind == "rank1":
        return np.array([[1.0]]), np.array([1.0])
    if alg.kind == "minkowski":
        n = alg.n
        pts, wts = sphere_rule(n - 2, degree)
        sig = np.zeros((len(wts), n))
        sig[:, 0] = 0.5
        sig[:, 1:] = 0.5 * pts
        return sig, wts
    if alg.kind == "symmat":
        k = alg.param
        pts, wts = sphere_rule(k - 1, 2 * degree)
        sig = np.array([_fold_coords(alg, v) for v in pts])
        return sig, wts
    raise ValueError(alg.kind)


def _fold_coords(alg: Algebra, v) -> np.ndarray:
    return np.array([v[i] * v[j] for (i, j) in alg.matrix_index])


# ---------------------------------------------------------------------------
# public constructors
# ---------------------------------------------------------------------------

def xi_point(alg: Algebra, t, angular=None) -> Element:
    """The orbit point t * sigma(angular).

    rank1: sigma = 1.  minkowski: angular is a unit vector omega in
    R^(n-1), sigma = (1, omega)/2.  symmat: angular is a unit vector v in
    R^k, sigma = v v^T.  All satisfy tr(sigma) = 1.
    """
    if t <= 0:
        raise ValueError("radial coordinate must be positive")
    if alg.kind == "rank1":
        return alg.element((t,))
    if alg.kind == "minkowski":
        omega = np.asarray(angular, dtype=float)
        if omega.shape != (alg.n - 1,) or abs(omega @ omega - 1.0) > 1e-9:
            raise ValueError("angular parameter must be a unit vector in R^(n-1)")
        coords = np.concatenate(([0.5], 0.5 * omega))
        return alg.element(tuple(t * coords))
    if alg.kind == "symmat":
        v = np.asarray(angular, dtype=float)
        if v.shape != (alg.param,) or abs(v @ v - 1.0) > 1e-9:
            raise ValueError("angular parameter must be a unit vector in R^k")
        return alg.element(tuple(t * _fold_coords(alg, v)))
    raise ValueError(alg.kind)


def xi_quadrature(alg: Algebra, radial_order: int = 60, angular_degree: int = 20,
                  scale: float = 2.0) -> Quadrature:
    """Quadrature for the equivariant measure on the real rank-one orbit.

    scale is the exponential decay rate the rule is optimized for; 2.0
    matches the e^{-2 tr} integrands of norm computations, 1.0 the pure
    e^{-tr} of inversion-type integrals.
    """
    rlam = float(alg.rlam)
    t, rho = _radial_rule(rlam, radial_order, scale)
    sig, aw = _angular_nodes(alg, angular_degree)
    pref = 2.0 ** rlam / math.gamma(rlam)
    node_array = (t[:, None, None] * sig[None, :, :]).reshape(-1, alg.n)
    weights = pref * (rho[:, None] * aw[None, :]).reshape(-1)
    nodes = [alg.element(tuple(row)) for row in node_array]
    quad = Quadrature(alg, nodes, weights, node_array,
                      meta={"radial_order": radial_order,
                            "angular_degree": angular_degree,
                            "scale": scale, "side": "cone"})
    _check_on_orbit(quad)
    return quad


def _check_on_orbit(quad: Quadrature, tol: float = 1e-12):
    # spot-check: orbit constraint on a few nodes (they are constructed
    # on-orbit, this guards regressions in the constructors)
    alg = quad.alg
    idx = np.linspace(0, len(quad.weights) - 1, min(7, len(quad.weights))).astype(int)
    for i in idx:
        if not on_cone_orbit(alg.element(tuple(quad.node_array[i])), tol=1e-8):
            raise AssertionError("quadrature node off the orbit")


def fock_quadrature_rank1(lam: float, radial_points: int = 28,
                          angular_order: int = 24,
                          ctrl: SeriesControl = DEFAULT_CTRL) -> Quadrature:
    """Rule for the K-Bessel-weighted measure on the rank-one complex orbit.

    Radial: composite Gauss-Legendre panels, geometric near zero where the
    density may be log-singular, covering (0, 120].  Angular: uniform
    angles, exact for trigonometric polynomials below angular_order.  The
    normalization constant is the closed-form value of the lam-moment, so
    the constant function has unit norm.
    """
    from .jordan import rank1 as _rank1

    lamf = float(lam)
    if lamf <= 0:
        raise ValueError("fock quadrature requires lam > 0")
    alg = _rank1(lam)
    # radial panels: geometric from 1e-7 to 2, linear 2 .. 120
    edges = [0.0]
    x = 1e-7
    while x < 2.0:
        edges.append(x)
        x *= 2.2
    edges.extend(np.linspace(2.0, 120.0, 40)[1:])
    gl_x, gl_w = np.polynomial.legendre.leggauss(radial_points)
    ts, rads = [], []
    for lo, hi in zip(edges[:-1], edges[1:]):
        mid, half = 0.5 * (hi + lo), 0.5 * (hi - lo)
        ts.append(mid + half * gl_x)
        rads.append(half * gl_w)
    ts = np.concatenate(ts)
    rads = np.concatenate(rads)
    dens = ktilde(lamf - 1.0, ts, ctrl) * ts ** (2.0 * lamf - 1.0)
    c_norm = 2.0 ** (2.0 * lamf - 2.0) * math.gamma(lamf)
    m = max(int(angular_order), 4)
    th = 2.0 * math.pi * np.arange(m) / m
    phases = np.exp(1j * th)
    node_array = (ts[:, None] * phases[None, :]).reshape(-1, 1)
    weights = ((rads * dens)[:, None] * np.full(m, 1.0 / m)[None, :]).reshape(-1)
    weights = weights / c_norm
    nodes = [alg.element((z,)) for z in node_array[:, 0]]
    return Quadrature(alg, nodes, weights, node_array,
                      meta={"radial_points": radial_points,
                            "angular_order": m, "side": "fock", "lam": lamf})


def fock_inner(quad: Quadrature, f, g) -> complex:
    """L2 inner product <f, g> against the K-Bessel-weighted measure."""
    fv = evaluate_on_nodes(quad, f)
    gv = evaluate_on_nodes(quad, g)
    return complex(np.sum(quad.weights * fv * np.conj(gv)))


def folding_map(alg: Algebra, v) -> Element:
    """v -> v v^T into the symmetric-matrix algebra; complex v lands on the
    complex orbit, real nonzero v on the closure of the real one."""
    if alg.kind != "symmat":
        raise ValueError("folding_map is defined for the symmat family")
    v = list(v)
    if all(not c for c in v):
        raise ValueError("folding of the zero vector is undefined")
    coords = [v[i] * v[j] for (i, j) in alg.matrix_index]
    return alg.element(tuple(coords))
