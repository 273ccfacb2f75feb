"""Renormalized Bessel functions and related kernels.

The whole package evaluates its integral kernels through the three
renormalized Bessel functions

    jtilde(a, z) = (z/2)^(-a) J_a(z)
    itilde(a, z) = (z/2)^(-a) I_a(z)
    ktilde(a, x) = (x/2)^(-a) K_a(x)

itilde and jtilde are entire; composed with 2*sqrt(t) they become entire
functions of t with the hypergeometric-type Taylor series

    itilde(a, 2 sqrt(t)) = sum_n t^n / (n! Gamma(n+a+1)),

which is how they are computed here (desk-scale arguments only, no
asymptotics).  ktilde uses the connection formula with itilde away from
integer order, an ascending log-series at integer order, and the
exponential asymptotic expansion for large argument.

Also provided: the kernel functions built from these (kernel_b, kernel_f),
the closed-form K-Bessel moment, and exact terminating classical
polynomials (2F1, Laguerre, Gegenbauer, Jacobi) over rationals.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .gaussrat import QQi

__all__ = [
    "SeriesControl", "DEFAULT_CTRL", "SeriesError",
    "bessel_tilde", "itilde_sq", "jtilde_sq", "ktilde",
    "kernel_b", "kernel_f", "k_bessel_moment", "k_bessel_moment_parts",
    "classical_poly", "gauss2f1_terminating", "laguerre_poly",
    "gegenbauer_poly", "jacobi_poly", "pochhammer", "gamma_ratio",
]


@dataclass(frozen=True)
class SeriesControl:
    """Convergence knobs for the Bessel series evaluators."""

    max_terms: int = 300
    rel_tol: float = 1e-12
    asymptotic_switch: float = 30.0

    def __post_init__(self):
        if self.max_terms < 1:
            raise ValueError("max_terms must be >= 1")
        if self.rel_tol <= 0:
            raise ValueError("rel_tol must be positive")


DEFAULT_CTRL = SeriesControl()


class SeriesError(RuntimeError):
    """Raised when a series did not reach the requested tolerance."""


def _gamma(x: float) -> float:
    # math.gamma is a Lanczos-type implementation, relative error well
    # below 1e-13 for the real arguments used here.
    return math.gamma(x)


def itilde_sq(alpha: float, t, ctrl: SeriesControl = DEFAULT_CTRL):
    """itilde(alpha, 2 sqrt(t)) as an entire function of t.

    t may be a scalar (real or complex) or a numpy array.  Series in t,
    term recurrence term_{n+1} = term_n * t / ((n+1)(n+alpha+1)).
    """
    return _sq_series(alpha, t, +1.0, ctrl)


def jtilde_sq(alpha: float, t, ctrl: SeriesControl = DEFAULT_CTRL):
    """jtilde(alpha, 2 sqrt(t)) as an entire function of t."""
    return _sq_series(alpha, t, -1.0, ctrl)


def _sq_series(alpha: float, t, sign: float, ctrl: SeriesControl):
    arr = np.asarray(t, dtype=complex)
    scalar = arr.ndim == 0
    z = arr.reshape(-1) * sign
    term = np.full(z.shape, 1.0 / _gamma(alpha + 1.0), dtype=complex)
    total = term.copy()
    # magnitude floor keeps the stop test meaningful under cancellation
    peak = np.abs(term)
    for n in range(1, ctrl.max_terms + 1):
        term = term * z / (n * (n + alpha))
        total += term
        peak = np.maximum(peak, np.abs(total))
        if np.all(np.abs(term) <= ctrl.rel_tol * np.maximum(peak, 1e-300)):
            break
    else:
        raise SeriesError(
            f"Bessel series not converged after {ctrl.max_terms} terms "
            f"(max |t| = {np.max(np.abs(z)):.3g})")
    if scalar:
        return complex(total[0])
    return total.reshape(arr.shape)


def _ktilde_asymptotic(alpha: float, x: float) -> float:
    # K_a(x) ~ sqrt(pi/2x) e^-x sum_k a_k(alpha)/x^k, truncated at the
    # smallest term.  For half-integer a the sum terminates and the
    # expansion is an exact elementary formula valid for every x > 0.
    mu = 4.0 * alpha * alpha
    total = 1.0
    term = 1.0
    prev = math.inf
    for k in range(1, 60):
        term *= (mu - (2 * k - 1) ** 2) / (8.0 * k * x)
        if term == 0.0:
            break
        if abs(term) >= prev:
            break
        total += term
        prev = abs(term)
    k_val = math.sqrt(math.pi / (2.0 * x)) * math.exp(-x) * total
    return (x / 2.0) ** (-alpha) * k_val


def _ktilde_integral(alpha: float, x: float) -> float:
    # K_a(x) = int_0^inf exp(-x cosh u) cosh(a u) du.  The integrand is
    # positive and smooth, so composite Gauss-Legendre panels give close
    # to machine accuracy with no cancellation at any argument size.
    aa = abs(alpha)
    umax = 5.0
    for _ in range(4):
        umax = math.acosh(1.0 + (46.0 + aa * umax) / x)
    npanels = max(8, int(math.ceil(umax / 0.75)))
    nodes, weights = np.polynomial.legendre.leggauss(24)
    edges = np.linspace(0.0, umax, npanels + 1)
    total = 0.0
    for lo, hi in zip(edges[:-1], edges[1:]):
        mid, half = 0.5 * (hi + lo), 0.5 * (hi - lo)
        u = mid + half * nodes
        total += half * np.sum(weights * np.exp(-x * np.cosh(u)) * np.cosh(alpha * u))
    return (x / 2.0) ** (-alpha) * total


def ktilde(alpha: float, x, ctrl: SeriesControl = DEFAULT_CTRL):
    """Renormalized K-Bessel ktilde(alpha, x) for real x > 0.

    Half-integer orders use the exact terminating expansion; other orders
    use the stable cosh-integral representation below ctrl.asymptotic_switch
    and the exponential asymptotic expansion above it.  (Ascending series
    lose about e^{2x} of precision to cancellation and are not used.)
    Accepts scalars or numpy arrays.  Raises ValueError off the domain.
    """
    arr = np.asarray(x, dtype=float)
    scalar = arr.ndim == 0
    vals = arr.reshape(-1)
    if np.any(vals <= 0.0):
        raise ValueError("ktilde requires strictly positive real argument")
    out = np.empty(vals.shape, dtype=float)
    half_integer = abs(2.0 * alpha - round(2.0 * alpha)) < 1e-12 \
        and abs(alpha - round(alpha)) > 0.25
    for i, v in enumerate(vals):
        if half_integer or v > ctrl.asymptotic_switch:
            out[i] = _ktilde_asymptotic(alpha, v)
        else:
            out[i] = _ktilde_integral(alpha, v)
    if scalar:
        return float(out[0])
    return out.reshape(arr.shape)


def bessel_tilde(kind: str, alpha: float, z, ctrl: SeriesControl = DEFAULT_CTRL):
    """Renormalized Bessel function of the given kind at argument z.

    kind "I" and "J" accept any complex z (entire functions, evaluated via
    the squared-variable series); kind "K" requires real z > 0.
    """
    if kind == "I":
        return itilde_sq(alpha, np.asarray(z, dtype=complex) ** 2 / 4.0, ctrl)
    if kind == "J":
        return jtilde_sq(alpha, np.asarray(z, dtype=complex) ** 2 / 4.0, ctrl)
    if kind == "K":
        return ktilde(alpha, z, ctrl)
    raise ValueError(f"unknown Bessel kind {kind!r}")


# ---------------------------------------------------------------------------
# kernel functions
# ---------------------------------------------------------------------------

def kernel_b(lam: float, t, ctrl: SeriesControl = DEFAULT_CTRL):
    """Entire kernel Gamma(lam) * itilde(lam-1, 2 sqrt(t)); value 1 at t=0."""
    if lam <= 0:
        raise ValueError("kernel_b requires lam > 0")
    return _gamma(float(lam)) * itilde_sq(float(lam) - 1.0, t, ctrl)


def kernel_f(r_lambda: float, lam: float, t, ctrl: SeriesControl = DEFAULT_CTRL):
    """Inversion kernel 2^(-r*lam) * kernel_b(lam, -t), entire in t."""
    if lam <= 0:
        raise ValueError("kernel_f requires lam > 0")
    return 2.0 ** (-float(r_lambda)) * kernel_b(lam, -np.asarray(t, dtype=complex), ctrl)


def k_bessel_moment_parts(alpha, beta, a=1):
    """Exact parameters (pow2, gamma_arg1, gamma_arg2, a_exponent) of the
    closed-form moment  integral_0^inf ktilde(alpha, a x) x^beta dx
      = 2^(beta-1) a^(-beta-1) Gamma((beta+1)/2) Gamma((beta-2 alpha+1)/2).

    Inputs may be Fractions; the returned parts are then exact.
    """
    beta = Fraction(beta) if not isinstance(beta, float) else beta
    alpha = Fraction(alpha) if not isinstance(alpha, float) else alpha
    g1 = (beta + 1) / 2
    g2 = (beta - 2 * alpha + 1) / 2
    if g1 <= 0 or g2 <= 0:
        raise ValueError("moment parameters out of the convergent region")
    return beta - 1, g1, g2, -(beta + 1)


def k_bessel_moment(alpha: float, beta: float, a: float = 1.0) -> float:
    """Closed-form value of integral_0^inf ktilde(alpha, a x) x^beta dx."""
    if a <= 0:
        raise ValueError("k_bessel_moment requires a > 0")
    p2, g1, g2, pa = k_bessel_moment_parts(alpha, beta, a)
    return 2.0 ** float(p2) * float(a) ** float(pa) * _gamma(float(g1)) * _gamma(float(g2))


# ---------------------------------------------------------------------------
# classical polynomials, exact over rationals
# ---------------------------------------------------------------------------

def pochhammer(x, n: int):
    """Rising factorial (x)_n; exact when x is Fraction/int/QQi."""
    out = x * 0 + 1
    for k in range(n):
        out = out * (x + k)
    return out


def gamma_ratio(x, n: int):
    """Gamma(x+n)/Gamma(x) for integer n, exact for rational x."""
    if n >= 0:
        return pochhammer(x, n)
    return 1 / pochhammer(x + n, -n)


def gauss2f1_terminating(n: int, b, c, z):
    """2F1(-n, b; c; z) for non-negative integer n, exact series."""
    if n < 0 or int(n) != n:
        raise ValueError("terminating 2F1 requires a non-negative integer n")
    total = z * 0 + 1
    term = total
    for k in range(1, n + 1):
        term = term * Fraction(-(n - k + 1), 1) * (b + k - 1) / ((c + k - 1) * k) * z
        total = total + term
    return total


def laguerre_poly(k: int, s, z):
    """Generalized Laguerre polynomial L_k^s(z), exact via the series."""
    if k < 0:
        raise ValueError("Laguerre degree must be non-negative")
    total = z * 0
    for j in range(k + 1):
        coeff = Fraction((-1) ** j, math.factorial(j)) \
            * _binom_poch(s, k, j)
        total = total + coeff * z ** j
    return total


def _binom_poch(s, k, j):
    # binom(k+s, k-j) as Pochhammer ratio: prod_{i=j+1..k} (s+i) / (k-j)!
    num = 1
    for i in range(j + 1, k + 1):
        num = num * (s + i)
    return Fraction(1, math.factorial(k - j)) * num


def gegenbauer_poly(n: int, lam, z):
    """Gegenbauer C_n^lam(z) through the three-term recurrence, exact."""
    if n < 0:
        raise ValueError("Gegenbauer degree must be non-negative")
    c0 = z * 0 + 1
    if n == 0:
        return c0
    c1 = 2 * lam * z
    if n == 1:
        return c1
    for m in range(2, n + 1):
        c2 = (2 * (m + lam - 1) * z * c1 - (m + 2 * lam - 2) * c0) * Fraction(1, m)
        c0, c1 = c1, c2
    return c1


def jacobi_poly(n: int, a, b, z):
    """Jacobi P_n^(a,b)(z) via the hypergeometric representation, exact."""
    if n < 0:
        raise ValueError("Jacobi degree must be non-negative")
    pref = Fraction(1, math.factorial(n)) * pochhammer(a + 1, n)
    arg = (1 - z) * Fraction(1, 2)
    return pref * gauss2f1_terminating(n, a + b + n + 1, a + 1, arg)


def classical_poly(kind: str, params, z):
    """Dispatch for exact classical polynomial evaluation.

    kind: one of gauss2f1_terminating / laguerre / gegenbauer / jacobi;
    params: tuple of the remaining parameters in standard order.
    """
    if kind == "gauss2f1_terminating":
        a, b, c = params
        if not (isinstance(a, int) or (isinstance(a, Fraction) and a.denominator == 1)) or a > 0:
            raise ValueError("unsupported: non-terminating 2F1 request")
        return gauss2f1_terminating(int(-a), b, c, z)
    if kind == "laguerre":
        k, s = params
        return laguerre_poly(k, s, z)
    if kind == "gegenbauer":
        n, lam = params
        return gegenbauer_poly(n, lam, z)
    if kind == "jacobi":
        n, a, b = params
        return jacobi_poly(n, a, b, z)
    raise ValueError(f"unknown polynomial kind {kind!r}")
