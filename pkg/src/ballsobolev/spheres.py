"""Spherical harmonics, Gegenbauer polynomials, and sphere quadrature.

Explicit orthonormal bases are provided for d = 2 (circular harmonics) and
d = 3 (real solid harmonics).  All sphere inner products use the normalized
measure, i.e. averages (1/sigma_d) * integral over S^{d-1}; the harmonic
addition formula is stated and verified for that convention.  Higher
dimensions are served through the addition formula only.
"""

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np
from scipy.special import gammaln

from .jacobi import QuadratureRule
from .multipoly import MultivariatePolynomial


class UnsupportedDimensionError(ValueError):
    """Explicit harmonic bases exist only for d in {2, 3}."""


@dataclass(frozen=True)
class SphereDim:
    """Ambient dimension with its half-integer offset delta = (d-2)/2."""

    d: int

    def __post_init__(self):
        if int(self.d) != self.d or self.d < 2:
            raise ValueError(f"dimension must be an integer >= 2, got {self.d}")

    @property
    def delta(self):
        return (self.d - 2) / 2.0


def surface_area(d):
    """Total surface measure of S^{d-1}."""
    return 2.0 * math.pi ** (d / 2.0) / math.gamma(d / 2.0)


def harmonic_dim(d, n):
    """Dimension of the space of degree-n spherical harmonics in d variables."""
    if n < 0:
        return 0
    first = math.comb(n + d - 1, n)
    second = math.comb(n + d - 3, n - 2) if n >= 2 else 0
    return first - second


def gegenbauer_eval(delta, k, s):
    """Ultraspherical polynomial C_k^delta(s) for delta > 0."""
    if delta <= 0.0:
        raise ValueError("gegenbauer_eval needs delta > 0; use the d = 2 cosine form instead")
    return gegenbauer_sequence(delta, k, s)[k]


def gegenbauer_sequence(delta, kmax, s):
    """C_0^delta(s), ..., C_kmax^delta(s) by forward recurrence."""
    s = float(s)
    out = np.empty(kmax + 1)
    out[0] = 1.0
    if kmax >= 1:
        out[1] = 2.0 * delta * s
    for k in range(2, kmax + 1):
        out[k] = (2.0 * (k + delta - 1.0) * s * out[k - 1]
                  - (k + 2.0 * delta - 2.0) * out[k - 2]) / k
    return out


def addition_factor_sequence(d, kmax, cos_gamma):
    """sum_nu Y_nu^k(xi) Y_nu^k(rho) for k = 0..kmax as a function of <xi, rho>.

    Equals ((k+delta)/delta) * C_k^delta for d >= 3.  For d = 2 the limit
    delta -> 0 gives 1 for k = 0 and 2*cos(k*gamma) for k >= 1.
    """
    if d == 2:
        gamma = math.acos(min(1.0, max(-1.0, float(cos_gamma))))
        out = 2.0 * np.cos(np.arange(kmax + 1) * gamma)
        out[0] = 1.0
        return out
    delta = (d - 2) / 2.0
    k = np.arange(kmax + 1)
    return (k + delta) / delta * gegenbauer_sequence(delta, kmax, cos_gamma)


def addition_formula(d, k, xi, rho):
    """Reproducing kernel of degree-k spherical harmonics at (xi, rho)."""
    c = float(np.dot(np.asarray(xi, float), np.asarray(rho, float)))
    return float(addition_factor_sequence(d, k, c)[k])


def sphere_monomial_integral(d, kappa):
    """(1/sigma_d) * integral of xi^kappa over S^{d-1}; zero for odd exponents."""
    kappa = tuple(int(k) for k in kappa)
    if len(kappa) != d:
        raise ValueError("multi-index length must match the dimension")
    if any(k % 2 for k in kappa):
        return 0.0
    if any(k < 0 for k in kappa):
        raise ValueError("exponents must be nonnegative")
    half = [(k + 1) / 2.0 for k in kappa]
    log_raw = (LOG_TWO + sum(gammaln(h) for h in half)
               - gammaln((sum(kappa) + d) / 2.0))
    return math.exp(log_raw) / surface_area(d)


LOG_TWO = math.log(2.0)


def sphere_quadrature(d, exactness_degree):
    """Nodes and weights averaging polynomials of the given degree exactly.

    Weights sum to 1, so the rule computes (1/sigma_d) * integral.  Both rules
    are antipodally symmetric, which kills every odd-degree monomial exactly.
    """
    deg = max(int(exactness_degree), 0)
    if d == 2:
        npts = deg + 1
        npts += npts % 2
        theta = 2.0 * math.pi * np.arange(npts) / npts
        pts = np.column_stack([np.cos(theta), np.sin(theta)])
        w = np.full(npts, 1.0 / npts)
        return QuadratureRule(points=pts, weights=w, exactness=deg)
    if d == 3:
        npolar = deg // 2 + 1
        nazim = deg + 1
        nazim += nazim % 2
        u, wu = np.polynomial.legendre.leggauss(npolar)
        phi = 2.0 * math.pi * np.arange(nazim) / nazim
        sin_theta = np.sqrt(1.0 - u ** 2)
        pts = np.empty((npolar * nazim, 3))
        w = np.empty(npolar * nazim)
        for i in range(npolar):
            sl = slice(i * nazim, (i + 1) * nazim)
            pts[sl, 0] = sin_theta[i] * np.cos(phi)
            pts[sl, 1] = sin_theta[i] * np.sin(phi)
            pts[sl, 2] = u[i]
            w[sl] = 0.5 * wu[i] / nazim
        return QuadratureRule(points=pts, weights=w, exactness=deg)
    raise UnsupportedDimensionError(f"sphere quadrature implemented for d in {{2, 3}}, got {d}")


def _circular_basis(k):
    """Orthonormal harmonics on S^1: 1, then sqrt(2)*Re/Im((x + i y)^k)."""
    if k == 0:
        return [MultivariatePolynomial.constant(2, 1.0)]
    re = MultivariatePolynomial.zero(2)
    im = MultivariatePolynomial.zero(2)
    for i in range(k + 1):
        c = math.comb(k, i)
        # i^i cycles through 1, i, -1, -i
        if i % 4 == 0:
            re = re + MultivariatePolynomial.monomial((k - i, i), c)
        elif i % 4 == 1:
            im = im + MultivariatePolynomial.monomial((k - i, i), c)
        elif i % 4 == 2:
            re = re - MultivariatePolynomial.monomial((k - i, i), c)
        else:
            im = im - MultivariatePolynomial.monomial((k - i, i), c)
    s = math.sqrt(2.0)
    return [re * s, im * s]


def _legendre_pi_polys(k):
    """Polynomials Pi_k^m(z, r^2) = r^{k-m} * Ptilde_k^m(z/r) for m = 0..k.

    Ptilde is the associated Legendre function with the (1-u^2)^{m/2} factor
    removed (no Condon-Shortley phase), so each Pi is a polynomial in z and
    r^2 = x^2 + y^2 + z^2, homogeneous of degree k - m.
    """
    z = MultivariatePolynomial.variable(3, 2)
    r2 = (MultivariatePolynomial.monomial((2, 0, 0)) + MultivariatePolynomial.monomial((0, 2, 0))
          + MultivariatePolynomial.monomial((0, 0, 2)))
    out = []
    for m in range(k + 1):
        dfact = 1.0
        for i in range(1, 2 * m, 2):
            dfact *= i
        pi_mm = MultivariatePolynomial.constant(3, dfact)
        if m == k:
            out.append(pi_mm)
            continue
        pi_prev, pi_cur = None, pi_mm
        for kk in range(m + 1, k + 1):
            nxt = z * ((2.0 * kk - 1.0) / (kk - m)) * pi_cur
            if pi_prev is not None:
                nxt = nxt - r2 * ((kk - 1.0 + m) / (kk - m)) * pi_prev
            pi_prev, pi_cur = pi_cur, nxt
        out.append(pi_cur)
    return out


def _solid_basis_3d(k):
    """Real solid harmonics of degree k, orthonormal under the sphere average."""
    if k == 0:
        return [MultivariatePolynomial.constant(3, 1.0)]
    pis = _legendre_pi_polys(k)
    x = MultivariatePolynomial.variable(3, 0)
    y = MultivariatePolynomial.variable(3, 1)
    basis = []
    norm0 = math.sqrt(2.0 * k + 1.0)
    basis.append(pis[0] * norm0)
    am, bm = x, y
    for m in range(1, k + 1):
        norm = math.exp(0.5 * (math.log(2.0) + math.log(2.0 * k + 1.0)
                               + gammaln(k - m + 1.0) - gammaln(k + m + 1.0)))
        basis.append(pis[m] * am * norm)
        basis.append(pis[m] * bm * norm)
        am, bm = am * x - bm * y, am * y + bm * x
    return basis


@lru_cache(maxsize=None)
def _basis_polynomials(d, k):
    if d == 2:
        return tuple(_circular_basis(k))
    if d == 3:
        return tuple(_solid_basis_3d(k))
    raise UnsupportedDimensionError(
        f"explicit harmonic bases exist for d in {{2, 3}}, got {d}; use addition_formula")


class HarmonicBasis:
    """Orthonormal basis of degree-k spherical harmonics, d in {2, 3}.

    Elements are degree-k homogeneous harmonic polynomials; on the sphere they
    are orthonormal for the normalized surface measure.  Indices nu run from 1
    to harmonic_dim(d, k).
    """

    def __init__(self, d, k):
        if k < 0:
            raise ValueError("harmonic degree must be nonnegative")
        self.d = d
        self.k = k
        self._polys = _basis_polynomials(d, k)

    @property
    def size(self):
        return len(self._polys)

    def polynomial(self, nu):
        if not 1 <= nu <= self.size:
            raise ValueError(f"harmonic index nu must lie in [1, {self.size}], got {nu}")
        return self._polys[nu - 1]

    def eval(self, nu, xi):
        """Value Y_nu^k(xi) on the unit sphere."""
        xi = np.asarray(xi, dtype=float)
        if abs(float(np.dot(xi, xi)) - 1.0) > 1e-12:
            raise ValueError("eval expects a unit vector; use eval_solid elsewhere")
        return self.polynomial(nu)(xi)

    def eval_solid(self, nu, x):
        """Homogeneous extension r^k Y_nu^k(x/r), defined for every x."""
        return self.polynomial(nu)(np.asarray(x, dtype=float))
