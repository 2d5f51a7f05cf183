"""Orthogonal polynomial bases on the unit ball and the Sobolev inner product.

The classical basis pairs radial Jacobi polynomials in t = 2|x|^2 - 1 with
spherical harmonics.  The Sobolev basis replaces the radial factor by the
boundary-corrected family of sobolev1d with the harmonic-degree-dependent
matrix M_k = 2^k A0 [[k^2, 4k], [4k, 16]].

The inner product carries two independent evaluation paths: an exact one
through closed-form monomial moments (the oracle) and a quadrature one
through a radial Gauss-Jacobi rule composed with a sphere rule.
"""

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np
from scipy.special import gammaln

from . import jacobi, spheres
from .jacobi import LOG2, JacobiParams
from .multipoly import MultivariatePolynomial, radius2_power_series
from .sobolev1d import SobolevFamily1D, SobolevMatrix2


@dataclass(frozen=True)
class BallConfig:
    """Weight exponent mu, derivative weight lam, and ambient dimension d."""

    d: int
    mu: float
    lam: float

    def __post_init__(self):
        if int(self.d) != self.d or self.d < 2:
            raise ValueError(f"dimension must be an integer >= 2, got {self.d}")
        if not self.mu > -1.0:
            raise ValueError(f"need mu > -1, got {self.mu}")
        if not self.lam > 0.0:
            raise ValueError(f"need lam > 0, got {self.lam}")

    @property
    def delta(self):
        return (self.d - 2) / 2.0

    @property
    def omega_mu(self):
        """Mass of the weight (1 - |x|^2)^mu over the ball."""
        return math.pi ** (self.d / 2.0) * math.exp(
            gammaln(self.mu + 1.0) - gammaln(self.mu + self.d / 2.0 + 1.0))

    @property
    def sigma_d(self):
        return spheres.surface_area(self.d)

    @property
    def a0(self):
        """Global boundary coupling 2^{delta+mu+2} * lam * omega_mu / sigma_d."""
        return self.lam * 2.0 ** (self.delta + self.mu + 2.0) * self.omega_mu / self.sigma_d


@dataclass(frozen=True)
class BallIndex:
    """Basis label (n, j, nu): total degree, radial index, harmonic index."""

    n: int
    j: int
    nu: int

    def __post_init__(self):
        if self.n < 0 or self.j < 0 or 2 * self.j > self.n or self.nu < 1:
            raise ValueError(f"invalid ball index {(self.n, self.j, self.nu)}")

    @property
    def harmonic_degree(self):
        return self.n - 2 * self.j


def check_index(d, idx):
    if idx.nu > spheres.harmonic_dim(d, idx.harmonic_degree):
        raise ValueError(
            f"nu = {idx.nu} exceeds the harmonic dimension "
            f"{spheres.harmonic_dim(d, idx.harmonic_degree)} for degree {idx.harmonic_degree}")


def ball_indices(d, n):
    """All indices of total degree exactly n, ordered by (j, nu)."""
    out = []
    for j in range(n // 2 + 1):
        for nu in range(1, spheres.harmonic_dim(d, n - 2 * j) + 1):
            out.append(BallIndex(n, j, nu))
    return out


def radial_beta(config, idx):
    """Radial Jacobi second parameter n - 2j + delta."""
    return idx.harmonic_degree + config.delta


def boundary_matrix(config, k):
    """M_k = 2^k A0 [[k^2, 4k], [4k, 16]]; always rank one."""
    c = 2.0 ** k * config.a0
    return SobolevMatrix2(c * k * k, c * 4.0 * k, c * 16.0)


@lru_cache(maxsize=None)
def radial_family(config, k):
    """Cached Sobolev family for harmonic degree k."""
    return SobolevFamily1D(JacobiParams(config.mu, k + config.delta),
                           boundary_matrix(config, k))


# ---------------------------------------------------------------------------
# pointwise evaluation

def classical_ball_poly(config, idx, mu_shift, x):
    """Value of the classical basis element for the weight exponent mu + mu_shift."""
    check_index(config.d, idx)
    x = np.asarray(x, dtype=float)
    t = 2.0 * float(np.dot(x, x)) - 1.0
    params = JacobiParams(config.mu + mu_shift, radial_beta(config, idx))
    radial = jacobi.jacobi_eval(params, idx.j, t)
    y = spheres.HarmonicBasis(config.d, idx.harmonic_degree).eval_solid(idx.nu, x)
    return radial * y


def classical_ball_norm(config, idx, mu_shift=0.0):
    """Squared norm H of the classical basis element under <.,.>_{mu+mu_shift}."""
    mu = config.mu + mu_shift
    beta = radial_beta(config, idx)
    omega = math.pi ** (config.d / 2.0) * math.exp(
        gammaln(mu + 1.0) - gammaln(mu + config.d / 2.0 + 1.0))
    log_h = jacobi.log_norm_sq(JacobiParams(mu, beta), idx.j)
    return math.exp(-(mu + beta + 2.0) * LOG2 + log_h) * config.sigma_d / omega


def sobolev_ball_poly(config, idx, x):
    """Value of the Sobolev basis element Q at x."""
    check_index(config.d, idx)
    x = np.asarray(x, dtype=float)
    t = 2.0 * float(np.dot(x, x)) - 1.0
    radial = radial_family(config, idx.harmonic_degree).poly(idx.j, t)
    y = spheres.HarmonicBasis(config.d, idx.harmonic_degree).eval_solid(idx.nu, x)
    return radial * y


def sobolev_ball_norm(config, idx):
    """Squared Sobolev norm Htilde of the basis element Q."""
    check_index(config.d, idx)
    k = idx.harmonic_degree
    fam = radial_family(config, k)
    return config.lam / (2.0 ** k * config.a0) * fam.norm_sq(idx.j)


# ---------------------------------------------------------------------------
# polynomial forms

def classical_ball_polynomial(config, idx, mu_shift=0.0):
    """Classical basis element as an explicit polynomial in x."""
    check_index(config.d, idx)
    params = JacobiParams(config.mu + mu_shift, radial_beta(config, idx))
    radial = radius2_power_series(jacobi.jacobi_coefficients(params, idx.j), config.d)
    y = spheres.HarmonicBasis(config.d, idx.harmonic_degree).polynomial(idx.nu)
    return radial * y


def sobolev_ball_polynomial(config, idx):
    """Sobolev basis element Q as an explicit polynomial in x."""
    check_index(config.d, idx)
    fam = radial_family(config, idx.harmonic_degree)
    radial = radius2_power_series(fam.poly_coefficients(idx.j), config.d)
    y = spheres.HarmonicBasis(config.d, idx.harmonic_degree).polynomial(idx.nu)
    return radial * y


# ---------------------------------------------------------------------------
# inner product: exact monomial moments and quadrature

@lru_cache(maxsize=None)
def _ball_monomial_moment(d, mu, kappa):
    if any(k % 2 for k in kappa):
        return 0.0
    half = [(k + 1) / 2.0 for k in kappa]
    total = sum(kappa)
    log_sphere_raw = (LOG2 + sum(gammaln(h) for h in half)
                      - gammaln((total + d) / 2.0))
    log_radial = (gammaln((total + d) / 2.0) + gammaln(mu + 1.0)
                  - math.log(2.0) - gammaln((total + d) / 2.0 + mu + 1.0))
    log_omega = (d / 2.0) * math.log(math.pi) + gammaln(mu + 1.0) \
        - gammaln(mu + d / 2.0 + 1.0)
    return math.exp(log_sphere_raw + log_radial - log_omega)


def ball_monomial_moment(config, kappa):
    """(1/omega_mu) * integral of x^kappa (1-|x|^2)^mu over the ball."""
    return _ball_monomial_moment(config.d, config.mu, tuple(int(k) for k in kappa))


@lru_cache(maxsize=None)
def _sphere_moment(d, kappa):
    return spheres.sphere_monomial_integral(d, kappa)


def sobolev_inner_product(config, f, g, method="exact"):
    """<f, g> with the ball integral plus the normal-derivative boundary term.

    "exact" expands both factors in monomials and uses closed-form moments;
    "quadrature" composes a radial Gauss-Jacobi rule with a sphere rule.  The
    two paths share no code beyond polynomial arithmetic.
    """
    if method == "exact":
        total = 0.0
        for ka, ca in f.coeffs.items():
            da = sum(ka)
            for kb, cb in g.coeffs.items():
                sigma = tuple(a + b for a, b in zip(ka, kb))
                term = _ball_monomial_moment(config.d, config.mu, sigma)
                db = sum(kb)
                if da and db:
                    term += config.lam * da * db * _sphere_moment(config.d, sigma)
                total += ca * cb * term
        return total
    if method == "quadrature":
        return _quadrature_inner_product(config, f, g)
    raise ValueError(f"unknown method {method!r}")


def _quadrature_inner_product(config, f, g):
    deg = f.degree() + g.degree()
    nradial = (deg + 2) // 2 + 2
    rule_t = jacobi.gauss_jacobi_rule(JacobiParams(config.mu, config.delta), nradial)
    rule_s = spheres.sphere_quadrature(config.d, deg + 2)
    radii = np.sqrt((1.0 + rule_t.points) / 2.0)
    ball_term = 0.0
    for tw, r in zip(rule_t.weights, radii):
        pts = r * rule_s.points
        vals = np.array([f(p) * g(p) for p in pts])
        ball_term += tw * float(np.dot(rule_s.weights, vals))
    ball_term *= math.exp(math.log(config.sigma_d) - math.log(config.omega_mu)
                          - (config.mu + config.delta + 2.0) * LOG2)
    nf = f.normal_derivative()
    ng = g.normal_derivative()
    bvals = np.array([nf(p) * ng(p) for p in rule_s.points])
    boundary_term = config.lam * float(np.dot(rule_s.weights, bvals))
    return ball_term + boundary_term


def gram_matrix(config, polys, inner="sobolev"):
    """Gram matrix of explicit polynomials under the exact moment oracle.

    Assembled as C^t M C over the joint monomial support, which keeps the
    cost at one moment lookup per distinct exponent sum.
    """
    monomials = sorted({k for p in polys for k in p.coeffs})
    index = {k: i for i, k in enumerate(monomials)}
    c = np.zeros((len(monomials), len(polys)))
    for jcol, p in enumerate(polys):
        for k, v in p.coeffs.items():
            c[index[k], jcol] = v
    m = np.zeros((len(monomials), len(monomials)))
    for i, ka in enumerate(monomials):
        da = sum(ka)
        for j, kb in enumerate(monomials):
            if j < i:
                continue
            sigma = tuple(a + b for a, b in zip(ka, kb))
            val = _ball_monomial_moment(config.d, config.mu, sigma)
            if inner == "sobolev" and da and sum(kb):
                val += config.lam * da * sum(kb) * _sphere_moment(config.d, sigma)
            m[i, j] = m[j, i] = val
    return c.T @ m @ c


# ---------------------------------------------------------------------------
# connection to the mu + 2 classical basis

def connection_coeffs(config, n, j):
    """Expansion coefficients of Q over the mu+2 classical elements.

    Returns (b_j, b_{j-1}, b_{j-2}) multiplying the classical elements of
    degrees n, n-2, n-4 with radial indices j, j-1, j-2.  The closed form
    divides the printed d * a products by Delta = 1 + trace(M_k kappa_{j-1})
    (the rank-one transfer normalization) and scales the second bracket term
    by 1/(mu+1), both required for agreement with the kernel-correction path.
    """
    mu, delta = config.mu, config.delta
    s = n + mu + delta
    bjj = ((n - j + mu + delta + 2.0) * (n - j + mu + delta + 1.0)
           / ((s + 2.0) * (s + 1.0)))
    if j == 0:
        return bjj, 0.0, 0.0
    k = n - 2 * j
    fam = radial_family(config, k)
    delta_km = 1.0 + float(np.trace(fam.m.as_array() @ fam.kappa_matrix(j - 1)))
    djn = (config.a0 * math.exp(
        gammaln(n - j + mu + delta + 1.0) + gammaln(j + mu + 1.0)
        - gammaln(mu + 1.0) - gammaln(mu + 2.0) - gammaln(n - j + delta)
        - gammaln(j + 1.0)) / 2.0 ** (mu + delta + 2.0)
        * ((mu + 1.0) * k + 2.0 * j * (n - j + mu + delta + 1.0)))
    a_prev = 2.0 * ((mu + 1.0) * k + 2.0 * (j - 1.0) * (n - j + mu + delta)) / (mu + 1.0)
    bjm1 = (n - j + mu + delta + 1.0) / s * (
        -2.0 * (n - j + delta) / (s + 2.0) - djn * a_prev / delta_km)
    if j == 1:
        return bjj, bjm1, 0.0
    a_cur = 2.0 * ((mu + 1.0) * k + 2.0 * j * (n - j + mu + delta + 1.0)) / (mu + 1.0)
    bjm2 = (n - j + delta - 1.0) / s * (
        (n - j + delta) / (s + 1.0) + djn * a_cur / delta_km)
    return bjj, bjm1, bjm2


def connection_formula(config, idx, x):
    """Q evaluated through the mu+2 classical ball polynomials."""
    check_index(config.d, idx)
    n, j, nu = idx.n, idx.j, idx.nu
    bjj, bjm1, bjm2 = connection_coeffs(config, n, j)
    out = bjj * classical_ball_poly(config, idx, 2.0, x)
    if j >= 1:
        out += bjm1 * classical_ball_poly(config, BallIndex(n - 2, j - 1, nu), 2.0, x)
    if j >= 2:
        out += bjm2 * classical_ball_poly(config, BallIndex(n - 4, j - 2, nu), 2.0, x)
    return out
