"""Classical Jacobi polynomials, norms, derivatives, and Christoffel-Darboux kernels.

Polynomials P_n^{(alpha,beta)} are normalized by P_n(1) = binom(n+alpha, n) and
evaluated by the standard three-term recurrence.  Every Gamma-ratio prefactor
(norms, kernel boundary values) is assembled in log space before
exponentiation; the kernel values at (1,1) grow like n^(2*alpha+2) and would
overflow naive Gamma calls long before the degrees used in the asymptotic
scans.
"""

import math
from dataclasses import dataclass

import numpy as np
from scipy.special import gammaln, roots_jacobi

LOG2 = math.log(2.0)


class ParameterDomainError(ValueError):
    """Jacobi parameters outside the integrable range alpha, beta > -1."""


@dataclass(frozen=True)
class JacobiParams:
    """Exponent pair (alpha, beta) of the weight (1-t)^alpha (1+t)^beta."""

    alpha: float
    beta: float

    def __post_init__(self):
        if not (self.alpha > -1.0 and self.beta > -1.0):
            raise ParameterDomainError(
                f"need alpha > -1 and beta > -1, got ({self.alpha}, {self.beta})")

    def shifted(self, dalpha=0.0, dbeta=0.0):
        return JacobiParams(self.alpha + dalpha, self.beta + dbeta)


@dataclass(frozen=True)
class KernelValue:
    """Kernel K_n(t,u) and its first partial derivatives at one point pair.

    k01 differentiates the second argument, k10 the first, k11 both.
    """

    k00: float
    k01: float
    k10: float
    k11: float


@dataclass(frozen=True)
class QuadratureRule:
    """Nodes and weights with a declared polynomial exactness degree."""

    points: np.ndarray
    weights: np.ndarray
    exactness: int

    def integrate(self, values):
        return float(np.dot(self.weights, values))


def log_binom(x, k):
    """log of binom(x, k) for real x with x + 1 > 0 and x - k + 1 > 0."""
    return gammaln(x + 1.0) - gammaln(k + 1.0) - gammaln(x - k + 1.0)


def recurrence_table(params, nmax):
    """Coefficients (A_k, B_k, C_k) with P_k = (A_k t + B_k) P_{k-1} - C_k P_{k-2}.

    Row k is valid for 2 <= k <= nmax; row 1 holds the degree-1 coefficients
    (C_1 = 0).  Row 0 is unused.
    """
    a, b = params.alpha, params.beta
    s = a + b
    tab = np.zeros((max(nmax, 1) + 1, 3))
    tab[1] = [(s + 2.0) / 2.0, (a - b) / 2.0, 0.0]
    k = np.arange(2, nmax + 1, dtype=float)
    if k.size:
        den = 2.0 * k * (k + s) * (2.0 * k + s - 2.0)
        tab[2:, 0] = (2.0 * k + s - 2.0) * (2.0 * k + s - 1.0) * (2.0 * k + s) / den
        tab[2:, 1] = (2.0 * k + s - 1.0) * (a * a - b * b) / den
        tab[2:, 2] = 2.0 * (k + a - 1.0) * (k + b - 1.0) * (2.0 * k + s) / den
    return tab


class JacobiFamily:
    """One (alpha, beta) family with an immutable cached recurrence table.

    Construction happens on one thread; afterwards the table is read-only and
    evaluations are safe to share.
    """

    def __init__(self, params, degree_bound=64):
        self.params = params
        self.degree_bound = degree_bound
        self._table = recurrence_table(params, degree_bound)

    def _coeffs(self, n):
        if n <= self.degree_bound:
            return self._table
        return recurrence_table(self.params, n)

    def eval(self, n, t):
        return _eval_with_table(self._coeffs(n), n, t)

    def eval_all(self, n, t):
        return _eval_all_with_table(self._coeffs(n), n, t)


def _eval_with_table(tab, n, t):
    t = np.asarray(t, dtype=float)
    if n == 0:
        out = np.ones_like(t)
    else:
        pm1 = np.ones_like(t)
        p = tab[1, 0] * t + tab[1, 1]
        for k in range(2, n + 1):
            p, pm1 = (tab[k, 0] * t + tab[k, 1]) * p - tab[k, 2] * pm1, p
        out = p
    return out if out.ndim else float(out)


def _eval_all_with_table(tab, n, t):
    t = np.asarray(t, dtype=float)
    out = np.empty((n + 1,) + t.shape)
    out[0] = 1.0
    if n >= 1:
        out[1] = tab[1, 0] * t + tab[1, 1]
    for k in range(2, n + 1):
        out[k] = (tab[k, 0] * t + tab[k, 1]) * out[k - 1] - tab[k, 2] * out[k - 2]
    return out


def jacobi_eval(params, n, t):
    """P_n^{(alpha,beta)}(t) by three-term recurrence; t may be an array."""
    if n < 0:
        raise ValueError("degree must be nonnegative")
    return _eval_with_table(recurrence_table(params, n), n, t)


def jacobi_eval_all(params, n, t):
    """All values P_0(t), ..., P_n(t) in one recurrence sweep."""
    return _eval_all_with_table(recurrence_table(params, n), n, t)


def jacobi_coefficients(params, n):
    """Monomial coefficients of P_n, ascending powers of t."""
    if n == 0:
        return np.array([1.0])
    tab = recurrence_table(params, n)
    cm1 = np.array([1.0])
    c = np.array([tab[1, 1], tab[1, 0]])
    for k in range(2, n + 1):
        nxt = np.zeros(k + 1)
        nxt[1:] += tab[k, 0] * c
        nxt[:-1] += tab[k, 1] * c
        nxt[: k - 1] -= tab[k, 2] * cm1
        cm1, c = c, nxt
    return c


def jacobi_value_at_one(params, n):
    """P_n(1) = binom(n + alpha, n)."""
    return math.exp(log_binom(n + params.alpha, n))


def jacobi_deriv_at_one(params, n):
    if n == 0:
        return 0.0
    return 0.5 * (n + params.alpha + params.beta + 1.0) * \
        jacobi_value_at_one(params.shifted(1.0, 1.0), n - 1)


def jacobi_norm_sq(params, n):
    """h_n, the squared L2 norm against the Jacobi weight."""
    return math.exp(log_norm_sq(params, n))


def log_norm_sq_arrays(alpha, beta, n):
    a, b = alpha, np.asarray(beta, dtype=float)
    n = np.asarray(n, dtype=float)
    return ((a + b + 1.0) * LOG2 + gammaln(n + a + 1.0) + gammaln(n + b + 1.0)
            - np.log(2.0 * n + a + b + 1.0) - gammaln(n + 1.0)
            - gammaln(n + a + b + 1.0))


def log_norm_sq(params, n):
    return log_norm_sq_arrays(params.alpha, params.beta, n)


def jacobi_leading_coeff(params, n):
    """k_n = 2^{-n} binom(2n + alpha + beta, n)."""
    if n == 0:
        return 1.0
    return math.exp(-n * LOG2 + log_binom(2.0 * n + params.alpha + params.beta, n))


def jacobi_deriv(params, n, t):
    """d/dt P_n(t), itself a Jacobi polynomial of the (alpha+1, beta+1) family."""
    if n == 0:
        t = np.asarray(t, dtype=float)
        z = np.zeros_like(t)
        return z if z.ndim else 0.0
    fac = 0.5 * (n + params.alpha + params.beta + 1.0)
    return fac * jacobi_eval(params.shifted(1.0, 1.0), n - 1, t)


def jacobi_connection_step(params, n, t):
    """P_n at (alpha, beta) rebuilt from degrees n, n-1 of the (alpha+1, beta) family."""
    if n < 1:
        raise ValueError("connection step needs n >= 1")
    a, b = params.alpha, params.beta
    up = params.shifted(1.0, 0.0)
    den = 2.0 * n + a + b + 1.0
    return ((n + a + b + 1.0) * jacobi_eval(up, n, t)
            - (n + b) * jacobi_eval(up, n - 1, t)) / den


def orthonormal_boundary(params, n):
    """(p_n(1), p_n'(1)) for the orthonormal polynomial p_n = P_n / sqrt(h_n)."""
    root_h = math.exp(0.5 * log_norm_sq(params, n))
    return (jacobi_value_at_one(params, n) / root_h,
            jacobi_deriv_at_one(params, n) / root_h)


def kernel_eval(params, n, t, u):
    """K_n(t,u) and its derivative kernels by direct summation."""
    pt = jacobi_eval_all(params, n, t)
    pu = jacobi_eval_all(params, n, u)
    dt = np.zeros(n + 1)
    du = np.zeros(n + 1)
    if n >= 1:
        up = params.shifted(1.0, 1.0)
        fac = 0.5 * (np.arange(1, n + 1) + params.alpha + params.beta + 1.0)
        dt[1:] = fac * jacobi_eval_all(up, n - 1, t)
        du[1:] = fac * jacobi_eval_all(up, n - 1, u)
    hinv = np.exp(-log_norm_sq(params, np.arange(n + 1)))
    return KernelValue(
        k00=float(np.dot(pt * hinv, pu)),
        k01=float(np.dot(pt * hinv, du)),
        k10=float(np.dot(dt * hinv, pu)),
        k11=float(np.dot(dt * hinv, du)),
    )


def boundary_prefactors_log_arrays(alpha, beta, n):
    """Array form of boundary_prefactors_log; beta and n may be ndarrays."""
    a, b = alpha, np.asarray(beta, dtype=float)
    n = np.asarray(n, dtype=float)
    log_ca = (-(a + b + 1.0) * LOG2 - gammaln(a + 1.0)
              + gammaln(n + a + b + 2.0) - gammaln(n + b + 1.0))
    log_cb = (-(a + b + 2.0) * LOG2 - gammaln(a + 2.0)
              + gammaln(n + a + b + 3.0) - gammaln(n + b + 1.0))
    den = 2.0 * n + a + b + 2.0
    g1 = n * (n + a + b + 1.0) / den
    g2 = (n + 1.0) * (n + b) / den
    return log_ca, log_cb, g1, g2


def boundary_prefactors_log(params, n):
    """log prefactors and inner weights of the closed forms for K_n(t,1), K_n^{(0,1)}(t,1).

    K_n(t,1)        = exp(log_ca) * P_n^{(alpha+1,beta)}(t)
    K_n^{(0,1)}(t,1) = exp(log_cb) * (g1 * P_n^{(alpha+2,beta)}(t) - g2 * P_{n-1}^{(alpha+2,beta)}(t))
    """
    log_ca, log_cb, g1, g2 = boundary_prefactors_log_arrays(
        params.alpha, params.beta, n)
    return float(log_ca), float(log_cb), float(g1), float(g2)


def kernel_boundary_closed_forms(params, n, t):
    """(K_n(t,1), K_n^{(0,1)}(t,1)) through the one-term closed forms."""
    log_ca, log_cb, g1, g2 = boundary_prefactors_log(params, n)
    k = math.exp(log_ca) * jacobi_eval(params.shifted(1.0, 0.0), n, t)
    up2 = params.shifted(2.0, 0.0)
    if n == 0:
        bracket = 0.0 * np.asarray(t, dtype=float)
        bracket = bracket if bracket.ndim else 0.0
    else:
        bracket = g1 * jacobi_eval(up2, n, t) - g2 * jacobi_eval(up2, n - 1, t)
    return k, math.exp(log_cb) * bracket


def kernel_at_one_log_arrays(alpha, beta, n):
    """Logs of (K_n(1,1), K01_n(1,1), K11_n(1,1)) for n >= 1; beta, n may be arrays.

    All three values are positive throughout alpha, beta > -1.
    """
    a, b = alpha, np.asarray(beta, dtype=float)
    n = np.asarray(n, dtype=float)
    common = gammaln(n + a + 2.0) - gammaln(n + b + 1.0)
    log_k = (-(a + b + 1.0) * LOG2 - gammaln(a + 1.0) + gammaln(n + a + b + 2.0)
             + common - gammaln(n + 1.0) - gammaln(a + 2.0))
    log_k01 = (-(a + b + 2.0) * LOG2 - gammaln(a + 1.0) + gammaln(n + a + b + 3.0)
               + common - gammaln(n) - gammaln(a + 3.0))
    log_k11 = (-(a + b + 3.0) * LOG2 - gammaln(a + 2.0) + gammaln(n + a + b + 3.0)
               + common - gammaln(n) - gammaln(a + 4.0)
               + np.log((a + 2.0) * n * (n + a + b + 2.0) + b))
    return log_k, log_k01, log_k11


def kernel_at_one_log(params, n):
    return kernel_at_one_log_arrays(params.alpha, params.beta, n)


def kernel_at_one(params, n):
    """(K_n(1,1), K_n^{(0,1)}(1,1), K_n^{(1,1)}(1,1)); derivative values are 0 at n = 0."""
    if n == 0:
        return math.exp(-log_norm_sq(params, 0)), 0.0, 0.0
    log_k, log_k01, log_k11 = kernel_at_one_log(params, n)
    return math.exp(log_k), math.exp(log_k01), math.exp(log_k11)


def gauss_jacobi_rule(params, npoints):
    """Gauss rule for the Jacobi weight on [-1, 1], exact to degree 2*npoints - 1."""
    x, w = roots_jacobi(npoints, params.alpha, params.beta)
    return QuadratureRule(points=x, weights=w, exactness=2 * npoints - 1)
