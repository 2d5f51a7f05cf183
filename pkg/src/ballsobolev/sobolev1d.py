"""Jacobi polynomials orthogonal under a boundary-augmented (Sobolev) inner product.

The inner product adds the quadratic form (f(1), f'(1)) M (g(1), g'(1))^t to
the Jacobi integral, with M a 2x2 symmetric positive semidefinite matrix.
The orthogonal family q_j keeps the classical leading coefficient k_j and is
built from the Jacobi polynomials through the transfer matrix
Lambda_j = (I + M K_j)^{-1} M, where K_j collects the kernel values and
derivatives at (1, 1).

Two independent evaluation paths are provided: the kernel-correction form and
a three-term connection to the (alpha+2, beta) family.  Both are assembled
from the same Lambda and kernel primitives, so tests can difference them
without sharing transcription errors.
"""

import math
from dataclasses import dataclass

import numpy as np
from scipy.special import gammaln

from . import jacobi
from .jacobi import LOG2


class SingularTransferError(ArithmeticError):
    """(I + M K_j) was numerically singular; impossible for PSD M and K."""


@dataclass(frozen=True)
class SobolevMatrix2:
    """Symmetric 2x2 boundary matrix of the Sobolev inner product."""

    m11: float
    m12: float
    m22: float

    def __post_init__(self):
        scale = max(abs(self.m11), abs(self.m12), abs(self.m22), 1.0)
        det = self.m11 * self.m22 - self.m12 ** 2
        if self.m11 < -1e-12 * scale or self.m22 < -1e-12 * scale \
                or det < -1e-12 * scale ** 2:
            raise ValueError("boundary matrix must be positive semidefinite")

    @classmethod
    def zero(cls):
        return cls(0.0, 0.0, 0.0)

    @classmethod
    def from_array(cls, m):
        m = np.asarray(m, dtype=float)
        if m.shape != (2, 2) or abs(m[0, 1] - m[1, 0]) > 1e-12 * (1.0 + abs(m[0, 1])):
            raise ValueError("expected a symmetric 2x2 matrix")
        return cls(float(m[0, 0]), 0.5 * float(m[0, 1] + m[1, 0]), float(m[1, 1]))

    def as_array(self):
        return np.array([[self.m11, self.m12], [self.m12, self.m22]])

    @property
    def det(self):
        return self.m11 * self.m22 - self.m12 ** 2

    def is_zero(self):
        return self.m11 == 0.0 and self.m12 == 0.0 and self.m22 == 0.0


class SobolevFamily1D:
    """The family q_j for one (alpha, beta, M); caches are filled lazily.

    Caches are only appended to, never rewritten, and every public value is
    a pure function of (params, M, j); concurrent readers are safe once a
    degree has been touched.
    """

    def __init__(self, params, m):
        self.params = params
        self.m = m if isinstance(m, SobolevMatrix2) else SobolevMatrix2.from_array(m)
        self._marr = self.m.as_array()
        self._kappa = {}
        self._lambda = {}

    # -- matrix layer -----------------------------------------------------

    def kappa_matrix(self, j):
        """Kernel matrix [[K_j, K01_j], [K10_j, K11_j]] at (1,1); zero for j = -1."""
        if j < -1:
            raise ValueError("kappa_matrix needs j >= -1")
        if j not in self._kappa:
            if j == -1:
                self._kappa[j] = np.zeros((2, 2))
            else:
                k, k01, k11 = jacobi.kernel_at_one(self.params, j)
                self._kappa[j] = np.array([[k, k01], [k01, k11]])
        return self._kappa[j]

    def lambda_matrix(self, j):
        """Transfer matrix (I + M K_j)^{-1} M; equals M itself for j = -1."""
        if j not in self._lambda:
            kap = self.kappa_matrix(j)
            try:
                lam = np.linalg.solve(np.eye(2) + self._marr @ kap, self._marr)
            except np.linalg.LinAlgError as exc:
                raise SingularTransferError(
                    f"I + M*kappa_{j} is singular") from exc
            self._lambda[j] = lam
        return self._lambda[j]

    def lambda_matrix_rank_one(self, j):
        """Shortcut M / (1 + trace(M K_j)), valid when det(M) = 0."""
        if abs(self.m.det) > 1e-10 * max(1.0, self.m.m11 * self.m.m22):
            raise ValueError("rank-one shortcut requires det(M) = 0")
        return self._marr / (1.0 + np.trace(self._marr @ self.kappa_matrix(j)))

    def boundary_row(self, j):
        """Row vector (P_j(1), P_j'(1))."""
        return np.array([jacobi.jacobi_value_at_one(self.params, j),
                         jacobi.jacobi_deriv_at_one(self.params, j)])

    # -- polynomials ------------------------------------------------------

    def poly(self, j, t):
        """q_j(t) as the Jacobi polynomial minus the boundary-kernel correction."""
        base = jacobi.jacobi_eval(self.params, j, t)
        if j == 0 or self.m.is_zero():
            return base
        kt, k01t = jacobi.kernel_boundary_closed_forms(self.params, j - 1, t)
        v = self.boundary_row(j) @ self.lambda_matrix(j - 1)
        return base - (v[0] * kt + v[1] * k01t)

    def connection_coeffs(self, j):
        """(b_{j,j}, b_{j,j-1}, b_{j,j-2}) of the (alpha+2, beta) expansion of q_j.

        The inner c-coefficients are assembled from the same Lambda and
        boundary-kernel prefactors as poly(); the second component of each
        column carries 1/(alpha+1) coming from the Gamma(alpha+2) in the
        derivative-kernel closed form.
        """
        a, b = self.params.alpha, self.params.beta
        s = a + b
        bjj = (j + s + 2.0) * (j + s + 1.0) / ((2.0 * j + s + 2.0) * (2.0 * j + s + 1.0))
        if j == 0:
            return bjj, 0.0, 0.0
        v = self.boundary_row(j) @ self.lambda_matrix(j - 1)
        pref = math.exp(-(s + 2.0) * LOG2 + gammaln(j + s + 1.0)
                        - gammaln(a + 1.0) - gammaln(j + b))
        c1 = pref * (2.0 * v[0] + v[1] * (j - 1.0) * (j + s) / (a + 1.0))
        bjm1 = (j + s + 1.0) / (2.0 * j + s) * (
            -2.0 * (j + b) / (2.0 * j + s + 2.0) - c1)
        if j == 1:
            return bjj, bjm1, 0.0
        c2 = pref * (2.0 * v[0] + v[1] * j * (j + s + 1.0) / (a + 1.0))
        bjm2 = (j + b - 1.0) / (2.0 * j + s) * (
            (j + b) / (2.0 * j + s + 1.0) + c2)
        return bjj, bjm1, bjm2

    def poly_via_connection(self, j, t):
        """q_j(t) through the three-term (alpha+2, beta) expansion."""
        up2 = self.params.shifted(2.0, 0.0)
        bjj, bjm1, bjm2 = self.connection_coeffs(j)
        out = bjj * jacobi.jacobi_eval(up2, j, t)
        if j >= 1:
            out = out + bjm1 * jacobi.jacobi_eval(up2, j - 1, t)
        if j >= 2:
            out = out + bjm2 * jacobi.jacobi_eval(up2, j - 2, t)
        return out

    def poly_coefficients(self, j):
        """Monomial coefficients of q_j, ascending powers of t."""
        coeffs = np.zeros(j + 1)
        base = jacobi.jacobi_coefficients(self.params, j)
        coeffs[: base.size] = base
        if j == 0 or self.m.is_zero():
            return coeffs
        v = self.boundary_row(j) @ self.lambda_matrix(j - 1)
        log_ca, log_cb, g1, g2 = jacobi.boundary_prefactors_log(self.params, j - 1)
        up1 = jacobi.jacobi_coefficients(self.params.shifted(1.0, 0.0), j - 1)
        coeffs[: up1.size] -= v[0] * math.exp(log_ca) * up1
        if j >= 2 or g1 != 0.0:
            up2a = jacobi.jacobi_coefficients(self.params.shifted(2.0, 0.0), j - 1)
            coeffs[: up2a.size] -= v[1] * math.exp(log_cb) * g1 * up2a
        if j >= 2:
            up2b = jacobi.jacobi_coefficients(self.params.shifted(2.0, 0.0), j - 2)
            coeffs[: up2b.size] += v[1] * math.exp(log_cb) * g2 * up2b
        return coeffs

    # -- norms and boundary data ------------------------------------------

    def norm_sq(self, j):
        """Sobolev norm htilde_j = h_j + P_j(1) Lambda_{j-1} P_j(1)^t."""
        row = self.boundary_row(j)
        lam = self.lambda_matrix(j - 1)
        return jacobi.jacobi_norm_sq(self.params, j) + float(row @ lam @ row)

    def norm_sq_inverse_form(self, j):
        """htilde_j recovered from the Lambda_j form of its reciprocal."""
        h = jacobi.jacobi_norm_sq(self.params, j)
        row = self.boundary_row(j)
        lam = self.lambda_matrix(j)
        return 1.0 / (1.0 / h - float(row @ lam @ row) / h ** 2)

    def boundary_values(self, j):
        """(q_j(1), q_j'(1)), the boundary row propagated through (I + M K)^{-1}."""
        row = self.boundary_row(j)
        kap = self.kappa_matrix(j - 1)
        return np.linalg.solve((np.eye(2) + self._marr @ kap).T, row)

    # -- kernels ------------------------------------------------------------

    def kernel(self, n, t, u):
        """Sobolev kernel via K_n(t,u) - cols(t)^t Lambda_n cols(u)."""
        base = jacobi.kernel_eval(self.params, n, t, u).k00
        if self.m.is_zero():
            return base
        kt = np.array(jacobi.kernel_boundary_closed_forms(self.params, n, t))
        ku = np.array(jacobi.kernel_boundary_closed_forms(self.params, n, u))
        return base - float(kt @ self.lambda_matrix(n) @ ku)

    def kernel_direct(self, n, t, u):
        """Sobolev kernel as the plain sum over q_j(t) q_j(u) / htilde_j."""
        total = 0.0
        for j in range(n + 1):
            total += self.poly(j, t) * self.poly(j, u) / self.norm_sq(j)
        return total
