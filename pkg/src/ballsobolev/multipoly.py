"""Sparse multivariate polynomials over multi-index coefficient maps.

Exponents are exact integers; coefficients are floats.  Degrees in this
package stay small (<= ~12), so the dict-of-tuples representation is both
exact in structure and fast enough for the moment oracles built on top.
"""

import numpy as np


class MultivariatePolynomial:
    """Polynomial sum_kappa c_kappa x^kappa with kappa a d-tuple of exponents."""

    __slots__ = ("nvars", "coeffs")

    def __init__(self, nvars, coeffs=None):
        self.nvars = nvars
        self.coeffs = dict(coeffs) if coeffs else {}

    @classmethod
    def zero(cls, nvars):
        return cls(nvars)

    @classmethod
    def constant(cls, nvars, value):
        p = cls(nvars)
        if value != 0.0:
            p.coeffs[(0,) * nvars] = float(value)
        return p

    @classmethod
    def monomial(cls, kappa, coeff=1.0):
        p = cls(len(kappa))
        if coeff != 0.0:
            p.coeffs[tuple(int(k) for k in kappa)] = float(coeff)
        return p

    @classmethod
    def variable(cls, nvars, i):
        kappa = [0] * nvars
        kappa[i] = 1
        return cls.monomial(tuple(kappa))

    def copy(self):
        return MultivariatePolynomial(self.nvars, self.coeffs)

    def degree(self):
        return max((sum(k) for k in self.coeffs), default=0)

    def __add__(self, other):
        if not isinstance(other, MultivariatePolynomial):
            other = MultivariatePolynomial.constant(self.nvars, other)
        out = dict(self.coeffs)
        for k, c in other.coeffs.items():
            out[k] = out.get(k, 0.0) + c
        return MultivariatePolynomial(self.nvars, out)

    __radd__ = __add__

    def __neg__(self):
        return MultivariatePolynomial(
            self.nvars, {k: -c for k, c in self.coeffs.items()})

    def __sub__(self, other):
        return self + (-other if isinstance(other, MultivariatePolynomial)
                       else MultivariatePolynomial.constant(self.nvars, -other))

    def __mul__(self, other):
        if isinstance(other, MultivariatePolynomial):
            out = {}
            for ka, ca in self.coeffs.items():
                for kb, cb in other.coeffs.items():
                    k = tuple(a + b for a, b in zip(ka, kb))
                    out[k] = out.get(k, 0.0) + ca * cb
            return MultivariatePolynomial(self.nvars, out)
        out = {k: c * other for k, c in self.coeffs.items()}
        return MultivariatePolynomial(self.nvars, out)

    __rmul__ = __mul__

    def partial(self, i):
        """Partial derivative in variable i."""
        out = {}
        for k, c in self.coeffs.items():
            if k[i] == 0:
                continue
            kk = list(k)
            kk[i] -= 1
            out[tuple(kk)] = out.get(tuple(kk), 0.0) + c * k[i]
        return MultivariatePolynomial(self.nvars, out)

    def normal_derivative(self):
        """x . grad, the outward normal derivative when restricted to the sphere.

        Acts on each monomial as multiplication by its total degree.
        """
        return MultivariatePolynomial(
            self.nvars, {k: c * sum(k) for k, c in self.coeffs.items() if sum(k)})

    def laplacian(self):
        out = MultivariatePolynomial.zero(self.nvars)
        for i in range(self.nvars):
            out = out + self.partial(i).partial(i)
        return out

    def __call__(self, x):
        x = np.asarray(x, dtype=float)
        total = 0.0
        for k, c in self.coeffs.items():
            term = c
            for xi, ki in zip(x, k):
                if ki:
                    term *= xi ** ki
            total += term
        return total

    def max_abs_coeff(self):
        return max((abs(c) for c in self.coeffs.values()), default=0.0)

    def __repr__(self):
        terms = sorted(self.coeffs.items())
        return f"MultivariatePolynomial({self.nvars}, {terms!r})"


def radius2_power_series(coeffs_t, nvars):
    """Compose a univariate polynomial sum_p c_p t^p with t = 2*|x|^2 - 1."""
    r2 = MultivariatePolynomial.zero(nvars)
    for i in range(nvars):
        r2 = r2 + MultivariatePolynomial.monomial(
            tuple(2 if j == i else 0 for j in range(nvars)), 2.0)
    t = r2 - 1.0
    out = MultivariatePolynomial.constant(nvars, float(coeffs_t[-1]))
    for c in reversed(coeffs_t[:-1]):
        out = out * t + float(c)
    return out
