"""Sobolev orthogonal polynomials on the unit ball.

Bases, norms, reproducing kernels, and Christoffel-function asymptotics for
the inner product pairing the weighted ball integral with outward normal
derivatives on the sphere.
"""

from .jacobi import (JacobiFamily, JacobiParams, KernelValue,
                     ParameterDomainError, QuadratureRule, gauss_jacobi_rule,
                     jacobi_connection_step, jacobi_deriv, jacobi_eval,
                     jacobi_leading_coeff, jacobi_norm_sq, kernel_at_one,
                     kernel_boundary_closed_forms, kernel_eval,
                     orthonormal_boundary)
from .sobolev1d import SobolevFamily1D, SobolevMatrix2
from .spheres import (HarmonicBasis, SphereDim, UnsupportedDimensionError,
                      addition_formula, gegenbauer_eval, harmonic_dim,
                      sphere_monomial_integral, sphere_quadrature)
from .multipoly import MultivariatePolynomial
from .ball import (BallConfig, BallIndex, ball_indices, boundary_matrix,
                   classical_ball_norm, classical_ball_poly,
                   classical_ball_polynomial, connection_formula, gram_matrix,
                   sobolev_ball_norm, sobolev_ball_poly,
                   sobolev_ball_polynomial, sobolev_inner_product)
from .kernels import (CorrectionTerms, KernelPointPair, christoffel,
                      classical_kernel, classical_kernel_diag,
                      psi_correction, sobolev_kernel_decomposed,
                      sobolev_kernel_diag, sobolev_kernel_direct)
from .asymptotics import (LimitConstants, boundary_ratio_scan,
                          interior_ratio_scan, kernel_value_asymptotic_check,
                          limit_constants, psi_tail_split)

__all__ = [name for name in dir() if not name.startswith("_")]
__version__ = "0.1.0"
