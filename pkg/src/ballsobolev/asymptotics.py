"""Limit constants and numerical scans for the Christoffel-function asymptotics.

On the sphere the Sobolev and classical diagonal kernels separate at order
n^{2 mu + d + 1}; in the interior they agree to leading order n^d.  The limits
carry no proven convergence rate, so the scans report dyadic tables and the
acceptance logic asks for a monotone error trend plus a final cap rather than
a rate.
"""

import math
from dataclasses import dataclass

import numpy as np
from scipy.special import gammaln

from . import jacobi, kernels


@dataclass(frozen=True)
class LimitConstants:
    """Asymptotic constants for one (d, mu, lam) configuration.

    boundary: (classical - sobolev) diagonal difference / n^{2mu+d+1} -> e0;
    sobolev diagonal / n^{2mu+d+1} -> boundary_sobolev_limit; in the interior
    sobolev diagonal / binom(n+d, d) -> interior_limit_prefactor times
    (1-r^2)^{-1/2-mu}.  mu_in_proven_range records mu >= -1/2, outside of
    which the boundary constants are computed but unverified.
    """

    b0: float
    d0: float
    e0: float
    boundary_classical_limit: float
    boundary_sobolev_limit: float
    interior_limit_prefactor: float
    mu_in_proven_range: bool


@dataclass(frozen=True)
class ScanRow:
    n: int
    ratio: float
    target: float
    rel_error: float


@dataclass(frozen=True)
class InteriorScanRow:
    n: int
    ratio: float
    target: float
    rel_error: float
    diff_fraction: float
    bound_quotient: float


def limit_constants(config):
    mu, d = config.mu, config.d
    b0 = math.exp(-(mu + config.delta + 1.0) * jacobi.LOG2
                  - gammaln(mu + 1.0) - gammaln(mu + 2.0))
    d0 = b0 * (mu + 1.0) * (mu + 3.0) / (config.a0 * (mu + 2.0) ** 2)
    classical = 2.0 * math.exp(-gammaln(2.0 * mu + d + 2.0))
    e0 = classical * (mu + 1.0) * (mu + 3.0) / (mu + 2.0) ** 2
    sobolev = classical / (mu + 2.0) ** 2
    interior = math.exp(gammaln(mu + 1.0) + gammaln((d + 1.0) / 2.0)
                        - gammaln(mu + d / 2.0 + 1.0)) / math.sqrt(math.pi)
    return LimitConstants(b0=b0, d0=d0, e0=e0,
                          boundary_classical_limit=classical,
                          boundary_sobolev_limit=sobolev,
                          interior_limit_prefactor=interior,
                          mu_in_proven_range=config.mu >= -0.5)


def boundary_ratio_scan(config, n_list, which="difference"):
    """Diagonal ratios at |x| = 1 against their limit constants.

    which = "difference" tracks (classical - sobolev) / n^{2mu+d+1} = Psi_n / n^{...};
    "sobolev" and "classical" track the corresponding diagonal kernels.
    """
    consts = limit_constants(config)
    power = 2.0 * config.mu + config.d + 1.0
    targets = {"difference": consts.e0,
               "sobolev": consts.boundary_sobolev_limit,
               "classical": consts.boundary_classical_limit}
    if which not in targets:
        raise ValueError(f"unknown scan kind {which!r}")
    target = targets[which]
    rows = []
    for n in n_list:
        if which == "difference":
            value = kernels.psi_correction_radial(config, n, 1.0).psi
        elif which == "sobolev":
            value = kernels.sobolev_kernel_diag(config, n, 1.0)
        else:
            value = kernels.classical_kernel_diag(config, n, 1.0)
        ratio = value / float(n) ** power
        rows.append(ScanRow(n=n, ratio=ratio, target=target,
                            rel_error=abs(ratio / target - 1.0)))
    return rows


def interior_ratio_scan(config, x, n_list):
    """Sobolev diagonal over binom(n+d, d) at an interior point.

    Also reports the share (classical - sobolev) / classical, which must decay,
    and the quotient of the difference by its growth-order bound
    n^{d-1} log n (2(1-r^2) + 4/n^2)^{-mu-1/2} (2r^2 + 4/n^2)^{-delta-1/2}.
    """
    x = np.asarray(x, dtype=float)
    r = float(np.linalg.norm(x))
    if r >= 1.0:
        raise ValueError("interior scan needs |x| < 1")
    consts = limit_constants(config)
    target = consts.interior_limit_prefactor * (1.0 - r * r) ** (-0.5 - config.mu)
    rows = []
    for n in n_list:
        classical = kernels.classical_kernel_diag(config, n, r)
        psi = kernels.psi_correction_radial(config, n, r).psi
        ratio = (classical - psi) / math.comb(n + config.d, config.d)
        log_n = max(math.log(n), 1.0)
        bound = (n ** (config.d - 1) * log_n
                 * (2.0 * (1.0 - r * r) + 4.0 / n ** 2) ** (-config.mu - 0.5)
                 * (2.0 * r * r + 4.0 / n ** 2) ** (-config.delta - 0.5))
        rows.append(InteriorScanRow(
            n=n, ratio=ratio, target=target,
            rel_error=abs(ratio / target - 1.0),
            diff_fraction=psi / classical,
            bound_quotient=psi / bound))
    return rows


@dataclass(frozen=True)
class KernelAsymptoticRow:
    m: int
    ratio_k00: float
    k01_exact_rel_err: float
    k11_exact_rel_err: float


def kernel_value_asymptotic_check(config, k, m_list):
    """Kernel values at (1,1) against their limit form and exact ratio identities.

    ratio_k00 = 2^k K_m(1,1) / ((m+k)^{mu+1} m^{mu+1} B0) tends to 1.  The two
    derivative ratios have closed pre-limit forms that are exact consequences
    of the (1,1) values, so their errors sit at rounding level for every m.
    """
    mu, delta = config.mu, config.delta
    consts = limit_constants(config)
    beta = k + delta
    rows = []
    for m in m_list:
        if m < 1:
            raise ValueError("asymptotic check needs m >= 1")
        lk, lk01, lk11 = jacobi.kernel_at_one_log_arrays(mu, beta, m)
        ratio = math.exp(float(lk) + k * jacobi.LOG2
                         - (mu + 1.0) * (math.log(m + k) + math.log(m))
                         - math.log(consts.b0))
        exact01 = (m + mu + k + delta + 2.0) * m / (2.0 * (mu + 2.0))
        err01 = abs(math.exp(float(lk01) - float(lk)) / exact01 - 1.0)
        exact11 = ((m + mu + k + delta + 2.0) * m
                   * ((mu + 2.0) * m * (m + mu + k + delta + 2.0) + k + delta)
                   / (4.0 * (mu + 1.0) * (mu + 2.0) * (mu + 3.0)))
        err11 = abs(math.exp(float(lk11) - float(lk)) / exact11 - 1.0)
        rows.append(KernelAsymptoticRow(m=m, ratio_k00=ratio,
                                        k01_exact_rel_err=err01,
                                        k11_exact_rel_err=err11))
    return rows


def psi_tail_split(config, n):
    """Head and tail of Psi_n at the boundary, cut at k = n - [log n].

    Mirrors the proof structure: the head carries the limit, the tail must be
    o(n^{2mu+d+1}).  Returns (head_ratio, tail_ratio) after dividing by that
    power.
    """
    terms = kernels.psi_correction_radial(config, n, 1.0)
    cutoff = n - int(math.log(n)) if n >= 1 else 0
    power = float(n) ** (2.0 * config.mu + config.d + 1.0)
    head = float(np.sum(terms.summands[: cutoff + 1]))
    tail = float(np.sum(terms.summands[cutoff + 1:]))
    return head / power, tail / power


def trend_accepts(rows, final_cap):
    """Strictly decreasing relative errors with the last below the cap."""
    errs = [row.rel_error for row in rows]
    decreasing = all(b < a for a, b in zip(errs, errs[1:]))
    return decreasing and errs[-1] < final_cap
