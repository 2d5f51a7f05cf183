"""Reproducing kernels on the ball and the boundary correction term.

The classical kernel collapses its harmonic sum through the addition formula,
leaving one radial Jacobi kernel per harmonic degree k.  The Sobolev kernel is
that kernel minus a k-indexed sum of boundary quadratic forms; on the diagonal
the subtracted part is the correction Psi_n with per-k pieces F_{k,m} / Delta_{k,m},
m = (n-k) // 2.

Numerics: the boundary kernels of harmonic degree k decay like 2^{-k} while the
surrounding factors grow like 2^k, so every quantity here is carried in the
"tilted" form 2^k r^k * value.  Tilted values stay polynomially bounded in n
(degrees up to a few thousand are routine); the raw values would leave the
double range near k ~ 1000.
"""

import math
from dataclasses import dataclass

import numpy as np

from . import ball, jacobi, spheres
from .jacobi import LOG2

_RESCALE_HI = 2.0 ** 500
_RESCALE_LO = 2.0 ** -500


@dataclass(frozen=True)
class KernelPointPair:
    """Two points of the closed ball with their polar data.

    t and u are the radial Jacobi arguments 2r^2 - 1 and 2s^2 - 1; cos_gamma
    is the angle cosine between the two directions (0 when either point is
    the origin, where the direction never enters).
    """

    x: tuple
    y: tuple
    r: float
    s: float
    t: float
    u: float
    cos_gamma: float

    @classmethod
    def from_points(cls, x, y):
        x = np.asarray(x, dtype=float)
        y = np.asarray(y, dtype=float)
        r = float(np.linalg.norm(x))
        s = float(np.linalg.norm(y))
        if r > 1.0 + 1e-12 or s > 1.0 + 1e-12:
            raise ValueError("kernel points must lie in the closed unit ball")
        if r * s > 0.0:
            cg = float(np.dot(x, y)) / (r * s)
            cg = min(1.0, max(-1.0, cg))
        else:
            cg = 0.0
        return cls(x=tuple(x), y=tuple(y), r=r, s=s,
                   t=2.0 * r * r - 1.0, u=2.0 * s * s - 1.0, cos_gamma=cg)


@dataclass(frozen=True)
class CorrectionTerms:
    """Per-harmonic-degree pieces of the diagonal correction Psi_n(x).

    f_tilted[k] stores 2^{2k} r^{2k} F_{k,m}(t), the only finite-range form of
    F; summands[k] already carries the harmonic dimension and the global
    constant, so psi == summands.sum().
    """

    k: np.ndarray
    m: np.ndarray
    delta_km: np.ndarray
    f_tilted: np.ndarray
    summands: np.ndarray
    psi: float


def harmonic_dims(d, kmax):
    return np.array([spheres.harmonic_dim(d, k) for k in range(kmax + 1)], dtype=float)


# ---------------------------------------------------------------------------
# tilted closed forms and scaled recurrences

def _scaled_pair(alpha, betas, degs, t):
    """(P_{deg-1}, P_deg, e2) per column for params (alpha, betas[i]) at scalar t.

    True values are the returned mantissas times 2**e2; the pair shares one
    exponent per column.  Columns are frozen once their degree is reached.
    """
    betas = np.asarray(betas, dtype=float)
    degs = np.asarray(degs)
    ncols = betas.size
    prev = np.zeros(ncols)
    cur = np.ones(ncols)
    e2 = np.zeros(ncols)
    maxdeg = int(degs.max()) if ncols else 0
    if maxdeg == 0:
        return prev, cur, e2
    s = alpha + betas
    active = degs >= 1
    p1 = 0.5 * (alpha - betas + (s + 2.0) * t)
    prev = np.where(active, cur, prev)
    cur = np.where(active, p1, cur)
    with np.errstate(over="ignore", invalid="ignore"):
        for k in range(2, maxdeg + 1):
            active = degs >= k
            den = 2.0 * k * (k + s) * (2.0 * k + s - 2.0)
            ak = (2.0 * k + s - 2.0) * (2.0 * k + s - 1.0) * (2.0 * k + s) / den
            bk = (2.0 * k + s - 1.0) * (alpha * alpha - betas * betas) / den
            ck = 2.0 * (k + alpha - 1.0) * (k + betas - 1.0) * (2.0 * k + s) / den
            nxt = (ak * t + bk) * cur - ck * prev
            prev = np.where(active, cur, prev)
            cur = np.where(active, nxt, cur)
            mag = np.maximum(np.abs(cur), np.abs(prev))
            big = mag > _RESCALE_HI
            small = (mag > 0.0) & (mag < _RESCALE_LO)
            if big.any() or small.any():
                adj = np.where(big, 512.0, 0.0) - np.where(small, 512.0, 0.0)
                scale = np.exp2(-adj)
                prev = prev * scale
                cur = cur * scale
                e2 = e2 + adj
    return prev, cur, e2


def tilted_at_one(mu, delta, ks, ms):
    """(2^k K_m(1,1), 2^k K01_m(1,1), 2^k K11_m(1,1)) for params (mu, k + delta)."""
    ks = np.asarray(ks, dtype=float)
    ms = np.asarray(ms, dtype=float)
    betas = ks + delta
    at = np.zeros(ks.size)
    bt = np.zeros(ks.size)
    ct = np.zeros(ks.size)
    pos = ms >= 1
    if pos.any():
        lk, lk01, lk11 = jacobi.kernel_at_one_log_arrays(mu, betas[pos], ms[pos])
        tilt = ks[pos] * LOG2
        at[pos] = np.exp(tilt + lk)
        bt[pos] = np.exp(tilt + lk01)
        ct[pos] = np.exp(tilt + lk11)
    z = ~pos
    if z.any():
        log_h0 = jacobi.log_norm_sq_arrays(mu, betas[z], 0)
        at[z] = np.exp(ks[z] * LOG2 - log_h0)
    return at, bt, ct


def tilted_boundary_cols(mu, delta, ks, ms, t, r):
    """(2^k r^k K_m(t,1), 2^k r^k K01_m(t,1)) for params (mu, k + delta), 0 < r."""
    ks = np.asarray(ks, dtype=float)
    ms = np.asarray(ms)
    betas = ks + delta
    log_ca, log_cb, g1, g2 = jacobi.boundary_prefactors_log_arrays(mu, betas, ms)
    tilt = ks * (LOG2 + math.log(r))
    prev_a, cur_a, e2_a = _scaled_pair(mu + 1.0, betas, ms, t)
    prev_b, cur_b, e2_b = _scaled_pair(mu + 2.0, betas, ms, t)
    bracket = g1 * cur_b - g2 * prev_b
    with np.errstate(divide="ignore"):
        ah = np.sign(cur_a) * np.exp(tilt + log_ca + np.log(np.abs(cur_a)) + e2_a * LOG2)
        bh = np.sign(bracket) * np.exp(tilt + log_cb + np.log(np.abs(bracket)) + e2_b * LOG2)
    return ah, bh


def tilted_kernel_diag(mu, delta, ks, ms, t, log_tilt):
    """exp(log_tilt[i]) * K_{ms[i]}(t, t) for params (mu, ks[i] + delta)."""
    ks = np.asarray(ks, dtype=float)
    ms = np.asarray(ms)
    betas = ks + delta
    log_tilt = np.asarray(log_tilt, dtype=float)
    s = mu + betas
    log_h = jacobi.log_norm_sq_arrays(mu, betas, 0)
    acc = np.exp(log_tilt - log_h)
    prev = np.zeros(ks.size)
    cur = np.ones(ks.size)
    e2 = np.zeros(ks.size)
    maxm = int(ms.max()) if ks.size else 0
    with np.errstate(over="ignore", invalid="ignore", divide="ignore"):
        for j in range(1, maxm + 1):
            if j == 1:
                nxt = 0.5 * (mu - betas + (s + 2.0) * t)
            else:
                den = 2.0 * j * (j + s) * (2.0 * j + s - 2.0)
                ak = (2.0 * j + s - 2.0) * (2.0 * j + s - 1.0) * (2.0 * j + s) / den
                bk = (2.0 * j + s - 1.0) * (mu * mu - betas * betas) / den
                ck = 2.0 * (j + mu - 1.0) * (j + betas - 1.0) * (2.0 * j + s) / den
                nxt = (ak * t + bk) * cur - ck * prev
            active = ms >= j
            prev = np.where(active, cur, prev)
            cur = np.where(active, nxt, cur)
            mag = np.maximum(np.abs(cur), np.abs(prev))
            big = mag > _RESCALE_HI
            small = (mag > 0.0) & (mag < _RESCALE_LO)
            if big.any() or small.any():
                adj = np.where(big, 512.0, 0.0) - np.where(small, 512.0, 0.0)
                scale = np.exp2(-adj)
                prev = prev * scale
                cur = cur * scale
                e2 = e2 + adj
            log_h = log_h + np.log((j + mu) * (j + betas) * (2.0 * j + s - 1.0)
                                   / (j * (j + s) * (2.0 * j + s + 1.0)))
            term = np.exp(log_tilt + 2.0 * (np.log(np.abs(cur)) + e2 * LOG2) - log_h)
            acc = acc + np.where(active, term, 0.0)
    return acc


def _cols_for_point(config, ks, ms, t, r, at, bt):
    """Tilted boundary columns at radius r, reusing the (1,1) values at r = 1."""
    if r >= 1.0 - 1e-15:
        return at.copy(), bt.copy()
    ah = np.zeros(ks.size)
    bh = np.zeros(ks.size)
    if r <= 0.0:
        m0 = int(ms[0])
        params = jacobi.JacobiParams(config.mu, config.delta)
        k0, k01 = jacobi.kernel_boundary_closed_forms(params, m0, -1.0)
        ah[0] = k0
        bh[0] = k01
        return ah, bh
    return tilted_boundary_cols(config.mu, config.delta, ks, ms, t, r)


# ---------------------------------------------------------------------------
# kernels

def classical_kernel(config, n, pair):
    """Classical reproducing kernel through the collapsed harmonic sum."""
    d = config.d
    gfac = spheres.addition_factor_sequence(d, n, pair.cos_gamma)
    base = 2.0 * pair.r * pair.s
    total = 0.0
    for k in range(n + 1):
        m = (n - k) // 2
        if k > 0 and base == 0.0:
            break
        params = jacobi.JacobiParams(config.mu, k + config.delta)
        radial = jacobi.kernel_eval(params, m, pair.t, pair.u).k00
        total += gfac[k] * base ** k * radial
    return config.a0 / config.lam * total


def classical_kernel_basis_sum(config, n, pair):
    """Classical kernel summed over the explicit basis; d in {2, 3} only."""
    total = 0.0
    for m in range(n + 1):
        for idx in ball.ball_indices(config.d, m):
            total += (ball.classical_ball_poly(config, idx, 0.0, pair.x)
                      * ball.classical_ball_poly(config, idx, 0.0, pair.y)
                      / ball.classical_ball_norm(config, idx))
    return total


def sobolev_kernel_direct(config, n, pair):
    """Sobolev kernel as the plain basis sum; ground truth for the decomposition."""
    total = 0.0
    for m in range(n + 1):
        for idx in ball.ball_indices(config.d, m):
            total += (ball.sobolev_ball_poly(config, idx, pair.x)
                      * ball.sobolev_ball_poly(config, idx, pair.y)
                      / ball.sobolev_ball_norm(config, idx))
    return total


def sobolev_kernel_decomposed(config, n, pair):
    """Sobolev kernel as classical kernel minus the boundary correction sum."""
    ks = np.arange(n + 1)
    ms = (n - ks) // 2
    at, bt, ct = tilted_at_one(config.mu, config.delta, ks, ms)
    delta_km = 1.0 + config.a0 * (ks ** 2 * at + 8.0 * ks * bt + 16.0 * ct)
    ah_t, bh_t = _cols_for_point(config, ks, ms, pair.t, pair.r, at, bt)
    ah_u, bh_u = _cols_for_point(config, ks, ms, pair.u, pair.s, at, bt)
    quad = (ks ** 2 * ah_t * ah_u + 4.0 * ks * (ah_t * bh_u + bh_t * ah_u)
            + 16.0 * bh_t * bh_u)
    gfac = spheres.addition_factor_sequence(config.d, n, pair.cos_gamma)
    correction = config.a0 ** 2 / config.lam * float(np.sum(gfac * quad / delta_km))
    return classical_kernel(config, n, pair) - correction


def psi_correction(config, n, x):
    """Diagonal correction Psi_n(x) with its per-degree pieces."""
    x = np.asarray(x, dtype=float)
    r = float(np.linalg.norm(x))
    if r > 1.0 + 1e-12:
        raise ValueError("x must lie in the closed unit ball")
    return psi_correction_radial(config, n, min(r, 1.0))


def psi_correction_radial(config, n, r):
    """Psi_n at any point of radius r (the diagonal depends on the radius only)."""
    t = 2.0 * r * r - 1.0
    ks = np.arange(n + 1)
    ms = (n - ks) // 2
    at, bt, ct = tilted_at_one(config.mu, config.delta, ks, ms)
    delta_km = 1.0 + config.a0 * (ks ** 2 * at + 8.0 * ks * bt + 16.0 * ct)
    ah, bh = _cols_for_point(config, ks, ms, t, r, at, bt)
    f_tilted = (ks ** 2 * ah ** 2 + 8.0 * ks * ah * bh + 16.0 * bh ** 2) / delta_km
    summands = config.a0 ** 2 / config.lam * harmonic_dims(config.d, n) * f_tilted
    return CorrectionTerms(k=ks, m=ms, delta_km=delta_km, f_tilted=f_tilted,
                           summands=summands, psi=float(np.sum(summands)))


def classical_kernel_diag(config, n, r):
    """Classical kernel on the diagonal at radius r, stable to large n."""
    ks = np.arange(n + 1)
    ms = (n - ks) // 2
    akd = harmonic_dims(config.d, n)
    if r >= 1.0 - 1e-15:
        at, _, _ = tilted_at_one(config.mu, config.delta, ks, ms)
        return config.a0 / config.lam * float(np.sum(akd * at))
    if r <= 0.0:
        vals = tilted_kernel_diag(config.mu, config.delta,
                                  np.array([0]), np.array([n // 2]), -1.0,
                                  np.array([0.0]))
        return config.a0 / config.lam * float(vals[0])
    t = 2.0 * r * r - 1.0
    log_tilt = ks * math.log(1.0 + t)
    vals = tilted_kernel_diag(config.mu, config.delta, ks, ms, t, log_tilt)
    return config.a0 / config.lam * float(np.sum(akd * vals))


def sobolev_kernel_diag(config, n, r):
    """Sobolev kernel on the diagonal: classical diagonal minus Psi_n."""
    return classical_kernel_diag(config, n, r) - psi_correction_radial(config, n, r).psi


def christoffel(config, n, x, variant="classical"):
    """Reciprocal of the diagonal kernel at x."""
    x = np.asarray(x, dtype=float)
    r = float(np.linalg.norm(x))
    if r > 1.0 + 1e-12:
        raise ValueError("x must lie in the closed unit ball")
    r = min(r, 1.0)
    if variant == "classical":
        return 1.0 / classical_kernel_diag(config, n, r)
    if variant == "sobolev":
        return 1.0 / sobolev_kernel_diag(config, n, r)
    raise ValueError(f"unknown variant {variant!r}")
