"""Command-line front end: evaluation, verification suites, scans, Gram tables.

All configuration comes from flags (no environment variables); outputs are
deterministic for a fixed seed.  CSV uses 17-significant-digit floats so every
double round-trips; JSON mirrors the same records.  Exit codes: 0 pass,
1 verification failure, 2 parameter or numerical error.
"""

import argparse
import csv
import io
import json
import math
import os
import sys
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from . import asymptotics, ball, kernels
from .ball import BallConfig, BallIndex
from .jacobi import JacobiParams, jacobi_eval


@dataclass
class RunConfig:
    """Validated run parameters shared by the subcommands."""

    command: str
    d: int = 3
    mu: float = 0.0
    lam: float = 1.0
    max_n: int = 5
    n_list: tuple = ()
    points: tuple = ()
    out: str = ""
    fmt: str = "csv"
    tol: float = 0.0
    seed: int = 0
    threads: int = 0
    extra: dict = field(default_factory=dict)

    def ball_config(self):
        return BallConfig(d=self.d, mu=self.mu, lam=self.lam)


def _fmt(x):
    if isinstance(x, float):
        return f"{x:.17g}"
    return str(x)


def _emit(rows, header, cfg):
    """Write dict rows as CSV or JSON to --out or stdout."""
    if cfg.fmt == "json":
        payload = json.dumps([{k: row[k] for k in header} for row in rows], indent=2)
    else:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(header)
        for row in rows:
            writer.writerow([_fmt(row[k]) for k in header])
        payload = buf.getvalue()
    if cfg.out:
        with open(cfg.out, "w") as fh:
            fh.write(payload)
    else:
        sys.stdout.write(payload)
        if not payload.endswith("\n"):
            sys.stdout.write("\n")


def _parse_point(text):
    try:
        return tuple(float(p) for p in text.split(","))
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"bad point {text!r}") from exc


def _parse_int_list(text):
    try:
        return tuple(int(p) for p in text.split(","))
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"bad integer list {text!r}") from exc


def _parse_float_list(text):
    try:
        return tuple(float(p) for p in text.split(","))
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"bad number list {text!r}") from exc


# ---------------------------------------------------------------------------
# eval

def cmd_eval(cfg):
    quantity = cfg.extra["quantity"]
    rows = []
    if quantity == "jacobi":
        params = JacobiParams(cfg.extra["alpha"], cfg.extra["beta"])
        for t in cfg.extra["t_values"]:
            rows.append({"quantity": "jacobi", "alpha": params.alpha,
                         "beta": params.beta, "n": cfg.extra["n"], "t": t,
                         "value": float(jacobi_eval(params, cfg.extra["n"], t))})
        _emit(rows, ["quantity", "alpha", "beta", "n", "t", "value"], cfg)
        return 0
    if quantity == "sobolev-q":
        config = cfg.ball_config()
        k = cfg.extra["n"] - 2 * cfg.extra["j"]
        fam = ball.radial_family(config, k)
        for t in cfg.extra["t_values"]:
            rows.append({"quantity": "sobolev-q", "d": cfg.d, "mu": cfg.mu,
                         "lambda": cfg.lam, "n": cfg.extra["n"],
                         "j": cfg.extra["j"], "t": t,
                         "value": float(fam.poly(cfg.extra["j"], t))})
        _emit(rows, ["quantity", "d", "mu", "lambda", "n", "j", "t", "value"], cfg)
        return 0
    if quantity in ("ball", "sobolev-ball"):
        config = cfg.ball_config()
        idx = BallIndex(cfg.extra["n"], cfg.extra["j"], cfg.extra["nu"])
        for point in cfg.points:
            if quantity == "ball":
                value = ball.classical_ball_poly(config, idx, 0.0, point)
            else:
                value = ball.sobolev_ball_poly(config, idx, point)
            rows.append({"quantity": quantity, "d": cfg.d, "mu": cfg.mu,
                         "lambda": cfg.lam, "n": idx.n, "j": idx.j,
                         "nu": idx.nu, "point": ";".join(_fmt(c) for c in point),
                         "value": float(value)})
        _emit(rows, ["quantity", "d", "mu", "lambda", "n", "j", "nu", "point",
                     "value"], cfg)
        return 0
    if quantity == "kernel":
        config = cfg.ball_config()
        variant = cfg.extra["variant"]
        points = list(cfg.points)
        if len(points) % 2:
            points.append(points[-1])
        for x, y in zip(points[::2], points[1::2]):
            pair = kernels.KernelPointPair.from_points(x, y)
            if variant == "classical":
                value = kernels.classical_kernel(config, cfg.extra["n"], pair)
            else:
                value = kernels.sobolev_kernel_decomposed(config, cfg.extra["n"], pair)
            rows.append({"quantity": f"kernel-{variant}", "d": cfg.d,
                         "mu": cfg.mu, "lambda": cfg.lam, "n": cfg.extra["n"],
                         "x": ";".join(_fmt(c) for c in x),
                         "y": ";".join(_fmt(c) for c in y),
                         "value": float(value)})
        _emit(rows, ["quantity", "d", "mu", "lambda", "n", "x", "y", "value"], cfg)
        return 0
    raise ValueError(f"unknown quantity {quantity!r}")


# ---------------------------------------------------------------------------
# verify

def _random_ball_points(d, count, rng, radius_max=0.95):
    pts = []
    while len(pts) < count:
        cand = rng.uniform(-1.0, 1.0, size=d)
        norm = np.linalg.norm(cand)
        if 1e-3 < norm <= 1.0:
            pts.append(tuple(cand / norm * rng.uniform(0.05, radius_max)))
    return pts


def verify_orthogonality(cfg):
    config = cfg.ball_config()
    tol = cfg.tol or 1e-10
    polys, norms = [], []
    for n in range(cfg.max_n + 1):
        for idx in ball.ball_indices(config.d, n):
            polys.append(ball.sobolev_ball_polynomial(config, idx))
            norms.append(ball.sobolev_ball_norm(config, idx))
    gram = ball.gram_matrix(config, polys)
    scale = float(np.max(np.diag(gram)))
    off = gram - np.diag(np.diag(gram))
    checks = [("gram-off-diagonal", float(np.max(np.abs(off))) / scale, tol),
              ("gram-diagonal-vs-norm",
               float(np.max(np.abs(np.diag(gram) / np.array(norms) - 1.0))), tol)]
    fams = [ball.radial_family(config, k) for k in range(min(cfg.max_n, 3) + 1)]
    lam_err = 0.0
    for fam in fams:
        for j in range(6):
            lam = fam.lambda_matrix(j)
            lam_err = max(lam_err, float(np.max(np.abs(lam - lam.T)))
                          / max(float(np.max(np.abs(lam))), 1e-300))
    checks.append(("lambda-symmetry", lam_err, 1e-12))
    return checks


def verify_kernel_identity(cfg):
    config = cfg.ball_config()
    tol = cfg.tol or 1e-9
    rng = np.random.default_rng(cfg.seed)
    pts = _random_ball_points(config.d, 12, rng)
    worst = 0.0
    for n in range(cfg.max_n + 1):
        for x, y in zip(pts[::2], pts[1::2]):
            pair = kernels.KernelPointPair.from_points(x, y)
            direct = kernels.sobolev_kernel_direct(config, n, pair)
            decomposed = kernels.sobolev_kernel_decomposed(config, n, pair)
            worst = max(worst, abs(decomposed - direct) / max(abs(direct), 1.0))
    psi_worst = 0.0
    for n in range(cfg.max_n + 1):
        for x in pts[:4]:
            pair = kernels.KernelPointPair.from_points(x, x)
            classical = kernels.classical_kernel(config, n, pair)
            direct = kernels.sobolev_kernel_direct(config, n, pair)
            psi = kernels.psi_correction(config, n, np.asarray(x)).psi
            psi_worst = max(psi_worst,
                            abs(classical - direct - psi) / max(abs(classical), 1.0))
    fam = ball.radial_family(config, 0)
    kern_worst = 0.0
    for n in range(min(cfg.max_n, 6) + 1):
        for t, u in [(-0.3, 0.7), (0.1, 0.9), (-0.8, -0.2)]:
            two = fam.kernel(n, t, u)
            direct = fam.kernel_direct(n, t, u)
            kern_worst = max(kern_worst, abs(two - direct) / max(abs(direct), 1.0))
    return [("kernel-decomposition", worst, tol),
            ("psi-diagonal-identity", psi_worst, tol),
            ("radial-kernel-two-path", kern_worst, 1e-10)]


def verify_connection(cfg):
    config = cfg.ball_config()
    tol = cfg.tol or 1e-9
    rng = np.random.default_rng(cfg.seed)
    pts = _random_ball_points(config.d, 25, rng)
    worst = 0.0
    for n in range(cfg.max_n + 1):
        for idx in ball.ball_indices(config.d, n):
            for x in pts:
                a = ball.sobolev_ball_poly(config, idx, x)
                b = ball.connection_formula(config, idx, x)
                worst = max(worst, abs(a - b) / max(abs(a), 1.0))
    grid = np.linspace(-1.0, 1.0, 13)
    uni_worst = 0.0
    for k in range(cfg.max_n + 1):
        fam = ball.radial_family(config, k)
        for j in range(cfg.max_n // 2 + 2):
            a = fam.poly(j, grid)
            b = fam.poly_via_connection(j, grid)
            uni_worst = max(uni_worst,
                            float(np.max(np.abs(a - b)) / max(np.max(np.abs(a)), 1.0)))
    return [("ball-connection", worst, tol),
            ("radial-connection", uni_worst, 1e-10)]


def verify_asymptotics(cfg):
    config = cfg.ball_config()
    n_max = cfg.extra.get("n_max") or 1024
    n_list = []
    n = 128
    while n <= n_max:
        n_list.append(n)
        n *= 2
    cap = cfg.tol or 0.10
    checks = []
    for which in ("difference", "sobolev"):
        rows = asymptotics.boundary_ratio_scan(config, n_list, which)
        ok = asymptotics.trend_accepts(rows, cap)
        checks.append((f"boundary-{which}-trend",
                       rows[-1].rel_error if ok else math.inf, cap))
    rows = asymptotics.kernel_value_asymptotic_check(
        config, k=10, m_list=[5, 20, 80, 200])
    worst = max(max(r.k01_exact_rel_err, r.k11_exact_rel_err) for r in rows)
    checks.append(("kernel-ratio-exact-identities", worst, 1e-11))
    return checks


VERIFY_SUITES = {
    "orthogonality": verify_orthogonality,
    "kernel-identity": verify_kernel_identity,
    "connection": verify_connection,
    "asymptotics": verify_asymptotics,
}


def cmd_verify(cfg):
    names = list(VERIFY_SUITES) if cfg.extra["suite"] == "all" else [cfg.extra["suite"]]
    failed = False
    for name in names:
        for check, measured, tol in VERIFY_SUITES[name](cfg):
            ok = measured < tol
            failed = failed or not ok
            status = "PASS" if ok else "FAIL"
            print(f"{status} {name}/{check}: measured={measured:.3e} tol={tol:.1e}")
    return 1 if failed else 0


# ---------------------------------------------------------------------------
# scan

def cmd_scan(cfg):
    config = cfg.ball_config()
    n_list = list(cfg.n_list) or [256, 512, 1024, 2048, 4096]
    kind = cfg.extra["kind"]
    workers = cfg.threads or os.cpu_count() or 1
    if kind == "boundary":
        which = cfg.extra.get("which") or "difference"

        def one(n):
            return asymptotics.boundary_ratio_scan(config, [n], which)[0]
    else:
        point = cfg.points[0] if cfg.points else (0.0,) * config.d

        def one(n):
            return asymptotics.interior_ratio_scan(config, point, [n])[0]

    with ThreadPoolExecutor(max_workers=workers) as pool:
        rows = list(pool.map(one, n_list))
    records = [{"n": r.n, "ratio": r.ratio, "target": r.target,
                "relative_error": r.rel_error} for r in rows]
    _emit(records, ["n", "ratio", "target", "relative_error"], cfg)
    return 0


# ---------------------------------------------------------------------------
# gram

def cmd_gram(cfg):
    config = cfg.ball_config()
    basis = cfg.extra.get("basis") or "sobolev"
    inner = cfg.extra.get("inner") or ("sobolev" if basis == "sobolev" else "classical")
    labels, polys = [], []
    for n in range(cfg.max_n + 1):
        for idx in ball.ball_indices(config.d, n):
            labels.append(f"{idx.n}.{idx.j}.{idx.nu}")
            if basis == "sobolev":
                polys.append(ball.sobolev_ball_polynomial(config, idx))
            else:
                polys.append(ball.classical_ball_polynomial(config, idx))
    gram = ball.gram_matrix(config, polys, inner=inner)
    rows = []
    for label, grow in zip(labels, gram):
        row = {"index": label}
        row.update({lab: float(v) for lab, v in zip(labels, grow)})
        rows.append(row)
    _emit(rows, ["index"] + labels, cfg)
    return 0


# ---------------------------------------------------------------------------
# argument wiring

def _add_common(parser):
    parser.add_argument("--d", type=int, default=3)
    parser.add_argument("--mu", type=float, default=0.0)
    parser.add_argument("--lambda", dest="lam", type=float, default=1.0)
    parser.add_argument("--max-n", type=int, default=5)
    parser.add_argument("--tol", type=float, default=0.0)
    parser.add_argument("--seed", type=int, default=0)
    parser.add_argument("--threads", type=int, default=0)
    parser.add_argument("--format", dest="fmt", choices=["csv", "json"],
                        default="csv")
    parser.add_argument("--out", default="")


def build_parser():
    parser = argparse.ArgumentParser(
        prog="ballsobolev",
        description="Sobolev orthogonal polynomials on the unit ball")
    sub = parser.add_subparsers(dest="command", required=True)

    p_eval = sub.add_parser("eval", help="evaluate polynomials and kernels")
    p_eval.add_argument("quantity",
                        choices=["jacobi", "sobolev-q", "ball", "sobolev-ball",
                                 "kernel"])
    _add_common(p_eval)
    p_eval.add_argument("--alpha", type=float, default=0.0)
    p_eval.add_argument("--beta", type=float, default=0.0)
    p_eval.add_argument("--n", type=int, default=0)
    p_eval.add_argument("--j", type=int, default=0)
    p_eval.add_argument("--nu", type=int, default=1)
    p_eval.add_argument("--t", type=_parse_float_list, default=(0.0,))
    p_eval.add_argument("--variant", choices=["classical", "sobolev"],
                        default="classical")
    p_eval.add_argument("--point", type=_parse_point, action="append",
                        default=[])

    p_verify = sub.add_parser("verify", help="run a named invariant suite")
    p_verify.add_argument("suite",
                          choices=["orthogonality", "kernel-identity",
                                   "connection", "asymptotics", "all"])
    _add_common(p_verify)
    p_verify.add_argument("--n-max", type=int, default=0)

    p_scan = sub.add_parser("scan", help="emit asymptotic ratio tables")
    p_scan.add_argument("kind", choices=["boundary", "interior"])
    _add_common(p_scan)
    p_scan.add_argument("--which",
                        choices=["difference", "sobolev", "classical"],
                        default="difference")
    p_scan.add_argument("--n-list", type=_parse_int_list, default=())
    p_scan.add_argument("--point", type=_parse_point, action="append",
                        default=[])

    p_gram = sub.add_parser("gram", help="emit a Gram matrix")
    _add_common(p_gram)
    p_gram.add_argument("--basis", choices=["sobolev", "classical"],
                        default="sobolev")
    p_gram.add_argument("--inner", choices=["sobolev", "classical"],
                        default="")
    return parser


def _to_runconfig(args):
    extra = {}
    for key in ("quantity", "suite", "kind", "which", "basis", "inner",
                "variant", "alpha", "beta", "n", "j", "nu", "n_max"):
        if hasattr(args, key):
            extra[key] = getattr(args, key)
    if hasattr(args, "t"):
        extra["t_values"] = args.t
    cfg = RunConfig(
        command=args.command,
        d=getattr(args, "d", 3),
        mu=getattr(args, "mu", 0.0),
        lam=getattr(args, "lam", 1.0),
        max_n=getattr(args, "max_n", 5),
        n_list=tuple(getattr(args, "n_list", ()) or ()),
        points=tuple(getattr(args, "point", ()) or ()),
        out=args.out,
        fmt=args.fmt,
        tol=getattr(args, "tol", 0.0),
        seed=getattr(args, "seed", 0),
        threads=getattr(args, "threads", 0),
        extra=extra,
    )
    cfg.ball_config()
    return cfg


COMMANDS = {"eval": cmd_eval, "verify": cmd_verify, "scan": cmd_scan,
            "gram": cmd_gram}


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        cfg = _to_runconfig(args)
        return COMMANDS[args.command](cfg)
    except (ValueError, ArithmeticError, np.linalg.LinAlgError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
