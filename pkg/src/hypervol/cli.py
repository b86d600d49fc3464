"""Command-line front end.

Subcommands:

    volume   one simplex volume (or all three forms with max pairwise diff)
    ratio    growth ratio with the closed-form bounds and a sandwich flag
    sweep    CSV/JSON table of ratios and bounds over an (n, t) grid
    check    structural-invariant and cross-model self-checks at one (n, t)
    ladder   the circumradius/edge ladder as a table

Exit codes: 0 success; 1 argument or domain error; 2 quadrature
non-convergence (best estimate still printed); 3 bound violation found
in sweep/check mode.  Floats print with 17 significant digits so output
diffs are lossless at double precision.  Sweep rows are computed in a
thread pool (capped by HYPERVOL_THREADS) and emitted in deterministic
n-major, t-minor order.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from .bounds import (
    default_audit_sequence,
    growth_bounds,
    growth_ratio,
    limit_audit,
)
from .errors import ConvergenceError, DegenerateGeometryError, DomainError, HypervolError
from .geometry import SimplexParams, halfspace_embedding, ladder
from .quadrature import QuadratureConfig
from .volume_forms import (
    facet_volume_projective,
    volume_halfspace,
    volume_orthoscheme,
    volume_projective,
    zn_bounds,
)

_SWEEP_COLUMNS = [
    "n", "t", "ratio", "ratio_err", "lower", "upper",
    "hm_lower", "hm_upper", "V_n", "V_facet", "sandwich_flag",
]


def _fmt(x) -> str:
    if isinstance(x, float):
        return f"{x:.17g}"
    return str(x)


class _Parser(argparse.ArgumentParser):
    # argparse exits with 2 on bad arguments; the contract here is 1
    def error(self, message):
        self.exit(1, f"{self.prog}: error: {message}\n")


def _add_common(p, need_t=True):
    p.add_argument("--n", type=int, required=True, help="simplex dimension (>= 2)")
    if need_t:
        g = p.add_mutually_exclusive_group(required=True)
        g.add_argument("--t", type=float, help="parameter t in radians, 0 <= t <= pi/2")
        g.add_argument("--sin-t", type=float, dest="sin_t", help="sin t in [0, 1]")
    p.add_argument("--tol", type=float, default=None, help="relative tolerance override")
    p.add_argument("--seed", type=int, default=0, help="Monte Carlo seed")
    p.add_argument("--out", type=str, default=None, help="write output to this file")


def _params(args) -> SimplexParams:
    if getattr(args, "sin_t", None) is not None:
        return SimplexParams.from_sin_t(args.n, args.sin_t)
    return SimplexParams(args.n, args.t)


def _config(args) -> QuadratureConfig:
    kw = {"seed": getattr(args, "seed", 0)}
    if getattr(args, "tol", None) is not None:
        kw["rel_tol"] = args.tol
    return QuadratureConfig(**kw)


def _emit(args, text: str):
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _workers() -> int:
    cap = os.environ.get("HYPERVOL_THREADS")
    default = min(8, os.cpu_count() or 1)
    if cap:
        try:
            return max(1, min(int(cap), 64))
        except ValueError:
            pass
    return default


# ---------------------------------------------------------------------------

_FORMS = {
    "projective": volume_projective,
    "orthoscheme": volume_orthoscheme,
    "halfspace": volume_halfspace,
}


def cmd_volume(args) -> int:
    params = _params(args)
    cfg = _config(args)
    lines = []
    code = 0
    if args.method == "all":
        results = {}
        for name, fn in _FORMS.items():
            try:
                est = fn(params, cfg)
            except DegenerateGeometryError:
                lines.append(f"method={name} skipped (degenerate t)")
                continue
            except ConvergenceError as exc:
                est, code = exc.estimate, 2
            results[name] = est
            lines.append(
                f"method={name} value={_fmt(est.value)} "
                f"error={_fmt(est.error_estimate)} n_evals={est.n_evals}"
            )
        vals = [e.value for e in results.values()]
        if len(vals) >= 2 and max(vals) > 0:
            spread = (max(vals) - min(vals)) / max(vals)
        else:
            spread = 0.0
        lines.append(f"max_rel_diff={_fmt(spread)}")
    else:
        est = None
        try:
            est = _FORMS[args.method](params, cfg)
        except ConvergenceError as exc:
            est, code = exc.estimate, 2
        lines.append(
            f"method={args.method} value={_fmt(est.value)} "
            f"error={_fmt(est.error_estimate)} n_evals={est.n_evals}"
        )
    _emit(args, "\n".join(lines) + "\n")
    return code


def cmd_ratio(args) -> int:
    params = _params(args)
    cfg = _config(args)
    code = 0
    try:
        est = growth_ratio(params, cfg)
    except ConvergenceError as exc:
        est, code = exc.estimate, 2
    b = growth_bounds(params)
    ok = (b.lower - est.error_estimate <= est.value <= b.upper + est.error_estimate)
    lines = [
        f"ratio={_fmt(est.value)} ratio_err={_fmt(est.error_estimate)} "
        f"lower={_fmt(b.lower)} upper={_fmt(b.upper)} "
        f"hm_lower={_fmt(b.hm_lower)} hm_upper={_fmt(b.hm_upper)} "
        f"SANDWICH={'ok' if ok else 'VIOLATION'}"
    ]
    _emit(args, "\n".join(lines) + "\n")
    if not ok and code == 0:
        code = 3
    return code


@dataclass(frozen=True)
class SweepSpec:
    """A validated sweep request: dimensions, t grid, format, tolerances."""

    n_list: tuple
    t_grid: tuple
    output_format: str = "csv"
    cfg: QuadratureConfig = field(default_factory=QuadratureConfig)

    def __post_init__(self):
        if not self.n_list or not self.t_grid:
            raise DomainError("sweep grid is empty")
        for t in self.t_grid:
            if not 0.0 <= t <= math.pi / 2 + 1e-9:
                raise DomainError(f"t = {t!r} outside [0, pi/2]")
        if self.output_format not in ("csv", "json"):
            raise DomainError(f"unknown output format {self.output_format!r}")

    @property
    def cells(self):
        return [(n, t) for n in self.n_list for t in self.t_grid]


def _sweep_row(n: int, t: float, cfg: QuadratureConfig) -> dict:
    params = SimplexParams(n, t)
    est = growth_ratio(params, cfg)
    b = growth_bounds(params)
    vol = volume_projective(params, cfg)
    facet = facet_volume_projective(params, cfg)
    ok = (b.lower - est.error_estimate <= est.value <= b.upper + est.error_estimate)
    return {
        "n": n, "t": t, "ratio": est.value, "ratio_err": est.error_estimate,
        "lower": b.lower, "upper": b.upper,
        "hm_lower": b.hm_lower, "hm_upper": b.hm_upper,
        "V_n": vol.value, "V_facet": facet.value,
        "sandwich_flag": "ok" if ok else "violation",
    }


def _parse_sweep_spec(args) -> SweepSpec:
    if args.t_list:
        ts = tuple(float(x) for x in args.t_list.split(",") if x.strip())
    else:
        if args.t_start is None or args.t_stop is None or args.t_step is None:
            raise DomainError("provide either --t-list or --t-start/--t-stop/--t-step")
        if args.t_step <= 0:
            raise DomainError("t-step must be positive")
        count = int(math.floor((args.t_stop - args.t_start) / args.t_step + 1e-9)) + 1
        ts = tuple(args.t_start + k * args.t_step for k in range(max(count, 0)))
    ns = tuple(int(x) for x in args.n_list.split(",") if x.strip())
    return SweepSpec(n_list=ns, t_grid=ts, output_format=args.format, cfg=_config(args))


def cmd_sweep(args) -> int:
    spec = _parse_sweep_spec(args)
    cfg = spec.cfg
    with ThreadPoolExecutor(max_workers=_workers()) as pool:
        rows = list(pool.map(lambda nt: _sweep_row(nt[0], nt[1], cfg), spec.cells))
    if spec.output_format == "json":
        text = json.dumps(
            [{k: (_fmt(v) if isinstance(v, float) else v) for k, v in row.items()}
             for row in rows],
            indent=2,
        ) + "\n"
    else:
        lines = [",".join(_SWEEP_COLUMNS)]
        for row in rows:
            lines.append(",".join(_fmt(row[c]) for c in _SWEEP_COLUMNS))
        text = "\n".join(lines) + "\n"
    _emit(args, text)
    if any(row["sandwich_flag"] == "violation" for row in rows):
        return 3
    return 0


def _check_lines(params: SimplexParams, cfg: QuadratureConfig):
    """Yield (label, status, residual_or_None) triples."""
    lad = ladder(params)
    res = lad.chain_residuals()
    chain = float(res.max()) if res.size else 0.0
    yield "ladder_chain", chain <= 1e-12, chain
    d1 = 0.0 if lad.tanh_r[0] == lad.tanh_d[0] else abs(lad.tanh_r[0] - lad.tanh_d[0])
    yield "d1_equals_r1", d1 <= 1e-15, d1

    degenerate = params.t <= 0.0 or params.is_ideal or (math.pi / 2 - params.t) < 1e-6
    if degenerate:
        for label in ("gram_closed_form", "gamma_spheres", "sin_alpha_ladder", "zn_sandwich"):
            yield label, None, None
    else:
        emb = halfspace_embedding(params)
        gram = emb.v[1:] @ emb.v[1:].T if params.n >= 2 else np.zeros((0, 0))
        gram_res = float(np.max(np.abs(gram - emb.gram))) / max(emb.sin_alpha**2, 1e-30)
        yield "gram_closed_form", gram_res <= 1e-12, gram_res
        worst = 0.0
        for i in range(params.n):
            center = np.append(emb.centers[i], 0.0)
            for k in range(params.n + 1):
                if k == i:
                    continue
                dist = float(np.linalg.norm(emb.vertices[k] - center))
                worst = max(worst, abs(dist - emb.gamma) / emb.gamma)
        yield "gamma_spheres", worst <= 1e-10, worst
        alpha_res = abs(emb.sin_alpha - lad.tanh_r[params.n - 2])
        yield "sin_alpha_ladder", alpha_res <= 1e-12, alpha_res
        rng = np.random.Generator(np.random.Philox(key=cfg.seed))
        bad = 0.0
        for _ in range(200):
            w = rng.dirichlet(np.ones(params.n))
            v = w @ emb.v
            lo, hi = zn_bounds(emb, v)
            if lo > hi + 1e-12:
                bad = max(bad, lo - hi)
            for z in (lo + 1e-12, 0.5 * (lo + hi), hi - 1e-12):
                if z < lo or z > hi:
                    continue
                point = np.append(v, z)
                if point @ point < 1.0 - 1e-9:
                    bad = max(bad, 1.0 - float(point @ point))
                for i in range(params.n):
                    center = np.append(emb.centers[i], 0.0)
                    d2 = float((point - center) @ (point - center))
                    if d2 > emb.gamma**2 * (1 + 1e-9):
                        bad = max(bad, d2 / emb.gamma**2 - 1.0)
        yield "zn_sandwich", bad == 0.0, bad

    if params.t <= 0.0:
        yield "cross_model", None, None
    else:
        ests = [volume_projective(params, cfg), volume_orthoscheme(params, cfg)]
        if not degenerate:
            ests.append(volume_halfspace(params, cfg))
        vals = [e.value for e in ests]
        spread = (max(vals) - min(vals)) / max(max(vals), 1e-300)
        budget = max(1e-6, sum(e.error_estimate for e in ests) / max(max(vals), 1e-300))
        yield "cross_model", spread <= budget, spread


def cmd_check(args) -> int:
    params = _params(args)
    cfg = _config(args)
    lines = []
    all_ok = True
    for label, ok, residual in _check_lines(params, cfg):
        if ok is None:
            lines.append(f"SKIP {label} (degenerate at this t)")
        else:
            status = "PASS" if ok else "FAIL"
            all_ok = all_ok and ok
            lines.append(f"{status} {label} residual={_fmt(float(residual))}")
    if args.audit_limits:
        audit = limit_audit(params.n, default_audit_sequence())
        lines.append("limit_audit: product cos(t)*atanh(sin t) toward t = pi/2")
        for t, eps, prod in audit.rows:
            lines.append(f"  eps={_fmt(eps)} product={_fmt(prod)}")
        lines.append(
            f"  fitted_limit={_fmt(audit.fitted_limit)} "
            f"claimed_limit={_fmt(audit.claimed_limit)} "
            f"agreement={'yes' if audit.agrees_with_claim else 'NO'}"
        )
    _emit(args, "\n".join(lines) + "\n")
    return 0 if all_ok else 3


def cmd_ladder(args) -> int:
    params = _params(args)
    lad = ladder(params)
    lines = ["k,r_k,tanh_r_k,d_k,tanh_d_k"]
    for k in range(params.n):
        r = "inf" if math.isinf(lad.r[k]) else _fmt(float(lad.r[k]))
        d = "inf" if math.isinf(lad.d[k]) else _fmt(float(lad.d[k]))
        lines.append(
            f"{k + 1},{r},{_fmt(float(lad.tanh_r[k]))},{d},{_fmt(float(lad.tanh_d[k]))}"
        )
    _emit(args, "\n".join(lines) + "\n")
    return 0


# ---------------------------------------------------------------------------

def build_parser() -> _Parser:
    parser = _Parser(prog="hypervol", description=__doc__,
                     formatter_class=argparse.RawDescriptionHelpFormatter)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("volume", help="volume of tau[n, t]")
    _add_common(p)
    p.add_argument("--method", choices=["projective", "orthoscheme", "halfspace", "all"],
                   default="projective")
    p.set_defaults(func=cmd_volume)

    p = sub.add_parser("ratio", help="growth ratio and bounds")
    _add_common(p)
    p.set_defaults(func=cmd_ratio)

    p = sub.add_parser("sweep", help="ratio/bound table over an (n, t) grid")
    p.add_argument("--n-list", type=str, required=True, help="comma-separated dimensions")
    p.add_argument("--t-start", type=float)
    p.add_argument("--t-stop", type=float)
    p.add_argument("--t-step", type=float)
    p.add_argument("--t-list", type=str, help="comma-separated t values (overrides start/stop/step)")
    p.add_argument("--format", choices=["csv", "json"], default="csv")
    p.add_argument("--tol", type=float, default=None)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", type=str, default=None)
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("check", help="structural and cross-model self-checks")
    _add_common(p)
    p.add_argument("--audit-limits", action="store_true",
                   help="also audit the endpoint product cos(t) atanh(sin t)")
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("ladder", help="circumradius/edge ladder table")
    _add_common(p)
    p.set_defaults(func=cmd_ladder)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (DomainError, DegenerateGeometryError) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 1
    except ConvergenceError as exc:
        if exc.estimate is not None:
            sys.stderr.write(
                f"non-convergence: best estimate {_fmt(exc.estimate.value)} "
                f"error {_fmt(exc.estimate.error_estimate)}\n"
            )
        sys.stderr.write(f"error: {exc}\n")
        return 2
    except HypervolError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 1


if __name__ == "__main__":
    sys.exit(main())
