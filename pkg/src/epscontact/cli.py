"""Command-line front end.

Subcommands: oracle, verify-tables, scan, solution, catalog, cauchy.
Reports are deterministic (same command, seed and tol produce byte-identical
output) and are written as JSON or CSV to stdout or --output.

Exit codes: 0 all checks passed, 1 a check failed, 2 usage/config error.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

from . import cauchy, product6d, tables
from .config import get_tol
from .contact import check_contact
from .einstein import default_grid, scan_family
from .errors import EpsContactError
from .exterior import FrameMetric, one_form
from .liealg import FamilySpec, make_family
from .oracle import run_oracle

TABLE_CHOICES = (
    "thm-1.2", "thm-1.3", "thm-1.4", "thm-4.14", "thm-4.22", "thm-4.25",
    "prop-3.8", "prop-3.16", "prop-3.22",
)


@dataclass
class RunConfig:
    command: str
    tol: float
    seed: int
    parallelism: int
    output: str | None
    format: str


def _parallel_map(fn, items, parallelism: int):
    items = list(items)
    if parallelism <= 1 or len(items) <= 1:
        return [fn(x) for x in items]
    with ThreadPoolExecutor(max_workers=parallelism) as pool:
        return list(pool.map(fn, items))


def _flatten(prefix: str, value, row: dict) -> None:
    if isinstance(value, dict):
        for k, v in value.items():
            _flatten(f"{prefix}.{k}" if prefix else str(k), v, row)
    elif isinstance(value, (list, tuple)):
        row[prefix] = json.dumps(value, sort_keys=True)
    else:
        row[prefix] = value


def write_report(report: dict, cfg: RunConfig) -> None:
    if cfg.format == "json":
        text = json.dumps(report, sort_keys=True, indent=2, default=float) + "\n"
    else:
        rows = []
        for item in report.get("items", []):
            row: dict = {}
            _flatten("", item, row)
            rows.append(row)
        header: list = []
        for row in rows:
            for key in row:
                if key not in header:
                    header.append(key)
        buf = io.StringIO()
        writer = csv.DictWriter(buf, fieldnames=header, lineterminator="\n")
        writer.writeheader()
        for row in rows:
            writer.writerow(row)
        text = buf.getvalue()
    if cfg.output:
        with open(cfg.output, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def cmd_oracle(args, cfg: RunConfig) -> tuple:
    report = run_oracle(samples=args.samples, seed=cfg.seed, tol=cfg.tol)
    items = [
        {"family": fam, **vals} for fam, vals in sorted(report.per_family.items())
    ]
    passed = report.passed(cfg.tol)
    return passed, {
        "samples": report.samples,
        "max_ricci_dev": report.max_ricci_dev,
        "max_scalar_dev": report.max_scalar_dev,
        "items": items,
    }


def cmd_verify_tables(args, cfg: RunConfig) -> tuple:
    table_ids = [tables.resolve_table(args.theorem)] if args.theorem else list(
        dict.fromkeys(tables.resolve_table(t) for t in TABLE_CHOICES)
    )
    work = []
    for table_id in table_ids:
        for row in tables.table_rows(table_id):
            work.append((table_id, row))
    reports = _parallel_map(
        lambda tr: tables.verify_table_row(tr[0], tr[1], tol=cfg.tol),
        work,
        cfg.parallelism,
    )
    items = []
    passed = True
    for table_id in table_ids:
        rows = []
        for rep in reports:
            if rep.table != table_id:
                continue
            passed = passed and rep.passed
            rows.append(
                {
                    "row": rep.row_id,
                    "pass": rep.passed,
                    "params": rep.instances[0].params,
                    "instances": len(rep.instances),
                    "checks": rep.checks(),
                    "failures": [
                        {"label": i.label, "reason": i.failure}
                        for i in rep.instances
                        if not i.passed
                    ],
                    "lambda2": rep.instances[0].lambda2,
                    "kappa": rep.instances[0].kappa,
                }
            )
        items.append({"theorem": table_id, "rows": rows})
    return passed, {"items": items}


def cmd_scan(args, cfg: RunConfig) -> tuple:
    grid = default_grid(args.grid, args.lo, args.hi)
    hits = scan_family(
        args.family,
        grid=grid,
        epsilon=args.epsilon,
        orientations=(1, -1) if args.orientation == "both" else (int(args.orientation),),
        tol=cfg.tol,
    )
    items = [
        {
            "family": h.family_id,
            "params": dict(sorted(h.params.items())),
            "orientation": h.orientation,
            "alpha": list(h.alpha),
            "lambda2": h.fit.lambda2,
            "kappa": h.fit.kappa,
            "residual": h.fit.residual,
        }
        for h in hits
    ]
    return True, {"family": args.family, "epsilon": args.epsilon,
                  "grid_points": args.grid, "hit_count": len(items), "items": items}


def _solution_from_config(path: str):
    with open(path) as fh:
        data = json.load(fh)

    def build_factor(entry):
        spec = FamilySpec(entry["family"], entry["params"])
        metric = (
            FrameMetric.riemannian(3)
            if entry["family"].startswith("riemannian")
            else FrameMetric.lorentzian(3)
        )
        return check_contact(
            make_family(spec), metric, entry.get("orientation", 1),
            one_form(entry["alpha"]), spec=spec,
        )

    n = build_factor(data["n"])
    x = build_factor(data["x"])
    return product6d.build_solution(n, x, float(data["lambda"]), float(data["l"]))


def cmd_solution(args, cfg: RunConfig) -> tuple:
    if args.preset:
        if args.preset != "ads3xs3":
            raise EpsContactError(f"unknown preset {args.preset!r}")
        sol = product6d.preset_ads3xs3()
    else:
        sol = _solution_from_config(args.config)
    res = product6d.verify_supergravity(sol)
    identity = product6d.ricci_torsion_identity_residual(sol)
    passed = res.is_solution(cfg.tol) and identity <= cfg.tol
    item = {
        "lambda": sol.lam,
        "l": sol.l,
        "ricci_h": res.ricci_h,
        "d_h": res.d_h,
        "d_star_h": res.d_star_h,
        "norm_h": res.norm_h,
        "ricci_identity": identity,
        "pass": passed,
    }
    return passed, {"items": [item], "solution": json.loads(sol.to_json())}


def cmd_catalog(args, cfg: RunConfig) -> tuple:
    l_samples = [float(x) for x in args.l_samples.split(",")] if args.l_samples else [
        0.0, 0.25, 0.5, 0.75, 0.9,
    ]
    results = product6d.run_catalog(args.epsilon_n, l_samples, tol=cfg.tol)
    items = [
        {
            "row": r.row,
            "l": r.l,
            "lambda": r.lam,
            "ricci_h": r.residuals.ricci_h,
            "d_h": r.residuals.d_h,
            "d_star_h": r.residuals.d_star_h,
            "norm_h": r.residuals.norm_h,
            "pass": r.passed,
        }
        for r in results
    ]
    return all(r.passed for r in results), {"epsilon_n": args.epsilon_n, "items": items}


def cmd_cauchy(args, cfg: RunConfig) -> tuple:
    items = []
    passed = True
    if args.example == "flat-para":
        for factor in (1, 2):
            nx, ny = args.nx * factor, args.ny * factor
            steps = (args.steps - 1) * factor + 1
            dt = args.dt / factor
            grid = cauchy.SurfaceGrid(nx, ny, 1.0 / nx, 1.0 / ny)
            ts = [k * dt for k in range(steps)]
            seq = cauchy.example_flat_paracontact(grid, ts, args.l1, args.l2)
            con = cauchy.constraint_residuals(seq.slices[1], 1, 0.0, 0.0)
            evo = cauchy.evolution_residuals(seq, 1, 0.0, 0.0)
            items.append(
                {
                    "refinement": factor,
                    "nx": nx, "ny": ny, "dt": dt,
                    **{f"constraint_{k}": v for k, v in con.as_dict().items()},
                    **evo.as_dict(),
                }
            )
        ratio = items[0]["alpha_flow"] / max(items[1]["alpha_flow"], 1e-300)
        items.append({"refinement": "ratio", "alpha_flow_ratio": ratio})
        passed = ratio >= 3.5 and max(
            v for k, v in items[0].items() if str(k).startswith("constraint_")
        ) <= cfg.tol
    else:  # null-isothermal
        for factor in (1, 2):
            nx, ny = args.nx * factor, args.ny * factor
            grid = cauchy.isothermal_grid(nx, ny)
            data = cauchy.example_null_isothermal(grid, args.f0)
            con = cauchy.constraint_residuals(data, 0, 0.0, 0.0)
            items.append(
                {
                    "refinement": factor,
                    "nx": nx, "ny": ny,
                    **{f"constraint_{k}": v for k, v in con.as_dict().items()},
                }
            )
        cur = items[1]["constraint_curl"]
        if args.f0 == 0.0:
            passed = items[0]["constraint_curl"] == 0.0
            items.append({"refinement": "ratio", "curl_ratio": None})
        else:
            ratio = items[0]["constraint_curl"] / max(cur, 1e-300)
            items.append({"refinement": "ratio", "curl_ratio": ratio})
            passed = ratio >= 3.5
    return passed, {"example": args.example, "items": items}


def _common_flags(defaults: bool) -> argparse.ArgumentParser:
    """Global flags, attachable before or after the subcommand."""
    common = argparse.ArgumentParser(add_help=False)
    sup = argparse.SUPPRESS

    def dflt(value):
        return value if defaults else sup

    common.add_argument("--tol", type=float, default=dflt(None), help="numerical tolerance")
    common.add_argument("--seed", type=int, default=dflt(0), help="RNG seed")
    common.add_argument("--parallelism", type=int, default=dflt(1), help="worker threads")
    common.add_argument("--output", type=str, default=dflt(None), help="report file path")
    common.add_argument("--format", choices=("json", "csv"), default=dflt("json"))
    return common


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="epscontact",
        description="Curvature, contact-metric and product-solution toolkit "
        "for left-invariant structures on three-dimensional Lie groups.",
        parents=[_common_flags(defaults=True)],
    )
    sub = parser.add_subparsers(dest="command", required=True)
    common = [_common_flags(defaults=False)]

    p = sub.add_parser("oracle", parents=common,
                       help="cross-check curvature against the closed form")
    p.add_argument("--samples", type=int, default=1000)

    p = sub.add_parser("verify-tables", parents=common,
                       help="verify classification table rows")
    p.add_argument("--theorem", choices=TABLE_CHOICES, default=None)

    p = sub.add_parser("scan", parents=common,
                       help="grid scan for eta-Einstein contact structures")
    p.add_argument("--family", required=True)
    p.add_argument("--epsilon", type=int, choices=(-1, 0, 1), default=0)
    p.add_argument("--grid", type=int, default=21)
    p.add_argument("--lo", type=float, default=-3.0)
    p.add_argument("--hi", type=float, default=3.0)
    p.add_argument("--orientation", choices=("both", "1", "-1"), default="both")

    p = sub.add_parser("solution", parents=common,
                       help="build and verify one product solution")
    group = p.add_mutually_exclusive_group(required=True)
    group.add_argument("--preset", type=str)
    group.add_argument("--config", type=str)

    p = sub.add_parser("catalog", parents=common,
                       help="verify the product-solution catalog")
    p.add_argument("--epsilon-n", dest="epsilon_n", type=int, choices=(-1, 0, 1), required=True)
    p.add_argument("--l-samples", dest="l_samples", type=str, default=None,
                   help="comma-separated l values")

    p = sub.add_parser("cauchy", parents=common,
                       help="constraint/evolution residual demo")
    p.add_argument("--example", choices=("flat-para", "null-isothermal"), required=True)
    p.add_argument("--nx", type=int, default=32)
    p.add_argument("--ny", type=int, default=32)
    p.add_argument("--dt", type=float, default=0.05)
    p.add_argument("--steps", type=int, default=9)
    p.add_argument("--l1", type=float, default=1.0)
    p.add_argument("--l2", type=float, default=0.5)
    p.add_argument("--f0", type=float, default=1.0)
    return parser


COMMANDS = {
    "oracle": cmd_oracle,
    "verify-tables": cmd_verify_tables,
    "scan": cmd_scan,
    "solution": cmd_solution,
    "catalog": cmd_catalog,
    "cauchy": cmd_cauchy,
}


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code not in (0, None) else 0
    cfg = RunConfig(
        command=args.command,
        tol=get_tol(args.tol) if args.tol is not None else get_tol(),
        seed=args.seed,
        parallelism=max(1, args.parallelism),
        output=args.output,
        format=args.format,
    )
    try:
        passed, body = COMMANDS[args.command](args, cfg)
    except (EpsContactError, OSError, ValueError, KeyError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    report = {
        "command": cfg.command,
        "tol": cfg.tol,
        "seed": cfg.seed,
        "pass": bool(passed),
    }
    report.update(body)
    write_report(report, cfg)
    return 0 if passed else 1


if __name__ == "__main__":
    raise SystemExit(main())
