"""Command-line front end: instance generation, selection, reconstruction, benchmarks."""

from __future__ import annotations

import argparse
import json
import os
import sys
from datetime import datetime, timezone
from pathlib import Path

import numpy as np

from . import __version__
from .bench import (
    RECON_METHODS,
    VARIANTS,
    ResultTable,
    run_bound_experiment,
    run_mse_experiment,
)
from .errors import (
    GraphSamplingError,
    InvalidTargetError,
    SingularGramError,
)
from .geometry import GeoConfig, PointCloud, gaussian_kernel_graph, voronoi_areas
from .graphs import (
    InnerProduct,
    combinatorial_laplacian,
    degree_matrix,
    graph_from_json,
    graph_to_json,
    identity_inner_product,
)
from .reconstruction import PocsParams, consistent_reconstruct, pocs_reconstruct
from .sampling import greedy_select
from .spectral import compute_basis, estimate_lambda_max
from .svgplot import line_chart

_EXIT_OK = 0
_EXIT_MISSING_INPUT = 1
_EXIT_USAGE = 2
_EXIT_NUMERICAL = 3
_EXIT_BENCH_FAILED = 4


def _manifest(command: str, params: dict) -> dict:
    return {
        "tool": "graphsampling",
        "version": __version__,
        "command": command,
        "parameters": params,
        "created_utc": datetime.now(timezone.utc).isoformat(timespec="seconds"),
    }


def _write_json(path: Path, payload: dict) -> None:
    path.write_text(json.dumps(payload, indent=2) + "\n", encoding="utf-8")


def _read_json(path: Path) -> dict:
    with open(path, encoding="utf-8") as fh:
        return json.load(fh)


def _load_inner(directory: Path, variant: str) -> InnerProduct:
    data = _read_json(directory / f"q_{variant}.json")
    return InnerProduct(data["variant"], np.asarray(data["entries"], dtype=float))


def _progress(total: int):
    if not sys.stderr.isatty():
        return None

    def report(idx: int) -> None:
        print(f"realization {idx + 1}/{total}", file=sys.stderr)

    return report


def _parse_fracs(text: str) -> list[float]:
    try:
        start, stop, step = (float(t) for t in text.split(":"))
    except ValueError:
        raise argparse.ArgumentTypeError("expected START:STOP:STEP") from None
    if step <= 0 or start <= 0 or stop >= 1 or start > stop:
        raise argparse.ArgumentTypeError("fractions must satisfy 0 < START <= STOP < 1, STEP > 0")
    out = []
    value = start
    while value <= stop + 1e-9:
        out.append(round(value, 10))
        value += step
    return out


def _parse_int_list(text: str) -> list[int]:
    try:
        return [int(t) for t in text.split(",") if t]
    except ValueError:
        raise argparse.ArgumentTypeError("expected a comma-separated integer list") from None


def _parse_float_list(text: str) -> list[float]:
    try:
        return [float(t) for t in text.split(",") if t]
    except ValueError:
        raise argparse.ArgumentTypeError("expected a comma-separated float list") from None


def _parse_variants(text: str) -> list[str]:
    names = [t for t in text.split(",") if t]
    for name in names:
        if name not in VARIANTS:
            raise argparse.ArgumentTypeError(f"unknown variant {name!r}")
    if not names:
        raise argparse.ArgumentTypeError("need at least one variant")
    return names


def cmd_gen(args) -> int:
    if args.n < 1 or args.side <= 0 or args.kernel_sigma <= 0:
        print("error: need --n >= 1 and positive --side/--kernel-sigma", file=sys.stderr)
        return _EXIT_USAGE
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    # drawn inline so instances smaller than the benchmark minimum still work
    rng = np.random.default_rng(args.seed)
    while True:
        pts = rng.uniform(0.0, args.side, size=(args.n, 2))
        if np.unique(pts, axis=0).shape[0] == args.n:
            break
    pc = PointCloud(pts, args.side)
    g = gaussian_kernel_graph(pc, args.kernel_sigma)

    _write_json(out / "points.json", {"side": pc.side, "positions": pc.positions.tolist()})
    _write_json(out / "graph.json", graph_to_json(g))
    variants = list(VARIANTS) if args.q == "all" else [args.q]
    for variant in variants:
        if variant == "identity":
            inner = identity_inner_product(g.n)
        elif variant == "degree":
            inner = degree_matrix(g)
        else:
            inner = voronoi_areas(pc)
        _write_json(out / f"q_{variant}.json", {"variant": variant, "entries": inner.entries.tolist()})
    _write_json(
        out / "manifest.json",
        _manifest(
            "gen",
            {
                "n": args.n,
                "side": args.side,
                "kernel_sigma": args.kernel_sigma,
                "seed": args.seed,
                "q": variants,
                "out": str(out),
            },
        ),
    )
    print(f"wrote instance with {g.n} vertices to {out}")
    return _EXIT_OK


def cmd_select(args) -> int:
    directory = Path(args.dir)
    if args.m < 1:
        print("error: --m must be a positive integer", file=sys.stderr)
        return _EXIT_USAGE
    g = graph_from_json(_read_json(directory / "graph.json"))
    inner = _load_inner(directory, args.q)
    lap = combinatorial_laplacian(g)
    try:
        result = greedy_select(lap, inner, args.m, k=args.k)
    except InvalidTargetError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return _EXIT_USAGE
    out = Path(args.out) if args.out else directory / f"selection_{args.q}.json"
    _write_json(
        out,
        {
            "variant": args.q,
            "k": args.k,
            "m": args.m,
            "order": result.order.tolist(),
            "cutoffs": result.cutoffs.tolist(),
            "manifest": _manifest(
                "select",
                {"dir": str(directory), "q": args.q, "m": args.m, "k": args.k, "out": str(out)},
            ),
        },
    )
    print(f"final cutoff estimate: {result.cutoffs[-1]:.12g}")
    return _EXIT_OK


def cmd_reconstruct(args) -> int:
    directory = Path(args.dir)
    g = graph_from_json(_read_json(directory / "graph.json"))
    inner = _load_inner(directory, args.q)
    selection_path = Path(args.selection) if args.selection else directory / f"selection_{args.q}.json"
    selection = _read_json(selection_path)
    samples = _read_json(Path(args.samples))
    vertices = np.asarray(samples["vertices"], dtype=int)
    values = np.asarray(samples["values"], dtype=float)
    truth = None
    if args.truth:
        truth = np.asarray(_read_json(Path(args.truth))["values"], dtype=float)

    lap = combinatorial_laplacian(g)
    try:
        if args.method == "closed-form":
            basis = compute_basis(lap, inner)
            report = consistent_reconstruct(basis, vertices, values, band=args.band, truth=truth)
        else:
            lam_max = estimate_lambda_max(lap, inner)
            omega = args.omega if args.omega is not None else float(selection["cutoffs"][-1])
            params = PocsParams(
                omega=omega,
                lambda_max=lam_max,
                alpha=args.alpha,
                cheb_order=args.cheb_order,
                max_iters=args.max_iters,
                rel_tol=args.rel_tol,
            )
            report = pocs_reconstruct(lap, inner, vertices, values, params, truth=truth)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return _EXIT_USAGE

    out = Path(args.out) if args.out else directory / "reconstruction.json"
    _write_json(
        out,
        {
            "method": args.method,
            "x_hat": report.x_hat.tolist(),
            "iters": report.iters,
            "residual_s": report.residual_s,
            "q_error": report.q_error,
            "last_rel_change": report.last_rel_change,
            "manifest": _manifest(
                "reconstruct",
                {
                    "dir": str(directory),
                    "q": args.q,
                    "method": args.method,
                    "band": args.band,
                    "omega": args.omega,
                    "alpha": args.alpha,
                    "cheb_order": args.cheb_order,
                    "max_iters": args.max_iters,
                    "rel_tol": args.rel_tol,
                    "samples": str(args.samples),
                    "selection": str(selection_path),
                    "truth": str(args.truth) if args.truth else None,
                    "out": str(out),
                },
            ),
        },
    )
    summary = f"method={args.method} iters={report.iters} residual_s={report.residual_s:.3e}"
    if report.q_error is not None:
        summary += f" q_error={report.q_error:.6e}"
    print(summary)
    return _EXIT_OK


def _table_all_nan(table: ResultTable) -> bool:
    return all(np.isnan(row.mean_value) for row in table.rows)


def _bench_common(args) -> tuple[GeoConfig, int]:
    cfg = GeoConfig(
        n=args.n,
        side=args.side,
        kernel_sigma=args.kernel_sigma,
        seed=args.seed,
        proxy_k=args.k,
    )
    workers = args.threads if args.threads else (os.cpu_count() or 1)
    return cfg, workers


def cmd_bench_bound(args) -> int:
    cfg, workers = _bench_common(args)
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    table = run_bound_experiment(
        cfg,
        args.realizations,
        args.fracs,
        variants=args.variants,
        workers=workers,
        progress=_progress(args.realizations),
    )
    (out / "bound.csv").write_text(table.to_csv(), encoding="utf-8")
    series = []
    for variant in args.variants:
        rows = [r for r in table.rows if r.variant == variant]
        series.append((variant, [r.sample_size / cfg.n for r in rows], [r.mean_value for r in rows]))
    (out / "bound.svg").write_text(
        line_chart(
            series,
            title="Mean smallest design singular value",
            x_label="sampling fraction |S|/n",
            y_label="mean sigma_min",
        ),
        encoding="utf-8",
    )
    _write_json(
        out / "manifest.json",
        _manifest(
            "bench bound",
            {
                "n": cfg.n,
                "side": cfg.side,
                "kernel_sigma": cfg.kernel_sigma,
                "seed": cfg.seed,
                "k": cfg.proxy_k,
                "realizations": args.realizations,
                "fracs": args.fracs,
                "variants": list(args.variants),
                "out": str(out),
            },
        ),
    )
    if _table_all_nan(table):
        print("error: every benchmark cell failed", file=sys.stderr)
        return _EXIT_BENCH_FAILED
    print(f"wrote {out / 'bound.csv'}")
    return _EXIT_OK


def cmd_bench_mse(args) -> int:
    cfg, workers = _bench_common(args)
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    table = run_mse_experiment(
        cfg,
        args.realizations,
        args.fracs,
        args.signals,
        args.noises,
        method=args.recon,
        variants=args.variants,
        workers=workers,
        progress=_progress(args.realizations),
    )
    (out / "mse.csv").write_text(table.to_csv(), encoding="utf-8")
    for cycles in args.signals:
        for sigma in args.noises:
            series = []
            for variant in args.variants:
                rows = [
                    r
                    for r in table.rows
                    if r.variant == variant and r.signal_cycles == cycles and r.noise_sigma == sigma
                ]
                series.append((variant, [r.sample_size for r in rows], [r.mean_value for r in rows]))
            name = f"mse_s{cycles}_sigma{sigma:g}.svg"
            (out / name).write_text(
                line_chart(
                    series,
                    title=f"Mean reconstruction error, {cycles} cycles, noise {sigma:g}",
                    x_label="sampling set size |S|",
                    y_label="mean area-weighted error",
                    log_y=args.log_scale,
                ),
                encoding="utf-8",
            )
    _write_json(
        out / "manifest.json",
        _manifest(
            "bench mse",
            {
                "n": cfg.n,
                "side": cfg.side,
                "kernel_sigma": cfg.kernel_sigma,
                "seed": cfg.seed,
                "k": cfg.proxy_k,
                "realizations": args.realizations,
                "fracs": args.fracs,
                "signals": list(args.signals),
                "noises": list(args.noises),
                "recon": args.recon,
                "log_scale": bool(args.log_scale),
                "variants": list(args.variants),
                "out": str(out),
            },
        ),
    )
    if _table_all_nan(table):
        print("error: every benchmark cell failed", file=sys.stderr)
        return _EXIT_BENCH_FAILED
    print(f"wrote {out / 'mse.csv'}")
    return _EXIT_OK


def _add_geometry_flags(parser, default_seed=0):
    parser.add_argument("--n", type=int, default=100, help="number of vertices")
    parser.add_argument("--side", type=float, default=10.0, help="square side length")
    parser.add_argument("--kernel-sigma", type=float, default=1.0, help="Gaussian kernel width")
    parser.add_argument("--seed", type=int, default=default_seed, help="base random seed")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="graphsampling",
        description="Vertex sampling set selection and reconstruction on geometric graphs.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    gen = sub.add_parser("gen", help="generate a geometric graph instance")
    _add_geometry_flags(gen)
    gen.add_argument("--q", choices=(*VARIANTS, "all"), default="voronoi", help="inner product(s) to write")
    gen.add_argument("--out", default=".", help="output directory")
    gen.set_defaults(func=cmd_gen)

    sel = sub.add_parser("select", help="greedy sampling set selection on a generated instance")
    sel.add_argument("--dir", default=".", help="directory holding gen outputs")
    sel.add_argument("--q", choices=VARIANTS, default="voronoi", help="inner product variant")
    sel.add_argument("--m", type=int, required=True, help="target sampling set size")
    sel.add_argument("--k", type=int, default=3, help="proxy order")
    sel.add_argument("--out", default=None, help="output file (default selection_<q>.json)")
    sel.set_defaults(func=cmd_select)

    rec = sub.add_parser("reconstruct", help="reconstruct a signal from vertex samples")
    rec.add_argument("--dir", default=".", help="directory holding gen outputs")
    rec.add_argument("--q", choices=VARIANTS, default="voronoi", help="inner product variant")
    rec.add_argument("--selection", default=None, help="selection file (default selection_<q>.json)")
    rec.add_argument("--samples", required=True, help="JSON file with sampled vertices and values")
    rec.add_argument("--method", choices=RECON_METHODS, default="closed-form")
    rec.add_argument("--band", "--r", dest="band", type=int, default=None, help="modes to fit (closed form)")
    rec.add_argument("--omega", type=float, default=None, help="low-pass cutoff (default: final selection cutoff)")
    rec.add_argument("--alpha", type=float, default=None, help="low-pass sharpness")
    rec.add_argument("--cheb-order", type=int, default=60)
    rec.add_argument("--max-iters", type=int, default=500)
    rec.add_argument("--rel-tol", type=float, default=1e-8)
    rec.add_argument("--truth", default=None, help="optional JSON file with the true signal")
    rec.add_argument("--out", default=None, help="output file (default reconstruction.json)")
    rec.set_defaults(func=cmd_reconstruct)

    bench = sub.add_parser("bench", help="seeded benchmark drivers")
    bench_sub = bench.add_subparsers(dest="bench_command", required=True)

    bound = bench_sub.add_parser("bound", help="average design quality versus sampling size")
    _add_geometry_flags(bound)
    bound.add_argument("--k", type=int, default=3, help="proxy order")
    bound.add_argument("--realizations", type=int, default=200)
    bound.add_argument("--fracs", type=_parse_fracs, default="0.1:0.9:0.1", help="START:STOP:STEP")
    bound.add_argument("--variants", type=_parse_variants, default="identity,degree,voronoi")
    bound.add_argument("--threads", type=int, default=None, help="worker cap (default: all cores)")
    bound.add_argument("--out", default=".", help="output directory")
    bound.set_defaults(func=cmd_bench_bound)

    mse = bench_sub.add_parser("mse", help="mean reconstruction error of sine waves")
    _add_geometry_flags(mse)
    mse.add_argument("--k", type=int, default=3, help="proxy order")
    mse.add_argument("--realizations", type=int, default=50)
    mse.add_argument("--fracs", type=_parse_fracs, default="0.1:0.9:0.1", help="START:STOP:STEP")
    mse.add_argument("--signals", type=_parse_int_list, default="2,3,4,5", help="sine cycles")
    mse.add_argument("--noises", type=_parse_float_list, default="0.1,0.2,0.4", help="noise levels")
    mse.add_argument("--recon", choices=RECON_METHODS, default="closed-form")
    mse.add_argument("--log-scale", action="store_true", help="log-scale error axis in SVG")
    mse.add_argument("--variants", type=_parse_variants, default="identity,degree,voronoi")
    mse.add_argument("--threads", type=int, default=None, help="worker cap (default: all cores)")
    mse.add_argument("--out", default=".", help="output directory")
    mse.set_defaults(func=cmd_bench_mse)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)

    # a set GSP_SEED wins over --seed, so wrappers can pin reproducibility
    if "GSP_SEED" in os.environ and hasattr(args, "seed"):
        try:
            args.seed = int(os.environ["GSP_SEED"])
        except ValueError:
            print("error: GSP_SEED must be an integer", file=sys.stderr)
            return _EXIT_USAGE

    try:
        return args.func(args)
    except FileNotFoundError as exc:
        print(f"error: missing input: {exc}", file=sys.stderr)
        return _EXIT_MISSING_INPUT
    except SingularGramError as exc:
        print(f"error: singular Gram matrix (sigma_min = {exc.sigma_min:.6e})", file=sys.stderr)
        return _EXIT_NUMERICAL
    except GraphSamplingError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return _EXIT_NUMERICAL


if __name__ == "__main__":
    sys.exit(main())
