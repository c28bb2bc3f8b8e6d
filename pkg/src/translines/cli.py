"""Command-line front end.

Exit codes: 0 success, 1 verification failure, 2 usage or domain error.
"""

from __future__ import annotations

import argparse
import math
import sys
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from . import csvio
from .actions import (
    ActionCase,
    conjugation_residuals,
    conjugation_samples,
    generator_commutator_norm,
    homomorphism_residuals,
    homomorphism_samples,
)
from .arrangements import count_curve_incidences, count_incidences_exact, elekes, map_arrangement
from .curves import Line, MapId, default_parameters, line_image_translate, map_point, sample_line_image
from .errors import CountMismatchError, DomainError, InadmissibleLineError
from .svg import STYLES, render_svg
from .unit_distances import ScaledGrid, exponent_fit, unit_pairs_exact

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2

RNG_NAME = "PCG64 (numpy.random.Generator)"


@dataclass(frozen=True)
class RunConfig:
    command: str
    tol: float = 1e-9
    samples: int = 1000
    seed: int = 42
    out: str | None = None
    threads: int = 1

    def __post_init__(self):
        if not self.tol > 0:
            raise ValueError("--tol must be positive")
        if self.samples < 1:
            raise ValueError("--samples must be at least 1")
        if self.threads < 1:
            raise ValueError("--threads must be at least 1")
        if not 0 <= self.seed < 2 ** 64:
            raise ValueError("--seed must be a 64-bit unsigned integer")


class UsageError(Exception):
    pass


def _positive_int(text: str) -> int:
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
    if v < 1:
        raise argparse.ArgumentTypeError(f"must be >= 1, got {v}")
    return v


def _map_id(text: str) -> MapId:
    try:
        return MapId.parse(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _case(text: str) -> ActionCase:
    try:
        return ActionCase.parse(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _chunked(fn, items: list, threads: int) -> np.ndarray:
    """Apply a per-sample residual function in ordered chunks; identical to one pass."""
    if threads <= 1 or len(items) < 2:
        return fn(items)
    size = math.ceil(len(items) / threads)
    chunks = [items[k:k + size] for k in range(0, len(items), size)]
    with ThreadPoolExecutor(max_workers=threads) as pool:
        return np.concatenate(list(pool.map(fn, chunks)))


def _emit(text: str, out: str | None) -> None:
    if out is None:
        sys.stdout.write(text)
    else:
        Path(out).write_text(text)


# ---------------------------------------------------------------- subcommands


def cmd_verify_actions(cfg: RunConfig, cases: list[ActionCase]) -> int:
    # one independent stream per case, in fixed order, so --case X reproduces
    # exactly the samples X gets in a full run
    streams = np.random.SeedSequence(cfg.seed).spawn(len(ActionCase))
    rows = []
    failures = []
    for idx, case in enumerate(ActionCase):
        if case not in cases:
            continue
        rng = np.random.Generator(np.random.PCG64(streams[idx]))
        hom = homomorphism_samples(rng, cfg.samples)
        conj = conjugation_samples(case, rng, cfg.samples)
        h = _chunked(lambda s, c=case: homomorphism_residuals(c, s), hom, cfg.threads)
        c = _chunked(lambda s, c=case: conjugation_residuals(c, s), conj, cfg.threads)
        g = generator_commutator_norm(case)
        hmax, cmax = float(h.max()), float(c.max())
        ok = hmax <= cfg.tol and cmax <= cfg.tol and g <= cfg.tol
        rows.append((case.value, hmax, cmax, g, int(ok)))
        print(f"{case.value}: homomorphism={hmax:.3e} conjugation={cmax:.3e} commutator={g:.3e} "
              f"{'PASS' if ok else 'FAIL'}")
        if not ok:
            if hmax > cfg.tol:
                failures.append(f"{case.value} homomorphism sample (v, w) = {hom[int(h.argmax())]}")
            if cmax > cfg.tol:
                failures.append(f"{case.value} conjugation sample (p, v) = {conj[int(c.argmax())]}")
            if g > cfg.tol:
                failures.append(f"{case.value} generator commutator {g:.3e}")
    if cfg.out:
        csvio._write(cfg.out, "case,homomorphism,conjugation,commutator,pass", rows)
    for f in failures:
        print(f"violation: {f}", file=sys.stderr)
    return EXIT_FAIL if failures else EXIT_OK


def cmd_map_line(cfg: RunConfig, mid: MapId, a: float, b: float, t_range, figure: str | None) -> int:
    line = Line(a, b)
    curve = line_image_translate(mid, line)
    if t_range is None:
        ts = default_parameters(mid, line, cfg.samples)
        pts = [map_point(mid, (t, line.at(t))) for t in ts.tolist()]
    else:
        pts = sample_line_image(mid, line, t_range, cfg.samples)
    xs = np.array([p[0] for p in pts])
    ys = np.array([p[1] for p in pts])
    worst = float(np.max(np.abs(curve.residual(xs, ys))))
    if not worst <= cfg.tol:
        print(f"image samples are off the translate by {worst:.3e} > {cfg.tol:g}", file=sys.stderr)
        return EXIT_FAIL
    header = f"# {curve.family},{csvio.fmt(curve.u)},{csvio.fmt(curve.v)},{curve.branch}\n"
    body = "x,y\n" + "".join(f"{csvio.fmt(x)},{csvio.fmt(y)}\n" for x, y in pts)
    _emit(header + body, cfg.out)
    if figure:
        from .figures import plot_series

        plot_series([pts], figure, labels=[f"{mid.value}: y = {a:g}x + {b:g}"])
    return EXIT_OK


def cmd_arrange(cfg: RunConfig, n: int, mid: MapId | None, figure: str | None) -> int:
    arr = elekes(n)
    outdir = Path(cfg.out or ".")
    outdir.mkdir(parents=True, exist_ok=True)
    csvio.write_points(outdir / "points.csv", arr.points)
    csvio.write_lines(outdir / "lines.csv", arr.lines)
    report = count_incidences_exact(arr, threads=cfg.threads)
    print(report.summary())
    mapped = None
    if mid is not None:
        mapped = map_arrangement(arr, mid)
        csvio.write_curves(outdir / "curves.csv", mapped.curves)
        csvio.write_points(outdir / "image_points.csv", mapped.points)
        try:
            both = count_curve_incidences(mapped, cfg.tol)
        except CountMismatchError as exc:
            print(str(exc), file=sys.stderr)
            return EXIT_FAIL
        print(f"map={mid.value}, pullback_I={both.I}, residual_I={both.residual_I}")
    if figure:
        from .figures import plot_arrangement

        plot_arrangement(arr, figure, mapped)
    return EXIT_OK


def cmd_unit_distances(cfg: RunConfig, ns: list[int], figure: str | None) -> int:
    rows = [(n ** 3, unit_pairs_exact(ScaledGrid(n), threads=cfg.threads)) for n in sorted(set(ns))]
    _emit("N,count\n" + "".join(f"{N},{c}\n" for N, c in rows), cfg.out)
    slope = None
    if len(rows) >= 3:
        try:
            slope = exponent_fit(rows)
        except ValueError as exc:  # a zero count, e.g. n = 1
            print(f"no exponent fit: {exc}", file=sys.stderr)
        else:
            print(f"slope={slope:.6f}", file=sys.stderr if cfg.out is None else sys.stdout)
    if figure:
        from .figures import plot_unit_distance_fit

        plot_unit_distance_fit(rows, slope, figure)
    return EXIT_OK


def cmd_export_svg(cfg: RunConfig, inputs: list[str], style: str) -> int:
    series = []
    for path in inputs:
        with open(path) as fh:
            series.extend(csvio.read_series(fh, path))
    if not series:
        raise UsageError("input contains no point rows")
    try:
        doc = render_svg(series, style)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    _emit(doc, cfg.out)
    return EXIT_OK


# ---------------------------------------------------------------- parser


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--tol", type=float, default=1e-9, help="tolerance (default 1e-9)")
    common.add_argument("--samples", type=_positive_int, default=1000, help="sample count (default 1000)")
    common.add_argument("--seed", type=int, default=42,
                        help=f"64-bit seed for the {RNG_NAME} generator (default 42)")
    common.add_argument("--out", default=None, help="output file (directory for arrange)")
    common.add_argument("--threads", type=_positive_int, default=1,
                        help="worker threads; results are identical to --threads 1")

    parser = argparse.ArgumentParser(
        prog="translines",
        description="Maps sending lines to curve translates, incidence arrangements and unit distances. "
        f"Random sampling uses {RNG_NAME}.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("verify-actions", parents=[common], help="check the six affine actions")
    p.add_argument("--case", type=_case, action="append", help="A1..A6 (repeatable; default all)")

    p = sub.add_parser("map-line", parents=[common], help="sample the image of a line y = a x + b")
    p.add_argument("--map", type=_map_id, required=True, help=", ".join(m.value for m in MapId))
    p.add_argument("--a", type=float, required=True)
    p.add_argument("--b", type=float, required=True)
    p.add_argument("--range", type=float, nargs=2, metavar=("T0", "T1"), default=None)
    p.add_argument("--figure", default=None, help="also render a PNG of the samples")
    p.set_defaults(samples=100)

    p = sub.add_parser("arrange", parents=[common], help="Elekes arrangement, optionally mapped")
    p.add_argument("--n", type=_positive_int, required=True)
    p.add_argument("--map", type=_map_id, default=None)
    p.add_argument("--figure", default=None, help="also render a PNG of the arrangement")

    p = sub.add_parser("count-unit-distances", parents=[common], help="exact unit-distance counts on n x n^2 grids")
    p.add_argument("--n", type=_positive_int, nargs="+", required=True)
    p.add_argument("--figure", default=None, help="also render a log-log PNG")

    p = sub.add_parser("export-svg", parents=[common], help="render CSV point series as SVG polylines")
    p.add_argument("inputs", nargs="+")
    p.add_argument("--style", choices=STYLES, default="lines")
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_USAGE
    try:
        cfg = RunConfig(args.command, args.tol, args.samples, args.seed, args.out, args.threads)
        if args.command == "verify-actions":
            return cmd_verify_actions(cfg, args.case or list(ActionCase))
        if args.command == "map-line":
            return cmd_map_line(cfg, args.map, args.a, args.b, args.range, args.figure)
        if args.command == "arrange":
            return cmd_arrange(cfg, args.n, args.map, args.figure)
        if args.command == "count-unit-distances":
            return cmd_unit_distances(cfg, args.n, args.figure)
        return cmd_export_svg(cfg, args.inputs, args.style)
    except (UsageError, ValueError, InadmissibleLineError, DomainError, OSError) as exc:
        print(f"translines {args.command}: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
