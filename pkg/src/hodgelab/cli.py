"""Command-line front end.

Usage::

    hodgelab <validate|report|scan|verify|degenerate> --model FILE_OR_PRESET
             [--points FILE | --grid SPEC] --out DIR [--tol X] [--seed N]

Exit codes: 0 success, 1 a required check failed (``verify``), 2 bad input,
3 numerical precision exhausted.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .errors import DomainError, HodgeLabError, PrecisionError, StructureError
from .families.io import ModelFileError, load_model, preset_names
from .families.validation import validate_model
from .report import (GridSpecError, default_points, degeneration_summary, dumps, geometry_report,
                     parse_grid, parse_points, scan_csv, verify_model)

EXIT_OK, EXIT_CHECK, EXIT_INPUT, EXIT_PRECISION = 0, 1, 2, 3
COMMANDS = ("validate", "report", "scan", "verify", "degenerate")


def _positive(text: str) -> float:
    x = float(text)
    if not x > 0:
        raise argparse.ArgumentTypeError("must be positive")
    return x


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="hodgelab",
                                description="Weil-Petersson and Hodge metric geometry of "
                                            "period families.")
    p.add_argument("command", choices=COMMANDS)
    p.add_argument("--model", required=True,
                   help=f"model JSON file or preset name ({', '.join(preset_names())})")
    where = p.add_mutually_exclusive_group()
    where.add_argument("--points", help="JSON file with a list of points")
    where.add_argument("--grid", help="re0:re1:nre,im0:im1:nim per modulus, ';' between moduli "
                            "(write --grid=... when the spec starts with '-')")
    p.add_argument("--out", required=True, help="output directory")
    p.add_argument("--tol", type=_positive, default=1e-6, help="tolerance of the curvature-bound checks")
    p.add_argument("--seed", type=int, default=0, help="seed for sampling")
    p.add_argument("--count", type=int, default=20,
                   help="number of sampled points when neither --points nor --grid is given")
    p.add_argument("--theta", type=float, default=0.3, help="ray angle for degenerate")
    return p


def _points(args, model):
    if args.points:
        try:
            data = json.loads(Path(args.points).read_text())
        except (OSError, json.JSONDecodeError) as exc:
            raise GridSpecError(f"cannot read points file: {exc}") from exc
        return parse_points(data, model.n)
    if args.grid:
        return parse_grid(args.grid, model.n)
    try:
        return default_points(model, args.count, args.seed)
    except (NotImplementedError, DomainError) as exc:
        raise GridSpecError(f"{model.name} has no sampling domain; pass --points or --grid") from exc


def _write(out: Path, name: str, text: str) -> Path:
    out.mkdir(parents=True, exist_ok=True)
    path = out / name
    path.write_text(text)
    return path


def run(argv=None) -> int:
    try:
        args = build_parser().parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_INPUT
    out = Path(args.out)
    try:
        model = load_model(args.model)
        if args.command == "degenerate":
            csv_text, summary = degeneration_summary(model, theta=args.theta)
            _write(out, "degeneration.csv", csv_text)
            path = _write(out, "degeneration.json", dumps(summary))
            print(f"incomplete={str(summary['incomplete']).lower()} "
                  f"c={summary['constraint_derived'][0]:+.3e}{summary['constraint_derived'][1]:+.3e}j "
                  f"-> {path}")
            return EXIT_OK
        pts = _points(args, model)
        if args.command == "validate":
            rep = validate_model(model, pts).as_dict()
            path = _write(out, "validation.json", dumps(rep))
            print(f"{rep['valid_count']}/{rep['point_count']} points valid -> {path}")
        elif args.command == "report":
            rep = geometry_report(model, pts, seed=args.seed, tol=args.tol)
            path = _write(out, "report.json", dumps(rep))
            print(f"{rep['summary']['valid']}/{rep['summary']['records']} points valid -> {path}")
        elif args.command == "scan":
            path = _write(out, "scan.csv", scan_csv(model, pts, seed=args.seed, tol=args.tol))
            print(f"{len(pts)} grid points -> {path}")
        else:
            checks = verify_model(model, pts, seed=args.seed, tol=args.tol)
            failed = [c for c in checks if c.required and not c.passed]
            rep = {"model": model.name, "seed": args.seed, "tol": args.tol,
                   "points": len(pts), "checks": [c.as_dict() for c in checks],
                   "failed": [c.name for c in failed]}
            path = _write(out, "verify.json", dumps(rep))
            for c in checks:
                tag = "PASS" if c.passed else ("FAIL" if c.required else "note")
                print(f"{tag:4} {c.name:32} residual={c.residual:.3e}")
            if failed:
                print(f"failed: {', '.join(c.name for c in failed)}", file=sys.stderr)
                return EXIT_CHECK
            print(f"all required checks passed -> {path}")
    except (ModelFileError, GridSpecError) as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except PrecisionError as exc:
        print(f"precision exhausted: {exc}", file=sys.stderr)
        return EXIT_PRECISION
    except (StructureError, DomainError) as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except HodgeLabError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CHECK
    return EXIT_OK


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
