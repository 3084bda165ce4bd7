"""Command-line interface.

Exit status: 0 success, 1 verification failed or counterexample found,
2 input error, 3 resource bound exceeded or catalog incomplete.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from pathlib import Path

from .algebra import count_subuniverses
from .catalog import KRName, is_planar, kr_member, sharpness_witness
from .errors import (
    CatalogIncomplete,
    LatsubError,
    NotALattice,
    NotTranscribed,
    ScriptError,
    TooLarge,
    UniverseTooLarge,
)
from .generate import random_lattice, random_stacked_lattice
from .lattice import FiniteLattice, full_algebra, lattice_sigma, parse_lattice_text
from .script import format_report, parse_script, results_to_json, timed_run, verify_script

EXIT_OK, EXIT_FAILED, EXIT_INPUT, EXIT_RESOURCE = 0, 1, 2, 3


class CliError(Exception):
    def __init__(self, message: str, code: int) -> None:
        super().__init__(message)
        self.code = code


def _read(path: str) -> str:
    try:
        data = sys.stdin.buffer.read() if path == "-" else Path(path).read_bytes()
    except OSError as exc:
        raise CliError(f"cannot read {path}: {exc.strerror}", EXIT_INPUT) from None
    return data.decode("utf-8", errors="replace")


def _write(path: str | None, text: str) -> None:
    if path:
        Path(path).write_text(text, encoding="utf-8")


def _threshold(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"not a rational number: {text!r}") from None


def _positive(text: str) -> int:
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError("must be at least 1")
    return value


def _fmt_fraction(x: Fraction) -> str:
    return str(x.numerator) if x.denominator == 1 else f"{float(x):g}"


def cmd_run(args: argparse.Namespace) -> int:
    script = parse_script(_read(args.input))
    results, elapsed = timed_run(script, workers=args.jobs)
    report = format_report(results, elapsed if args.timing else None)
    out = results_to_json(results) + "\n" if args.json else report
    sys.stdout.write(out)
    _write(args.out, report)
    return EXIT_OK


def cmd_verify(args: argparse.Namespace) -> int:
    script = parse_script(_read(args.input))
    summary = verify_script(script, threshold=args.threshold, workers=args.jobs)
    limit = _fmt_fraction(args.threshold)
    top = "none" if summary.max_sigma is None else summary.max_sigma.to_decimal().rstrip("0").rstrip(".")
    if args.json:
        print(json.dumps({
            "jobs": summary.job_count,
            "threshold": str(args.threshold),
            "max_sigma": None if summary.max_sigma is None else summary.max_sigma.power_form(),
            "offenders": [
                {"name": r.job_name, "sigma": r.sigma.power_form()}
                for r in summary.results if r.sigma > args.threshold
            ],
        }, indent=2))
    elif summary.all_excluded:
        print(f"{summary.job_count} jobs, all <= {limit} (max sigma {top})")
    else:
        worst = ", ".join(
            f"{r.job_name} (sigma = {r.sigma.to_decimal().rstrip('0').rstrip('.')})"
            for r in summary.results if r.sigma > args.threshold
        )
        print(f"{summary.job_count} jobs, {len(summary.offenders)} above {limit}: {worst}")
    _write(args.out, format_report(summary.results))
    return EXIT_OK if summary.all_excluded else EXIT_FAILED


def cmd_kr(args: argparse.Namespace) -> int:
    try:
        name = KRName.parse(args.name, args.index)
    except ValueError as exc:
        raise CliError(str(exc), EXIT_INPUT) from None
    text = kr_member(name).to_text()
    sys.stdout.write(text)
    _write(args.out, text)
    return EXIT_OK


def _load_lattice(path: str) -> FiniteLattice:
    return parse_lattice_text(_read(path))


def cmd_lattice(args: argparse.Namespace) -> int:
    lat = _load_lattice(args.file)
    if args.what == "count":
        print(count_subuniverses(full_algebra(lat), workers=args.jobs) - 1)
    elif args.what == "sigma":
        print(lattice_sigma(lat).to_decimal().rstrip("0").rstrip("."))
    else:
        verdict = is_planar(lat)
        print(("planar: " if verdict.planar else "non-planar: ") + verdict.certificate(lat))
    return EXIT_OK


def cmd_sharpness(args: argparse.Namespace) -> int:
    if args.n < 9:
        raise CliError("sharpness needs n >= 9", EXIT_INPUT)
    lat = sharpness_witness(args.n)
    subs = count_subuniverses(full_algebra(lat), workers=args.jobs)
    verdict = is_planar(lat, prefer=KRName("F", 0))
    shape = "planar" if verdict.planar else "non-planar"
    print(f"n={args.n}: |Sub| = {subs}, {subs - 1} sublattices, {shape}")
    print(verdict.certificate(lat))
    return EXIT_OK


def cmd_scan(args: argparse.Namespace) -> int:
    seed = args.seed if args.seed is not None else args.seed_pos if args.seed_pos is not None else 0
    many = undecided = 0
    for k in range(args.count):
        gen = random_lattice if k % 2 == 0 else random_stacked_lattice
        lat = gen(args.n_hint, seed * 1_000_003 + k)
        value = lattice_sigma(lat)
        if not value > 83:
            continue
        many += 1
        try:
            verdict = is_planar(lat)
        except CatalogIncomplete:
            undecided += 1
            continue
        if not verdict.planar:
            path = Path(args.out or f"scan-counterexample-{seed}-{k}.lat")
            path.write_text(f"# sample {k}, sigma {value}\n" + lat.to_text(), encoding="utf-8")
            print(f"counterexample: sample {k} has sigma {value} but {verdict.certificate(lat)}")
            print(f"lattice written to {path}")
            return EXIT_FAILED
    print(f"{args.count} lattices sampled, {many} with sigma > 83, all planar"
          + (f" ({undecided} undecided: catalog incomplete)" if undecided else ""))
    return EXIT_RESOURCE if undecided else EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="latsub", description="Subuniverse counting and Kelly-Rival planarity tools."
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def jobs(p: argparse.ArgumentParser) -> None:
        p.add_argument("--jobs", type=_positive, default=1, help="worker threads")

    p = sub.add_parser("run", help="run a subsize script and print the report")
    p.add_argument("input", help="script file, or - for stdin")
    p.add_argument("--out", help="also write the report to this file")
    p.add_argument("--json", action="store_true", help="print results as JSON")
    p.add_argument("--timing", action="store_true", help="append the computation time line")
    jobs(p)
    p.set_defaults(func=cmd_run)

    p = sub.add_parser("verify", help="check every job's sigma against a threshold")
    p.add_argument("input")
    p.add_argument("--threshold", type=_threshold, default=Fraction(83))
    p.add_argument("--out", help="write the full report to this file")
    p.add_argument("--json", action="store_true")
    jobs(p)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("kr", help="print a Kelly-Rival catalog member in lattice text format")
    p.add_argument("name", help="e.g. F, dual-E, K5, Fence8")
    p.add_argument("index", nargs="?", help="family index")
    p.add_argument("--out")
    p.set_defaults(func=cmd_kr)

    p = sub.add_parser("lattice", help="count, sigma or planarity of a lattice file")
    p.add_argument("what", choices=("count", "planar", "sigma"))
    p.add_argument("file")
    jobs(p)
    p.set_defaults(func=cmd_lattice)

    p = sub.add_parser("sharpness", help="the n-element non-planar witness")
    p.add_argument("n", type=int)
    jobs(p)
    p.set_defaults(func=cmd_sharpness)

    p = sub.add_parser("scan", help="sample lattices and check that sigma > 83 implies planar")
    p.add_argument("count", type=int)
    p.add_argument("n_hint", type=int)
    p.add_argument("seed_pos", nargs="?", type=int, metavar="seed")
    p.add_argument("--seed", type=int)
    p.add_argument("--out", help="where to write a counterexample lattice")
    p.set_defaults(func=cmd_scan)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except CliError as exc:
        print(f"latsub: {exc}", file=sys.stderr)
        return exc.code
    except (UniverseTooLarge, CatalogIncomplete, TooLarge) as exc:
        print(f"latsub: {exc}", file=sys.stderr)
        return EXIT_RESOURCE
    except (ScriptError, NotALattice, NotTranscribed, ValueError) as exc:
        print(f"latsub: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except LatsubError as exc:
        print(f"latsub: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
