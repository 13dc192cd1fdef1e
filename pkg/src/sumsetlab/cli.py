"""Command-line entry point.

Subcommands::

    sumsetlab compute --set 1,2,3,4 --alpha 2 --variant at-least
    sumsetlab bound   --terms 0,1,2 --reps 1,2,2 --alpha 2
    sumsetlab verify inverse --k 4 --alpha 2 --max 12
    sumsetlab verify direct  --reps 2,2 --alpha-range 0..4 --max 8

Exit codes: 0 success, 1 usage/input/hypothesis error, 2 counterexample found.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
import time
from dataclasses import dataclass
from typing import Optional, Sequence

from .bounds import bound_for
from .core import VARIANTS, AT_LEAST, IntSet, MultiSeq, restricted_sums
from .errors import HypothesisError, SumsetError
from .extremal import (
    DEFAULT_CAP,
    Finding,
    VerificationReport,
    default_workers,
    enumerate_extremal,
    verify_direct,
    verify_inverse,
)

EXIT_OK = 0
EXIT_ERROR = 1
EXIT_COUNTEREXAMPLE = 2

CAP_ENV = "SUMSETLAB_CAP"
FORMATS = ("json", "csv", "plain")


class _Parser(argparse.ArgumentParser):
    # argparse exits with 2 on usage errors; 2 is reserved for counterexamples.
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_ERROR, f"{self.prog}: error: {message}\n")


def int_list(text: str) -> list[int]:
    out = []
    for token in text.split(","):
        token = token.strip()
        try:
            out.append(int(token))
        except ValueError:
            raise argparse.ArgumentTypeError(f"invalid integer {token!r} in {text!r}") from None
    return out


def alpha_range(text: str) -> list[int]:
    lo, sep, hi = text.partition("..")
    if not sep:
        raise argparse.ArgumentTypeError(f"alpha range must look like 0..5, got {text!r}")
    try:
        a, b = int(lo), int(hi)
    except ValueError:
        raise argparse.ArgumentTypeError(f"invalid alpha range {text!r}") from None
    if b < a:
        raise argparse.ArgumentTypeError(f"empty alpha range {text!r}")
    return list(range(a, b + 1))


@dataclass
class RunConfig:
    subcommand: str
    set_literal: Optional[list[int]] = None
    terms: Optional[list[int]] = None
    reps: Optional[list[int]] = None
    k: Optional[int] = None
    alphas: Optional[list[int]] = None
    variant: str = AT_LEAST
    universe_max: Optional[int] = None
    regime: Optional[str] = None
    cap: int = DEFAULT_CAP
    workers: int = 1
    explore: bool = False
    fmt: str = "json"
    output: Optional[str] = None
    timing: bool = True

    def build_input(self):
        if self.set_literal is not None:
            return IntSet(self.set_literal)
        return MultiSeq(self.terms, self.reps)


def _add_output_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--format", dest="fmt", choices=FORMATS, default="json")
    p.add_argument("--output", "-o", help="write the report here instead of stdout")
    p.add_argument(
        "--no-timing",
        dest="timing",
        action="store_false",
        help="emit elapsed_ms as null so repeated runs are byte-identical",
    )


def _add_input_flags(p: argparse.ArgumentParser) -> None:
    g = p.add_mutually_exclusive_group(required=True)
    g.add_argument("--set", dest="set_literal", type=int_list, metavar="A1,A2,...")
    g.add_argument("--terms", type=int_list, metavar="T1,T2,...")
    p.add_argument("--reps", type=int_list, metavar="R1,R2,...")
    p.add_argument("--alpha", type=int, default=0)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="sumsetlab", description="Restricted subset and subsequence sums.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("compute", help="compute a restricted sumset")
    _add_input_flags(p)
    p.add_argument("--variant", choices=VARIANTS, default=AT_LEAST)
    _add_output_flags(p)

    p = sub.add_parser("bound", help="evaluate the lower bound and compare with the actual size")
    _add_input_flags(p)
    p.add_argument("--regime", choices=("positive", "with-zero"))
    _add_output_flags(p)

    p = sub.add_parser("verify", help="exhaustively check a theorem over a bounded universe")
    p.add_argument("kind", choices=("direct", "inverse"))
    shape = p.add_mutually_exclusive_group(required=True)
    shape.add_argument("--k", type=int)
    shape.add_argument("--reps", type=int_list, metavar="R1,R2,...")
    alphas = p.add_mutually_exclusive_group()
    alphas.add_argument("--alpha", type=int)
    alphas.add_argument("--alpha-range", type=alpha_range, metavar="LO..HI")
    p.add_argument("--max", dest="universe_max", type=int, required=True, help="universe [1, MAX]")
    p.add_argument("--regime", choices=("positive", "with-zero"), default="positive")
    p.add_argument("--explore", action="store_true", help="fall back to plain enumeration when hypotheses fail")
    p.add_argument("--workers", type=int, default=None)
    p.add_argument("--cap", type=int, default=None)
    _add_output_flags(p)
    return parser


def _config(args: argparse.Namespace, parser: argparse.ArgumentParser) -> RunConfig:
    cfg = RunConfig(subcommand=args.command, fmt=args.fmt, output=args.output, timing=args.timing)
    if args.command in ("compute", "bound"):
        cfg.set_literal, cfg.terms, cfg.reps = args.set_literal, args.terms, args.reps
        if cfg.terms is not None and cfg.reps is None:
            parser.error("--terms needs --reps")
        if cfg.set_literal is not None and cfg.reps is not None:
            parser.error("--reps goes with --terms, not --set")
        cfg.alphas = [args.alpha]
        cfg.variant = getattr(args, "variant", AT_LEAST)
        cfg.regime = getattr(args, "regime", None)
        return cfg

    cfg.subcommand = f"verify-{args.kind}"
    cfg.k, cfg.reps = args.k, args.reps
    if args.alpha is not None:
        cfg.alphas = [args.alpha]
    elif args.alpha_range is not None:
        cfg.alphas = args.alpha_range
    elif args.kind == "inverse":
        parser.error("verify inverse needs --alpha or --alpha-range")
    cfg.universe_max = args.universe_max
    k = cfg.k if cfg.k is not None else len(cfg.reps)
    if cfg.universe_max < k:
        parser.error(f"--max {cfg.universe_max} is smaller than k = {k}")
    cfg.regime = args.regime
    cfg.explore = args.explore
    cfg.workers = default_workers() if args.workers is None else args.workers
    if args.cap is not None:
        cfg.cap = args.cap
    elif os.environ.get(CAP_ENV):
        try:
            cfg.cap = int(os.environ[CAP_ENV])
        except ValueError:
            parser.error(f"{CAP_ENV} must be an integer, got {os.environ[CAP_ENV]!r}")
    return cfg


def _input_params(cfg: RunConfig) -> dict:
    if cfg.set_literal is not None:
        return {"set": sorted(cfg.set_literal)}
    return {"terms": cfg.terms, "reps": cfg.reps}


def _emit(cfg: RunConfig, command: str, params: dict, result: dict, plain: str, rows, elapsed: float) -> None:
    if cfg.fmt == "json":
        doc = {
            "command": command,
            "parameters": params,
            "result": result,
            "elapsed_ms": round(elapsed * 1000, 3) if cfg.timing else None,
        }
        text = json.dumps(doc) + "\n"
    elif cfg.fmt == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerows(rows)
        text = buf.getvalue()
    else:
        text = plain if plain.endswith("\n") else plain + "\n"
    if cfg.output:
        with open(cfg.output, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _fmt_tuple(values) -> str:
    return " ".join(str(v) for v in values)


def cmd_compute(cfg: RunConfig) -> int:
    start = time.perf_counter()
    obj = cfg.build_input()
    sums = restricted_sums(obj, cfg.alphas[0], cfg.variant)
    elapsed = time.perf_counter() - start
    plain = "\n".join(
        [
            f"variant: {sums.variant}",
            f"alpha: {sums.alpha}",
            f"source_total: {sums.source_total}",
            f"cardinality: {len(sums)}",
            f"values: {_fmt_tuple(sums.values)}",
        ]
    )
    rows = [["value"]] + [[v] for v in sums.values]
    params = {**_input_params(cfg), "alpha": cfg.alphas[0], "variant": cfg.variant}
    _emit(cfg, "compute", params, sums.to_dict(), plain, rows, elapsed)
    return EXIT_OK


def cmd_bound(cfg: RunConfig) -> int:
    start = time.perf_counter()
    obj = cfg.build_input()
    if cfg.regime is not None and obj.regime != cfg.regime:
        raise SumsetError(f"input regime is {obj.regime!r}, but --regime {cfg.regime} was requested")
    report = bound_for(obj, cfg.alphas[0], compute=True)
    elapsed = time.perf_counter() - start
    data = report.to_dict()
    plain = "\n".join(f"{key}: {'null' if val is None else json.dumps(val)}" for key, val in data.items())
    rows = [list(data), ["" if v is None else v for v in data.values()]]
    params = {**_input_params(cfg), "alpha": cfg.alphas[0]}
    _emit(cfg, "bound", params, data, plain, rows, elapsed)
    return EXIT_OK


def _finding_line(f: Finding) -> str:
    parts = ["{" + ",".join(map(str, f.input)) + "}"]
    if f.reps is not None:
        parts.append("reps=" + ",".join(map(str, f.reps)))
    parts.append(f"alpha={f.alpha}")
    parts.append(f"size={f.achieved} bound={f.bound}")
    if f.structure is not None:
        parts.append(f.structure.kind)
        if f.structure.d is not None:
            parts.append(f"d={f.structure.d}")
        if f.structure.exception is not None:
            parts.append(f.structure.exception)
    if f.reason:
        parts.append(f"[{f.reason}]")
    return "  " + " ".join(parts)


def _verify_plain(command: str, report: VerificationReport) -> str:
    lines = [
        f"command: {command}",
        f"verdict: {report.verdict}",
        f"candidates: {report.total_candidates}",
        f"checks: {report.total_checks}",
        f"extremal: {len(report.extremal_found)}",
    ]
    lines += [_finding_line(f) for f in report.extremal_found]
    lines.append(f"counterexamples: {len(report.counterexamples)}")
    lines += [_finding_line(f) for f in report.counterexamples]
    lines.append(f"anomalies: {len(report.anomalies)}")
    lines += [_finding_line(f) for f in report.anomalies]
    lines += [f"note: {n}" for n in report.notes]
    return "\n".join(lines)


def _verify_rows(report: VerificationReport) -> list[list]:
    header = ["category", "input", "reps", "alpha", "achieved", "bound", "structure", "d", "exception", "reason"]
    rows = [header]
    for category, items in (
        ("extremal", report.extremal_found),
        ("counterexample", report.counterexamples),
        ("anomaly", report.anomalies),
    ):
        for f in items:
            s = f.structure
            rows.append(
                [
                    category,
                    _fmt_tuple(f.input),
                    "" if f.reps is None else _fmt_tuple(f.reps),
                    f.alpha,
                    f.achieved,
                    f.bound,
                    "" if s is None else s.kind,
                    "" if s is None or s.d is None else s.d,
                    "" if s is None or s.exception is None else s.exception,
                    f.reason or "",
                ]
            )
    return rows


def cmd_verify(cfg: RunConfig) -> int:
    shape = cfg.k if cfg.k is not None else tuple(cfg.reps)
    kwargs = dict(workers=cfg.workers, cap=cfg.cap)
    start = time.perf_counter()
    if cfg.subcommand == "verify-direct":
        report = verify_direct(shape, cfg.alphas, cfg.universe_max, cfg.regime, **kwargs)
    else:
        try:
            report = verify_inverse(shape, cfg.alphas, cfg.universe_max, cfg.regime, **kwargs)
        except HypothesisError as exc:
            if not cfg.explore:
                raise
            report = enumerate_extremal(shape, cfg.alphas, cfg.universe_max, cfg.regime, **kwargs)
            report.notes.append(f"explore mode: {exc}")
    elapsed = time.perf_counter() - start
    command = cfg.subcommand.replace("-", " ", 1)
    params = {
        "kind": cfg.subcommand.split("-", 1)[1],
        "k": cfg.k,
        "reps": cfg.reps,
        "alphas": cfg.alphas,
        "universe_max": cfg.universe_max,
        "regime": cfg.regime,
        "explore": cfg.explore,
    }
    _emit(cfg, "verify", params, report.to_dict(), _verify_plain(command, report), _verify_rows(report), elapsed)
    return EXIT_COUNTEREXAMPLE if report.counterexamples else EXIT_OK


COMMANDS = {"compute": cmd_compute, "bound": cmd_bound, "verify-direct": cmd_verify, "verify-inverse": cmd_verify}


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    cfg = _config(args, parser)
    try:
        return COMMANDS[cfg.subcommand](cfg)
    except (SumsetError, ValueError, TypeError, OSError) as exc:
        print(f"sumsetlab: error: {exc}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
