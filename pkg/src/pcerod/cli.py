"""Command-line front end: ``pcerod {sample,run,fit,sobol,pipeline,compare}``.

Every failure is reported as a single stderr line ``ERROR <Class>: <message>``
and a nonzero exit status.
"""
from __future__ import annotations

import argparse
import json
import sys
import warnings
from pathlib import Path

from . import campaign
from .config import CampaignConfig
from .errors import RangeClampWarning, UndersampledWarning

STAGES = {
    "sample": campaign.stage_sample,
    "run": campaign.stage_run,
    "fit": campaign.stage_fit,
    "sobol": campaign.stage_sobol,
    "pipeline": campaign.run_pipeline,
}


class _Parser(argparse.ArgumentParser):
    """Usage errors follow the same one-line ``ERROR`` format as runtime errors."""

    def error(self, message):
        self.exit(2, f"ERROR UsageError: {message}\n")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="pcerod", description="Polynomial chaos UQ campaigns for a fuel rod model.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)
    for name, func in STAGES.items():
        p = sub.add_parser(name, help=func.__doc__.splitlines()[0])
        p.add_argument("--config", required=True, help="campaign JSON file")
        p.add_argument("--seed", type=int, help="override sampling seed")
        p.add_argument("--workers", type=int, help="override worker count (default $PCE_ROD_WORKERS or 1)")
        p.add_argument("--out", help="override output directory")
    p = sub.add_parser("compare", help="print U3Si2/UO2 ratios from two report.json files")
    p.add_argument("uo2_report")
    p.add_argument("u3si2_report")
    return parser


def _summary(command: str, cfg: CampaignConfig, result) -> str:
    cdir = cfg.campaign_dir()
    if command == "sample":
        return f"samples: {result}"
    if command == "run":
        counts = {}
        for rec in result["runs"]:
            counts[rec["status"]] = counts.get(rec["status"], 0) + 1
        return f"runs: {len(result['runs'])} " + " ".join(f"{k}={v}" for k, v in sorted(counts.items()))
    if command == "fit":
        return f"expansion: {cdir / 'pce.json'} ({result.coefficients.shape[-1]} coefficients per output and time)"
    return f"report: {cdir / 'report.json'}"


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        with warnings.catch_warnings():
            for category in (UndersampledWarning, RangeClampWarning):
                warnings.simplefilter("always", category)
            warnings.showwarning = _warn_line
            if args.command == "compare":
                reports = [json.loads(Path(p).read_text()) for p in (args.uo2_report, args.u3si2_report)]
                print(campaign.format_comparison(campaign.compare_reports(*reports)))
                return 0
            cfg = CampaignConfig.load(args.config, seed=args.seed, workers=args.workers, out=args.out)
            result = STAGES[args.command](cfg)
    except Exception as exc:
        msg = " ".join(str(exc).split())
        print(f"ERROR {type(exc).__name__}: {msg}", file=sys.stderr)
        return 1
    print(f"campaign {cfg.campaign_id}: {_summary(args.command, cfg, result)}")
    return 0


def _warn_line(message, category, filename, lineno, file=None, line=None):
    print(f"WARNING {category.__name__}: {message}", file=sys.stderr)


if __name__ == "__main__":
    sys.exit(main())
