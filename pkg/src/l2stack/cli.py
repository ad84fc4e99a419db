"""Command line interface: ``l2stack {decide,series,volume,catalog}``.

Exit codes: 0 success (``decide``: L2), 1 ``decide``: not L2 / ``catalog``:
mismatch, 2 usage, parse or runtime error.

A job may also be read from a JSON document via ``--config FILE``::

    {"group": "A1 x T3", "rep": "config(standard,3)", "q": 2, "H": 60, "nu": [1, 0, 0, 0],
     "catalog_filter": "adjoint-*"}

Command-line flags override values from the document.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass

from . import __version__
from ._exact import fmt_fraction
from .catalog import run_catalog
from .decide import decide_l2
from .reps import RepError, parse_rep
from .rootdata import GroupSpecError, build_root_datum
from .series import SeriesOverflowError, checkpoints, partial_sum
from .weylvol import SandwichViolation, WeylCapError, cell_volume_report

EXIT_OK, EXIT_NOT_L2, EXIT_ERROR = 0, 1, 2
CONFIG_KEYS = ("group", "rep", "q", "H", "nu", "catalog_filter")


class ConfigError(ValueError):
    pass


@dataclass
class JobConfig:
    group: str | None = None
    rep: str | None = None
    q: int = 2
    H: int = 20
    nu: tuple[int, ...] | None = None
    catalog_filter: str | None = None

    def require(self, *names):
        missing = [n for n in names if getattr(self, n) is None]
        if missing:
            raise ConfigError(f"missing required setting(s): {', '.join('--' + m for m in missing)}")


def _parse_nu(value) -> tuple[int, ...]:
    if isinstance(value, (list, tuple)):
        return tuple(int(x) for x in value)
    text = str(value).strip().strip("()[]")
    try:
        return tuple(int(x) for x in text.split(",") if x.strip())
    except ValueError:
        raise ConfigError(f"cannot parse coweight {value!r}; expected comma-separated integers") from None


def load_config(args) -> JobConfig:
    cfg = JobConfig()
    if getattr(args, "config", None):
        try:
            with open(args.config, encoding="utf-8") as fh:
                doc = json.load(fh)
        except (OSError, json.JSONDecodeError) as exc:
            raise ConfigError(f"cannot read config {args.config}: {exc}") from None
        if not isinstance(doc, dict):
            raise ConfigError("config document must be a JSON object")
        unknown = set(doc) - set(CONFIG_KEYS)
        if unknown:
            raise ConfigError(f"unknown config key(s): {', '.join(sorted(unknown))}")
        for key, val in doc.items():
            setattr(cfg, key, _parse_nu(val) if key == "nu" else val)
    for key in CONFIG_KEYS:
        val = getattr(args, key, None)
        if val is not None:
            setattr(cfg, key, _parse_nu(val) if key == "nu" else val)
    cfg.q, cfg.H = int(cfg.q), int(cfg.H)
    return cfg


def _fmt_float(v: float) -> str:
    s = repr(float(v))
    return s[:-2] if s.endswith(".0") else s


def _emit(args, lines, payload):
    if args.json:
        print(json.dumps(payload, sort_keys=True))
    else:
        for line in lines:
            print(line)


def cmd_decide(args) -> int:
    cfg = load_config(args)
    cfg.require("group", "rep")
    rd = build_root_datum(cfg.group)
    rep = parse_rep(cfg.rep, rd)
    verdict = decide_l2(rd, rep)
    _emit(args, [verdict.line()], verdict.to_dict())
    return EXIT_OK if verdict.is_l2 else EXIT_NOT_L2


def cmd_series(args) -> int:
    cfg = load_config(args)
    cfg.require("group", "rep")
    rd = build_root_datum(cfg.group)
    rep = parse_rep(cfg.rep, rd)
    report = partial_sum(rd, rep, cfg.q, cfg.H)
    pts = checkpoints(cfg.H)
    lines = [f"h={h} count={report.count_upto(h)} S={_fmt_float(report.at(h))}" for h in pts]
    payload = {
        "group": rd.describe(), "rep": rep.describe(), "q": report.q, "H": report.H,
        "checkpoints": [{"h": h, "count": report.count_upto(h), "S": report.at(h)} for h in pts],
        "partial_sums": [s for _, s in report.partial_sums],
        "term_count": report.term_count, "verdict_hint": report.verdict_hint,
        "max_term_exponent": fmt_fraction(report.max_term_exponent), "backend": report.backend,
    }
    _emit(args, lines, payload)
    return EXIT_OK


def cmd_volume(args) -> int:
    cfg = load_config(args)
    cfg.require("group", "rep", "nu")
    rd = build_root_datum(cfg.group)
    rep = parse_rep(cfg.rep, rd)
    fields = cell_volume_report(rd, rep, cfg.nu, cfg.q).fields()
    _emit(args, [" ".join(f"{k}={v}" for k, v in fields.items())], fields)
    return EXIT_OK


def cmd_catalog(args) -> int:
    cfg = load_config(args)
    report = run_catalog(pattern=cfg.catalog_filter)
    lines = report.lines + report.table
    if report.failures and not args.json:
        lines += [f"failure={f}" for f in report.failures]
    payload = {"cases": report.lines, "very_good_table": report.table, "failures": report.failures,
               "findings": {k: ("L2" if v else "NOT_L2") for k, v in sorted(report.findings.items())}}
    _emit(args, lines, payload)
    return EXIT_OK if report.ok else EXIT_NOT_L2


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", help="JSON job document; flags override its values")
    common.add_argument("--group", help='group descriptor, e.g. "A1 x T3"')
    common.add_argument("--rep", help='representation descriptor, e.g. "config(standard,3)"')
    common.add_argument("--q", type=int, help="residue field cardinality (default 2)")
    common.add_argument("--H", type=int, help="height cap for series (default 20)")
    common.add_argument("--nu", help="dominant coweight, comma-separated coroot coordinates")
    common.add_argument("--json", action="store_true", help="emit one JSON document")
    common.add_argument("--catalog-filter", dest="catalog_filter", help="glob on catalog case names")

    parser = argparse.ArgumentParser(prog="l2stack", description="L2 decision for linear quotient stacks [V/G]")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)
    for name, fn, help_ in (("decide", cmd_decide, "exact L2 verdict"),
                            ("series", cmd_series, "truncated partial sums of the series"),
                            ("volume", cmd_volume, "Cartan cell volume and sandwich ratio"),
                            ("catalog", cmd_catalog, "run the regression catalog")):
        p = sub.add_parser(name, parents=[common], help=help_)
        p.set_defaults(func=fn)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (ConfigError, GroupSpecError, RepError, SeriesOverflowError, WeylCapError,
            SandwichViolation, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
