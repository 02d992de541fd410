"""Command line interface.

Subcommands: ``disclosure``, ``multi``, ``sweep``, ``synth`` and
``strip-uniques``. Options may come from a JSON file (``--config``); flags
given on the command line override it. Exit status is 0 on success, 2 for
configuration errors and 1 for data errors.
"""

from __future__ import annotations

import argparse
import logging
import sys
from pathlib import Path

from . import __version__
from .config import FORMATS, RunConfig, load_config
from .errors import ConfigError, DataError
from .exclusions import strip_replicated_uniques
from .ingest import NUMERIC, ColumnSchema, load_table, write_table
from .pipeline import disclosure, multi_disclosure, sweep
from .plotting import figure_bytes, plot_summary, plot_sweep
from .render import render
from .synth import MODES, bootstrap_synth

logger = logging.getLogger("synthrisk")


def _split(values: list[str] | None) -> list[str] | None:
    if values is None:
        return None
    return [v.strip() for item in values for v in item.split(",") if v.strip()]


def _ints(text: str) -> list[int]:
    try:
        return [int(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise ConfigError(f"expected comma-separated integers, got {text!r}") from None


def _pair(text: str, name: str) -> list[float]:
    try:
        a, b = text.split(",")
        return [int(a), float(b)]
    except ValueError:
        raise ConfigError(f"{name} expects COUNT,PERCENT, got {text!r}") from None


def _bool(text: str) -> bool:
    low = text.strip().lower()
    if low in ("true", "t", "yes", "1"):
        return True
    if low in ("false", "f", "no", "0"):
        return False
    raise ConfigError(f"expected true or false, got {text!r}")


def _na_codes(items: list[str]) -> dict[str, list[float]]:
    out: dict[str, list[float]] = {}
    for item in items:
        col, sep, vals = item.partition("=")
        if not sep or not col:
            raise ConfigError(f"--na-codes expects COL=VAL, got {item!r}")
        try:
            out.setdefault(col.strip(), []).extend(float(v) for v in vals.split(",") if v.strip())
        except ValueError:
            raise ConfigError(f"--na-codes value must be numeric, got {item!r}") from None
    return out


def _exclude_pair(item: str) -> list[str]:
    key, sep, rest = item.partition("=")
    level, sep2, tlevel = rest.rpartition(":")
    if not sep or not sep2 or not key:
        raise ConfigError(f"--exclude-pair expects KEY=LEVEL:TARGETLEVEL, got {item!r}")
    return [key, level, tlevel]


def _use_keys_na(items: list[str]):
    if len(items) == 1 and "=" not in items[0]:
        return _bool(items[0])
    out = {}
    for item in items:
        key, sep, val = item.partition("=")
        if not sep:
            raise ConfigError(f"--use-keys-na expects true/false or KEY=true/false, got {item!r}")
        out[key] = _bool(val)
    return out


def _add_input_options(p: argparse.ArgumentParser) -> None:
    p.add_argument("--orig", help="original data CSV")
    p.add_argument("--delimiter", help="CSV delimiter (default ',')")
    p.add_argument("--missing-tokens", help="comma-separated tokens read as missing (default: empty and NA)")
    p.add_argument("--na-codes", action="append", metavar="COL=VAL",
                   help="numeric code(s) of COL kept as their own category; repeatable")


def _add_run_options(p: argparse.ArgumentParser) -> None:
    _add_input_options(p)
    p.add_argument("--config", help="JSON config file; flags override it")
    p.add_argument("--syn", action="append", help="synthetic data CSV; repeat for replicates")
    p.add_argument("--keys", action="append", help="comma-separated key columns")
    p.add_argument("--targets", action="append", help="comma-separated target columns")
    p.add_argument("--ngroups-keys", help="groups per key, e.g. 0,0,10")
    p.add_argument("--ngroups-targets", help="groups per target, e.g. 0,20")
    p.add_argument("--thresh-1way", metavar="COUNT,PCT")
    p.add_argument("--thresh-2way", metavar="DENOM,PCT")
    p.add_argument("--format", choices=FORMATS)
    p.add_argument("--to-print", help="comma-separated: ident,attrib,allCAPs,check_1way,check_2way")
    p.add_argument("--seed", type=int)
    p.add_argument("--tau", type=float, help="also report disclosure at attribution probability >= tau")
    p.add_argument("--workers", type=int)
    p.add_argument("--out", help="output file (default: stdout)")
    p.add_argument("--figure", help="also write a figure (.svg/.png/.pdf) to this path")
    g = p.add_argument_group("exclusions")
    g.add_argument("--not-target", action="append", help="target level(s) to exclude")
    g.add_argument("--use-keys-na", action="append", metavar="[KEY=]BOOL")
    g.add_argument("--use-target-na", metavar="BOOL")
    g.add_argument("--exclude-pair", action="append", metavar="KEY=LEVEL:TARGETLEVEL")
    g.add_argument("--denom-lim", type=int)
    g.add_argument("--exclude-ov-denom-lim", action="store_true", default=None)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="synthrisk",
                                     description="Disclosure risk of synthetic data for the original records.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("disclosure", help="all measures for one target")
    _add_run_options(p)
    p = sub.add_parser("multi", help="measures and summary for several targets")
    _add_run_options(p)
    p = sub.add_parser("sweep", help="attribute measures for smaller synthetic releases")
    _add_run_options(p)
    p.add_argument("--fractions", help="comma-separated fractions in (0, 1]")

    p = sub.add_parser("synth", help="toy synthetic data by bootstrap")
    _add_input_options(p)
    p.add_argument("--mode", choices=MODES, default=MODES[0])
    p.add_argument("--n-out", type=int, help="records per replicate (default: as original)")
    p.add_argument("--m", type=int, default=1, help="number of replicates")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", required=True, help="output CSV; with --m > 1 must contain {i}")

    p = sub.add_parser("strip-uniques", help="remove replicated uniques from a synthetic file")
    _add_input_options(p)
    p.add_argument("--syn", required=True)
    p.add_argument("--keys", action="append", required=True)
    p.add_argument("--out", required=True)
    return parser


def _options(args: argparse.Namespace) -> dict:
    """Merge the config file with the flags that were actually given."""
    data = load_config(args.config) if getattr(args, "config", None) else {}
    flags = {
        "orig": args.orig,
        "syn": args.syn,
        "keys": _split(args.keys),
        "targets": _split(args.targets),
        "ngroups_keys": _ints(args.ngroups_keys) if args.ngroups_keys else None,
        "ngroups_targets": _ints(args.ngroups_targets) if args.ngroups_targets else None,
        "na_codes": _na_codes(args.na_codes) if args.na_codes else None,
        "thresh_1way": _pair(args.thresh_1way, "--thresh-1way") if args.thresh_1way else None,
        "thresh_2way": _pair(args.thresh_2way, "--thresh-2way") if args.thresh_2way else None,
        "format": args.format,
        "to_print": _split([args.to_print]) if args.to_print else None,
        "seed": args.seed,
        "tau": args.tau,
        "workers": args.workers,
        "delimiter": args.delimiter,
        "missing_tokens": args.missing_tokens.split(",") if args.missing_tokens is not None else None,
        "not_target": _split(args.not_target),
        "use_keys_na": _use_keys_na(args.use_keys_na) if args.use_keys_na else None,
        "use_target_na": _bool(args.use_target_na) if args.use_target_na is not None else None,
        "exclude_pairs": [_exclude_pair(x) for x in args.exclude_pair] if args.exclude_pair else None,
        "denom_lim": args.denom_lim,
        "exclude_ov_denom_lim": args.exclude_ov_denom_lim,
    }
    if getattr(args, "fractions", None):
        try:
            flags["fractions"] = [float(x) for x in args.fractions.split(",")]
        except ValueError:
            raise ConfigError(f"--fractions expects numbers, got {args.fractions!r}") from None
    data.update({k: v for k, v in flags.items() if v is not None})
    return data


def _write(out: str | None, payload: bytes) -> None:
    if out:
        Path(out).write_bytes(payload)
    else:
        sys.stdout.buffer.write(payload)
        sys.stdout.flush()


def _run(args: argparse.Namespace) -> None:
    config = RunConfig.from_dict(_options(args))
    if args.command == "disclosure":
        result = disclosure(config)
    elif args.command == "multi":
        result = multi_disclosure(config)
    else:
        result = sweep(config)
    _write(args.out, render(result, config.output_format))
    if args.figure:
        fig = plot_sweep(result) if args.command == "sweep" else plot_summary(result)
        fmt = args.figure.rsplit(".", 1)[-1].lower()
        Path(args.figure).write_bytes(figure_bytes(fig, fmt if fmt in ("svg", "png", "pdf") else "svg"))


def _load_plain(args: argparse.Namespace, path: str, hints=None):
    tokens = args.missing_tokens.split(",") if args.missing_tokens is not None else ("", "NA")
    if hints is None:
        codes = _na_codes(args.na_codes) if args.na_codes else {}
        hints = [ColumnSchema(c, NUMERIC, tuple(v), tuple(tokens)) for c, v in codes.items()]
    return load_table(path, hints, delimiter=args.delimiter or ",", missing_tokens=tokens, strict=False)


def _synth(args: argparse.Namespace) -> None:
    if not args.orig:
        raise ConfigError("--orig is required")
    if args.m < 1:
        raise ConfigError("--m must be at least 1")
    if args.m > 1 and "{i}" not in args.out:
        raise ConfigError("--out must contain {i} when --m > 1")
    orig = _load_plain(args, args.orig)
    for i in range(1, args.m + 1):
        seed = args.seed if args.m == 1 else [args.seed, i]
        table = bootstrap_synth(orig, args.mode, args.n_out, seed)
        write_table(table, args.out.replace("{i}", str(i)), delimiter=args.delimiter or ",")


def _strip(args: argparse.Namespace) -> None:
    if not args.orig:
        raise ConfigError("--orig is required")
    orig = _load_plain(args, args.orig)
    syn = _load_plain(args, args.syn, orig.schema)
    out = strip_replicated_uniques(orig, syn, _split(args.keys))
    write_table(out, args.out, delimiter=args.delimiter or ",")
    logger.info("removed %d of %d synthetic records", syn.n_rows - out.n_rows, syn.n_rows)


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s: %(message)s")
    try:
        if args.command == "synth":
            _synth(args)
        elif args.command == "strip-uniques":
            _strip(args)
        else:
            _run(args)
    except ConfigError as exc:
        print(f"synthrisk: configuration error: {exc}", file=sys.stderr)
        return 2
    except DataError as exc:
        print(f"synthrisk: data error: {exc}", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
