"""``softdress <subcommand> --config FILE [--out FILE] [--format csv|json]``.

Exit codes: 0 success, 2 configuration error, 3 numerical-contract or
domain violation, 4 I/O failure.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from softdress.cli_io.config import parse_config, with_overrides
from softdress.cli_io.runner import SUBCOMMANDS, run
from softdress.cli_io.tables import write_output
from softdress.errors import ConfigError, SoftDressError

EXIT_OK, EXIT_CONFIG, EXIT_NUMERIC, EXIT_IO = 0, 2, 3, 4


def _lambda_list(text):
    try:
        return tuple(float(s) for s in text.split(",") if s.strip())
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad lambda list {text!r}") from None


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="softdress", description=__doc__.splitlines()[0])
    ap.add_argument("subcommand", choices=SUBCOMMANDS)
    ap.add_argument("--config", required=True, type=Path, help="sectioned key-value run file")
    ap.add_argument("--out", type=Path, help="output file (default: [output] path or stdout)")
    ap.add_argument("--format", choices=("csv", "json"), help="output format (default: [output] format)")
    ap.add_argument("--lambda", dest="lambda_list", type=_lambda_list, help="comma-separated IR cutoffs")
    ap.add_argument("--offshell", type=float, help="dressing-velocity offset for `cancel`")
    ap.add_argument("--preset", help="spin state preset for `entangle`")
    ap.add_argument("--workers", type=int, help="worker threads for grid evaluations")
    ap.add_argument("--plot", type=Path, help="also render a figure to this file (png/pdf/svg)")
    return ap


class _ArgError(Exception):
    pass


def main(argv=None) -> int:
    ap = build_parser()
    ap.error = lambda msg: (_ for _ in ()).throw(_ArgError(msg))  # usage problems are config errors
    try:
        args = ap.parse_args(argv)
    except _ArgError as exc:
        print(f"softdress: usage error: {exc}", file=sys.stderr)
        return EXIT_CONFIG

    try:
        text = args.config.read_text()
    except OSError as exc:
        print(f"softdress: cannot read config: {exc}", file=sys.stderr)
        return EXIT_IO

    try:
        cfg = with_overrides(parse_config(text), lambda_list=args.lambda_list, offshell=args.offshell,
                             preset=args.preset, workers=args.workers, format=args.format)
    except ConfigError as exc:
        print(f"softdress: config error [{exc.kind}]: {exc}", file=sys.stderr)
        return EXIT_CONFIG

    try:
        table = run(args.subcommand, cfg)
    except SoftDressError as exc:
        print(f"softdress {args.subcommand}: {exc}", file=sys.stderr)
        return EXIT_NUMERIC

    data = write_output(table, cfg.format)
    out = args.out or (Path(cfg.path) if cfg.path else None)
    try:
        if out is None:
            sys.stdout.write(data.decode())
        else:
            out.write_bytes(data)
        if args.plot is not None:
            from softdress.plotting import PLOTTABLE, render

            if args.subcommand in PLOTTABLE:
                render(table, args.subcommand, args.plot)
            else:
                print(f"softdress: no figure for `{args.subcommand}`; --plot ignored", file=sys.stderr)
    except OSError as exc:
        print(f"softdress: write failed: {exc}", file=sys.stderr)
        return EXIT_IO
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
