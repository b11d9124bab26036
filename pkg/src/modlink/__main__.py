"""Command line: ``python -m modlink run <worksheet>``."""

from __future__ import annotations

import argparse
import sys

from .shell import WorksheetError, corpus_worksheets, env_defaults, parse_worksheet, read_worksheet, run


def _window(text: str):
    lo, sep, hi = text.partition("..")
    if not sep:
        raise argparse.ArgumentTypeError("window must look like lo..hi")
    try:
        lo, hi = int(lo), int(hi)
    except ValueError:
        raise argparse.ArgumentTypeError("window bounds must be integers") from None
    if lo > hi:
        raise argparse.ArgumentTypeError("window is empty")
    return lo, hi


def build_parser() -> argparse.ArgumentParser:
    defaults = env_defaults()
    ap = argparse.ArgumentParser(prog="modlink", description="Run linkage worksheets.")
    sub = ap.add_subparsers(dest="command", required=True)
    r = sub.add_parser("run", help="run a worksheet file (or corpus:<name>)")
    r.add_argument("file")
    r.add_argument("--seed", type=int, default=0)
    r.add_argument("--max-degree", type=int, default=defaults["max_degree"])
    r.add_argument("--max-basis", type=int, default=defaults["max_basis"])
    r.add_argument("--window", type=_window, default=(-2, 8))
    r.add_argument("--report", choices=("text", "machine"), default="text")
    r.add_argument("--jobs", type=int, default=1)
    sub.add_parser("corpus", help="list the shipped worksheets")
    c = sub.add_parser("check", help="parse a worksheet and print it back")
    c.add_argument("file")
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    if args.command == "corpus":
        for name in corpus_worksheets():
            print(f"corpus:{name}")
        return 0
    try:
        ws = parse_worksheet(read_worksheet(args.file))
    except (OSError, KeyError) as e:
        print(f"cannot read {args.file}: {e}", file=sys.stderr)
        return 2
    except WorksheetError as e:
        print(f"{args.file}: {e}", file=sys.stderr)
        return 2
    if args.command == "check":
        sys.stdout.write(ws.render())
        return 0
    report = run(ws, seed=args.seed, window=args.window, max_degree=args.max_degree,
                 max_basis=args.max_basis, jobs=max(1, args.jobs))
    sys.stdout.write(report.machine() + "\n" if args.report == "machine" else report.text())
    return report.exit_code


if __name__ == "__main__":
    sys.exit(main())
