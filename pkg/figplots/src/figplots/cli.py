"""Console entry points: render_channel <csv> <png>, render_rates <csv...> <png>."""
from __future__ import annotations

import argparse
import sys

from .render import FigureSpec, RenderError, render


def main_channel(argv=None) -> int:
    parser = argparse.ArgumentParser(
        prog="render_channel",
        description="Plot effective channel weights from a p-grid CSV.",
    )
    parser.add_argument("csv")
    parser.add_argument("output", help="image file to write")
    parser.add_argument("--linear-y", action="store_true")
    parser.add_argument("--log-x", action="store_true")
    parser.add_argument("--title", default="")
    args = parser.parse_args(argv)
    spec = FigureSpec(
        inputs=[args.csv],
        kind="channel-curves",
        output=args.output,
        log_x=args.log_x,
        log_y=not args.linear_y,
        title=args.title,
    )
    return _run(spec)


def main_rates(argv=None) -> int:
    parser = argparse.ArgumentParser(
        prog="render_rates",
        description="Plot raw and secret key rates versus distance; one series per CSV.",
    )
    parser.add_argument("csvs", nargs="+", metavar="csv",
                        help="input CSVs followed by the output image file")
    parser.add_argument("--label", action="append", default=[],
                        help="series label (repeat per input)")
    parser.add_argument("--title", default="")
    args = parser.parse_args(argv)
    if len(args.csvs) < 2:
        parser.error("need at least one input CSV and an output file")
    spec = FigureSpec(
        inputs=args.csvs[:-1],
        kind="rate-panel",
        output=args.csvs[-1],
        labels=args.label,
        title=args.title,
    )
    return _run(spec)


def _run(spec: FigureSpec) -> int:
    try:
        render(spec)
    except RenderError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    return 0


if __name__ == "__main__":
    sys.exit(main_channel())
