"""CLI: render a harness CSV into a panel image.

Exit codes: 0 success, 1 schema or I/O failure (the message names the
offending column), 64 usage errors.
"""

from __future__ import annotations

import argparse
import sys
from typing import Optional, Sequence

from .render import FigureSpec, render
from .schema import SchemaError

EXIT_OK = 0
EXIT_DATA = 1
EXIT_USAGE = 64


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _build_parser() -> _Parser:
    p = _Parser(prog="so3figs",
                description="Panel plots from attitude-run CSV exports.")
    sub = p.add_subparsers(dest="command", required=True)
    r = sub.add_parser("render", help="render one CSV to an image")
    r.add_argument("--csv", required=True, help="input time-series CSV")
    r.add_argument("--out", required=True,
                   help="output image path (extension picks the format)")
    r.add_argument("--dpi", type=int, default=150)
    return p


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = _build_parser().parse_args(argv)
    spec = FigureSpec(csv_path=args.csv, out_path=args.out, dpi=args.dpi)
    try:
        out = render(spec)
    except SchemaError as err:
        print(f"so3figs: schema error in {args.csv}: {err}", file=sys.stderr)
        return EXIT_DATA
    except OSError as err:
        print(f"so3figs: {err}", file=sys.stderr)
        return EXIT_DATA
    print(f"wrote {out}")
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
