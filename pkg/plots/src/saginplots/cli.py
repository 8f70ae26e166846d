"""Command line front end: sagin-plots --csv FILE --figure fig8 --out FILE.png"""

from __future__ import annotations

import argparse
import sys

from .figures import Figure, FigureSpec, render


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(2)


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="sagin-plots",
                description="Render a figure from a sagin-sim sweep CSV.")
    p.add_argument("--csv", required=True, help="input sweep CSV")
    p.add_argument("--figure", required=True,
                   choices=[f.value for f in Figure],
                   help="which figure to render")
    p.add_argument("--out", required=True, help="output image path")
    return p


def cli(argv) -> int:
    try:
        ns = build_parser().parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    spec = FigureSpec(ns.csv, Figure(ns.figure), ns.out)
    try:
        out = render(spec)
    except (OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    print(f"wrote {out}")
    return 0


def main() -> None:
    sys.exit(cli(sys.argv[1:]))


if __name__ == "__main__":
    main()
