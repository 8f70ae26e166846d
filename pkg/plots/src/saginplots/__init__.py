"""Offline figure rendering for sagin-sim sweep CSVs."""

from .figures import Figure, FigureSpec, build_figure, read_csv_rows, render

__all__ = ["Figure", "FigureSpec", "build_figure", "read_csv_rows", "render"]
