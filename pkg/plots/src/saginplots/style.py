"""Fixed plot style so repeated renders of the same CSV are byte-identical.

Everything visual lives here: rc overrides, per-scheme colors/markers, and
the fallback cycle for scheme tokens this package does not know about.
"""

# rc overrides applied around every figure build. Pinning font, geometry and
# dpi keeps the rasterized output independent of the host's matplotlibrc.
RC = {
    "font.family": "DejaVu Sans",
    "font.size": 10.0,
    "figure.figsize": (6.4, 4.2),
    "figure.dpi": 100.0,
    "savefig.dpi": 150.0,
    "axes.grid": True,
    "grid.alpha": 0.35,
    "grid.linestyle": ":",
    "lines.linewidth": 1.6,
    "lines.markersize": 5.0,
    "legend.framealpha": 0.9,
    "legend.fontsize": 9.0,
}

# scheme token in the CSV -> (legend label, color, marker)
SCHEME_STYLE = {
    "amud": ("AMUD-SAGIN", "tab:blue", "o"),
    "egc": ("EGC-SAGIN", "tab:orange", "s"),
    "leo-gbs": ("LEO-GBS", "tab:green", "^"),
    "gbs-only": ("GBS only", "tab:red", "v"),
}

# draw order for the known schemes; unknown tokens follow alphabetically
SCHEME_ORDER = ("amud", "egc", "leo-gbs", "gbs-only")

# style cycle for scheme tokens not in SCHEME_STYLE
EXTRA_STYLE = (
    ("tab:purple", "D"),
    ("tab:brown", "P"),
    ("tab:gray", "X"),
    ("tab:olive", "*"),
)
