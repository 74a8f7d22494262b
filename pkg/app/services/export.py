"""
CSV and SVG output for profile sweeps
"""

import csv
import logging
from pathlib import Path

from app.exceptions import DomainError
from app.services.geometry import NotchParam
from app.services.profile import ProfilePoint, f, regime
from app.services.solvers import Breakpoints, get_breakpoints, transition_T

logger: logging.Logger = logging.getLogger(__name__)

CSV_HEADER: tuple[str, ...] = ("t", "perimeter", "minimizers", "theta")

SVG_WIDTH: int = 640
SVG_HEIGHT: int = 400
SVG_MARGIN: int = 50

_DASH = {"guide": "6 4", "axis": ""}


def _num(value: float) -> str:
    return f"{value:.12g}"


def profile_rows(
    notch: NotchParam | float, n: int, bp: Breakpoints | None = None
) -> list[ProfilePoint]:
    """f_a on the grid t_i = i (1 - a^2) / (2n), i = 1..n"""
    if n < 2:
        raise DomainError(f"need at least 2 grid points, got {n}")
    bp = bp or get_breakpoints()
    notch = NotchParam.of(notch)
    step = notch.half_area / n
    return [f(notch, i * step, bp) for i in range(1, n + 1)]


def write_csv(rows: list[ProfilePoint], path: Path) -> None:
    """Write rows with header t,perimeter,minimizers,theta"""
    with open(path, "w", encoding="utf-8", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(CSV_HEADER)
        for row in rows:
            theta = "" if row.theta is None else _num(row.theta)
            writer.writerow([_num(row.t), _num(row.perimeter), row.minimizer_label, theta])
    logger.info(f"Wrote {len(rows)} rows to {path}")


def breakpoint_guides(
    notch: NotchParam | float, bp: Breakpoints | None = None
) -> list[tuple[str, float]]:
    """Labelled t-positions drawn as dashed guides"""
    bp = bp or get_breakpoints()
    notch = NotchParam.of(notch)
    a = notch.a
    guides = [("T", transition_T(a, bp))]
    if bp.alpha <= a <= bp.beta:
        guides.append(("tau", bp.tau(a)))
    if a >= bp.gamma:
        guides.append(("a(1-a)", notch.s4_min_area))
    guides.append(("(1-a^2)/2", notch.half_area))
    return guides


def render_svg(
    notch: NotchParam | float, rows: list[ProfilePoint], bp: Breakpoints | None = None
) -> str:
    """
    SVG 1.1 plot of a sweep

    Draws the axes, the profile polyline, one dashed vertical guide per
    breakpoint and a title naming the regime.
    """
    if not rows:
        raise DomainError("cannot plot an empty sweep")
    bp = bp or get_breakpoints()
    notch = NotchParam.of(notch)
    x_max = notch.half_area
    y_max = 1.05 * max(row.perimeter for row in rows)
    inner_w = SVG_WIDTH - 2 * SVG_MARGIN
    inner_h = SVG_HEIGHT - 2 * SVG_MARGIN

    def px(t: float) -> float:
        return SVG_MARGIN + inner_w * t / x_max

    def py(p: float) -> float:
        return SVG_HEIGHT - SVG_MARGIN - inner_h * p / y_max

    def line(x1: float, y1: float, x2: float, y2: float, style: str, color: str) -> str:
        dash = _DASH[style]
        dash_attr = f' stroke-dasharray="{dash}"' if dash else ""
        return (
            f'<line x1="{x1:.2f}" y1="{y1:.2f}" x2="{x2:.2f}" y2="{y2:.2f}" '
            f'stroke="{color}" stroke-width="1"{dash_attr} />'
        )

    reg = regime(notch.a, bp)
    base = SVG_HEIGHT - SVG_MARGIN
    parts = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{SVG_WIDTH}" '
        f'height="{SVG_HEIGHT}" viewBox="0 0 {SVG_WIDTH} {SVG_HEIGHT}">',
        f'<rect width="{SVG_WIDTH}" height="{SVG_HEIGHT}" fill="white" />',
        f'<text x="{SVG_WIDTH / 2:.2f}" y="{SVG_MARGIN / 2:.2f}" text-anchor="middle" '
        f'font-family="sans-serif" font-size="14">f_a(t), a = {notch.a:.6g}, '
        f"regime {reg.value} ({reg.name.lower()})</text>",
        line(SVG_MARGIN, base, SVG_WIDTH - SVG_MARGIN, base, "axis", "black"),
        line(SVG_MARGIN, base, SVG_MARGIN, SVG_MARGIN, "axis", "black"),
        f'<text x="{SVG_WIDTH - SVG_MARGIN:.2f}" y="{base + 30:.2f}" text-anchor="end" '
        f'font-family="sans-serif" font-size="12">t</text>',
        f'<text x="{SVG_MARGIN - 10:.2f}" y="{SVG_MARGIN:.2f}" text-anchor="end" '
        f'font-family="sans-serif" font-size="12">P</text>',
    ]
    for label, t in breakpoint_guides(notch, bp):
        x = px(t)
        parts.append(line(x, base, x, SVG_MARGIN, "guide", "#888888"))
        parts.append(
            f'<text x="{x:.2f}" y="{base + 15:.2f}" text-anchor="middle" '
            f'font-family="sans-serif" font-size="10">{label}</text>'
        )
    points = " ".join(f"{px(row.t):.2f},{py(row.perimeter):.2f}" for row in rows)
    parts.append(
        f'<polyline points="{points}" fill="none" stroke="#1f4e9c" stroke-width="2" />'
    )
    parts.append("</svg>")
    return "\n".join(parts) + "\n"


def write_svg(
    notch: NotchParam | float,
    rows: list[ProfilePoint],
    path: Path,
    bp: Breakpoints | None = None,
) -> None:
    path.write_text(render_svg(notch, rows, bp), encoding="utf-8")
    logger.info(f"Wrote plot to {path}")
