"""Standalone SVG Gantt rendering of a schedule.

One horizontal band per machine (operation bars labeled ``job.op``) and
one per transbot (leg bars labeled with their endpoint stations).  Gaps
between a cross-zone transfer's legs would show handoff waits; with the
fixed-length transfer semantics the legs always touch.  Output is
deterministic for a given instance/schedule pair.
"""

from __future__ import annotations

from .model import Instance, Schedule

_BAND_HEIGHT = 34
_BAR_HEIGHT = 24
_LEFT_MARGIN = 90
_TOP_MARGIN = 30
_MIN_WIDTH = 640

_OP_FILL = "#7aa6c2"
_LEG_FILL = "#c2a97a"


def _esc(text: str) -> str:
    return (
        text.replace("&", "&amp;").replace("<", "&lt;").replace(">", "&gt;")
    )


def render_svg(instance: Instance, schedule: Schedule) -> str:
    makespan = max(
        [a.end for a in schedule.op_assign.values()]
        + [leg.end for legs in schedule.transfer_assign.values() for leg in legs],
        default=0,
    )
    scale = max((_MIN_WIDTH - _LEFT_MARGIN - 20) / max(makespan, 1), 4.0)

    bands: list[tuple[str, list[tuple[int, int, str, str]]]] = []
    for m in instance.machine_ids:
        bars = []
        for op_id, a in sorted(schedule.op_assign.items()):
            if a.machine == m:
                op = instance.operation(op_id)
                bars.append((a.start, a.end, f"{op.job}.{op.order_index}", _OP_FILL))
        bands.append((f"M{m}", bars))
    for bot in instance.transbots:
        bars = []
        for op_id, legs in sorted(schedule.transfer_assign.items()):
            for leg in legs:
                if leg.transbot == bot.id:
                    bars.append(
                        (leg.start, leg.end, f"{leg.pickup}→{leg.dropoff}", _LEG_FILL)
                    )
        bands.append((f"V{bot.id}", bars))

    width = max(_MIN_WIDTH, int(_LEFT_MARGIN + makespan * scale + 20))
    height = _TOP_MARGIN + _BAND_HEIGHT * len(bands) + 30
    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" '
        f'font-family="monospace" font-size="11">',
        f'<rect width="{width}" height="{height}" fill="white"/>',
    ]
    for row, (label, bars) in enumerate(bands):
        y = _TOP_MARGIN + row * _BAND_HEIGHT
        parts.append(
            f'<line x1="{_LEFT_MARGIN}" y1="{y + _BAND_HEIGHT}" x2="{width - 10}" '
            f'y2="{y + _BAND_HEIGHT}" stroke="#ddd"/>'
        )
        parts.append(
            f'<text x="10" y="{y + _BAND_HEIGHT - 12}">{_esc(label)}</text>'
        )
        for start, end, text, fill in sorted(bars):
            x = _LEFT_MARGIN + start * scale
            w = max((end - start) * scale, 2)
            by = y + (_BAND_HEIGHT - _BAR_HEIGHT) / 2
            parts.append(
                f'<rect x="{x:.1f}" y="{by:.1f}" width="{w:.1f}" '
                f'height="{_BAR_HEIGHT}" fill="{fill}" stroke="#555"/>'
            )
            parts.append(
                f'<text x="{x + 3:.1f}" y="{by + _BAR_HEIGHT - 8:.1f}">{_esc(text)}</text>'
            )
    axis_y = _TOP_MARGIN + _BAND_HEIGHT * len(bands) + 16
    parts.append(f'<text x="{_LEFT_MARGIN}" y="{axis_y}">0</text>')
    if makespan:
        parts.append(
            f'<text x="{_LEFT_MARGIN + makespan * scale - 10:.1f}" y="{axis_y}">'
            f"{makespan}</text>"
        )
    parts.append("</svg>")
    return "\n".join(parts) + "\n"
