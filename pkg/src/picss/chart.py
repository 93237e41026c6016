"""Deterministic SVG charts of spectral-sequence pages in Adams coordinates.

Chart coordinates are (x, y) = (t - s, s), matching the figures the pages
reproduce: a d_r arrow moves one column left and r rows up.  Glyphs:
k-summands are circles (one per basis class, clustered), finite groups are
squares labeled with their invariant factors, the units line gets a
diamond, and entries outside the computed range render as question marks.
Output is byte-stable for fixed input: all floats are formatted with two
decimals and everything is emitted in sorted order.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field

CELL = 48.0
PAD = 56.0
GLYPH_R = 4.0


@dataclass(frozen=True)
class Glyph:
    x: int
    y: int
    kind: str          # circle | square | diamond | question
    count: int = 1
    label: str = ""
    hover: str = ""


@dataclass(frozen=True)
class Arrow:
    x1: int
    y1: int
    x2: int
    y2: int
    page: int


@dataclass
class ChartSpec:
    title: str
    x_range: tuple
    y_range: tuple
    glyphs: list = dc_field(default_factory=list)
    arrows: list = dc_field(default_factory=list)
    legend: list = dc_field(default_factory=list)


def chart_from_page(page, diff=None, x_range=(-8, 8), y_range=None) -> ChartSpec:
    """Chart of an engine page (and optionally its differential)."""
    if y_range is None:
        if page.variant in ("hs", "hfpss"):
            y_range = (0, min(page.window.s_max, 8))
        else:
            y_range = (max(page.window.s_min, -8), min(page.window.s_max, 8))
    spec = ChartSpec(
        title=f"{page.meta.get('group', '?')} over {page.meta.get('field', '?')}"
              f" - {page.variant} E_{page.r}",
        x_range=x_range, y_range=y_range,
        legend=["circle: k-summand",
                f"arrows: d_{page.r}" if diff else "no differentials drawn"])
    for (s, t) in sorted(page.entries):
        entry = page.entries[(s, t)]
        x, y = t - s, s
        if entry.dim and _inside(x, y, x_range, y_range):
            spec.glyphs.append(Glyph(
                x=x, y=y, kind="circle", count=entry.dim,
                hover=", ".join(entry.labels(page.algebra))))
    if diff:
        for (s, t) in sorted(diff.blocks):
            block = diff.blocks[(s, t)]
            if not block or not any(any(row) for row in block):
                continue
            x1, y1 = t - s, s
            s2, t2 = s + diff.r, t + diff.r - 1
            x2, y2 = t2 - s2, s2
            if _inside(x1, y1, x_range, y_range) and _inside(x2, y2, x_range, y_range):
                spec.arrows.append(Arrow(x1, y1, x2, y2, diff.r))
    return spec


def chart_from_pic(pic_page, x_range=(-4, 8), y_range=(0, 8)) -> ChartSpec:
    """Chart of a Picard page: squares, diamonds and question marks."""
    spec = ChartSpec(
        title=f"pic {pic_page.group} over {pic_page.field} - E_{pic_page.r}",
        x_range=x_range, y_range=y_range,
        legend=["circle: k-summand", "square: finite group",
                "diamond: units / units quotient", "?: not computed"])
    for (s, t) in sorted(pic_page.entries):
        entry = pic_page.entries[(s, t)]
        x, y = t - s, s
        if not _inside(x, y, x_range, y_range):
            continue
        if entry.kind == "vector":
            if entry.dim:
                spec.glyphs.append(Glyph(x, y, "circle", count=entry.dim,
                                         hover=", ".join(entry.labels)))
        elif entry.kind == "finite":
            if not entry.group.is_trivial:
                spec.glyphs.append(Glyph(x, y, "square", label=str(entry.group),
                                         hover=entry.note))
        elif entry.kind in ("units", "units_quotient"):
            spec.glyphs.append(Glyph(x, y, "diamond", label=str(entry.group),
                                     hover=entry.note))
        elif entry.kind == "unknown":
            spec.glyphs.append(Glyph(x, y, "question"))
    return spec


def _inside(x, y, x_range, y_range):
    return x_range[0] <= x <= x_range[1] and y_range[0] <= y <= y_range[1]


def _fmt(v: float) -> str:
    return f"{v:.2f}"


def _cluster_offsets(count: int):
    """Deterministic little grid of offsets for a multi-circle cell."""
    if count == 1:
        return [(0.0, 0.0)]
    per_row = 2 if count <= 4 else 3
    step = 2.6 * GLYPH_R
    offsets = []
    for i in range(count):
        row, col = divmod(i, per_row)
        offsets.append((col * step, row * step))
    cols = min(count, per_row)
    rows = (count + per_row - 1) // per_row
    cx = (cols - 1) * step / 2
    cy = (rows - 1) * step / 2
    return [(ox - cx, oy - cy) for ox, oy in offsets]


def emit_svg(spec: ChartSpec) -> str:
    """Render a chart specification to a deterministic SVG document."""
    x0, x1 = spec.x_range
    y0, y1 = spec.y_range
    width = PAD * 2 + (x1 - x0) * CELL
    height = PAD * 2 + (y1 - y0) * CELL

    def px(x):
        return PAD + (x - x0) * CELL

    def py(y):
        return height - PAD - (y - y0) * CELL

    out = []
    out.append('<?xml version="1.0" encoding="UTF-8"?>')
    out.append(
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{_fmt(width)}" '
        f'height="{_fmt(height + 18 * (1 + len(spec.legend)))}" '
        f'font-family="monospace" font-size="11">')
    out.append('<defs><marker id="arr" viewBox="0 0 10 10" refX="9" refY="5" '
               'markerWidth="5" markerHeight="5" orient="auto-start-reverse">'
               '<path d="M 0 0 L 10 5 L 0 10 z"/></marker></defs>')
    out.append(f'<rect width="100%" height="100%" fill="white"/>')
    out.append(f'<text x="{_fmt(PAD)}" y="16">{_escape(spec.title)}</text>')
    # grid
    for x in range(x0, x1 + 1):
        out.append(f'<line x1="{_fmt(px(x))}" y1="{_fmt(py(y0))}" '
                   f'x2="{_fmt(px(x))}" y2="{_fmt(py(y1))}" '
                   'stroke="#dddddd" stroke-width="0.5"/>')
        out.append(f'<text x="{_fmt(px(x) - 4)}" y="{_fmt(py(y0) + 16)}">{x}</text>')
    for y in range(y0, y1 + 1):
        out.append(f'<line x1="{_fmt(px(x0))}" y1="{_fmt(py(y))}" '
                   f'x2="{_fmt(px(x1))}" y2="{_fmt(py(y))}" '
                   'stroke="#dddddd" stroke-width="0.5"/>')
        out.append(f'<text x="{_fmt(px(x0) - 26)}" y="{_fmt(py(y) + 4)}">{y}</text>')
    # arrows under glyphs
    for a in sorted(spec.arrows, key=lambda a: (a.y1, a.x1, a.y2, a.x2)):
        out.append(
            f'<line x1="{_fmt(px(a.x1))}" y1="{_fmt(py(a.y1))}" '
            f'x2="{_fmt(px(a.x2))}" y2="{_fmt(py(a.y2))}" '
            'stroke="#cc2222" stroke-width="1.2" marker-end="url(#arr)"/>')
    for g in sorted(spec.glyphs, key=lambda g: (g.y, g.x, g.kind)):
        cx, cy = px(g.x), py(g.y)
        title = f'<title>{_escape(g.hover)}</title>' if g.hover else ""
        if g.kind == "circle":
            for ox, oy in _cluster_offsets(g.count):
                out.append(
                    f'<circle cx="{_fmt(cx + ox)}" cy="{_fmt(cy + oy)}" '
                    f'r="{_fmt(GLYPH_R)}" fill="none" stroke="black" '
                    f'stroke-width="1.1">{title}</circle>')
        elif g.kind == "square":
            half = GLYPH_R + 1.5
            out.append(
                f'<rect x="{_fmt(cx - half)}" y="{_fmt(cy - half)}" '
                f'width="{_fmt(2 * half)}" height="{_fmt(2 * half)}" '
                f'fill="black">{title}</rect>')
            if g.label:
                out.append(f'<text x="{_fmt(cx + half + 2)}" '
                           f'y="{_fmt(cy + 4)}">{_escape(g.label)}</text>')
        elif g.kind == "diamond":
            half = GLYPH_R + 2
            pts = f"{_fmt(cx)},{_fmt(cy - half)} {_fmt(cx + half)},{_fmt(cy)} " \
                  f"{_fmt(cx)},{_fmt(cy + half)} {_fmt(cx - half)},{_fmt(cy)}"
            out.append(f'<polygon points="{pts}" fill="black">{title}</polygon>')
            if g.label:
                out.append(f'<text x="{_fmt(cx + half + 2)}" '
                           f'y="{_fmt(cy + 4)}">{_escape(g.label)}</text>')
        elif g.kind == "question":
            out.append(f'<text x="{_fmt(cx - 3)}" y="{_fmt(cy + 4)}">?</text>')
    # legend block
    ly = height + 12
    for i, line in enumerate(spec.legend):
        out.append(f'<text x="{_fmt(PAD)}" y="{_fmt(ly + 14 * i)}">'
                   f'{_escape(line)}</text>')
    out.append("</svg>")
    return "\n".join(out) + "\n"


def _escape(text: str) -> str:
    return (text.replace("&", "&amp;").replace("<", "&lt;")
            .replace(">", "&gt;").replace('"', "&quot;"))


def chart_from_json(data: dict, x_range=(-8, 8), y_range=None) -> ChartSpec:
    """Chart straight from a serialized page (cache hit path)."""
    variant = data.get("variant", "?")
    if y_range is None:
        y_range = (0, 8) if variant in ("hs", "hfpss") else (-8, 8)
    spec = ChartSpec(
        title=f"{data.get('meta', {}).get('group', '?')} over "
              f"{data.get('meta', {}).get('field', '?')} - {variant} "
              f"E_{data.get('r')}",
        x_range=x_range, y_range=y_range,
        legend=["circle: k-summand"])
    for e in data.get("entries", ()):
        s, t = e["s"], e["t"]
        x, y = t - s, s
        if _inside(x, y, x_range, y_range) and e["basis"]:
            spec.glyphs.append(Glyph(x=x, y=y, kind="circle",
                                     count=len(e["basis"]),
                                     hover=", ".join(e["basis"])))
    r = data.get("r", 2)
    for d in data.get("differentials", ()):
        s, t = d["s"], d["t"]
        x1, y1 = t - s, s
        s2, t2 = s + r, t + r - 1
        x2, y2 = t2 - s2, s2
        if _inside(x1, y1, x_range, y_range) and _inside(x2, y2, x_range, y_range):
            spec.arrows.append(Arrow(x1, y1, x2, y2, r))
    return spec
