"""SVG rendering of placements, sketches and class diffs.

Output is plain SVG 1.1 text built deterministically: fixed float
formatting, spaces emitted in declaration order, no timestamps.  The
vertical axis is flipped so y grows upward as in the plans themselves.
"""

from __future__ import annotations

from .enumerate import diff_topologies, replay

_FILL = {
    "room": "#e8eef7",
    "corridor": "#f6eacd",
    "stairs": "#e2e2e2",
}
_STROKE = "#2b3a4a"
_HILITE = "#c0392b"


def _f(v):
    return f"{v:.2f}"


def _text(x, y, s, size, anchor="middle", color="#1c2833"):
    return (
        f'<text x="{_f(x)}" y="{_f(y)}" font-size="{_f(size)}" text-anchor="{anchor}" '
        f'font-family="sans-serif" fill="{color}">{s}</text>'
    )


def _rect(x, y, w, h, fill, stroke, sw, opacity=None):
    op = f' fill-opacity="{opacity}"' if opacity is not None else ""
    return (
        f'<rect x="{_f(x)}" y="{_f(y)}" width="{_f(w)}" height="{_f(h)}" '
        f'fill="{fill}"{op} stroke="{stroke}" stroke-width="{_f(sw)}"/>'
    )


def _line(x1, y1, x2, y2, stroke, sw):
    return (
        f'<line x1="{_f(x1)}" y1="{_f(y1)}" x2="{_f(x2)}" y2="{_f(y2)}" '
        f'stroke="{stroke}" stroke-width="{_f(sw)}"/>'
    )


def _stairs_marks(out, bx, by, bw, bh, climb, s):
    """Tread lines across the climb axis plus a direction arrow."""
    horizontal = climb in (0, 180)
    n = 5
    for i in range(1, n):
        t = i / n
        if horizontal:
            x = bx + t * bw
            out.append(_line(x, by + 0.12 * bh, x, by + 0.88 * bh, "#9aa4ad", s * 0.03))
        else:
            y = by + t * bh
            out.append(_line(bx + 0.12 * bw, y, bx + 0.88 * bw, y, "#9aa4ad", s * 0.03))
    cx, cy = bx + bw / 2, by + bh / 2
    ah = min(bw, bh) * 0.18
    if climb == 0:
        pts = [(bx + 0.15 * bw, cy), (bx + 0.85 * bw, cy)]
        tip = [(bx + 0.85 * bw, cy), (bx + 0.85 * bw - ah, cy - ah), (bx + 0.85 * bw - ah, cy + ah)]
    elif climb == 180:
        pts = [(bx + 0.85 * bw, cy), (bx + 0.15 * bw, cy)]
        tip = [(bx + 0.15 * bw, cy), (bx + 0.15 * bw + ah, cy - ah), (bx + 0.15 * bw + ah, cy + ah)]
    elif climb == 90:
        pts = [(cx, by + 0.85 * bh), (cx, by + 0.15 * bh)]
        tip = [(cx, by + 0.15 * bh), (cx - ah, by + 0.15 * bh + ah), (cx + ah, by + 0.15 * bh + ah)]
    else:
        pts = [(cx, by + 0.15 * bh), (cx, by + 0.85 * bh)]
        tip = [(cx, by + 0.85 * bh), (cx - ah, by + 0.85 * bh - ah), (cx + ah, by + 0.85 * bh - ah)]
    out.append(_line(pts[0][0], pts[0][1], pts[1][0], pts[1][1], "#5d6d7e", s * 0.05))
    d = " ".join(f"{_f(x)},{_f(y)}" for x, y in tip)
    out.append(f'<polygon points="{d}" fill="#5d6d7e"/>')


def _contour_spans(problem):
    spans = []
    for c in problem.contours:
        el = c.length if isinstance(c.length, int) else (c.length or [1, 1])[-1] or 1
        ew = c.width if isinstance(c.width, int) else (c.width or [1, 1])[-1] or 1
        spans.append((el, ew))
    return spans


def render_solution(problem, solution, highlight=(), scale=28.0, translucent=False, caption=None):
    """One placement (name -> box dict) as an SVG document."""
    spans = _contour_spans(problem)
    margin = scale
    gap = scale * 1.5
    xoff = []
    x = margin
    hmax = 0
    for el, ew in spans:
        xoff.append(x)
        x += el * scale + gap
        hmax = max(hmax, ew * scale)
    width = x - gap + margin
    top = margin * (1.8 if caption else 1.0)
    height = top + hmax + margin
    out = [
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" '
        f'width="{_f(width)}" height="{_f(height)}" viewBox="0 0 {_f(width)} {_f(height)}">',
        f'<rect x="0" y="0" width="{_f(width)}" height="{_f(height)}" fill="#ffffff"/>',
    ]
    if caption:
        out.append(_text(width / 2, margin * 0.9, caption, scale * 0.5))

    def place(fl, x1, y1, x2, y2):
        el, ew = spans[fl]
        bx = xoff[fl] + x1 * scale
        by = top + (ew - y2) * scale
        return bx, by, (x2 - x1) * scale, (y2 - y1) * scale

    for fl, (el, ew) in enumerate(spans):
        bx, by, bw, bh = place(fl, 0, 0, el, ew)
        out.append(_rect(bx, by, bw, bh, "#ffffff", _STROKE, scale * 0.09))
    for sdef in problem.spaces:
        box = solution.get(sdef.name)
        if box is None:
            continue
        bx, by, bw, bh = place(sdef.floor, box["x1"], box["y1"], box["x2"], box["y2"])
        hot = sdef.name in highlight
        fill = _FILL.get(sdef.kind, _FILL["room"])
        stroke = _HILITE if hot else _STROKE
        out.append(
            _rect(bx, by, bw, bh, fill, stroke, scale * (0.09 if hot else 0.045),
                  opacity=0.6 if translucent else None)
        )
        if sdef.kind == "stairs" and "climb" in box:
            _stairs_marks(out, bx, by, bw, bh, box["climb"], scale)
        size = min(scale * 0.42, bh * 0.5, bw / max(1, len(sdef.name)) * 1.6)
        if size >= scale * 0.18:
            out.append(_text(bx + bw / 2, by + bh / 2 + size * 0.35, sdef.name, size))
    out.append("</svg>")
    return "\n".join(out) + "\n"


def _midpoint_boxes(layout):
    sol = {}
    for sp in layout.spaces:
        x1 = (sp.x1.lb + sp.x1.ub) // 2
        y1 = (sp.y1.lb + sp.y1.ub) // 2
        l = (sp.length.lb + sp.length.ub) // 2
        w = (sp.width.lb + sp.width.ub) // 2
        box = {"x1": x1, "y1": y1, "x2": x1 + l, "y2": y1 + w}
        if sp.config is not None and sp.config.instantiated:
            box["climb"] = sp.config.value[0]
        sol[sp.name] = box
    return sol


def render_sketch(problem, topology, highlight=(), scale=28.0, caption=None):
    """Quick look at a class: every space at its domain midpoint.

    The sketch is drawn before geometric optimization, so boxes may
    overlap; translucent fills keep all of them readable.
    """
    lay = replay(problem, topology.signature)
    if lay is None:
        raise ValueError("topology signature is inconsistent with the problem")
    return render_solution(
        problem,
        _midpoint_boxes(lay),
        highlight=highlight,
        scale=scale,
        translucent=True,
        caption=caption,
    )


def _diff_names(labels, sig_a, sig_b):
    names = set()
    for lab, va, vb in zip(labels, sig_a, sig_b):
        if va == vb:
            continue
        if lab.startswith("rel:"):
            names.update(lab[4:].split("/"))
        elif lab.startswith("side:"):
            names.add(lab.split(":", 2)[2])
    return names


def render_diff(problem, topo_a, topo_b, scale=28.0):
    """Two class sketches stacked, differing spaces highlighted."""
    changed = diff_topologies(topo_a, topo_b)
    names = _diff_names(topo_a.labels, topo_a.signature, topo_b.signature)
    cap_a = f"class {topo_a.index}"
    cap_b = f"class {topo_b.index} ({len(changed)} changed)"
    svg_a = render_sketch(problem, topo_a, highlight=names, scale=scale, caption=cap_a)
    svg_b = render_sketch(problem, topo_b, highlight=names, scale=scale, caption=cap_b)

    def body(svg):
        lines = svg.strip().split("\n")
        head = lines[0]
        w = float(head.split('width="')[1].split('"')[0])
        h = float(head.split('height="')[1].split('"')[0])
        return lines[1:-1], w, h

    ba, wa, ha = body(svg_a)
    bb, wb, hb = body(svg_b)
    width = max(wa, wb)
    height = ha + hb
    out = [
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" '
        f'width="{_f(width)}" height="{_f(height)}" viewBox="0 0 {_f(width)} {_f(height)}">',
        "<g>",
        *ba,
        "</g>",
        f'<g transform="translate(0 {_f(ha)})">',
        *bb,
        "</g>",
        "</svg>",
    ]
    return "\n".join(out) + "\n"
