"""Static SVG figures for bodies and slice families."""
from __future__ import annotations

from html import escape

from .io import boundary_string
from .nok import NokBody, SliceRegion
from .surd import QuadSurd

W, H, PAD = 480, 360, 40


def num(x) -> str:
    return f"{float(x):.12g}"


def _label(x) -> str:
    x = QuadSurd.coerce(x)
    if x.is_rational:
        return str(x.a)
    c = x.minimal_polynomial()
    return f"{x} (root of t^2{float(c[1]):+g}t{float(c[0]):+g})"


def _frame(width, height, inner: str, title: str) -> str:
    return (
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" '
        f'viewBox="0 0 {width} {height}">\n'
        f'<title>{escape(title)}</title>\n'
        f'<rect width="{width}" height="{height}" fill="white"/>\n'
        f"{inner}</svg>\n"
    )


def _scaler(xmax, ymax, x0=PAD, y0=H - PAD, w=W - 2 * PAD, h=H - 2 * PAD):
    xmax, ymax = float(xmax) or 1.0, float(ymax) or 1.0
    return lambda x, y: (x0 + w * float(x) / xmax, y0 - h * float(y) / ymax)


def body_svg(body: NokBody, title: str = "Newton-Okounkov body") -> str:
    verts = body.vertices
    xmax = max(float(v[0]) for v in verts)
    ymax = max(float(v[1]) for v in verts)
    to = _scaler(xmax, ymax)
    pts = " ".join(f"{num(a)},{num(b)}" for a, b in (to(x, y) for x, y in verts))
    out = [f'<polygon points="{pts}" fill="#9ecae1" stroke="#08519c" stroke-width="1.5"/>\n']
    for x, y in verts:
        px, py = to(x, y)
        out.append(f'<circle cx="{num(px)}" cy="{num(py)}" r="3" fill="#08519c"/>\n')
        text = escape(f"({_label(x)}, {_label(y)})")
        out.append(f'<text x="{num(px + 5)}" y="{num(py - 5)}" font-size="10">{text}</text>\n')
    out.append(f'<text x="{PAD}" y="20" font-size="12">{escape(title)}; '
               f'area = {escape(str(body.area()))}</text>\n')
    return _frame(W, H, "".join(out), title)


def slice_svg(region: SliceRegion, bodies, title: str = "slice family") -> str:
    """Left: boundary ``t = mu(s)`` with samples.  Right: stacked sections."""
    pts = list(region.samples) + list(region.holdout)
    pts.sort()
    smax = max(float(region.epsilon), max(float(p[0]) for p in pts))
    tmax = max(float(p[1]) for p in pts) * 1.1
    to = _scaler(smax, tmax, w=W / 2 - 2 * PAD)
    out = []
    # Fitted curve drawn through the exact samples at 12 digits.
    path = " ".join(f"{num(a)},{num(b)}" for a, b in (to(s, mu) for s, mu in pts))
    out.append(f'<polyline points="{path}" fill="none" stroke="#cb181d" stroke-width="1.5"/>\n')
    for s, mu in region.samples:
        px, py = to(s, mu)
        out.append(f'<circle cx="{num(px)}" cy="{num(py)}" r="3" fill="#cb181d"/>\n')
    for s, mu in region.holdout:
        px, py = to(s, mu)
        out.append(f'<circle cx="{num(px)}" cy="{num(py)}" r="3" fill="none" stroke="#cb181d"/>\n')
    out.append(f'<text x="{PAD}" y="20" font-size="11">Q(s,t) = '
               f'{escape(boundary_string(region.boundary_polynomial))}</text>\n')
    if bodies:
        xmax = max(float(b.extent) for _, b in bodies)
        ymax = max(float(v[1]) for _, b in bodies for v in b.vertices)
        n = len(bodies)
        for k, (s, body) in enumerate(bodies):
            # Oblique stacking: later sections drawn up and to the right.
            dx, dy = 12 * k, -18 * k
            to2 = _scaler(xmax, ymax, x0=W / 2 + PAD + dx, y0=H - PAD + dy,
                          w=W / 2 - 2 * PAD - 12 * n, h=H - 2 * PAD - 18 * n)
            poly = " ".join(f"{num(a)},{num(b)}" for a, b in (to2(x, y) for x, y in body.vertices))
            out.append(f'<polygon points="{poly}" fill="#9ecae1" fill-opacity="0.35" '
                       f'stroke="#08519c"><title>s = {s}</title></polygon>\n')
    return _frame(W, H, "".join(out), title)
