"""Data emitters: CSV, JSON and SVG renderings of scenario reports.

Emitters are pure functions of the report: identical reports produce
byte-identical documents. Numbers are written with 17 significant digits so
a parse/re-emit round trip is the identity on doubles.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass

from .conditioning import ConditionCurve
from .errors import ArgumentError
from .pseudozeros import PseudozeroField
from .scenarios import ScenarioReport

SCHEMA_VERSION = 1

_PALETTE = (
    "#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e",
    "#8c564b", "#17becf", "#7f7f7f", "#bcbd22", "#e377c2",
)


@dataclass(frozen=True)
class RenderSpec:
    """Rendering options for SVG output."""

    format: str = "svg"
    log_scale: bool = True
    width: int = 900
    height: int = 560

    def __post_init__(self):
        if self.format not in ("csv", "svg", "json"):
            raise ArgumentError(f"unknown format {self.format!r}")
        if self.width <= 0 or self.height <= 0:
            raise ArgumentError("zero-size canvas")


def _fmt(v: float) -> str:
    return f"{v:.17g}"


def emit_csv(report: ScenarioReport) -> str:
    """Curves as ``series,x,log10_value`` rows (series, then x ascending),
    followed by contour rows ``series,level,vertex_index,re,im`` where the
    vertex index restarts at 0 on each new polyline."""
    lines = ["series,x,log10_value"]
    for curve in sorted(report.curves, key=lambda c: c.label):
        for a, v in zip(curve.abscissae, curve.values_log10):
            lines.append(f"{curve.label},{_fmt(float(a.value))},{_fmt(v)}")
    for fld in sorted(report.fields, key=lambda f: f.label):
        for level in fld.levels:
            for poly in fld.contours[level]:
                for idx, (re, im) in enumerate(poly):
                    lines.append(
                        f"{fld.label},{_fmt(level)},{idx},{_fmt(re)},{_fmt(im)}"
                    )
    return "\n".join(lines) + "\n"


def parse_csv(text: str):
    """Inverse of :func:`emit_csv`: (curve rows, contour rows)."""
    lines = [ln for ln in text.splitlines() if ln]
    if not lines or lines[0] != "series,x,log10_value":
        raise ArgumentError("not a polycond CSV document")
    curve_rows = []
    contour_rows = []
    for ln in lines[1:]:
        parts = ln.split(",")
        if len(parts) == 3:
            curve_rows.append((parts[0], float(parts[1]), float(parts[2])))
        elif len(parts) == 5:
            contour_rows.append(
                (parts[0], float(parts[1]), int(parts[2]), float(parts[3]), float(parts[4]))
            )
        else:
            raise ArgumentError(f"malformed CSV row: {ln!r}")
    return curve_rows, contour_rows


def _curve_payload(curve: ConditionCurve) -> dict:
    values = [v if math.isfinite(v) else None for v in curve.values_log10]
    return {
        "label": curve.label,
        "x": [float(a.value) for a in curve.abscissae],
        "values_log10": values,
        "nonfinite": {str(i): tag for i, tag in curve.nonfinite_indices.items()},
    }


def _field_payload(fld: PseudozeroField) -> dict:
    return {
        "label": fld.label,
        "region": list(fld.region),
        "resolution": list(fld.resolution),
        "levels": list(fld.levels),
        "digits": fld.digits,
        "values_log10": [list(row) for row in fld.values_log10],
        "contours": {
            str(level): [[[re, im] for re, im in poly] for poly in fld.contours[level]]
            for level in fld.levels
        },
        "interior_mask_count": fld.mask_count(),
    }


def report_to_dict(report: ScenarioReport) -> dict:
    return {
        "polycond_schema": SCHEMA_VERSION,
        "name": report.name,
        "curves": [_curve_payload(c) for c in report.curves],
        "fields": [_field_payload(f) for f in report.fields],
        "summary": dict(report.summary),
    }


def emit_json(report: ScenarioReport) -> str:
    return json.dumps(report_to_dict(report), separators=(",", ":"), allow_nan=False)


# -- SVG ---------------------------------------------------------------------


def _ticks(lo: float, hi: float, target: int = 8):
    span = hi - lo
    if span <= 0:
        return [lo]
    step = max(1, round(span / target))
    out = list(range(math.ceil(lo), math.floor(hi) + 1, step))
    if out and out[-1] != math.floor(hi):
        out.append(math.floor(hi))
    return out


def _svg_header(width, height):
    return (
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" '
        f'height="{height}" viewBox="0 0 {width} {height}">\n'
        f'<rect width="{width}" height="{height}" fill="white"/>\n'
    )


def _curve_panel(curves, spec: RenderSpec, oy: int) -> str:
    ml, mr, mt, mb = 64, 170, 24, 40
    pw = spec.width - ml - mr
    ph = spec.height - mt - mb
    xs_all = [float(a.value) for c in curves for a in c.abscissae]
    finite = [v for c in curves for v in c.values_log10 if math.isfinite(v)]
    if not xs_all or not finite:
        raise ArgumentError("nothing to plot")
    x0, x1 = min(xs_all), max(xs_all)
    y0, y1 = math.floor(min(finite)), math.ceil(max(finite))
    if x1 == x0:
        x1 = x0 + 1.0
    if y1 == y0:
        y1 += 1

    def px(x):
        return ml + (x - x0) / (x1 - x0) * pw

    def py(v):
        return oy + mt + (y1 - v) / (y1 - y0) * ph

    out = [
        f'<g font-family="monospace" font-size="12">\n'
        f'<rect x="{ml}" y="{oy + mt}" width="{pw}" height="{ph}" '
        f'fill="none" stroke="black"/>\n'
    ]
    for t in _ticks(y0, y1):
        yy = py(t)
        label = f"1e{t}" if spec.log_scale else _fmt(float(t))
        out.append(
            f'<line x1="{ml - 4}" y1="{yy:.2f}" x2="{ml}" y2="{yy:.2f}" stroke="black"/>'
            f'<text x="{ml - 8}" y="{yy + 4:.2f}" text-anchor="end">{label}</text>\n'
        )
    for i in range(5):
        xv = x0 + (x1 - x0) * i / 4
        xx = px(xv)
        out.append(
            f'<line x1="{xx:.2f}" y1="{oy + mt + ph}" x2="{xx:.2f}" '
            f'y2="{oy + mt + ph + 4}" stroke="black"/>'
            f'<text x="{xx:.2f}" y="{oy + mt + ph + 18}" text-anchor="middle">{xv:.3g}</text>\n'
        )
    for ci, curve in enumerate(curves):
        color = _PALETTE[ci % len(_PALETTE)]
        runs = []
        run = []
        for a, v in zip(curve.abscissae, curve.values_log10):
            if math.isfinite(v):
                run.append(f"{px(float(a.value)):.2f},{py(v):.2f}")
            elif run:
                runs.append(run)
                run = []
        if run:
            runs.append(run)
        for r in runs:
            if len(r) > 1:
                out.append(
                    f'<polyline points="{" ".join(r)}" fill="none" '
                    f'stroke="{color}" stroke-width="1.2"/>\n'
                )
        ly = oy + mt + 14 + 16 * ci
        out.append(
            f'<line x1="{ml + pw + 8}" y1="{ly - 4}" x2="{ml + pw + 28}" '
            f'y2="{ly - 4}" stroke="{color}" stroke-width="2"/>'
            f'<text x="{ml + pw + 34}" y="{ly}">{curve.label}</text>\n'
        )
    out.append("</g>\n")
    return "".join(out)


def _field_panel(fld: PseudozeroField, spec: RenderSpec, oy: int) -> str:
    ml, mr, mt, mb = 64, 170, 24, 40
    pw = spec.width - ml - mr
    ph = spec.height - mt - mb
    re0, re1, im0, im1 = fld.region

    def px(x):
        return ml + (x - re0) / (re1 - re0) * pw

    def py(y):
        return oy + mt + (im1 - y) / (im1 - im0) * ph

    out = [
        f'<g font-family="monospace" font-size="12">\n'
        f'<rect x="{ml}" y="{oy + mt}" width="{pw}" height="{ph}" '
        f'fill="none" stroke="black"/>\n'
        f'<text x="{ml}" y="{oy + mt - 8}">{fld.label}</text>\n'
    ]
    # interior mask: run-length filled rows at the deepest level
    mask = fld.interior_mask()
    gx = fld.grid_re
    gy = fld.grid_im
    hx = (gx[1] - gx[0]) / 2 if len(gx) > 1 else 0.5
    hy = (gy[1] - gy[0]) / 2 if len(gy) > 1 else 0.5
    out.append('<g fill="black" class="interior-mask">\n')
    for j, row in enumerate(mask):
        i = 0
        while i < len(row):
            if row[i]:
                start = i
                while i < len(row) and row[i]:
                    i += 1
                xa, xb = px(gx[start] - hx), px(gx[i - 1] + hx)
                ya, yb = py(gy[j] + hy), py(gy[j] - hy)
                out.append(
                    f'<rect x="{xa:.2f}" y="{ya:.2f}" width="{xb - xa:.2f}" '
                    f'height="{yb - ya:.2f}"/>\n'
                )
            else:
                i += 1
    out.append("</g>\n")
    for li, level in enumerate(fld.levels):
        color = _PALETTE[li % len(_PALETTE)]
        out.append(f'<g class="contour-level" stroke="{color}" fill="none">\n')
        for poly in fld.contours[level]:
            pts = " ".join(f"{px(re):.2f},{py(im):.2f}" for re, im in poly)
            if len(poly) > 1:
                out.append(f'<polyline points="{pts}" stroke-width="1.2"/>\n')
        out.append("</g>\n")
        ly = oy + mt + 14 + 16 * li
        out.append(
            f'<line x1="{ml + pw + 8}" y1="{ly - 4}" x2="{ml + pw + 28}" '
            f'y2="{ly - 4}" stroke="{color}" stroke-width="2"/>'
            f'<text x="{ml + pw + 34}" y="{ly}">eps={level:g}</text>\n'
        )
    for i in range(5):
        xv = re0 + (re1 - re0) * i / 4
        out.append(
            f'<text x="{px(xv):.2f}" y="{oy + mt + ph + 18}" '
            f'text-anchor="middle">{xv:.3g}</text>\n'
        )
    for i in range(5):
        yv = im0 + (im1 - im0) * i / 4
        out.append(
            f'<text x="{ml - 8}" y="{py(yv) + 4:.2f}" text-anchor="end">{yv:.3g}</text>\n'
        )
    out.append("</g>\n")
    return "".join(out)


def emit_svg(report: ScenarioReport, spec: RenderSpec | None = None) -> str:
    """Standalone SVG: one log-scale panel for the curves (if any) and one
    panel per pseudozero field, stacked vertically. The region below the
    smallest contour level is rendered as a filled interior mask."""
    spec = spec or RenderSpec()
    panels = (1 if report.curves else 0) + len(report.fields)
    if panels == 0:
        raise ArgumentError("report has no datasets to draw")
    total_h = spec.height * panels
    out = [_svg_header(spec.width, total_h)]
    oy = 0
    if report.curves:
        out.append(_curve_panel(report.curves, spec, oy))
        oy += spec.height
    for fld in report.fields:
        out.append(_field_panel(fld, spec, oy))
        oy += spec.height
    out.append("</svg>\n")
    return "".join(out)


def emit(report: ScenarioReport, spec: RenderSpec) -> str:
    if spec.format == "csv":
        return emit_csv(report)
    if spec.format == "json":
        return emit_json(report)
    return emit_svg(report, spec)
