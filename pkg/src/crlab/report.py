"""Deterministic JSON, CSV and SVG writers.

Floats are written with 17 significant digits so that every number re-parses
to the exact double the library produced.  SVG output is a fixed 800x600
canvas of polylines with coordinates rounded to 1e-3 and no ids or
timestamps, so equal inputs give equal bytes.
"""

from __future__ import annotations

import enum
import io
import json
import math
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

import numpy as np

from . import phase_plane as pp
from .orbifold_metric import MetricProfile
from .sl2_model import base_curvature_grid

WIDTH, HEIGHT = 800, 600
MARGIN = 40


# -- JSON ---------------------------------------------------------------------

def format_float(x: float) -> str:
    if math.isnan(x) or math.isinf(x):
        return "null"
    return format(x, ".17g")


def dumps(obj, indent: int = 2, _level: int = 0) -> str:
    """JSON text with 17-significant-digit floats and insertion-ordered keys."""
    pad = " " * (indent * (_level + 1))
    end = " " * (indent * _level)
    if isinstance(obj, enum.Enum):
        obj = obj.value
    if obj is None or isinstance(obj, (bool, np.bool_)):
        return json.dumps(None if obj is None else bool(obj))
    if isinstance(obj, (int, np.integer)):
        return str(int(obj))
    if isinstance(obj, (float, np.floating)):
        return format_float(float(obj))
    if isinstance(obj, str):
        return json.dumps(obj)
    if isinstance(obj, dict):
        if not obj:
            return "{}"
        items = [f"{pad}{json.dumps(str(k))}: {dumps(v, indent, _level + 1)}" for k, v in obj.items()]
        return "{\n" + ",\n".join(items) + "\n" + end + "}"
    if isinstance(obj, (list, tuple, np.ndarray)):
        seq = list(obj)
        if not seq:
            return "[]"
        if all(not isinstance(v, (dict, list, tuple, np.ndarray)) for v in seq):
            return "[" + ", ".join(dumps(v, indent, _level + 1) for v in seq) + "]"
        items = [pad + dumps(v, indent, _level + 1) for v in seq]
        return "[\n" + ",\n".join(items) + "\n" + end + "]"
    raise TypeError(f"cannot serialise {type(obj).__name__}")


def make_report(command: str, inputs: Dict, outputs: Dict, residuals: Dict, status: str = "ok") -> str:
    doc = {"command": command, "inputs": inputs, "outputs": outputs,
           "residuals": residuals, "status": status}
    return dumps(doc) + "\n"


# -- CSV ----------------------------------------------------------------------

PHASE_COLUMNS = ("t", "x", "y", "F")
PROFILE_COLUMNS = ("t", "k", "r", "r_prime")
SCAN_COLUMNS = ("u", "v", "K")


def csv_table(columns: Sequence[str], rows: Iterable[Sequence[float]]) -> str:
    out = io.StringIO()
    out.write(",".join(columns) + "\n")
    for row in rows:
        out.write(",".join(format_float(float(v)) for v in row) + "\n")
    return out.getvalue()


def orbit_csv(orbit: pp.PhaseOrbit) -> str:
    F = orbit.y ** 2 + orbit.x ** 3 / 3.0 - 2.0 * orbit.params.c * orbit.x
    return csv_table(PHASE_COLUMNS, zip(orbit.t, orbit.x, orbit.y, F))


def profile_csv(profile: MetricProfile) -> str:
    return csv_table(PROFILE_COLUMNS, zip(profile.t, profile.k, profile.r, profile.r_prime))


def scan_grid(qJ: float, R: float, n: int) -> Tuple[np.ndarray, np.ndarray, np.ndarray]:
    g = np.linspace(-R, R, n)
    u, v = np.meshgrid(g, g, indexing="ij")
    return u, v, base_curvature_grid(qJ, u, v)


def scan_csv(qJ: float, R: float, n: int) -> str:
    u, v, K = scan_grid(qJ, R, n)
    return csv_table(SCAN_COLUMNS, zip(u.ravel(), v.ravel(), K.ravel()))


# -- SVG ----------------------------------------------------------------------

class _Canvas:
    def __init__(self, xlim: Tuple[float, float], ylim: Tuple[float, float]):
        self.xlim, self.ylim = xlim, ylim
        self.parts: List[str] = []

    def _map(self, x: float, y: float) -> Tuple[float, float]:
        (x0, x1), (y0, y1) = self.xlim, self.ylim
        px = MARGIN + (x - x0) / (x1 - x0) * (WIDTH - 2 * MARGIN)
        py = HEIGHT - MARGIN - (y - y0) / (y1 - y0) * (HEIGHT - 2 * MARGIN)
        return px, py

    def polyline(self, xs, ys, stroke: str = "black", width: float = 1.0):
        pts = []
        for x, y in zip(xs, ys):
            px, py = self._map(float(x), float(y))
            pts.append(f"{px:.3f},{py:.3f}")
        if len(pts) >= 2:
            self.parts.append(f'<polyline points="{" ".join(pts)}" fill="none" '
                              f'stroke="{stroke}" stroke-width="{width:g}"/>')

    def marker(self, x: float, y: float, stroke: str = "red", size: float = 5.0):
        px, py = self._map(x, y)
        pts = [(px - size, py - size), (px + size, py - size), (px + size, py + size),
               (px - size, py + size), (px - size, py - size)]
        body = " ".join(f"{a:.3f},{b:.3f}" for a, b in pts)
        self.parts.append(f'<polyline points="{body}" fill="none" stroke="{stroke}" stroke-width="2"/>')

    def axes(self):
        (x0, x1), (y0, y1) = self.xlim, self.ylim
        if y0 <= 0 <= y1:
            self.polyline([x0, x1], [0, 0], stroke="gray", width=0.5)
        if x0 <= 0 <= x1:
            self.polyline([0, 0], [y0, y1], stroke="gray", width=0.5)

    def render(self) -> bytes:
        head = (f'<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" '
                f'viewBox="0 0 {WIDTH} {HEIGHT}">')
        body = "\n".join(self.parts)
        return (head + "\n" + body + "\n</svg>\n").encode("ascii")


def _level_branches(c: float, F0: float, xs: np.ndarray, ymax: float):
    """Polylines of ``F = F0`` over ``xs``: upper and lower branches, split at gaps."""
    ysq = F0 - xs ** 3 / 3.0 + 2.0 * c * xs
    ok = ysq >= 0
    y = np.sqrt(np.where(ok, ysq, 0.0))
    ok &= y <= ymax
    runs = []
    idx = np.nonzero(ok)[0]
    if idx.size == 0:
        return runs
    breaks = np.nonzero(np.diff(idx) > 1)[0]
    starts = np.concatenate([[0], breaks + 1])
    stops = np.concatenate([breaks + 1, [idx.size]])
    for a, b in zip(starts, stops):
        sel = idx[a:b]
        # trace upper branch forward and lower branch back for a closed-looking curve
        runs.append((np.concatenate([xs[sel], xs[sel][::-1]]),
                     np.concatenate([y[sel], -y[sel][::-1]])))
    return runs


def phase_portrait_svg(params: pp.PhaseParams, orbit: Optional[pp.PhaseOrbit] = None,
                       n_levels: int = 9) -> bytes:
    """Level curves of ``F``, fixed-point markers and an optional integrated orbit."""
    c = params.c
    s = params.s if params.s is not None else 1.0
    span = 2.5 * s
    canvas = _Canvas((-span, span), (-span ** 1.5, span ** 1.5))
    canvas.axes()
    xs = np.linspace(-span, span, 801)
    if params.s is not None:
        lo, hi = params.window()
        width = hi - lo
        levels = [lo + width * (j + 1) / (n_levels + 1) for j in range(n_levels)]
        levels += [hi, hi + 0.5 * width, lo - 0.5 * width]
    else:
        levels = [float(v) for v in np.linspace(-2.0, 2.0, n_levels)]
    for F0 in levels:
        for bx, by in _level_branches(c, F0, xs, span ** 1.5):
            canvas.polyline(bx, by, stroke="steelblue", width=1.0)
    if orbit is not None:
        canvas.polyline(orbit.x, orbit.y, stroke="black", width=2.0)
    for fp in pp.fixed_points(params):
        canvas.marker(fp.x, fp.y)
    return canvas.render()


def profile_svg(profile: MetricProfile) -> bytes:
    """Curvature ``k(t)`` and radius ``r(t)`` along the meridian."""
    lo = min(0.0, float(profile.k.min()), float(profile.r.min()))
    hi = max(float(profile.k.max()), float(profile.r.max()))
    pad = 0.05 * (hi - lo)
    canvas = _Canvas((0.0, profile.tau), (lo - pad, hi + pad))
    canvas.axes()
    canvas.polyline(profile.t, profile.k, stroke="firebrick", width=2.0)
    canvas.polyline(profile.t, profile.r, stroke="black", width=2.0)
    return canvas.render()


def curvature_scan_svg(qJ: float, R: float, n: int = 201) -> bytes:
    """Curvature along the two coordinate axes of the orbit space."""
    g = np.linspace(-R, R, n)
    zero = np.zeros_like(g)
    Ku = base_curvature_grid(qJ, g, zero)
    Kv = base_curvature_grid(qJ, zero, g)
    lo = min(float(Ku.min()), float(Kv.min()), 0.0)
    hi = max(float(Ku.max()), float(Kv.max()), 0.0)
    pad = 0.05 * (hi - lo) or 1.0
    canvas = _Canvas((-R, R), (lo - pad, hi + pad))
    canvas.axes()
    canvas.polyline(g, Ku, stroke="firebrick", width=2.0)
    canvas.polyline(g, Kv, stroke="steelblue", width=2.0)
    return canvas.render()


def emit_svg(kind: str, data: Dict) -> bytes:
    if kind == "phase_portrait":
        return phase_portrait_svg(data["params"], data.get("orbit"))
    if kind == "profile":
        return profile_svg(data["profile"])
    if kind == "curvature_scan":
        return curvature_scan_svg(data["qJ"], data["R"], data.get("n", 201))
    raise ValueError(f"unknown svg kind {kind!r}")
