"""Phase portraits on the Poincare disk and level-curve extraction.

All drawing goes through the central projection
``(x, y) -> (x, y) / (1 + sqrt(1 + x^2 + y^2))`` onto the open unit disk.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Sequence

import numpy as np
from scipy.integrate import DOP853

from .classification import Kind
from .critical_points import PlanarField
from .errors import PolycentersError
from .polynomial import BiPoly


class StartAtCriticalPoint(PolycentersError):
    """An orbit was requested from a zero of the field."""


@dataclass
class Polyline:
    """A sampled curve; ``closed`` means the last point returns to the first."""

    points: np.ndarray
    closed: bool = False

    def __post_init__(self):
        self.points = np.asarray(self.points, dtype=float).reshape(-1, 2)

    def __len__(self) -> int:
        return len(self.points)


# -- orbits ---------------------------------------------------------------------------

CLOSE_DIST = 1e-4
CLOSE_HEADING = 0.999
CLOSE_MIN_STEPS = 100


def _unit_field(F: PlanarField, direction: float):
    f, g = F.f.float_function(), F.g.float_function()

    def rhs(_t, z):
        x, y = z
        u, v = f(x, y), g(x, y)
        n = math.hypot(u, v)
        if n == 0.0 or not math.isfinite(n):
            return np.zeros(2)
        # unit speed near the origin, exponential escape towards the equator
        k = direction * (1.0 + math.hypot(x, y)) / n
        return np.array([k * u, k * v])

    return rhs


def _seg_dist(p, a, b) -> float:
    ab = b - a
    den = float(ab @ ab)
    t = 0.0 if den == 0 else min(1.0, max(0.0, float((p - a) @ ab) / den))
    return float(np.linalg.norm(a + t * ab - p))


def integrate_orbit(
    F: PlanarField,
    start: Sequence[float],
    t_span: float = 20.0,
    tol: float = 1e-9,
    *,
    backward: bool = False,
    max_step: float | None = None,
    escape_radius: float = 1e4,
    close_dist: float = CLOSE_DIST,
    min_speed: float = 1e-7,
    max_steps: int = 100_000,
) -> Polyline:
    """Trace the orbit through ``start`` with an adaptive Runge-Kutta method.

    The field is normalised to speed ``1 + |z|``: arc length near the
    origin, while orbits running off to infinity reach the boundary of the
    Poincare disk in bounded time.
    Integration stops at ``t_span``, when the orbit leaves the disk of
    ``escape_radius``, when it runs into a zero of the field, or when it
    returns to ``start`` with the same heading after at least
    ``CLOSE_MIN_STEPS`` steps (the polyline is then closed). Approaching an
    equilibrium (raw speed below ``min_speed``) also ends the orbit.

    Raises
    ------
    StartAtCriticalPoint
    """
    z0 = np.asarray(start, dtype=float)
    f, g = F.f.float_function(), F.g.float_function()
    if math.hypot(f(*z0), g(*z0)) == 0.0:
        raise StartAtCriticalPoint(f"{tuple(z0)} is a zero of the field")
    sign = -1.0 if backward else 1.0
    rhs = _unit_field(F, sign)
    if max_step is None:
        max_step = 0.01
    solver = DOP853(rhs, 0.0, z0, t_span, rtol=tol, atol=tol, max_step=max_step)
    heading0 = rhs(0.0, z0)
    pts = [z0.copy()]
    steps = 0
    closed = False
    while solver.status == "running" and steps < max_steps:
        prev = solver.y.copy()
        solver.step()
        steps += 1
        cur = solver.y.copy()
        if not np.all(np.isfinite(cur)):
            break
        if steps >= CLOSE_MIN_STEPS and _seg_dist(z0, prev, cur) < close_dist:
            h = rhs(0.0, cur)
            if float(h @ heading0) > CLOSE_HEADING:
                pts.append(z0.copy())
                closed = True
                break
        pts.append(cur)
        if math.hypot(*cur) > escape_radius:
            break
        if math.hypot(f(*cur), g(*cur)) < min_speed:
            break
    return Polyline(np.array(pts), closed)


# -- level curves -------------------------------------------------------------------

def _grid_values(h, level, bbox, resolution):
    x0, x1, y0, y1 = bbox
    xs = np.linspace(x0, x1, resolution + 1)
    ys = np.linspace(y0, y1, resolution + 1)
    X, Y = np.meshgrid(xs, ys)
    if isinstance(h, BiPoly):
        V = h.evaluate_array(X, Y)
    elif hasattr(h, "evaluate_array"):
        V = h.evaluate_array(X, Y)
    else:
        V = np.asarray(h(X, Y), dtype=float)
    return xs, ys, V - float(level)


def level_curves(
    h: BiPoly | Callable,
    level: float,
    bbox: tuple[float, float, float, float] = (-2.0, 2.0, -2.0, 2.0),
    resolution: int = 400,
) -> list[Polyline]:
    """Marching-squares contours of ``h = level``.

    Parameters
    ----------
    h : BiPoly or callable
        Anything with ``evaluate_array`` or a vectorised ``h(X, Y)``.
    bbox : tuple
        ``(xmin, xmax, ymin, ymax)``.
    resolution : int
        Cells per side; at least 16.

    Notes
    -----
    Ambiguous cells are resolved by the sign of the mean of the corners.
    Segments are stitched through shared edge crossings, so a polyline is
    closed exactly when it does not reach the boundary of the box.
    """
    if resolution < 16:
        raise ValueError("resolution must be at least 16")
    xs, ys, V = _grid_values(h, level, bbox, resolution)
    S = V > 0
    ny, nx = V.shape

    def point(edge):
        kind, i, j = edge
        if kind == "h":
            a, b = V[j, i], V[j, i + 1]
            t = a / (a - b)
            return (xs[i] + t * (xs[i + 1] - xs[i]), ys[j])
        a, b = V[j, i], V[j + 1, i]
        t = a / (a - b)
        return (xs[i], ys[j] + t * (ys[j + 1] - ys[j]))

    corners = S[:-1, :-1].astype(int) + 2 * S[:-1, 1:] + 4 * S[1:, 1:] + 8 * S[1:, :-1]
    active = np.argwhere((corners != 0) & (corners != 15))
    adj: dict = {}

    def link(a, b):
        adj.setdefault(a, []).append(b)
        adj.setdefault(b, []).append(a)

    for j, i in active:
        bottom, right, top, left = ("h", i, j), ("v", i + 1, j), ("h", i, j + 1), ("v", i, j)
        s0, s1, s2, s3 = S[j, i], S[j, i + 1], S[j + 1, i + 1], S[j + 1, i]
        cross = [e for e, (a, b) in zip((bottom, right, top, left),
                                         ((s0, s1), (s1, s2), (s3, s2), (s0, s3))) if a != b]
        if len(cross) == 2:
            link(*cross)
        elif len(cross) == 4:
            centre = (V[j, i] + V[j, i + 1] + V[j + 1, i + 1] + V[j + 1, i]) / 4 > 0
            if centre == s0:
                link(bottom, right)
                link(top, left)
            else:
                link(bottom, left)
                link(top, right)

    out = []
    seen = set()
    # open chains start at edges with a single neighbour
    for start in sorted(adj):
        if start in seen or len(adj[start]) != 1:
            continue
        chain = _walk(start, adj, seen)
        out.append(Polyline([point(e) for e in chain], False))
    for start in sorted(adj):
        if start in seen:
            continue
        chain = _walk(start, adj, seen)
        pts = [point(e) for e in chain]
        closed = len(chain) > 2 and chain[0] in adj[chain[-1]]
        if closed:
            pts.append(pts[0])
        out.append(Polyline(pts, closed))
    return [p for p in out if len(p) >= 2]


def _walk(start, adj, seen) -> list:
    chain = [start]
    seen.add(start)
    cur = start
    while True:
        nxt = [e for e in adj[cur] if e not in seen]
        if not nxt:
            return chain
        cur = nxt[0]
        seen.add(cur)
        chain.append(cur)


def count_ovals(h, level, bbox=(-2.0, 2.0, -2.0, 2.0), resolution: int = 400) -> int:
    """Number of closed components of ``h = level`` lying inside ``bbox``."""
    return sum(1 for p in level_curves(h, level, bbox, resolution) if p.closed)


# -- rendering ------------------------------------------------------------------------

def project(x, y):
    """Central projection of the plane onto the open unit disk."""
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    s = 1.0 + np.sqrt(1.0 + x * x + y * y)
    return x / s, y / s


@dataclass
class PortraitSpec:
    """Inputs for :func:`render`.

    Attributes
    ----------
    field : PlanarField
    report : object
        Needs ``finite`` and ``infinite`` lists of ``(point, PointKind)``,
        e.g. an :class:`~polycenters.classification.IndexReport`.
    disk_radius_px : int
    orbit_seeds : "auto" or list of (x, y)
        ``"auto"`` places orbits around every center-like point and on a
        coarse grid when there are none.
    orbits_per_center : int
    separatrix_offset : float
        Distance from a saddle along each eigenvector where separatrices start.
    tol : float
        Integration tolerance.
    t_span : float
        Integration time of each orbit (see :func:`integrate_orbit`).
    axes : bool or None
        Draw the coordinate axes as invariant lines; ``None`` draws them when
        ``x | f`` and ``y | g``.
    title : str
    """

    field: PlanarField
    report: object
    disk_radius_px: int = 400
    orbit_seeds: object = "auto"
    orbits_per_center: int = 4
    separatrix_offset: float = 1e-4
    tol: float = 1e-9
    t_span: float = 20.0
    axes: bool | None = None
    title: str = ""

    def __post_init__(self):
        if self.disk_radius_px <= 0 or self.tol <= 0 or self.separatrix_offset <= 0 or self.t_span <= 0:
            raise ValueError("sizes and tolerances must be positive")


@dataclass
class PortraitData:
    """Geometry assembled before SVG serialisation."""

    orbits: list = field(default_factory=list)
    separatrices: list = field(default_factory=list)
    axes: bool = False
    glyphs: list = field(default_factory=list)  # (kind, X, Y) in disk coordinates


def _saddle_seeds(F: PlanarField, p, offset: float):
    jac = np.array([[float(v) for v in row] for row in p.jacobian])
    vals, vecs = np.linalg.eig(jac)
    out = []
    for k in range(2):
        lam = float(np.real(vals[k]))
        v = np.real(vecs[:, k])
        v = v / np.linalg.norm(v)
        for s in (1.0, -1.0):
            start = (float(p.x) + s * offset * v[0], float(p.y) + s * offset * v[1])
            out.append((start, lam < 0))
    return out


def _auto_seeds(spec: PortraitSpec, finite) -> list:
    """Seeds on the ray from each center-like point to its nearest neighbour."""
    locs = [(float(p.x), float(p.y)) for p, _ in finite]
    seeds = []
    for p, kind in finite:
        if kind.tag not in (Kind.CENTER, Kind.FOCUS_OR_CENTER):
            continue
        cx, cy = float(p.x), float(p.y)
        others = sorted((math.hypot(x - cx, y - cy), x, y) for x, y in locs if (x, y) != (cx, cy))
        if others:
            reach, ox, oy = others[0]
            ux, uy = (ox - cx) / reach, (oy - cy) / reach
        else:
            reach, ux, uy = 2.0, 1.0, 0.0
        k = spec.orbits_per_center
        for t in range(1, k + 1):
            frac = 0.9 * t / k
            seeds.append((cx + frac * reach * ux, cy + frac * reach * uy))
    if not seeds:
        for gx in (-1.5, -0.5, 0.5, 1.5):
            for gy in (-1.5, -0.5, 0.5, 1.5):
                seeds.append((gx, gy))
    return seeds


def build_portrait(spec: PortraitSpec) -> PortraitData:
    """Integrate orbits and separatrices for ``spec``."""
    F = spec.field
    finite = list(getattr(spec.report, "finite", []))
    infinite = list(getattr(spec.report, "infinite", []))
    data = PortraitData()
    axes = spec.axes
    if axes is None:
        axes = F.f.exact_div(BiPoly.x()) is not None and F.g.exact_div(BiPoly.y()) is not None
    data.axes = bool(axes)
    seeds = _auto_seeds(spec, finite) if spec.orbit_seeds == "auto" else list(spec.orbit_seeds)
    for s in seeds:
        try:
            fwd = integrate_orbit(F, s, spec.t_span, spec.tol)
        except StartAtCriticalPoint:
            continue
        if fwd.closed:
            data.orbits.append(fwd)
            continue
        bwd = integrate_orbit(F, s, spec.t_span, spec.tol, backward=True)
        pts = np.vstack([bwd.points[::-1], fwd.points[1:]])
        data.orbits.append(Polyline(pts, False))
    for p, kind in finite:
        if kind.tag != Kind.SADDLE:
            continue
        for start, stable in _saddle_seeds(F, p, spec.separatrix_offset):
            line = integrate_orbit(F, start, spec.t_span, spec.tol, backward=stable)
            line = Polyline(np.vstack([[float(p.x), float(p.y)], line.points]), False)
            data.separatrices.append(line)
    for p, kind in finite:
        X, Y = project(float(p.x), float(p.y))
        data.glyphs.append((kind.tag, float(X), float(Y)))
    for q, kind in infinite:
        a, b = float(q.direction[0]), float(q.direction[1])
        data.glyphs.append((kind.tag, a, b))
        data.glyphs.append((kind.tag, -a, -b))
    return data


_CSS = """
.disk { fill: none; stroke: #000; stroke-width: 0.006; }
.axis { fill: none; stroke: #444; stroke-width: 0.004; }
.orbit { fill: none; stroke: #1f5fa8; stroke-width: 0.003; }
.separatrix { fill: none; stroke: #c0392b; stroke-width: 0.004; }
.center { fill: #fff; stroke: #000; stroke-width: 0.004; }
.node { fill: #000; stroke: none; }
.focus { fill: #888; stroke: #000; stroke-width: 0.003; }
.saddle { stroke: #000; stroke-width: 0.005; }
.degenerate { fill: #e67e22; stroke: #000; stroke-width: 0.003; }
""".strip()


def _fmt(v: float) -> str:
    s = f"{v:.5f}"
    return "0.00000" if s == "-0.00000" else s


def _path(poly: Polyline) -> str:
    X, Y = project(poly.points[:, 0], poly.points[:, 1])
    return " ".join(f"{_fmt(x)},{_fmt(-y)}" for x, y in zip(X, Y))


def _glyph(kind: Kind, X: float, Y: float) -> str:
    x, y = _fmt(X), _fmt(-Y)
    r = 0.016
    if kind == Kind.SADDLE:
        d = r
        return (
            f'<path class="saddle" d="M{_fmt(X - d)},{_fmt(-Y - d)} L{_fmt(X + d)},{_fmt(-Y + d)} '
            f'M{_fmt(X - d)},{_fmt(-Y + d)} L{_fmt(X + d)},{_fmt(-Y - d)}"/>'
        )
    if kind == Kind.CENTER:
        return f'<circle class="center" cx="{x}" cy="{y}" r="{r}"/>'
    if kind == Kind.NODE:
        return f'<circle class="node" cx="{x}" cy="{y}" r="{r}"/>'
    if kind in (Kind.FOCUS, Kind.FOCUS_OR_CENTER):
        return f'<circle class="focus" cx="{x}" cy="{y}" r="{r}"/>'
    return (
        f'<rect class="degenerate" x="{_fmt(X - r)}" y="{_fmt(-Y - r)}" '
        f'width="{_fmt(2 * r)}" height="{_fmt(2 * r)}"/>'
    )


def to_svg(data: PortraitData, disk_radius_px: int = 400, title: str = "") -> str:
    """Serialise portrait geometry; output depends only on the geometry."""
    size = 2 * disk_radius_px * 1.05
    lines = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{size:.0f}" '
        f'height="{size:.0f}" viewBox="-1.05 -1.05 2.1 2.1">',
        f"<style>\n{_CSS}\n</style>",
    ]
    if title:
        lines.append(f"<title>{_escape(title)}</title>")
    lines.append('<circle class="disk" cx="0" cy="0" r="1"/>')
    if data.axes:
        lines.append('<path class="axis" d="M-1,0 L1,0 M0,-1 L0,1"/>')
    lines.append('<g id="orbits">')
    for poly in data.orbits:
        lines.append(f'<polyline class="orbit" points="{_path(poly)}"/>')
    lines.append("</g>")
    lines.append('<g id="separatrices">')
    for poly in data.separatrices:
        lines.append(f'<polyline class="separatrix" points="{_path(poly)}"/>')
    lines.append("</g>")
    lines.append('<g id="points">')
    for kind, X, Y in data.glyphs:
        lines.append(_glyph(kind, X, Y))
    lines.append("</g>")
    lines.append("</svg>")
    return "\n".join(lines) + "\n"


def _escape(text: str) -> str:
    return text.replace("&", "&amp;").replace("<", "&lt;").replace(">", "&gt;")


def render(spec: PortraitSpec) -> str:
    """SVG document of the phase portrait described by ``spec``."""
    return to_svg(build_portrait(spec), spec.disk_radius_px, spec.title)


def flood_fill_ovals(h, level, bbox=(-2.0, 2.0, -2.0, 2.0), resolution: int = 1600) -> int:
    """Count regions of ``{h > level}`` and ``{h < level}`` that avoid the border.

    Each such region is enclosed by exactly one oval (its outer boundary),
    which makes this an independent check of :func:`count_ovals`.
    """
    from scipy import ndimage

    _, _, V = _grid_values(h, level, bbox, resolution)
    total = 0
    for mask in (V > 0, V < 0):
        labels, n = ndimage.label(mask)
        border = set(np.unique(np.concatenate([labels[0], labels[-1], labels[:, 0], labels[:, -1]])))
        total += sum(1 for k in range(1, n + 1) if k not in border)
    return total
