"""Planar primitives on the complex plane.

Points are plain Python ``complex`` values (or numpy complex arrays for the
bulk routines). Orientation is expressed through the imaginary-part predicate
``Im((conj(u) - conj(v)) * (w - v))``, which is positive exactly when the
counterclockwise angle from ``u - v`` to ``w - v`` lies in ``(0, pi)``.

Polygons produced here are listed clockwise. For a clockwise convex polygon
every consecutive triple ``p, q, r`` has ``orient_im(p, q, r) > 0``.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

TWO_PI = 2.0 * math.pi

# consecutive vertices closer than this are considered coincident
VERTEX_EPS = 1e-12
# relative collinearity threshold, scaled by the squared point-set diameter
COLLINEAR_REL = 1e-12
# point sets larger than this are prefiltered before the monotone chain
_PREFILTER_MIN = 4096


class GeometryError(ValueError):
    """Degenerate input for a geometric operation."""


class Containment(enum.Enum):
    INSIDE = "inside"
    BOUNDARY = "boundary"
    OUTSIDE = "outside"


def check_finite(z: complex, name: str = "point") -> complex:
    z = complex(z)
    if not (math.isfinite(z.real) and math.isfinite(z.imag)):
        raise GeometryError(f"{name} must be finite, got {z!r}")
    return z


def arg(z: complex) -> float:
    """Argument of ``z`` in ``[0, 2*pi)``."""
    if z == 0:
        raise GeometryError("arg(0) is undefined")
    theta = math.atan2(z.imag, z.real) + 0.0
    if theta < 0.0:
        theta += TWO_PI
    if theta >= TWO_PI:
        theta = 0.0
    return theta


def angle_uvw(u: complex, v: complex, w: complex) -> float:
    """Counterclockwise angle from ``u - v`` to ``w - v``, in ``[0, 2*pi)``."""
    if u == v or w == v:
        raise GeometryError("angle_uvw needs u != v and w != v")
    return arg((w - v) / (u - v))


def orient_im(u: complex, v: complex, w: complex) -> float:
    return ((u - v).conjugate() * (w - v)).imag


def signed_area(vertices: Sequence[complex]) -> float:
    """Shoelace area; negative for clockwise cycles."""
    n = len(vertices)
    total = 0.0
    for i in range(n):
        p, q = vertices[i], vertices[(i + 1) % n]
        total += p.real * q.imag - q.real * p.imag
    return 0.5 * total


@dataclass(frozen=True)
class Polygon:
    vertices: tuple[complex, ...]
    orientation: str  # "clockwise" | "counterclockwise"

    def __post_init__(self) -> None:
        verts = tuple(check_finite(v, "vertex") for v in self.vertices)
        object.__setattr__(self, "vertices", verts)
        if len(verts) < 3:
            raise GeometryError("a polygon needs at least 3 vertices")
        for i, v in enumerate(verts):
            if abs(v - verts[(i + 1) % len(verts)]) <= VERTEX_EPS:
                raise GeometryError(f"consecutive vertices {i} and {(i + 1) % len(verts)} coincide")
        if self.orientation not in ("clockwise", "counterclockwise"):
            raise GeometryError(f"unknown orientation {self.orientation!r}")
        area = signed_area(verts)
        if area == 0.0:
            raise GeometryError("polygon has zero area")
        if (area < 0) != (self.orientation == "clockwise"):
            raise GeometryError("orientation flag does not match the signed area")

    @classmethod
    def from_vertices(cls, vertices: Iterable[complex]) -> "Polygon":
        verts = tuple(complex(v) for v in vertices)
        if len(verts) < 3:
            raise GeometryError("a polygon needs at least 3 vertices")
        area = signed_area(verts)
        return cls(verts, "clockwise" if area < 0 else "counterclockwise")

    def __len__(self) -> int:
        return len(self.vertices)

    @property
    def area(self) -> float:
        return abs(signed_area(self.vertices))

    def clockwise(self) -> "Polygon":
        if self.orientation == "clockwise":
            return self
        return Polygon(self.vertices[::-1], "clockwise")

    def edges(self) -> list[tuple[complex, complex]]:
        n = len(self.vertices)
        return [(self.vertices[i], self.vertices[(i + 1) % n]) for i in range(n)]


def is_convex_clockwise(vertices: Sequence[complex], tol: float = 0.0) -> bool:
    """True iff the cycle turns strictly right at every vertex and winds once."""
    n = len(vertices)
    if n < 3 or signed_area(vertices) >= 0:
        return False
    interior = 0.0
    for i in range(n):
        p, q, r = vertices[i - 1], vertices[i], vertices[(i + 1) % n]
        if orient_im(p, q, r) <= tol:
            return False
        interior += angle_uvw(p, q, r)
    # a self-overlapping star also turns right everywhere; only a simple
    # convex cycle has interior angles summing to (n - 2) * pi
    return abs(interior - (n - 2) * math.pi) <= 1e-6 * n


def _diameter_scale(xs: np.ndarray, ys: np.ndarray) -> float:
    return float(math.hypot(xs.max() - xs.min(), ys.max() - ys.min()))


def _monotone_chain(xs: list[float], ys: list[float], thresh: float) -> list[int]:
    """Indices of the hull of lexicographically sorted points, counterclockwise."""

    def cross(o: int, a: int, b: int) -> float:
        return (xs[a] - xs[o]) * (ys[b] - ys[o]) - (ys[a] - ys[o]) * (xs[b] - xs[o])

    n = len(xs)
    lower: list[int] = []
    for i in range(n):
        while len(lower) >= 2 and cross(lower[-2], lower[-1], i) <= thresh:
            lower.pop()
        lower.append(i)
    upper: list[int] = []
    for i in range(n - 1, -1, -1):
        while len(upper) >= 2 and cross(upper[-2], upper[-1], i) <= thresh:
            upper.pop()
        upper.append(i)
    return lower[:-1] + upper[:-1]


def _hull_ccw(pts: np.ndarray) -> np.ndarray:
    """Counterclockwise hull of distinct, lexicographically sorted complex points."""
    xs, ys = pts.real, pts.imag
    scale = _diameter_scale(xs, ys)
    if scale == 0.0:
        raise GeometryError("fewer than 3 distinct points")
    idx = _monotone_chain(xs.tolist(), ys.tolist(), COLLINEAR_REL * scale * scale)
    # merge vertices closer than VERTEX_EPS; Polygon would reject them as coincident
    kept: list[int] = []
    for i in idx:
        if not kept or abs(pts[i] - pts[kept[-1]]) > VERTEX_EPS:
            kept.append(i)
    while len(kept) > 1 and abs(pts[kept[-1]] - pts[kept[0]]) <= VERTEX_EPS:
        kept.pop()
    if len(kept) < 3:
        raise GeometryError("all points are collinear")
    return pts[kept]


def _strictly_inside_mask(pts: np.ndarray, ccw: np.ndarray, margin: float) -> np.ndarray:
    inside = np.ones(pts.shape, dtype=bool)
    nxt = np.roll(ccw, -1)
    for s, t in zip(ccw, nxt):
        e = t - s
        d = (e.real * (pts.imag - s.imag) - e.imag * (pts.real - s.real)) / abs(e)
        inside &= d > margin
    return inside


def convex_hull(points: Iterable[complex] | np.ndarray) -> Polygon:
    """Convex hull as a clockwise polygon, collinear boundary points dropped.

    Monotone chain over points sorted by (re, im). Large inputs are first
    thinned by discarding points strictly inside the hull of a strided
    subsample, which cannot change the result.
    """
    pts = np.asarray(points if isinstance(points, np.ndarray) else list(points), dtype=complex).ravel()
    if not np.all(np.isfinite(pts)):
        raise GeometryError("points must be finite")
    pts = np.unique(pts)  # sorts by real part, then imaginary part
    if len(pts) < 3:
        raise GeometryError("fewer than 3 distinct points")
    if len(pts) > _PREFILTER_MIN:
        stride = max(1, len(pts) // _PREFILTER_MIN)
        try:
            coarse = _hull_ccw(pts[::stride])
        except GeometryError:
            coarse = None
        if coarse is not None:
            margin = 1e-9 * _diameter_scale(pts.real, pts.imag)
            pts = pts[~_strictly_inside_mask(pts, coarse, margin)]
    ccw = _hull_ccw(pts)
    cw = [ccw[0]] + list(ccw[:0:-1])
    return Polygon(tuple(complex(v) for v in cw), "clockwise")


def _edge_distances(p: complex, poly: Polygon) -> list[float]:
    """Signed distances of ``p`` to each edge line, positive toward the interior."""
    sign = -1.0 if poly.orientation == "clockwise" else 1.0
    out = []
    for s, t in poly.edges():
        out.append(sign * orient_im(t, s, p) / abs(t - s))
    return out


def in_convex_polygon(p: complex, poly: Polygon, tol: float = 1e-9) -> Containment:
    """Half-plane classification; points within ``tol`` of an edge line are boundary."""
    if poly.area <= VERTEX_EPS * VERTEX_EPS:
        raise GeometryError("degenerate polygon")
    p = check_finite(p)
    dists = _edge_distances(p, poly)
    if min(dists) > tol:
        return Containment.INSIDE
    if min(dists) < -tol:
        return Containment.OUTSIDE
    return Containment.BOUNDARY


def in_triangle(p: complex, u: complex, v: complex, w: complex, tol: float = 1e-9) -> bool:
    """Closed-triangle membership (inside or boundary)."""
    if abs(orient_im(u, v, w)) <= VERTEX_EPS * VERTEX_EPS:
        raise GeometryError("degenerate triangle")
    tri = Polygon.from_vertices((u, v, w))
    return in_convex_polygon(p, tri, tol) is not Containment.OUTSIDE


def point_strictly_in_polygon(p: complex, poly: Polygon, tol: float = 0.0) -> bool:
    return in_convex_polygon(p, poly, tol) is Containment.INSIDE


def segment_distance(p: complex, s: complex, t: complex) -> float:
    e = t - s
    denom = abs(e) ** 2
    if denom == 0.0:
        return abs(p - s)
    u = ((p - s) * e.conjugate()).real / denom
    u = min(1.0, max(0.0, u))
    return abs(p - (s + u * e))


def polygon_distance(p: complex, poly: Polygon) -> float:
    """Euclidean distance from ``p`` to the closed polygon region (0 inside)."""
    if in_convex_polygon(p, poly, 0.0) is not Containment.OUTSIDE:
        return 0.0
    return min(segment_distance(p, s, t) for s, t in poly.edges())


def max_outward_violation(points: np.ndarray, poly: Polygon) -> float:
    """Largest half-plane violation over ``points`` (0 when all are inside).

    This is a lower bound on the Euclidean distance to the polygon and is the
    quantity compared against the outward containment tolerance.
    """
    pts = np.asarray(points, dtype=complex).ravel()
    ccw = np.array(poly.vertices if poly.orientation == "counterclockwise" else poly.vertices[::-1])
    worst = np.zeros(pts.shape)
    for s, t in zip(ccw, np.roll(ccw, -1)):
        e = t - s
        d = (e.real * (pts.imag - s.imag) - e.imag * (pts.real - s.real)) / abs(e)
        np.maximum(worst, -d, out=worst)
    return float(worst.max()) if len(worst) else 0.0


@dataclass(frozen=True)
class HullReport:
    max_predicted_to_empirical: float
    max_empirical_to_predicted: float
    n_predicted: int
    n_empirical: int
    vertex_tol: float
    passed: bool

    def to_dict(self) -> dict:
        return {
            "max_predicted_to_empirical": self.max_predicted_to_empirical,
            "max_empirical_to_predicted": self.max_empirical_to_predicted,
            "n_predicted": self.n_predicted,
            "n_empirical": self.n_empirical,
            "vertex_tol": self.vertex_tol,
            "passed": self.passed,
        }


def hull_match(predicted: Polygon, empirical: Polygon, vertex_tol: float = 1e-6) -> HullReport:
    """Compare two convex polygons; insensitive to starting vertex and orientation."""
    d_pe = max(min(abs(p - e) for e in empirical.vertices) for p in predicted.vertices)
    d_ep = max(polygon_distance(e, predicted) for e in empirical.vertices)
    passed = d_pe <= vertex_tol and d_ep <= vertex_tol and len(predicted) == len(empirical)
    return HullReport(d_pe, d_ep, len(predicted), len(empirical), vertex_tol, passed)
