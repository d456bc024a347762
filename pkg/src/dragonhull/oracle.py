"""Brute-force ground truth for the closed-form hull theory.

Samples are the exact images ``f_w({0, 1})`` over all words ``w`` of a fixed
length. Both seeds are fixed points of the maps and therefore lie in
``K_eta``, so every sample is an attractor point and every attractor point is
within ``|a|^depth / (1 - |a|)`` of a sample.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field

import numpy as np

from .core import DomainError, DragonParams, candidate_set, map_f1, map_f2, point_b, point_w, point_z
from .geometry import (
    Containment,
    GeometryError,
    Polygon,
    arg,
    convex_hull,
    in_convex_polygon,
    orient_im,
    segment_distance,
)
from .theory import BoundaryAmbiguous, PartitionCell, eta_root, partition_cell

log = logging.getLogger(__name__)

MAX_DEPTH = 26
DEFAULT_DEPTH = 20


@dataclass(frozen=True)
class SampleCloud:
    points: np.ndarray = field(repr=False)
    depth: int
    error_bound: float

    def __len__(self) -> int:
        return len(self.points)


def sample_attractor(p: DragonParams, depth: int) -> SampleCloud:
    if not 1 <= depth <= MAX_DEPTH:
        raise ValueError(f"depth must be in 1..{MAX_DEPTH}, got {depth}")
    a, ac = p.a, p.a.conjugate()
    pts = np.array([0j, 1 + 0j])
    for _ in range(depth):
        pts = np.concatenate((a * pts, 1.0 - ac * pts))
    return SampleCloud(pts, depth, p.mod_a**depth / (1.0 - p.mod_a))


def candidate_depth(p: DragonParams) -> int:
    """Largest candidate index added to the empirical hull: 2k + 5."""
    res = partition_cell(p.eta)
    k = res.k if isinstance(res, (PartitionCell, BoundaryAmbiguous)) else 4
    return 2 * k + 5


def empirical_hull(p: DragonParams, depth: int = DEFAULT_DEPTH, cloud: SampleCloud | None = None) -> Polygon:
    """Hull of the sample cloud together with the closed-form candidate points."""
    if cloud is None:
        cloud = sample_attractor(p, depth)
    extra = np.array([v.point for v in candidate_set(p, candidate_depth(p))])
    return convex_hull(np.concatenate((cloud.points, extra)))


def check_invariance(p: DragonParams, hull: Polygon, tol: float = 1e-9) -> bool:
    """Do both maps send the hull into itself?  Vertex images suffice (affine maps, convex hull)."""
    for v in hull.vertices:
        for img in (map_f1(p, v), map_f2(p, v)):
            if in_convex_polygon(img, hull, tol) is Containment.OUTSIDE:
                return False
    return True


def _segment_min_sampled(s: complex, t: complex, n: int = 1000) -> float:
    ts = np.linspace(0.0, 1.0, n)
    return float(np.abs((1 - ts) * s + ts * t).min())


def check_disk_property(p: DragonParams, j: int, tail: int = 50) -> bool:
    """Tail ``z_k, k >= j`` inside the closed disk of radius |z_j|; ``z_0..z_{j-1}`` outside it."""
    if not 0.0 < p.eta < eta_root(4):
        raise DomainError(f"disk property needs eta in (0, eta_4), got {p.eta}")
    if j < 1:
        raise ValueError("j must be >= 1")
    r = abs(point_z(p, j))
    if any(abs(point_z(p, k)) > r for k in range(j, j + tail + 1)):
        return False
    zs = [point_z(p, i) for i in range(j)]
    if any(abs(z) <= r for z in zs):
        return False
    for s, t in zip(zs, zs[1:]):
        d = min(segment_distance(0j, s, t), _segment_min_sampled(s, t))
        if d <= r:
            return False
    return True


@dataclass
class SubCheck:
    name: str
    status: str  # "passed" | "failed" | "skipped"
    detail: str = ""


@dataclass
class MembershipReport:
    eta: float
    checks: list[SubCheck]

    @property
    def passed(self) -> bool:
        return all(c.status != "failed" for c in self.checks)

    def by_name(self) -> dict[str, SubCheck]:
        return {c.name: c for c in self.checks}

    def to_dict(self) -> dict:
        return {"eta": self.eta, "passed": self.passed,
                "checks": [{"name": c.name, "status": c.status, "detail": c.detail} for c in self.checks]}


class _Recorder:
    def __init__(self, tol: float):
        self.tol = tol
        self.failures: list[str] = []
        self.count = 0
        self.degenerate = 0

    def tri(self, what: str, q: complex, u: complex, v: complex, w: complex) -> None:
        self.poly(what, q, [u, v, w])

    def poly(self, what: str, q: complex, pts: list[complex]) -> None:
        self.count += 1
        try:
            ok = in_convex_polygon(q, convex_hull(pts), self.tol) is not Containment.OUTSIDE
        except GeometryError:
            # region collapsed to a segment at double precision (a tail point within
            # ~1e-12 of a corner); its hull is covered by the pairwise segments
            self.degenerate += 1
            ok = min(segment_distance(q, s, t) for i, s in enumerate(pts) for t in pts[i + 1:]) <= self.tol
        if not ok:
            self.failures.append(what)

    def truth(self, what: str, ok: bool) -> None:
        self.count += 1
        if not ok:
            self.failures.append(what)

    def result(self, name: str) -> SubCheck:
        if self.failures:
            return SubCheck(name, "failed", f"first failure: {self.failures[0]} ({len(self.failures)}/{self.count})")
        note = f", {self.degenerate} numerically degenerate" if self.degenerate else ""
        return SubCheck(name, "passed", f"{self.count} instances{note}")


def _arg_case(z: complex, eta: float, tol: float) -> str:
    """Which half-open range ``(0, eta]`` or ``(eta, 2 eta]`` holds ``arg z``."""
    t = arg(z)
    if abs(t - eta) <= tol:
        log.info("arg %.17g is within %g of eta=%.17g; assigned to the closed side (0, eta]", t, tol, eta)
        return "low"
    return "low" if t <= eta else "high"


def check_membership_lemmas(p: DragonParams, tol: float = 1e-9) -> MembershipReport:
    eta, a = p.eta, p.a
    Z = lambda j: point_z(p, j)  # noqa: E731
    W = lambda j: point_w(p, j)  # noqa: E731
    b0, w0 = point_b(p, 0), point_w(p, 0)
    checks: list[SubCheck] = []

    # w0 in both triangles when w0 < 0
    if w0.real < 0:
        r = _Recorder(tol)
        r.tri("w0 in tri(0,z2,z3)", w0, 0j, Z(2), Z(3))
        r.tri("w0 in tri(0,conj z2,conj z3)", w0, 0j, Z(2).conjugate(), Z(3).conjugate())
        checks.append(r.result("w0_triangles"))
    else:
        checks.append(SubCheck("w0_triangles", "skipped", f"w0 = {w0.real:.6g} >= 0"))

    res = partition_cell(eta)
    if not isinstance(res, PartitionCell):
        for name in ("coordinate_bounds", "half_plane_theta", "quadrilateral", "zero_one_in_hull",
                     "tail_triangles", "hull_of_v_equals_hull_of_vk"):
            checks.append(SubCheck(name, "skipped", f"eta not inside a partition cell ({type(res).__name__})"))
        return MembershipReport(eta, checks)
    k = res.k
    case1 = eta >= math.pi / k  # C1: [pi/k, eta_k); C2: [eta_{k+1}, pi/k)

    r = _Recorder(tol)
    r.truth("Re z0 in (0,1)", 0 < Z(0).real < 1)
    r.truth("Re w1 in (0,1)", 0 < W(1).real < 1)
    r.truth("Im w1 in (0,1)", 0 < W(1).imag < 1)
    checks.append(r.result("coordinate_bounds"))

    r = _Recorder(tol)
    for j in range(k, k + 60):
        r.truth(f"angle 1 z{j} w1 in (0,pi)", orient_im(1 + 0j, Z(j), W(1)) > 0)
    checks.append(r.result("half_plane_theta"))

    r = _Recorder(tol)
    j_hi = 2 * k - 3 if case1 else 2 * k - 1
    for j in range(k + 1, j_hi + 1):
        r.poly(f"z{j} in co(0,z{j-1},w1,1)", Z(j), [0j, Z(j - 1), W(1), 1 + 0j])
        r.poly(f"w{j} in co(1,w{j-1},b0,a)", W(j), [1 + 0j, W(j - 1), b0, a])
    checks.append(r.result("quadrilateral"))

    r = _Recorder(tol)
    m = k - 1 if case1 else k
    r.tri(f"0 in tri(z1,z{m},w1)", 0j, Z(1), Z(m), W(1))
    r.tri(f"1 in tri(w1,w{m},b0)", 1 + 0j, W(1), W(m), b0)
    vk = [v.point for v in candidate_set(p, k)]
    r.poly("0 in co(V_k)", 0j, vk)
    r.poly("1 in co(V_k)", 1 + 0j, vk)
    checks.append(r.result("zero_one_in_hull"))

    r = _Recorder(tol)
    n = 2 * k - 3 if case1 else 2 * k - 1  # pivot index whose argument selects the case
    if _arg_case(Z(n), eta, 1e-12) == "low":
        r.tri(f"z{n+1} in tri(0,z0,1)", Z(n + 1), 0j, Z(0), 1 + 0j)
        r.tri(f"z{n+2} in tri(0,z1,z0)", Z(n + 2), 0j, Z(1), Z(0))
        r.tri(f"w{n+1} in tri(1,w0,a)", W(n + 1), 1 + 0j, w0, a)
        r.tri(f"w{n+2} in tri(1,w1,w0)", W(n + 2), 1 + 0j, W(1), w0)
    else:
        r.tri(f"z{n+1} in tri(0,1,z{n})", Z(n + 1), 0j, 1 + 0j, Z(n))
        r.tri(f"z{n+2} in tri(0,z0,1)", Z(n + 2), 0j, Z(0), 1 + 0j)
        r.tri(f"w{n+1} in tri(1,a,w{n})", W(n + 1), 1 + 0j, a, W(n))
        r.tri(f"w{n+2} in tri(1,w0,a)", W(n + 2), 1 + 0j, w0, a)
    checks.append(r.result("tail_triangles"))

    r = _Recorder(tol)
    hull_vk = convex_hull(vk)
    for j in range(k + 1, k + 80):
        for lbl, q in ((f"z{j}", Z(j)), (f"w{j}", W(j))):
            r.truth(f"{lbl} in co(V_k)", in_convex_polygon(q, hull_vk, tol) is not Containment.OUTSIDE)
    checks.append(r.result("hull_of_v_equals_hull_of_vk"))

    return MembershipReport(eta, checks)


def hull_vertex_count(p: DragonParams, depth: int = DEFAULT_DEPTH) -> int:
    try:
        return len(empirical_hull(p, depth))
    except GeometryError:
        return 0
