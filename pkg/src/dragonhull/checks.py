"""Verification suites shared by the CLI and the acceptance tests.

Each suite returns a :class:`SuiteResult`; advisory suites report findings but
never count as failures.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np

from . import codings, geometry, oracle, theory
from .core import Coding, make_params, point_b, point_w, point_z
from .geometry import angle_uvw, orient_im


@dataclass
class SuiteResult:
    name: str
    passed: bool
    summary: dict = field(default_factory=dict)
    failures: list[str] = field(default_factory=list)
    advisory: bool = False

    def to_dict(self) -> dict:
        return {"suite": self.name, "passed": self.passed, "advisory": self.advisory,
                "summary": self.summary, "failures": self.failures[:20], "n_failures": len(self.failures)}


def cell_grid(k: int, n: int = 100, margin: float = 1e-6) -> np.ndarray:
    c = theory.cell(k)
    return np.linspace(c.lower + margin, c.upper - margin, n)


def roots(k_max: int = 20) -> SuiteResult:
    fails = []
    e4 = theory.eta_root(4)
    closed = math.acos(2 ** -0.75)
    if abs(e4 - closed) > 1e-10:
        fails.append(f"eta_4={e4!r} differs from arccos(2^-3/4)={closed!r}")
    # Phi_4(pi/3) is exactly zero; require it to be zero up to rounding and negative just inside
    phi4_end = theory.phi_at(math.pi / 3, 4)
    if phi4_end > 1e-15:
        fails.append(f"Phi_4(pi/3)={phi4_end} is positive beyond rounding")
    if not theory.phi_at(math.pi / 3 - 1e-6, 4) < 0:
        fails.append("Phi_4 not negative just below pi/3")
    if not theory.phi_at(math.pi / 4, 4) > 0:
        fails.append("Phi_4(pi/4) <= 0")
    for k in range(5, k_max + 1):
        lo, hi = theory.phi_at(math.pi / k, k), theory.phi_at(math.pi / (k - 1), k)
        if not lo > 0:
            fails.append(f"Phi_{k}(pi/{k}) = {lo} <= 0")
        if not hi < 0:
            fails.append(f"Phi_{k}(pi/{k - 1}) = {hi} >= 0")
    table = [theory.eta_root(k) for k in range(4, k_max + 2)]
    for k, (hi_root, lo_root) in enumerate(zip(table, table[1:]), start=4):
        if not lo_root < hi_root:
            fails.append(f"eta_{k + 1} >= eta_{k}")
        if not math.pi / k < hi_root < math.pi / (k - 1):
            fails.append(f"eta_{k} outside (pi/{k}, pi/{k - 1})")
    return SuiteResult("roots", not fails, {"eta_4": e4, "arccos_2^-3/4": closed,
                                            "phi4_at_pi_over_3": phi4_end, "k_max": k_max}, fails)


def signs(cells: Iterable[int] = range(4, 11), n: int = 100, margin: float = 1e-9, j_extra: int = 60) -> SuiteResult:
    fails = []
    checked = 0
    for k in cells:
        for eta in map(float, cell_grid(k, n, margin)):
            p = make_params(eta)
            checked += 1
            if not theory.phi(p, k) > 0:
                fails.append(f"Phi_{k}({eta!r}) <= 0")
            js = range(k + 1, 2 * k - 2) if eta >= math.pi / k else range(k + 1, 2 * k)
            for j in js:
                if not theory.phi(p, j) < 0:
                    fails.append(f"Phi_{j}({eta!r}) >= 0 (cell {k})")
            for j in range(k, k + j_extra + 1):
                if not theory.theta(p, j) > 0:
                    fails.append(f"Theta_{j}({eta!r}) <= 0 (cell {k})")
                if not theory.psi(p, j) > 0:
                    fails.append(f"Psi_{j}({eta!r}) <= 0 (cell {k})")
    return SuiteResult("signs", not fails, {"grid_points": checked, "violations": len(fails)}, fails)


def orientation_signs(etas: Iterable[float], k_max: int = 12) -> SuiteResult:
    """Orientation quantities carry the signs of Phi_k and Psi_k."""
    fails = []
    for eta in etas:
        p = make_params(eta)
        w1, w2 = point_w(p, 1), point_w(p, 2)
        for k in range(1, k_max + 1):
            zk, zk1 = point_z(p, k), point_z(p, k - 1)
            s1 = orient_im(zk1, zk, w1)
            s2 = orient_im(zk, w1, w2)
            f, g = theory.phi(p, k), theory.psi(p, k)
            if np.sign(s1) != np.sign(f) and min(abs(s1), abs(f)) > 1e-12:
                fails.append(f"eta={eta!r} k={k}: sign Im={s1} vs Phi={f}")
            if np.sign(s2) != np.sign(g) and min(abs(s2), abs(g)) > 1e-12:
                fails.append(f"eta={eta!r} k={k}: sign Im={s2} vs Psi={g}")
    return SuiteResult("orientation_signs", not fails, {"violations": len(fails)}, fails)


def angles(etas: Iterable[float], n_max: int = 10, tol: float = 1e-9) -> SuiteResult:
    worst = 0.0
    fails = []
    for eta in map(float, etas):
        p = make_params(eta)
        target = math.pi - eta
        vals = [angle_uvw(point_b(p, 0), point_z(p, 0), point_z(p, 1))]
        for n in range(n_max + 1):
            vals.append(angle_uvw(point_z(p, n), point_z(p, n + 1), point_z(p, n + 2)))
            vals.append(angle_uvw(point_w(p, n), point_w(p, n + 1), point_w(p, n + 2)))
        dev = max(abs(v - target) for v in vals)
        worst = max(worst, dev)
        if dev > tol:
            fails.append(f"eta={eta!r}: max |angle - (pi - eta)| = {dev}")
    return SuiteResult("angles", not fails, {"max_abs_deviation": worst, "tol": tol}, fails)


def corner_angles(cells: Iterable[int] = range(4, 11), n: int = 100, margin: float = 1e-6) -> SuiteResult:
    """The four junction angles of the predicted polygon lie in (0, pi)."""
    fails = []
    for k in cells:
        for eta in map(float, cell_grid(k, n, margin)):
            p = make_params(eta)
            Z = lambda j: point_z(p, j)  # noqa: E731
            W = lambda j: point_w(p, j)  # noqa: E731
            b0 = point_b(p, 0)
            for name, (u, v, w) in {
                "z_{k-1} z_k w1": (Z(k - 1), Z(k), W(1)),
                "z_k w1 w2": (Z(k), W(1), W(2)),
                "w_{k-1} w_k b0": (W(k - 1), W(k), b0),
                "w_k b0 z0": (W(k), b0, Z(0)),
            }.items():
                ang = angle_uvw(u, v, w)
                if not 0 < ang < math.pi:
                    fails.append(f"cell {k} eta={eta!r}: angle {name} = {ang}")
    return SuiteResult("corner_angles", not fails, {"violations": len(fails)}, fails)


def invariance(cells: Iterable[int] = range(4, 9), tol: float = 1e-9) -> SuiteResult:
    fails = []
    for k in cells:
        p = make_params(theory.cell(k).midpoint)
        if not oracle.check_invariance(p, theory.predicted_hull(p).polygon, tol):
            fails.append(f"cell {k}: maps do not send the predicted hull into itself")
    return SuiteResult("invariance", not fails, {}, fails)


def membership(etas: Iterable[float]) -> SuiteResult:
    fails = []
    ran: dict[str, int] = {}
    for eta in etas:
        rep = oracle.check_membership_lemmas(make_params(eta))
        for c in rep.checks:
            if c.status == "passed":
                ran[c.name] = ran.get(c.name, 0) + 1
            elif c.status == "failed":
                fails.append(f"eta={eta!r} {c.name}: {c.detail}")
    return SuiteResult("membership", not fails, {"passed_per_check": ran}, fails)


def disk(etas: Iterable[float], js: Iterable[int] = range(1, 11)) -> SuiteResult:
    fails = []
    js = list(js)
    for eta in etas:
        p = make_params(eta)
        for j in js:
            if not oracle.check_disk_property(p, j):
                fails.append(f"eta={eta!r} j={j}")
    return SuiteResult("disk", not fails, {"violations": len(fails)}, fails)


WITNESS_GRID = [(r, alpha) for r in (0.5, 0.9) for alpha in (2 * math.pi / 3, math.pi / 2, math.pi / 5, 1.0)]


def synthetic_ifs(r: float, alpha: float) -> codings.SimilitudeIFS:
    """Rotating contraction about 0 plus a second map fixing 2, so the attractor is not a point."""
    return codings.SimilitudeIFS(((r * complex(math.cos(alpha), math.sin(alpha)), 0j), (0.5 + 0j, 1 + 0j)))


def coding_suite(etas: Iterable[float]) -> SuiteResult:
    fails = []
    for eta in etas:
        p = make_params(eta)
        ifs = codings.SimilitudeIFS.dragon(p)
        v = codings.extreme_necessary_check(ifs, Coding((), (2, 2, 1, 1)))
        if not v.passes or abs(v.product - p.mod_a**4) > 1e-12:
            fails.append(f"eta={eta!r}: period 2211 -> {v}")
        for period in ((1,), (2,), (2, 1)):
            if codings.extreme_necessary_check(ifs, Coding((), period)).passes:
                fails.append(f"eta={eta!r}: period {period} unexpectedly passes")
    witnesses = {}
    for r, alpha in WITNESS_GRID:
        ifs = synthetic_ifs(r, alpha)
        p_w = codings.containment_witness(ifs, (1,), 2 + 0j)
        witnesses[f"r={r},alpha={alpha:.6g}"] = p_w
        if p_w is None:
            fails.append(f"no containment witness for r={r}, alpha={alpha}")
    return SuiteResult("codings", not fails, {"witness_p": witnesses}, fails)


def hull_suite(etas: Iterable[float], depth: int = oracle.DEFAULT_DEPTH, vertex_tol: float = 1e-6,
               out_tol: float = 1e-9) -> SuiteResult:
    fails = []
    rows = []
    for eta in etas:
        p = make_params(eta)
        try:
            pred = theory.predicted_hull(p)
        except theory.NoPredictionError as exc:
            rows.append({"eta": eta, "skipped": str(exc)})
            continue
        cloud = oracle.sample_attractor(p, depth)
        emp = oracle.empirical_hull(p, cloud=cloud)
        rep = geometry.hull_match(pred.polygon, emp, vertex_tol)
        viol = geometry.max_outward_violation(cloud.points, pred.polygon)
        rows.append({"eta": eta, "k": pred.k, **rep.to_dict(), "max_sample_violation": viol})
        if not rep.passed or viol > out_tol:
            fails.append(f"eta={eta!r}: {rep} violation={viol}")
    return SuiteResult("hull", not fails, {"rows": rows}, fails)


def z6_escape(eta: float) -> SuiteResult:
    rep = theory.remark62_check(make_params(eta))
    return SuiteResult("remark62", True, rep.to_dict(), [], advisory=True)


def default_etas(n: int = 20, lo: float = 0.2, hi: float | None = None, avoid: float = 1e-6) -> list[float]:
    """``n`` etas in ``(lo, hi)``, nudged away from partition roots."""
    hi = theory.eta_root(4) - 1e-3 if hi is None else hi
    out = []
    for eta in np.linspace(lo, hi, n):
        eta = float(eta)
        res = theory.partition_cell(eta, avoid)
        if isinstance(res, theory.BoundaryAmbiguous):
            eta += 10 * avoid
        out.append(eta)
    return out


SUITES = ("roots", "signs", "orientation_signs", "angles", "corner_angles", "invariance", "membership",
          "disk", "codings", "hull", "remark62")


def run_suite(name: str, etas: Sequence[float] | None = None, cells: Sequence[int] | None = None,
              depth: int = oracle.DEFAULT_DEPTH) -> SuiteResult:
    cells = list(cells) if cells else list(range(4, 9))
    theory_etas = list(etas) if etas else default_etas()
    if name == "roots":
        return roots()
    if name == "signs":
        return signs(cells)
    if name == "orientation_signs":
        return orientation_signs(theory_etas)
    if name == "angles":
        return angles(list(etas) if etas else list(np.linspace(0.05, math.pi / 3 - 0.05, 50)))
    if name == "corner_angles":
        return corner_angles(cells)
    if name == "invariance":
        return invariance(cells)
    if name == "membership":
        return membership(theory_etas)
    if name == "disk":
        return disk(theory_etas)
    if name == "codings":
        return coding_suite(theory_etas)
    if name == "hull":
        return hull_suite(list(etas) if etas else [theory.cell(k).midpoint for k in cells], depth)
    if name == "remark62":
        return z6_escape(etas[0] if etas else math.pi / 3 - 0.01)
    raise ValueError(f"unknown suite {name!r}")
