"""Sign functions, partition roots and the closed-form hull polygon.

``Phi_k`` has a single zero ``eta_k`` in ``(pi/k, pi/(k-1))`` for each
``k >= 4``; the decreasing sequence ``eta_4 > eta_5 > ...`` cuts ``(0, pi/3)``
into the upper region ``[eta_4, pi/3)`` and cells ``[eta_{k+1}, eta_k)``. On
cell ``k`` the hull of ``K_eta`` is the polygon with vertices
``b0, z0, ..., zk, w1, ..., wk`` listed clockwise.
"""

from __future__ import annotations

import functools
import math
from dataclasses import dataclass
from typing import Callable

from .core import (
    ETA_MAX,
    DomainError,
    DragonParams,
    LabeledPoint,
    candidate_set,
    make_params,
    point_b,
    point_w,
    point_z,
)
from .geometry import Containment, Polygon, convex_hull, in_convex_polygon, is_convex_clockwise, orient_im

BISECT_TOL = 1e-13
BISECT_MAX_ITER = 200
BOUNDARY_TOL = 1e-9
# Phi_4 vanishes at pi/3 (there |a| = 1), so its upper bracket end is pulled in
_PHI4_UPPER_INSET = 1e-6


class BracketSignError(ArithmeticError):
    """The bracket endpoints do not have the signs the theory guarantees."""


class NoPredictionError(ValueError):
    pass


class UpperRegionError(NoPredictionError):
    """eta lies in (eta_4, pi/3), where no closed-form vertex list is known."""


class BoundaryAmbiguousError(NoPredictionError):
    """eta is numerically indistinguishable from a partition root."""


def _mod_a(eta: float) -> float:
    return 1.0 / (2.0 * math.cos(eta))


def phi_at(eta: float, k: int) -> float:
    """``Phi_k`` evaluated from eta directly; valid on the closed range [0, pi/3]."""
    m = _mod_a(eta)
    return (1 - m**4) * math.sin((k - 1) * eta) - m**3 * math.sin((k - 2) * eta) + m**k * math.sin(eta)


def phi(p: DragonParams, k: int) -> float:
    _check_k(k)
    m, eta = p.mod_a, p.eta
    return (1 - m**4) * math.sin((k - 1) * eta) - m**3 * math.sin((k - 2) * eta) + m**k * math.sin(eta)


def phi_alt(p: DragonParams, k: int) -> float:
    """Equivalent form of ``Phi_k`` obtained with ``sin(k-2)x = 2 cos x sin(k-1)x - sin kx``."""
    _check_k(k)
    m, eta = p.mod_a, p.eta
    return (1 - m**2 - m**4) * math.sin((k - 1) * eta) + m**3 * math.sin(k * eta) + m**k * math.sin(eta)


def theta(p: DragonParams, k: int) -> float:
    _check_k(k)
    m, eta = p.mod_a, p.eta
    return (1 - m**4) * math.sin(eta) + m ** (k + 1) * math.sin(k * eta)


def psi(p: DragonParams, k: int) -> float:
    _check_k(k)
    m, eta = p.mod_a, p.eta
    return math.sin(eta) + m ** (k - 2) * math.sin((k + 1) * eta)


def _check_k(k: int) -> None:
    if k < 1:
        raise ValueError(f"k must be >= 1, got {k}")


def bisect(f: Callable[[float], float], lo: float, hi: float, tol: float = BISECT_TOL,
           max_iter: int = BISECT_MAX_ITER) -> float:
    """Root of ``f`` on ``[lo, hi]`` given ``f(lo) > 0 > f(hi)``."""
    for _ in range(max_iter):
        if hi - lo <= tol:
            break
        mid = 0.5 * (lo + hi)
        if mid <= lo or mid >= hi:
            break
        fm = f(mid)
        if fm > 0:
            lo = mid
        elif fm < 0:
            hi = mid
        else:
            return mid
    return 0.5 * (lo + hi)


def root_bracket(k: int) -> tuple[float, float]:
    if k < 4:
        raise ValueError(f"partition roots exist for k >= 4, got {k}")
    lo, hi = math.pi / k, math.pi / (k - 1)
    if k == 4:
        hi = ETA_MAX - _PHI4_UPPER_INSET
    return lo, hi


@functools.lru_cache(maxsize=None)
def eta_root(k: int, tol: float = BISECT_TOL) -> float:
    """``eta_k``, the zero of ``Phi_k`` in ``(pi/k, pi/(k-1))``."""
    if tol <= 0:
        raise ValueError("tol must be positive")
    lo, hi = root_bracket(k)
    f_lo, f_hi = phi_at(lo, k), phi_at(hi, k)
    if not (f_lo > 0 and f_hi < 0):
        raise BracketSignError(f"Phi_{k} bracket signs wrong: Phi({lo})={f_lo}, Phi({hi})={f_hi}")
    return bisect(lambda e: phi_at(e, k), lo, hi, tol)


@dataclass(frozen=True)
class PartitionCell:
    k: int
    lower: float  # eta_{k+1}
    upper: float  # eta_k

    def __post_init__(self) -> None:
        if self.k < 4 or not self.lower < self.upper:
            raise ValueError("invalid partition cell")
        if not math.pi / self.k < self.upper < math.pi / (self.k - 1):
            raise ValueError("upper end outside (pi/k, pi/(k-1))")
        if not math.pi / (self.k + 1) < self.lower < math.pi / self.k:
            raise ValueError("lower end outside (pi/(k+1), pi/k)")

    @property
    def midpoint(self) -> float:
        return 0.5 * (self.lower + self.upper)


@dataclass(frozen=True)
class UpperRegion:
    eta_4: float


@dataclass(frozen=True)
class BoundaryAmbiguous:
    k: int  # eta is within tol of eta_k
    eta_k: float


def cell(k: int) -> PartitionCell:
    return PartitionCell(k, eta_root(k + 1), eta_root(k))


def partition_cell(eta: float, tol: float = BOUNDARY_TOL) -> PartitionCell | UpperRegion | BoundaryAmbiguous:
    eta = float(eta)
    if not math.isfinite(eta) or not 0.0 < eta < ETA_MAX:
        raise DomainError(f"eta must lie in (0, pi/3), got {eta!r}")
    e4 = eta_root(4)
    if abs(eta - e4) <= tol:
        return BoundaryAmbiguous(4, e4)
    if eta > e4:
        return UpperRegion(e4)
    # eta in [eta_{k+1}, eta_k) forces pi/(k+1) < eta < pi/(k-1)
    k = max(4, math.floor(math.pi / eta) - 1)
    while True:
        upper, lower = eta_root(k), eta_root(k + 1)
        for j, root in ((k, upper), (k + 1, lower)):
            if abs(eta - root) <= tol:
                return BoundaryAmbiguous(j, root)
        if lower < eta < upper:
            return PartitionCell(k, lower, upper)
        k += 1


@dataclass(frozen=True)
class PredictedHull:
    eta: float
    k: int
    vertices: tuple[LabeledPoint, ...]

    @property
    def polygon(self) -> Polygon:
        return Polygon(tuple(v.point for v in self.vertices), "clockwise")

    @property
    def labels(self) -> list[str]:
        return [str(v.label) for v in self.vertices]


def predicted_hull(p: DragonParams, tol: float = BOUNDARY_TOL) -> PredictedHull:
    res = partition_cell(p.eta, tol)
    if isinstance(res, UpperRegion):
        raise UpperRegionError(f"eta={p.eta} > eta_4={res.eta_4}: vertex list is not known in closed form")
    if isinstance(res, BoundaryAmbiguous):
        if res.k != 4:
            raise BoundaryAmbiguousError(f"eta={p.eta} is within {tol} of eta_{res.k}={res.eta_k}")
        # at eta_4 itself z4 lies on the segment z3 w1, leaving 8 vertices
        k = 3
    else:
        k = res.k
    verts = tuple(candidate_set(p, k))
    pts = [v.point for v in verts]
    if not is_convex_clockwise(pts):
        raise ArithmeticError(f"predicted polygon at eta={p.eta} is not convex and clockwise")
    return PredictedHull(p.eta, k, verts)


def escape_quartic(x: float) -> float:
    return 6 - 9 * x - 6 * x**2 + 16 * x**3 - 7 * x**4


def escape_quartic_derivative(x: float) -> float:
    return -9 - 12 * x + 48 * x**2 - 28 * x**3


@dataclass(frozen=True)
class Z6EscapeReport:
    eta: float
    im_value: float  # Im((conj(b0) - conj(z6)) (w3 - z6))
    h_value: float  # h(|a|^2)
    h_at_1: float
    h_prime_at_1: float
    z6_containment: str  # relative to co{b0, z0..z3, w1..w3}

    @property
    def z6_outside(self) -> bool:
        return self.z6_containment == Containment.OUTSIDE.value

    @property
    def polynomial_sign_agrees(self) -> bool:
        return (self.im_value > 0) == (self.h_value > 0)

    def to_dict(self) -> dict:
        return {
            "eta": self.eta,
            "im_value": self.im_value,
            "h_value": self.h_value,
            "h_at_1": self.h_at_1,
            "h_prime_at_1": self.h_prime_at_1,
            "h_prime_at_1_positive": self.h_prime_at_1 > 0,
            "z6_containment": self.z6_containment,
            "z6_outside_octagon": self.z6_outside,
            "polynomial_sign_agrees": self.polynomial_sign_agrees,
        }


def remark62_check(p: DragonParams) -> Z6EscapeReport:
    """Does z6 escape the octagon ``b0, z0..z3, w1..w3``?  Report only.

    The directly computed orientation quantity is authoritative. The quartic
    ``escape_quartic`` is reported beside it as a secondary indicator; note
    that its derivative at 1 is -1.
    """
    b0, z6, w3 = point_b(p, 0), point_z(p, 6), point_w(p, 3)
    im_value = orient_im(b0, z6, w3)
    octagon = convex_hull([v.point for v in candidate_set(p, 3)])
    where = in_convex_polygon(z6, octagon, 1e-12)
    return Z6EscapeReport(p.eta, im_value, escape_quartic(p.mod_a**2), escape_quartic(1.0),
                          escape_quartic_derivative(1.0), where.value)


def predicted_hull_for(eta: float, tol: float = BOUNDARY_TOL) -> PredictedHull:
    return predicted_hull(make_params(eta), tol)
