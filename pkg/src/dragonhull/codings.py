"""Necessary condition on the codings of hull vertices of similitude IFS attractors.

For an IFS of complex similitudes ``f_i(z) = a_i z + b_i`` whose attractor is
not a single point, an extreme point of the convex hull coded by
``prefix (j1...jk)^inf`` forces ``a_j1 ... a_jk`` to be a positive real. The
orbit ``v_p = A^p (v - w) + w`` around the period's fixed point ``w`` is the
witness: if ``A`` is not a positive real, ``w`` ends up strictly inside the
hull of finitely many orbit points. Passing the check never certifies that a
point is extreme.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

from .core import Coding, DragonParams, Label, compose_affine, dragon_maps, word_fixed_point
from .geometry import Containment, GeometryError, arg, convex_hull, in_convex_polygon, orient_im

POSITIVITY_TOL = 1e-9
WITNESS_CAP = 1000


@dataclass(frozen=True)
class SimilitudeIFS:
    maps: tuple[tuple[complex, complex], ...]

    def __post_init__(self) -> None:
        maps = tuple((complex(a), complex(b)) for a, b in self.maps)
        object.__setattr__(self, "maps", maps)
        if not maps:
            raise ValueError("an IFS needs at least one map")
        for i, (a, b) in enumerate(maps, start=1):
            if not all(math.isfinite(x) for x in (a.real, a.imag, b.real, b.imag)):
                raise ValueError(f"map {i} has non-finite coefficients")
            if not 0.0 < abs(a) < 1.0:
                raise ValueError(f"map {i} is not a contraction: |a_{i}| = {abs(a)}")

    @classmethod
    def dragon(cls, p: DragonParams) -> "SimilitudeIFS":
        return cls(dragon_maps(p))

    def __len__(self) -> int:
        return len(self.maps)

    def fixed_points(self) -> list[complex]:
        return [b / (1 - a) for a, b in self.maps]


def linear_part_product(ifs: SimilitudeIFS, word: Sequence[int]) -> complex:
    if not word:
        raise ValueError("empty word")
    A, _ = compose_affine(ifs.maps, word)
    return A


@dataclass(frozen=True)
class Verdict:
    passes: bool
    product: complex
    alpha: float  # argument of the product in [0, 2*pi)

    def __str__(self) -> str:
        if self.passes:
            return f"PASSES (product {self.product.real:.17g})"
        return f"FAILS (alpha = {self.alpha:.17g})"


def extreme_necessary_check(ifs: SimilitudeIFS, coding: Coding, tol: float = POSITIVITY_TOL) -> Verdict:
    prod = linear_part_product(ifs, coding.period)
    positive = abs(prod.imag) <= tol * max(abs(prod), 1e-300) and prod.real > 0
    return Verdict(positive, prod, 0.0 if positive else arg(prod))


def surrounding_orbit(
    ifs: SimilitudeIFS, period: Sequence[int], v: complex, p_max: int, tol: float = 1e-12
) -> list[complex]:
    """``v_1 .. v_pmax`` with ``v_p = A^p (v - w) + w``."""
    if p_max < 2:
        raise ValueError("p_max must be at least 2")
    A = linear_part_product(ifs, period)
    w = word_fixed_point(ifs.maps, period)
    if abs(v - w) <= tol * max(1.0, abs(w)):
        raise ValueError("v coincides with the fixed point; the orbit is degenerate")
    out = []
    Ap = 1 + 0j
    for _ in range(p_max):
        Ap *= A
        out.append(Ap * (v - w) + w)
    return out


def _strictly_surrounds(w: complex, pts: list[complex]) -> bool:
    scale = max(abs(q - w) for q in pts)
    try:
        hull = convex_hull(pts)
    except GeometryError:
        # collinear orbit (A negative real): w must sit strictly between two points
        d = pts[0] - w
        ts = [((q - w) * d.conjugate()).real / abs(d) for q in pts]
        if any(abs(orient_im(pts[0], w, q)) > 1e-12 * scale * scale for q in pts):
            return False
        return min(ts) < 0.0 < max(ts)
    return in_convex_polygon(w, hull, 1e-12 * scale) is Containment.INSIDE


def containment_witness(
    ifs: SimilitudeIFS, period: Sequence[int], v: complex, p_cap: int = WITNESS_CAP
) -> int | None:
    """Smallest ``p >= 2`` with ``w`` strictly inside ``co(v_1..v_p)``, or None."""
    w = word_fixed_point(ifs.maps, period)
    orbit = surrounding_orbit(ifs, period, v, p_cap)
    for p in range(2, p_cap + 1):
        if _strictly_surrounds(w, orbit[:p]):
            return p
    return None


def check_not_singleton(ifs: SimilitudeIFS) -> bool:
    fps = ifs.fixed_points()
    return any(abs(f - fps[0]) > 1e-15 * max(1.0, abs(fps[0])) for f in fps[1:])


def hull_vertex_codings(k: int) -> dict[Label, Coding]:
    """Codings of the candidate hull vertices ``b0, z0..zk, w1..wk``.

    ``z0`` is the fixed point of ``f_2211``, ``z_j = f_1^j(z0)``,
    ``w_j = f_2(z_j)`` and ``b0 = f_2(w_1)``.
    """
    period = (2, 2, 1, 1)
    out = {Label("b", 0): Coding((2, 2, 1), period)}
    for j in range(k + 1):
        out[Label("z", j)] = Coding((1,) * j, period)
    for j in range(1, k + 1):
        out[Label("w", j)] = Coding((2,) + (1,) * j, period)
    return out
