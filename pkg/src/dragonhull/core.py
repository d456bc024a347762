"""The eta-parameterized dragon IFS and its closed-form point families.

For ``0 < eta < pi/3`` the dragon curve ``K_eta`` is the attractor of

    f1(z) = a z,    f2(z) = 1 - conj(a) z,    a = exp(-i eta) / (2 cos eta).

Words are composed like functions: ``apply_word(p, [i1, ..., ik], z)`` is
``f_i1(f_i2(...f_ik(z)))``, so the last symbol acts first.
"""

from __future__ import annotations

import cmath
import functools
import math
from dataclasses import dataclass
from typing import NamedTuple, Sequence

ETA_MAX = math.pi / 3

_FAMILY_RANK = {"b": 0, "z": 1, "w": 2}


class DomainError(ValueError):
    """Parameter outside the range where the dragon construction is defined."""


@dataclass(frozen=True)
class DragonParams:
    eta: float
    a: complex
    mod_a: float
    c: float


def make_params(eta: float) -> DragonParams:
    eta = float(eta)
    if not math.isfinite(eta) or not 0.0 < eta < ETA_MAX:
        raise DomainError(f"eta must lie in the open interval (0, pi/3), got {eta!r}")
    a = cmath.exp(-1j * eta) / (2.0 * math.cos(eta))
    mod_a = abs(a)
    c = 1.0 / (1.0 - mod_a**4)
    return DragonParams(eta, a, mod_a, c)


def map_f1(p: DragonParams, z: complex) -> complex:
    return p.a * z


def map_f2(p: DragonParams, z: complex) -> complex:
    return 1.0 - p.a.conjugate() * z


def dragon_maps(p: DragonParams) -> tuple[tuple[complex, complex], ...]:
    """The two maps as ``(linear part, translation)`` pairs."""
    return ((p.a, 0j), (-p.a.conjugate(), 1 + 0j))


def cpow(a: complex, n: int) -> complex:
    """``a**n`` by repeated multiplication, so every caller rounds identically."""
    out = 1 + 0j
    for _ in range(n):
        out *= a
    return out


def point_z(p: DragonParams, k: int) -> complex:
    _check_index(k)
    return p.c * cpow(p.a, k + 1)


def point_w(p: DragonParams, k: int) -> complex:
    _check_index(k)
    return 1.0 - p.c * p.mod_a**2 * cpow(p.a, k)


def point_b(p: DragonParams, k: int) -> complex:
    _check_index(k)
    return p.a + p.c * p.mod_a**4 * cpow(p.a, k)


def _check_index(k: int) -> None:
    if k < 0:
        raise ValueError(f"index must be non-negative, got {k}")


@functools.total_ordering
@dataclass(frozen=True)
class Label:
    """Symbolic name of a candidate point, e.g. ``Label("z", 3)`` for z3."""

    family: str
    index: int

    def __post_init__(self) -> None:
        if self.family not in _FAMILY_RANK:
            raise ValueError(f"unknown label family {self.family!r}")

    def __str__(self) -> str:
        return f"{self.family}{self.index}"

    def __lt__(self, other: "Label") -> bool:
        return (_FAMILY_RANK[self.family], self.index) < (_FAMILY_RANK[other.family], other.index)

    @classmethod
    def parse(cls, text: str) -> "Label":
        return cls(text[0], int(text[1:]))


class LabeledPoint(NamedTuple):
    label: Label
    point: complex


def candidate_set(p: DragonParams, k: int) -> list[LabeledPoint]:
    """``b0, z0..zk, w1..wk`` in that order (2k + 2 points)."""
    if k < 1:
        raise ValueError(f"k must be >= 1, got {k}")
    out = [LabeledPoint(Label("b", 0), point_b(p, 0))]
    out += [LabeledPoint(Label("z", j), point_z(p, j)) for j in range(k + 1)]
    out += [LabeledPoint(Label("w", j), point_w(p, j)) for j in range(1, k + 1)]
    return out


def label_point(p: DragonParams, label: Label) -> complex:
    return {"b": point_b, "z": point_z, "w": point_w}[label.family](p, label.index)


def _check_word(word: Sequence[int], m: int = 2) -> tuple[int, ...]:
    word = tuple(int(s) for s in word)
    for s in word:
        if not 1 <= s <= m:
            raise ValueError(f"invalid symbol {s}; expected 1..{m}")
    return word


def apply_word(p: DragonParams, word: Sequence[int], z: complex) -> complex:
    maps = (map_f1, map_f2)
    for s in reversed(_check_word(word)):
        z = maps[s - 1](p, z)
    return z


@dataclass(frozen=True)
class Coding:
    """Eventually periodic word ``prefix (period)^inf`` over symbols 1..m."""

    prefix: tuple[int, ...]
    period: tuple[int, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "prefix", tuple(int(s) for s in self.prefix))
        object.__setattr__(self, "period", tuple(int(s) for s in self.period))
        if not self.period:
            raise ValueError("period must be non-empty")
        if any(s < 1 for s in self.prefix + self.period):
            raise ValueError("symbols are numbered from 1")

    def __str__(self) -> str:
        head = "".join(map(str, self.prefix))
        return f"{head}({''.join(map(str, self.period))})^inf"


def compose_affine(maps: Sequence[tuple[complex, complex]], word: Sequence[int]) -> tuple[complex, complex]:
    """``(A, B)`` with ``f_word(z) = A z + B``."""
    word = _check_word(word, len(maps))
    A, B = 1 + 0j, 0j
    for s in reversed(word):
        a_s, b_s = maps[s - 1]
        A, B = a_s * A, a_s * B + b_s
    return A, B


def word_fixed_point(maps: Sequence[tuple[complex, complex]], word: Sequence[int]) -> complex:
    if not word:
        raise ValueError("empty word has no unique fixed point")
    A, B = compose_affine(maps, word)
    return B / (1 - A)


def coded_point(p: DragonParams, coding: Coding) -> complex:
    """The point of ``K_eta`` with the given eventually periodic coding."""
    w = word_fixed_point(dragon_maps(p), coding.period)
    return apply_word(p, coding.prefix, w)
