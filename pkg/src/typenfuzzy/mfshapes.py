"""Parametric membership shapes and the calibrated "young" exemplars.

Two one-dimensional shapes are provided, :class:`Step` and
:class:`PiecewiseLinear`, plus :class:`IntervalType2Spec`, which bounds the
primary degree between a lower and an upper shape and assigns a triangular
secondary profile over that band.
"""

from __future__ import annotations

import bisect
import math
from dataclasses import dataclass
from typing import Sequence, Union

from .errors import ArgumentError, DomainError, InvalidShape, ShapeError
from .fuzzcore import MembershipFn, MembershipStack

BELOW = "below"
ABOVE = "above"

# Apex position of the young exemplar's secondary triangle, as a fraction of
# the primary band.  Solves (0.98 - 0.88) / (0.98 - apex) = 0.83 at age 27 with
# band [0.57, 0.98]; the descending-edge root is used (apex ~0.8595).
YOUNG_APEX = 0.7061416397296505

DEFAULT_GRID_SIZE = 101


def _finite(v, what):
    if isinstance(v, bool) or not isinstance(v, (int, float)) or not math.isfinite(v):
        raise InvalidShape(f"{what} must be a finite number, got {v!r}")
    return float(v)


@dataclass(frozen=True)
class Step:
    """Crisp threshold shape.

    With ``sense="below"`` an input is a member iff it is strictly below the
    threshold; ``sense="above"`` is the complement (member iff ``v >= threshold``).
    """

    threshold: float
    sense: str = BELOW
    unit: str = ""

    def __post_init__(self):
        object.__setattr__(self, "threshold", _finite(self.threshold, "threshold"))
        if self.sense not in (BELOW, ABOVE):
            raise InvalidShape(f"sense must be {BELOW!r} or {ABOVE!r}, got {self.sense!r}")

    def __call__(self, v: float) -> float:
        below = v < self.threshold
        return 1.0 if below == (self.sense == BELOW) else 0.0

    def breakpoints(self):
        return (math.nextafter(self.threshold, -math.inf), self.threshold)


@dataclass(frozen=True)
class PiecewiseLinear:
    """Linear interpolation through ``(input, degree)`` anchors.

    Outside the anchor range the nearest endpoint degree is extended.
    """

    anchors: tuple[tuple[float, float], ...]
    unit: str = ""

    def __post_init__(self):
        anchors = tuple((_finite(x, "anchor input"), _finite(d, "anchor degree"))
                        for x, d in self.anchors)
        if not anchors:
            raise InvalidShape("a piecewise-linear shape needs at least one anchor")
        for (x0, _), (x1, _) in zip(anchors, anchors[1:]):
            if not x0 < x1:
                raise InvalidShape(f"anchor inputs must be strictly increasing ({x0} !< {x1})")
        for x, d in anchors:
            if not 0.0 <= d <= 1.0:
                raise InvalidShape(f"anchor degree {d} at {x} outside [0, 1]")
        object.__setattr__(self, "anchors", anchors)
        object.__setattr__(self, "_xs", tuple(x for x, _ in anchors))

    def __call__(self, v: float) -> float:
        xs = self._xs
        i = bisect.bisect_left(xs, v)
        if i < len(xs) and xs[i] == v:
            return self.anchors[i][1]
        if i == 0:
            return self.anchors[0][1]
        if i == len(xs):
            return self.anchors[-1][1]
        (x0, d0), (x1, d1) = self.anchors[i - 1], self.anchors[i]
        t = (v - x0) / (x1 - x0)
        d = d0 + (d1 - d0) * t
        # rounding must not leave the bracketing segment
        return min(max(d, min(d0, d1)), max(d0, d1))

    def breakpoints(self):
        return self._xs


ShapeSpec = Union[Step, PiecewiseLinear]


@dataclass(frozen=True)
class IntervalType2Spec:
    """Interval type-2 shape with a triangular secondary profile.

    At input ``x`` the primary degree ranges over ``[lower(x), upper(x)]``.
    The secondary degree is 1 at ``lower(x) + apex * (upper(x) - lower(x))``,
    falls linearly to 0 at both band edges and is 0 outside the band.
    """

    lower: ShapeSpec
    upper: ShapeSpec
    apex: float
    primary_grid_size: int = DEFAULT_GRID_SIZE
    unit: str = ""

    def __post_init__(self):
        apex = _finite(self.apex, "apex")
        if not 0.0 <= apex <= 1.0:
            raise InvalidShape(f"apex {apex} outside [0, 1]")
        object.__setattr__(self, "apex", apex)
        n = self.primary_grid_size
        if isinstance(n, bool) or not isinstance(n, int) or n < 2:
            raise InvalidShape(f"primary_grid_size must be an integer >= 2, got {n!r}")
        # both shapes are linear between these points, so checking them suffices
        for x in sorted(set(self.lower.breakpoints()) | set(self.upper.breakpoints())):
            if self.lower(x) > self.upper(x):
                raise InvalidShape(f"lower shape exceeds upper shape at {x}")

    def bounds(self, v: float) -> tuple[float, float]:
        lo, hi = self.lower(v), self.upper(v)
        if lo > hi:
            raise InvalidShape(f"lower bound {lo} exceeds upper bound {hi} at {v}")
        return lo, hi

    def apex_at(self, v: float) -> float:
        lo, hi = self.bounds(v)
        return lo + self.apex * (hi - lo)

    def __call__(self, v: float, primary: float) -> float:
        lo, hi = self.bounds(v)
        if primary < lo or primary > hi:
            return 0.0
        if lo == hi:
            return 1.0
        top = lo + self.apex * (hi - lo)
        if primary == top:
            return 1.0
        if primary < top:
            return (primary - lo) / (top - lo)
        return (hi - primary) / (hi - top)

    def primary_grid(self, v: float) -> tuple[float, ...]:
        """Primary degrees materialized at ``v``.

        The points ``k / (size - 1)`` falling inside the band, plus both band
        edges, ascending and without duplicates.
        """
        lo, hi = self.bounds(v)
        last = self.primary_grid_size - 1
        points = {k / last for k in range(self.primary_grid_size) if lo <= k / last <= hi}
        points.update((lo, hi))
        return tuple(sorted(points))


@dataclass(frozen=True)
class BandPoint:
    """Type-1 shape returning the fixed degree ``level`` wherever it lies in the band.

    Used to express an interval type-2 primary grid as a family of type-1
    membership functions; outside the band it is undefined.
    """

    spec: IntervalType2Spec
    level: float

    def __call__(self, v: float) -> float:
        lo, hi = self.spec.bounds(v)
        if lo <= self.level <= hi:
            return self.level
        raise DomainError(f"primary {self.level} outside band [{lo}, {hi}] at {v}")


def eval_shape(s: ShapeSpec, v: float) -> float:
    if isinstance(v, bool) or not isinstance(v, (int, float)) or not math.isfinite(v):
        raise ArgumentError(f"shape input must be finite, got {v!r}")
    d = s(v)
    if not 0.0 <= d <= 1.0:
        raise ShapeError(f"shape produced {d} at {v}")
    return d


def eval_interval_type2(s: IntervalType2Spec, v: float, primary: float) -> float:
    if isinstance(v, bool) or not isinstance(v, (int, float)) or not math.isfinite(v):
        raise ArgumentError(f"shape input must be finite, got {v!r}")
    if not 0.0 <= primary <= 1.0:
        raise ArgumentError(f"primary degree {primary} outside [0, 1]")
    d = s(v, primary)
    if not 0.0 <= d <= 1.0:
        raise ShapeError(f"secondary profile produced {d} at ({v}, {primary})")
    return d


def young_exemplars() -> tuple[Step, PiecewiseLinear, IntervalType2Spec]:
    """Crisp, type-1 and interval type-2 readings of "young" over ages 0-100.

    Calibrated so that age 27 gets degree 1 (crisp), 0.9 (type-1), a primary
    band of [0.57, 0.98] and secondary 0.83 at primary 0.88 (type-2).
    """
    crisp = Step(40.0, BELOW, unit="years")
    type1 = PiecewiseLinear(((0, 1), (20, 1), (27, 0.9), (60, 0), (100, 0)), unit="years")
    lower = PiecewiseLinear(((0, 0.9), (15, 0.9), (27, 0.57), (55, 0), (100, 0)), unit="years")
    upper = PiecewiseLinear(((0, 1), (25, 1), (27, 0.98), (70, 0), (100, 0)), unit="years")
    type2 = IntervalType2Spec(lower, upper, YOUNG_APEX, DEFAULT_GRID_SIZE, unit="years")
    return crisp, type1, type2


YOUNG_RANGE = (0.0, 100.0)


def uniform_grid(lo: float, hi: float, size: int = DEFAULT_GRID_SIZE) -> tuple[float, ...]:
    if size < 1:
        raise ArgumentError("grid size must be positive")
    if size == 1:
        return (float(lo),)
    if not lo < hi:
        raise ArgumentError(f"empty grid range [{lo}, {hi}]")
    last = size - 1
    return tuple(lo + (hi - lo) * k / last for k in range(size))


def sample_shape(s, grid: Sequence[float], primary_grid: Sequence[float] | None = None):
    """Tabulate a shape on ``grid``.

    One-dimensional shapes give ``(input, degree)`` rows.  Interval type-2
    shapes give ``(input, primary, secondary)`` rows for every primary on
    ``primary_grid`` (default: ``primary_grid_size`` uniform points on [0, 1]).
    """
    grid = list(grid)
    if not grid:
        raise ArgumentError("sample grid is empty")
    if any(not a < b for a, b in zip(grid, grid[1:])):
        raise ArgumentError("sample grid must be strictly increasing")
    if isinstance(s, IntervalType2Spec):
        if primary_grid is None:
            primary_grid = uniform_grid(0.0, 1.0, s.primary_grid_size)
        return [(v, p, eval_interval_type2(s, v, p)) for v in grid for p in primary_grid]
    return [(v, eval_shape(s, v)) for v in grid]


def shape_fn(s: ShapeSpec, domain=None, name: str = "") -> MembershipFn:
    return MembershipFn(1, shape=s, domain=domain, name=name)


def primary_family(s: IntervalType2Spec, domain=None, name: str = "") -> tuple[MembershipFn, ...]:
    """Type-1 membership functions generating the primary degrees of ``s``.

    The band edges plus one :class:`BandPoint` per primary grid point.
    """
    last = s.primary_grid_size - 1
    fns = [MembershipFn(1, shape=s.lower, domain=domain, name=f"{name}.lower"),
           MembershipFn(1, shape=s.upper, domain=domain, name=f"{name}.upper")]
    fns.extend(MembershipFn(1, shape=BandPoint(s, k / last), domain=domain, name=f"{name}.grid{k}")
               for k in range(s.primary_grid_size))
    return tuple(fns)


def interval_type2_stack(s: IntervalType2Spec, domain=None, name: str = ""):
    """Level-2 membership stack realizing ``s`` on its discretized primary grid."""
    top = MembershipFn(2, shape=s, domain=domain, name=name)
    return MembershipStack((primary_family(s, domain, name),), top)
