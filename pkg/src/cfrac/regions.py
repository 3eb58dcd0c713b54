"""Exact arithmetic on symmetric complex-plane regions.

Incremental gain/angle bounds of a nonlinear one-port live in the complex
plane: a relation with incremental sector ``[a, b]`` occupies the closed
disc whose real-axis diameter is ``[a, b]``, a shunt RC admittance occupies
a right half-plane, and series/parallel interconnection maps these regions
onto each other through Minkowski sums and a modulus inversion
``r e^{jw} -> (1/r) e^{jw}``.  This module implements that calculus exactly
on the closed family the ladder circuits need:

* ``Disc`` -- closed disc with real center, given by center and radius;
* ``HalfPlane`` -- ``{z : Re z >= bound}``, or the reflected ``<=`` variant
  produced by negation;
* ``Sampled`` -- a finite set of boundary points, used for export and
  empirical overlays only (rejected by the exact operations);
* ``PointAtInfinity`` and ``Empty`` -- close the sum/inversion conventions
  for unbounded and vacuous scaled relative graphs.

Every region is symmetric about the real axis, so only the upper half plane
is stored.  All values are immutable and all operations pure.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from enum import Enum
from typing import Union

import numpy as np

__all__ = [
    "Disc",
    "HalfPlane",
    "Sampled",
    "PointAtInfinity",
    "Empty",
    "Region",
    "POINT_AT_INFINITY",
    "EMPTY",
    "SrgPoint",
    "PropertyKind",
    "PropertyTag",
    "RegionError",
    "UnsupportedExactOpError",
    "NotInvertibleError",
    "disc_from_real_interval",
    "minkowski_sum",
    "negate",
    "invert",
    "chord_closure",
    "max_modulus",
    "min_real",
    "classify",
    "region_from_property",
    "contains",
    "contains_region",
    "regions_close",
    "sample_boundary",
    "boundary_csv",
]


class RegionError(ValueError):
    """Malformed region or invalid region-algebra request."""


class UnsupportedExactOpError(RegionError):
    """An exact operation received a sampled (inexact) operand."""


class NotInvertibleError(RegionError):
    """The region contains 0 in its interior, so inversion is not exact."""


@dataclass(frozen=True)
class Disc:
    """Closed disc with real center; its real diameter is [lo, hi]."""

    center: float
    radius: float

    def __post_init__(self) -> None:
        if not (math.isfinite(self.center) and math.isfinite(self.radius)):
            raise RegionError("disc parameters must be finite")
        if self.radius < 0.0:
            raise RegionError(f"disc radius must be nonnegative, got {self.radius}")

    @property
    def lo(self) -> float:
        return self.center - self.radius

    @property
    def hi(self) -> float:
        return self.center + self.radius

    @property
    def in_right_half_plane(self) -> bool:
        """True when the disc lies in the closed right half-plane."""
        return self.center >= self.radius


@dataclass(frozen=True)
class HalfPlane:
    """``{z : Re z >= bound}``; with ``flipped`` set, ``{z : Re z <= bound}``.

    ``bound = -inf`` (unflipped) is the whole plane; it arises as the
    Minkowski sum of opposite half-planes.
    """

    bound: float
    flipped: bool = False

    def __post_init__(self) -> None:
        if math.isnan(self.bound):
            raise RegionError("half-plane bound must not be NaN")

    @property
    def min_re(self) -> float:
        return self.bound if not self.flipped else -math.inf


@dataclass(frozen=True)
class Sampled:
    """Finite list of boundary points with Im >= 0; mirror points implied.

    Only produced for plotting/export and empirical overlays.  Exact
    operations refuse sampled operands.
    """

    points: tuple[tuple[float, float], ...]
    conservative: bool = False

    def __post_init__(self) -> None:
        for re, im in self.points:
            if not (math.isfinite(re) and math.isfinite(im)):
                raise RegionError("sampled points must be finite")
            if im < 0.0:
                raise RegionError("sampled points are stored with Im >= 0")


@dataclass(frozen=True)
class PointAtInfinity:
    """The single point at infinity of the extended complex plane."""


@dataclass(frozen=True)
class Empty:
    """The empty region."""


Region = Union[Disc, HalfPlane, Sampled, PointAtInfinity, Empty]

POINT_AT_INFINITY = PointAtInfinity()
EMPTY = Empty()


@dataclass(frozen=True)
class SrgPoint:
    """One gain/angle observation: ``modulus * exp(j*angle)`` with Im >= 0.

    ``modulus = inf`` marks the multivalued case (distinct outputs for one
    input); such points carry no angle information.
    """

    modulus: float
    angle: float

    def __post_init__(self) -> None:
        if math.isnan(self.modulus) or self.modulus < 0.0:
            raise RegionError(f"modulus must be >= 0, got {self.modulus}")
        if not -1e-12 <= self.angle <= math.pi + 1e-12:
            raise RegionError(f"angle must lie in [0, pi], got {self.angle}")
        object.__setattr__(self, "angle", min(max(self.angle, 0.0), math.pi))

    @classmethod
    def from_complex(cls, z: complex) -> "SrgPoint":
        return cls(abs(z), abs(cmath.phase(z)))

    @property
    def is_infinite(self) -> bool:
        return math.isinf(self.modulus)

    @property
    def re(self) -> float:
        return self.modulus * math.cos(self.angle)

    @property
    def im(self) -> float:
        return self.modulus * math.sin(self.angle)

    def as_complex(self) -> complex:
        return complex(self.re, self.im)


class PropertyKind(Enum):
    POSITIVE = "positive"
    INPUT_STRICT = "input_strict"
    OUTPUT_STRICT = "output_strict"
    GAIN = "gain"


@dataclass(frozen=True)
class PropertyTag:
    """One incremental input/output property certificate.

    ``value`` is the coercivity margin mu for INPUT_STRICT, the incremental
    secant gain gamma for OUTPUT_STRICT (the relation is 1/gamma
    cocoercive), the Lipschitz bound lambda for GAIN, and None for POSITIVE.
    Degenerate zero parameters occur only for point regions at the origin.
    """

    kind: PropertyKind
    value: float | None = None

    def __post_init__(self) -> None:
        if self.kind is PropertyKind.POSITIVE:
            if self.value is not None:
                raise RegionError("positivity carries no parameter")
        else:
            if self.value is None or math.isnan(self.value) or self.value < 0.0:
                raise RegionError(f"{self.kind.value} needs a nonnegative parameter")


def _complex_of(p: "SrgPoint | complex") -> complex:
    if isinstance(p, SrgPoint):
        return p.as_complex()
    return complex(p)


def _is_infinite_point(p: "SrgPoint | complex") -> bool:
    if isinstance(p, SrgPoint):
        return p.is_infinite
    return math.isinf(complex(p).real) or math.isinf(complex(p).imag)


def _contains_infinity(region: Region) -> bool:
    """Whether the closure of the region in the extended plane includes inf."""
    return isinstance(region, (HalfPlane, PointAtInfinity))


def disc_from_real_interval(a: float, b: float) -> Disc:
    """Closed disc whose real-axis diameter is ``[a, b]``."""
    if a > b:
        raise RegionError(f"invalid interval: {a} > {b}")
    return Disc((a + b) / 2.0, (b - a) / 2.0)


def minkowski_sum(a: Region, b: Region) -> Region:
    """Exact Minkowski sum of two exact regions.

    Disc + Disc adds centers and radii.  Any sum involving a half-plane is
    again a half-plane whose bound adds the extreme real parts.  An empty
    operand yields the empty region, unless the other operand reaches
    infinity, in which case the sum is the point at infinity (the convention
    that admits unbounded scaled relative graphs).
    """
    if isinstance(a, Sampled) or isinstance(b, Sampled):
        raise UnsupportedExactOpError("Minkowski sum is exact-only; got a sampled operand")
    if isinstance(a, Empty) or isinstance(b, Empty):
        other = b if isinstance(a, Empty) else a
        return POINT_AT_INFINITY if _contains_infinity(other) else EMPTY
    if isinstance(a, PointAtInfinity) or isinstance(b, PointAtInfinity):
        return POINT_AT_INFINITY
    if isinstance(a, Disc) and isinstance(b, Disc):
        return Disc(a.center + b.center, a.radius + b.radius)
    if isinstance(a, Disc) and isinstance(b, HalfPlane):
        a, b = b, a
    if isinstance(a, HalfPlane) and isinstance(b, Disc):
        edge = b.lo if not a.flipped else b.hi
        return HalfPlane(a.bound + edge, a.flipped)
    if isinstance(a, HalfPlane) and isinstance(b, HalfPlane):
        if a.flipped == b.flipped:
            return HalfPlane(a.bound + b.bound, a.flipped)
        return HalfPlane(-math.inf, False)  # opposite orientations cover the plane
    raise RegionError(f"unsupported operands: {type(a).__name__}, {type(b).__name__}")


def negate(a: Region) -> Region:
    """Pointwise negation ``{-z : z in A}``."""
    if isinstance(a, Disc):
        return Disc(-a.center, a.radius)
    if isinstance(a, HalfPlane):
        return HalfPlane(-a.bound, not a.flipped)
    if isinstance(a, Sampled):
        pts = tuple(sorted((-re, im) for re, im in a.points))
        return Sampled(pts, a.conservative)
    return a  # Empty and PointAtInfinity are symmetric


def invert(a: Region) -> Region:
    """Image under the modulus inversion ``r e^{jw} -> (1/r) e^{jw}``.

    By symmetry about the real axis this coincides with the Moebius map
    ``z -> 1/z`` on our regions, so discs map to discs or half-planes and
    conversely; 0 and infinity are exchanged.  The operand must not contain
    0 in its interior.
    """
    if isinstance(a, Sampled):
        raise UnsupportedExactOpError("inversion is exact-only; got a sampled operand")
    if isinstance(a, Empty):
        return EMPTY
    if isinstance(a, PointAtInfinity):
        return Disc(0.0, 0.0)
    if isinstance(a, HalfPlane):
        if a.flipped:
            # {Re <= b} is the mirror of {Re >= -b}; inversion commutes with
            # the mirror, both being radial about the origin.
            return negate(invert(negate(a)))
        if a.bound < 0.0:
            raise NotInvertibleError("half-plane contains 0 in its interior")
        if a.bound == 0.0:
            return HalfPlane(0.0)
        return disc_from_real_interval(0.0, 1.0 / a.bound)
    if isinstance(a, Disc):
        lo, hi = a.lo, a.hi
        if lo < 0.0:
            raise NotInvertibleError("disc contains 0 in its interior")
        if hi == 0.0:  # the single point {0}
            return POINT_AT_INFINITY
        if lo == 0.0:
            return HalfPlane(1.0 / hi)
        return disc_from_real_interval(1.0 / hi, 1.0 / lo)
    raise RegionError(f"unsupported operand: {type(a).__name__}")


def chord_closure(a: Region) -> Region:
    """Smallest represented superset closed under vertical chords [z, conj z].

    Discs and half-planes already satisfy the chord property and are
    returned unchanged.  A sampled set gains, for every stored point, the
    real-axis crossing of its chord; the vertical fill between Im = 0 and
    the stored point is implied by the Im >= 0 storage convention.
    """
    if isinstance(a, Sampled):
        pts = set(a.points)
        pts.update((re, 0.0) for re, _ in a.points)
        return Sampled(tuple(sorted(pts)), a.conservative)
    return a


def max_modulus(a: Region) -> float:
    """sup |z| over the region; inf for unbounded regions, 0 for the empty one."""
    if isinstance(a, Disc):
        return abs(a.center) + a.radius
    if isinstance(a, (HalfPlane, PointAtInfinity)):
        return math.inf
    if isinstance(a, Sampled):
        return max((math.hypot(re, im) for re, im in a.points), default=0.0)
    return 0.0


def min_real(a: Region) -> float:
    """inf Re z over the region (+inf for the empty region)."""
    if isinstance(a, Disc):
        return a.lo
    if isinstance(a, HalfPlane):
        return a.min_re
    if isinstance(a, Sampled):
        return min((re for re, _ in a.points), default=math.inf)
    if isinstance(a, Empty):
        return math.inf
    raise RegionError("the point at infinity has no real part")


def classify(a: Region) -> frozenset[PropertyTag]:
    """Read the incremental input/output properties off an exact region.

    A bounded region gives a gain bound (its maximum modulus); a region in
    the closed right half-plane is positive; strictly positive real parts
    give input-strictness with margin min Re; a disc whose real diameter is
    [0, gamma] (after enlargement to the smallest such disc) gives
    output-strictness with secant gain gamma.
    """
    if isinstance(a, Sampled):
        raise UnsupportedExactOpError("classification is exact-only")
    tags: set[PropertyTag] = set()
    if isinstance(a, Disc):
        tags.add(PropertyTag(PropertyKind.GAIN, abs(a.center) + a.radius))
        if a.lo >= 0.0:
            tags.add(PropertyTag(PropertyKind.POSITIVE))
            tags.add(PropertyTag(PropertyKind.OUTPUT_STRICT, a.hi))
        if a.lo > 0.0:
            tags.add(PropertyTag(PropertyKind.INPUT_STRICT, a.lo))
    elif isinstance(a, HalfPlane):
        if not a.flipped and a.bound >= 0.0:
            tags.add(PropertyTag(PropertyKind.POSITIVE))
            if a.bound > 0.0:
                tags.add(PropertyTag(PropertyKind.INPUT_STRICT, a.bound))
    return frozenset(tags)


def region_from_property(tag: PropertyTag) -> Region:
    """The exact region certified by a single property tag."""
    if tag.kind is PropertyKind.POSITIVE:
        return HalfPlane(0.0)
    value = tag.value
    assert value is not None
    if not math.isfinite(value):
        raise RegionError("property parameter must be finite")
    if tag.kind is PropertyKind.GAIN:
        return Disc(0.0, value)
    if tag.kind is PropertyKind.OUTPUT_STRICT:
        return disc_from_real_interval(0.0, value)
    if tag.kind is PropertyKind.INPUT_STRICT:
        return HalfPlane(value)
    raise RegionError(f"unknown property kind {tag.kind}")


def contains(a: Region, p: "SrgPoint | complex", tol: float = 0.0) -> bool:
    """Whether the point lies in the region inflated by ``tol``.

    The inflation is radial for discs and a bound shift for half-planes;
    for sampled regions it is a distance-to-point-set test.
    """
    if tol < 0.0:
        raise RegionError("tolerance must be nonnegative")
    if _is_infinite_point(p):
        return _contains_infinity(a)
    z = _complex_of(p)
    if isinstance(a, Disc):
        return math.hypot(z.real - a.center, abs(z.imag)) <= a.radius + tol
    if isinstance(a, HalfPlane):
        if a.flipped:
            return z.real <= a.bound + tol
        return z.real >= a.bound - tol
    if isinstance(a, Sampled):
        return any(
            math.hypot(z.real - re, abs(z.imag) - im) <= tol for re, im in a.points
        )
    return False  # Empty, or PointAtInfinity vs a finite point


def containment_excess(a: Region, p: "SrgPoint | complex") -> float:
    """Distance from the point to the region (0 when contained)."""
    if _is_infinite_point(p):
        return 0.0 if _contains_infinity(a) else math.inf
    z = _complex_of(p)
    if isinstance(a, Disc):
        return max(0.0, math.hypot(z.real - a.center, abs(z.imag)) - a.radius)
    if isinstance(a, HalfPlane):
        if a.flipped:
            return max(0.0, z.real - a.bound)
        return max(0.0, a.bound - z.real)
    if isinstance(a, Sampled):
        return min(
            (math.hypot(z.real - re, abs(z.imag) - im) for re, im in a.points),
            default=math.inf,
        )
    return math.inf


def contains_region(outer: Region, inner: Region, tol: float = 0.0) -> bool:
    """Whether ``inner`` is a subset of ``outer`` inflated by ``tol``."""
    if isinstance(inner, Empty):
        return True
    if isinstance(outer, Empty):
        return False
    if isinstance(inner, PointAtInfinity):
        return _contains_infinity(outer)
    if isinstance(outer, PointAtInfinity):
        return False
    if isinstance(inner, Sampled):
        return all(contains(outer, complex(re, im), tol) for re, im in inner.points)
    if isinstance(outer, Sampled):
        raise UnsupportedExactOpError("sampled regions cannot act as exact supersets")
    if isinstance(outer, Disc):
        if isinstance(inner, Disc):
            return abs(inner.center - outer.center) + inner.radius <= outer.radius + tol
        return False  # a half-plane never fits in a disc
    if isinstance(outer, HalfPlane):
        if isinstance(inner, Disc):
            if outer.flipped:
                return inner.hi <= outer.bound + tol
            return inner.lo >= outer.bound - tol
        if isinstance(inner, HalfPlane):
            if inner.flipped != outer.flipped:
                return math.isinf(outer.bound) and not outer.flipped
            if outer.flipped:
                return inner.bound <= outer.bound + tol
            return inner.bound >= outer.bound - tol
    raise RegionError(f"unsupported operands: {type(outer).__name__}, {type(inner).__name__}")


def regions_close(a: Region, b: Region, tol: float = 1e-12) -> bool:
    """Componentwise equality of two regions within ``tol``."""
    if type(a) is not type(b):
        return False
    if isinstance(a, Disc):
        assert isinstance(b, Disc)
        return abs(a.center - b.center) <= tol and abs(a.radius - b.radius) <= tol
    if isinstance(a, HalfPlane):
        assert isinstance(b, HalfPlane)
        return a.flipped == b.flipped and abs(a.bound - b.bound) <= tol
    if isinstance(a, Sampled):
        assert isinstance(b, Sampled)
        if len(a.points) != len(b.points):
            return False
        return all(
            abs(p[0] - q[0]) <= tol and abs(p[1] - q[1]) <= tol
            for p, q in zip(a.points, b.points)
        )
    return True  # Empty / PointAtInfinity compare by type alone


def sample_boundary(
    a: Region, m: int, im_window: float | None = None
) -> list[tuple[float, float]]:
    """``m`` uniformly parametrized points on the upper-half boundary.

    Half-plane boundaries are vertical lines, sampled on Im in
    ``[0, im_window]``; the default window is ``2 * max(1, |bound|)`` and is
    recorded in the CSV header by :func:`boundary_csv`.
    """
    if m < 2:
        raise RegionError("need at least two boundary samples")
    if isinstance(a, Disc):
        thetas = np.linspace(0.0, math.pi, m)
        return [
            (a.center + a.radius * math.cos(t), a.radius * math.sin(t)) for t in thetas
        ]
    if isinstance(a, HalfPlane):
        if math.isinf(a.bound):
            raise RegionError("the whole plane has no boundary to sample")
        w = im_window if im_window is not None else 2.0 * max(1.0, abs(a.bound))
        return [(a.bound, im) for im in np.linspace(0.0, w, m)]
    if isinstance(a, Sampled):
        return list(a.points)
    return []  # Empty and PointAtInfinity have nothing to sample


def _decimal(x: float) -> str:
    """Decimal (positional) notation with 12 significant digits."""
    return np.format_float_positional(x, precision=12, unique=False, trim="-")


def boundary_csv(a: Region, m: int, im_window: float | None = None) -> str:
    """Boundary samples as CSV text with header ``re,im``.

    For half-planes the finite imaginary sampling window is declared in a
    leading comment line.
    """
    lines = []
    if isinstance(a, HalfPlane):
        w = im_window if im_window is not None else 2.0 * max(1.0, abs(a.bound))
        lines.append(f"# im_window={_decimal(w)}")
        lines.append("re,im")
        pts = sample_boundary(a, m, w)
    else:
        lines.append("re,im")
        pts = sample_boundary(a, m, im_window)
    lines.extend(f"{_decimal(re)},{_decimal(im)}" for re, im in pts)
    return "\n".join(lines) + "\n"
