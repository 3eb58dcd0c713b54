"""Scaled-relative-graph propagation through a chain and error certificates.

Folding the sum and inversion rules from the far end of a ladder gives an
exact disc bound on the current-to-voltage graph.  For the unit-RC lattice
this reproduces the scalar recursion

    b_1 = 1 / (1 + 1/(lam + 1)),   b_n = 1 / (1 + 1/(lam + b_{n-1})),

whose fixed point is the positive root of x^2 + lam*x - lam; at lam = 1 the
limit is the inverse golden ratio.  The difference region of the full and
the truncated graphs bounds the incremental gain from input to truncation
error, which is what the reduction certificates rest on.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass
from typing import Callable, Sequence

from .elements import CircuitChain
from .regions import (
    NotInvertibleError,
    Region,
    SrgPoint,
    chord_closure,
    containment_excess,
    contains,
    invert,
    minkowski_sum,
    negate,
)
from .signals import Signal, angle, norm

__all__ = [
    "BoundSeries",
    "lambda_chain",
    "PortSrg",
    "chain_srg",
    "SrgPropagationError",
    "error_region",
    "secant_error",
    "EmpiricalSrg",
    "empirical_srg",
    "ContainmentReport",
    "check_containment",
    "points_csv",
]


class SrgPropagationError(ValueError):
    """Region propagation hit a non-invertible intermediate region."""


@dataclass(frozen=True)
class BoundSeries:
    """Values of the lattice gain-bound recursion and its fixed point."""

    lam: float
    values: tuple[float, ...]
    fixed_point: float

    @property
    def final(self) -> float:
        return self.values[-1]


def lambda_chain(lam: float, n: int) -> BoundSeries:
    """First ``n`` values of the gain-bound recursion for sector bound lam.

    The recursion is a contraction toward the positive root of
    x^2 + lam*x - lam = 0, so the values converge geometrically.
    """
    if lam <= 0.0 or n < 1:
        raise ValueError("need lam > 0 and n >= 1")
    values = []
    x = 1.0
    for _ in range(n):
        x = 1.0 / (1.0 + 1.0 / (lam + x))
        values.append(x)
    fixed_point = (-lam + math.sqrt(lam * lam + 4.0 * lam)) / 2.0
    return BoundSeries(lam, tuple(values), fixed_point)


@dataclass(frozen=True)
class PortSrg:
    impedance: Region
    admittance: Region


def chain_srg(chain: CircuitChain) -> PortSrg:
    """Exact region bounds for both port relations of a chain.

    Folds from the far end: the running region is alternately summed with
    an element region and inverted, with the chord closure applied to the
    inverted operand as the sum rule requires.  The admittance bound is the
    inversion of the impedance bound.
    """
    k = len(chain.slots) - 1
    acc = chain.slot_region(k)
    for k in range(len(chain.slots) - 2, -1, -1):
        try:
            acc = minkowski_sum(chain.slot_region(k), chord_closure(invert(acc)))
        except NotInvertibleError as exc:
            raise SrgPropagationError(f"region straddles 0 while folding slot {k + 1}: {exc}") from exc
    impedance = acc  # slot 0 is an impedance
    try:
        admittance = invert(impedance)
    except NotInvertibleError as exc:
        raise SrgPropagationError(f"port region straddles 0: {exc}") from exc
    return PortSrg(impedance, admittance)


def error_region(a: Region, b: Region) -> Region:
    """Region bound for the difference relation of two systems, A - B."""
    return minkowski_sum(a, chord_closure(negate(b)))


def secant_error(gamma: float, gamma_hat: float) -> float:
    """Loss of certified secant gain under truncation, gamma - gamma_hat.

    A negative value means the reduced model's certificate is *larger* than
    the original's, which can happen when the final impedance is modified;
    it is returned signed, with a warning.
    """
    if gamma_hat <= 0.0:
        raise ValueError("secant gains must be positive")
    if gamma < gamma_hat:
        warnings.warn(
            f"truncation enlarged the certified secant gain ({gamma_hat} > {gamma})"
        )
    return gamma - gamma_hat


@dataclass(frozen=True)
class EmpiricalSrg:
    points: tuple[SrgPoint, ...]
    skipped_pairs: tuple[int, ...]


def empirical_srg(
    relation: Callable[[Signal], Signal],
    pairs: Sequence[tuple[Signal, Signal]],
    zero_tol: float = 1e-12,
) -> EmpiricalSrg:
    """Gain/angle points of a relation sampled from input pairs.

    For each pair the point is |y1 - y2| / |u1 - u2| at the angle between
    the increments.  Pairs with a vanishing input increment are skipped
    (recorded by index); a vanishing output increment gives the origin.
    """
    points: list[SrgPoint] = []
    skipped: list[int] = []
    for idx, (u1, u2) in enumerate(pairs):
        du = Signal(u1.dt, u1.samples - u2.samples)
        ndu = norm(du)
        if ndu < zero_tol:
            skipped.append(idx)
            continue
        y1, y2 = relation(u1), relation(u2)
        dy = Signal(y1.dt, y1.samples - y2.samples)
        ndy = norm(dy)
        if ndy < zero_tol:
            points.append(SrgPoint(0.0, 0.0))
            continue
        points.append(SrgPoint(ndy / ndu, angle(du, dy)))
    return EmpiricalSrg(tuple(points), tuple(skipped))


@dataclass(frozen=True)
class ContainmentReport:
    total: int
    violations: int
    worst_excess: float

    @property
    def passed(self) -> bool:
        return self.violations == 0


def check_containment(
    points: Sequence[SrgPoint], region: Region, tol: float = 0.0
) -> ContainmentReport:
    """Count points escaping the region inflated by tol; report the worst."""
    if not points:
        warnings.warn("containment check over an empty point list is vacuous")
        return ContainmentReport(0, 0, 0.0)
    violations = 0
    worst = 0.0
    for p in points:
        excess = containment_excess(region, p)
        worst = max(worst, excess)
        if not contains(region, p, tol):
            violations += 1
    return ContainmentReport(len(points), violations, worst)


def points_csv(points: Sequence[SrgPoint]) -> str:
    """Empirical points as CSV with header ``modulus,angle,re,im``."""
    lines = ["modulus,angle,re,im"]
    lines.extend(
        f"{p.modulus:.12g},{p.angle:.12g},{p.re:.12g},{p.im:.12g}" for p in points
    )
    return "\n".join(lines) + "\n"
