"""One-port circuit primitives and the alternating series/parallel ladder.

A chain is an alternating list of impedance and admittance slots
``[Z0, Y0, Z1, Y1, ...]``; the port relation is the nested form

    v0 = (Z0 + (Y0 + (Z1 + (Y1 + ...)^-1)^-1)^-1)(i0),

the nonlinear analogue of a continued fraction of transfer functions.
Reduction happens in two flavours: ``truncate_chain`` deletes whole units
furthest from the port, and ``truncate_capacitors`` removes only the far
capacitors and lumps the remaining resistive tail into a single static
nonlinearity with a certified incremental sector.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, field
from enum import Enum
from typing import Callable, Iterable, Sequence, Union

import numpy as np

from .regions import (
    Disc,
    HalfPlane,
    PropertyKind,
    PropertyTag,
    Region,
    disc_from_real_interval,
)

__all__ = [
    "Orientation",
    "SectorBound",
    "TanhPlusId",
    "Saturation",
    "PwlTable",
    "StaticMap",
    "StaticNL",
    "LinearResistor",
    "ShuntRC",
    "Short",
    "Open",
    "Element",
    "CircuitChain",
    "CircuitError",
    "NotInvertibleStaticError",
    "UnsupportedLumpingError",
    "SingularNetworkError",
    "eval_static",
    "invert_static",
    "element_region",
    "natural_orientation",
    "truncate_chain",
    "truncate_capacitors",
    "lump_resistive_tail",
    "lump_sample_grid",
    "propagate_properties",
    "PortProperties",
    "lti_port_transfer",
    "lattice_chain",
    "load_pwl",
    "save_pwl",
]

BISECTION_TOL = 1e-10


class CircuitError(ValueError):
    """Malformed element or chain."""


class NotInvertibleStaticError(CircuitError):
    """Static map is not strictly increasing, so no functional inverse."""


class UnsupportedLumpingError(CircuitError):
    """Tail contains an element the resistive lumping cannot absorb."""


class SingularNetworkError(CircuitError):
    """The static network solve failed to bracket a solution."""


class Orientation(Enum):
    IMPEDANCE = "impedance"  # current -> voltage
    ADMITTANCE = "admittance"  # voltage -> current

    @property
    def inverse(self) -> "Orientation":
        if self is Orientation.IMPEDANCE:
            return Orientation.ADMITTANCE
        return Orientation.IMPEDANCE


@dataclass(frozen=True)
class SectorBound:
    """Incremental sector ``mu * dx^2 <= dx * dy <= lam * dx^2``."""

    mu: float
    lam: float

    def __post_init__(self) -> None:
        if not (0.0 <= self.mu <= self.lam):
            raise CircuitError(f"need 0 <= mu <= lam, got ({self.mu}, {self.lam})")

    def inverse(self) -> "SectorBound":
        """Sector of the inverse map; defined only when mu > 0."""
        if self.mu <= 0.0:
            raise NotInvertibleStaticError("sector with mu = 0 has no inverse sector")
        return SectorBound(1.0 / self.lam, 1.0 / self.mu)


# ---------------------------------------------------------------------------
# Static scalar maps


@dataclass(frozen=True)
class TanhPlusId:
    """y = tanh(x) + x, slopes in (1, 2]."""

    kind = "TANH_PLUS_ID"

    def __call__(self, x):
        return np.tanh(x) + x

    def slope_bounds(self) -> tuple[float, float]:
        return (1.0, 2.0)

    def solve(self, y):
        """Vectorized inverse.  The slope bracket [y/2, y] always contains
        the solution; 64 bisection steps pin it to double precision."""
        y = np.asarray(y, dtype=float)
        lo = np.minimum(y / 2.0, y)
        hi = np.maximum(y / 2.0, y)
        for _ in range(64):
            mid = 0.5 * (lo + hi)
            below = self(mid) < y
            lo = np.where(below, mid, lo)
            hi = np.where(below, hi, mid)
        out = 0.5 * (lo + hi)
        return out if out.ndim else float(out)


@dataclass(frozen=True)
class Saturation:
    """y = clip(x, -limit, limit), slopes in [0, 1]; not invertible."""

    limit: float
    kind = "SATURATION"

    def __post_init__(self) -> None:
        if not self.limit > 0.0:
            raise CircuitError("saturation limit must be positive")

    def __call__(self, x):
        return np.clip(x, -self.limit, self.limit)

    def slope_bounds(self) -> tuple[float, float]:
        return (0.0, 1.0)

    def solve(self, y):
        raise NotInvertibleStaticError("saturation is not strictly increasing")


class PwlTable:
    """Monotone piecewise-linear map through (xs, ys), end-slope extrapolated."""

    kind = "PWL"

    def __init__(self, xs: Sequence[float], ys: Sequence[float]):
        xs = np.asarray(xs, dtype=float)
        ys = np.asarray(ys, dtype=float)
        if xs.ndim != 1 or xs.shape != ys.shape or len(xs) < 2:
            raise CircuitError("PWL table needs matching 1-D x/y arrays of length >= 2")
        if not (np.all(np.isfinite(xs)) and np.all(np.isfinite(ys))):
            raise CircuitError("PWL table values must be finite")
        if not np.all(np.diff(xs) > 0.0):
            raise CircuitError("PWL x values must be strictly increasing")
        if not np.all(np.diff(ys) > 0.0):
            raise CircuitError("PWL table must be strictly increasing")
        self.xs = xs
        self.ys = ys

    def __call__(self, x):
        x = np.asarray(x, dtype=float)
        y = np.interp(x, self.xs, self.ys)
        slo = (self.ys[1] - self.ys[0]) / (self.xs[1] - self.xs[0])
        shi = (self.ys[-1] - self.ys[-2]) / (self.xs[-1] - self.xs[-2])
        y = np.where(x < self.xs[0], self.ys[0] + slo * (x - self.xs[0]), y)
        y = np.where(x > self.xs[-1], self.ys[-1] + shi * (x - self.xs[-1]), y)
        return y if y.ndim else float(y)

    def covers(self, x: float) -> bool:
        """False when evaluation at x extrapolates beyond the table."""
        return bool(self.xs[0] <= x <= self.xs[-1])

    def solve(self, y):
        out = self.inverse()(y)
        return out

    def inverse(self) -> "PwlTable":
        return PwlTable(self.ys, self.xs)

    def slope_bounds(self) -> tuple[float, float]:
        slopes = np.diff(self.ys) / np.diff(self.xs)
        return (float(slopes.min()), float(slopes.max()))

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, PwlTable)
            and np.array_equal(self.xs, other.xs)
            and np.array_equal(self.ys, other.ys)
        )

    __hash__ = object.__hash__

    def __repr__(self) -> str:
        return f"PwlTable({len(self.xs)} points on [{self.xs[0]:g}, {self.xs[-1]:g}])"


StaticMap = Union[TanhPlusId, Saturation, PwlTable]


def load_pwl(text: str) -> PwlTable:
    """Parse a PWL table file: lines of ``x y``, ``#`` comments allowed."""
    xs, ys = [], []
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if len(parts) != 2:
            raise CircuitError(f"bad PWL line: {raw!r}")
        xs.append(float(parts[0]))
        ys.append(float(parts[1]))
    return PwlTable(xs, ys)


def save_pwl(table: PwlTable) -> str:
    """Serialize a PWL table; full precision so tables round-trip exactly."""
    lines = [f"{x:.17g} {y:.17g}" for x, y in zip(table.xs, table.ys)]
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# Elements


@dataclass(frozen=True)
class StaticNL:
    """Static nonlinearity with its map stored in a fixed orientation.

    The sector certificate applies to the stored map.  ``fit_residual``
    records the worst-case solve residual when the element was produced by
    lumping; it is metadata and takes no part in equality.
    """

    map: StaticMap
    orientation: Orientation
    sector: SectorBound
    fit_residual: float | None = field(default=None, compare=False)

    def __post_init__(self) -> None:
        if isinstance(self.map, PwlTable):
            lo, hi = self.map.slope_bounds()
            slack = 1e-6 * max(1.0, self.sector.lam)
            if lo < self.sector.mu - slack or hi > self.sector.lam + slack:
                raise CircuitError(
                    f"PWL slopes [{lo:g}, {hi:g}] escape the sector "
                    f"[{self.sector.mu:g}, {self.sector.lam:g}]"
                )


def static_nl(map_: StaticMap, orientation: Orientation, sector: SectorBound | None = None) -> StaticNL:
    """StaticNL with the sector defaulting to the map's slope bounds."""
    if sector is None:
        sector = SectorBound(*map_.slope_bounds())
    return StaticNL(map_, orientation, sector)


@dataclass(frozen=True)
class LinearResistor:
    resistance: float  # ohms

    def __post_init__(self) -> None:
        if not self.resistance > 0.0:
            raise CircuitError("resistance must be positive")


@dataclass(frozen=True)
class ShuntRC:
    """Parallel conductance/capacitance, admittance G + C d/dt."""

    conductance: float  # siemens
    capacitance: float  # farads

    def __post_init__(self) -> None:
        if self.conductance < 0.0 or self.capacitance < 0.0:
            raise CircuitError("RC values must be nonnegative")
        if self.conductance == 0.0 and self.capacitance == 0.0:
            raise CircuitError("RC shunt needs G > 0 or C > 0")


@dataclass(frozen=True)
class Short:
    """Zero impedance, the relation {(i, 0)}."""


@dataclass(frozen=True)
class Open:
    """Zero admittance, the relation {(v, 0)}."""


Element = Union[StaticNL, LinearResistor, ShuntRC, Short, Open]


def natural_orientation(e: Element) -> Orientation:
    if isinstance(e, StaticNL):
        return e.orientation
    if isinstance(e, (LinearResistor, Short)):
        return Orientation.IMPEDANCE
    return Orientation.ADMITTANCE  # ShuntRC, Open


def eval_static(e: StaticNL, x):
    """Evaluate a static nonlinearity in its stored orientation."""
    if not isinstance(e, StaticNL):
        raise CircuitError("eval_static needs a static nonlinearity")
    return e.map(x)


def invert_static(e: StaticNL, y: float, tol: float = BISECTION_TOL) -> float:
    """x with |map(x) - y| <= tol, by bisection on a bracket grown from 0."""
    if not isinstance(e, StaticNL):
        raise CircuitError("invert_static needs a static nonlinearity")
    if e.sector.mu <= 0.0:
        raise NotInvertibleStaticError("map is not strictly increasing (mu = 0)")
    f = e.map
    lo, hi = 0.0, 0.0
    step = 1.0
    for _ in range(200):
        if f(lo) <= y <= f(hi):
            break
        if f(hi) < y:
            hi += step
        if f(lo) > y:
            lo -= step
        step *= 2.0
    else:
        raise SingularNetworkError("failed to bracket the inverse")
    for _ in range(400):
        mid = 0.5 * (lo + hi)
        fm = f(mid)
        if abs(fm - y) <= tol:
            return mid
        if fm < y:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


def element_region(e: Element) -> Region:
    """Scaled relative graph of one element in its natural orientation."""
    if isinstance(e, StaticNL):
        return disc_from_real_interval(e.sector.mu, e.sector.lam)
    if isinstance(e, LinearResistor):
        return Disc(e.resistance, 0.0)
    if isinstance(e, ShuntRC):
        if e.capacitance == 0.0:
            return Disc(e.conductance, 0.0)
        return HalfPlane(e.conductance)
    return Disc(0.0, 0.0)  # Short (impedance) and Open (admittance)


# ---------------------------------------------------------------------------
# Chains


@dataclass(frozen=True)
class CircuitChain:
    """Alternating ladder; even slots are impedances, odd slots admittances.

    Consecutive series or shunt elements are encoded with Open/Short fillers
    in between, which are electrically inert.  The chain may end with either
    a shunt or a dangling series branch to the return rail.
    """

    slots: tuple[Element, ...]
    truncation_depth: int | None = field(default=None, compare=False)  # metadata

    def __post_init__(self) -> None:
        if not self.slots:
            raise CircuitError("chain needs at least one element")
        for k, e in enumerate(self.slots):
            want = self.slot_orientation(k)
            if isinstance(e, Short) and want is not Orientation.IMPEDANCE:
                raise CircuitError(f"short circuit in admittance slot {k}")
            if isinstance(e, Open) and want is not Orientation.ADMITTANCE:
                raise CircuitError(f"open circuit in impedance slot {k}")
            if isinstance(e, ShuntRC) and want is not Orientation.ADMITTANCE:
                raise CircuitError(f"RC shunt in impedance slot {k}")

    @staticmethod
    def slot_orientation(k: int) -> Orientation:
        return Orientation.IMPEDANCE if k % 2 == 0 else Orientation.ADMITTANCE

    @property
    def n_units(self) -> int:
        """Number of complete impedance/admittance unit pairs after the first."""
        return (len(self.slots) - 1) // 2

    def slot_region(self, k: int) -> Region:
        """Element region re-oriented to the slot it occupies."""
        from .regions import invert  # local import keeps module load order simple

        r = element_region(self.slots[k])
        if natural_orientation(self.slots[k]) is self.slot_orientation(k):
            return r
        return invert(r)


def lattice_chain(
    n: int,
    conductance: float = 1.0,
    capacitance: float = 1.0,
    series: Element | None = None,
) -> CircuitChain:
    """Port RC shunt followed by ``n`` units of series nonlinearity + RC shunt.

    The default series element is the tanh-plus-identity resistor stored as
    an admittance (current as a function of the branch voltage drop).
    """
    if n < 0:
        raise CircuitError("unit count must be nonnegative")
    if series is None:
        series = static_nl(TanhPlusId(), Orientation.ADMITTANCE)
    rc = ShuntRC(conductance, capacitance)
    slots: list[Element] = [Short(), rc]
    for _ in range(n):
        slots.extend((series, rc))
    return CircuitChain(tuple(slots))


def truncate_chain(chain: CircuitChain, r: int) -> CircuitChain:
    """Keep units 0..r and delete every element further from the port."""
    if r < 0:
        raise CircuitError("truncation depth must be nonnegative")
    if r >= chain.n_units:
        warnings.warn(f"truncation depth {r} >= unit count {chain.n_units}; no-op")
        return chain
    return CircuitChain(chain.slots[: 2 * r + 2], truncation_depth=r)


def lump_sample_grid(pwl_points: int, range_max: float) -> np.ndarray:
    """Symmetric current grid with a point at 0 and geometric spacing.

    Geometric spacing over three decades resolves the knee of saturating
    nonlinearities near the origin without wasting points in the linear
    far field.
    """
    if pwl_points < 2 or range_max <= 0.0:
        raise CircuitError("need pwl_points >= 2 and range_max > 0")
    n_pos = max(pwl_points // 2, 1)
    pos = np.geomspace(range_max * 1e-3, range_max, n_pos)
    return np.concatenate((-pos[::-1], [0.0], pos))


def _impedance_fn(e: Element) -> Callable[[np.ndarray], np.ndarray]:
    """Voltage drop as a function of branch current."""
    if isinstance(e, LinearResistor):
        return lambda i: e.resistance * i
    if isinstance(e, Short):
        return lambda i: np.zeros_like(i)
    if isinstance(e, StaticNL):
        if e.orientation is Orientation.IMPEDANCE:
            return e.map
        return e.map.solve
    raise UnsupportedLumpingError(f"{type(e).__name__} cannot act as a static impedance")


def _admittance_fn(e: Element) -> Callable[[np.ndarray], np.ndarray]:
    """Branch current as a function of voltage."""
    if isinstance(e, LinearResistor):
        return lambda v: v / e.resistance
    if isinstance(e, Open):
        return lambda v: np.zeros_like(v)
    if isinstance(e, StaticNL):
        if e.orientation is Orientation.ADMITTANCE:
            return e.map
        return e.map.solve
    raise UnsupportedLumpingError(f"{type(e).__name__} cannot act as a static admittance")


def _tail_port_map(tail: Sequence[Element]) -> Callable[[np.ndarray], tuple[np.ndarray, np.ndarray]]:
    """(port current, port voltage) of a static ladder as functions of the
    far-end seed (innermost node voltage, or innermost branch current when
    the ladder ends in a series element).

    Both outputs are strictly increasing in the seed because every element
    map is monotone, which is what makes the outer bisection well posed.
    """
    fns = []
    for j, e in enumerate(tail):
        if j % 2 == 0:
            fns.append(("z", _impedance_fn(e)))
        else:
            fns.append(("y", _admittance_fn(e)))

    def port_state(seed: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
        kind, fn = fns[-1]
        if kind == "y":
            w = seed
            i = fn(w)
        else:
            i = seed
            w = fn(i)
        for kind, fn in fns[-2::-1]:
            if kind == "z":
                w = w + fn(i)
            else:
                i = i + fn(w)
        return i, w

    return port_state


def _solve_tail(
    tail: Sequence[Element], currents: np.ndarray, tol: float
) -> tuple[np.ndarray, float]:
    """Port voltages of the static ladder at the requested port currents.

    Shooting method: a single bisection on the far-end seed vector, with the
    bracket grown by doubling, replaces solving each parallel split in turn;
    both find the same (unique, by monotonicity) network solution.
    """
    port_state = _tail_port_map(tail)
    target = np.asarray(currents, dtype=float)
    mag = np.maximum(1.0, np.abs(target))
    lo, hi = -mag, mag.copy()
    for _ in range(200):
        i_hi, _ = port_state(hi)
        i_lo, _ = port_state(lo)
        ok = (i_lo <= target) & (i_hi >= target)
        if np.all(ok):
            break
        hi = np.where(i_hi < target, hi * 2.0, hi)
        lo = np.where(i_lo > target, lo * 2.0, lo)
    else:
        raise SingularNetworkError("failed to bracket the ladder solution")
    residual = np.inf
    for _ in range(300):
        mid = 0.5 * (lo + hi)
        i_mid, _ = port_state(mid)
        residual = float(np.max(np.abs(i_mid - target)))
        if residual <= tol:
            break
        below = i_mid < target
        lo = np.where(below, mid, lo)
        hi = np.where(below, hi, mid)
    seed = 0.5 * (lo + hi)
    i_fin, v_fin = port_state(seed)
    return v_fin, float(np.max(np.abs(i_fin - target)))


def _interval_inv(iv: tuple[float, float]) -> tuple[float, float]:
    lo, hi = iv
    inv_hi = math.inf if lo == 0.0 else (0.0 if math.isinf(lo) else 1.0 / lo)
    inv_lo = 0.0 if math.isinf(hi) else (math.inf if hi == 0.0 else 1.0 / hi)
    return (inv_lo, inv_hi)


def _element_interval(e: Element, want: Orientation) -> tuple[float, float]:
    """Slope interval of a static element, re-oriented to the slot."""
    if isinstance(e, LinearResistor):
        iv = (e.resistance, e.resistance)
        nat = Orientation.IMPEDANCE
    elif isinstance(e, Short):
        return (0.0, 0.0) if want is Orientation.IMPEDANCE else (math.inf, math.inf)
    elif isinstance(e, Open):
        return (0.0, 0.0) if want is Orientation.ADMITTANCE else (math.inf, math.inf)
    elif isinstance(e, StaticNL):
        iv = (e.sector.mu, e.sector.lam)
        nat = e.orientation
    else:
        raise UnsupportedLumpingError(f"{type(e).__name__} has no static sector")
    return iv if nat is want else _interval_inv(iv)


def _tail_sector(tail: Sequence[Element]) -> SectorBound:
    """Incremental sector of the lumped ladder by interval folding.

    Folds the same series-add / parallel-add-and-invert recursion as the
    region calculus, once with lower endpoints and once with upper ones.
    """
    z: tuple[float, float] | None = None
    for j in range(len(tail) - 1, -1, -1):
        slot = Orientation.IMPEDANCE if j % 2 == 0 else Orientation.ADMITTANCE
        iv = _element_interval(tail[j], slot)
        if z is None:
            z = iv if slot is Orientation.IMPEDANCE else _interval_inv(iv)
            continue
        if slot is Orientation.IMPEDANCE:
            z = (iv[0] + z[0], iv[1] + z[1])
        else:
            zi = _interval_inv(z)
            y = (iv[0] + zi[0], iv[1] + zi[1])
            z = _interval_inv(y)
    assert z is not None
    if not (math.isfinite(z[0]) and math.isfinite(z[1])):
        raise UnsupportedLumpingError("lumped tail has an unbounded sector")
    return SectorBound(z[0], z[1])


def lump_resistive_tail(
    tail: Sequence[Element], samples: Sequence[float], tol: float = BISECTION_TOL
) -> StaticNL:
    """Collapse a static ladder into one equivalent impedance nonlinearity.

    The tail must alternate static impedances and admittances starting with
    an impedance (the branch that will carry the port current).  Returns a
    monotone PWL impedance through the solved (current, voltage) samples,
    carrying the interval-folded sector certificate and the worst-case
    current residual of the solve.
    """
    tail = tuple(tail)
    if not tail:
        raise UnsupportedLumpingError("empty tail")
    for e in tail:
        if isinstance(e, ShuntRC):
            raise UnsupportedLumpingError("dynamic element in resistive tail")
    xs = np.asarray(sorted(samples), dtype=float)
    if len(xs) < 2:
        raise CircuitError("need at least two sample currents")
    ys, residual = _solve_tail(tail, xs, tol)
    sector = _tail_sector(tail)
    return StaticNL(PwlTable(xs, ys), Orientation.IMPEDANCE, sector, fit_residual=residual)


def truncate_capacitors(
    chain: CircuitChain,
    r: int,
    pwl_points: int = 64,
    range_max: float = 5.0,
    tol: float = BISECTION_TOL,
) -> CircuitChain:
    """Remove the capacitors beyond depth ``r`` and lump the resistive tail.

    RC shunts past unit ``r`` lose their capacitor (leaving bare
    conductances); the purely static tail is then collapsed into a single
    PWL impedance appended after unit ``r``.
    """
    if r < 0:
        raise CircuitError("truncation depth must be nonnegative")
    if r >= chain.n_units:
        warnings.warn(f"truncation depth {r} >= unit count {chain.n_units}; no-op")
        return chain
    cut = 2 * r + 2
    kept = chain.slots[:cut]
    tail: list[Element] = []
    for e in chain.slots[cut:]:
        if isinstance(e, ShuntRC):
            if e.conductance > 0.0:
                tail.append(LinearResistor(1.0 / e.conductance))
            else:
                tail.append(Open())
        elif isinstance(e, (StaticNL, LinearResistor, Short, Open)):
            tail.append(e)
        else:
            raise UnsupportedLumpingError(f"cannot lump {type(e).__name__}")
    if len(tail) == 1:
        lumped = tail[0]
    else:
        lumped = lump_resistive_tail(tail, lump_sample_grid(pwl_points, range_max), tol)
    return CircuitChain(kept + (lumped,), truncation_depth=r)


# ---------------------------------------------------------------------------
# Property propagation (the tag-level counterpart of the region calculus)


@dataclass(frozen=True)
class _Tags:
    positive: bool
    mu: float | None
    gamma: float | None
    lam: float | None


def _tags_of_region(region: Region) -> _Tags:
    from .regions import classify

    positive = False
    mu = gamma = lam = None
    for tag in classify(region):
        if tag.kind is PropertyKind.POSITIVE:
            positive = True
        elif tag.kind is PropertyKind.INPUT_STRICT:
            mu = tag.value
        elif tag.kind is PropertyKind.OUTPUT_STRICT:
            gamma = tag.value
        elif tag.kind is PropertyKind.GAIN:
            lam = tag.value
    return _Tags(positive, mu, gamma, lam)


def _sum_tags(a: _Tags, b: _Tags) -> _Tags:
    positive = a.positive and b.positive
    mu = None
    if positive and (a.mu is not None or b.mu is not None):
        mu = (a.mu or 0.0) + (b.mu or 0.0)
    gamma = a.gamma + b.gamma if (a.gamma is not None and b.gamma is not None) else None
    lam = a.lam + b.lam if (a.lam is not None and b.lam is not None) else None
    return _Tags(positive, mu, gamma, lam)


def _invert_tags(t: _Tags) -> _Tags:
    # Inversion swaps input- and output-strictness; a coercivity margin mu
    # also bounds the inverse's gain by 1/mu.
    mu = 1.0 / t.gamma if (t.gamma is not None and t.gamma > 0.0) else None
    gamma = 1.0 / t.mu if (t.mu is not None and t.mu > 0.0) else None
    lam = 1.0 / t.mu if (t.mu is not None and t.mu > 0.0) else None
    return _Tags(t.positive, mu, gamma, lam)


def _tagset(t: _Tags) -> frozenset[PropertyTag]:
    tags: set[PropertyTag] = set()
    if t.positive:
        tags.add(PropertyTag(PropertyKind.POSITIVE))
    if t.mu is not None:
        tags.add(PropertyTag(PropertyKind.INPUT_STRICT, t.mu))
    if t.gamma is not None:
        tags.add(PropertyTag(PropertyKind.OUTPUT_STRICT, t.gamma))
    if t.lam is not None:
        tags.add(PropertyTag(PropertyKind.GAIN, t.lam))
    return frozenset(tags)


@dataclass(frozen=True)
class PortProperties:
    impedance: frozenset[PropertyTag]
    admittance: frozenset[PropertyTag]


def propagate_properties(chain: CircuitChain) -> PortProperties:
    """Fold the four interconnection closure rules through the chain.

    Sums preserve input- and output-strict incremental positivity, and
    inversion swaps the two; in particular a chain of input-strict shunts
    and output-strict series impedances is output-strict from current to
    voltage and input-strict from voltage to current.  Works purely on
    property certificates; the region calculus is the exact counterpart.
    """
    slot_tags: list[_Tags] = []
    for k, e in enumerate(chain.slots):
        t = _tags_of_region(element_region(e))
        if natural_orientation(e) is not chain.slot_orientation(k):
            t = _invert_tags(t)
        slot_tags.append(t)
    pending = slot_tags[-1]
    for t in slot_tags[-2::-1]:
        pending = _sum_tags(t, _invert_tags(pending))
    impedance = pending  # slot 0 is an impedance
    return PortProperties(_tagset(impedance), _tagset(_invert_tags(impedance)))


# ---------------------------------------------------------------------------
# Linear frequency response


def lti_port_transfer(chain: CircuitChain, s: complex) -> complex:
    """Port impedance of an all-linear chain at the complex frequency ``s``.

    Evaluates the continued fraction Z0(s) + 1/(Y0(s) + 1/(...)) with
    constant resistors and RC shunt admittances G + C s.  A division by
    zero along the way marks a pole; the result is then infinite.
    """

    def value(e: Element, want: Orientation) -> complex:
        if isinstance(e, LinearResistor):
            v = complex(e.resistance)
            nat = Orientation.IMPEDANCE
        elif isinstance(e, ShuntRC):
            v = e.conductance + e.capacitance * s
            nat = Orientation.ADMITTANCE
        elif isinstance(e, Short):
            return 0j if want is Orientation.IMPEDANCE else complex(math.inf)
        elif isinstance(e, Open):
            return 0j if want is Orientation.ADMITTANCE else complex(math.inf)
        else:
            raise CircuitError("transfer evaluation needs an all-linear chain")
        if nat is want:
            return v
        return _safe_inv(v)

    def _safe_inv(z: complex) -> complex:
        if z == 0:
            return complex(math.inf)
        if math.isinf(abs(z)):
            return 0j
        return 1.0 / z

    k = len(chain.slots) - 1
    acc = value(chain.slots[k], chain.slot_orientation(k))
    for k in range(len(chain.slots) - 2, -1, -1):
        acc = value(chain.slots[k], chain.slot_orientation(k)) + _safe_inv(acc)
    return acc
