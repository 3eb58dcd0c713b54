"""Uniformly sampled finite-horizon signals and the excitation library.

Signals stand in for square-integrable functions on [0, T]; the inner
product is the left Riemann sum dt * sum(u_k * y_k), whose error is
dominated by the integrator's, so tolerances compose.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

__all__ = [
    "Signal",
    "SignalError",
    "inner",
    "norm",
    "angle",
    "Sine",
    "Step",
    "Multisine",
    "sample",
    "multisine_pairs",
]


class SignalError(ValueError):
    """Malformed signal or incompatible sampling grids."""


@dataclass(frozen=True, eq=False)
class Signal:
    """Real time series on a uniform grid t_k = k * dt."""

    dt: float
    samples: np.ndarray

    def __post_init__(self) -> None:
        samples = np.asarray(self.samples, dtype=float)
        if self.dt <= 0.0 or not math.isfinite(self.dt):
            raise SignalError(f"dt must be positive and finite, got {self.dt}")
        if samples.ndim != 1 or samples.size == 0:
            raise SignalError("samples must be a nonempty 1-D array")
        if not np.all(np.isfinite(samples)):
            raise SignalError("samples must be finite")
        object.__setattr__(self, "samples", samples)

    def __len__(self) -> int:
        return len(self.samples)

    @property
    def duration(self) -> float:
        return (len(self.samples) - 1) * self.dt

    @property
    def times(self) -> np.ndarray:
        return np.arange(len(self.samples)) * self.dt


def _check_compatible(u: Signal, y: Signal) -> None:
    if len(u) != len(y) or abs(u.dt - y.dt) > 1e-15 * max(u.dt, y.dt):
        raise SignalError("signals live on different sampling grids")


def inner(u: Signal, y: Signal) -> float:
    """Left-Riemann inner product dt * sum(u_k * y_k)."""
    _check_compatible(u, y)
    return u.dt * float(u.samples @ y.samples)


def norm(u: Signal) -> float:
    return math.sqrt(inner(u, u))


def angle(u: Signal, y: Signal) -> float:
    """acos of the normalized inner product, clamped into [-1, 1]."""
    nu, ny = norm(u), norm(y)
    if nu == 0.0 or ny == 0.0:
        raise SignalError("angle undefined for a zero-norm signal")
    c = inner(u, y) / (nu * ny)
    return math.acos(min(1.0, max(-1.0, c)))


# ---------------------------------------------------------------------------
# Excitations: callables t -> value, vectorized over time arrays.


@dataclass(frozen=True)
class Sine:
    amplitude: float
    omega: float
    phase: float = 0.0

    def __call__(self, t):
        return self.amplitude * np.sin(self.omega * np.asarray(t, dtype=float) + self.phase)


@dataclass(frozen=True)
class Step:
    amplitude: float

    def __call__(self, t):
        return self.amplitude * np.ones_like(np.asarray(t, dtype=float))


@dataclass(frozen=True, eq=False)
class Multisine:
    """Seeded sum of sinusoids with log-uniform frequencies.

    Frequencies are drawn log-uniformly so a single draw excites both the
    slow RC dynamics and the fast end of the band.
    """

    freqs: np.ndarray
    amps: np.ndarray
    phases: np.ndarray

    @classmethod
    def seeded(
        cls,
        seed,
        n_components: int = 5,
        freq_range: tuple[float, float] = (0.05, 5.0),
        amp_range: tuple[float, float] = (0.1, 1.0),
    ) -> "Multisine":
        rng = np.random.default_rng(seed)
        lo, hi = freq_range
        freqs = np.exp(rng.uniform(math.log(lo), math.log(hi), n_components))
        amps = rng.uniform(*amp_range, n_components)
        phases = rng.uniform(0.0, 2.0 * math.pi, n_components)
        return cls(freqs, amps, phases)

    def __call__(self, t):
        t = np.asarray(t, dtype=float)
        out = np.zeros_like(t)
        for f, a, p in zip(self.freqs, self.amps, self.phases):
            out += a * np.sin(f * t + p)
        return out


def sample(excitation, dt: float, t_final: float) -> Signal:
    """Sample a callable excitation on the grid 0, dt, ..., t_final."""
    n = int(round(t_final / dt))
    if abs(n * dt - t_final) > 1e-9 * max(1.0, t_final):
        raise SignalError(f"dt={dt} does not divide t_final={t_final}")
    return Signal(dt, np.asarray(excitation(np.arange(n + 1) * dt), dtype=float))


def multisine_pairs(seed, count: int, **kwargs) -> list[tuple[Multisine, Multisine]]:
    """Deterministic list of excitation pairs derived from one seed."""
    children = np.random.SeedSequence(seed).spawn(2 * count)
    return [
        (Multisine.seeded(children[2 * k], **kwargs), Multisine.seeded(children[2 * k + 1], **kwargs))
        for k in range(count)
    ]
