"""Time-domain simulation of ladder chains by ODE assembly.

Node voltages across the RC shunt capacitors are the states; each series
static element carries the current g(v_left - v_right) with g its
admittance-oriented map, and a trailing series branch returns to the ground
rail.  Integration is classical fourth-order Runge-Kutta with a fixed step
for bit-reproducible outputs; inputs given as callables are evaluated
exactly on the half-step grid, so smooth excitations keep the full order.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np

from .elements import (
    CircuitChain,
    CircuitError,
    Element,
    LinearResistor,
    Open,
    Orientation,
    Short,
    ShuntRC,
    StaticNL,
    natural_orientation,
)
from .signals import Signal, SignalError

__all__ = [
    "LadderOde",
    "SimulationError",
    "assemble_ode",
    "simulate",
    "simulate_batch",
    "SimulatedPort",
    "PropertyEstimate",
    "estimate_properties",
]


class SimulationError(RuntimeError):
    """Assembly failure or numerical divergence during integration."""


@dataclass(frozen=True)
class LadderOde:
    """Assembled state equations of a chain.

    ``derivative(x, u)`` maps state (..., dim) and port current (...) to the
    state derivative; ``output(x, u)`` returns the port voltage, including
    the drop across a port series element when present.
    """

    dim: int
    derivative: Callable[[np.ndarray, np.ndarray], np.ndarray]
    output: Callable[[np.ndarray, np.ndarray], np.ndarray]
    conductances: np.ndarray
    capacitances: np.ndarray


def _series_admittance(e: Element, where: str) -> Callable[[np.ndarray], np.ndarray]:
    if isinstance(e, LinearResistor):
        return lambda dv: dv / e.resistance
    if isinstance(e, StaticNL):
        if e.orientation is Orientation.ADMITTANCE:
            return e.map
        return e.map.solve  # may raise NotInvertibleStaticError
    raise SimulationError(f"cannot assemble {type(e).__name__} as the {where} branch")


def _merged_slots(slots: tuple[Element, ...]) -> list[Element]:
    """Collapse interior shorts by paralleling the RC shunts they join."""
    out = list(slots)
    k = 2
    while k < len(out):
        if k % 2 == 0 and isinstance(out[k], Short) and k + 1 < len(out):
            left, right = out[k - 1], out[k + 1]
            if not (isinstance(left, ShuntRC) and isinstance(right, ShuntRC)):
                raise SimulationError("interior short joins non-RC shunts")
            out[k - 1] = ShuntRC(
                left.conductance + right.conductance,
                left.capacitance + right.capacitance,
            )
            del out[k : k + 2]
        else:
            k += 1
    return out


def assemble_ode(chain: CircuitChain) -> LadderOde:
    """Build the node equations C_k dv_k/dt = i_in,k - G_k v_k - i_out,k.

    Every shunt slot must hold an RC with C > 0 (a node without storage
    would be algebraic, which the chain structure is meant to exclude).
    """
    slots = _merged_slots(chain.slots)
    port = slots[0]
    if isinstance(port, (ShuntRC, Open)):
        raise SimulationError("slot 0 must be a series element or a short")

    shunts: list[ShuntRC] = []
    for k in range(1, len(slots), 2):
        e = slots[k]
        if not isinstance(e, ShuntRC):
            raise SimulationError(f"shunt slot {k} must be an RC element, got {type(e).__name__}")
        if e.capacitance <= 0.0:
            raise SimulationError(f"shunt slot {k} has no capacitor; node would be algebraic")
        shunts.append(e)
    if not shunts:
        raise SimulationError("chain has no dynamic nodes")
    n = len(shunts)
    G = np.array([s.conductance for s in shunts])
    C = np.array([s.capacitance for s in shunts])

    couplers: list[tuple[int, Element]] = []
    for j, k in enumerate(range(2, len(slots) - 1, 2)):
        e = slots[k]
        if isinstance(e, Short):
            raise SimulationError("unmerged interior short")  # _merged_slots removed these
        couplers.append((j, e))
    # group equal series elements so one vectorized call covers them all
    groups: list[tuple[np.ndarray, Callable]] = []
    remaining = list(range(len(couplers)))
    while remaining:
        j0 = remaining[0]
        same = [j for j in remaining if couplers[j][1] == couplers[j0][1]]
        remaining = [j for j in remaining if j not in same]
        groups.append((np.array(same), _series_admittance(couplers[j0][1], "series")))

    tail_fn = None
    if len(slots) % 2 == 1:  # dangling series branch from the last node to ground
        tail_fn = _series_admittance(slots[-1], "trailing")

    def derivative(x: np.ndarray, u: np.ndarray) -> np.ndarray:
        v = x
        net = np.empty_like(v)
        net[..., 0] = u
        if n > 1:
            dv_all = v[..., :-1] - v[..., 1:]
            i_ser = np.empty_like(dv_all)
            for idx, fn in groups:
                i_ser[..., idx] = fn(dv_all[..., idx])
            net[..., 1:] = i_ser
            net[..., :-1] -= i_ser
        if tail_fn is not None:
            net[..., -1] -= tail_fn(v[..., -1])
        return (net - G * v) / C

    if isinstance(port, Short):
        output = lambda x, u: x[..., 0]
    elif isinstance(port, LinearResistor):
        output = lambda x, u: port.resistance * u + x[..., 0]
    elif isinstance(port, StaticNL):
        pfn = port.map if port.orientation is Orientation.IMPEDANCE else port.map.solve
        output = lambda x, u: pfn(u) + x[..., 0]
    else:
        raise SimulationError(f"unsupported port element {type(port).__name__}")

    return LadderOde(n, derivative, output, G, C)


def _half_grid_inputs(excitations: Sequence, dt: float, n_steps: int) -> np.ndarray:
    """Inputs evaluated on t = 0, dt/2, dt, ... as a (B, 2n+1) array."""
    t_half = np.arange(2 * n_steps + 1) * (dt / 2.0)
    rows = []
    for exc in excitations:
        if isinstance(exc, Signal):
            if len(exc) != n_steps + 1 or abs(exc.dt - dt) > 1e-12 * dt:
                raise SignalError("input signal grid does not match dt and t_final")
            row = np.empty(2 * n_steps + 1)
            row[::2] = exc.samples
            row[1::2] = 0.5 * (exc.samples[:-1] + exc.samples[1:])
            rows.append(row)
        else:
            rows.append(np.asarray(exc(t_half), dtype=float))
    return np.stack(rows)


def _initial_state(ic, batch: int, dim: int) -> np.ndarray:
    if ic is None:
        return np.zeros((batch, dim))
    if np.isscalar(ic):
        return np.full((batch, dim), float(ic))
    arr = np.asarray(ic, dtype=float)
    if arr.shape != (dim,):
        raise SimulationError(f"initial state needs {dim} capacitor voltages, got shape {arr.shape}")
    return np.tile(arr, (batch, 1))


def simulate_batch(
    chain: CircuitChain,
    excitations: Sequence,
    ic=0.0,
    dt: float = 1e-3,
    t_final: float = 25.0,
) -> np.ndarray:
    """Port voltage trajectories for several inputs, shape (B, n_steps + 1).

    The integrator state is shared across the batch, so the cost of one
    Runge-Kutta stage is amortized over all inputs.
    """
    n_steps = int(round(t_final / dt))
    if n_steps < 1 or abs(n_steps * dt - t_final) > 1e-9 * max(1.0, t_final):
        raise SimulationError(f"dt={dt} does not divide t_final={t_final}")
    system = assemble_ode(chain)
    u = _half_grid_inputs(excitations, dt, n_steps)
    x = _initial_state(ic, len(u), system.dim)
    f = system.derivative
    out = np.empty((len(u), n_steps + 1))
    out[:, 0] = system.output(x, u[:, 0])
    for k in range(n_steps):
        u0, um, u1 = u[:, 2 * k], u[:, 2 * k + 1], u[:, 2 * k + 2]
        k1 = f(x, u0)
        k2 = f(x + (dt / 2.0) * k1, um)
        k3 = f(x + (dt / 2.0) * k2, um)
        k4 = f(x + dt * k3, u1)
        x = x + (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4)
        if not np.all(np.isfinite(x)):
            raise SimulationError(f"state diverged at t = {(k + 1) * dt:.6g}")
        out[:, k + 1] = system.output(x, u1)
    return out


def simulate(
    chain: CircuitChain,
    excitation,
    ic=0.0,
    dt: float = 1e-3,
    t_final: float = 25.0,
) -> Signal:
    """Port voltage for one input (a Signal on the same grid, or a callable)."""
    v = simulate_batch(chain, [excitation], ic, dt, t_final)
    return Signal(dt, v[0])


class SimulatedPort:
    """Current-to-voltage map of a chain, usable as an executable relation.

    ``precompute`` integrates a whole list of inputs in one batch; later
    calls with any of those signals are cache hits, so per-signal users
    (like the empirical SRG sampler) do not pay single-run overhead.
    """

    def __init__(self, chain: CircuitChain, ic=0.0, dt: float = 1e-3, t_final: float = 25.0):
        self.chain = chain
        self.ic = ic
        self.dt = dt
        self.t_final = t_final
        self._cache: dict[int, Signal] = {}

    def precompute(self, signals: Sequence[Signal], chunk: int = 128) -> None:
        todo = [s for s in signals if id(s) not in self._cache]
        for k in range(0, len(todo), chunk):
            part = todo[k : k + chunk]
            v = simulate_batch(self.chain, part, self.ic, self.dt, self.t_final)
            for sig, row in zip(part, v):
                self._cache[id(sig)] = Signal(self.dt, row)

    def __call__(self, u: Signal) -> Signal:
        hit = self._cache.get(id(u))
        if hit is None:
            hit = simulate(self.chain, u, self.ic, self.dt, self.t_final)
            self._cache[id(u)] = hit
        return hit


# ---------------------------------------------------------------------------
# Empirical property estimation


@dataclass(frozen=True)
class PropertyEstimate:
    """Empirical incremental bounds over all trajectory pairs.

    mu_hat is the worst coercivity quotient, lambda_hat the worst gain
    quotient, gamma_hat the worst secant-gain quotient (inf when some pair
    has a nonpositive cross term with a nonzero output increment).
    """

    mu_hat: float
    gamma_hat: float
    lambda_hat: float
    n_pairs: int
    n_skipped: int


def estimate_properties(
    trajectories: Sequence[tuple[Signal, Signal]], zero_tol: float = 1e-12
) -> PropertyEstimate:
    """Pairwise incremental statistics over a set of (input, output) runs."""
    if len(trajectories) < 2:
        raise SignalError("need at least two trajectories")
    dt = trajectories[0][0].dt
    for u, y in trajectories:
        if abs(u.dt - dt) > 1e-15 * dt or abs(y.dt - dt) > 1e-15 * dt or len(u) != len(y):
            raise SignalError("trajectories live on different grids")
    U = np.stack([u.samples for u, _ in trajectories])
    Y = np.stack([y.samples for _, y in trajectories])
    guu = dt * (U @ U.T)
    gyy = dt * (Y @ Y.T)
    guy = dt * (U @ Y.T)
    m = len(trajectories)
    dg = np.diag(guu)
    duu = dg[:, None] + dg[None, :] - 2.0 * guu
    dgy = np.diag(gyy)
    dyy = dgy[:, None] + dgy[None, :] - 2.0 * gyy
    dguy = np.diag(guy)
    duy = dguy[:, None] + dguy[None, :] - guy - guy.T
    iu, ju = np.triu_indices(m, k=1)
    duu, dyy, duy = duu[iu, ju], dyy[iu, ju], duy[iu, ju]
    valid = duu > zero_tol**2
    n_skipped = int(np.sum(~valid))
    duu, dyy, duy = duu[valid], dyy[valid], duy[valid]
    if duu.size == 0:
        raise SignalError("all trajectory pairs are degenerate")
    mu_hat = float(np.min(duy / duu))
    lambda_hat = float(np.sqrt(np.max(dyy / duu)))
    bad = (duy <= 0.0) & (dyy > 0.0)
    if np.any(bad):
        gamma_hat = math.inf
    else:
        with np.errstate(divide="ignore", invalid="ignore"):
            q = np.where(dyy > 0.0, dyy / np.where(duy > 0.0, duy, 1.0), 0.0)
        gamma_hat = float(np.max(q)) if q.size else 0.0
    return PropertyEstimate(mu_hat, gamma_hat, lambda_hat, int(duu.size), n_skipped)
