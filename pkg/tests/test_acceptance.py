"""Acceptance suite: one test per criterion, each printing a PASS/FAIL line.

Run with ``pytest tests/test_acceptance.py -v -s`` to see the per-criterion
lines alongside pytest's own verdicts.
"""

import math
import time

import numpy as np
import pytest

from cfrac.cli import main
from cfrac.elements import (
    CircuitChain,
    LinearResistor,
    Orientation,
    SectorBound,
    Short,
    ShuntRC,
    StaticNL,
    TanhPlusId,
    lattice_chain,
    lti_port_transfer,
    lump_resistive_tail,
    propagate_properties,
    truncate_capacitors,
    truncate_chain,
)
from cfrac.regions import (
    Disc,
    HalfPlane,
    PropertyKind,
    PropertyTag,
    chord_closure,
    classify,
    contains,
    contains_region,
    disc_from_real_interval,
    invert,
    minkowski_sum,
    region_from_property,
    regions_close,
    sample_boundary,
)
from cfrac.signals import Signal, Sine, multisine_pairs, sample
from cfrac.sim import SimulatedPort, simulate, simulate_batch
from cfrac.srg import chain_srg, check_containment, empirical_srg, lambda_chain

GOLDEN_INVERSE = 2.0 / (1.0 + math.sqrt(5.0))


def report(number: int, ok: bool, description: str) -> None:
    print(f"\nACCEPTANCE {number:02d} {'PASS' if ok else 'FAIL'}: {description}")
    assert ok, f"criterion {number}: {description}"


@pytest.fixture(scope="module")
def lattice50():
    return lattice_chain(50)


@pytest.fixture(scope="module")
def cap3(lattice50):
    return truncate_capacitors(lattice50, 3, pwl_points=64, range_max=5.0)


@pytest.fixture(scope="module")
def units3(lattice50):
    return truncate_chain(lattice50, 3)


def test_c01_golden_ratio_limit():
    t0 = time.perf_counter()
    series = lambda_chain(1.0, 100)
    elapsed = time.perf_counter() - t0
    ok = abs(series.final - GOLDEN_INVERSE) < 1e-8 and elapsed < 1e-3
    report(1, ok, f"lambda_100(1) = {series.final:.12f} vs 1/phi, {elapsed * 1e6:.0f} us")


def test_c02_fixed_point_and_contraction():
    value = lambda_chain(2.0, 100).final
    ok = abs(value - (math.sqrt(3.0) - 1.0)) < 1e-8
    for lam in (0.1, 0.5, 1.0, 2.0, 10.0):
        series = lambda_chain(lam, 200)
        x = series.fixed_point
        prev = abs(series.values[0] - x)
        for v in series.values[1:]:
            cur = abs(v - x)
            ok = ok and (cur < prev or (cur < 1e-14 and prev < 1e-14))
            prev = cur
    report(2, ok, f"lambda_100(2) = {value:.12f} vs sqrt(3)-1; contraction on 5 sector bounds")


def test_c03_bounds_table(tmp_path):
    t0 = time.perf_counter()
    out = tmp_path / "bounds.csv"
    code = main(["bounds", "--lambda", "2", "--r", "3", "--n-min", "10", "--n-max", "800", "--out", str(out)])
    elapsed = time.perf_counter() - t0
    rows = np.array([[float(x) for x in line.split(",")] for line in out.read_text().splitlines()[1:]])
    n, s, b = rows[:, 0], rows[:, 1], rows[:, 2]
    ok = code == 0
    ok = ok and np.all(np.abs(s[n >= 100] - 0.7320508) < 1e-3)
    ok = ok and np.all(b[n <= 35] < s[n <= 35]) and np.all(b[n >= 45] > s[n >= 45])
    from cfrac.baseline import spectral_quantity

    ok = ok and abs(spectral_quantity(800) - 4.0) < 0.01
    ok = ok and elapsed < 5.0
    report(3, ok, f"bounds table regenerated ({elapsed:.2f} s); crossing between n=35 and n=45")


def test_c04_srg_identity_under_capacitor_truncation(lattice50, cap3):
    a = chain_srg(lattice50)
    b = chain_srg(cap3)
    ok = regions_close(a.impedance, b.impedance, 1e-12) and regions_close(
        a.admittance, b.admittance, 1e-12
    )
    report(4, ok, f"impedance disc {a.impedance} reproduced by the lumped reduction")


def test_c05_error_gain_bound(lattice50, cap3):
    t0 = time.perf_counter()
    dt, t_final = 1e-3, 25.0
    excitations = [m for pair in multisine_pairs(42, 10) for m in pair]  # 20 inputs
    v_full = simulate_batch(lattice50, excitations, ic=0.0, dt=dt, t_final=t_final)
    v_red = simulate_batch(cap3, excitations, ic=0.0, dt=dt, t_final=t_final)
    u = np.stack([sample(e, dt, t_final).samples for e in excitations])
    ratios = np.sqrt(np.sum((v_full - v_red) ** 2, axis=1) / np.sum(u**2, axis=1))
    bound = lambda_chain(1.0, 50).final + 5e-3
    elapsed = time.perf_counter() - t0
    ok = bool(np.all(ratios <= bound)) and elapsed < 60.0
    report(5, ok, f"worst |v - v_hat|/|i| = {ratios.max():.3e} <= {bound:.5f} ({elapsed:.1f} s)")


def test_c06_empirical_containment():
    ok = True
    worst = 0.0
    for n in (1, 2, 3):
        chain = lattice_chain(n)
        region = chain_srg(chain).impedance
        pairs = multisine_pairs(42, 200)
        signals = [sample(e, 1e-3, 25.0) for pair in pairs for e in pair]
        port = SimulatedPort(chain, ic=0.0, dt=1e-3, t_final=25.0)
        port.precompute(signals)
        signal_pairs = [(signals[2 * k], signals[2 * k + 1]) for k in range(200)]
        result = empirical_srg(port, signal_pairs)
        rep = check_containment(result.points, region, 5e-3)
        ok = ok and rep.passed and len(result.points) == 200
        worst = max(worst, rep.worst_excess)
    report(6, ok, f"600 empirical points inside certified discs, worst excess {worst:.2e}")


def test_c07_reduction_experiments(lattice50, cap3, units3):
    ok = True
    details = []
    for omega in (1.0, 2.0):
        exc = Sine(1.0, omega)
        v_f = simulate_batch(lattice50, [exc], ic=1.0, dt=1e-3, t_final=25.0)[0]
        v_c = simulate_batch(cap3, [exc], ic=1.0, dt=1e-3, t_final=25.0)[0]
        v_u = simulate_batch(units3, [exc], ic=1.0, dt=1e-3, t_final=25.0)[0]
        t = np.arange(len(v_f)) * 1e-3
        late = t >= 5.0
        ok = ok and np.all(np.abs(v_c[late]) <= 0.5) and np.all(np.abs(v_u[late]) <= 0.5)
        window = (t >= 15.0) & (t <= 25.0)
        rms_c = math.sqrt(np.mean((v_f[window] - v_c[window]) ** 2))
        rms_u = math.sqrt(np.mean((v_f[window] - v_u[window]) ** 2))
        ok = ok and rms_c < rms_u
        details.append(f"w={omega:g}: rms {rms_c:.2e} < {rms_u:.2e}")
    report(7, ok, "; ".join(details))


def test_c08_region_property_suite():
    t0 = time.perf_counter()
    rng = np.random.default_rng(8)
    ok = True
    for _ in range(1000):
        a = rng.uniform(0.02, 4.0)
        b = a + rng.uniform(0.0, 4.0)
        d = disc_from_real_interval(a, b)
        # inversion involution
        ok = ok and regions_close(invert(invert(d)), d, 1e-12)
        # Minkowski exactness: radii add exactly, sampled sums contained
        e = Disc(rng.uniform(-2, 2), rng.uniform(0, 2))
        f = Disc(rng.uniform(-2, 2), rng.uniform(0, 2))
        s = minkowski_sum(e, f)
        ok = ok and s.radius == e.radius + f.radius
        for pa in sample_boundary(e, 4):
            for pb in sample_boundary(f, 4):
                ok = ok and contains(s, complex(pa[0] + pb[0], pa[1] + pb[1]), 1e-12)
        # classification round-trip
        tag = PropertyTag(PropertyKind.OUTPUT_STRICT, b)
        back = [t for t in classify(region_from_property(tag)) if t.kind is tag.kind]
        ok = ok and back and abs(back[0].value - b) <= 1e-12
        mu_tag = PropertyTag(PropertyKind.INPUT_STRICT, a)
        back = [t for t in classify(region_from_property(mu_tag)) if t.kind is mu_tag.kind]
        ok = ok and back and abs(back[0].value - a) <= 1e-12
        # chord idempotence
        hp = HalfPlane(rng.uniform(-1, 2))
        ok = ok and chord_closure(chord_closure(d)) == chord_closure(d)
        ok = ok and chord_closure(hp) == hp
    elapsed = time.perf_counter() - t0
    ok = ok and elapsed < 1.0
    report(8, ok, f"1000 randomized regions pass all four laws ({elapsed:.2f} s)")


def test_c09_linear_frequency_response():
    chain = lattice_chain(5, series=LinearResistor(1.0))
    ok = True
    details = []
    for omega, t_final in ((0.1, 95.0), (1.0, 45.0), (10.0, 25.0)):
        h = lti_port_transfer(chain, 1j * omega)
        v = simulate(chain, Sine(1.0, omega), ic=0.0, dt=1e-3, t_final=t_final)
        t, w = v.times, v.samples
        period = 2.0 * math.pi / omega
        m = t >= t[-1] - period
        a = 2.0 / period * np.trapezoid(w[m] * np.sin(omega * t[m]), t[m])
        b = 2.0 / period * np.trapezoid(w[m] * np.cos(omega * t[m]), t[m])
        rel = abs(complex(a, b) - h) / abs(h)
        ok = ok and rel < 0.01
        details.append(f"w={omega:g}: {rel:.2e}")
    report(9, ok, "steady state vs transfer function: " + "; ".join(details))


def test_c10_golden_ratio_ladder():
    tail = [LinearResistor(1.0) for _ in range(60)]  # 30 unit stages
    lumped = lump_resistive_tail(tail, np.linspace(-2.0, 2.0, 11))
    phi = (1.0 + math.sqrt(5.0)) / 2.0
    xs, ys = lumped.map.xs, lumped.map.ys
    nz = xs != 0.0
    worst = float(np.max(np.abs(ys[nz] / xs[nz] - phi)))
    ok = worst < 1e-6 and abs(ys[~nz][0]) < 1e-9
    report(10, ok, f"30-stage unit ladder resistance within {worst:.2e} of phi")


def test_c11_property_preservation():
    rng = np.random.default_rng(11)
    ok = True
    for _ in range(50):
        n = int(rng.integers(1, 6))
        slots = [Short(), ShuntRC(rng.uniform(0.2, 2.0), rng.uniform(0.1, 2.0))]
        for _ in range(n):
            if rng.random() < 0.5:
                slots.append(LinearResistor(rng.uniform(0.2, 2.0)))
            else:
                mu = rng.uniform(0.05, 1.0)
                slots.append(
                    StaticNL(TanhPlusId(), Orientation.ADMITTANCE, SectorBound(mu, mu + rng.uniform(0.05, 2.0)))
                )
            slots.append(ShuntRC(rng.uniform(0.2, 2.0), rng.uniform(0.1, 2.0)))
        chain = CircuitChain(tuple(slots))
        props = propagate_properties(chain)
        port = chain_srg(chain)
        has_os = any(t.kind is PropertyKind.OUTPUT_STRICT for t in props.impedance)
        has_is = any(t.kind is PropertyKind.INPUT_STRICT for t in props.admittance)
        ok = ok and has_os and has_is
        for tag in props.impedance:
            ok = ok and contains_region(region_from_property(tag), port.impedance, 1e-9)
        for tag in props.admittance:
            ok = ok and contains_region(region_from_property(tag), port.admittance, 1e-9)
    report(11, ok, "50 randomized chains: output-strict i->v, input-strict v->i, regions contained")
