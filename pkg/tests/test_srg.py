"""Gain-bound recursion, region propagation, and empirical sampling."""

import math

import numpy as np
import pytest

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
    static_nl,
    truncate_capacitors,
)
from cfrac.regions import Disc, HalfPlane, SrgPoint, disc_from_real_interval, regions_close
from cfrac.signals import Signal, Sine, multisine_pairs, sample
from cfrac.sim import SimulatedPort
from cfrac.srg import (
    SrgPropagationError,
    chain_srg,
    check_containment,
    empirical_srg,
    error_region,
    lambda_chain,
    points_csv,
    secant_error,
)


class TestLambdaChain:
    def test_golden_ratio_limit(self):
        series = lambda_chain(1.0, 200)
        assert series.final == pytest.approx(2.0 / (1.0 + math.sqrt(5.0)), abs=1e-12)

    def test_hand_evaluation(self):
        assert lambda_chain(2.0, 1).final == pytest.approx(0.75)

    def test_quadratic_root(self):
        # positive root of x^2 + 2x - 2 = 0
        assert lambda_chain(2.0, 100).final == pytest.approx(math.sqrt(3.0) - 1.0, abs=1e-9)

    def test_fixed_point_formula(self):
        for lam in (0.1, 0.5, 1.0, 2.0, 10.0):
            x = lambda_chain(lam, 1).fixed_point
            assert x == pytest.approx(1.0 / (1.0 + 1.0 / (lam + x)), abs=1e-12)

    @pytest.mark.parametrize("lam", [0.1, 0.5, 1.0, 2.0, 10.0])
    def test_contraction(self, lam):
        series = lambda_chain(lam, 200)
        x = series.fixed_point
        prev = abs(series.values[0] - x)
        for v in series.values[1:]:
            cur = abs(v - x)
            assert cur < prev or (cur < 1e-14 and prev < 1e-14)
            prev = cur

    def test_values_in_unit_interval(self):
        for lam in (0.1, 1.0, 10.0):
            assert all(0.0 < v <= 1.0 for v in lambda_chain(lam, 50).values)

    def test_bad_arguments(self):
        with pytest.raises(ValueError):
            lambda_chain(0.0, 5)
        with pytest.raises(ValueError):
            lambda_chain(1.0, 0)


class TestChainSrg:
    def test_single_unit(self):
        port = chain_srg(lattice_chain(1))
        assert regions_close(port.impedance, disc_from_real_interval(0.0, 2.0 / 3.0), 1e-12)

    def test_reproduces_recursion(self):
        series = lambda_chain(1.0, 50)
        for n in (1, 2, 5, 20, 50):
            port = chain_srg(lattice_chain(n))
            assert abs(port.impedance.hi - series.values[n - 1]) <= 1e-12
            assert abs(port.impedance.lo) <= 1e-12

    def test_general_sector(self):
        e = StaticNL(TanhPlusId(), Orientation.ADMITTANCE, SectorBound(0.25, 0.5))
        port = chain_srg(lattice_chain(5, series=e))
        # element impedance sector is [2, 4]; recursion runs with lam = 4
        assert abs(port.impedance.hi - lambda_chain(4.0, 5).final) <= 1e-12

    def test_single_shunt_rc(self):
        port = chain_srg(CircuitChain((Short(), ShuntRC(1, 1))))
        assert regions_close(port.admittance, HalfPlane(1.0), 1e-12)
        assert regions_close(port.impedance, disc_from_real_interval(0.0, 1.0), 1e-12)

    def test_capacitor_truncation_identity(self):
        chain = lattice_chain(12)
        red = truncate_capacitors(chain, 4, pwl_points=32, range_max=4.0)
        a, b = chain_srg(chain), chain_srg(red)
        assert regions_close(a.impedance, b.impedance, 1e-12)
        assert regions_close(a.admittance, b.admittance, 1e-12)

    def test_propagation_failure_names_depth(self):
        # passive sectors never straddle zero, so drive the error path with a
        # stub whose slot regions are centered on the origin
        class _Stub:
            slots = (None, None)

            @staticmethod
            def slot_region(k):
                return Disc(0.0, 1.0)

        with pytest.raises(SrgPropagationError, match="slot 1"):
            chain_srg(_Stub())


class TestErrorRegion:
    def test_identical_cocoercive_discs(self):
        lam_n = lambda_chain(1.0, 50).final
        d = disc_from_real_interval(0.0, lam_n)
        out = error_region(d, d)
        assert regions_close(out, Disc(0.0, lam_n), 1e-12)

    def test_radii_add_centers_cancel(self):
        d = disc_from_real_interval(0.0, 0.75)
        assert regions_close(error_region(d, d), Disc(0.0, 0.75), 1e-12)

    def test_identical_points_give_origin(self):
        p = Disc(1.0, 0.0)
        assert error_region(p, p) == Disc(0.0, 0.0)


class TestSecantError:
    def test_difference(self):
        assert secant_error(1.0, 0.8) == pytest.approx(0.2)

    def test_identical_graphs(self):
        lam_n = lambda_chain(2.0, 50).final
        assert secant_error(lam_n, lam_n) == 0.0

    def test_small_difference(self):
        assert secant_error(0.7320, 0.7000) == pytest.approx(0.0320)

    def test_enlarged_gain_warns(self):
        with pytest.warns(UserWarning):
            assert secant_error(0.5, 0.7) == pytest.approx(-0.2)


class TestEmpiricalSrg:
    def test_static_gain_two(self):
        dt = 1e-2
        rng = np.random.default_rng(0)
        pairs = [
            (Signal(dt, rng.standard_normal(100)), Signal(dt, rng.standard_normal(100)))
            for _ in range(5)
        ]
        rel = lambda u: Signal(u.dt, 2.0 * u.samples)
        out = empirical_srg(rel, pairs)
        for p in out.points:
            assert p.modulus == pytest.approx(2.0, abs=1e-9)
            assert p.angle == pytest.approx(0.0, abs=1e-6)

    def test_capacitor_angle_quarter_turn(self):
        dt = 1e-3
        n = int(round(4 * math.pi / dt))
        t = np.arange(n + 1) * dt

        def rel(u):
            return Signal(u.dt, np.gradient(u.samples, u.dt))

        pairs = [
            (Signal(dt, np.sin(t)), Signal(dt, 0.5 * np.sin(2.0 * t))),
            (Signal(dt, 0.3 * np.sin(t)), Signal(dt, np.sin(0.5 * t))),
        ]
        out = empirical_srg(rel, pairs)
        for p in out.points:
            assert p.angle == pytest.approx(math.pi / 2.0, abs=5e-3)

    def test_tanh_points_inside_sector_disc(self):
        nl = static_nl(TanhPlusId(), Orientation.ADMITTANCE)
        rel = lambda u: Signal(u.dt, np.asarray(nl.map(u.samples)))
        dt = 1e-2
        rng = np.random.default_rng(7)
        pairs = [
            (Signal(dt, 2 * rng.standard_normal(200)), Signal(dt, 2 * rng.standard_normal(200)))
            for _ in range(50)
        ]
        out = empirical_srg(rel, pairs)
        report = check_containment(out.points, disc_from_real_interval(1.0, 2.0), 1e-9)
        assert report.passed

    def test_identical_inputs_skipped(self):
        u = Signal(1e-2, np.ones(10))
        out = empirical_srg(lambda s: s, [(u, u)])
        assert out.skipped_pairs == (0,)
        assert out.points == ()

    def test_zero_output_difference_gives_origin(self):
        dt = 1e-2
        rel = lambda u: Signal(u.dt, np.zeros_like(u.samples))
        u1, u2 = Signal(dt, np.ones(10)), Signal(dt, np.zeros(10))
        out = empirical_srg(rel, [(u1, u2)])
        assert out.points == (SrgPoint(0.0, 0.0),)


class TestCheckContainment:
    def test_boundary_passes(self):
        report = check_containment([SrgPoint(2.0, 0.0)], Disc(0.0, 2.0), 0.0)
        assert report.passed and report.worst_excess == 0.0

    def test_excess_reported(self):
        report = check_containment([SrgPoint(2.1, 0.0)], Disc(0.0, 2.0), 1e-3)
        assert not report.passed
        assert report.worst_excess == pytest.approx(0.1)

    def test_empty_is_vacuous_with_warning(self):
        with pytest.warns(UserWarning):
            report = check_containment([], Disc(0.0, 1.0), 0.0)
        assert report.passed and report.total == 0

    def test_points_csv(self):
        text = points_csv([SrgPoint(1.0, math.pi / 2.0)])
        lines = text.splitlines()
        assert lines[0] == "modulus,angle,re,im"
        assert lines[1].startswith("1,1.57079632679")


class TestEmpiricalSoundness:
    def test_lattice_points_inside_certified_region(self):
        chain = lattice_chain(2)
        region = chain_srg(chain).impedance
        pairs = multisine_pairs(21, 12)
        sigs = [sample(e, 1e-3, 25.0) for p in pairs for e in p]
        port = SimulatedPort(chain, ic=0.0, dt=1e-3, t_final=25.0)
        port.precompute(sigs)
        out = empirical_srg(port, [(sigs[2 * k], sigs[2 * k + 1]) for k in range(12)])
        report = check_containment(out.points, region, 5e-3)
        assert report.passed
