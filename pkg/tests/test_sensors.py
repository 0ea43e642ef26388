"""Sensor models: noiseless exactness, noise statistics, beacon gating."""

from __future__ import annotations

import math
import statistics

import pytest

from skydock.dynamics import UavState
from skydock.scenario import derive_stream
from skydock.sensors import SensorParams, sample_compass, sample_gps, sample_ir_beacon

NOISELESS = SensorParams(
    gps_sigma=0.0, gps_vel_sigma=0.0, compass_sigma=0.0, beacon_sigma=0.0, beacon_dropout_p=0.0
)


class TestGps:
    def test_noiseless_is_exact(self):
        rng = derive_stream(0, "gps", 0)
        fix = sample_gps((3.5, -2.25), NOISELESS, rng, true_vel=(0.4, -0.1))
        assert (fix.x, fix.y, fix.vx, fix.vy) == (3.5, -2.25, 0.4, -0.1)
        assert fix.valid

    def test_same_stream_state_same_fix(self):
        a = sample_gps((0.0, 0.0), SensorParams(), derive_stream(9, "gps", 2))
        b = sample_gps((0.0, 0.0), SensorParams(), derive_stream(9, "gps", 2))
        assert (a.x, a.y, a.vx, a.vy) == (b.x, b.y, b.vx, b.vy)

    def test_position_noise_std(self):
        params = SensorParams(gps_sigma=1.5)
        rng = derive_stream(4, "gps", 0)
        xs = [sample_gps((0.0, 0.0), params, rng).x for _ in range(100_000)]
        assert statistics.stdev(xs) == pytest.approx(1.5, rel=0.03)
        assert statistics.fmean(xs) == pytest.approx(0.0, abs=0.03)


class TestCompass:
    def test_noiseless_is_exact(self):
        rng = derive_stream(0, "compass", 0)
        assert sample_compass(1.234, NOISELESS, rng).yaw_meas == 1.234

    def test_wraps_at_branch_cut(self):
        params = SensorParams(compass_sigma=0.1)
        rng = derive_stream(2, "compass", 0)
        readings = [sample_compass(math.pi, params, rng).yaw_meas for _ in range(500)]
        assert all(-math.pi < y <= math.pi for y in readings)
        assert any(y < 0.0 for y in readings)  # positive noise wraps negative

    def test_noise_std(self):
        params = SensorParams(compass_sigma=0.02)
        rng = derive_stream(6, "compass", 0)
        errors = [sample_compass(0.5, params, rng).yaw_meas - 0.5 for _ in range(100_000)]
        assert statistics.stdev(errors) == pytest.approx(0.02, rel=0.03)


class TestIrBeacon:
    def test_noiseless_in_cone(self):
        uav = UavState(px=0.0, py=0.0, pz=2.2)
        rng = derive_stream(0, "beacon", 0)
        m = sample_ir_beacon(uav, (0.1, -0.05, 0.2), NOISELESS, rng)
        assert m.detected
        assert (m.dx, m.dy) == pytest.approx((0.1, -0.05))

    def test_cone_limit(self):
        # At h = 2 the 30 degree cone admits rho <= 2*tan(30) ~ 1.1547
        uav = UavState(pz=2.0)
        rng = derive_stream(0, "beacon", 0)
        outside = sample_ir_beacon(uav, (1.2, 0.0, 0.0), NOISELESS, rng)
        assert not outside.detected
        inside = sample_ir_beacon(uav, (1.15, 0.0, 0.0), NOISELESS, rng)
        assert inside.detected

    def test_range_gate(self):
        uav = UavState(pz=16.0)  # straight above, slant 16 > 15
        rng = derive_stream(0, "beacon", 0)
        assert not sample_ir_beacon(uav, (0.0, 0.0, 0.0), NOISELESS, rng).detected

    def test_below_beacon_not_detected(self):
        uav = UavState(pz=0.1)
        rng = derive_stream(0, "beacon", 0)
        assert not sample_ir_beacon(uav, (0.0, 0.0, 0.2), NOISELESS, rng).detected

    def test_missed_measurement_is_nan(self):
        uav = UavState(pz=16.0)
        m = sample_ir_beacon(uav, (0.0, 0.0, 0.0), NOISELESS, derive_stream(0, "beacon", 0))
        assert math.isnan(m.dx) and math.isnan(m.dy)

    def test_detection_region_matches_predicate(self):
        # Over an offset grid, detection must equal the cone-and-range test
        params = SensorParams(beacon_sigma=0.0, beacon_dropout_p=0.0)
        rng = derive_stream(1, "beacon", 0)
        h = 4.0
        uav = UavState(pz=h)
        limit = h * math.tan(params.beacon_half_angle)
        for i in range(-12, 13):
            for j in range(-12, 13):
                bx, by = i * 0.25, j * 0.25
                rho = math.hypot(bx, by)
                expected = rho <= limit and math.hypot(rho, h) <= params.beacon_max_range
                m = sample_ir_beacon(uav, (bx, by, 0.0), params, rng)
                assert m.detected == expected, (bx, by)

    def test_dropout_rate(self):
        params = SensorParams(beacon_sigma=0.0, beacon_dropout_p=0.25)
        rng = derive_stream(8, "beacon", 0)
        uav = UavState(pz=3.0)
        hits = sum(
            sample_ir_beacon(uav, (0.0, 0.0, 0.0), params, rng).detected for _ in range(20_000)
        )
        assert hits / 20_000 == pytest.approx(0.75, abs=0.01)

    def test_measurement_noise_std(self):
        params = SensorParams(beacon_sigma=0.03, beacon_dropout_p=0.0)
        rng = derive_stream(5, "beacon", 0)
        uav = UavState(pz=3.0)
        dxs = [
            sample_ir_beacon(uav, (0.2, 0.1, 0.0), params, rng).dx - 0.2 for _ in range(50_000)
        ]
        assert statistics.stdev(dxs) == pytest.approx(0.03, rel=0.03)
