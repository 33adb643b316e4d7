import numpy as np
import pandas as pd
import pytest

from topo_sensing.core.errors import InvalidParams, InvalidSize
from topo_sensing.scaling.fit import ScalingSeries, fit_power_law
from topo_sensing.scaling.scan import EDGE, check_size_grid, exponent_scan, scaling_series

SIZES = [64, 128, 256, 512, 1024, 2048]


class TestPowerLawFit:

    @pytest.mark.parametrize("b", [0.5, 1.0, 2.0, 3.0])
    def test_exact_recovery(self, b):
        L = np.array([16, 32, 64, 128, 256, 512, 1024], dtype=float)
        fit = fit_power_law(ScalingSeries(L=L, F=2.5 * L ** b + 1.0))
        assert fit.b == pytest.approx(b, abs=1e-6)
        assert fit.a == pytest.approx(2.5, rel=1e-5)
        assert fit.c == pytest.approx(1.0, abs=1e-3 * max(1.0, 2.5 * 16 ** b))
        assert not fit.degenerate

    def test_noisy_quadratic(self, rng):
        L = np.array(SIZES, dtype=float)
        F = (3.0 * L ** 2 + 5.0) * (1.0 + 1e-4 * rng.standard_normal(L.size))
        assert fit_power_law(ScalingSeries(L=L, F=F)).b == pytest.approx(2.0, abs=0.01)

    def test_delocalised_edge_limit(self):
        L = np.array(SIZES, dtype=float)
        fit = fit_power_law(ScalingSeries(L=L, F=(L ** 2 - 1) / 3))
        assert fit.b == pytest.approx(2.0, abs=0.02)
        assert fit.predict([4096])[0] == pytest.approx((4096 ** 2 - 1) / 3, rel=1e-6)

    def test_flat_series(self):
        fit = fit_power_law(ScalingSeries(L=SIZES, F=np.full(6, 7.0)))
        assert fit.degenerate
        assert fit.b == 0.0
        assert fit.c == 7.0

    def test_too_few_samples(self):
        with pytest.raises(InvalidSize):
            fit_power_law(ScalingSeries(L=[8, 16, 32], F=[1.0, 2.0, 3.0]))

    def test_series_validation(self):
        with pytest.raises(InvalidSize):
            ScalingSeries(L=[8, 16, 16, 8], F=[1.0, 2.0, 3.0, 4.0])
        with pytest.raises(InvalidParams):
            ScalingSeries(L=[8, 32, 16, 64], F=[1.0, 2.0, 3.0, 4.0])


class TestSSHEdgeExponent:

    def test_near_transition(self, ssh):
        fit = fit_power_law(scaling_series(ssh, EDGE, 0.9999, SIZES))
        assert fit.b == pytest.approx(2.0, abs=0.05)

    def test_deep_topological_side_saturates(self, ssh):
        fit = fit_power_law(scaling_series(ssh, EDGE, 0.5, SIZES))
        assert fit.degenerate
        assert fit.b == pytest.approx(0.0, abs=0.1)


class TestExponentScan:

    def test_thread_count_does_not_change_table(self, ssh):
        lams = [0.5, 0.9, 0.9999, 1.0]
        serial = exponent_scan(ssh, EDGE, lams, SIZES, threads=1)
        parallel = exponent_scan(ssh, EDGE, lams, SIZES, threads=3)
        pd.testing.assert_frame_equal(serial, parallel)
        assert serial["lambda"].tolist() == lams

    def test_failing_point_becomes_flagged_row(self, chern):
        table = exponent_scan(chern, EDGE, [-3.0], SIZES)
        assert table.loc[0, "flags"] == "error:InvalidParams"
        assert np.isnan(table.loc[0, "b"])

    def test_grid_checks(self, ssh):
        with pytest.raises(InvalidSize):
            check_size_grid([16, 32, 64, 128])
        with pytest.raises(InvalidParams):
            check_size_grid([16, 32, 64, 128, 1024])
        with pytest.raises(InvalidParams):
            exponent_scan(ssh, EDGE, [], SIZES)
        with pytest.raises(InvalidParams):
            exponent_scan(ssh, "bulk", [0.5], SIZES)
