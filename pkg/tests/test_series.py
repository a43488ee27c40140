import io
import math

import numpy as np
import pytest

from floquet_ising.quadrature import KGrid, as_grid
from floquet_ising.series import TimeSeries, format_float


class TestTimeSeries:
    def test_csv_round_trip_is_exact(self):
        ts = TimeSeries(0.0, 0.1, np.random.default_rng(3).uniform(-1, 1, 57))
        back = TimeSeries.from_csv(io.StringIO(ts.to_csv()))
        assert np.array_equal(back.values, ts.values)
        assert back.dt == pytest.approx(ts.dt, rel=1e-14)

    def test_format_round_trips(self):
        for x in (0.1, 1 / 3, math.pi, 1e-300, -2.5e17):
            assert float(format_float(x)) == x

    @pytest.mark.parametrize("dt", [0.0, -1.0, math.nan])
    def test_rejects_bad_dt(self, dt):
        with pytest.raises(ValueError):
            TimeSeries(0.0, dt, [1.0, 2.0])

    def test_rejects_nonfinite(self):
        with pytest.raises(ValueError):
            TimeSeries(0.0, 1.0, [1.0, math.inf])

    def test_wrong_header(self):
        with pytest.raises(ValueError):
            TimeSeries.from_csv(io.StringIO("time,value\n0,1\n1,2\n"))


class TestQuadrature:
    @pytest.mark.parametrize("grid", [KGrid(64), KGrid(32, "gauss")])
    def test_integrates_trig(self, grid):
        assert grid.mean(np.ones_like(grid.k)) == pytest.approx(1.0, rel=1e-14)
        assert grid.mean(np.sin(grid.k)) == pytest.approx(2 / math.pi, rel=1e-3)

    def test_chain_grid(self):
        g = KGrid.chain(4)
        assert np.allclose(g.k, [math.pi / 4, 3 * math.pi / 4])
        assert g.mean(np.ones(2)) == pytest.approx(1.0)
        with pytest.raises(ValueError):
            KGrid.chain(5)

    def test_validation(self):
        with pytest.raises(ValueError):
            KGrid(7)
        with pytest.raises(ValueError):
            KGrid(64, "simpson")
        assert as_grid(None).nodes == 4096 and as_grid(100).nodes == 100
