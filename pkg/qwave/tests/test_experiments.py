"""
Test: Ayrıştırma deneyleri
Üç parçalı bölme, kısmi-atom kaskadı ve enerji → Strichartz taraması
"""
import numpy as np
import pytest

from qwave.core.dynamics import scaled_initial_state
from qwave.core.experiments import (
    energy_to_strichartz_scan,
    partial_atom_measure,
    splitting_run,
    strichartz_cascade,
)
from qwave.core.global_measure import PeriodicTemplate, ZeroMeasure
from qwave.core.measure import VectorMeasure
from qwave.core.nonlinearity import Nonlinearity
from qwave.utils.config import NonlinearityFamily
from qwave.utils.exceptions import ConfigurationError, PreconditionError


@pytest.fixture
def kicks(grid):
    h = grid.vector_from_modes([([1], 0.3), ([2], 0.2)])
    return VectorMeasure.from_atoms(0.0, 2.0, [(0.5, h), (1.25, -0.5 * h)])


class TestSplitting:
    """splitting_run() test sınıfı"""

    def test_alpha_range(self, propagator, quintic, grid, rng):
        with pytest.raises(PreconditionError):
            splitting_run(propagator, quintic, scaled_initial_state(grid, rng, 1.0), ZeroMeasure(grid.dim),
                          0.0, 1.0, 0.05, alpha=0.5)

    def test_coupling_below_coercivity(self, propagator, grid, rng):
        """u⁵ − 4u³ için L = 0 yetersiz"""
        nonlinearity = Nonlinearity(True, NonlinearityFamily.CUBIC, lam=-4.0)

        with pytest.raises(ConfigurationError):
            splitting_run(propagator, nonlinearity, scaled_initial_state(grid, rng, 1.0), ZeroMeasure(grid.dim),
                          0.0, 1.0, 0.05, coupling=0.0)

    def test_parts_reconstruct_solution(self, propagator, quintic, grid, rng, kicks):
        """θ + v + w = u her örnekte"""
        report = splitting_run(propagator, quintic, scaled_initial_state(grid, rng, 1.0), kicks, 0.0, 2.0, 0.02,
                               early_window=1.0)
        table = report["table"]

        assert report["coupling"] == 0.0
        assert report["reconstruction_max"] <= 1e-10
        assert report["checks"]["reconstruction"]
        assert table["theta_alpha"].iloc[0] == 0.0
        assert table["w_alpha"].iloc[0] == 0.0
        assert report["theta_sup"] > 0.0

    def test_unforced_w_stays_zero(self, propagator, quintic, grid, rng):
        """θ ≡ 0 iken w ≡ 0 ve v = u"""
        report = splitting_run(propagator, quintic, scaled_initial_state(grid, rng, 1.0), ZeroMeasure(grid.dim),
                               0.0, 2.0, 0.02, early_window=1.0)

        assert report["w_late_sup"] == 0.0
        assert report["theta_sup"] == 0.0
        assert np.isfinite(report["v_decay_rate"])


class TestCascade:
    """Kısmi-atom kaskadı"""

    @pytest.fixture
    def measure(self, grid):
        density = grid.vector_from_modes([([1], 0.2)])
        smooth = VectorMeasure.from_density(0.0, 2.0, [0.0, 2.0], np.vstack([density, density]))
        return smooth + VectorMeasure.from_atoms(0.0, 2.0, [(1.0, grid.vector_from_modes([([2], 0.3)]))])

    def test_partial_atoms(self, measure):
        partial = partial_atom_measure(measure, 0)

        assert partial.atom_times.size == 0
        assert not partial.has_density

    def test_requires_pure_quintic(self, propagator, grid, measure):
        nonlinearity = Nonlinearity(True, NonlinearityFamily.CUBIC, lam=1.0)

        with pytest.raises(PreconditionError):
            strichartz_cascade(propagator, nonlinearity, scaled_initial_state(grid, np.random.default_rng(0), 0.5),
                               measure, [2], 0.05)

    def test_differences_telescope(self, propagator, quintic, grid, measure):
        """Farklar atomdan önce sıfır, toplamları tam çözüme eşit"""
        xi = scaled_initial_state(grid, np.random.default_rng(0), 0.5)
        report = strichartz_cascade(propagator, quintic, xi, measure, [2, 4], 0.05)
        summary = report["summary"]

        assert summary["partitions"].tolist() == [2, 4]
        assert summary["zero_before_atom"].all()
        assert summary["telescoping_residual"].max() <= 1e-12
        assert set(report["spreads"]) == {"energy_constant", "strichartz_constant"}
        assert len(report["table"]) == int(summary["atoms"].sum())


class TestEnergyScan:
    """energy_to_strichartz_scan() test sınıfı"""

    def test_table_shape(self, propagator, quintic, grid):
        forcing = PeriodicTemplate(VectorMeasure.from_atoms(0.0, 1.0, [(0.5, grid.vector_from_modes([([1], 0.2)]))]),
                                   1.0)
        scan = energy_to_strichartz_scan(propagator, quintic, forcing, [0.5, 1.0], [0.0, 1.0], 0.0, 2.0, 0.05,
                                         seed=3)
        table = scan["table"]

        assert len(table) == 4
        assert scan["finite"]
        assert table.loc[table["forcing_scale"] == 0.0, "forcing_bound"].max() == 0.0
        assert table["initial_energy"].tolist() == pytest.approx([0.5, 1.0, 0.5, 1.0])
        assert scan["proportionality_constant"] > 0.0
        assert len(scan["envelope"]) == 4
