"""
Test: Zaman entegrasyonu
Strang adımı, atom sıçramaları, enerji tavanı ve topluluk taramaları
"""
import numpy as np
import pytest

from qwave.core.dynamics import (
    continuous_dependence,
    dissipativity_scan,
    mode_initial_state,
    scaled_initial_state,
    simulate,
    step,
)
from qwave.core.global_measure import ZeroMeasure
from qwave.core.measure import VectorMeasure
from qwave.core.propagator import LinearPropagator, run_linear
from qwave.utils.config import AppSettings, reload_settings
from qwave.utils.exceptions import ContractViolationError, PreconditionError, SolverBlowUpError


@pytest.fixture
def kicks(grid):
    """t = 0.5 ve t = 1.25 atomları"""
    h = grid.vector_from_modes([([1], 0.2), ([2], 0.1j)])
    return VectorMeasure.from_atoms(0.0, 2.0, [(0.5, h), (1.25, -h)])


class TestInitialStates:
    """Başlangıç durumu üreticileri"""

    def test_scaled_norm(self, grid, rng):
        xi = scaled_initial_state(grid, rng, 3.0)

        assert xi.energy_norm() == pytest.approx(3.0)
        assert scaled_initial_state(grid, rng, 0.0).energy_norm() == 0.0

    def test_mode_state(self, grid):
        xi = mode_initial_state(grid, [2], 1.5)

        assert xi.energy_norm() == pytest.approx(1.5)
        assert np.all(xi.v.coeffs == 0)
        assert np.count_nonzero(xi.u.coeffs) == 2


class TestStep:
    """Tek Strang adımı"""

    def test_atom_inside_segment(self, propagator, quintic, grid):
        mu = VectorMeasure.from_atoms(0.0, 1.0, [(0.05, grid.vector_from_modes([([0], 1.0)]))])

        with pytest.raises(ContractViolationError) as error:
            step(propagator, quintic, scaled_initial_state(grid, np.random.default_rng(0), 0.5), 0.1, mu, 0.0)
        assert error.value.atom_time == pytest.approx(0.05)

    def test_atom_at_endpoint_is_allowed(self, propagator, quintic, grid):
        """Segment ucundaki atom adımı bozmaz"""
        mu = VectorMeasure.from_atoms(0.0, 1.0, [(0.1, grid.vector_from_modes([([0], 1.0)]))])
        xi = scaled_initial_state(grid, np.random.default_rng(0), 0.5)

        assert step(propagator, quintic, xi, 0.1, mu, 0.0).grid is grid

    def test_non_positive_step(self, propagator, quintic, grid):
        with pytest.raises(PreconditionError):
            step(propagator, quintic, scaled_initial_state(grid, np.random.default_rng(0), 0.5), 0.0,
                 VectorMeasure.zero(0.0, 1.0, grid.dim), 0.0)


class TestSimulate:
    """simulate() test sınıfı"""

    def test_step_above_limit(self, propagator, quintic, grid, rng):
        with pytest.raises(PreconditionError):
            simulate(propagator, quintic, scaled_initial_state(grid, rng, 1.0), 0.0, 1.0, ZeroMeasure(grid.dim), 0.2)

    def test_reversed_interval(self, propagator, quintic, grid, rng):
        with pytest.raises(PreconditionError):
            simulate(propagator, quintic, scaled_initial_state(grid, rng, 1.0), 1.0, 1.0, ZeroMeasure(grid.dim), 0.01)

    def test_jumps_are_exact(self, propagator, quintic, grid, rng, kicks):
        """Atom zamanlarında v⁺ − v⁻ = h"""
        run = simulate(propagator, quintic, scaled_initial_state(grid, rng, 1.0), 0.0, 2.0, kicks, 0.1)

        assert sorted(float(run.times[i]) for i in run.post_kicks) == [0.5, 1.25]
        assert run.jump_errors().max() <= 1e-14

    def test_linear_matches_duhamel(self, propagator, linear, grid, rng, kicks):
        """Doğrusal durumda bölme tam akışla aynı"""
        xi = scaled_initial_state(grid, rng, 1.0)
        run = simulate(propagator, linear, xi, 0.0, 2.0, kicks, 0.05)
        reference = run_linear(propagator, xi, kicks, 0.0, 2.0, 0.05)

        assert np.array_equal(run.times, reference.times)
        errors = [(a - b).energy_norm() for a, b in zip(run.states, reference.states)]
        assert max(errors) <= 1e-12

    def test_unforced_energy_decays(self, propagator, quintic, grid, rng):
        run = simulate(propagator, quintic, scaled_initial_state(grid, rng, 1.0), 0.0, 3.0, ZeroMeasure(grid.dim),
                       0.01)
        energies = run.nonlinear_energies()

        assert energies[-1] < energies[0]
        assert np.all(np.isfinite(run.l12_norms()))

    def test_energy_ceiling(self, propagator, quintic, grid, rng):
        """½‖ξ‖² tavanı aşarsa son durumla birlikte hata"""
        reload_settings(AppSettings(energy_ceiling=1.0))

        with pytest.raises(SolverBlowUpError) as error:
            simulate(propagator, quintic, scaled_initial_state(grid, rng, 2.0), 0.0, 1.0, ZeroMeasure(grid.dim), 0.01)
        assert error.value.exit_code == 4
        assert error.value.energy == pytest.approx(2.0)
        assert error.value.last_state is None

    def test_frame_columns(self, propagator, quintic, grid, rng, kicks, tmp_path):
        run = simulate(propagator, quintic, scaled_initial_state(grid, rng, 1.0), 0.0, 2.0, kicks, 0.1)
        frame = run.to_frame()

        assert list(frame.columns) == ["t", "energy_norm", "l12_norm", "nonlinear_energy", "atom"]
        assert int(frame["atom"].sum()) == 2
        assert run.to_csv(tmp_path / "trajectory.csv").exists()

    def test_strichartz_windows(self, propagator, quintic, grid, rng):
        run = simulate(propagator, quintic, scaled_initial_state(grid, rng, 1.0), 0.0, 3.0, ZeroMeasure(grid.dim),
                       0.01)
        starts, values = run.strichartz_windows()

        assert starts.size == 3
        assert np.all(values > 0)


class TestEnsembles:
    """Sürekli bağımlılık ve dissipativite taraması"""

    def test_identical_states(self, propagator, quintic, grid, rng):
        xi = scaled_initial_state(grid, rng, 1.0)
        report = continuous_dependence(propagator, quintic, xi, xi, ZeroMeasure(grid.dim), 0.0, 1.0, 0.02)

        assert report["identical"]
        assert report["constant"] == 0.0
        assert report["fits"]

    def test_nearby_states_fit(self, propagator, quintic, grid, rng):
        xi = scaled_initial_state(grid, rng, 1.0)
        report = continuous_dependence(propagator, quintic, xi, xi * 1.001, ZeroMeasure(grid.dim), 0.0, 1.0, 0.02)

        assert not report["identical"]
        assert report["fits"]

    def test_linear_dissipativity(self, grid, linear):
        """Kuvvetsiz doğrusal akışta enerji azalır, herkes topa girer ve kalır"""
        propagator = LinearPropagator(grid, 1.0)
        states = [scaled_initial_state(grid, np.random.default_rng(seed), norm)
                  for seed, norm in ((1, 1.0), (2, 4.0))]
        scan = dissipativity_scan(propagator, linear, states, ZeroMeasure(grid.dim), 0.0, 3.0,
                                  0.05, transient=1.0, threads=2)

        assert scan["all_enter"]
        assert scan["radius"] < 4.0
        assert len(scan["table"]) == 2
        assert scan["table"]["initial_energy"].tolist() == pytest.approx([1.0, 4.0])
