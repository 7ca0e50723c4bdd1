"""
Test: Global ölçü aileleri
Periyodik şablon, öteleme, spike dizileri, asimptotik profil ve konfigürasyondan kurulum
"""
import numpy as np
import pytest

from qwave.core.global_measure import (
    AsymptoticProfile,
    CompositeMeasure,
    ExplicitWindowList,
    PeriodicTemplate,
    ScaledMeasure,
    SpikeTrain,
    ZeroMeasure,
    build_forcing,
    wna_profile,
)
from qwave.core.measure import HilbertVector, VectorMeasure, distribution_values, total_variation
from qwave.core.spectral import ModeGrid
from qwave.utils.config import ForcingConfig, ForcingFamily, HarmonicConfig, SpikeLaw
from qwave.utils.exceptions import ConfigurationError, MeasureDomainError


@pytest.fixture
def atom_template():
    """[0, 1] şablonunda t = 0.25 atomu"""
    return PeriodicTemplate(VectorMeasure.from_atoms(0.0, 1.0, [(0.25, [1.0])]), 1.0)


class TestPeriodicTemplate:
    """PeriodicTemplate test sınıfı"""

    def test_window_repeats_atoms(self, atom_template):
        assert atom_template.window(0.0, 3.0).atom_times.tolist() == pytest.approx([0.25, 1.25, 2.25])
        assert atom_template.window(0.5, 2.5).atom_times.tolist() == pytest.approx([1.25, 2.25])

    def test_template_validation(self):
        """Şablon [0, P] aralığında ve atomlar [0, P) içinde olmalı"""
        with pytest.raises(ConfigurationError):
            PeriodicTemplate(VectorMeasure.zero(0.0, 2.0, 1), 1.0)
        with pytest.raises(ConfigurationError):
            PeriodicTemplate(VectorMeasure.from_atoms(0.0, 1.0, [(1.0, [1.0])]), 1.0)

    def test_unit_window_bound(self, atom_template):
        assert atom_template.unit_window_bound([0.0, 0.5, 3.7]) == pytest.approx(1.0)


class TestShift:
    """Öteleme grubu T(s)"""

    def test_shift_moves_atoms(self, atom_template):
        """T(s)μ penceresi tabanın [τ+s, t+s] penceresinin geri ötelemesidir"""
        shifted = atom_template.shift(0.5)

        assert shifted.window(0.0, 1.0).atom_times.tolist() == pytest.approx([0.75])
        times, _ = shifted.atoms(0.0, 1.0)
        assert times.tolist() == pytest.approx([0.75])

    def test_shifts_compose(self, atom_template):
        assert atom_template.shift(0.0) is atom_template
        assert atom_template.shift(0.5).shift(-0.5) is atom_template
        assert atom_template.shift(0.25).shift(0.5).offset == pytest.approx(0.75)

    def test_window_endpoints_are_exact(self, atom_template):
        """Ötelenmiş pencere tam olarak istenen [τ, T] aralığında tanımlı"""
        profile = AsymptoticProfile(offset=0.5, amplitude=1.0)
        for s in np.linspace(-1.0, 1.0, 101):
            for tau in (0.1, 0.3, 0.7):
                for base in (atom_template, profile):
                    window = base.shift(float(s)).window(tau, tau + 1.0)
                    assert (window.start, window.end) == (tau, tau + 1.0)
                    assert np.all(window.density_times >= tau)
                    assert np.all(window.density_times <= tau + 1.0)

    def test_composite_with_shifted_component(self, atom_template):
        """Ötelenmiş bileşenli bileşik ölçü pencerelenebilir"""
        window = CompositeMeasure([atom_template.shift(0.03), atom_template]).window(0.3, 1.3)

        assert (window.start, window.end) == (0.3, 1.3)
        assert window.atom_times.tolist() == pytest.approx([1.22, 1.25])

        profile = AsymptoticProfile(offset=0.5, amplitude=1.0)
        mixed = CompositeMeasure([profile.shift(0.03), profile]).window(0.3, 1.3)
        assert total_variation(mixed) == pytest.approx(
            total_variation(profile.window(0.33, 1.33)) + total_variation(profile.window(0.3, 1.3)), rel=1e-12)

    def test_reversed_window(self, atom_template):
        with pytest.raises(MeasureDomainError):
            atom_template.window(1.0, 0.0)


class TestSpikeTrain:
    """Spike dizileri"""

    def test_cancelling_square_layout(self):
        """n ve n + 1/n² noktalarında ± genlikli çiftler"""
        train = SpikeTrain(SpikeLaw.CANCELLING_SQUARE, np.ones(1), n_min=2, n_max=3, amplitude=0.5)
        window = train.window(0.0, 5.0)

        assert window.atom_times.tolist() == pytest.approx([2.0, 2.25, 3.0, 3.0 + 1.0 / 9.0])
        assert window.atom_values[:, 0].tolist() == pytest.approx([0.5, -0.5, 0.5, -0.5])
        assert distribution_values(window, [5.0])[0, 0] == pytest.approx(0.0)

    def test_bounded_unit_windows(self):
        train = SpikeTrain(SpikeLaw.CANCELLING_SQUARE, np.ones(1), n_min=2, n_max=3, amplitude=0.5)

        assert train.unit_window_bound([1.5]) == pytest.approx(1.0)

    def test_smooth_spikes_keep_mass(self):
        """Atomsuz spike şapka yoğunluğudur, kütlesi genliğe eşit"""
        train = SpikeTrain(SpikeLaw.CANCELLING_LINEAR, np.ones(1), scale=5.0, n_min=1, n_max=1,
                           amplitude=0.5, atomic=False, absolute=True)
        window = train.window(0.0, 10.0)

        assert window.atom_times.size == 0
        assert total_variation(window) == pytest.approx(1.0, abs=1e-12)

    def test_mode_cascade_needs_room(self):
        with pytest.raises(ConfigurationError):
            SpikeTrain(SpikeLaw.MODE_CASCADE, np.zeros(4), n_min=1, n_max=4)


class TestAsymptoticProfile:
    """Asimptotik profil"""

    def test_limits(self):
        profile = AsymptoticProfile(offset=-3.0, amplitude=3.0)

        assert float(profile.profile(0.0)) == pytest.approx(-3.0)
        assert float(profile.profile(1e9)) == pytest.approx(0.0, abs=1e-6)
        assert float(profile.profile(-1e9)) == pytest.approx(-6.0, abs=1e-6)

    def test_window_has_no_atoms(self):
        profile = AsymptoticProfile(offset=1.0, amplitude=0.0)
        window = profile.window(0.0, 2.0)

        assert window.atom_times.size == 0
        assert total_variation(window) == pytest.approx(2.0)


class TestWeakNonAtomicity:
    """Zayıf düzgün atomsuzluk modülü"""

    def test_density_is_non_atomic(self):
        profile = AsymptoticProfile(offset=0.0, amplitude=3.0)
        report = wna_profile(profile, HilbertVector(np.ones(1)), shifts=[0.0, 10.0])

        assert report["weakly_non_atomic"]
        assert report["ratio"] < report["threshold"]

    def test_atoms_are_detected(self):
        train = SpikeTrain(SpikeLaw.CANCELLING_SQUARE, np.ones(1), n_min=2, n_max=3, amplitude=0.5)
        report = wna_profile(train, HilbertVector(np.ones(1)), shifts=[2.0])

        assert not report["weakly_non_atomic"]
        assert report["moduli"][-1] == pytest.approx(0.5)


class TestCompositeAndWindows:
    """Bileşik ölçü ve açık pencere listesi"""

    def test_composite_merges_atoms(self, atom_template):
        composite = CompositeMeasure([atom_template, atom_template])
        times, values = composite.atoms(0.0, 1.0)

        assert times.tolist() == pytest.approx([0.25])
        assert values[:, 0].tolist() == pytest.approx([2.0])

    def test_composite_dimensions_must_agree(self):
        with pytest.raises(ConfigurationError):
            CompositeMeasure([ZeroMeasure(1), ZeroMeasure(2)])

    def test_window_list_must_be_consecutive(self):
        with pytest.raises(ConfigurationError):
            ExplicitWindowList([VectorMeasure.zero(0.0, 1.0, 1), VectorMeasure.zero(2.0, 3.0, 1)])

    def test_window_outside_support(self):
        """Desteği aşan pencere istenirse hata"""
        pieces = ExplicitWindowList([
            VectorMeasure.from_atoms(0.0, 1.0, [(0.5, [1.0])]),
            VectorMeasure.from_atoms(1.0, 2.0, [(1.0, [2.0])]),
        ])

        assert pieces.window(0.0, 2.0).atom_times.tolist() == pytest.approx([0.5, 1.0])
        with pytest.raises(MeasureDomainError):
            pieces.window(0.0, 3.0)

    def test_scaled_measure(self, atom_template):
        scaled = ScaledMeasure(atom_template, -2.0)

        assert scaled.window(0.0, 1.0).atom_values[:, 0].tolist() == pytest.approx([-2.0])


class TestBuildForcing:
    """ForcingConfig → GlobalMeasure"""

    def test_zero(self):
        assert isinstance(build_forcing(ForcingConfig()), ZeroMeasure)

    def test_scalar_harmonic(self):
        """cos(2πt) profili: birim pencere TV ≈ 2/π"""
        config = ForcingConfig(family=ForcingFamily.PERIODIC_TEMPLATE, scalar=True, period_seconds=1.0,
                               harmonic=HarmonicConfig())
        forcing = build_forcing(config)

        assert isinstance(forcing, PeriodicTemplate)
        assert forcing.dim == 1
        assert total_variation(forcing.window(0.0, 1.0)) == pytest.approx(2.0 / np.pi, abs=1e-3)

    def test_grid_atoms_are_real_fields(self):
        """Mod katsayıları −k eşleniğiyle birlikte yerleşir"""
        grid = ModeGrid(1, 16)
        config = ForcingConfig.model_validate({
            "family": "periodic-template",
            "period_seconds": 1.0,
            "atoms": [{"time_seconds": 0.5, "modes": [{"mode": [2], "value": [0.0, 1.0]}]}],
            "scale_factor": 2.0,
        })
        forcing = build_forcing(config, grid)
        values = forcing.window(0.0, 1.0).atom_values[0]

        assert forcing.dim == grid.dim
        assert values[grid.index_of([2])] == pytest.approx(2j)
        assert values[grid.index_of([-2])] == pytest.approx(-2j)
