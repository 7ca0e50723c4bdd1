"""
Test: Ölçü modülü
VectorMeasure, dağılım fonksiyonu, toplam varyasyon ve yaklaşım algoritmaları
"""
import numpy as np
import pytest

from qwave.core.measure import (
    DistributionFunction,
    VectorMeasure,
    by_parts_residual,
    delta_approximation,
    distribution,
    distribution_values,
    equi_integrability_modulus,
    integrate_scalar,
    interval_value,
    mode_rotating_measure,
    mollify,
    polar_decompose,
    project_tail,
    regularity_gap,
    total_variation,
)
from qwave.utils.config import RegularityKind
from qwave.utils.exceptions import MeasureDomainError, PreconditionError, UndefinedPolarError


def constant_density(value=2.0, start=0.0, end=1.0):
    return VectorMeasure.from_density(start, end, [start, end], [value, value])


class TestVectorMeasure:
    """VectorMeasure test sınıfı"""

    def test_same_time_atoms_are_merged(self):
        """Aynı zamandaki atomlar toplanır, sıfır atom atılır"""
        mu = VectorMeasure(0.0, 1.0, 1, [0.5, 0.5, 0.2], [[1.0], [2.0], [0.0]])

        assert mu.atom_times.tolist() == [0.5]
        assert mu.atom_values[:, 0].tolist() == [3.0]

    def test_atom_outside_window(self):
        """Aralık dışındaki atom reddedilir"""
        with pytest.raises(MeasureDomainError):
            VectorMeasure.from_atoms(0.0, 1.0, [(1.5, [1.0])])

    def test_single_density_node_is_dropped(self):
        mu = VectorMeasure(0.0, 1.0, 1, density_times=[0.5], density_values=[[1.0]])

        assert not mu.has_density
        assert mu.is_atomic

    def test_translate_and_restrict(self):
        """Öteleme atomları taşır, kısıtlama yoğunluğu keser"""
        mu = VectorMeasure.from_atoms(0.0, 1.0, [(0.25, [1.0])]).translate(2.0)
        assert (mu.start, mu.end) == (2.0, 3.0)
        assert mu.atom_times.tolist() == [2.25]

        restricted = constant_density(2.0, 0.0, 2.0).restrict(0.5, 1.5)
        assert total_variation(restricted) == pytest.approx(2.0, abs=1e-12)

    def test_sum_requires_same_interval(self):
        with pytest.raises(MeasureDomainError):
            VectorMeasure.zero(0.0, 1.0, 1) + VectorMeasure.zero(0.0, 2.0, 1)

    def test_sum_keeps_density_jump(self):
        """Farklı desteklerin toplamında sıçrama iki düğümle saklanır"""
        left = VectorMeasure.from_density(0.0, 1.0, [0.0, 0.5], [1.0, 1.0])
        right = VectorMeasure.from_density(0.0, 1.0, [0.5, 1.0], [3.0, 3.0])
        total = left + right

        assert total.density_right([0.5])[0, 0] == pytest.approx(3.0)
        assert total.density_left([0.5])[0, 0] == pytest.approx(1.0)
        assert total_variation(total) == pytest.approx(2.0, abs=1e-12)


class TestDistribution:
    """Dağılım fonksiyonu ve aralık değerleri"""

    def test_total_variation_sign_change(self):
        """∫|1 − 2t| dt = 1/2 kapalı formla"""
        mu = VectorMeasure.from_density(0.0, 1.0, [0.0, 1.0], [1.0, -1.0])

        assert total_variation(mu) == pytest.approx(0.5, abs=1e-12)

    def test_left_continuity(self):
        """Φ(t) atomu t'de içermez, son noktada içerir"""
        mu = VectorMeasure.from_atoms(0.0, 1.0, [(0.5, [3.0]), (1.0, [1.0])])
        values = distribution_values(mu, [0.5, 0.6, 1.0])[:, 0]

        assert values.tolist() == [0.0, 3.0, 4.0]

    def test_interval_brackets(self):
        """Dört parantez kombinasyonu"""
        mu = constant_density(2.0) + VectorMeasure.from_atoms(0.0, 1.0, [(0.5, [1.0])])

        assert interval_value(mu, 0.25, 0.5, True, False).coeffs[0] == pytest.approx(0.5)
        assert interval_value(mu, 0.25, 0.5, True, True).coeffs[0] == pytest.approx(1.5)
        assert interval_value(mu, 0.5, 0.75, False, True).coeffs[0] == pytest.approx(0.5)
        assert interval_value(mu, 0.5, 0.5, True, True).coeffs[0] == pytest.approx(1.0)

    def test_point_outside_window(self):
        mu = constant_density()
        with pytest.raises(MeasureDomainError):
            distribution(mu, 1.5)

    def test_variation_resolves_atoms(self):
        """Atom zamanlarını içeren bölüntüde varyasyon tam"""
        mu = VectorMeasure.from_atoms(0.0, 1.0, [(0.3, [1.0]), (0.7, [-2.0])])
        variations = DistributionFunction(mu).variation([1, 2], resolve_atoms=True)

        assert variations == pytest.approx([3.0, 3.0])

    def test_jump_equals_atom(self):
        mu = VectorMeasure.from_atoms(0.0, 1.0, [(0.4, [0.0, 2.0])])

        assert DistributionFunction(mu).jump(0.4).coeffs.tolist() == [0.0, 2.0]

    def test_integrate_scalar_constant(self):
        mu = constant_density(2.0) + VectorMeasure.from_atoms(0.0, 1.0, [(0.5, [1.0])])

        assert integrate_scalar(lambda t: 1.0, mu)[0] == pytest.approx(3.0)

    def test_by_parts_residual(self):
        """Kısmi integrasyon kalıntısı yuvarlama seviyesinde"""
        mu = (VectorMeasure.from_density(0.0, 1.0, [0.0, 0.5, 1.0], [1.0, -1.0, 2.0])
              + VectorMeasure.from_atoms(0.0, 1.0, [(0.3, [0.5]), (1.0, [1.0])]))

        residual = by_parts_residual(lambda t: np.array([t]), lambda t: np.array([1.0]), mu)
        assert residual < 1e-12


class TestPolar:
    """Polar ayrışım"""

    def test_zero_measure_is_undefined(self):
        with pytest.raises(UndefinedPolarError):
            polar_decompose(VectorMeasure.zero(0.0, 1.0, 2))

    def test_reconstruction(self):
        """∫ ρ_μ d|μ| = μ(A)"""
        mu = (VectorMeasure.from_density(0.0, 1.0, [0.0, 1.0], np.array([[3.0, 4.0], [3.0, 4.0]]))
              + VectorMeasure.from_atoms(0.0, 1.0, [(0.5, [0.0, -1.0])]))
        polar = polar_decompose(mu)

        assert polar.atom_weights.tolist() == [1.0]
        assert np.allclose(polar.direction(0.25), [0.6, 0.8])
        assert np.allclose(polar.reconstruct(0.0, 1.0).coeffs, [3.0, 3.0])


class TestApproximation:
    """Ayrık ve düzgün yaklaşımlar"""

    def test_delta_approximation_matches_on_grid(self):
        """Izgara noktalarında dağılım fonksiyonları eşit, atomlar korunur"""
        mu = constant_density(2.0) + VectorMeasure.from_atoms(0.0, 1.0, [(0.5, [1.0])])
        approx = delta_approximation(mu, 4)
        points = np.linspace(0.0, 1.0, 5)

        assert approx.is_atomic
        assert np.allclose(distribution_values(approx, points), distribution_values(mu, points))
        assert total_variation(approx) == pytest.approx(3.0)

    def test_delta_approximation_requires_positive_n(self):
        with pytest.raises(PreconditionError):
            delta_approximation(constant_density(), 0)

    def test_mollify_atom_becomes_unit_hat(self):
        """Atom, sağındaki 1/n genişlikli birim kütleli şapkaya dönüşür"""
        mu = VectorMeasure.from_atoms(0.0, 1.0, [(0.5, [1.0])])
        smooth = mollify(mu, 10)

        assert smooth.atom_times.size == 0
        assert total_variation(smooth) == pytest.approx(1.0, abs=1e-12)
        assert smooth.density_right([0.45])[0, 0] == 0.0
        assert smooth.density_right([0.55])[0, 0] == pytest.approx(20.0)

    def test_mollify_weak_star(self):
        """Zaman düzgünleştirmesi dağılım fonksiyonuna yakınsar"""
        atom = VectorMeasure.from_atoms(0.0, 1.0, [(0.3, [1.0])])
        for n in (10, 100):
            assert distribution_values(mollify(atom, n), [0.8])[0, 0] == pytest.approx(1.0, abs=1e-12)

        density = constant_density(1.0)
        errors = [abs(distribution_values(mollify(density, n), [0.8])[0, 0] - 0.8) for n in (10, 100)]
        assert errors[1] < errors[0]
        assert errors[1] < 0.01

    def test_project_tail(self):
        """İlk modlar sıfırlanınca kalan TV"""
        mu = mode_rotating_measure(0, 4, 4)
        tail, tv = project_tail(mu, 2)

        assert total_variation(mu) == pytest.approx(4.0)
        assert tv == pytest.approx(2.0)
        assert np.all(tail.density_values[:, :2] == 0)

    def test_project_tail_dimension(self):
        with pytest.raises(PreconditionError):
            project_tail(mode_rotating_measure(0, 2, 2), 3)

    def test_regularity_gap_space(self):
        mu = mode_rotating_measure(0, 4, 4)

        assert regularity_gap(mu, RegularityKind.SPACE, 4) == pytest.approx(0.0)
        assert regularity_gap(mu, RegularityKind.SPACE, 1) == pytest.approx(3.0)

    def test_equi_integrability(self):
        """Sabit yoğunlukta ω(h) = h·ρ; atomlu ölçüde tanımsız"""
        omega = equi_integrability_modulus([constant_density(2.0)], [0.1, 0.5])
        assert omega == pytest.approx([0.2, 1.0])

        with pytest.raises(PreconditionError):
            equi_integrability_modulus([VectorMeasure.from_atoms(0.0, 1.0, [(0.5, [1.0])])], [0.1])
