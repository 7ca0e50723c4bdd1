"""
Test: Kesirli eşitsizlikler ve Gronwall sınırı
"""
import numpy as np
import pytest

from qwave.core.inequality import (
    INEQUALITIES,
    fit_gronwall_constant,
    gronwall_bound,
    gronwall_verify,
    inequality_ratios,
    kato_ponce_check,
    sobolev_checks,
)
from qwave.core.spectral import SpectralField, random_field
from qwave.utils.exceptions import PreconditionError


class TestRatios:
    """inequality_ratios() test sınıfı"""

    def test_zero_w_gives_zero(self, quintic, grid, rng):
        ratios = inequality_ratios(quintic, random_field(grid, rng), SpectralField.zeros(grid), 0.25)

        assert ratios == {name: 0.0 for name in INEQUALITIES}

    def test_ratios_are_finite(self, quintic, grid, rng):
        ratios = inequality_ratios(quintic, random_field(grid, rng), random_field(grid, rng), 0.25)

        assert all(np.isfinite(value) and value > 0.0 for value in ratios.values())


class TestKatoPonce:
    """Çözünürlük taraması"""

    def test_alpha_range(self, quintic):
        with pytest.raises(PreconditionError):
            kato_ponce_check(quintic, (8, 16), samples=2, alpha=0.5)

    def test_small_sweep(self, quintic):
        report = kato_ponce_check(quintic, (16, 8), samples=4, alpha=0.25)
        table = report["table"]

        assert table["resolution"].tolist() == [8, 8, 8, 16, 16, 16]
        assert set(report["spreads"]) == set(INEQUALITIES)
        assert all(spread >= 1.0 for spread in report["spreads"].values())


class TestSobolev:
    """İnterpolasyon ve gömme taraması"""

    def test_small_sweep(self):
        report = sobolev_checks((16, 8, 32), samples=10, alpha=0.25)

        assert report["table"]["resolution"].tolist() == [8, 16, 32]
        assert report["interpolation_passed"]
        assert report["interpolation"] <= 1.0 + 1e-12
        assert 1.0 <= report["embedding_spread"] < 1.5


class TestGronwall:
    """Ağırlıklı Gronwall sınırı"""

    def test_zero_l_gives_constant(self):
        times = np.linspace(0.0, 5.0, 51)

        assert np.allclose(gronwall_bound(times, np.zeros_like(times), 0.3, 2.0), 2.0)

    def test_constant_l(self):
        """l ≡ c, δ' = c için integral = c·t"""
        times = np.linspace(0.0, 2.0, 201)
        bound = gronwall_bound(times, np.full_like(times, 0.5), 0.5, 1.0)

        assert bound[-1] == pytest.approx(2.0, rel=1e-12)

    def test_invalid_inputs(self):
        with pytest.raises(PreconditionError):
            gronwall_bound(np.zeros(3), np.zeros(2), 0.1, 1.0)
        with pytest.raises(PreconditionError):
            gronwall_bound(np.arange(3.0), np.array([0.0, -1.0, 0.0]), 0.1, 1.0)

    def test_fit_and_verify(self):
        times = np.linspace(0.0, 3.0, 31)
        l = np.exp(-times)
        y = 0.7 * gronwall_bound(times, l, 0.2, 1.0)
        constant = fit_gronwall_constant(times, y, l, 0.2)

        assert constant == pytest.approx(0.7)
        assert gronwall_verify(times, y, l, 0.2, constant)
        assert not gronwall_verify(times, y, l, 0.2, 0.5 * constant)
