"""
Test: Doğrusal olmayan terim
"""
import numpy as np
import pytest

from qwave.core.nonlinearity import Nonlinearity, coercivity_level
from qwave.utils.config import NonlinearityConfig, NonlinearityFamily
from qwave.utils.exceptions import ConfigurationError


class TestNonlinearity:
    """Nonlinearity test sınıfı"""

    def test_pure_quintic(self, quintic):
        u = np.array([-2.0, 0.5, 1.0])

        assert np.allclose(quintic.f(u), u ** 5)
        assert np.allclose(quintic.F(u), u ** 6 / 6.0)
        assert np.allclose(quintic.df(u), 5.0 * u ** 4)
        assert np.allclose(quintic.d2f(u), 20.0 * u ** 3)
        assert not quintic.is_linear

    @pytest.mark.parametrize("family", [NonlinearityFamily.CUBIC, NonlinearityFamily.SINE])
    def test_derivatives_are_consistent(self, family):
        """F' = f, f' = df (merkezi farklarla)"""
        nonlinearity = Nonlinearity(True, family, lam=-2.0, shift=1.5)
        u = np.linspace(-1.5, 1.5, 13)
        h = 1e-5

        assert np.allclose((nonlinearity.F(u + h) - nonlinearity.F(u - h)) / (2 * h), nonlinearity.f(u), atol=1e-6)
        assert np.allclose((nonlinearity.f(u + h) - nonlinearity.f(u - h)) / (2 * h), nonlinearity.df(u), atol=1e-6)
        assert np.allclose((nonlinearity.df(u + h) - nonlinearity.df(u - h)) / (2 * h), nonlinearity.d2f(u),
                           atol=1e-5)

    def test_linear_flag(self, linear):
        assert linear.is_linear
        assert Nonlinearity(False, NonlinearityFamily.CUBIC, lam=0.0).is_linear
        assert not Nonlinearity(False, NonlinearityFamily.CUBIC, lam=1.0).is_linear

    def test_with_shift(self, quintic):
        shifted = quintic.with_shift(4.0)

        assert shifted.shift == 4.0
        assert quintic.shift == 0.0
        assert shifted.f(np.array([1.0]))[0] == pytest.approx(5.0)

    def test_from_config(self):
        config = NonlinearityConfig(quintic=True, family=NonlinearityFamily.SINE, lam=0.5)
        nonlinearity = Nonlinearity.from_config(config)

        assert nonlinearity.family == NonlinearityFamily.SINE
        assert nonlinearity.lam == 0.5


class TestCoercivity:
    """Koersivite seviyesi L₀"""

    def test_pure_quintic_needs_no_shift(self, quintic):
        assert coercivity_level(quintic) == 0.0

    def test_negative_cubic_needs_shift(self):
        """u⁵ − 4u³ için F_L ≥ 0 ancak L > 0 ile"""
        level = coercivity_level(Nonlinearity(True, NonlinearityFamily.CUBIC, lam=-4.0))
        shifted = Nonlinearity(True, NonlinearityFamily.CUBIC, lam=-4.0, shift=level)
        u = np.linspace(-5.0, 5.0, 1001)

        assert level > 0.0
        assert np.all(shifted.F(u) >= -1e-9)

    def test_no_level_found(self):
        with pytest.raises(ConfigurationError):
            coercivity_level(Nonlinearity(False, NonlinearityFamily.CUBIC, lam=-1.0), levels=(0.0, 1.0))
