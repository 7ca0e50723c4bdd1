"""
Doğrusal olmayan terim f(u) = u⁵ + h(u) (+ L·u kaydırması) ve ilkel fonksiyonu F
"""
from dataclasses import dataclass, replace
from typing import Callable, Dict, NamedTuple, Sequence

import numpy as np

from ..utils.config import NonlinearityConfig, NonlinearityFamily
from ..utils.exceptions import ConfigurationError
from ..utils.logger import get_logger

logger = get_logger("nonlinearity")


class SubcriticalTerm(NamedTuple):
    """h ailesi: h, H = ∫h, h', h''; hepsi λ ile ölçeklenir"""
    h: Callable[[np.ndarray], np.ndarray]
    antiderivative: Callable[[np.ndarray], np.ndarray]
    derivative: Callable[[np.ndarray], np.ndarray]
    second_derivative: Callable[[np.ndarray], np.ndarray]


FAMILIES: Dict[NonlinearityFamily, SubcriticalTerm] = {
    NonlinearityFamily.NONE: SubcriticalTerm(
        np.zeros_like, np.zeros_like, np.zeros_like, np.zeros_like),
    NonlinearityFamily.CUBIC: SubcriticalTerm(
        lambda u: u ** 3,
        lambda u: 0.25 * u ** 4,
        lambda u: 3.0 * u ** 2,
        lambda u: 6.0 * u),
    NonlinearityFamily.SINE: SubcriticalTerm(
        np.sin,
        lambda u: 1.0 - np.cos(u),
        np.cos,
        lambda u: -np.sin(u)),
}


@dataclass(frozen=True)
class Nonlinearity:
    """f_L(u) = [u⁵] + λ·h(u) + L·u"""
    quintic: bool = True
    family: NonlinearityFamily = NonlinearityFamily.NONE
    lam: float = 1.0
    shift: float = 0.0

    @classmethod
    def from_config(cls, config: NonlinearityConfig) -> "Nonlinearity":
        return cls(config.quintic, NonlinearityFamily(config.family), config.lam, config.shift)

    @property
    def term(self) -> SubcriticalTerm:
        return FAMILIES[self.family]

    @property
    def is_linear(self) -> bool:
        return not self.quintic and (self.family == NonlinearityFamily.NONE or self.lam == 0.0)

    def with_shift(self, shift: float) -> "Nonlinearity":
        return replace(self, shift=shift)

    def f(self, u: np.ndarray) -> np.ndarray:
        value = self.lam * self.term.h(u) + self.shift * u
        if self.quintic:
            value = value + u ** 5
        return value

    def F(self, u: np.ndarray) -> np.ndarray:
        value = self.lam * self.term.antiderivative(u) + 0.5 * self.shift * u * u
        if self.quintic:
            value = value + u ** 6 / 6.0
        return value

    def df(self, u: np.ndarray) -> np.ndarray:
        value = self.lam * self.term.derivative(u) + self.shift
        if self.quintic:
            value = value + 5.0 * u ** 4
        return value

    def d2f(self, u: np.ndarray) -> np.ndarray:
        value = self.lam * self.term.second_derivative(u)
        if self.quintic:
            value = value + 20.0 * u ** 3
        return value


def coercivity_level(nonlinearity: Nonlinearity, levels: Sequence[float] = (0, 1, 2, 4, 8, 16, 32, 64, 128),
                     u_max: float = 20.0, samples: int = 4001) -> float:
    """L₀(f): ızgaradaki en küçük L, öyle ki F_L ≥ 0 ve f_L(u)u − F_L(u) ≥ 0 (|u| ≤ u_max)"""
    u = np.linspace(-u_max, u_max, samples)
    for level in levels:
        shifted = nonlinearity.with_shift(float(level))
        potential = shifted.F(u)
        virial = shifted.f(u) * u - potential
        tolerance = 1e-12 * max(1.0, float(np.max(np.abs(potential))))
        if potential.min() >= -tolerance and virial.min() >= -tolerance:
            logger.debug(f"Koersivite seviyesi L₀ = {level}")
            return float(level)
    raise ConfigurationError(f"{list(levels)} ızgarasında koersif L bulunamadı")
