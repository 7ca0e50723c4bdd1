"""
Global (R üzerinde yerel sonlu) ölçü aileleri - öteleme grubu T(s), pencereleme,
birim pencere M_b tahmini ve zayıf düzgün atomsuzluk (wna) modülü
"""
from abc import ABC, abstractmethod
from typing import TYPE_CHECKING, Dict, List, Optional, Sequence, Tuple

import numpy as np

from ..utils.config import ForcingConfig, ForcingFamily, ModeValue, SpikeLaw, get_settings
from ..utils.exceptions import ConfigurationError, MeasureDomainError, PreconditionError
from ..utils.logger import get_logger
from .measure import HilbertVector, VectorMeasure, interval_value, total_variation

if TYPE_CHECKING:
    from .spectral import ModeGrid

logger = get_logger("global_measure")


class GlobalMeasure(ABC):
    """R üzerinde tanımlı ölçü üreteci; her pencere tam olarak (yeniden örneklemesiz) üretilir"""

    def __init__(self, dim: int):
        self.dim = dim

    @property
    def support(self) -> Tuple[float, float]:
        """Pencerelenebilir zaman aralığı"""
        return (-np.inf, np.inf)

    @abstractmethod
    def _window(self, tau: float, t: float) -> VectorMeasure:
        ...

    def window(self, tau: float, t: float) -> VectorMeasure:
        """[τ, T] penceresindeki VectorMeasure"""
        if tau > t:
            raise MeasureDomainError(f"Pencere ters: [{tau}, {t}]")
        lo, hi = self.support
        if tau < lo or t > hi:
            raise MeasureDomainError(f"[{tau}, {t}] penceresi destek [{lo}, {hi}] dışında", value=tau)
        return self._window(tau, t)

    def shift(self, s: float) -> "GlobalMeasure":
        """T(s)μ = μ(· + s)"""
        if s == 0.0:
            return self
        return ShiftedMeasure(self, s)

    def atoms(self, tau: float, t: float) -> Tuple[np.ndarray, np.ndarray]:
        """[τ, T] içindeki atomlar (zamanlar, değerler)"""
        window = self.window(tau, t)
        return window.atom_times, window.atom_values

    def atom_times(self, tau: float, t: float) -> np.ndarray:
        return self.atoms(tau, t)[0]

    def density(self, t: float) -> Optional[np.ndarray]:
        """Analitik yoğunluk (varsa); yoksa None"""
        return None

    def unit_window_bound(self, starts: Sequence[float]) -> float:
        """‖μ‖_{M_b} tahmini: örneklenen t için sup TV(μ|[t, t+1])"""
        bound = 0.0
        for start in starts:
            bound = max(bound, total_variation(self.window(start, start + 1.0)))
        return bound

    def describe(self) -> Dict[str, object]:
        return {"family": type(self).__name__, "dim": self.dim}


class ZeroMeasure(GlobalMeasure):
    """Sıfır kuvvet"""

    def _window(self, tau: float, t: float) -> VectorMeasure:
        return VectorMeasure.zero(tau, t, self.dim)

    def atoms(self, tau: float, t: float) -> Tuple[np.ndarray, np.ndarray]:
        return np.zeros(0), np.zeros((0, self.dim))

    def density(self, t: float) -> Optional[np.ndarray]:
        return np.zeros(self.dim)


class ShiftedMeasure(GlobalMeasure):
    """Ötelenmiş ölçü: pencere = taban penceresinin geri ötelenmesi"""

    def __init__(self, base: GlobalMeasure, s: float):
        super().__init__(base.dim)
        # İç içe ötelemeler toplanır
        if isinstance(base, ShiftedMeasure):
            s = s + base.offset
            base = base.base
        self.base = base
        self.offset = s

    @property
    def support(self) -> Tuple[float, float]:
        lo, hi = self.base.support
        return (lo - self.offset, hi - self.offset)

    def shift(self, s: float) -> GlobalMeasure:
        if s + self.offset == 0.0:
            return self.base
        return ShiftedMeasure(self.base, s + self.offset)

    def _window(self, tau: float, t: float) -> VectorMeasure:
        # Uç noktalar τ ve T'ye eşit kalmalı; ötelenen düğümler [τ, T]'ye kırpılır
        base = self.base.window(tau + self.offset, t + self.offset)
        return VectorMeasure(tau, t, self.dim,
                             np.clip(base.atom_times - self.offset, tau, t), base.atom_values,
                             np.clip(base.density_times - self.offset, tau, t), base.density_values)

    def atoms(self, tau: float, t: float) -> Tuple[np.ndarray, np.ndarray]:
        times, values = self.base.atoms(tau + self.offset, t + self.offset)
        return np.clip(times - self.offset, tau, t), values

    def density(self, t: float) -> Optional[np.ndarray]:
        return self.base.density(t + self.offset)

    def describe(self) -> Dict[str, object]:
        return {**self.base.describe(), "shift": self.offset}


class PeriodicTemplate(GlobalMeasure):
    """[0, P) üzerindeki şablonun periyodik tekrarı"""

    def __init__(self, template: VectorMeasure, period: float):
        super().__init__(template.dim)
        if period <= 0:
            raise ConfigurationError(f"Periyot pozitif olmalı: {period}")
        if template.start != 0.0 or template.end != period:
            raise ConfigurationError("Şablon [0, P] aralığında tanımlı olmalı")
        if np.any(template.atom_times >= period):
            raise ConfigurationError("Şablon atomları [0, P) içinde olmalı")
        self.template = template
        self.period = period

    def _window(self, tau: float, t: float) -> VectorMeasure:
        first = int(np.floor(tau / self.period))
        last = int(np.ceil(t / self.period))
        if last == first:
            last += 1
        lo, hi = first * self.period, last * self.period
        total = VectorMeasure.zero(lo, hi, self.dim)
        for k in range(first, last):
            piece = self.template.translate(k * self.period)
            total = total + piece.extend(lo, hi)
        return total.restrict(tau, t)

    def describe(self) -> Dict[str, object]:
        return {**super().describe(), "period": self.period}


class SpikeTrain(GlobalMeasure):
    """Spike dizisi: birbirini götüren çiftler veya mod kaskadı"""

    def __init__(self, law: SpikeLaw, direction: np.ndarray, scale: float = 1.0, n_min: int = 2,
                 n_max: int = 200, amplitude: float = 1.0, atomic: bool = True, absolute: bool = False,
                 mode_order: Optional[np.ndarray] = None):
        direction = np.atleast_1d(np.asarray(direction))
        super().__init__(direction.size)
        if n_max < n_min:
            raise ConfigurationError(f"n_max ({n_max}) n_min'den ({n_min}) küçük")
        self.law = SpikeLaw(law)
        self.direction = direction
        self.scale = scale
        self.n_min = n_min
        self.n_max = n_max
        self.amplitude = amplitude
        self.atomic = atomic
        self.absolute = absolute
        self.mode_order = np.arange(self.dim) if mode_order is None else np.asarray(mode_order)
        if self.law == SpikeLaw.MODE_CASCADE and n_max >= self.dim:
            raise ConfigurationError(f"Mod kaskadı için n_max < {self.dim} olmalı")
        self._spikes = self._build_spikes()

    def _build_spikes(self) -> List[Tuple[float, float, np.ndarray]]:
        """(zaman, genişlik, değer) üçlüleri"""
        spikes = []
        sign = 1.0 if self.absolute else -1.0
        for n in range(self.n_min, self.n_max + 1):
            if self.law == SpikeLaw.CANCELLING_SQUARE:
                start, gap = self.scale * n, 1.0 / (n * n)
            elif self.law == SpikeLaw.CANCELLING_LINEAR:
                start, gap = self.scale * n, 1.0 / (self.scale * n)
            else:
                basis = np.zeros(self.dim)
                basis[self.mode_order[n]] = 1.0
                spikes.append((float(n), 1.0 / n, self.amplitude * basis))
                continue
            value = self.amplitude * self.direction
            spikes.append((start, gap, value))
            spikes.append((start + gap, gap, sign * value))
        return spikes

    def _window(self, tau: float, t: float) -> VectorMeasure:
        if self.atomic:
            atoms = [(s, v) for s, _, v in self._spikes if tau <= s <= t]
            if not atoms:
                return VectorMeasure.zero(tau, t, self.dim)
            return VectorMeasure.from_atoms(tau, t, atoms)
        total = VectorMeasure.zero(tau, t, self.dim)
        for s, width, value in self._spikes:
            if s + width <= tau or s >= t:
                continue
            # Kütlesi value olan [s, s+w] şapka yoğunluğu
            times = np.array([s, s + 0.5 * width, s + width])
            peak = 2.0 / width
            values = np.outer([0.0, peak, 0.0], value)
            lo, hi = min(tau, s), max(t, s + width)
            hat = VectorMeasure(lo, hi, self.dim, density_times=times, density_values=values)
            total = total + hat.restrict(tau, t)
        return total

    def atoms(self, tau: float, t: float) -> Tuple[np.ndarray, np.ndarray]:
        if not self.atomic:
            return np.zeros(0), np.zeros((0, self.dim))
        selected = [(s, v) for s, _, v in self._spikes if tau <= s <= t]
        if not selected:
            return np.zeros(0), np.zeros((0, self.dim))
        return np.array([s for s, _ in selected]), np.array([v for _, v in selected])

    def density(self, t: float) -> Optional[np.ndarray]:
        return np.zeros(self.dim) if self.atomic else None

    def describe(self) -> Dict[str, object]:
        return {**super().describe(), "law": self.law.value, "scale": self.scale,
                "n_min": self.n_min, "n_max": self.n_max, "atomic": self.atomic}


class AsymptoticProfile(GlobalMeasure):
    """Skaler yoğunluk offset + amplitude·(2/π)·arctan(rate·t), ±∞'da sabitlere gider"""

    def __init__(self, offset: float = 0.0, amplitude: float = 3.0, rate: float = 1.0,
                 node_spacing: float = 0.01, direction: Optional[np.ndarray] = None):
        direction = np.ones(1) if direction is None else np.atleast_1d(np.asarray(direction))
        super().__init__(direction.size)
        self.offset = offset
        self.amplitude = amplitude
        self.rate = rate
        self.node_spacing = node_spacing
        self.direction = direction

    def profile(self, t: np.ndarray) -> np.ndarray:
        return self.offset + self.amplitude * (2.0 / np.pi) * np.arctan(self.rate * np.asarray(t))

    def density(self, t: float) -> Optional[np.ndarray]:
        return float(self.profile(t)) * self.direction

    def atoms(self, tau: float, t: float) -> Tuple[np.ndarray, np.ndarray]:
        return np.zeros(0), np.zeros((0, self.dim))

    def _window(self, tau: float, t: float) -> VectorMeasure:
        if t == tau:
            return VectorMeasure.zero(tau, t, self.dim)
        first = int(np.floor(tau / self.node_spacing)) + 1
        last = int(np.ceil(t / self.node_spacing)) - 1
        grid = self.node_spacing * np.arange(first, last + 1)
        times = np.concatenate([[tau], grid[(grid > tau) & (grid < t)], [t]])
        values = np.outer(self.profile(times), self.direction)
        return VectorMeasure(tau, t, self.dim, density_times=times, density_values=values)


class ExplicitWindowList(GlobalMeasure):
    """Ardışık pencerelerin açık listesi; destek dışı pencere hata verir"""

    def __init__(self, pieces: Sequence[VectorMeasure]):
        if not pieces:
            raise ConfigurationError("Açık pencere listesi boş")
        pieces = sorted(pieces, key=lambda m: m.start)
        for left, right in zip(pieces[:-1], pieces[1:]):
            if right.start != left.end:
                raise ConfigurationError(f"Pencereler ardışık değil: {left.end} ≠ {right.start}")
            # Ara sınırlar bir sonraki pencereye aittir
            if np.any(left.atom_times == left.end):
                raise ConfigurationError(f"t={left.end} sınır atomu sonraki pencerede tanımlanmalı")
        super().__init__(pieces[0].dim)
        self.pieces = list(pieces)

    @property
    def support(self) -> Tuple[float, float]:
        return (self.pieces[0].start, self.pieces[-1].end)

    def _window(self, tau: float, t: float) -> VectorMeasure:
        total = VectorMeasure.zero(tau, t, self.dim)
        for piece in self.pieces:
            if piece.end < tau or piece.start > t:
                continue
            lo, hi = max(tau, piece.start), min(t, piece.end)
            total = total + piece.restrict(lo, hi).extend(tau, t)
        return total


class CompositeMeasure(GlobalMeasure):
    """Bileşenlerin toplamı"""

    def __init__(self, components: Sequence[GlobalMeasure]):
        if not components:
            raise ConfigurationError("Bileşik ölçü en az bir bileşen içermeli")
        dims = {c.dim for c in components}
        if len(dims) != 1:
            raise ConfigurationError(f"Bileşen boyutları farklı: {sorted(dims)}")
        super().__init__(components[0].dim)
        self.components = list(components)

    @property
    def support(self) -> Tuple[float, float]:
        lows, highs = zip(*(c.support for c in self.components))
        return (max(lows), min(highs))

    def _window(self, tau: float, t: float) -> VectorMeasure:
        total = self.components[0].window(tau, t)
        for component in self.components[1:]:
            total = total + component.window(tau, t)
        return total

    def atoms(self, tau: float, t: float) -> Tuple[np.ndarray, np.ndarray]:
        parts = [c.atoms(tau, t) for c in self.components]
        times = np.concatenate([p[0] for p in parts])
        values = np.vstack([np.reshape(p[1], (-1, self.dim)) for p in parts])
        if not times.size:
            return times, values
        unique, inverse = np.unique(times, return_inverse=True)
        merged = np.zeros((unique.size, self.dim), dtype=values.dtype)
        np.add.at(merged, inverse, values)
        return unique, merged

    def density(self, t: float) -> Optional[np.ndarray]:
        values = [c.density(t) for c in self.components]
        if any(v is None for v in values):
            return None
        return np.sum(values, axis=0)

    def describe(self) -> Dict[str, object]:
        return {**super().describe(), "components": [c.describe() for c in self.components]}


class ScaledMeasure(GlobalMeasure):
    """Sabit çarpanla ölçeklenmiş ölçü"""

    def __init__(self, base: GlobalMeasure, factor: float):
        super().__init__(base.dim)
        self.base = base
        self.factor = factor

    @property
    def support(self) -> Tuple[float, float]:
        return self.base.support

    def _window(self, tau: float, t: float) -> VectorMeasure:
        return self.base.window(tau, t).scale(self.factor)

    def atoms(self, tau: float, t: float) -> Tuple[np.ndarray, np.ndarray]:
        times, values = self.base.atoms(tau, t)
        return times, values * self.factor

    def density(self, t: float) -> Optional[np.ndarray]:
        value = self.base.density(t)
        return None if value is None else self.factor * value


def wna_modulus(g: GlobalMeasure, psi: HilbertVector, h: float, shifts: Sequence[float]) -> float:
    """max_s |(μ([s, s+h]), ψ)| örneklenen ötelemeler üzerinde"""
    if h <= 0:
        raise PreconditionError(f"Pencere uzunluğu pozitif olmalı: {h}")
    modulus = 0.0
    for s in shifts:
        value = interval_value(g.window(s, s + h), s, s + h, True, True)
        modulus = max(modulus, abs(value.inner(psi)))
    return modulus


def wna_profile(g: GlobalMeasure, psi: HilbertVector, shifts: Sequence[float],
                levels: int = 10) -> Dict[str, object]:
    """h = 1, 1/2, ..., 2^-levels için modül profili ve oran testi"""
    windows = [2.0 ** -k for k in range(levels + 1)]
    moduli = [wna_modulus(g, psi, h, shifts) for h in windows]
    threshold = get_settings().wna_ratio_threshold
    ratio = moduli[-1] / moduli[0] if moduli[0] > 0 else 0.0
    non_atomic = moduli[0] == 0.0 or ratio < threshold
    logger.debug(f"wna profili: modül(1)={moduli[0]:.4g}, modül(2^-{levels})={moduli[-1]:.4g}, oran={ratio:.3g}")
    return {"windows": windows, "moduli": moduli, "ratio": ratio, "threshold": threshold,
            "weakly_non_atomic": non_atomic}


def modes_to_vector(modes: Sequence[ModeValue], grid: Optional["ModeGrid"], scalar: bool) -> np.ndarray:
    """Konfigürasyondaki mod listesini H koordinatlarına çevir"""
    if scalar or grid is None:
        return np.array([float(sum(m.value[0] for m in modes))])
    return grid.vector_from_modes([(m.mode, complex(*m.value) if len(m.value) == 2 else m.value[0])
                                   for m in modes])


def build_forcing(config: ForcingConfig, grid: Optional["ModeGrid"] = None) -> GlobalMeasure:
    """ForcingConfig'ten GlobalMeasure kur"""
    dim = 1 if (config.scalar or grid is None) else grid.dim
    family = ForcingFamily(config.family)

    def vector(modes: Sequence[ModeValue]) -> np.ndarray:
        return modes_to_vector(modes, grid, config.scalar)

    if family == ForcingFamily.ZERO:
        measure: GlobalMeasure = ZeroMeasure(dim)
    elif family == ForcingFamily.PERIODIC_TEMPLATE:
        period = config.period_seconds
        template = VectorMeasure.zero(0.0, period, dim)
        if config.atoms:
            template = template + VectorMeasure.from_atoms(
                0.0, period, [(a.time_seconds, vector(a.modes)) for a in config.atoms], dim)
        if config.density:
            times = [node.time_seconds for node in config.density]
            values = np.array([vector(node.modes) for node in config.density])
            template = template + VectorMeasure(0.0, period, dim, density_times=times, density_values=values)
        if config.harmonic is not None:
            harmonic = config.harmonic
            times = np.linspace(0.0, period, harmonic.nodes_per_period + 1)
            profile = np.cos(2.0 * np.pi * times / period + harmonic.phase)
            values = np.outer(profile, vector(harmonic.modes))
            template = template + VectorMeasure(0.0, period, dim, density_times=times, density_values=values)
        measure = PeriodicTemplate(template, period)
    elif family == ForcingFamily.SPIKE_TRAIN:
        if config.law == SpikeLaw.MODE_CASCADE:
            direction = np.zeros(dim)
        else:
            direction = vector(config.direction) if config.direction else np.eye(dim)[0]
        order = grid.eigen_order if (grid is not None and not config.scalar) else None
        measure = SpikeTrain(config.law, direction, config.spike_scale, config.n_min, config.n_max,
                             config.amplitude, config.atomic, config.absolute, order)
    elif family == ForcingFamily.ASYMPTOTIC_PROFILE:
        direction = vector(config.direction) if (config.direction and not config.scalar) else None
        measure = AsymptoticProfile(config.offset, config.amplitude, config.rate_per_second,
                                    config.node_spacing_seconds, direction)
    elif family == ForcingFamily.EXPLICIT_WINDOW_LIST:
        pieces = []
        for window in config.windows:
            piece = VectorMeasure.zero(window.start_seconds, window.end_seconds, dim)
            if window.atoms:
                piece = piece + VectorMeasure.from_atoms(
                    window.start_seconds, window.end_seconds,
                    [(a.time_seconds, vector(a.modes)) for a in window.atoms], dim)
            if window.density:
                times = [node.time_seconds for node in window.density]
                values = np.array([vector(node.modes) for node in window.density])
                piece = piece + VectorMeasure(window.start_seconds, window.end_seconds, dim,
                                              density_times=times, density_values=values)
            pieces.append(piece)
        measure = ExplicitWindowList(pieces)
    else:
        measure = CompositeMeasure([build_forcing(c, grid) for c in config.components])

    if config.scale_factor != 1.0:
        measure = ScaledMeasure(measure, config.scale_factor)
    logger.debug(f"Kuvvet kuruldu: {measure.describe()}")
    return measure
