"""
Torus üzerinde kesilmiş Fourier gösterimi - Sobolev/Lebesgue/Strichartz normları,
izdüşümler ve sıfır dolgulu (dealiased) doğrusal olmayan terim

Katsayılar ortonormal tabana göredir: u(x) = Σ c_k e^{ik·x} / (2π)^{d/2},
böylece ‖u‖_{L²} = ‖c‖_{ℓ²}. Ölçülerin H koordinatları c dizisinin düzleştirilmiş halidir.
"""
from dataclasses import dataclass
from pathlib import Path
from typing import Callable, Optional, Sequence, Tuple, Union

import numpy as np
from scipy import fft as sfft
from scipy.integrate import simpson
from scipy.interpolate import CubicSpline

from ..utils.config import ModelConfig, get_settings
from ..utils.exceptions import ConfigurationError, GridMismatchError, PreconditionError
from ..utils.io import read_field_dump, write_field_dump
from ..utils.logger import get_logger
from .measure import HilbertVector

logger = get_logger("spectral")


class ModeGrid:
    """d-torus üzerinde mod kümesi ve p·N dolgulu fiziksel ızgara"""

    def __init__(self, d: int, n_modes: int, padding: int = 3):
        if d not in (1, 3):
            raise ConfigurationError(f"Geçersiz boyut: {d}")
        if n_modes < 2 or n_modes % 2:
            raise ConfigurationError(f"Mod sayısı çift ve ≥ 2 olmalı: {n_modes}")
        if padding < 3:
            logger.warning(f"padding={padding} < 3: kuintik terim örtüşmeli (aliased) hesaplanır")
        self.d = d
        self.n_modes = n_modes
        self.padding = padding
        self.physical_size = padding * n_modes
        self.shape = (n_modes,) * d

        axis = sfft.fftfreq(n_modes, 1.0 / n_modes).astype(int)
        mesh = np.meshgrid(*([axis] * d), indexing="ij")
        self.wavevectors = np.stack([m.ravel() for m in mesh], axis=1)
        # Nyquist modu (|k_i| = N/2) gerçel alanlarda eşleniksiz kalır, sıfırlanır
        self.mask = np.all(np.abs(self.wavevectors) < n_modes // 2, axis=1)
        self.wavenumber_sq = np.sum(self.wavevectors ** 2, axis=1).astype(float)
        self.eigenvalues = 1.0 + self.wavenumber_sq
        self.eigen_order = np.lexsort((self.eigenvalues, ~self.mask))
        self._pad_index = np.ix_(*([np.mod(axis, self.physical_size)] * d))
        self._norm = (2.0 * np.pi) ** (d / 2.0)
        self.cell_volume = (2.0 * np.pi / self.physical_size) ** d

    @classmethod
    def from_config(cls, model: ModelConfig) -> "ModeGrid":
        return cls(model.d, model.n_modes, model.padding)

    @property
    def dim(self) -> int:
        return int(self.wavevectors.shape[0])

    @property
    def max_eigenvalue(self) -> float:
        return float(self.eigenvalues[self.mask].max())

    @property
    def workers(self) -> int:
        return get_settings().fft_workers

    def same_as(self, other: "ModeGrid") -> bool:
        return (self.d, self.n_modes, self.padding) == (other.d, other.n_modes, other.padding)

    def check(self, other: "ModeGrid") -> None:
        if not self.same_as(other):
            raise GridMismatchError(self.dim, other.dim)

    def index_of(self, mode: Sequence[int]) -> int:
        """Dalga vektörünün düzleştirilmiş indeksi"""
        mode = list(mode)
        if len(mode) != self.d:
            raise ConfigurationError(f"Mod {mode} boyutu {self.d} değil")
        if any(abs(k) >= self.n_modes // 2 for k in mode):
            raise ConfigurationError(f"Mod {mode} ızgara dışında (|k_i| < {self.n_modes // 2})")
        return int(np.ravel_multi_index(tuple(np.mod(mode, self.n_modes)), self.shape))

    def vector_from_modes(self, modes: Sequence[Tuple[Sequence[int], complex]]) -> np.ndarray:
        """(mod, değer) listesinden gerçel alan katsayıları; −k eşleniği otomatik eklenir"""
        coeffs = np.zeros(self.dim, dtype=complex)
        for mode, value in modes:
            index = self.index_of(mode)
            partner = self.index_of([-k for k in mode])
            if partner == index:
                coeffs[index] += np.real(value)
            else:
                coeffs[index] += value
                coeffs[partner] += np.conj(value)
        return coeffs

    def symmetrize(self, coeffs: np.ndarray) -> np.ndarray:
        """c ↦ (c(k) + conj c(−k))/2, Nyquist sıfırlanır"""
        array = coeffs.reshape(self.shape)
        axes = tuple(range(self.d))
        mirrored = np.roll(np.flip(array, axis=axes), 1, axis=axes)
        result = (0.5 * (array + np.conj(mirrored))).ravel()
        result[~self.mask] = 0.0
        return result

    def to_physical(self, coeffs: np.ndarray) -> np.ndarray:
        """Dolgulu ızgarada fiziksel değerler (gerçel kısım)"""
        size = self.physical_size
        padded = np.zeros((size,) * self.d, dtype=complex)
        padded[self._pad_index] = coeffs.reshape(self.shape)
        values = sfft.ifftn(padded, workers=self.workers) * (size ** self.d / self._norm)
        return np.real(values)

    def from_physical(self, values: np.ndarray) -> np.ndarray:
        """Dolgulu ızgaradan kesilmiş katsayılar"""
        size = self.physical_size
        spectrum = sfft.fftn(values, workers=self.workers) * (self._norm / size ** self.d)
        coeffs = spectrum[self._pad_index].ravel()
        coeffs[~self.mask] = 0.0
        return coeffs

    def describe(self) -> dict:
        return {"d": self.d, "n_modes": self.n_modes, "padding": self.padding, "dim": self.dim}


@dataclass(frozen=True, eq=False)
class SpectralField:
    """Gerçel alan: ortonormal katsayılar (düzleştirilmiş)"""
    grid: ModeGrid
    coeffs: np.ndarray

    def __post_init__(self):
        coeffs = np.asarray(self.coeffs, dtype=complex).ravel()
        if coeffs.size != self.grid.dim:
            raise GridMismatchError(self.grid.dim, coeffs.size)
        if not np.all(np.isfinite(coeffs)):
            raise PreconditionError("SpectralField sonlu olmayan katsayı içeriyor")
        coeffs = coeffs.copy()
        coeffs[~self.grid.mask] = 0.0
        object.__setattr__(self, "coeffs", coeffs)

    @classmethod
    def zeros(cls, grid: ModeGrid) -> "SpectralField":
        return cls(grid, np.zeros(grid.dim, dtype=complex))

    @classmethod
    def from_physical(cls, grid: ModeGrid, values: np.ndarray) -> "SpectralField":
        return cls(grid, grid.from_physical(np.real(values)))

    @classmethod
    def from_vector(cls, grid: ModeGrid, vector: Union[HilbertVector, np.ndarray]) -> "SpectralField":
        coeffs = vector.coeffs if isinstance(vector, HilbertVector) else vector
        return cls(grid, coeffs)

    def physical(self) -> np.ndarray:
        return self.grid.to_physical(self.coeffs)

    def as_vector(self) -> HilbertVector:
        return HilbertVector(self.coeffs)

    def real_symmetric(self, tolerance: float = 1e-12) -> bool:
        scale = max(1.0, float(np.max(np.abs(self.coeffs))))
        return bool(np.max(np.abs(self.grid.symmetrize(self.coeffs) - self.coeffs)) <= tolerance * scale)

    def _other(self, other: "SpectralField") -> np.ndarray:
        self.grid.check(other.grid)
        return other.coeffs

    def __add__(self, other: "SpectralField") -> "SpectralField":
        return SpectralField(self.grid, self.coeffs + self._other(other))

    def __sub__(self, other: "SpectralField") -> "SpectralField":
        return SpectralField(self.grid, self.coeffs - self._other(other))

    def __mul__(self, scalar: float) -> "SpectralField":
        return SpectralField(self.grid, self.coeffs * scalar)

    __rmul__ = __mul__

    def __neg__(self) -> "SpectralField":
        return SpectralField(self.grid, -self.coeffs)


@dataclass(frozen=True, eq=False)
class StatePair:
    """ξ = (u, ∂_t u)"""
    u: SpectralField
    v: SpectralField

    def __post_init__(self):
        self.u.grid.check(self.v.grid)

    @property
    def grid(self) -> ModeGrid:
        return self.u.grid

    @classmethod
    def zeros(cls, grid: ModeGrid) -> "StatePair":
        return cls(SpectralField.zeros(grid), SpectralField.zeros(grid))

    @classmethod
    def from_coeffs(cls, grid: ModeGrid, u: np.ndarray, v: np.ndarray) -> "StatePair":
        return cls(SpectralField(grid, u), SpectralField(grid, v))

    def energy_norm(self, alpha: float = 0.0) -> float:
        """‖ξ‖_{E^α}² = ‖u‖²_{H^{1+α}} + ‖v‖²_{H^α}"""
        lam = self.grid.eigenvalues
        total = np.sum(lam ** (1.0 + alpha) * np.abs(self.u.coeffs) ** 2)
        total += np.sum(lam ** alpha * np.abs(self.v.coeffs) ** 2)
        return float(np.sqrt(total))

    def energy_inner(self, other: "StatePair", alpha: float = 0.0) -> float:
        lam = self.grid.eigenvalues
        value = np.vdot(other.u.coeffs, lam ** (1.0 + alpha) * self.u.coeffs)
        value += np.vdot(other.v.coeffs, lam ** alpha * self.v.coeffs)
        return float(np.real(value))

    def kick(self, h: np.ndarray) -> "StatePair":
        """Hız sıçraması v ← v + h"""
        return StatePair(self.u, SpectralField(self.grid, self.v.coeffs + h))

    def __add__(self, other: "StatePair") -> "StatePair":
        return StatePair(self.u + other.u, self.v + other.v)

    def __sub__(self, other: "StatePair") -> "StatePair":
        return StatePair(self.u - other.u, self.v - other.v)

    def __mul__(self, scalar: float) -> "StatePair":
        return StatePair(self.u * scalar, self.v * scalar)

    __rmul__ = __mul__


# Normlar

def norm_hs(u: SpectralField, alpha: float) -> float:
    """‖(1+|k|²)^{α/2} c‖_{ℓ²}"""
    return float(np.linalg.norm(u.grid.eigenvalues ** (alpha / 2.0) * u.coeffs))


def _lp(values: np.ndarray, p: float, cell: float) -> float:
    values = np.abs(values)
    if np.isinf(p):
        return float(values.max()) if values.size else 0.0
    return float((np.sum(values ** p) * cell) ** (1.0 / p))


def norm_lp(u: SpectralField, p: float) -> float:
    """Dolgulu ızgarada L^p karesi (hücre ağırlığı (2π/M)^d); p = inf için maksimum"""
    return _lp(u.physical(), p, u.grid.cell_volume)


def norm_hap(u: SpectralField, alpha: float, p: float) -> float:
    """Bessel potansiyel normu ‖(1+|k|²)^{α/2} û‖ ters dönüşümün L^p normu"""
    grid = u.grid
    return _lp(grid.to_physical(grid.eigenvalues ** (alpha / 2.0) * u.coeffs), p, grid.cell_volume)


def interpolation_ratio(u: SpectralField, alpha1: float, alpha2: float, s: float) -> float:
    """‖u‖_{H^α} / (‖u‖^s_{H^{α₁}}‖u‖^{1−s}_{H^{α₂}}), α = sα₁ + (1−s)α₂; Hölder ile ≤ 1"""
    if not 0.0 <= s <= 1.0:
        raise PreconditionError(f"s [0, 1] aralığında olmalı: {s}")
    bound = norm_hs(u, alpha1) ** s * norm_hs(u, alpha2) ** (1.0 - s)
    if bound == 0.0:
        return 0.0
    return norm_hs(u, s * alpha1 + (1.0 - s) * alpha2) / bound


def interpolation_check(fields: Sequence[SpectralField], alpha1: float, alpha2: float, s: float,
                        slack: float = 1.0001) -> Tuple[float, bool]:
    """En büyük interpolasyon oranı ve slack sınırını geçip geçmediği"""
    worst = max((interpolation_ratio(u, alpha1, alpha2, s) for u in fields), default=0.0)
    return worst, worst <= slack


def embedding_constant(fields: Sequence[SpectralField]) -> float:
    """max ‖u‖_{L⁶} / ‖u‖_{H¹}: H¹ ⊂ L⁶ gömme sabitinin alt tahmini"""
    ratios = [norm_lp(u, 6.0) / norm_hs(u, 1.0) for u in fields if norm_hs(u, 1.0) > 0.0]
    return float(max(ratios, default=0.0))


# Doğrusal olmayan terim

def apply_pointwise(func: Callable[..., np.ndarray], *fields: SpectralField) -> SpectralField:
    """Dolgulu ızgarada noktasal func(u₁, u₂, …), ardından kesme"""
    grid = fields[0].grid
    for field in fields[1:]:
        grid.check(field.grid)
    values = func(*[field.physical() for field in fields])
    return SpectralField.from_physical(grid, values)


def apply_f(u: SpectralField, nonlinearity) -> SpectralField:
    """f(u) sıfır dolgulu ızgarada; p ≥ 3 için u⁵ tam"""
    return apply_pointwise(nonlinearity.f, u)


def potential_energy(u: SpectralField, nonlinearity) -> float:
    """(F(u), 1) dolgulu ızgara karesi ile"""
    return float(np.sum(nonlinearity.F(u.physical())) * u.grid.cell_volume)


def nonlinear_energy(xi: StatePair, nonlinearity) -> float:
    """½‖ξ‖²_E + (F(u), 1)"""
    return 0.5 * xi.energy_norm() ** 2 + potential_energy(xi.u, nonlinearity)


# İzdüşümler

def project(xi: StatePair, n_cut: int) -> Tuple[StatePair, StatePair]:
    """(P_{N'} ξ, Q_{N'} ξ): max|k_i| ≤ N'/2 modları tutulur"""
    grid = xi.grid
    if n_cut > grid.n_modes or n_cut < 0:
        raise PreconditionError(f"Kesme {n_cut} ızgara N={grid.n_modes} ile uyumsuz")
    keep = np.all(np.abs(grid.wavevectors) <= n_cut / 2.0, axis=1)

    def split(field: SpectralField) -> Tuple[SpectralField, SpectralField]:
        head = np.where(keep, field.coeffs, 0.0)
        return SpectralField(grid, head), SpectralField(grid, field.coeffs - head)

    (pu, qu), (pv, qv) = split(xi.u), split(xi.v)
    return StatePair(pu, pv), StatePair(qu, qv)


def truncate(field: SpectralField, target: ModeGrid) -> SpectralField:
    """Daha ince ızgaradaki alanı hedef ızgaraya kes (iç içe rastgele alanlar için)"""
    if target.d != field.grid.d or target.n_modes > field.grid.n_modes:
        raise GridMismatchError(target.dim, field.grid.dim)
    coeffs = np.zeros(target.dim, dtype=complex)
    for index, mode in enumerate(target.wavevectors):
        if target.mask[index]:
            coeffs[index] = field.coeffs[field.grid.index_of(mode)]
    return SpectralField(target, coeffs)


# Strichartz pencereleri

def window_norm(samples: Sequence[float], dt: float, r: float) -> float:
    """(∫ ‖·‖^r ds)^{1/r} bileşik Simpson ile"""
    samples = np.asarray(samples, dtype=float)
    if samples.size < 3:
        raise PreconditionError(f"Pencere normu için en az 3 örnek gerekli, gelen {samples.size}")
    if np.isinf(r):
        return float(samples.max())
    return float(max(simpson(samples ** r, dx=dt), 0.0) ** (1.0 / r))


def strichartz_window(samples: Sequence[float], dt: float) -> float:
    """(∫_t^{t+1} ‖u‖⁴_{L¹²} ds)^{1/4}"""
    return window_norm(samples, dt, 4.0)


def strichartz_windows(times: np.ndarray, norms: np.ndarray, dt: float, width: float = 1.0,
                       r: float = 4.0) -> Tuple[np.ndarray, np.ndarray]:
    """Ardışık ayrık [t, t+width] pencereleri: düzgün alt ızgaraya kübik spline + Simpson.

    Pencere başlangıçları t_0 + k·width; pencere dışına taşanlar atlanır.
    Tekrarlanan zamanlarda ilk örnek kullanılır.
    """
    times, first = np.unique(np.asarray(times, dtype=float), return_index=True)
    curve = CubicSpline(times, np.asarray(norms, dtype=float)[first])
    count = max(2, int(round(width / dt)))
    count += count % 2
    starts = np.arange(times[0], times[-1] - width + 1e-9 * width, width)
    values = np.array([window_norm(np.maximum(curve(np.linspace(s, s + width, count + 1)), 0.0),
                                   width / count, r) for s in starts])
    return starts, values


def strichartz_family(q: float) -> Tuple[float, float]:
    """L^{2/q}(L^{6/(1−q)}) üsleri, q ∈ (0, 1); q = 1/2 → (4, 12)"""
    if not 0.0 < q < 1.0:
        raise PreconditionError(f"q (0, 1) aralığında olmalı: {q}")
    return 2.0 / q, 6.0 / (1.0 - q)


# Rastgele alanlar ve gömme

def random_field(grid: ModeGrid, rng: np.random.Generator, decay: float = 1.0,
                 amplitude: float = 1.0) -> SpectralField:
    """(1+|k|²)^{−decay} spektrumlu gerçel rastgele alan"""
    raw = rng.standard_normal(grid.dim) + 1j * rng.standard_normal(grid.dim)
    coeffs = grid.symmetrize(amplitude * raw * grid.eigenvalues ** (-decay))
    return SpectralField(grid, coeffs)


def state_vector(xi: StatePair, kind: str = "energy", alpha: float = 0.0) -> np.ndarray:
    """ℓ² normu E^α (energy) veya H × H^{-1} (weak) normu olan gerçel vektör"""
    lam = xi.grid.eigenvalues
    if kind == "energy":
        parts = (lam ** ((1.0 + alpha) / 2.0) * xi.u.coeffs, lam ** (alpha / 2.0) * xi.v.coeffs)
    elif kind == "weak":
        parts = (xi.u.coeffs, lam ** -0.5 * xi.v.coeffs)
    else:
        raise PreconditionError(f"Bilinmeyen norm türü: {kind}")
    return np.concatenate([np.real(parts[0]), np.imag(parts[0]), np.real(parts[1]), np.imag(parts[1])])


# Alan dökümleri

def dump_field(path: Union[str, Path], field: SpectralField) -> Path:
    grid = field.grid
    return write_field_dump(path, grid.d, grid.n_modes, grid.padding, grid.wavevectors, field.coeffs)


def load_field(path: Union[str, Path], grid: Optional[ModeGrid] = None) -> SpectralField:
    """Alan dökümünü oku; ızgara verilmişse başlık eşleşmeli"""
    header, wavevectors, coeffs = read_field_dump(path)
    file_grid = ModeGrid(header["d"], header["N"], header["padding"])
    if grid is not None:
        grid.check(file_grid)
    else:
        grid = file_grid
    ordered = np.zeros(grid.dim, dtype=complex)
    indices = np.ravel_multi_index(tuple(np.mod(wavevectors, grid.n_modes).T), grid.shape)
    ordered[indices] = coeffs
    return SpectralField(grid, ordered)
