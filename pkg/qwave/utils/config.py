"""
Konfigürasyon yönetimi - Pydantic BaseSettings ve BaseModel kullanarak
uygulama ayarlarını ve senaryo dosyalarını yönetir
"""
import json
from enum import Enum
from pathlib import Path
from typing import Any, Dict, List, Optional, Union

from pydantic import BaseModel, Field, ValidationError, field_validator, model_validator
from pydantic_settings import BaseSettings, SettingsConfigDict

from .exceptions import ScenarioParseError


class ExperimentTag(str, Enum):
    """Senaryo deney türleri"""
    SIMULATE = "simulate"
    LINEAR_CHECK = "linear-check"
    MEASURE_APPROX = "measure-approx"
    ATTRACTOR = "attractor"
    KERNEL_VS_ATTRACTOR = "kernel-vs-attractor"
    SPLITTING = "splitting"
    CASCADE = "cascade"
    INEQUALITY = "inequality"
    ODE_DEMO = "ode-demo"


class NonlinearityFamily(str, Enum):
    """Kuintik terime eklenen alt-kritik h(u) ailesi"""
    NONE = "none"
    CUBIC = "cubic"
    SINE = "sine"


class ForcingFamily(str, Enum):
    """Global ölçü aileleri"""
    ZERO = "zero"
    PERIODIC_TEMPLATE = "periodic-template"
    SPIKE_TRAIN = "spike-train"
    ASYMPTOTIC_PROFILE = "asymptotic-profile"
    EXPLICIT_WINDOW_LIST = "explicit-window-list"
    COMPOSITE = "composite"


class SpikeLaw(str, Enum):
    """Spike dizisi yerleşim kuralı"""
    CANCELLING_SQUARE = "cancelling-square"
    CANCELLING_LINEAR = "cancelling-linear"
    MODE_CASCADE = "mode-cascade"


class RegularityKind(str, Enum):
    """Düzenli yaklaşım türü"""
    SPACE = "space"
    TIME = "time"


class InitialKind(str, Enum):
    """Başlangıç koşulu türü"""
    ZERO = "zero"
    MODE = "mode"
    RANDOM = "random"


class NonlinearityConfig(BaseModel):
    """f(u) = u^5 + h(u) konfigürasyonu"""
    quintic: bool = True
    family: NonlinearityFamily = NonlinearityFamily.NONE
    lam: float = Field(default=1.0, ge=-100.0, le=100.0)
    shift: float = Field(default=0.0, ge=0.0, le=1000.0)


class ModelConfig(BaseModel):
    """Model bloğu - ızgara, sönüm ve doğrusal olmayan terim"""
    d: int = 1
    n_modes: int = Field(default=32, ge=2, le=256)
    padding: int = Field(default=3, ge=3, le=8)
    gamma: float = Field(default=1.0, ge=0.0, le=100.0)
    nonlinearity: NonlinearityConfig = Field(default_factory=NonlinearityConfig)
    alpha: float = Field(default=0.25, gt=0.0, lt=0.4)

    @field_validator("d")
    @classmethod
    def validate_dimension(cls, v: int) -> int:
        """Sadece 1 ve 3 boyutlu torus desteklenir"""
        if v not in (1, 3):
            raise ValueError(f"Geçersiz boyut: {v} (1 veya 3 olmalı)")
        return v

    @field_validator("n_modes")
    @classmethod
    def validate_even(cls, v: int) -> int:
        """Mod sayısı çift olmalı"""
        if v % 2:
            raise ValueError(f"Mod sayısı çift olmalı: {v}")
        return v


class ModeValue(BaseModel):
    """Tek bir Fourier modunun katsayısı: mode = dalga vektörü, value = [re] veya [re, im]"""
    mode: List[int] = Field(default_factory=lambda: [0])
    value: List[float] = Field(default_factory=lambda: [1.0])

    @field_validator("value")
    @classmethod
    def validate_value(cls, v: List[float]) -> List[float]:
        if len(v) not in (1, 2):
            raise ValueError("value [re] veya [re, im] olmalı")
        return v


class AtomConfig(BaseModel):
    """Atom: zaman + mod katsayıları"""
    time_seconds: float
    modes: List[ModeValue] = Field(default_factory=list)


class DensityNodeConfig(BaseModel):
    """Parçalı doğrusal yoğunluğun düğüm noktası"""
    time_seconds: float
    modes: List[ModeValue] = Field(default_factory=list)


class HarmonicConfig(BaseModel):
    """Periyodik şablon kısayolu: cos(2πt/T + faz) zaman profili ile modlar"""
    modes: List[ModeValue] = Field(default_factory=lambda: [ModeValue()])
    phase: float = 0.0
    nodes_per_period: int = Field(default=64, ge=4, le=4096)


class WindowConfig(BaseModel):
    """Açık pencere listesi elemanı"""
    start_seconds: float
    end_seconds: float
    atoms: List[AtomConfig] = Field(default_factory=list)
    density: List[DensityNodeConfig] = Field(default_factory=list)


class ForcingConfig(BaseModel):
    """Dış kuvvet bloğu - GlobalMeasure tanımı"""
    family: ForcingFamily = ForcingFamily.ZERO
    scalar: bool = False
    scale_factor: float = 1.0

    # Periyodik şablon
    period_seconds: float = Field(default=6.283185307179586, gt=0.0)
    atoms: List[AtomConfig] = Field(default_factory=list)
    density: List[DensityNodeConfig] = Field(default_factory=list)
    harmonic: Optional[HarmonicConfig] = None

    # Spike dizisi
    law: SpikeLaw = SpikeLaw.CANCELLING_SQUARE
    spike_scale: float = Field(default=1.0, gt=0.0)
    n_min: int = Field(default=2, ge=1)
    n_max: int = Field(default=200, ge=1)
    amplitude: float = 0.5
    atomic: bool = True
    absolute: bool = False
    direction: List[ModeValue] = Field(default_factory=list)

    # Asimptotik profil
    offset: float = 0.0
    rate_per_second: float = Field(default=1.0, gt=0.0)
    node_spacing_seconds: float = Field(default=0.01, gt=0.0)

    # Açık liste ve bileşik
    windows: List[WindowConfig] = Field(default_factory=list)
    components: List["ForcingConfig"] = Field(default_factory=list)


class RunConfig(BaseModel):
    """Çalıştırma bloğu - zaman penceresi, adım ve tohum"""
    tau_seconds: float = 0.0
    t_final_seconds: float = 10.0
    dt_seconds: float = Field(default=0.01, gt=0.0)
    seed: int = Field(default=0, ge=0, lt=2**64)
    ensemble: int = Field(default=1, ge=1, le=4096)
    initial_kind: InitialKind = InitialKind.RANDOM
    initial_energy_norms: List[float] = Field(default_factory=lambda: [1.0])
    initial_mode: List[int] = Field(default_factory=lambda: [1])

    @model_validator(mode="after")
    def validate_window(self) -> "RunConfig":
        """T > τ olmalı"""
        if self.t_final_seconds <= self.tau_seconds:
            raise ValueError(
                f"t_final_seconds ({self.t_final_seconds}) tau_seconds'tan ({self.tau_seconds}) büyük olmalı"
            )
        return self


# Deney parametre modelleri

class SimulateParams(BaseModel):
    """simulate deneyi"""
    refinement_levels: int = Field(default=0, ge=0, le=4)
    expect_monotone: bool = False
    ledger_ratio_min: float = 3.5
    ledger_ratio_max: float = 4.5


class LinearCheckParams(BaseModel):
    """linear-check deneyi"""
    block_samples: int = Field(default=1000, ge=1)
    jump_trials: int = Field(default=100, ge=1)
    decay_gammas: List[float] = Field(default_factory=lambda: [0.5, 1.0, 2.0])
    overdamped_gamma: float = 10.0
    decay_horizon_seconds: float = 20.0
    oracle_n_modes: int = 8
    oracle_gamma: float = 0.5
    oracle_tolerance: float = 1e-8
    diagnostic_resolutions: List[int] = Field(default_factory=lambda: [8, 16, 32])


class MeasureApproxParams(BaseModel):
    """measure-approx deneyi"""
    partitions: List[int] = Field(default_factory=lambda: [10, 100, 1000])
    tail_dim: int = Field(default=16, ge=1)
    tail_rank: int = Field(default=6, ge=1)
    slope_max: float = -0.9


class AttractorParams(BaseModel):
    """attractor deneyi"""
    transient_seconds: float = 20.0
    translation_trials: int = Field(default=10, ge=0)
    translation_horizon_seconds: float = 2.0
    pullback_horizons: List[float] = Field(default_factory=lambda: [5.0, 10.0, 20.0])
    hull_shifts: int = Field(default=4, ge=1)
    ball_size: int = Field(default=8, ge=1)
    run_dissipativity: bool = True
    run_pullback: bool = True
    spread_max: float = 0.10
    strichartz_ratio_max: float = 2.0
    run_energy_scan: bool = False
    scan_energy_levels: List[float] = Field(default_factory=lambda: [1.0, 5.0, 10.0])
    scan_forcing_levels: List[float] = Field(default_factory=lambda: [0.0, 1.0])


class KernelParams(BaseModel):
    """kernel-vs-attractor ve ode-demo deneyleri"""
    spike_scale: float = 50.0
    n_spikes: int = Field(default=6, ge=1)
    perturbed: bool = True
    ic_min: float = -3.0
    ic_max: float = 2.0
    ic_count: int = Field(default=11, ge=2)
    transient_seconds: float = 20.0
    pullback_start_seconds: float = -200.0
    tolerance: float = 0.1
    expected_attractor: List[float] = Field(default_factory=lambda: [-2.0, 1.5])
    expected_kernel_union: List[float] = Field(default_factory=lambda: [-2.0, 1.0])


class SplittingParams(BaseModel):
    """splitting deneyi"""
    coupling: Optional[float] = None
    early_window_seconds: float = 10.0
    decay_rate_min: float = 0.05
    growth_ratio_max: float = 1.2


class CascadeParams(BaseModel):
    """cascade deneyi"""
    partitions: List[int] = Field(default_factory=lambda: [4, 8, 16])
    horizon_seconds: float = 1.0
    ratio_max: float = 2.0


class InequalityParams(BaseModel):
    """inequality deneyi"""
    resolutions: List[int] = Field(default_factory=lambda: [16, 32, 64])
    samples: int = Field(default=100, ge=1)
    ratio_max: float = 2.0


PARAMS_MODELS: Dict[ExperimentTag, type] = {
    ExperimentTag.SIMULATE: SimulateParams,
    ExperimentTag.LINEAR_CHECK: LinearCheckParams,
    ExperimentTag.MEASURE_APPROX: MeasureApproxParams,
    ExperimentTag.ATTRACTOR: AttractorParams,
    ExperimentTag.KERNEL_VS_ATTRACTOR: KernelParams,
    ExperimentTag.ODE_DEMO: KernelParams,
    ExperimentTag.SPLITTING: SplittingParams,
    ExperimentTag.CASCADE: CascadeParams,
    ExperimentTag.INEQUALITY: InequalityParams,
}


class Scenario(BaseModel):
    """Senaryo dosyası - iç içe anahtar/değer metni (JSON), birimler anahtar adında"""
    name: str
    description: str = ""
    experiment: ExperimentTag
    model: ModelConfig = Field(default_factory=ModelConfig)
    forcing: ForcingConfig = Field(default_factory=ForcingConfig)
    run: RunConfig = Field(default_factory=RunConfig)
    params: Dict[str, Any] = Field(default_factory=dict)
    acceptance: List[int] = Field(default_factory=list)
    output_dir: str = "out"

    def typed_params(self) -> BaseModel:
        """Deney türüne göre doğrulanmış parametre modeli"""
        try:
            return PARAMS_MODELS[self.experiment].model_validate(self.params)
        except ValidationError as e:
            raise ScenarioParseError(f"{self.name}: geçersiz params bloğu: {e}") from e

    def save_to_file(self, file_path: Union[str, Path]) -> None:
        """Senaryoyu JSON dosyasına kaydet"""
        with open(file_path, "w", encoding="utf-8") as f:
            json.dump(self.model_dump(mode="json"), f, ensure_ascii=False, indent=2, sort_keys=True)

    @classmethod
    def load_from_file(cls, file_path: Union[str, Path]) -> "Scenario":
        """JSON dosyasından senaryo yükle"""
        try:
            with open(file_path, "r", encoding="utf-8") as f:
                data = json.load(f)
        except FileNotFoundError as e:
            raise ScenarioParseError(f"Senaryo dosyası bulunamadı: {file_path}") from e
        except json.JSONDecodeError as e:
            raise ScenarioParseError(f"Senaryo dosyası çözümlenemedi: {file_path}: {e}") from e
        try:
            scenario = cls.model_validate(data)
        except ValidationError as e:
            raise ScenarioParseError(f"Senaryo şemaya uymuyor: {file_path}: {e}") from e
        scenario.typed_params()
        return scenario


class AppSettings(BaseSettings):
    """Uygulama ayarları - QWAVE_ önekli çevre değişkenlerinden ve JSON dosyasından yüklenir"""

    # Loglama
    log_level: str = Field(default="INFO")
    log_rotation: str = Field(default="10 MB")
    log_retention: str = Field(default="14 days")
    log_dir: Optional[str] = None

    # Paralellik
    threads: int = Field(default=1, ge=1, le=256)
    fft_workers: int = Field(default=1, ge=1, le=256)

    # Sayısal korumalar
    energy_ceiling: float = Field(default=1e6, gt=0.0)
    max_dt_seconds: float = Field(default=0.1, gt=0.0)
    wna_ratio_threshold: float = Field(default=0.01, gt=0.0, lt=1.0)
    quadrature_order: int = Field(default=8, ge=2, le=32)

    model_config = SettingsConfigDict(env_prefix="QWAVE_", env_nested_delimiter="__")

    def save_to_file(self, file_path: Union[str, Path] = "qwave.json") -> None:
        """Ayarları JSON dosyasına kaydet"""
        with open(file_path, "w", encoding="utf-8") as f:
            json.dump(self.model_dump(), f, ensure_ascii=False, indent=2)

    @classmethod
    def load_from_file(cls, file_path: Union[str, Path] = "qwave.json") -> "AppSettings":
        """JSON dosyasından ayarları yükle"""
        try:
            with open(file_path, "r", encoding="utf-8") as f:
                config_dict = json.load(f)
            return cls(**config_dict)
        except FileNotFoundError:
            # Dosya yoksa varsayılan ayarlarla oluştur
            settings = cls()
            settings.save_to_file(file_path)
            return settings


# Global ayarlar instance'ı
settings: Optional[AppSettings] = None


def get_settings() -> AppSettings:
    """Global ayarları al veya oluştur"""
    global settings
    if settings is None:
        settings = AppSettings()
    return settings


def reload_settings(new_settings: Optional[AppSettings] = None) -> AppSettings:
    """Ayarları yeniden yükle veya verilen ayarları global yap"""
    global settings
    settings = new_settings if new_settings is not None else AppSettings()
    return settings
