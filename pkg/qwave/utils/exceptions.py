"""
QWave için özel exception sınıfları
Her sınıf CLI tarafından kullanılan bir çıkış koduna (exit_code) sahiptir
"""
from typing import Any, Optional


class QWaveException(Exception):
    """Ana qwave exception sınıfı"""
    exit_code = 1


class ConfigurationError(QWaveException):
    """Konfigürasyon hatası"""
    exit_code = 3


class ScenarioParseError(QWaveException):
    """Senaryo dosyası okunamadı veya şemaya uymuyor"""
    exit_code = 2


class PreconditionError(QWaveException):
    """Bir işlemin ön koşulu sağlanmadı"""
    exit_code = 3


class MeasureDomainError(PreconditionError):
    """Zaman noktası veya pencere ölçünün tanım aralığı dışında"""
    def __init__(self, message: str, value: Optional[float] = None):
        super().__init__(message)
        self.value = value


class UndefinedPolarError(PreconditionError):
    """Sıfır ölçü için polar ayrışım tanımsız"""
    pass


class GridMismatchError(PreconditionError):
    """Farklı mod kümeleri üzerindeki vektörler birlikte kullanıldı"""
    def __init__(self, expected: int, actual: int):
        super().__init__(f"Mod sayısı uyuşmuyor: beklenen {expected}, gelen {actual}")
        self.expected = expected
        self.actual = actual


class ContractViolationError(PreconditionError):
    """Adım segmentinin içinde atom bulundu"""
    def __init__(self, atom_time: float, start: float, end: float):
        super().__init__(f"Atom t={atom_time:.6g} adım içinde ({start:.6g}, {end:.6g})")
        self.atom_time = atom_time
        self.start = start
        self.end = end


class SolverBlowUpError(QWaveException):
    """Enerji tavanı aşıldı veya sonlu olmayan değer üretildi"""
    exit_code = 4

    def __init__(self, time: float, energy: float, ceiling: float, last_state: Any = None,
                 last_time: Optional[float] = None):
        super().__init__(f"Çözücü patladı: t={time:.6g}, enerji {energy:.6g} > tavan {ceiling:.6g}")
        self.time = time
        self.energy = energy
        self.ceiling = ceiling
        self.last_state = last_state
        self.last_time = last_time


class ExperimentError(QWaveException):
    """Deney çalıştırma hatası"""
    pass
