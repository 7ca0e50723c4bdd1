"""
Loglama sistemi - Loguru kullanarak seviye bazlı
dönen dosyalar ve kontrol (check) logları
"""
import sys
from pathlib import Path
from typing import Optional

from loguru import logger as loguru_logger

from .config import get_settings


class LogHandler:
    """Log işleyicisi - konsol ve dosya sink'leri"""

    def __init__(self):
        self.is_initialized = False
        self.log_dir: Optional[Path] = None

    def initialize(self, log_dir: Optional[str] = None) -> None:
        """Log sistemini başlat"""
        if self.is_initialized and log_dir is None:
            return

        settings = get_settings()

        # Önceki handler'ları temizle
        loguru_logger.remove()

        # Konsol çıktısı (stdout senaryo kataloğuna ayrılmış)
        loguru_logger.add(
            sys.stderr,
            level=settings.log_level,
            format="<green>{time:HH:mm:ss}</green> | "
                   "<level>{level: <8}</level> | "
                   "<cyan>{extra[name]}</cyan> - "
                   "<level>{message}</level>",
            colorize=True,
        )

        directory = log_dir or settings.log_dir
        if directory:
            self.log_dir = Path(directory)
            self.log_dir.mkdir(parents=True, exist_ok=True)

            # Genel loglar
            loguru_logger.add(
                str(self.log_dir / "qwave.log"),
                level=settings.log_level,
                rotation=settings.log_rotation,
                retention=settings.log_retention,
                format="{time:YYYY-MM-DD HH:mm:ss} | {level: <8} | {extra[name]}:{function}:{line} - {message}",
                encoding="utf-8",
            )

            # Kontrol sonuçları
            loguru_logger.add(
                str(self.log_dir / "checks.log"),
                level="INFO",
                filter=lambda record: "check" in record["extra"],
                format="{time:YYYY-MM-DD HH:mm:ss} | {message}",
                encoding="utf-8",
            )

            # Hata logları
            loguru_logger.add(
                str(self.log_dir / "errors.log"),
                level="ERROR",
                rotation="1 week",
                retention=settings.log_retention,
                format="{time:YYYY-MM-DD HH:mm:ss} | {level} | {extra[name]}:{function}:{line} - {message} | {exception}",
                encoding="utf-8",
            )

        self.is_initialized = True
        loguru_logger.bind(name="qwave").debug("Log sistemi başlatıldı")

    def log_check(self, message: str, **kwargs) -> None:
        """Kontrol logu - checks.log dosyasına da düşer"""
        loguru_logger.bind(name="check", check=True).info(message, **kwargs)

    def reconfigure(self) -> None:
        """Ayarlar yeniden yüklendikten sonra sink'leri kur"""
        self.is_initialized = False
        self.initialize()


# Global log handler
log_handler = LogHandler()


def get_logger(name: str = "qwave"):
    """Logger instance al"""
    if not log_handler.is_initialized:
        log_handler.initialize()
    return loguru_logger.bind(name=name)


def log_check(message: str, **kwargs):
    """Kontrol logu kısayolu"""
    log_handler.log_check(message, **kwargs)
