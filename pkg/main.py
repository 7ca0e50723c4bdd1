"""
QWave Ana Giriş Noktası
Ölçü sürümlü sönümlü kuintik dalga denklemi için senaryo tabanlı komut satırı arayüzü
"""
import sys
import argparse
from pathlib import Path

# Proje kökünü sys.path'e ekle
project_root = Path(__file__).parent
sys.path.insert(0, str(project_root))

from qwave.services.runner import ExperimentRunner
from qwave.services.scenarios import catalog, resolve_scenario
from qwave.utils.config import AppSettings, get_settings, reload_settings
from qwave.utils.exceptions import QWaveException
from qwave.utils.io import summary_text
from qwave.utils.logger import get_logger, log_handler

logger = get_logger("main")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(description="QWave - Ölçü sürümlü sönümlü kuintik dalga simülatörü")
    parser.add_argument(
        "--scenario",
        type=str,
        help="Senaryo dosyası yolu veya paketteki senaryo adı"
    )
    parser.add_argument(
        "--out",
        type=str,
        help="Çıktı dizini (varsayılan: senaryodaki output_dir)"
    )
    parser.add_argument(
        "--seed",
        type=int,
        help="64-bit tohum (senaryodaki seed değerini ezer)"
    )
    parser.add_argument(
        "--threads",
        type=int,
        help="Topluluk işçi sayısı"
    )
    parser.add_argument(
        "--check",
        action="store_true",
        help="Kontrol modu: herhangi bir kontrol başarısızsa çıkış kodu 1"
    )
    parser.add_argument(
        "--list",
        action="store_true",
        help="Paketteki senaryoları listele"
    )
    parser.add_argument(
        "--config",
        type=str,
        help="Uygulama ayarları JSON dosyası"
    )
    return parser


def main(argv=None) -> int:
    """Ana fonksiyon"""
    args = build_parser().parse_args(argv)

    try:
        # Uygulama ayarlarını yükle
        if args.config:
            reload_settings(AppSettings.load_from_file(args.config))
            log_handler.reconfigure()
        settings = get_settings()

        if args.list:
            table = catalog()
            print(table.to_string(index=False))
            return 0

        if not args.scenario:
            logger.error("--scenario veya --list gerekli")
            return 2

        if args.seed is not None and not 0 <= args.seed < 2**64:
            logger.error(f"Tohum 64-bit aralığında olmalı: {args.seed}")
            return 2

        scenario = resolve_scenario(args.scenario)
        threads = args.threads if args.threads is not None else settings.threads
        runner = ExperimentRunner(scenario, args.out, args.seed, threads)
        summary = runner.run()
        print(summary_text(summary))

        if args.check:
            return runner.exit_code
        return 0

    except KeyboardInterrupt:
        logger.info("Kullanıcı tarafından durduruldu")
        return 0
    except QWaveException as e:
        logger.error(f"{type(e).__name__}: {e}")
        return e.exit_code
    except Exception as e:
        logger.error(f"Kritik hata: {e}")
        return 1


if __name__ == "__main__":
    sys.exit(main())
