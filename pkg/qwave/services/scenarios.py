"""
Paketle gelen senaryo kataloğu (qwave/scenarios/*.json)
"""
from pathlib import Path
from typing import Dict, List, Union

import pandas as pd

from ..utils.config import Scenario
from ..utils.exceptions import ScenarioParseError
from ..utils.logger import get_logger

logger = get_logger("scenarios")

SCENARIO_DIR = Path(__file__).resolve().parent.parent / "scenarios"


def list_scenarios() -> List[Scenario]:
    """Paketteki tüm senaryolar, ada göre sıralı"""
    scenarios = [Scenario.load_from_file(path) for path in sorted(SCENARIO_DIR.glob("*.json"))]
    return sorted(scenarios, key=lambda s: s.name)


def catalog() -> pd.DataFrame:
    """Katalog tablosu: ad, deney, kabul ölçütleri, açıklama"""
    rows = [{
        "name": s.name,
        "experiment": s.experiment.value,
        "acceptance": ",".join(str(a) for a in s.acceptance),
        "description": s.description,
    } for s in list_scenarios()]
    return pd.DataFrame(rows, columns=["name", "experiment", "acceptance", "description"])


def acceptance_coverage() -> Dict[int, List[str]]:
    """Kabul ölçütü → onu kanıtlayan senaryo adları"""
    coverage: Dict[int, List[str]] = {}
    for scenario in list_scenarios():
        for criterion in scenario.acceptance:
            coverage.setdefault(criterion, []).append(scenario.name)
    return dict(sorted(coverage.items()))


def resolve_scenario(reference: Union[str, Path]) -> Scenario:
    """Dosya yolu ya da paketteki senaryo adı"""
    path = Path(reference)
    if path.exists():
        return Scenario.load_from_file(path)
    bundled = SCENARIO_DIR / f"{reference}.json"
    if bundled.exists():
        logger.debug(f"Paket senaryosu kullanılıyor: {bundled.name}")
        return Scenario.load_from_file(bundled)
    raise ScenarioParseError(f"Senaryo bulunamadı: {reference}")
