"""
Artefakt yazıcıları - CSV tabloları (pandas), JSON özetleri ve alan dökümleri
"""
import json
import math
from pathlib import Path
from typing import Any, Dict, Mapping, Sequence, Tuple, Union

import numpy as np
import pandas as pd

SCHEMA_VERSION = "1.0"

PathLike = Union[str, Path]


def _to_jsonable(value: Any) -> Any:
    """numpy tiplerini ve sonlu olmayan sayıları JSON uyumlu hale getir"""
    if isinstance(value, Mapping):
        return {str(k): _to_jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_to_jsonable(v) for v in value]
    if isinstance(value, np.ndarray):
        return [_to_jsonable(v) for v in value.tolist()]
    if isinstance(value, (np.bool_, bool)):
        return bool(value)
    if isinstance(value, np.integer):
        return int(value)
    if isinstance(value, (np.floating, float)):
        value = float(value)
        if not math.isfinite(value):
            return None
        return value
    if hasattr(value, "value") and isinstance(getattr(value, "value"), str):
        return value.value
    return value


def summary_text(summary: Dict[str, Any]) -> str:
    """Deterministik JSON metni: sıralı anahtarlar, zaman damgası yok"""
    payload = dict(_to_jsonable(summary))
    payload["schema_version"] = SCHEMA_VERSION
    return json.dumps(payload, sort_keys=True, indent=2, ensure_ascii=False) + "\n"


def write_summary(path: PathLike, summary: Dict[str, Any]) -> Path:
    """JSON özetini yaz"""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(summary_text(summary), encoding="utf-8")
    return path


def write_csv(path: PathLike, table: Union[pd.DataFrame, Sequence[Mapping[str, Any]]]) -> Path:
    """Satır listesi veya DataFrame'i CSV olarak yaz"""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    frame = table if isinstance(table, pd.DataFrame) else pd.DataFrame(list(table))
    frame.to_csv(path, index=False, float_format="%.17g")
    return path


def write_field_dump(path: PathLike, d: int, n_modes: int, padding: int,
                     wavevectors: np.ndarray, coeffs: np.ndarray) -> Path:
    """Alan dökümü: '# d=.. N=.. padding=..' başlığı + katsayı tablosu"""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    columns = {f"k{i}": wavevectors[:, i].astype(int) for i in range(d)}
    columns["re"] = np.real(coeffs)
    columns["im"] = np.imag(coeffs)
    frame = pd.DataFrame(columns)
    with open(path, "w", encoding="utf-8", newline="") as f:
        f.write(f"# d={d} N={n_modes} padding={padding}\n")
        frame.to_csv(f, index=False, float_format="%.17g")
    return path


def read_field_dump(path: PathLike) -> Tuple[Dict[str, int], np.ndarray, np.ndarray]:
    """Alan dökümünü oku: (başlık, dalga vektörleri, katsayılar)"""
    with open(path, "r", encoding="utf-8") as f:
        header_line = f.readline().strip()
        frame = pd.read_csv(f)
    header: Dict[str, int] = {}
    for token in header_line.lstrip("#").split():
        key, value = token.split("=")
        header[key] = int(value)
    d = header["d"]
    wavevectors = frame[[f"k{i}" for i in range(d)]].to_numpy(dtype=int)
    coeffs = frame["re"].to_numpy(dtype=float) + 1j * frame["im"].to_numpy(dtype=float)
    return header, wavevectors, coeffs
