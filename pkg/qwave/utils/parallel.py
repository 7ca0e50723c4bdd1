"""
Topluluk (ensemble) çalıştırma yardımcıları
Sonuçlar her zaman girdi sırasında döner; tohumlar sayaç yapısıyla türetilir
"""
from concurrent.futures import ThreadPoolExecutor
from typing import Callable, Iterable, List, Optional, TypeVar

import numpy as np

from .config import get_settings

T = TypeVar("T")
R = TypeVar("R")


def ensemble_map(func: Callable[[T], R], items: Iterable[T], threads: Optional[int] = None) -> List[R]:
    """func'u her elemana uygula; iş parçacığı sayısından bağımsız, sıralı sonuç"""
    items = list(items)
    workers = threads if threads is not None else get_settings().threads
    if workers <= 1 or len(items) <= 1:
        return [func(item) for item in items]
    with ThreadPoolExecutor(max_workers=min(workers, len(items))) as pool:
        return list(pool.map(func, items))


def member_rng(seed: int, index: int) -> np.random.Generator:
    """Topluluk üyesi için bağımsız üreteç: SeedSequence(seed, spawn_key=(index,))"""
    return np.random.default_rng(np.random.SeedSequence(seed, spawn_key=(index,)))
