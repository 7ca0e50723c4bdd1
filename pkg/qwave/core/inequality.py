"""
Kesirli Sobolev eşitsizliklerinin sayısal doğrulaması ve ağırlıklı Gronwall sınırı
"""
from typing import Dict, List, Optional, Sequence

import numpy as np
import pandas as pd
from scipy.integrate import cumulative_trapezoid

from ..utils.exceptions import PreconditionError
from ..utils.logger import get_logger
from ..utils.parallel import member_rng
from .nonlinearity import Nonlinearity
from .spectral import (
    ModeGrid,
    SpectralField,
    apply_pointwise,
    embedding_constant,
    interpolation_check,
    norm_hap,
    norm_hs,
    norm_lp,
    random_field,
    truncate,
)

logger = get_logger("inequality")

INEQUALITIES = ("product", "product_vanishing", "difference")


def _w_factor(w: SpectralField, alpha: float) -> float:
    """‖w‖^{1−α}_{H^{1+α}} ‖w‖^α_{H^{α,12}}"""
    return norm_hs(w, 1.0 + alpha) ** (1.0 - alpha) * norm_hap(w, alpha, 12.0) ** alpha


def inequality_ratios(nonlinearity: Nonlinearity, v: SpectralField, w: SpectralField,
                      alpha: float) -> Dict[str, float]:
    """Üç eşitsizliğin LHS/RHS oranları; RHS = 0 ise NaN (atlanır), LHS = 0 ise 0"""
    v_l12, w_l12 = norm_lp(v, 12.0), norm_lp(w, 12.0)
    v_h1, w_h1 = norm_hs(v, 1.0), norm_hs(w, 1.0)
    w_factor = _w_factor(w, alpha)
    slope_at_zero = float(nonlinearity.df(np.zeros(1))[0])

    lhs = {
        "product": norm_hs(apply_pointwise(lambda a, b: nonlinearity.df(a) * b, v, w), alpha),
        "product_vanishing": norm_hs(
            apply_pointwise(lambda a, b: (nonlinearity.df(a) - slope_at_zero) * b, v, w), alpha),
        "difference": norm_hs(
            apply_pointwise(lambda a, b: nonlinearity.f(a + b) - nonlinearity.f(a), v, w), alpha),
    }
    rhs = {
        "product": (1.0 + v_l12 ** (4.0 - alpha)) * (1.0 + v_h1 ** alpha) * w_factor,
        "product_vanishing": (1.0 + v_l12) ** (4.0 - alpha) * v_h1 ** alpha * w_factor,
        "difference": (1.0 + v_l12 + w_l12) ** (4.0 - alpha) * (1.0 + v_h1 + w_h1) ** alpha * w_factor,
    }
    ratios = {}
    for name in INEQUALITIES:
        if lhs[name] == 0.0:
            ratios[name] = 0.0
        elif rhs[name] == 0.0:
            ratios[name] = np.nan
        else:
            ratios[name] = lhs[name] / rhs[name]
    return ratios


def kato_ponce_check(nonlinearity: Nonlinearity, resolutions: Sequence[int] = (16, 32, 64), samples: int = 100,
                     alpha: float = 0.25, d: int = 1, seed: int = 0, padding: int = 3,
                     ratio_max: float = 2.0) -> Dict[str, object]:
    """Rastgele (v, w) çiftleri için en büyük oranların çözünürlükle değişimi"""
    if not 0.0 < alpha <= 0.4:
        raise PreconditionError(f"α (0, 2/5] aralığında olmalı: {alpha}")
    resolutions = sorted(int(n) for n in resolutions)
    fine = ModeGrid(d, resolutions[-1], padding)
    grids = {n: ModeGrid(d, n, padding) for n in resolutions}

    samples_ratios: Dict[int, List[Dict[str, float]]] = {n: [] for n in resolutions}
    skipped = 0
    for index in range(samples):
        rng = member_rng(seed, index)
        v_amp, w_amp = np.exp(rng.uniform(np.log(0.1), np.log(3.0), size=2))
        v_fine = random_field(fine, rng, decay=rng.uniform(1.25, 2.0), amplitude=v_amp)
        w_fine = random_field(fine, rng, decay=rng.uniform(1.25, 2.0), amplitude=w_amp)
        for n, grid in grids.items():
            v = v_fine if n == fine.n_modes else truncate(v_fine, grid)
            w = w_fine if n == fine.n_modes else truncate(w_fine, grid)
            ratios = inequality_ratios(nonlinearity, v, w, alpha)
            if any(np.isnan(r) for r in ratios.values()):
                skipped += 1
                continue
            samples_ratios[n].append(ratios)

    rows = []
    for n in resolutions:
        frame = pd.DataFrame(samples_ratios[n], columns=list(INEQUALITIES))
        for name in INEQUALITIES:
            rows.append({"resolution": n, "inequality": name,
                         "max_ratio": float(frame[name].max()) if len(frame) else 0.0,
                         "samples": int(len(frame))})
    table = pd.DataFrame(rows)

    spreads = {}
    for name in INEQUALITIES:
        maxima = table.loc[table["inequality"] == name, "max_ratio"].to_numpy()
        positive = maxima[maxima > 0]
        spreads[name] = float(positive.max() / positive.min()) if positive.size else 1.0
    passed = all(spread < ratio_max for spread in spreads.values())
    summary = ", ".join(f"{name}={spread:.3f}" for name, spread in spreads.items())
    logger.info(f"Kato–Ponce doğrulaması: yayılım {summary}, geçti={passed}")
    return {"table": table, "spreads": spreads, "skipped": skipped, "passed": passed}


def sobolev_checks(resolutions: Sequence[int] = (16, 32, 64), samples: int = 100, alpha: float = 0.25,
                   d: int = 1, seed: int = 0, padding: int = 3, slack: float = 1.0001) -> Dict[str, object]:
    """H^s interpolasyonu (α₁ = 1+α, α₂ = 0) ve H¹ ⊂ L⁶ gömme sabitinin çözünürlükle değişimi.

    Bozunum üssü (d+3)/4 üstünde seçilir; H¹ normu N → ∞ iken yakınsar.
    """
    resolutions = sorted(int(n) for n in resolutions)
    fine = ModeGrid(d, resolutions[-1], padding)
    fields = []
    for index in range(samples):
        rng = member_rng(seed, samples + index)
        fields.append(random_field(fine, rng, decay=rng.uniform((d + 3) / 4.0, 2.0)))

    worst, passed = interpolation_check(fields, 1.0 + alpha, 0.0, 0.5, slack)
    constants = {}
    for n in resolutions:
        grid = ModeGrid(d, n, padding)
        constants[n] = embedding_constant(fields if n == fine.n_modes else [truncate(u, grid) for u in fields])
    positive = np.array([c for c in constants.values() if c > 0.0])
    spread = float(positive.max() / positive.min()) if positive.size else 1.0
    table = pd.DataFrame({"resolution": list(constants), "embedding_constant": list(constants.values())})
    logger.info(f"Sobolev kontrolleri: interpolasyon oranı {worst:.6f}, gömme yayılımı {spread:.3f}")
    return {"table": table, "interpolation": worst, "interpolation_passed": passed, "embedding_spread": spread}


def gronwall_bound(times: np.ndarray, l: np.ndarray, delta_prime: float, constant: float) -> np.ndarray:
    """C(1 + ∫_τ^t exp(−δ'(t−s) + ∫_s^t l) l(s) ds) kararlı özyinelemeyle (yamuk kuralı)"""
    times = np.asarray(times, dtype=float)
    l = np.asarray(l, dtype=float)
    if times.size != l.size:
        raise PreconditionError(f"Zaman ve l örnek sayıları farklı: {times.size} ≠ {l.size}")
    if np.any(l < 0):
        raise PreconditionError("l negatif olamaz")
    cumulative = cumulative_trapezoid(l, times, initial=0.0)
    integral = np.zeros_like(times)
    for i in range(times.size - 1):
        h = times[i + 1] - times[i]
        carry = np.exp(-delta_prime * h + (cumulative[i + 1] - cumulative[i]))
        integral[i + 1] = carry * integral[i] + 0.5 * h * (carry * l[i] + l[i + 1])
    return constant * (1.0 + integral)


def gronwall_verify(times: np.ndarray, y: np.ndarray, l: np.ndarray, delta_prime: float, constant: float,
                    rtol: float = 1e-9) -> bool:
    """Y(t) ≤ C(1 + ∫ e^{−δ'(t−s)+∫_s^t l} l(s) ds) tüm örneklerde"""
    bound = gronwall_bound(times, l, delta_prime, constant)
    return bool(np.all(np.asarray(y, dtype=float) <= bound * (1.0 + rtol) + rtol))


def fit_gronwall_constant(times: np.ndarray, y: np.ndarray, l: np.ndarray,
                          delta_prime: float) -> Optional[float]:
    """Eşitsizliği sağlayan en küçük C (Y ≡ 0 ise 0)"""
    unit = gronwall_bound(times, l, delta_prime, 1.0)
    y = np.asarray(y, dtype=float)
    if not np.all(np.isfinite(unit)):
        return None
    return float(np.max(y / unit)) if y.size else 0.0
