"""
Otonom olmayan yapı - kabuk örnekleri, öteleme özdeşliği, pullback görüntüleri
ve zayıf-yıldız uzaklığı
"""
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np
import pandas as pd
from scipy.spatial.distance import directed_hausdorff, pdist

from ..utils.exceptions import GridMismatchError, PreconditionError
from ..utils.logger import get_logger
from ..utils.parallel import ensemble_map
from .dynamics import simulate
from .global_measure import GlobalMeasure
from .measure import VectorMeasure, integrate_scalar
from .nonlinearity import Nonlinearity
from .propagator import LinearPropagator
from .spectral import ModeGrid, StatePair, state_vector

logger = get_logger("attractor")


class HullSample:
    """Sonlu öteleme kümesiyle örneklenmiş kabuk H(μ)"""

    def __init__(self, base: GlobalMeasure, shifts: Sequence[float]):
        self.base = base
        self.shifts = [float(s) for s in shifts]
        self.members = [base.shift(s) for s in self.shifts]

    def __len__(self) -> int:
        return len(self.members)

    def window(self, index: int, tau: float, t: float) -> VectorMeasure:
        return self.members[index].window(tau, t)

    def unit_window_check(self, starts: Sequence[float], tolerance: float = 1e-12) -> Dict[str, object]:
        """Her üyenin birim pencere TV'si ≤ tabanın M_b tahmini"""
        covered = [s + h for s in starts for h in self.shifts]
        base_bound = self.base.unit_window_bound(covered)
        member_bounds = [member.unit_window_bound(starts) for member in self.members]
        ok = all(b <= base_bound * (1.0 + tolerance) + tolerance for b in member_bounds)
        if not ok:
            logger.warning(f"Kabuk üyesi M_b sınırını aşıyor: {max(member_bounds):.6g} > {base_bound:.6g}")
        return {"base_bound": base_bound, "member_bounds": member_bounds, "ok": ok}


def translation_identity_check(propagator: LinearPropagator, nonlinearity: Nonlinearity, g: GlobalMeasure,
                               s: float, t: float, tau: float, xi: StatePair, dt: float) -> Dict[str, float]:
    """‖U_{T(s)μ}(t,τ)ξ − U_μ(t+s, τ+s)ξ‖_E"""
    shifted = simulate(propagator, nonlinearity, xi, tau, t, g.shift(s), dt, record_l12=False)
    direct = simulate(propagator, nonlinearity, xi, tau + s, t + s, g, dt, record_l12=False)
    a, b = shifted.states[-1], direct.states[-1]
    residual = (a - b).energy_norm()
    scale = max(1.0, a.energy_norm())
    logger.debug(f"Öteleme özdeşliği s={s}, [{tau}, {t}]: kalıntı={residual:.3e}")
    return {"s": s, "tau": tau, "t": t, "residual": residual, "relative": residual / scale}


def hausdorff(a: np.ndarray, b: np.ndarray) -> float:
    """Sonlu kümeler arası simetrik Hausdorff uzaklığı (gerçek kümenin alt sınırı)"""
    return float(max(directed_hausdorff(a, b)[0], directed_hausdorff(b, a)[0]))


def diameter(points: np.ndarray) -> float:
    return float(pdist(points).max()) if len(points) > 1 else 0.0


@dataclass
class EnsembleImage:
    """U(0, −T_k)B görüntüleri kabuk üyesi ve ufuk başına"""
    horizons: List[float]
    shifts: List[float]
    images: Dict[Tuple[float, float], List[StatePair]] = field(default_factory=dict)
    table: Optional[pd.DataFrame] = None
    absorbing_radius: float = 0.0
    nested: bool = True
    attracting: bool = True

    def points(self, shift: float, horizon: float, kind: str = "energy") -> np.ndarray:
        return np.array([state_vector(xi, kind) for xi in self.images[(shift, horizon)]])


def pullback_attractor(propagator: LinearPropagator, nonlinearity: Nonlinearity, g: GlobalMeasure,
                       ball: Sequence[StatePair], horizons: Sequence[float], shifts: Sequence[float],
                       dt: float, margin: float = 0.1, threads: Optional[int] = None) -> EnsembleImage:
    """Her kabuk üyesi için B'yi −T_k'dan 0'a taşı; ardışık görüntüler arası Hausdorff uzaklıkları"""
    horizons = [float(h) for h in horizons]
    if any(b <= a for a, b in zip(horizons[:-1], horizons[1:])):
        raise PreconditionError(f"Ufuklar artan olmalı: {horizons}")
    result = EnsembleImage(horizons, [float(s) for s in shifts])

    jobs = [(s, h, xi) for s in result.shifts for h in horizons for xi in ball]

    def run(job: Tuple[float, float, StatePair]) -> StatePair:
        shift, horizon, xi = job
        trajectory = simulate(propagator, nonlinearity, xi, -horizon, 0.0, g.shift(shift), dt, record_l12=False)
        return trajectory.states[-1]

    finals = ensemble_map(run, jobs, threads)
    for (shift, horizon, _), state in zip(jobs, finals):
        result.images.setdefault((shift, horizon), []).append(state)

    rows = []
    for shift in result.shifts:
        previous: Dict[str, np.ndarray] = {}
        for horizon in horizons:
            energy = result.points(shift, horizon, "energy")
            weak = result.points(shift, horizon, "weak")
            norms = [xi.energy_norm() for xi in result.images[(shift, horizon)]]
            rows.append({
                "shift": shift,
                "horizon": horizon,
                "diameter_energy": diameter(energy),
                "diameter_weak": diameter(weak),
                "max_energy_norm": float(max(norms)),
                "hausdorff_energy": hausdorff(previous["energy"], energy) if previous else np.nan,
                "hausdorff_weak": hausdorff(previous["weak"], weak) if previous else np.nan,
            })
            previous = {"energy": energy, "weak": weak}
    table = pd.DataFrame(rows)

    last = table[table["horizon"] == horizons[-1]]
    result.absorbing_radius = (1.0 + margin) * float(last["max_energy_norm"].max())
    nested = True
    attracting = True
    for _, group in table.groupby("shift", sort=True):
        inside = (group["max_energy_norm"] <= result.absorbing_radius).to_numpy()
        entered = np.nonzero(inside)[0]
        if entered.size and not np.all(inside[entered[0]:]):
            nested = False
        distances = group["hausdorff_energy"].dropna().to_numpy()
        if distances.size >= 2 and distances[-1] > distances[0]:
            attracting = False
    result.table = table
    result.nested = nested
    result.attracting = attracting
    logger.info(f"Pullback: {len(result.shifts)} üye × {len(horizons)} ufuk, "
                f"emici yarıçap={result.absorbing_radius:.4g}, iç içe={nested}, çekim={attracting}")
    return result


def weak_star_distance(mu1: VectorMeasure, mu2: VectorMeasure, hats: int = 16, coords: int = 8,
                       order: Optional[np.ndarray] = None, grid: Optional[ModeGrid] = None) -> float:
    """Zaman şapkaları ⊗ ilk koordinatlar ailesi üzerinde max |∫φ dμ₁ − ∫φ dμ₂|.

    Koordinat sırası verilmezse grid.eigen_order (en küçük özdeğerler önce), grid de yoksa doğal sıra.
    """
    if mu1.dim != mu2.dim:
        raise PreconditionError(f"Boyutlar farklı: {mu1.dim} ≠ {mu2.dim}")
    if grid is not None and grid.dim != mu1.dim:
        raise GridMismatchError(grid.dim, mu1.dim)
    start, end = min(mu1.start, mu2.start), max(mu1.end, mu2.end)
    if end == start:
        return 0.0
    width = (end - start) / hats
    centers = start + width * np.arange(hats + 1)
    if order is None:
        order = grid.eigen_order if grid is not None else np.arange(mu1.dim)
    order = np.asarray(order)
    selected = order[:min(coords, mu1.dim)]

    distance = 0.0
    for center in centers:
        def phi(t: float, c: float = center) -> float:
            return max(0.0, 1.0 - abs(t - c) / width)

        knots = [center - width, center, center + width]
        diff = integrate_scalar(phi, mu1, knots) - integrate_scalar(phi, mu2, knots)
        picked = diff[selected]
        distance = max(distance, float(np.max(np.abs(np.real(picked)))), float(np.max(np.abs(np.imag(picked)))))
    return distance
