"""
Skaler ODE referans modeli y' = y − y³ + g(t) + atomlar

Kuvvet g(t) = −3 + μ₀(t), μ₀(t) = (6/π)·arctan t kabuk uç noktaları ±3 olan asimptotik profildir;
birbirini götüren spike çiftleri (K·n'de +½, K·n + 1/(K·n)'de −½) eklendiğinde düzgün
çekici ile çekirdek kesitlerinin birleşimi ayrılır.
"""
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np
from scipy.integrate import solve_ivp

from ..utils.config import KernelParams, SpikeLaw
from ..utils.logger import get_logger
from ..utils.parallel import ensemble_map
from .global_measure import AsymptoticProfile, CompositeMeasure, GlobalMeasure, SpikeTrain, ZeroMeasure

logger = get_logger("scalar_model")


@dataclass
class ScalarTrajectory:
    """Skaler çözüm örnekleri; atom zamanlarında sıçrama öncesi ve sonrası"""
    times: np.ndarray
    values: np.ndarray
    kicks: Dict[float, Tuple[float, float]] = field(default_factory=dict)

    def values_after(self, t_min: float) -> np.ndarray:
        """t ≥ t_min örnekleri + sıçrama sonrası değerler"""
        late = self.values[self.times >= t_min]
        extra = [after for t, (_, after) in self.kicks.items() if t >= t_min]
        return np.concatenate([late, np.asarray(extra, dtype=float)])


def hull_forcing(spikes: bool, spike_scale: float = 50.0, n_spikes: int = 6) -> GlobalMeasure:
    """−3 + (6/π)·arctan t profili, isteğe bağlı spike çiftleri ile"""
    profile = AsymptoticProfile(offset=-3.0, amplitude=3.0, rate=1.0)
    if not spikes:
        return profile
    train = SpikeTrain(SpikeLaw.CANCELLING_LINEAR, np.ones(1), scale=spike_scale, n_min=1, n_max=n_spikes,
                       amplitude=0.5)
    return CompositeMeasure([profile, train])


def constant_forcing(value: float) -> GlobalMeasure:
    """Kabuk uç noktası: sabit yoğunluk"""
    if value == 0.0:
        return ZeroMeasure(1)
    return AsymptoticProfile(offset=value, amplitude=0.0)


def ode_simulate(y0: float, tau: float, t_final: float, forcing: GlobalMeasure, sample_dt: float = 0.05,
                 rtol: float = 1e-9, atol: float = 1e-11) -> ScalarTrajectory:
    """Atomlar arasında uyarlamalı entegrasyon; atomlar y'yi doğrudan iter"""
    atom_times, atom_values = forcing.atoms(tau, t_final)
    edges = np.unique(np.concatenate([[tau, t_final], atom_times]))

    def rhs(t, y):
        g = forcing.density(t)
        return y - y ** 3 + (0.0 if g is None else float(np.ravel(g)[0]))

    times: List[np.ndarray] = []
    values: List[np.ndarray] = []
    kicks: Dict[float, Tuple[float, float]] = {}
    y = float(y0)
    for left, right in zip(edges[:-1], edges[1:]):
        hit = np.nonzero(atom_times == left)[0]
        if hit.size:
            before = y
            y = y + float(np.ravel(atom_values[hit[0]])[0])
            kicks[float(left)] = (before, y)
        count = max(2, int(np.ceil((right - left) / sample_dt)) + 1)
        t_eval = np.linspace(left, right, count)
        solution = solve_ivp(rhs, (left, right), [y], method="DOP853", t_eval=t_eval, rtol=rtol, atol=atol)
        times.append(solution.t[:-1])
        values.append(solution.y[0, :-1])
        y = float(solution.y[0, -1])
    times.append(np.array([t_final]))
    values.append(np.array([y]))
    return ScalarTrajectory(np.concatenate(times), np.concatenate(values), kicks)


def interval_of(values: Sequence[float]) -> Tuple[float, float]:
    values = np.asarray(values, dtype=float)
    return float(values.min()), float(values.max())


def uniform_attractor_estimate(forcing: GlobalMeasure, start_times: Sequence[float], initial_values: Sequence[float],
                               transient: float, run_length: float, threads: Optional[int] = None) -> Tuple[float, float]:
    """A_un: başlangıç zamanları × başlangıç değerleri taraması, geçiş sonrası değerlerin aralığı"""
    jobs = [(float(s), float(y0)) for s in start_times for y0 in initial_values]

    def run(job: Tuple[float, float]) -> np.ndarray:
        start, y0 = job
        trajectory = ode_simulate(y0, start, start + transient + run_length, forcing)
        return trajectory.values_after(start + transient)

    collected = ensemble_map(run, jobs, threads)
    return interval_of(np.concatenate(collected))


def pullback_section(forcing: GlobalMeasure, initial_values: Sequence[float], start: float, t_final: float,
                     transient: float) -> Tuple[float, float]:
    """Tam yörünge yaklaşımı: çok erken başlangıçtan gelen yörüngelerin değer aralığı"""
    collected = [ode_simulate(y0, start, t_final, forcing).values_after(start + transient)
                 for y0 in initial_values]
    return interval_of(np.concatenate(collected))


def endpoint_kernel(value: float, initial_values: Sequence[float], horizon: float) -> Tuple[float, float]:
    """Otonom uç nokta (sabit kuvvet) için başlangıç aralığının uzun süre sonraki görüntüsü"""
    forcing = constant_forcing(value)
    images = [ode_simulate(y0, 0.0, horizon, forcing, sample_dt=horizon).values[-1] for y0 in initial_values]
    return interval_of(images)


def kernel_vs_attractor(params: KernelParams, threads: Optional[int] = None) -> Dict[str, object]:
    """Düzgün çekici tahmini ile çekirdek kesitleri birleşimini karşılaştır"""
    forcing = hull_forcing(params.perturbed, params.spike_scale, params.n_spikes)
    initial_values = np.linspace(params.ic_min, params.ic_max, params.ic_count)
    period = params.spike_scale
    horizon_end = period * params.n_spikes + 5.0

    # Spike dönemleri: her spike'tan önce geçiş süresi kadar erken başla
    starts = [params.pullback_start_seconds] + [period * n - params.transient_seconds - 5.0
                                                 for n in range(1, params.n_spikes + 1)]
    attractor = uniform_attractor_estimate(forcing, starts, initial_values, params.transient_seconds,
                                           period, threads)

    horizon = abs(params.pullback_start_seconds)
    upper = endpoint_kernel(0.0, [params.ic_min, params.ic_max], horizon)
    lower = endpoint_kernel(-6.0, [params.ic_min, params.ic_max], horizon)
    interior = pullback_section(forcing, [params.ic_min, params.ic_max], params.pullback_start_seconds,
                                horizon_end, params.transient_seconds)
    kernel_union = (min(upper[0], lower[0], interior[0]), max(upper[1], lower[1], interior[1]))

    gap = attractor[1] - kernel_union[1]
    logger.info(f"A_un ≈ [{attractor[0]:.3f}, {attractor[1]:.3f}], "
                f"∪K_z ≈ [{kernel_union[0]:.3f}, {kernel_union[1]:.3f}], fark={gap:.3f}")
    return {
        "attractor": attractor,
        "kernel_union": kernel_union,
        "interior_kernel": interior,
        "upper_endpoint_kernel": upper,
        "lower_endpoint_kernel": lower,
        "gap": gap,
    }


def autonomous_attractor(initial_values: Sequence[float], transient: float = 20.0,
                         run_length: float = 10.0) -> Tuple[float, float]:
    """Kuvvetsiz y' = y − y³ için çekici aralığı (beklenen [−1, 1])"""
    return uniform_attractor_estimate(ZeroMeasure(1), [0.0], initial_values, transient, run_length, threads=1)


def hull_sections(forcing: GlobalMeasure, shifts: Sequence[float], initial_values: Sequence[float],
                  horizon: float = 200.0, transient: float = 20.0) -> List[Dict[str, float]]:
    """Her kabuk üyesi T(h)μ için [−T, T] üzerinde tam yörünge yaklaşımının değer aralığı"""
    rows = []
    for h in shifts:
        member = forcing.shift(float(h))
        low, high = pullback_section(member, initial_values, -horizon, horizon, transient)
        rows.append({"shift": float(h), "low": low, "high": high})
    return rows
