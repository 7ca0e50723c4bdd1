"""
Zaman entegrasyonu - ölçü kuvvetli sönümlü kuintik dalga denklemi için tam doğrusal
akış etrafında Strang bölmesi, atom zamanlarında olay-tam hız sıçramaları
"""
from dataclasses import dataclass, field
from pathlib import Path
from typing import Callable, Dict, List, Optional, Sequence, Union

import numpy as np
import pandas as pd
from scipy.integrate import cumulative_trapezoid

from ..utils.config import get_settings
from ..utils.exceptions import ContractViolationError, PreconditionError, SolverBlowUpError
from ..utils.io import write_csv
from ..utils.logger import get_logger
from ..utils.parallel import ensemble_map
from .global_measure import GlobalMeasure
from .measure import VectorMeasure
from .nonlinearity import Nonlinearity
from .propagator import LinearPropagator, sample_schedule
from .spectral import (
    ModeGrid,
    SpectralField,
    StatePair,
    nonlinear_energy,
    norm_lp,
    random_field,
    strichartz_windows,
)

logger = get_logger("dynamics")

VelocityUpdate = Callable[[np.ndarray], np.ndarray]
Forcing = Union[GlobalMeasure, VectorMeasure]


def quintic_update(propagator: LinearPropagator, nonlinearity: Nonlinearity) -> VelocityUpdate:
    """u katsayılarından f(u) katsayıları (dolgulu ızgarada)"""
    grid = propagator.grid

    def update(u: np.ndarray) -> np.ndarray:
        return grid.from_physical(nonlinearity.f(grid.to_physical(u)))

    return update


def strang_arrays(propagator: LinearPropagator, u: np.ndarray, v: np.ndarray, mu: VectorMeasure, t0: float,
                  dt: float, update: Optional[VelocityUpdate]):
    """L(dt/2) ∘ N(dt) ∘ L(dt/2) katsayı dizileri üzerinde"""
    t_half, t_end = t0 + 0.5 * dt, t0 + dt
    interior = mu.atom_times[(mu.atom_times > t0) & (mu.atom_times < t_end)]
    if interior.size:
        raise ContractViolationError(float(interior[0]), t0, t_end)

    u, v = propagator.apply(u, v, t_half - t0)
    du, dv = propagator.forcing_response(mu, t0, t_half, atoms=False)
    u, v = u + du, v + dv
    if update is not None:
        v = v - dt * update(u)
    u, v = propagator.apply(u, v, t_end - t_half)
    du, dv = propagator.forcing_response(mu, t_half, t_end, atoms=False)
    return u + du, v + dv


def step(propagator: LinearPropagator, nonlinearity: Nonlinearity, xi: StatePair, dt: float,
         mu: VectorMeasure, t0: float) -> StatePair:
    """Tek Strang adımı; segment içinde atom olamaz"""
    if dt <= 0:
        raise PreconditionError(f"Adım pozitif olmalı: {dt}")
    update = None if nonlinearity.is_linear else quintic_update(propagator, nonlinearity)
    u, v = strang_arrays(propagator, xi.u.coeffs, xi.v.coeffs, mu, t0, dt, update)
    if not (np.all(np.isfinite(u)) and np.all(np.isfinite(v))):
        raise SolverBlowUpError(t0 + dt, np.inf, get_settings().energy_ceiling, xi, t0)
    return StatePair.from_coeffs(propagator.grid, u, v)


@dataclass
class Trajectory:
    """Örneklenmiş çözüm: atom zamanlarında sol limit, sıçrama sonrası ayrıca saklanır"""
    grid: ModeGrid
    gamma: float
    nonlinearity: Nonlinearity
    dt: float
    times: np.ndarray
    states: List[StatePair]
    post_kicks: Dict[int, StatePair] = field(default_factory=dict)
    measure: Optional[VectorMeasure] = None
    l12: Optional[np.ndarray] = None

    def energies(self, alpha: float = 0.0) -> np.ndarray:
        return np.array([s.energy_norm(alpha) for s in self.states])

    def nonlinear_energies(self) -> np.ndarray:
        return np.array([nonlinear_energy(s, self.nonlinearity) for s in self.states])

    def l12_norms(self) -> np.ndarray:
        if self.l12 is None:
            self.l12 = np.array([norm_lp(s.u, 12.0) for s in self.states])
        return self.l12

    def state_after(self, index: int) -> StatePair:
        """t_i + 0 durumu"""
        return self.post_kicks.get(index, self.states[index])

    def state_at(self, t: float) -> StatePair:
        index = int(np.argmin(np.abs(self.times - t)))
        return self.states[index]

    def strichartz_windows(self, width: float = 1.0):
        """Kayan pencere ‖u‖_{L⁴(t,t+1;L¹²)} değerleri"""
        if self.times[-1] - self.times[0] < width:
            return np.zeros(0), np.zeros(0)
        return strichartz_windows(self.times, self.l12_norms(), self.dt, width)

    def jump_errors(self) -> np.ndarray:
        """‖(v⁺ − v⁻) − h‖ / ‖h‖ her atom için"""
        if self.measure is None or not self.post_kicks:
            return np.zeros(0)
        errors = []
        lookup = {float(t): h for t, h in zip(self.measure.atom_times, self.measure.atom_values)}
        for index, after in self.post_kicks.items():
            h = lookup[float(self.times[index])]
            jump = after.v.coeffs - self.states[index].v.coeffs
            errors.append(np.linalg.norm(jump - h) / max(np.linalg.norm(h), np.finfo(float).tiny))
        return np.array(errors)

    def to_frame(self) -> pd.DataFrame:
        return pd.DataFrame({
            "t": self.times,
            "energy_norm": self.energies(),
            "l12_norm": self.l12_norms(),
            "nonlinear_energy": self.nonlinear_energies(),
            "atom": [i in self.post_kicks for i in range(len(self.times))],
        })

    def to_csv(self, path: Union[str, Path]) -> Path:
        return write_csv(path, self.to_frame())


def simulate(propagator: LinearPropagator, nonlinearity: Nonlinearity, xi: StatePair, tau: float,
             t_final: float, forcing: Forcing, dt: float, extra_times: Optional[np.ndarray] = None,
             record_l12: bool = True, update: Optional[VelocityUpdate] = None) -> Trajectory:
    """[τ, T] üzerinde çözüm; adımlar atom zamanlarında tam bölünür"""
    settings = get_settings()
    if dt > settings.max_dt_seconds:
        raise PreconditionError(f"dt={dt} izin verilen üst sınırı {settings.max_dt_seconds} aşıyor")
    if t_final <= tau:
        raise PreconditionError(f"T={t_final} τ={tau}'dan büyük olmalı")
    propagator.grid.check(xi.grid)
    mu = forcing if isinstance(forcing, VectorMeasure) else forcing.window(tau, t_final)
    if update is None and not nonlinearity.is_linear:
        update = quintic_update(propagator, nonlinearity)

    times = sample_schedule(tau, t_final, dt, mu.atom_times, extra_times)
    atom_index = {float(s): i for i, s in enumerate(mu.atom_times)}
    ceiling = settings.energy_ceiling
    states: List[StatePair] = []
    post_kicks: Dict[int, StatePair] = {}
    u, v = xi.u.coeffs, xi.v.coeffs
    grid = propagator.grid

    for i, t in enumerate(times):
        state = StatePair.from_coeffs(grid, u, v)
        energy = 0.5 * state.energy_norm() ** 2
        if energy > ceiling:
            last = states[-1] if states else None
            raise SolverBlowUpError(float(t), energy, ceiling, last, float(times[i - 1]) if i else None)
        states.append(state)
        if float(t) in atom_index:
            v = v + mu.atom_values[atom_index[float(t)]]
            post_kicks[i] = StatePair.from_coeffs(grid, u, v)
        if i + 1 < len(times):
            u, v = strang_arrays(propagator, u, v, mu, float(t), float(times[i + 1] - t), update)
            if not (np.all(np.isfinite(u)) and np.all(np.isfinite(v))):
                raise SolverBlowUpError(float(times[i + 1]), np.inf, ceiling, states[-1], float(t))

    trajectory = Trajectory(grid, propagator.gamma, nonlinearity, dt, times, states, post_kicks, mu)
    if record_l12:
        trajectory.l12_norms()
    logger.debug(f"Simülasyon [{tau}, {t_final}] dt={dt}: {len(times)} örnek, {len(post_kicks)} atom")
    return trajectory


def scaled_initial_state(grid: ModeGrid, rng: np.random.Generator, energy_norm: float, decay: float = 1.5,
                         max_wavenumber: int = 4) -> StatePair:
    """‖ξ‖_E = energy_norm olan rastgele düşük modlu başlangıç durumu (enerjinin yarısı u'da)"""
    low = np.max(np.abs(grid.wavevectors), axis=1) <= max_wavenumber
    u = random_field(grid, rng, decay)
    v = random_field(grid, rng, decay)
    u = SpectralField(grid, np.where(low, u.coeffs, 0.0))
    v = SpectralField(grid, np.where(low, v.coeffs, 0.0))
    zero = SpectralField.zeros(grid)
    u_norm = StatePair(u, zero).energy_norm()
    v_norm = StatePair(zero, v).energy_norm()
    if energy_norm == 0.0 or u_norm == 0.0 or v_norm == 0.0:
        return StatePair.zeros(grid)
    half = energy_norm / np.sqrt(2.0)
    return StatePair(u * (half / u_norm), v * (half / v_norm))


def mode_initial_state(grid: ModeGrid, mode: Sequence[int], energy_norm: float) -> StatePair:
    """Tek modlu (cos k·x) u, v = 0 başlangıç durumu"""
    coeffs = grid.vector_from_modes([(list(mode), 1.0)])
    xi = StatePair(SpectralField(grid, coeffs), SpectralField.zeros(grid))
    norm = xi.energy_norm()
    return xi * (energy_norm / norm) if norm > 0 else xi


def continuous_dependence(propagator: LinearPropagator, nonlinearity: Nonlinearity, xi1: StatePair,
                          xi2: StatePair, forcing: Forcing, tau: float, t_final: float, dt: float,
                          c_max: float = 100.0) -> Dict[str, object]:
    """‖ξ₁−ξ₂‖_E ≤ exp(C∫(1+‖u₁‖⁴_{L¹²}+‖u₂‖⁴_{L¹²}))·‖ξ₁(τ)−ξ₂(τ)‖_E için uydurulmuş C"""
    first = simulate(propagator, nonlinearity, xi1, tau, t_final, forcing, dt)
    second = simulate(propagator, nonlinearity, xi2, tau, t_final, forcing, dt)
    differences = np.array([(a - b).energy_norm() for a, b in zip(first.states, second.states)])
    initial = differences[0]
    growth = cumulative_trapezoid(1.0 + first.l12_norms() ** 4 + second.l12_norms() ** 4, first.times,
                                  initial=0.0)
    if initial == 0.0:
        constant = 0.0 if np.all(differences == 0.0) else np.inf
    else:
        usable = (growth > 0) & (differences > 0)
        exponents = np.log(differences[usable] / initial) / growth[usable]
        constant = float(max(0.0, exponents.max())) if exponents.size else 0.0
    return {
        "times": first.times,
        "differences": differences,
        "growth_integral": growth,
        "constant": constant,
        "fits": bool(np.isfinite(constant) and constant <= c_max),
        "identical": bool(np.all(differences == 0.0)),
    }


def dissipativity_scan(propagator: LinearPropagator, nonlinearity: Nonlinearity,
                       initial_states: Sequence[StatePair], forcing: Forcing, tau: float, t_final: float,
                       dt: float, transient: float, margin: float = 0.1,
                       threads: Optional[int] = None) -> Dict[str, object]:
    """Topluluk çalıştır; geçiş sonrası sup‖ξ‖_E, ortak top, giriş/çıkmama ve Strichartz büyümesi"""
    mu = forcing if isinstance(forcing, VectorMeasure) else forcing.window(tau, t_final)

    def run(xi: StatePair) -> Trajectory:
        return simulate(propagator, nonlinearity, xi, tau, t_final, mu, dt)

    trajectories = ensemble_map(run, initial_states, threads)
    rows = []
    sups = []
    for index, trajectory in enumerate(trajectories):
        energies = trajectory.energies()
        late = trajectory.times >= tau + transient
        sup = float(energies[late].max()) if np.any(late) else float(energies[-1])
        starts, windows = trajectory.strichartz_windows()
        late_windows = windows[starts >= tau + transient] if windows.size else windows
        ratio = float(late_windows.max() / np.median(late_windows)) if (
            late_windows.size and np.median(late_windows) > 0) else 0.0
        sups.append(sup)
        rows.append({"member": index, "initial_energy": float(energies[0]), "post_transient_sup": sup,
                     "strichartz_max": float(late_windows.max()) if late_windows.size else 0.0,
                     "strichartz_ratio": ratio})

    radius = max(sups) if sups else 0.0
    spread = (max(sups) - min(sups)) / radius if radius > 0 else 0.0
    absorbing = (1.0 + margin) * radius
    for row, trajectory in zip(rows, trajectories):
        energies = trajectory.energies()
        inside = np.nonzero(energies <= absorbing)[0]
        entry = int(inside[0]) if inside.size else None
        row["entry_time"] = float(trajectory.times[entry]) if entry is not None else None
        row["stays_inside"] = bool(entry is not None and np.all(energies[entry:] <= absorbing))

    logger.info(f"Dissipativite taraması: yarıçap={radius:.4g}, yayılım={spread:.3%}")
    return {
        "table": pd.DataFrame(rows),
        "radius": radius,
        "spread": spread,
        "absorbing_radius": absorbing,
        "all_enter": all(row["stays_inside"] for row in rows),
        "strichartz_ratio_max": max((row["strichartz_ratio"] for row in rows), default=0.0),
        "trajectories": trajectories,
    }
