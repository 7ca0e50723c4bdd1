"""
Doğrusal yayıcı - ∂²_t w + γ∂_t w + (1−Δ)w = μ denkleminin mod başına tam çözüm
operatörü, ölçü-Duhamel formülü ve doğrusal tanılar
"""
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Tuple, Union

import numpy as np
import pandas as pd
from scipy.integrate import solve_ivp

from ..utils.config import get_settings
from ..utils.exceptions import GridMismatchError, MeasureDomainError
from ..utils.logger import get_logger
from .global_measure import GlobalMeasure
from .measure import (
    HilbertVector,
    VectorMeasure,
    _quadrature_plan,
    interval_value,
    total_variation,
    weighted_variation,
)
from .spectral import ModeGrid, SpectralField, StatePair, norm_lp, strichartz_windows

logger = get_logger("propagator")

# Seri açılımına geçiş eşiği |ω² t²|
SERIES_THRESHOLD = 0.25
SERIES_TERMS = 10


def mode_blocks(lam: np.ndarray, gamma: float, t: np.ndarray) -> Tuple[np.ndarray, np.ndarray, np.ndarray, np.ndarray]:
    """exp(t·[[0,1],[−λ,−γ]]) girdileri (b00, b01, b10, b11), yayınlanabilir diziler"""
    return _mode_parts(lam, gamma, t)[:4]


def _mode_parts(lam: np.ndarray, gamma: float, t: np.ndarray) -> Tuple[np.ndarray, ...]:
    """(b00, b01, b10, b11, e_cos); e_cos = e^{−βt}cos ωt, aşırı sönümlü dalda cosh"""
    lam, t = np.broadcast_arrays(np.asarray(lam, dtype=float), np.asarray(t, dtype=float))
    if np.any(t < 0):
        raise MeasureDomainError(f"Negatif zaman: {float(t.min())}", value=float(t.min()))
    beta = 0.5 * gamma
    omega_sq = lam - beta * beta
    x = omega_sq * t * t

    decay = np.exp(-beta * t)
    e_cos = np.empty_like(t)
    e_sin = np.empty_like(t)

    series = np.abs(x) < SERIES_THRESHOLD
    under = ~series & (omega_sq > 0)
    over = ~series & (omega_sq < 0)

    if np.any(series):
        xs, ts = x[series], t[series]
        c_sum = np.zeros_like(xs)
        s_sum = np.zeros_like(xs)
        term_c = np.ones_like(xs)
        term_s = np.ones_like(xs)
        for n in range(SERIES_TERMS):
            c_sum += term_c
            s_sum += term_s
            term_c = term_c * (-xs) / ((2 * n + 1) * (2 * n + 2))
            term_s = term_s * (-xs) / ((2 * n + 2) * (2 * n + 3))
        e_cos[series] = decay[series] * c_sum
        e_sin[series] = decay[series] * ts * s_sum

    if np.any(under):
        omega = np.sqrt(omega_sq[under])
        tu = t[under]
        e_cos[under] = decay[under] * np.cos(omega * tu)
        e_sin[under] = decay[under] * np.sin(omega * tu) / omega

    b00 = e_cos + beta * e_sin
    b11 = e_cos - beta * e_sin

    if np.any(over):
        # Aşırı sönümlü dal: yavaş/hızlı kökler ayrı tutulur
        kappa = np.sqrt(-omega_sq[over])
        to = t[over]
        slow = lam[over] / (beta + kappa)
        e_slow = np.exp(-slow * to)
        fast = np.exp(-2.0 * kappa * to)
        ratio = beta / kappa
        e_sin[over] = e_slow * (-np.expm1(-2.0 * kappa * to)) / (2.0 * kappa)
        e_cos[over] = 0.5 * e_slow * (1.0 + fast)
        b00[over] = 0.5 * e_slow * ((1.0 + ratio) - fast * slow / kappa)
        b11[over] = 0.5 * e_slow * (-slow / kappa + fast * (1.0 + ratio))

    return b00, e_sin, -lam * e_sin, b11, e_cos


def mode_block(lam: float, gamma: float, t: float) -> np.ndarray:
    """Tek mod için 2×2 blok"""
    b00, b01, b10, b11 = mode_blocks(np.array([lam]), gamma, np.array([t]))
    return np.array([[b00[0], b01[0]], [b10[0], b11[0]]])


def energy_block(lam: float, gamma: float, t: float) -> np.ndarray:
    """diag(√λ, 1)·S(t)·diag(1/√λ, 1): enerji normunda ortonormal koordinatlar"""
    root = np.sqrt(lam)
    block = mode_block(lam, gamma, t)
    return np.array([[block[0, 0], root * block[0, 1]], [block[1, 0] / root, block[1, 1]]])


def block_residuals(lam: np.ndarray, gamma: np.ndarray, t: np.ndarray,
                    s: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
    """|det S(t) − e^{−γt}| / (λ+γ+1) ve enerji koordinatlarında ‖S(t+s) − S(t)S(s)‖"""
    lam, gamma, t, s = (np.asarray(x, dtype=float) for x in (lam, gamma, t, s))
    liouville = np.empty(lam.size)
    composition = np.empty(lam.size)
    for i in range(lam.size):
        a = energy_block(lam[i], gamma[i], t[i])
        b = energy_block(lam[i], gamma[i], s[i])
        ab = energy_block(lam[i], gamma[i], t[i] + s[i])
        liouville[i] = abs(np.linalg.det(a) - np.exp(-gamma[i] * t[i])) / (lam[i] + gamma[i] + 1.0)
        composition[i] = np.linalg.norm(ab - a @ b, 2)
    return liouville, composition


def ode_residuals(lam: np.ndarray, gamma: np.ndarray, t: np.ndarray,
                  h: float = 1e-4) -> Tuple[np.ndarray, np.ndarray]:
    """Blokların mod ODE'sini sağlaması, (λ+γ+1) ile bölünmüş.

    Kapalı form: ‖Ṡ(t) − A S(t)‖, Ṡ e^{−βt}cos ωt ve e^{−βt}sin ωt / ω türevlerinden
    dal bazında kurulur. Sonlu fark: enerji birim verileri (1/√λ, 0) ve (0, 1) için
    w'' + γw' + λw, adım h ile merkezi farklar (t < h ise t = h alınır).
    """
    lam, gamma, t = np.broadcast_arrays(*(np.asarray(x, dtype=float) for x in (lam, gamma, t)))
    closed = np.empty(lam.size)
    finite = np.empty(lam.size)
    for i, (lam_i, gamma_i, t_i) in enumerate(zip(lam.ravel(), gamma.ravel(), t.ravel())):
        beta = 0.5 * gamma_i
        b00, b01, b10, b11, e_cos = (float(x[0]) for x in _mode_parts(np.array([lam_i]), gamma_i,
                                                                       np.array([t_i])))
        e_sin = b01
        d_sin = e_cos - beta * e_sin
        derivative = np.array([[-lam_i * e_sin, d_sin],
                               [-lam_i * d_sin, -2.0 * beta * e_cos + (2.0 * beta * beta - lam_i) * e_sin]])
        generator = np.array([[0.0, 1.0], [-lam_i, -gamma_i]])
        block = np.array([[b00, b01], [b10, b11]])
        scale = lam_i + gamma_i + 1.0
        closed[i] = np.linalg.norm(derivative - generator @ block, 2) / scale

        center = max(t_i, h)
        b00s, b01s, _, _ = mode_blocks(np.full(3, lam_i), gamma_i, center + h * np.array([-1.0, 0.0, 1.0]))
        worst = 0.0
        for w in (b00s / np.sqrt(lam_i), b01s):
            second = (w[2] - 2.0 * w[1] + w[0]) / (h * h)
            first = (w[2] - w[0]) / (2.0 * h)
            worst = max(worst, abs(second + gamma_i * first + lam_i * w[1]))
        finite[i] = worst / scale
    return closed, finite


def decay_rate(gamma: float, lam_min: float = 1.0) -> float:
    """δ*(γ): en yavaş modun sönüm hızı"""
    beta = 0.5 * gamma
    if lam_min >= beta * beta:
        return beta
    return beta - np.sqrt(beta * beta - lam_min)


def fit_decay_rate(times: np.ndarray, norms: np.ndarray, t_min: float = 0.0,
                   t_max: Optional[float] = None) -> float:
    """−log‖ξ(t)‖ eğimi (en küçük kareler)"""
    times = np.asarray(times, dtype=float)
    norms = np.asarray(norms, dtype=float)
    mask = (times >= t_min) & (norms > 0)
    if t_max is not None:
        mask &= times <= t_max
    if np.count_nonzero(mask) < 2:
        return 0.0
    slope = np.polyfit(times[mask], np.log(norms[mask]), 1)[0]
    return float(-slope)


class LinearPropagator:
    """Sönümlü doğrusal dalga operatörünün mod başına tam çözümü"""

    def __init__(self, grid: ModeGrid, gamma: float, order: Optional[int] = None):
        self.grid = grid
        self.gamma = gamma
        self.order = order or get_settings().quadrature_order
        self.eigenvalues = grid.eigenvalues
        self.subdivision = min(1.0, np.pi / np.sqrt(grid.max_eigenvalue))
        self._cache: Dict[float, Tuple[np.ndarray, ...]] = {}

    def blocks(self, t: float) -> Tuple[np.ndarray, ...]:
        cached = self._cache.get(t)
        if cached is None:
            cached = mode_blocks(self.eigenvalues, self.gamma, np.full(self.grid.dim, t))
            if len(self._cache) > 64:
                self._cache.clear()
            self._cache[t] = cached
        return cached

    def apply(self, u: np.ndarray, v: np.ndarray, t: float) -> Tuple[np.ndarray, np.ndarray]:
        b00, b01, b10, b11 = self.blocks(t)
        return b00 * u + b01 * v, b10 * u + b11 * v

    def propagate_homogeneous(self, xi: StatePair, t: float) -> StatePair:
        """S(t)ξ"""
        self.grid.check(xi.grid)
        u, v = self.apply(xi.u.coeffs, xi.v.coeffs, t)
        return StatePair.from_coeffs(self.grid, u, v)

    def forcing_response(self, mu: VectorMeasure, tau: float, t: float, right_limit: bool = False,
                         atoms: bool = True) -> Tuple[np.ndarray, np.ndarray]:
        """Σ S(t−s)(0, h_s) + ∫ S(t−s)(0, ρ(s)) ds katkısı"""
        if mu.dim != self.grid.dim:
            raise GridMismatchError(self.grid.dim, mu.dim)
        if tau < mu.start or t > mu.end or tau > t:
            raise MeasureDomainError(f"[{tau}, {t}] ölçü penceresi [{mu.start}, {mu.end}] dışında", value=tau)
        du = np.zeros(self.grid.dim, dtype=complex)
        dv = np.zeros(self.grid.dim, dtype=complex)

        if atoms:
            times, values = mu.atoms_between(tau, t, True, right_limit)
            for s, h in zip(times, values):
                _, b01, _, b11 = self.blocks(t - s)
                du += b01 * h
                dv += b11 * h

        nodes, weights = _quadrature_plan(mu, tau, t, max_length=self.subdivision, order=self.order)
        if nodes.size:
            rho = mu.density_right(nodes)
            _, b01, _, b11 = mode_blocks(self.eigenvalues[None, :], self.gamma, (t - nodes)[:, None])
            du += np.sum(weights[:, None] * b01 * rho, axis=0)
            dv += np.sum(weights[:, None] * b11 * rho, axis=0)
        return du, dv

    def duhamel(self, xi: StatePair, mu: VectorMeasure, tau: float, t: float, right_limit: bool = False,
                atoms: bool = True) -> StatePair:
        """ξ(t) = S(t−τ)ξ_τ + ∫_{[τ,t)} S(t−s)(0, μ(ds)); right_limit ile t'deki atom da dahil"""
        self.grid.check(xi.grid)
        u, v = self.apply(xi.u.coeffs, xi.v.coeffs, t - tau)
        du, dv = self.forcing_response(mu, tau, t, right_limit, atoms)
        return StatePair.from_coeffs(self.grid, u + du, v + dv)

    def jump_report(self, mu: VectorMeasure, t: float) -> HilbertVector:
        """μ({t}): t'deki hız sıçraması"""
        return interval_value(mu, t, t, True, True)

    def ode_reference(self, xi: StatePair, mu: VectorMeasure, tau: float, t: float,
                      rtol: float = 1e-12, atol: float = 1e-14) -> StatePair:
        """Bağımsız referans: mod ODE'leri solve_ivp (DOP853) ile kırılma noktaları arasında"""
        dim = self.grid.dim
        lam = self.eigenvalues
        gamma = self.gamma
        state = np.concatenate([xi.u.coeffs, xi.v.coeffs]).astype(complex)
        edges = np.unique(np.concatenate([[tau, t], mu.breakpoints[(mu.breakpoints > tau) & (mu.breakpoints < t)]]))

        for left, right in zip(edges[:-1], edges[1:]):
            _, kick = mu.atoms_between(left, left, True, True)
            if kick.size:
                state[dim:] += kick.sum(axis=0)

            def rhs(s, y):
                z = y[:2 * dim] + 1j * y[2 * dim:]
                u, v = z[:dim], z[dim:]
                force = mu.density_right([s])[0]
                dz = np.concatenate([v, -lam * u - gamma * v + force])
                return np.concatenate([np.real(dz), np.imag(dz)])

            y0 = np.concatenate([np.real(state), np.imag(state)])
            solution = solve_ivp(rhs, (left, right), y0, method="DOP853", rtol=rtol, atol=atol)
            y = solution.y[:, -1]
            state = y[:2 * dim] + 1j * y[2 * dim:]
        return StatePair.from_coeffs(self.grid, state[:dim], state[dim:])


@dataclass
class LinearRun:
    """Örneklenmiş doğrusal yörünge (atom zamanlarında sol limitler)"""
    grid: ModeGrid
    gamma: float
    dt: float
    times: np.ndarray
    states: List[StatePair]
    post_kicks: Dict[int, StatePair] = field(default_factory=dict)
    measure: Optional[VectorMeasure] = None

    def energies(self) -> np.ndarray:
        return np.array([s.energy_norm() for s in self.states])

    def l12_norms(self) -> np.ndarray:
        return np.array([norm_lp(s.u, 12.0) for s in self.states])


def sample_schedule(tau: float, t_final: float, dt: float, atom_times: np.ndarray,
                    extra_times: Optional[np.ndarray] = None, snap: float = 1e-12) -> np.ndarray:
    """τ + k·dt ızgarası + atom zamanları; atoma 1e-12 yakın ızgara noktası atom zamanıyla değişir"""
    count = int(np.ceil((t_final - tau) / dt - 1e-9))
    grid = tau + dt * np.arange(count + 1)
    grid[-1] = t_final
    grid = grid[grid <= t_final]
    special = [np.asarray(atom_times, dtype=float)]
    if extra_times is not None:
        special.append(np.asarray(extra_times, dtype=float))
    special = np.concatenate(special)
    special = special[(special >= tau) & (special <= t_final)]
    if special.size:
        near = np.min(np.abs(grid[:, None] - special[None, :]), axis=1) <= snap * max(1.0, abs(t_final))
        grid = grid[~near]
    return np.unique(np.concatenate([grid, special, [tau, t_final]]))


def run_linear(propagator: LinearPropagator, xi: StatePair, forcing: Union[GlobalMeasure, VectorMeasure],
               tau: float, t_final: float, dt: float) -> LinearRun:
    """Ardışık Duhamel adımlarıyla tam doğrusal yörünge"""
    mu = forcing if isinstance(forcing, VectorMeasure) else forcing.window(tau, t_final)
    times = sample_schedule(tau, t_final, dt, mu.atom_times)
    atom_index = {float(s): i for i, s in enumerate(mu.atom_times)}
    states: List[StatePair] = []
    post_kicks: Dict[int, StatePair] = {}
    state = xi
    for i, t in enumerate(times):
        states.append(state)
        if float(t) in atom_index:
            state = state.kick(mu.atom_values[atom_index[float(t)]])
            post_kicks[i] = state
        if i + 1 < len(times):
            state = propagator.duhamel(state, mu, t, times[i + 1], atoms=False)
    logger.debug(f"Doğrusal koşu: {len(times)} örnek, {len(post_kicks)} atom")
    return LinearRun(propagator.grid, propagator.gamma, dt, times, states, post_kicks, mu)


def linear_diagnostics(run: LinearRun, propagator: LinearPropagator) -> Dict[str, object]:
    """Enerji ve pencere-Strichartz tahminlerine karşı uydurulmuş sabitler"""
    mu = run.measure if run.measure is not None else VectorMeasure.zero(run.times[0], run.times[-1], run.grid.dim)
    tau = float(run.times[0])
    rate = decay_rate(run.gamma, float(run.grid.eigenvalues.min()))
    energies = run.energies()
    initial = energies[0]

    bounds = np.empty_like(energies)
    for i, t in enumerate(run.times):
        forced = weighted_variation(mu, lambda s: np.exp(-rate * (t - np.asarray(s))), tau, t)
        bounds[i] = initial * np.exp(-rate * (t - tau)) + forced
    energy_ratio = np.divide(energies, bounds, out=np.zeros_like(energies), where=bounds > 0)

    l12 = run.l12_norms()
    windows = np.zeros(0)
    starts = np.zeros(0)
    if run.times[-1] - tau >= 1.0:
        starts, windows = strichartz_windows(run.times, l12, run.dt)
    reference = initial + total_variation(mu)
    strichartz_constant = float(windows.max() / reference) if (windows.size and reference > 0) else 0.0

    frame = pd.DataFrame({"t": run.times, "energy": energies, "bound": bounds, "l12": l12})
    return {
        "decay_rate": rate,
        "fitted_rate": fit_decay_rate(run.times, energies) if initial > 0 else 0.0,
        "energy_constant": float(energy_ratio.max()) if energy_ratio.size else 0.0,
        "strichartz_constant": strichartz_constant,
        "window_starts": starts,
        "windows": windows,
        "table": frame,
    }
