"""
Enerji defteri - aralık başına enerji eşitliği kalıntısı, atom işi (yarı toplam kuralı)
ve δ-pertürbe fonksiyonel E_δ ile kuadratik form B tanıları
"""
from dataclasses import dataclass
from typing import Dict, Optional

import numpy as np
import pandas as pd

from ..utils.logger import get_logger
from .dynamics import Trajectory
from .measure import VectorMeasure
from .spectral import StatePair, nonlinear_energy

logger = get_logger("ledger")


def default_delta(gamma: float) -> float:
    """δ = min(γ/4, 1/(4+γ))"""
    return min(gamma / 4.0, 1.0 / (4.0 + gamma))


def b_form_matrix(lam: float, gamma: float, delta: float) -> np.ndarray:
    """Tek mod (u, v) için B kuadratik formunun katsayı matrisi"""
    return np.array([
        [0.5 * delta * lam - 0.5 * gamma * delta ** 2, -0.5 * delta ** 2],
        [-0.5 * delta ** 2, gamma - 1.5 * delta],
    ])


def b_form_min_eigenvalue(gamma: float, delta: float, lam_min: float = 1.0) -> float:
    """B formunun en küçük özdeğeri (λ ile artan, λ_min'de en küçük)"""
    return float(np.linalg.eigvalsh(b_form_matrix(lam_min, gamma, delta)).min())


def _inner(a: np.ndarray, b: np.ndarray) -> float:
    return float(np.real(np.vdot(a, b)))


def perturbed_energy(xi: StatePair, nonlinearity, gamma: float, delta: float) -> float:
    """E_δ = ½‖ξ‖²_E + (F(u),1) + δ(u,v) + (γδ/2)‖u‖²"""
    u, v = xi.u.coeffs, xi.v.coeffs
    return (nonlinear_energy(xi, nonlinearity) + delta * _inner(u, v)
            + 0.5 * gamma * delta * _inner(u, u))


def b_form(xi: StatePair, gamma: float, delta: float) -> float:
    """B = (γ−3δ/2)‖v‖² + (δ/2)‖u‖²_{H¹} − δ²(u,v) − (γδ²/2)‖u‖²"""
    u, v = xi.u.coeffs, xi.v.coeffs
    lam = xi.grid.eigenvalues
    return ((gamma - 1.5 * delta) * _inner(v, v) + 0.5 * delta * _inner(u, lam * u)
            - delta ** 2 * _inner(u, v) - 0.5 * gamma * delta ** 2 * _inner(u, u))


def virial_gap(xi: StatePair, nonlinearity) -> float:
    """(f(u), u) − (F(u), 1) dolgulu ızgarada"""
    values = xi.u.physical()
    cell = xi.grid.cell_volume
    return float(np.sum(nonlinearity.f(values) * values - nonlinearity.F(values)) * cell)


@dataclass
class EnergyLedger:
    """Aralık ve atom kayıtları + özet"""
    intervals: pd.DataFrame
    atoms: pd.DataFrame
    delta: float
    b_min_eigenvalue: float
    b_min_sample: float

    @property
    def total_abs_residual(self) -> float:
        return float(self.intervals["residual"].abs().sum()) if len(self.intervals) else 0.0

    @property
    def signed_residual(self) -> float:
        return float(self.intervals["residual"].sum()) if len(self.intervals) else 0.0

    @property
    def perturbed_abs_residual(self) -> float:
        return float(self.intervals["perturbed_residual"].abs().sum()) if len(self.intervals) else 0.0

    @property
    def max_atom_error(self) -> float:
        return float(self.atoms["error"].max()) if len(self.atoms) else 0.0

    @property
    def b_positive(self) -> bool:
        return self.b_min_eigenvalue > 0.0

    def summary(self) -> Dict[str, float]:
        return {
            "total_abs_residual": self.total_abs_residual,
            "signed_residual": self.signed_residual,
            "perturbed_abs_residual": self.perturbed_abs_residual,
            "max_atom_error": self.max_atom_error,
            "atoms": int(len(self.atoms)),
            "delta": self.delta,
            "b_min_eigenvalue": self.b_min_eigenvalue,
            "b_min_sample": self.b_min_sample,
        }


def ledger(trajectory: Trajectory, mu: Optional[VectorMeasure] = None, delta: Optional[float] = None) -> EnergyLedger:
    """Yörüngeden enerji defteri: ΔE − (sönüm + yoğunluk işi) kalıntısı ve atom işi"""
    mu = mu if mu is not None else trajectory.measure
    gamma = trajectory.gamma
    nonlinearity = trajectory.nonlinearity
    delta = default_delta(gamma) if delta is None else delta
    times = trajectory.times

    starts = [trajectory.state_after(i) for i in range(len(times))]
    ends = trajectory.states

    energy_start = np.array([nonlinear_energy(s, nonlinearity) for s in starts])
    energy_end = np.array([nonlinear_energy(s, nonlinearity) for s in ends])
    pert_start = np.array([perturbed_energy(s, nonlinearity, gamma, delta) for s in starts])
    pert_end = np.array([perturbed_energy(s, nonlinearity, gamma, delta) for s in ends])
    v_sq_start = np.array([_inner(s.v.coeffs, s.v.coeffs) for s in starts])
    v_sq_end = np.array([_inner(s.v.coeffs, s.v.coeffs) for s in ends])
    # δE_δ + B + δ((f,u) − (F,1)) integrandı
    source_start = np.array([delta * pert_start[i] + b_form(s, gamma, delta) + delta * virial_gap(s, nonlinearity)
                             for i, s in enumerate(starts)])
    source_end = np.array([delta * pert_end[i] + b_form(s, gamma, delta) + delta * virial_gap(s, nonlinearity)
                           for i, s in enumerate(ends)])

    if mu is not None and mu.has_density:
        rho_right = mu.density_right(times)
        rho_left = mu.density_left(times)
    else:
        rho_right = rho_left = np.zeros((len(times), trajectory.grid.dim))

    rows = []
    for i in range(len(times) - 1):
        length = times[i + 1] - times[i]
        a, b = starts[i], ends[i + 1]
        delta_energy = energy_end[i + 1] - energy_start[i]
        dissipation = -gamma * 0.5 * length * (v_sq_start[i] + v_sq_end[i + 1])
        work = 0.5 * length * (_inner(a.v.coeffs, rho_right[i]) + _inner(b.v.coeffs, rho_left[i + 1]))
        residual = delta_energy - dissipation - work
        pert_work = 0.5 * length * (_inner(a.v.coeffs + delta * a.u.coeffs, rho_right[i])
                                    + _inner(b.v.coeffs + delta * b.u.coeffs, rho_left[i + 1]))
        pert_source = 0.5 * length * (source_start[i] + source_end[i + 1])
        perturbed_residual = (pert_end[i + 1] - pert_start[i]) + pert_source - pert_work
        rows.append({"t_start": times[i], "t_end": times[i + 1], "delta_energy": delta_energy,
                     "dissipation": dissipation, "density_work": work, "residual": residual,
                     "perturbed_residual": perturbed_residual})

    atom_rows = []
    for index, after in sorted(trajectory.post_kicks.items()):
        before = trajectory.states[index]
        h = after.v.coeffs - before.v.coeffs
        if mu is not None:
            lookup = np.searchsorted(mu.atom_times, times[index])
            h = mu.atom_values[lookup]
        work = _inner(0.5 * (before.v.coeffs + after.v.coeffs), h)
        exact = 0.5 * _inner(after.v.coeffs, after.v.coeffs) - 0.5 * _inner(before.v.coeffs, before.v.coeffs)
        perturbed_work = _inner(0.5 * (before.v.coeffs + after.v.coeffs) + delta * before.u.coeffs, h)
        perturbed_jump = (perturbed_energy(after, nonlinearity, gamma, delta)
                          - perturbed_energy(before, nonlinearity, gamma, delta))
        scale = max(1.0, abs(exact))
        atom_rows.append({"t": times[index], "work": work, "exact": exact,
                          "error": abs(work - exact) / scale,
                          "perturbed_error": abs(perturbed_work - perturbed_jump) / max(1.0, abs(perturbed_jump))})

    b_samples = [b_form(s, gamma, delta) for s in ends]
    result = EnergyLedger(
        intervals=pd.DataFrame(rows, columns=["t_start", "t_end", "delta_energy", "dissipation", "density_work",
                                              "residual", "perturbed_residual"]),
        atoms=pd.DataFrame(atom_rows, columns=["t", "work", "exact", "error", "perturbed_error"]),
        delta=delta,
        b_min_eigenvalue=b_form_min_eigenvalue(gamma, delta, float(trajectory.grid.eigenvalues.min())),
        b_min_sample=float(min(b_samples)) if b_samples else 0.0,
    )
    logger.debug(f"Enerji defteri: Σ|r|={result.total_abs_residual:.3e}, atom hatası={result.max_atom_error:.2e}")
    return result
