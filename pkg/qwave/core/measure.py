"""
Hilbert değerli ölçüler - atomlar + parçalı doğrusal yoğunluk gösterimi,
BV dağılım fonksiyonu, yaklaşım algoritmaları ve eşit-integrallenebilirlik tanıları

Ölçü M(a,b;H) elemanı olarak saklanır: sıralı atom listesi (t_k, h_k) ve
düğüm noktalarında değer verilen parçalı doğrusal yoğunluk ρ(t). Aynı zamanda
iki düğüm yoğunluğun sıçramasını gösterir. Tekil-sürekli kısım gösterimde yoktur.
"""
from dataclasses import dataclass
from functools import lru_cache
from typing import Callable, List, Optional, Sequence, Tuple, Union

import numpy as np
from numpy.polynomial.legendre import leggauss

from ..utils.config import RegularityKind
from ..utils.exceptions import (
    GridMismatchError,
    MeasureDomainError,
    PreconditionError,
    UndefinedPolarError,
)
from ..utils.logger import get_logger

logger = get_logger("measure")

ArrayLike = Union[np.ndarray, Sequence[float]]
VectorPath = Callable[[float], ArrayLike]


@lru_cache(maxsize=16)
def gauss_legendre(order: int) -> Tuple[np.ndarray, np.ndarray]:
    """[0,1] aralığına taşınmış Gauss-Legendre düğüm ve ağırlıkları"""
    nodes, weights = leggauss(order)
    return 0.5 * (nodes + 1.0), 0.5 * weights


@dataclass(frozen=True, eq=False)
class HilbertVector:
    """Kesilmiş Fourier tabanında katsayı vektörü (H = L² değer uzayı)"""
    coeffs: np.ndarray

    def __post_init__(self):
        coeffs = np.atleast_1d(np.asarray(self.coeffs))
        if coeffs.ndim != 1:
            coeffs = coeffs.ravel()
        if not np.all(np.isfinite(coeffs)):
            raise PreconditionError("HilbertVector sonlu olmayan katsayı içeriyor")
        object.__setattr__(self, "coeffs", coeffs)

    @property
    def dim(self) -> int:
        return int(self.coeffs.size)

    @classmethod
    def zeros(cls, dim: int, dtype=float) -> "HilbertVector":
        return cls(np.zeros(dim, dtype=dtype))

    @classmethod
    def basis(cls, dim: int, index: int, dtype=float) -> "HilbertVector":
        coeffs = np.zeros(dim, dtype=dtype)
        coeffs[index] = 1.0
        return cls(coeffs)

    def norm(self) -> float:
        return float(np.linalg.norm(self.coeffs))

    def inner(self, other: "HilbertVector") -> float:
        """Gerçel iç çarpım Re(u, v)"""
        _check_dims(self.dim, other.dim)
        return float(np.real(np.vdot(other.coeffs, self.coeffs)))

    def __add__(self, other: "HilbertVector") -> "HilbertVector":
        _check_dims(self.dim, other.dim)
        return HilbertVector(self.coeffs + other.coeffs)

    def __sub__(self, other: "HilbertVector") -> "HilbertVector":
        _check_dims(self.dim, other.dim)
        return HilbertVector(self.coeffs - other.coeffs)

    def __mul__(self, scalar: complex) -> "HilbertVector":
        return HilbertVector(self.coeffs * scalar)

    __rmul__ = __mul__

    def __neg__(self) -> "HilbertVector":
        return HilbertVector(-self.coeffs)


def _check_dims(expected: int, actual: int) -> None:
    if expected != actual:
        raise GridMismatchError(expected, actual)


def _as_values(value: Union[HilbertVector, ArrayLike]) -> np.ndarray:
    if isinstance(value, HilbertVector):
        return value.coeffs
    return np.atleast_1d(np.asarray(value))


def _segment_norm_integrals(v0: np.ndarray, v1: np.ndarray, lengths: np.ndarray) -> np.ndarray:
    """Her segment için ∫‖v0 + θ(v1−v0)‖ dt (kapalı form, asinh)"""
    delta = v1 - v0
    a = np.sum(np.abs(delta) ** 2, axis=1)
    b = 2.0 * np.real(np.sum(np.conj(v0) * delta, axis=1))
    c = np.sum(np.abs(v0) ** 2, axis=1)
    result = np.sqrt(c) * lengths

    scale = np.maximum(np.maximum(a, c), np.finfo(float).tiny)
    moving = a > 1e-28 * scale
    if np.any(moving):
        am, bm, cm = a[moving], b[moving], c[moving]
        p = bm / (2.0 * am)
        q = np.maximum(cm / am - p * p, 0.0)

        def primitive(x: np.ndarray) -> np.ndarray:
            value = 0.5 * x * np.abs(x)
            positive = q > 0.0
            if np.any(positive):
                xq, qq = x[positive], q[positive]
                value[positive] = 0.5 * (xq * np.sqrt(xq * xq + qq) + qq * np.arcsinh(xq / np.sqrt(qq)))
            return value

        result[moving] = np.sqrt(am) * (primitive(1.0 + p) - primitive(p)) * lengths[moving]
    return result


@dataclass(frozen=True, eq=False)
class VectorMeasure:
    """Sonlu pencerede Hilbert değerli ölçü: atomlar + parçalı doğrusal yoğunluk"""
    start: float
    end: float
    dim: int
    atom_times: Optional[np.ndarray] = None
    atom_values: Optional[np.ndarray] = None
    density_times: Optional[np.ndarray] = None
    density_values: Optional[np.ndarray] = None

    def __post_init__(self):
        start, end = float(self.start), float(self.end)
        if not (np.isfinite(start) and np.isfinite(end)) or end < start:
            raise MeasureDomainError(f"Geçersiz aralık [{start}, {end}]")
        object.__setattr__(self, "start", start)
        object.__setattr__(self, "end", end)

        a_times = np.zeros(0) if self.atom_times is None else np.asarray(self.atom_times, dtype=float).ravel()
        a_values = (np.zeros((0, self.dim)) if self.atom_values is None
                    else np.asarray(self.atom_values).reshape(a_times.size, self.dim))
        d_times = np.zeros(0) if self.density_times is None else np.asarray(self.density_times, dtype=float).ravel()
        d_values = (np.zeros((0, self.dim)) if self.density_values is None
                    else np.asarray(self.density_values).reshape(d_times.size, self.dim))

        if a_times.size and (a_times.min() < start or a_times.max() > end):
            raise MeasureDomainError(f"Atom zamanı [{start}, {end}] dışında")
        if not (np.all(np.isfinite(a_values)) and np.all(np.isfinite(d_values))):
            raise PreconditionError("Ölçü sonlu olmayan değer içeriyor")

        # Aynı zamandaki atomlar toplanır, sıfır atomlar atılır
        if a_times.size:
            unique_times, inverse = np.unique(a_times, return_inverse=True)
            merged = np.zeros((unique_times.size, self.dim), dtype=a_values.dtype)
            np.add.at(merged, inverse, a_values)
            keep = np.any(merged != 0, axis=1)
            a_times, a_values = unique_times[keep], merged[keep]

        if d_times.size == 1:
            d_times, d_values = np.zeros(0), np.zeros((0, self.dim), dtype=d_values.dtype)
        if d_times.size:
            if np.any(np.diff(d_times) < 0):
                raise PreconditionError("Yoğunluk düğümleri artan sırada olmalı")
            if d_times[0] < start or d_times[-1] > end:
                raise MeasureDomainError(f"Yoğunluk düğümü [{start}, {end}] dışında")
            if d_times.size > 2 and np.any((d_times[2:] == d_times[:-2])):
                raise PreconditionError("Bir zamanda en fazla iki yoğunluk düğümü olabilir")

        object.__setattr__(self, "atom_times", a_times)
        object.__setattr__(self, "atom_values", a_values)
        object.__setattr__(self, "density_times", d_times)
        object.__setattr__(self, "density_values", d_values)

    # Kurucular

    @classmethod
    def zero(cls, start: float, end: float, dim: int) -> "VectorMeasure":
        return cls(start, end, dim)

    @classmethod
    def from_atoms(cls, start: float, end: float, atoms: Sequence[Tuple[float, Union[HilbertVector, ArrayLike]]],
                   dim: Optional[int] = None) -> "VectorMeasure":
        if not atoms:
            return cls(start, end, dim or 1)
        values = np.array([_as_values(v) for _, v in atoms])
        return cls(start, end, values.shape[1], [t for t, _ in atoms], values)

    @classmethod
    def from_density(cls, start: float, end: float, times: ArrayLike, values: np.ndarray) -> "VectorMeasure":
        values = np.asarray(values)
        if values.ndim == 1:
            values = values[:, None]
        return cls(start, end, values.shape[1], density_times=times, density_values=values)

    # Temel özellikler

    @property
    def dtype(self):
        return np.result_type(self.atom_values.dtype, self.density_values.dtype)

    @property
    def has_density(self) -> bool:
        return self.density_times.size >= 2

    @property
    def is_atomic(self) -> bool:
        return not self.has_density or not np.any(self.density_values != 0)

    @property
    def breakpoints(self) -> np.ndarray:
        return np.unique(np.concatenate([self.atom_times, self.density_times]))

    def _interp(self, ts: ArrayLike, side: str) -> np.ndarray:
        ts = np.atleast_1d(np.asarray(ts, dtype=float))
        out = np.zeros((ts.size, self.dim), dtype=np.result_type(self.density_values.dtype, float))
        times, values = self.density_times, self.density_values
        count = times.size
        if count < 2:
            return out
        if side == "right":
            j = np.searchsorted(times, ts, side="right") - 1
            valid = (j >= 0) & (j < count - 1)
        else:
            j = np.searchsorted(times, ts, side="left") - 1
            valid = (j >= 0) & (j < count - 1)
        jv = j[valid]
        t0, t1 = times[jv], times[jv + 1]
        w = ((ts[valid] - t0) / (t1 - t0))[:, None]
        out[valid] = values[jv] * (1.0 - w) + values[jv + 1] * w
        return out

    def density_right(self, ts: ArrayLike) -> np.ndarray:
        """ρ(t+0) değerleri, (n, dim)"""
        return self._interp(ts, "right")

    def density_left(self, ts: ArrayLike) -> np.ndarray:
        """ρ(t−0) değerleri, (n, dim)"""
        return self._interp(ts, "left")

    def density_cumulative(self, ts: ArrayLike) -> np.ndarray:
        """∫_{start}^{t} ρ(s) ds, yamuk kuralıyla tam"""
        ts = np.atleast_1d(np.asarray(ts, dtype=float))
        out = np.zeros((ts.size, self.dim), dtype=np.result_type(self.density_values.dtype, float))
        times, values = self.density_times, self.density_values
        count = times.size
        if count < 2:
            return out
        segments = 0.5 * np.diff(times)[:, None] * (values[1:] + values[:-1])
        cumulative = np.vstack([np.zeros((1, self.dim), dtype=out.dtype), np.cumsum(segments, axis=0)])
        j = np.searchsorted(times, ts, side="right") - 1
        after = j >= count - 1
        out[after] = cumulative[-1]
        inside = (j >= 0) & ~after
        ji = j[inside]
        rho_t = self.density_right(ts[inside])
        out[inside] = cumulative[ji] + 0.5 * (ts[inside] - times[ji])[:, None] * (values[ji] + rho_t)
        return out

    def atoms_between(self, s: float, t: float, left_closed: bool = True,
                      right_closed: bool = False) -> Tuple[np.ndarray, np.ndarray]:
        """[s,t) (veya verilen parantezler) içindeki atomlar"""
        times = self.atom_times
        lower = times >= s if left_closed else times > s
        upper = times <= t if right_closed else times < t
        mask = lower & upper
        return times[mask], self.atom_values[mask]

    # Dönüşümler

    def scale(self, factor: complex) -> "VectorMeasure":
        return VectorMeasure(self.start, self.end, self.dim, self.atom_times, self.atom_values * factor,
                             self.density_times, self.density_values * factor)

    def translate(self, shift: float) -> "VectorMeasure":
        """Zaman ekseninde öteleme: t ↦ t + shift"""
        return VectorMeasure(self.start + shift, self.end + shift, self.dim, self.atom_times + shift,
                             self.atom_values, self.density_times + shift, self.density_values)

    def extend(self, start: float, end: float) -> "VectorMeasure":
        """Tanım aralığını genişlet (değerler aynı kalır)"""
        if start > self.start or end < self.end:
            raise MeasureDomainError(f"[{start}, {end}] aralığı [{self.start}, {self.end}] aralığını içermiyor")
        return VectorMeasure(start, end, self.dim, self.atom_times, self.atom_values,
                             self.density_times, self.density_values)

    def restrict(self, s: float, t: float) -> "VectorMeasure":
        """[s,t] kapalı penceresine kısıtlama"""
        if s < self.start or t > self.end or s > t:
            raise MeasureDomainError(f"[{s}, {t}] penceresi [{self.start}, {self.end}] dışında")
        a_times, a_values = self.atoms_between(s, t, True, True)
        d_times = np.zeros(0)
        d_values = np.zeros((0, self.dim), dtype=self.density_values.dtype)
        if self.has_density and t > s and self.density_times[0] < t and self.density_times[-1] > s:
            inner = (self.density_times > s) & (self.density_times < t)
            d_times = np.concatenate([[s], self.density_times[inner], [t]])
            d_values = np.vstack([self.density_right([s]), self.density_values[inner], self.density_left([t])])
        return VectorMeasure(s, t, self.dim, a_times, a_values, d_times, d_values)

    def map_values(self, func: Callable[[np.ndarray], np.ndarray]) -> "VectorMeasure":
        """Tüm atom ve düğüm değerlerine doğrusal bir dönüşüm uygula"""
        return VectorMeasure(self.start, self.end, self.dim, self.atom_times, func(self.atom_values),
                             self.density_times, func(self.density_values))

    def _combine(self, other: "VectorMeasure", sign: float) -> "VectorMeasure":
        _check_dims(self.dim, other.dim)
        if self.start != other.start or self.end != other.end:
            raise MeasureDomainError(
                f"Farklı aralıklar: [{self.start}, {self.end}] ve [{other.start}, {other.end}]")
        a_times = np.concatenate([self.atom_times, other.atom_times])
        a_values = np.vstack([self.atom_values, sign * other.atom_values])
        times = np.unique(np.concatenate([self.density_times, other.density_times]))
        if times.size == 0:
            return VectorMeasure(self.start, self.end, self.dim, a_times, a_values)
        left = self.density_left(times) + sign * other.density_left(times)
        right = self.density_right(times) + sign * other.density_right(times)
        jump = np.any(left != right, axis=1)
        repeats = np.where(jump, 2, 1)
        d_times = np.repeat(times, repeats)
        d_values = np.empty((d_times.size, self.dim), dtype=left.dtype)
        positions = np.cumsum(repeats) - repeats
        d_values[positions] = left
        d_values[positions[jump] + 1] = right[jump]
        return VectorMeasure(self.start, self.end, self.dim, a_times, a_values, d_times, d_values)

    def __add__(self, other: "VectorMeasure") -> "VectorMeasure":
        return self._combine(other, 1.0)

    def __sub__(self, other: "VectorMeasure") -> "VectorMeasure":
        return self._combine(other, -1.0)

    def __neg__(self) -> "VectorMeasure":
        return self.scale(-1.0)


def _check_time(mu: VectorMeasure, t: float) -> None:
    if t < mu.start or t > mu.end:
        raise MeasureDomainError(f"t={t} [{mu.start}, {mu.end}] dışında", value=t)


def total_variation(mu: VectorMeasure) -> float:
    """|μ|([a,b]) = Σ‖h_k‖ + ∫‖ρ(t)‖ dt (segment başına kapalı form)"""
    atoms = float(np.sum(np.linalg.norm(mu.atom_values, axis=1))) if mu.atom_times.size else 0.0
    if not mu.has_density:
        return atoms
    lengths = np.diff(mu.density_times)
    integrals = _segment_norm_integrals(mu.density_values[:-1], mu.density_values[1:], lengths)
    return atoms + float(np.sum(integrals))


def distribution_values(mu: VectorMeasure, ts: ArrayLike) -> np.ndarray:
    """Φ_μ(t) = μ([a,t)) (t = b için μ([a,b])) vektörel değerlendirme"""
    ts = np.atleast_1d(np.asarray(ts, dtype=float))
    if ts.size and (ts.min() < mu.start or ts.max() > mu.end):
        raise MeasureDomainError(f"Değerlendirme noktası [{mu.start}, {mu.end}] dışında")
    out = mu.density_cumulative(ts).astype(np.result_type(mu.dtype, float))
    if mu.atom_times.size:
        cumulative = np.vstack([np.zeros((1, mu.dim), dtype=mu.atom_values.dtype),
                                np.cumsum(mu.atom_values, axis=0)])
        count = np.searchsorted(mu.atom_times, ts, side="left")
        at_end = ts == mu.end
        count[at_end] = np.searchsorted(mu.atom_times, ts[at_end], side="right")
        out = out + cumulative[count]
    return out


def distribution(mu: VectorMeasure, t: float) -> HilbertVector:
    """Sol-sürekli dağılım fonksiyonu Φ_μ(t)"""
    _check_time(mu, t)
    return HilbertVector(distribution_values(mu, [t])[0])


class DistributionFunction:
    """Ölçüye bağlı BV fonksiyonu Φ_μ"""

    def __init__(self, mu: VectorMeasure):
        self.measure = mu

    def __call__(self, t: float) -> HilbertVector:
        return distribution(self.measure, t)

    def values(self, ts: ArrayLike) -> np.ndarray:
        return distribution_values(self.measure, ts)

    def jump(self, t: float) -> HilbertVector:
        """Φ(t+0) − Φ(t) = μ({t})"""
        return interval_value(self.measure, t, t, True, True)

    def variation(self, levels: Sequence[int], resolve_atoms: bool = False) -> List[float]:
        """Dyadik bölüntülerde Σ‖Φ(t_{i+1}) − Φ(t_i)‖ (alttan yakınsar)"""
        mu = self.measure
        results = []
        for level in levels:
            points = np.linspace(mu.start, mu.end, 2 ** int(level) + 1)
            if resolve_atoms:
                points = np.unique(np.concatenate([points, mu.atom_times]))
            values = distribution_values(mu, points)
            results.append(float(np.sum(np.linalg.norm(np.diff(values, axis=0), axis=1))))
        return results


def interval_value(mu: VectorMeasure, s: float, t: float, left_closed: bool = True,
                   right_closed: bool = False) -> HilbertVector:
    """μ(⟨s,t⟩) dört parantez kombinasyonunun hepsi için"""
    if s > t:
        raise MeasureDomainError(f"s={s} > t={t}")
    _check_time(mu, s)
    _check_time(mu, t)
    value = np.zeros(mu.dim, dtype=np.result_type(mu.dtype, float))
    if t > s:
        cumulative = mu.density_cumulative([s, t])
        value = value + (cumulative[1] - cumulative[0])
    _, atoms = mu.atoms_between(s, t, left_closed, right_closed)
    if atoms.size:
        value = value + atoms.sum(axis=0)
    return HilbertVector(value)


def _quadrature_plan(mu: VectorMeasure, s: float, t: float, knots: Optional[ArrayLike] = None,
                     max_length: Optional[float] = None, order: int = 8) -> Tuple[np.ndarray, np.ndarray]:
    """[s,t] ∩ yoğunluk desteği üzerinde bölünmüş Gauss-Legendre düğümleri"""
    if not mu.has_density or t <= s:
        return np.zeros(0), np.zeros(0)
    lo, hi = max(s, mu.density_times[0]), min(t, mu.density_times[-1])
    if hi <= lo:
        return np.zeros(0), np.zeros(0)
    cuts = [np.array([lo, hi]), mu.density_times[(mu.density_times > lo) & (mu.density_times < hi)]]
    if knots is not None:
        knots = np.asarray(knots, dtype=float)
        cuts.append(knots[(knots > lo) & (knots < hi)])
    edges = np.unique(np.concatenate(cuts))
    if max_length is not None and max_length > 0:
        pieces = []
        for left, right in zip(edges[:-1], edges[1:]):
            count = max(1, int(np.ceil((right - left) / max_length)))
            pieces.append(np.linspace(left, right, count + 1)[:-1])
        edges = np.concatenate(pieces + [[edges[-1]]])
    nodes01, weights01 = gauss_legendre(order)
    lengths = np.diff(edges)
    nodes = (edges[:-1, None] + lengths[:, None] * nodes01[None, :]).ravel()
    weights = (lengths[:, None] * weights01[None, :]).ravel()
    return nodes, weights


def integrate_against(f: VectorPath, mu: VectorMeasure, order: int = 8) -> float:
    """∫(f(t), μ(dt)) = Σ(f(t_k), h_k) + ∫(f(t), ρ(t)) dt"""
    total = 0.0
    for t_k, h_k in zip(mu.atom_times, mu.atom_values):
        total += float(np.real(np.vdot(h_k, _as_values(f(t_k)))))
    nodes, weights = _quadrature_plan(mu, mu.start, mu.end, order=order)
    if nodes.size:
        rho = mu.density_right(nodes)
        values = np.array([_as_values(f(t)) for t in nodes])
        total += float(np.sum(weights * np.real(np.sum(np.conj(rho) * values, axis=1))))
    return total


def integrate_scalar(phi: Callable[[float], float], mu: VectorMeasure, knots: Optional[ArrayLike] = None,
                     order: int = 8) -> np.ndarray:
    """∫ φ(t) μ(dt) skaler test fonksiyonu için (H değerli sonuç)"""
    result = np.zeros(mu.dim, dtype=np.result_type(mu.dtype, float))
    if mu.atom_times.size:
        weights = np.array([phi(t) for t in mu.atom_times])
        result = result + weights @ mu.atom_values
    nodes, quad = _quadrature_plan(mu, mu.start, mu.end, knots=knots, order=order)
    if nodes.size:
        values = np.array([phi(t) for t in nodes])
        result = result + (quad * values) @ mu.density_right(nodes)
    return result


def weighted_variation(mu: VectorMeasure, weight: Callable[[np.ndarray], np.ndarray], s: float, t: float,
                       order: int = 8) -> float:
    """∫_{[s,t)} w(r) |μ|(dr) (atomlar tam, yoğunluk Gauss-Legendre ile)"""
    times, values = mu.atoms_between(s, t, True, False)
    total = float(np.sum(weight(times) * np.linalg.norm(values, axis=1))) if times.size else 0.0
    nodes, quad = _quadrature_plan(mu, s, t, order=order)
    if nodes.size:
        total += float(np.sum(quad * weight(nodes) * np.linalg.norm(mu.density_right(nodes), axis=1)))
    return total


def by_parts_residual(f: VectorPath, df: VectorPath, mu: VectorMeasure, max_length: float = 0.05,
                      order: int = 8) -> float:
    """|∫f dμ − ((f(b), Φ(b)) − ∫(f'(t), Φ(t)) dt)| kısmi integrasyon kalıntısı"""
    lhs = integrate_against(f, mu, order=order)
    boundary = float(np.real(np.vdot(distribution_values(mu, [mu.end])[0], _as_values(f(mu.end)))))
    edges = np.unique(np.concatenate([[mu.start, mu.end], mu.breakpoints]))
    pieces = []
    for left, right in zip(edges[:-1], edges[1:]):
        count = max(1, int(np.ceil((right - left) / max_length)))
        pieces.append(np.linspace(left, right, count + 1)[:-1])
    edges = np.concatenate(pieces + [[mu.end]])
    nodes01, weights01 = gauss_legendre(order)
    lengths = np.diff(edges)
    nodes = (edges[:-1, None] + lengths[:, None] * nodes01[None, :]).ravel()
    weights = (lengths[:, None] * weights01[None, :]).ravel()
    phi = distribution_values(mu, nodes)
    derivative = np.array([_as_values(df(t)) for t in nodes])
    interior = float(np.sum(weights * np.real(np.sum(np.conj(phi) * derivative, axis=1))))
    return abs(lhs - (boundary - interior))


def abs_measure(mu: VectorMeasure, refine: int = 16) -> VectorMeasure:
    """|μ| skaler ölçü olarak; skaler gerçel yoğunlukta tam, aksi halde inceltilmiş örnekleme"""
    atom_norms = np.linalg.norm(mu.atom_values, axis=1)
    if not mu.has_density:
        return VectorMeasure(mu.start, mu.end, 1, mu.atom_times, atom_norms[:, None])
    times, values = mu.density_times, mu.density_values
    if mu.dim == 1 and not np.iscomplexobj(values):
        new_times, new_values = [times[0]], [abs(values[0, 0])]
        for i in range(times.size - 1):
            t0, t1, v0, v1 = times[i], times[i + 1], values[i, 0], values[i + 1, 0]
            if t1 > t0 and v0 * v1 < 0:
                new_times.append(t0 + (t1 - t0) * v0 / (v0 - v1))
                new_values.append(0.0)
            new_times.append(t1)
            new_values.append(abs(v1))
        d_times, d_values = np.array(new_times), np.array(new_values)[:, None]
    else:
        pieces_t, pieces_v = [], []
        for i in range(times.size - 1):
            t0, t1 = times[i], times[i + 1]
            if t1 == t0:
                continue
            theta = np.linspace(0.0, 1.0, refine + 1)
            pieces_t.append(t0 + (t1 - t0) * theta)
            pieces_v.append(np.linalg.norm(values[i][None, :] * (1 - theta[:, None])
                                           + values[i + 1][None, :] * theta[:, None], axis=1))
        d_times, d_values = np.concatenate(pieces_t), np.concatenate(pieces_v)[:, None]
        # Segment uçlarındaki tekrarlar sıçramaları korur; ardışık eşit düğümleri birleştir
        keep = np.ones(d_times.size, dtype=bool)
        same = (np.diff(d_times) == 0) & (np.diff(d_values[:, 0]) == 0)
        keep[1:][same] = False
        d_times, d_values = d_times[keep], d_values[keep]
    return VectorMeasure(mu.start, mu.end, 1, mu.atom_times, atom_norms[:, None], d_times, d_values)


@dataclass(frozen=True, eq=False)
class PolarDecomposition:
    """μ = ρ_μ |μ| ayrışımı; yönler birim normlu"""
    measure: VectorMeasure
    atom_weights: np.ndarray
    atom_directions: np.ndarray

    def density_norm(self, t: float) -> float:
        return float(np.linalg.norm(self.measure.density_right([t])[0]))

    def direction(self, t: float) -> np.ndarray:
        """ρ_μ(t): atomda h_k/‖h_k‖, yoğunluk desteğinde ρ(t)/‖ρ(t)‖"""
        mu = self.measure
        index = np.searchsorted(mu.atom_times, t)
        if index < mu.atom_times.size and mu.atom_times[index] == t:
            return self.atom_directions[index]
        rho = mu.density_right([t])[0]
        norm = np.linalg.norm(rho)
        if norm == 0.0:
            raise UndefinedPolarError(f"t={t} noktası |μ| desteğinde değil")
        return rho / norm

    def abs_measure(self, refine: int = 16) -> VectorMeasure:
        return abs_measure(self.measure, refine)

    def reconstruct(self, s: float, t: float, left_closed: bool = True, right_closed: bool = False,
                    order: int = 8) -> HilbertVector:
        """∫_A ρ_μ d|μ| yeniden kurulumu"""
        mu = self.measure
        if s > t:
            raise MeasureDomainError(f"s={s} > t={t}")
        value = np.zeros(mu.dim, dtype=np.result_type(mu.dtype, float))
        times = mu.atom_times
        mask = (times >= s if left_closed else times > s) & (times <= t if right_closed else times < t)
        if np.any(mask):
            value = value + (self.atom_weights[mask, None] * self.atom_directions[mask]).sum(axis=0)
        nodes, weights = _quadrature_plan(mu, s, t, order=order)
        for node, weight in zip(nodes, weights):
            rho = mu.density_right([node])[0]
            norm = np.linalg.norm(rho)
            if norm > 0.0:
                value = value + weight * norm * (rho / norm)
        return HilbertVector(value)


def polar_decompose(mu: VectorMeasure) -> PolarDecomposition:
    """Polar ayrışım; sıfır ölçüde tanımsız"""
    if total_variation(mu) == 0.0:
        raise UndefinedPolarError("Sıfır ölçünün polar ayrışımı tanımsız")
    weights = np.linalg.norm(mu.atom_values, axis=1)
    directions = mu.atom_values / weights[:, None] if weights.size else mu.atom_values
    return PolarDecomposition(mu, weights, directions)


def delta_approximation(mu: VectorMeasure, n: int) -> VectorMeasure:
    """Düzgün ızgarada ayrık yaklaşım: atomlar aynen, hücre kütleleri t_k noktasına"""
    if n < 1:
        raise PreconditionError(f"Bölüntü sayısı pozitif olmalı: {n}")
    grid = mu.start + (mu.end - mu.start) * np.arange(n + 1) / n
    grid[-1] = mu.end
    times = [mu.atom_times]
    values = [mu.atom_values]
    if mu.has_density:
        cumulative = mu.density_cumulative(grid)
        times.append(grid[:-1])
        values.append(np.diff(cumulative, axis=0))
    dtype = np.result_type(*[v.dtype for v in values])
    return VectorMeasure(mu.start, mu.end, mu.dim, np.concatenate(times),
                         np.vstack([v.astype(dtype) for v in values]))


def mollify(mu: VectorMeasure, n: int, oversample: int = 8) -> VectorMeasure:
    """Genişliği 1/n olan şapka çekirdeğiyle düzgünleştirme.

    Kütle her noktanın sağına dağıtılır, böylece Φ_n(t) Φ'nin [t−1/n, t]
    üzerindeki ortalamasıdır ve sıçrama noktalarında da Φ(t)'ye yakınsar.
    Pencere sonunu aşan kütle kesilir.
    """
    if n < 1:
        raise PreconditionError(f"Çekirdek indeksi pozitif olmalı: {n}")
    m = oversample + (oversample % 2)
    if mu.end == mu.start or (not mu.atom_times.size and not mu.has_density):
        return VectorMeasure.zero(mu.start, mu.end, mu.dim)
    width = 1.0 / n
    step = width / m
    cells = int(np.ceil((mu.end - mu.start) / step - 1e-9))
    grid = mu.start + step * np.arange(cells + 1)
    dtype = np.result_type(mu.dtype, float)
    masses = np.zeros((cells + 1, mu.dim), dtype=dtype)
    if mu.atom_times.size:
        index = np.clip(np.ceil((mu.atom_times - mu.start) / step - 1e-9).astype(int), 0, cells)
        np.add.at(masses, index, mu.atom_values)
    if mu.has_density:
        edges = np.minimum(grid, mu.end)
        masses[:-1] += np.diff(mu.density_cumulative(edges), axis=0)

    kernel = (2.0 / width) * np.minimum(np.arange(m + 1), m - np.arange(m + 1)) / (m / 2)
    values = np.zeros((cells + m + 1, mu.dim), dtype=dtype)
    for k in range(1, m):
        values[k:k + cells + 1] += kernel[k] * masses
    nodes = mu.start + step * np.arange(cells + m + 1)

    inside = nodes < mu.end
    last = int(np.count_nonzero(inside))
    w = (mu.end - nodes[last - 1]) / step
    end_value = values[last - 1] * (1.0 - w) + values[last] * w
    d_times = np.concatenate([nodes[:last], [mu.end]])
    d_values = np.vstack([values[:last], end_value[None, :]])
    return VectorMeasure(mu.start, mu.end, mu.dim, density_times=d_times, density_values=d_values)


def project_tail(mu: VectorMeasure, n_modes: int, order: Optional[np.ndarray] = None) -> Tuple[VectorMeasure, float]:
    """Q_N μ: ilk N modu (verilen sırada) sıfırla; (Q_N μ, TV) döndür"""
    if n_modes < 0 or n_modes > mu.dim:
        raise PreconditionError(f"Kesme {n_modes} boyut {mu.dim} ile uyumsuz")
    order = np.arange(mu.dim) if order is None else np.asarray(order)
    head = order[:n_modes]

    def zero_head(values: np.ndarray) -> np.ndarray:
        values = values.copy()
        values[:, head] = 0
        return values

    tail = mu.map_values(zero_head)
    return tail, total_variation(tail)


def equi_integrability_modulus(measures: Sequence[VectorMeasure], windows: ArrayLike,
                               refine: int = 16) -> np.ndarray:
    """ω(h) = max_μ sup_{|A|=h} ∫_A ‖ρ‖ (azalan yeniden düzenleme ile)"""
    windows = np.atleast_1d(np.asarray(windows, dtype=float))
    omega = np.zeros(windows.size)
    for mu in measures:
        if mu.atom_times.size:
            raise PreconditionError("Eşit-integrallenebilirlik sadece mutlak sürekli ölçüler için tanımlı")
        if not mu.has_density:
            continue
        times, values = mu.density_times, mu.density_values
        lengths, norms = [], []
        theta = (np.arange(refine) + 0.5) / refine
        for i in range(times.size - 1):
            length = times[i + 1] - times[i]
            if length == 0:
                continue
            samples = values[i][None, :] * (1 - theta[:, None]) + values[i + 1][None, :] * theta[:, None]
            norms.append(np.linalg.norm(samples, axis=1))
            lengths.append(np.full(refine, length / refine))
        norms_all, lengths_all = np.concatenate(norms), np.concatenate(lengths)
        ordering = np.argsort(-norms_all, kind="stable")
        cum_length = np.concatenate([[0.0], np.cumsum(lengths_all[ordering])])
        cum_mass = np.concatenate([[0.0], np.cumsum((norms_all * lengths_all)[ordering])])
        omega = np.maximum(omega, np.interp(windows, cum_length, cum_mass))
    return omega


def regularity_gap(mu: VectorMeasure, kind: RegularityKind, n: int,
                   order: Optional[np.ndarray] = None) -> float:
    """TV(μ − yaklaşım): uzayda P_n izdüşümü, zamanda mollify"""
    kind = RegularityKind(kind)
    if kind == RegularityKind.SPACE:
        return project_tail(mu, min(n, mu.dim), order)[1]
    return total_variation(mu - mollify(mu, n))


def mode_rotating_measure(first: int, last: int, dim: int, oscillating: bool = False,
                          nodes_per_unit: int = 256) -> VectorMeasure:
    """Σ χ_[n,n+1) e_n (veya sin(n² t) χ_[n,n+1) e_n) ölçüsü [first, last] üzerinde"""
    if last > dim:
        raise PreconditionError(f"Mod {last - 1} boyut {dim} dışında")
    times, values = [], []
    for n in range(first, last):
        if oscillating:
            local = np.linspace(n, n + 1, nodes_per_unit + 1)
            profile = np.sin(n * n * local)
        else:
            local = np.array([float(n), float(n + 1)])
            profile = np.ones(2)
        block = np.zeros((local.size, dim))
        block[:, n] = profile
        times.append(local)
        values.append(block)
    return VectorMeasure(float(first), float(last), dim, density_times=np.concatenate(times),
                         density_values=np.vstack(values))
