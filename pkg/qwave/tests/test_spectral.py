"""
Test: Spektral modül
Mod ızgarası, normlar, dolgulu doğrusal olmayan terim ve izdüşümler
"""
import numpy as np
import pytest

from qwave.core.spectral import (
    ModeGrid,
    SpectralField,
    StatePair,
    apply_pointwise,
    dump_field,
    embedding_constant,
    interpolation_check,
    interpolation_ratio,
    load_field,
    norm_hap,
    norm_hs,
    norm_lp,
    project,
    random_field,
    state_vector,
    strichartz_family,
    strichartz_windows,
    truncate,
    window_norm,
)
from qwave.utils.exceptions import ConfigurationError, GridMismatchError, PreconditionError

SQRT_2PI = np.sqrt(2.0 * np.pi)


class TestModeGrid:
    """ModeGrid test sınıfı"""

    def test_invalid_grids(self):
        with pytest.raises(ConfigurationError):
            ModeGrid(2, 16)
        with pytest.raises(ConfigurationError):
            ModeGrid(1, 15)

    def test_eigenvalues_and_nyquist(self, grid):
        """λ_k = 1 + |k|², Nyquist modu maskelenir"""
        assert grid.dim == 16
        assert grid.eigenvalues[grid.index_of([3])] == 10.0
        assert np.count_nonzero(~grid.mask) == 1
        assert grid.max_eigenvalue == 50.0

    def test_three_dimensional(self):
        grid = ModeGrid(3, 8)

        assert grid.dim == 512
        assert grid.eigenvalues[grid.index_of([1, -1, 2])] == 7.0

    def test_mode_outside_grid(self, grid):
        with pytest.raises(ConfigurationError):
            grid.index_of([8])
        with pytest.raises(ConfigurationError):
            grid.index_of([1, 0])

    def test_vector_from_modes_is_real(self, grid):
        coeffs = grid.vector_from_modes([([2], 1.0 + 2.0j)])
        field = SpectralField(grid, coeffs)

        assert field.real_symmetric()
        assert coeffs[grid.index_of([-2])] == pytest.approx(1.0 - 2.0j)


class TestFields:
    """Alan dönüşümleri ve normlar"""

    def test_constant_field(self, grid):
        """Sıfır modunda √(2π) katsayısı u ≡ 1 verir"""
        field = SpectralField(grid, grid.vector_from_modes([([0], SQRT_2PI)]))

        assert np.allclose(field.physical(), 1.0)
        assert norm_lp(field, np.inf) == pytest.approx(1.0)

    def test_parseval(self, grid, rng):
        """Dolgulu ızgarada L² normu katsayı normuna eşit"""
        field = random_field(grid, rng)

        assert norm_lp(field, 2.0) == pytest.approx(norm_hs(field, 0.0), rel=1e-12)
        assert norm_hap(field, 1.0, 2.0) == pytest.approx(norm_hs(field, 1.0), rel=1e-12)

    def test_quintic_is_dealiased(self, grid):
        """cos⁵x katsayısı 5. modda √(2π)/32"""
        field = SpectralField(grid, grid.vector_from_modes([([1], SQRT_2PI / 2.0)]))
        fifth = apply_pointwise(lambda u: u ** 5, field)

        assert np.allclose(field.physical(), np.cos(2.0 * np.pi * np.arange(48) / 48))
        assert fifth.coeffs[grid.index_of([5])] == pytest.approx(SQRT_2PI / 32.0)
        assert fifth.coeffs[grid.index_of([3])] == pytest.approx(5.0 * SQRT_2PI / 32.0)
        assert fifth.coeffs[grid.index_of([2])] == pytest.approx(0.0, abs=1e-14)

    def test_grid_mismatch(self, grid):
        with pytest.raises(GridMismatchError):
            SpectralField.zeros(grid) + SpectralField.zeros(ModeGrid(1, 8))

    def test_energy_norm(self, grid):
        """‖ξ‖²_E = Σ λ|u_k|² + |v_k|²"""
        u = SpectralField(grid, grid.vector_from_modes([([1], 1.0)]))
        v = SpectralField(grid, grid.vector_from_modes([([0], 3.0)]))
        xi = StatePair(u, v)

        assert xi.energy_norm() == pytest.approx(np.sqrt(2.0 * 2.0 + 9.0))
        assert np.linalg.norm(state_vector(xi, "energy")) == pytest.approx(xi.energy_norm())

    def test_state_vector_kind(self, grid):
        with pytest.raises(PreconditionError):
            state_vector(StatePair.zeros(grid), "strong")

    def test_kick_only_changes_velocity(self, grid):
        xi = StatePair.zeros(grid).kick(grid.vector_from_modes([([1], 1.0)]))

        assert np.all(xi.u.coeffs == 0)
        assert xi.v.coeffs[grid.index_of([1])] == 1.0


class TestProjections:
    """P_N / Q_N izdüşümleri ve kesme"""

    def test_projection_splits_state(self, grid, rng):
        xi = StatePair(random_field(grid, rng), random_field(grid, rng))
        head, tail = project(xi, 4)

        assert ((head + tail) - xi).energy_norm() == pytest.approx(0.0, abs=1e-14)
        assert np.all(head.u.coeffs[np.abs(grid.wavevectors[:, 0]) > 2] == 0)

    def test_projection_bounds(self, grid):
        with pytest.raises(PreconditionError):
            project(StatePair.zeros(grid), 32)

    def test_truncate_keeps_shared_modes(self, rng):
        fine = ModeGrid(1, 32)
        coarse = ModeGrid(1, 16)
        field = random_field(fine, rng)
        cut = truncate(field, coarse)

        for k in range(-7, 8):
            assert cut.coeffs[coarse.index_of([k])] == field.coeffs[fine.index_of([k])]
        with pytest.raises(GridMismatchError):
            truncate(cut, fine)

    def test_field_dump(self, grid, rng, tmp_path):
        """Döküm başlığı ızgarayı taşır"""
        field = random_field(grid, rng)
        path = dump_field(tmp_path / "field.csv", field)

        assert path.read_text(encoding="utf-8").startswith("# d=1 N=16 padding=3")
        assert np.array_equal(load_field(path, grid).coeffs, field.coeffs)


class TestInequalities:
    """İnterpolasyon ve gömme kontrolleri"""

    def test_interpolation_spot_check(self, grid, rng):
        """200 rastgele alan için ‖u‖_{H^α} ≤ 1.0001·‖u‖^s_{H^{α₁}}‖u‖^{1−s}_{H^{α₂}}"""
        fields = [random_field(grid, rng, decay=rng.uniform(0.5, 2.0)) for _ in range(200)]
        worst, passed = interpolation_check(fields, 2.0, 0.0, 0.3)

        assert passed
        assert 0.0 < worst <= 1.0 + 1e-12

    def test_interpolation_single_mode_is_sharp(self, grid):
        """Tek mod için eşitlik"""
        field = SpectralField(grid, grid.vector_from_modes([([3], 1.0)]))

        assert interpolation_ratio(field, 1.0, -1.0, 0.25) == pytest.approx(1.0, rel=1e-12)
        assert interpolation_ratio(SpectralField.zeros(grid), 1.0, 0.0, 0.5) == 0.0
        with pytest.raises(PreconditionError):
            interpolation_ratio(field, 1.0, 0.0, 1.5)

    def test_embedding_constant_is_stable(self, rng):
        """‖u‖_{L⁶} ≤ C‖u‖_{H¹}: C ızgara inceldikçe büyümez"""
        fine = ModeGrid(1, 64)
        fields = [random_field(fine, rng) for _ in range(20)]
        constants = [embedding_constant([truncate(u, ModeGrid(1, n)) for u in fields]) for n in (8, 16, 32)]
        constants.append(embedding_constant(fields))

        assert min(constants) > 0.0
        assert max(constants) / min(constants) < 1.5
        assert embedding_constant([SpectralField.zeros(fine)]) == 0.0


class TestStrichartz:
    """Pencere normları"""

    def test_family(self):
        assert strichartz_family(0.5) == (4.0, 12.0)
        with pytest.raises(PreconditionError):
            strichartz_family(1.0)

    def test_window_norm(self):
        """Sabit c için (∫ c⁴)^{1/4} = c"""
        assert window_norm(np.full(11, 2.0), 0.1, 4.0) == pytest.approx(2.0)
        with pytest.raises(PreconditionError):
            window_norm([1.0, 1.0], 0.1, 4.0)

    def test_consecutive_windows(self):
        times = np.linspace(0.0, 3.0, 301)
        starts, values = strichartz_windows(times, np.ones_like(times), 0.01)

        assert starts.tolist() == pytest.approx([0.0, 1.0, 2.0])
        assert values == pytest.approx(np.ones(3))

    def test_windows_interpolate_cubically(self):
        """Seyrek örneklenmiş t² eğrisi: pencere normu (∫₀¹ t⁸ dt)^{1/4}"""
        times = np.linspace(0.0, 3.0, 13)
        starts, values = strichartz_windows(times, times ** 2, 0.01)

        assert starts.tolist() == pytest.approx([0.0, 1.0, 2.0])
        assert values[0] == pytest.approx((1.0 / 9.0) ** 0.25, rel=1e-6)
        assert values[1] == pytest.approx(((2.0 ** 9 - 1.0) / 9.0) ** 0.25, rel=1e-6)
