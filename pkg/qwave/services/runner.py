"""
Deney Çalıştırıcı (ExperimentRunner)
Senaryoyu ilgili deneye yönlendirir, kontrolleri toplar, CSV/JSON artefaktlarını yazar
"""
from dataclasses import dataclass
from enum import Enum
from pathlib import Path
from typing import Any, Callable, Dict, List, Optional

import numpy as np
import pandas as pd

from ..core.attractor import HullSample, pullback_attractor, translation_identity_check, weak_star_distance
from ..core.dynamics import dissipativity_scan, mode_initial_state, scaled_initial_state, simulate
from ..core.experiments import energy_to_strichartz_scan, splitting_run, strichartz_cascade
from ..core.global_measure import GlobalMeasure, PeriodicTemplate, build_forcing
from ..core.inequality import kato_ponce_check, sobolev_checks
from ..core.ledger import ledger
from ..core.measure import (
    VectorMeasure,
    delta_approximation,
    distribution_values,
    mollify,
    project_tail,
    total_variation,
)
from ..core.nonlinearity import Nonlinearity
from ..core.propagator import (
    LinearPropagator,
    block_residuals,
    decay_rate,
    fit_decay_rate,
    linear_diagnostics,
    ode_residuals,
    run_linear,
)
from ..core.scalar_model import autonomous_attractor, hull_forcing, hull_sections, kernel_vs_attractor
from ..core.spectral import ModeGrid, StatePair, random_field
from ..utils.config import (
    AttractorParams,
    CascadeParams,
    ExperimentTag,
    InequalityParams,
    InitialKind,
    KernelParams,
    LinearCheckParams,
    MeasureApproxParams,
    Scenario,
    SimulateParams,
    SplittingParams,
    get_settings,
)
from ..utils.exceptions import ExperimentError
from ..utils.io import write_csv, write_summary
from ..utils.logger import get_logger, log_check
from ..utils.parallel import member_rng

logger = get_logger("runner")


class RunState(str, Enum):
    """Çalıştırıcı durumları"""
    IDLE = "idle"
    RUNNING = "running"
    FINISHED = "finished"
    FAILED = "failed"


class RunEvent(str, Enum):
    """Çalıştırma olayları"""
    RUN_STARTED = "run_started"
    RUN_FINISHED = "run_finished"
    CHECK_PASSED = "check_passed"
    CHECK_FAILED = "check_failed"
    ARTIFACT_WRITTEN = "artifact_written"


@dataclass
class CheckResult:
    """Tek bir kabul kontrolü"""
    name: str
    passed: bool
    value: Any = None
    threshold: Any = None

    def to_dict(self) -> Dict[str, Any]:
        return {"name": self.name, "passed": self.passed, "value": self.value, "threshold": self.threshold}


def within(interval, expected, tolerance: float) -> bool:
    return all(abs(float(a) - float(b)) <= tolerance for a, b in zip(interval, expected))


class ExperimentRunner:
    """Senaryo çalıştırıcı"""

    def __init__(self, scenario: Scenario, output_dir: Optional[str] = None, seed: Optional[int] = None,
                 threads: Optional[int] = None):
        self.scenario = scenario
        self.output_dir = Path(output_dir or scenario.output_dir)
        self.seed = scenario.run.seed if seed is None else seed
        self.threads = threads if threads is not None else get_settings().threads
        self.state = RunState.IDLE

        self.checks: List[CheckResult] = []
        self.results: Dict[str, Any] = {}
        self.artifacts: List[str] = []
        self.event_handlers: Dict[RunEvent, List[Callable]] = {}

        self.grid = ModeGrid.from_config(scenario.model)
        self.nonlinearity = Nonlinearity.from_config(scenario.model.nonlinearity)

    def add_event_handler(self, event: RunEvent, handler: Callable) -> None:
        """Event handler ekle"""
        self.event_handlers.setdefault(event, []).append(handler)

    def emit_event(self, event: RunEvent, data: Optional[Dict[str, Any]] = None) -> None:
        """Event yayınla"""
        for handler in self.event_handlers.get(event, []):
            try:
                handler(event, data or {})
            except Exception as e:
                logger.error(f"Event handler hatası [{event}]: {e}")

    # Kayıt yardımcıları

    def check(self, name: str, passed: bool, value: Any = None, threshold: Any = None) -> CheckResult:
        result = CheckResult(name, bool(passed), value, threshold)
        self.checks.append(result)
        if result.passed:
            log_check(f"✓ {self.scenario.name}/{name}: değer={value}, eşik={threshold}")
            self.emit_event(RunEvent.CHECK_PASSED, result.to_dict())
        else:
            logger.warning(f"✗ {self.scenario.name}/{name}: değer={value}, eşik={threshold}")
            self.emit_event(RunEvent.CHECK_FAILED, result.to_dict())
        return result

    def artifact(self, name: str, table: pd.DataFrame) -> Path:
        path = write_csv(self.output_dir / name, table)
        self.artifacts.append(name)
        self.emit_event(RunEvent.ARTIFACT_WRITTEN, {"path": str(path)})
        return path

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    @property
    def exit_code(self) -> int:
        return 0 if self.passed else 1

    # Ortak kurulum

    def propagator(self, gamma: Optional[float] = None, grid: Optional[ModeGrid] = None) -> LinearPropagator:
        return LinearPropagator(grid or self.grid, self.scenario.model.gamma if gamma is None else gamma)

    def forcing(self, grid: Optional[ModeGrid] = None) -> GlobalMeasure:
        return build_forcing(self.scenario.forcing, grid or self.grid)

    def initial_states(self, grid: Optional[ModeGrid] = None) -> List[StatePair]:
        """Çalıştırma bloğundan başlangıç durumları: norm listesi × topluluk"""
        grid = grid or self.grid
        run = self.scenario.run
        states = []
        for j, energy in enumerate(run.initial_energy_norms):
            for m in range(run.ensemble):
                if run.initial_kind == InitialKind.ZERO:
                    states.append(StatePair.zeros(grid))
                elif run.initial_kind == InitialKind.MODE:
                    states.append(mode_initial_state(grid, run.initial_mode, energy))
                else:
                    rng = member_rng(self.seed, j * run.ensemble + m)
                    states.append(scaled_initial_state(grid, rng, energy))
        return states

    # Çalıştırma

    def run(self) -> Dict[str, Any]:
        """Senaryoyu çalıştır ve summary.json yaz"""
        handlers = {
            ExperimentTag.SIMULATE: self.run_simulate,
            ExperimentTag.LINEAR_CHECK: self.run_linear_check,
            ExperimentTag.MEASURE_APPROX: self.run_measure_approx,
            ExperimentTag.ATTRACTOR: self.run_attractor,
            ExperimentTag.KERNEL_VS_ATTRACTOR: self.run_kernel,
            ExperimentTag.ODE_DEMO: self.run_ode_demo,
            ExperimentTag.SPLITTING: self.run_splitting,
            ExperimentTag.CASCADE: self.run_cascade,
            ExperimentTag.INEQUALITY: self.run_inequality,
        }
        handler = handlers.get(self.scenario.experiment)
        if handler is None:
            raise ExperimentError(f"Deney türü desteklenmiyor: {self.scenario.experiment}")
        params = self.scenario.typed_params()
        self.state = RunState.RUNNING
        logger.info(f"Senaryo başlatılıyor: {self.scenario.name} ({self.scenario.experiment.value}), "
                    f"seed={self.seed}")
        self.emit_event(RunEvent.RUN_STARTED, {"scenario": self.scenario.name})
        try:
            handler(params)
        except Exception:
            self.state = RunState.FAILED
            raise
        self.state = RunState.FINISHED

        summary = {
            "scenario": self.scenario.name,
            "experiment": self.scenario.experiment.value,
            "seed": self.seed,
            "acceptance": self.scenario.acceptance,
            "model": self.scenario.model.model_dump(mode="json"),
            "checks": [c.to_dict() for c in self.checks],
            "passed": self.passed,
            "results": self.results,
            "artifacts": sorted(self.artifacts),
        }
        write_summary(self.output_dir / "summary.json", summary)
        status = "GEÇTİ" if self.passed else "KALDI"
        logger.info(f"Senaryo tamamlandı: {self.scenario.name} - {status} "
                    f"({sum(c.passed for c in self.checks)}/{len(self.checks)} kontrol)")
        self.emit_event(RunEvent.RUN_FINISHED, {"passed": self.passed})
        return summary

    # Deneyler

    def run_simulate(self, params: SimulateParams) -> None:
        run = self.scenario.run
        propagator = self.propagator()
        forcing = self.forcing()
        xi = self.initial_states()[0]
        steps = [run.dt_seconds / 2 ** k for k in range(params.refinement_levels + 1)]
        window = forcing.window(run.tau_seconds, run.t_final_seconds)

        residuals = []
        for level, dt in enumerate(steps):
            trajectory = simulate(propagator, self.nonlinearity, xi, run.tau_seconds, run.t_final_seconds,
                                  window, dt)
            book = ledger(trajectory)
            residuals.append(book.total_abs_residual)
            self.results[f"ledger_dt{level}"] = {"dt": dt, **book.summary()}
            if level == 0:
                self.artifact("trajectory.csv", trajectory.to_frame())
                self.artifact("ledger_intervals.csv", book.intervals)
                self.artifact("ledger_atoms.csv", book.atoms)
                jumps = trajectory.jump_errors()
                if jumps.size:
                    self.check("jump_formula", jumps.max() <= 1e-14, float(jumps.max()), 1e-14)
                    self.check("atom_accounting", book.max_atom_error <= 1e-12, book.max_atom_error, 1e-12)
                if params.expect_monotone:
                    energies = trajectory.nonlinear_energies()
                    increase = float(np.max(np.diff(energies))) if energies.size > 1 else 0.0
                    self.check("energy_nonincreasing", increase <= 1e-10 * max(1.0, abs(energies[0])),
                               increase, 0.0)

        if len(residuals) > 1:
            ratios = [a / b if b > 0 else np.inf for a, b in zip(residuals[:-1], residuals[1:])]
            self.results["ledger_ratios"] = ratios
            ok = all(params.ledger_ratio_min <= r <= params.ledger_ratio_max for r in ratios)
            self.check("ledger_order", ok, ratios, [params.ledger_ratio_min, params.ledger_ratio_max])

    def run_linear_check(self, params: LinearCheckParams) -> None:
        run = self.scenario.run
        d = self.scenario.model.d
        rng = member_rng(self.seed, 0)

        # Mod blokları
        count = params.block_samples
        lam = np.exp(rng.uniform(0.0, np.log(1e4), count))
        gamma = rng.uniform(0.0, 10.0, count)
        t = rng.uniform(0.0, 5.0, count)
        s = rng.uniform(0.0, 5.0, count)
        liouville, composition = block_residuals(lam, gamma, t, s)
        self.check("block_liouville", liouville.max() <= 1e-12, float(liouville.max()), 1e-12)
        self.check("block_semigroup", composition.max() <= 1e-12, float(composition.max()), 1e-12)
        closed, finite = ode_residuals(lam, gamma, t)
        self.check("block_ode_closed_form", closed.max() <= 1e-12, float(closed.max()), 1e-12)
        self.check("block_ode_finite_difference", finite.max() <= 1e-6, float(finite.max()), 1e-6)

        # Duhamel ↔ bağımsız ODE çözücü
        oracle_grid = ModeGrid(d, params.oracle_n_modes, self.scenario.model.padding)
        oracle = self.propagator(params.oracle_gamma, oracle_grid)
        window = self.forcing(oracle_grid).window(run.tau_seconds, run.tau_seconds + 1.0)
        xi = scaled_initial_state(oracle_grid, rng, 1.0)
        exact = oracle.duhamel(xi, window, run.tau_seconds, run.tau_seconds + 1.0)
        reference = oracle.ode_reference(xi, window, run.tau_seconds, run.tau_seconds + 1.0)
        relative = (exact - reference).energy_norm() / max(reference.energy_norm(), np.finfo(float).tiny)
        self.check("duhamel_oracle", relative <= params.oracle_tolerance, relative, params.oracle_tolerance)

        # Sıçrama formülü
        propagator = self.propagator()
        times = np.sort(rng.uniform(run.tau_seconds, run.t_final_seconds, params.jump_trials))
        values = np.array([random_field(self.grid, rng).coeffs for _ in range(params.jump_trials)])
        atoms = VectorMeasure(run.tau_seconds, run.t_final_seconds, self.grid.dim, times, values)
        linear = run_linear(propagator, StatePair.zeros(self.grid), atoms, run.tau_seconds, run.t_final_seconds,
                            run.dt_seconds)
        lookup = {float(a): h for a, h in zip(atoms.atom_times, atoms.atom_values)}
        errors = [np.linalg.norm((after.v.coeffs - linear.states[i].v.coeffs) - lookup[float(linear.times[i])])
                  / np.linalg.norm(lookup[float(linear.times[i])]) for i, after in linear.post_kicks.items()]
        worst = float(max(errors)) if errors else 0.0
        self.check("jump_formula", worst <= 1e-14 and len(errors) == atoms.atom_times.size, worst, 1e-14)

        # Doğrusal sönüm
        rows = []
        unit_mode = [1] + [0] * (d - 1)
        horizon = run.tau_seconds + params.decay_horizon_seconds
        for g in params.decay_gammas:
            prop = self.propagator(g)
            trajectory = run_linear(prop, mode_initial_state(self.grid, unit_mode, 1.0),
                                    VectorMeasure.zero(run.tau_seconds, horizon, self.grid.dim),
                                    run.tau_seconds, horizon, run.dt_seconds)
            fitted = fit_decay_rate(trajectory.times, trajectory.energies())
            target = decay_rate(g, 1.0 + sum(k * k for k in unit_mode))
            rows.append({"gamma": g, "fitted": fitted, "analytic": target})
            self.check(f"decay_gamma_{g:g}", fitted >= target - 0.02, fitted, target - 0.02)

        prop = self.propagator(params.overdamped_gamma)
        trajectory = run_linear(prop, mode_initial_state(self.grid, [0] * d, 1.0),
                                VectorMeasure.zero(run.tau_seconds, horizon, self.grid.dim),
                                run.tau_seconds, horizon, run.dt_seconds)
        fitted = fit_decay_rate(trajectory.times, trajectory.energies(), t_min=run.tau_seconds + 2.0)
        slow = decay_rate(params.overdamped_gamma, 1.0)
        rows.append({"gamma": params.overdamped_gamma, "fitted": fitted, "analytic": slow})
        self.check("decay_overdamped", abs(fitted - slow) <= 0.01, fitted, slow)
        self.artifact("decay.csv", pd.DataFrame(rows))

        # Enerji / Strichartz sabitleri çözünürlüğe göre
        diagnostics = []
        for n in params.diagnostic_resolutions:
            grid = ModeGrid(d, n, self.scenario.model.padding)
            prop = self.propagator(grid=grid)
            linear = run_linear(prop, scaled_initial_state(grid, member_rng(self.seed, n), 1.0),
                                self.forcing(grid), run.tau_seconds, run.t_final_seconds, run.dt_seconds)
            report = linear_diagnostics(linear, prop)
            diagnostics.append({"n_modes": n, "decay_rate": report["decay_rate"],
                                "energy_constant": report["energy_constant"],
                                "strichartz_constant": report["strichartz_constant"]})
        table = pd.DataFrame(diagnostics)
        self.artifact("linear_constants.csv", table)
        self.check("linear_constants_finite",
                   bool(np.all(np.isfinite(table[["energy_constant", "strichartz_constant"]].to_numpy()))),
                   table["energy_constant"].max())

    def run_measure_approx(self, params: MeasureApproxParams) -> None:
        run = self.scenario.run
        mu = build_forcing(self.scenario.forcing, None).window(run.tau_seconds, run.t_final_seconds)
        tv = total_variation(mu)

        samples = 16 * max(params.partitions)
        ts = mu.start + (mu.end - mu.start) * (np.arange(samples) + 0.5) / samples
        reference = distribution_values(mu, ts)
        rows = []
        for n in params.partitions:
            approx = delta_approximation(mu, n)
            distance = float(np.max(np.linalg.norm(distribution_values(approx, ts) - reference, axis=1)))
            rows.append({"n": n, "sup_distance": distance, "total_variation": total_variation(approx)})
        table = pd.DataFrame(rows)
        self.artifact("delta_approximation.csv", table)
        slope = float(np.polyfit(np.log(table["n"]), np.log(table["sup_distance"]), 1)[0])
        self.results["delta_slope"] = slope
        self.check("delta_rate", slope <= params.slope_max, slope, params.slope_max)
        # TV(μ_n) ≤ TV(μ) tam aritmetikte; 1e-12 göreli pay yalnızca kayan nokta toplama sırası için
        self.check("delta_total_variation", bool(np.all(table["total_variation"] <= tv * (1.0 + 1e-12))),
                   float(table["total_variation"].max()), tv)

        # Mollify yakınsaması (zayıf-yıldız)
        grid = self.grid if mu.dim == self.grid.dim else None
        mollified = [{"n": n, "weak_star": weak_star_distance(mollify(mu, n), mu, grid=grid)}
                     for n in params.partitions if n <= 100]
        if len(mollified) > 1:
            distances = [row["weak_star"] for row in mollified]
            self.results["mollify_weak_star"] = mollified
            self.check("mollify_weak_star_decreasing", all(b <= a for a, b in zip(distances[:-1], distances[1:])),
                       distances)

        # Kuyruk varyasyonu
        rng = member_rng(self.seed, 1)
        dim, rank = params.tail_dim, min(params.tail_rank, params.tail_dim)
        atom_values = np.zeros((4, dim))
        atom_values[:, :rank] = rng.standard_normal((4, rank))
        density_values = np.zeros((9, dim))
        density_values[:, :rank] = rng.standard_normal((9, rank))
        finite_rank = VectorMeasure(0.0, 1.0, dim, np.sort(rng.uniform(0.0, 1.0, 4)), atom_values,
                                    np.linspace(0.0, 1.0, 9), density_values)
        tails = [project_tail(finite_rank, n)[1] for n in range(dim + 1)]
        self.artifact("tail_variation.csv", pd.DataFrame({"n": np.arange(dim + 1), "tail_variation": tails}))
        self.check("tail_nonincreasing", all(b <= a * (1.0 + 1e-12) for a, b in zip(tails[:-1], tails[1:])),
                   tails[0])
        self.check("tail_vanishes", all(value == 0.0 for value in tails[rank:]), tails[rank], 0.0)

    def run_attractor(self, params: AttractorParams) -> None:
        run = self.scenario.run
        propagator = self.propagator()
        forcing = self.forcing()
        states = self.initial_states()
        rng = member_rng(self.seed, 10_000)

        period = self.scenario.forcing.period_seconds
        shifts = [period * k / params.hull_shifts for k in range(params.hull_shifts)]
        hull = HullSample(forcing, shifts)
        starts = np.arange(run.tau_seconds, run.tau_seconds + period, 0.5)
        unit = hull.unit_window_check(starts)
        self.check("hull_unit_window", unit["ok"], max(unit["member_bounds"]), unit["base_bound"])

        if params.translation_trials:
            spike = self.grid.vector_from_modes([([1] + [0] * (self.grid.d - 1), 1.0)])
            template = VectorMeasure.from_atoms(0.0, 1.0, [(0.25, spike), (0.625, -0.5 * spike)])
            families = {"density": forcing, "atomic": PeriodicTemplate(template, 1.0)}
            rows = []
            for label, g in families.items():
                for _ in range(params.translation_trials):
                    s = float(rng.uniform(0.0, 10.0))
                    tau = float(rng.uniform(0.0, 5.0))
                    report = translation_identity_check(propagator, self.nonlinearity, g, s,
                                                        tau + params.translation_horizon_seconds, tau, states[0],
                                                        run.dt_seconds)
                    rows.append({"family": label, **report})
            table = pd.DataFrame(rows)
            self.artifact("translation.csv", table)
            worst = float(table["residual"].max())
            self.check("translation_identity", worst <= 1e-10, worst, 1e-10)

        if params.run_dissipativity:
            scan = dissipativity_scan(propagator, self.nonlinearity, states, forcing, run.tau_seconds,
                                      run.t_final_seconds, run.dt_seconds, params.transient_seconds,
                                      threads=self.threads)
            self.artifact("dissipativity.csv", scan["table"])
            self.results["absorbing_radius"] = scan["absorbing_radius"]
            self.check("dissipativity_spread", scan["spread"] <= params.spread_max, scan["spread"],
                       params.spread_max)
            self.check("strichartz_growth", scan["strichartz_ratio_max"] <= params.strichartz_ratio_max,
                       scan["strichartz_ratio_max"], params.strichartz_ratio_max)

        if params.run_pullback:
            ball = [states[i % len(states)] for i in range(params.ball_size)]
            image = pullback_attractor(propagator, self.nonlinearity, forcing, ball, params.pullback_horizons,
                                       shifts, run.dt_seconds, threads=self.threads)
            self.artifact("pullback.csv", image.table)
            self.results["pullback_absorbing_radius"] = image.absorbing_radius
            self.check("pullback_nested_ball", image.nested, image.absorbing_radius)
            self.check("pullback_attraction", image.attracting,
                       float(image.table["hausdorff_energy"].max(skipna=True)))

        if params.run_energy_scan:
            scan = energy_to_strichartz_scan(propagator, self.nonlinearity, forcing, params.scan_energy_levels,
                                             params.scan_forcing_levels, run.tau_seconds, run.t_final_seconds,
                                             run.dt_seconds, self.seed, run.ensemble, self.threads)
            self.artifact("energy_strichartz.csv", scan["table"])
            self.artifact("energy_strichartz_envelope.csv", scan["envelope"])
            self.results["proportionality_constant"] = scan["proportionality_constant"]
            self.check("strichartz_envelope", scan["finite"] and scan["monotone"],
                       float(scan["table"]["strichartz"].max()))

    def _interval_checks(self, prefix: str, report: Dict[str, Any], params: KernelParams,
                         expected_attractor, expected_union) -> None:
        self.results[prefix] = {k: v for k, v in report.items()}
        self.check(f"{prefix}_attractor", within(report["attractor"], expected_attractor, params.tolerance),
                   list(report["attractor"]), list(expected_attractor))
        self.check(f"{prefix}_kernel_union", within(report["kernel_union"], expected_union, params.tolerance),
                   list(report["kernel_union"]), list(expected_union))

    def run_kernel(self, params: KernelParams) -> None:
        report = kernel_vs_attractor(params, self.threads)
        self._interval_checks("kernel", report, params, params.expected_attractor, params.expected_kernel_union)
        if params.perturbed:
            self.check("kernel_gap_detected", report["gap"] >= 0.4, report["gap"], 0.4)

    def run_ode_demo(self, params: KernelParams) -> None:
        perturbed = kernel_vs_attractor(params.model_copy(update={"perturbed": True}), self.threads)
        self._interval_checks("perturbed", perturbed, params, params.expected_attractor,
                              params.expected_kernel_union)
        self.check("perturbed_gap_detected", perturbed["gap"] >= 0.4, perturbed["gap"], 0.4)

        plain = kernel_vs_attractor(params.model_copy(update={"perturbed": False}), self.threads)
        self._interval_checks("unperturbed", plain, params, [-2.0, 1.0], [-2.0, 1.0])

        initial_values = np.linspace(params.ic_min, params.ic_max, params.ic_count)
        autonomous = autonomous_attractor(initial_values)
        self.results["autonomous"] = autonomous
        self.check("autonomous_attractor", within(autonomous, [-1.0, 1.0], params.tolerance),
                   list(autonomous), [-1.0, 1.0])

        sections = hull_sections(hull_forcing(False), [-20.0, 0.0, 20.0], [params.ic_min, params.ic_max],
                                 horizon=abs(params.pullback_start_seconds), transient=params.transient_seconds)
        self.artifact("hull_sections.csv", pd.DataFrame(sections))
        worst = max(max(abs(row["low"] + 2.0), abs(row["high"] + 1.0)) for row in sections)
        self.check("interior_kernel_sections", worst <= params.tolerance, worst, params.tolerance)

    def run_splitting(self, params: SplittingParams) -> None:
        run = self.scenario.run
        report = splitting_run(self.propagator(), self.nonlinearity, self.initial_states()[0], self.forcing(),
                               run.tau_seconds, run.t_final_seconds, run.dt_seconds, self.scenario.model.alpha,
                               params.coupling, params.early_window_seconds, params.decay_rate_min,
                               params.growth_ratio_max)
        self.artifact("splitting.csv", report["table"])
        self.results["splitting"] = {k: v for k, v in report.items() if k not in ("table", "checks")}
        values = {
            "reconstruction": report["reconstruction_max"],
            "v_decay": report["v_decay_rate"],
            "w_bounded": report["w_late_sup"],
            "theta_bounded": report["theta_sup"],
            "gronwall": report["gronwall_constant"],
        }
        for name, passed in report["checks"].items():
            self.check(f"splitting_{name}", passed, values.get(name))

    def run_cascade(self, params: CascadeParams) -> None:
        run = self.scenario.run
        tau = run.tau_seconds
        mu = self.forcing().window(tau, tau + params.horizon_seconds)
        report = strichartz_cascade(self.propagator(), self.nonlinearity, self.initial_states()[0], mu,
                                    params.partitions, run.dt_seconds, params.ratio_max, self.threads)
        self.artifact("cascade.csv", report["table"])
        self.artifact("cascade_summary.csv", report["summary"])
        self.check("cascade_zero_before_atom", bool(report["summary"]["zero_before_atom"].all()))
        for name, spread in report["spreads"].items():
            self.check(f"cascade_{name}_spread", spread < params.ratio_max, spread, params.ratio_max)
        telescoping = float(report["summary"]["telescoping_residual"].max())
        self.check("cascade_telescoping", telescoping <= 1e-10, telescoping, 1e-10)

    def run_inequality(self, params: InequalityParams) -> None:
        model = self.scenario.model
        report = kato_ponce_check(self.nonlinearity, params.resolutions, params.samples, model.alpha, model.d,
                                  self.seed, model.padding, params.ratio_max)
        self.artifact("kato_ponce.csv", report["table"])
        self.results["skipped_samples"] = report["skipped"]
        for name, spread in report["spreads"].items():
            self.check(f"kato_ponce_{name}", spread < params.ratio_max, spread, params.ratio_max)

        sobolev = sobolev_checks(params.resolutions, params.samples, model.alpha, model.d, self.seed, model.padding)
        self.artifact("embedding.csv", sobolev["table"])
        self.check("interpolation", sobolev["interpolation_passed"], sobolev["interpolation"], 1.0001)
        self.check("embedding_stability", sobolev["embedding_spread"] < params.ratio_max,
                   sobolev["embedding_spread"], params.ratio_max)


def run_scenario(scenario: Scenario, output_dir: Optional[str] = None, seed: Optional[int] = None,
                 threads: Optional[int] = None) -> ExperimentRunner:
    """Kısayol: çalıştırıcıyı kur, çalıştır, döndür"""
    runner = ExperimentRunner(scenario, output_dir, seed, threads)
    runner.run()
    return runner
