"""
Test: Deney çalıştırıcı
"""
import json
from unittest.mock import MagicMock, patch

import pytest

from qwave.services.runner import ExperimentRunner, RunEvent, RunState, run_scenario, within
from qwave.utils.config import (
    AppSettings,
    ExperimentTag,
    ForcingConfig,
    ModelConfig,
    RunConfig,
    Scenario,
    reload_settings,
)
from qwave.utils.exceptions import SolverBlowUpError


@pytest.fixture
def scenario(tmp_path):
    """8 modlu, iki atomlu kısa simülasyon"""
    return Scenario(
        name="tiny-simulate",
        experiment=ExperimentTag.SIMULATE,
        model=ModelConfig(n_modes=8),
        forcing=ForcingConfig.model_validate({
            "family": "periodic-template",
            "period_seconds": 1.0,
            "atoms": [{"time_seconds": 0.5, "modes": [{"mode": [1], "value": [0.3]}]}],
        }),
        run=RunConfig(t_final_seconds=2.0, dt_seconds=0.05, seed=7),
        acceptance=[3, 5],
        output_dir=str(tmp_path / "out"),
    )


class TestExperimentRunner:
    """ExperimentRunner test sınıfı"""

    def test_initial_state(self, scenario):
        runner = ExperimentRunner(scenario)

        assert runner.state == RunState.IDLE
        assert runner.seed == 7
        assert runner.passed
        assert runner.exit_code == 0

    def test_seed_override(self, scenario):
        assert ExperimentRunner(scenario, seed=99).seed == 99

    def test_failed_check_sets_exit_code(self, scenario):
        runner = ExperimentRunner(scenario)
        runner.check("always", True)
        runner.check("never", False, 2.0, 1.0)

        assert not runner.passed
        assert runner.exit_code == 1
        assert runner.checks[1].to_dict() == {"name": "never", "passed": False, "value": 2.0, "threshold": 1.0}

    def test_events(self, scenario):
        """Kontrol olayları doğru handler'a gider"""
        runner = ExperimentRunner(scenario)
        passed, failed = MagicMock(), MagicMock()
        runner.add_event_handler(RunEvent.CHECK_PASSED, passed)
        runner.add_event_handler(RunEvent.CHECK_FAILED, failed)

        runner.check("ok", True)
        runner.check("bad", False)

        assert passed.call_count == 1
        assert failed.call_count == 1
        assert failed.call_args[0][1]["name"] == "bad"

    def test_failing_handler_is_logged(self, scenario):
        runner = ExperimentRunner(scenario)
        runner.add_event_handler(RunEvent.CHECK_PASSED, MagicMock(side_effect=RuntimeError("boom")))

        with patch("qwave.services.runner.logger") as logger:
            runner.check("ok", True)

        logger.error.assert_called_once()
        assert runner.passed

    def test_run_writes_summary(self, scenario, tmp_path):
        """summary.json ve artefaktlar çıktı dizinine yazılır"""
        finished = MagicMock()
        runner = ExperimentRunner(scenario)
        runner.add_event_handler(RunEvent.RUN_FINISHED, finished)
        summary = runner.run()

        assert runner.state == RunState.FINISHED
        assert summary["passed"]
        assert {c["name"] for c in summary["checks"]} == {"jump_formula", "atom_accounting"}
        assert summary["artifacts"] == ["ledger_atoms.csv", "ledger_intervals.csv", "trajectory.csv"]
        finished.assert_called_once()

        written = json.loads((tmp_path / "out" / "summary.json").read_text(encoding="utf-8"))
        assert written["schema_version"] == "1.0"
        assert written["acceptance"] == [3, 5]
        assert written["experiment"] == "simulate"
        assert (tmp_path / "out" / "trajectory.csv").exists()

    def test_output_dir_override(self, scenario, tmp_path):
        runner = run_scenario(scenario, output_dir=str(tmp_path / "other"))

        assert (tmp_path / "other" / "summary.json").exists()
        assert runner.exit_code == 0

    def test_blow_up_marks_failed(self, scenario):
        reload_settings(AppSettings(energy_ceiling=0.1))
        runner = ExperimentRunner(scenario)

        with pytest.raises(SolverBlowUpError):
            runner.run()
        assert runner.state == RunState.FAILED


class TestHelpers:
    """Yardımcı fonksiyonlar"""

    def test_within(self):
        assert within((-1.95, 1.05), [-2.0, 1.0], 0.1)
        assert not within((-1.5, 1.0), [-2.0, 1.0], 0.1)


class TestDeterminism:
    """Aynı tohum ve senaryo aynı summary.json baytlarını üretir"""

    @pytest.fixture
    def ensemble_scenario(self, scenario):
        """Dört üyeli kısa çekici senaryosu: dağılma taraması + geri çekme"""
        return scenario.model_copy(update={
            "name": "tiny-attractor",
            "experiment": ExperimentTag.ATTRACTOR,
            "run": RunConfig(t_final_seconds=2.0, dt_seconds=0.05, seed=7, ensemble=4),
            "params": {"transient_seconds": 0.5, "translation_trials": 0, "pullback_horizons": [0.5, 1.0],
                       "hull_shifts": 2, "ball_size": 4},
        })

    def test_repeat_and_thread_count(self, ensemble_scenario, tmp_path):
        outputs = []
        for label, threads in (("a", 1), ("b", 1), ("c", 4)):
            run_scenario(ensemble_scenario, output_dir=str(tmp_path / label), threads=threads)
            outputs.append((tmp_path / label / "summary.json").read_bytes())

        assert outputs[0] == outputs[1]
        assert outputs[0] == outputs[2]
