import pandas as pd
import pytest

from topo_sensing.core.errors import ConfigError
from topo_sensing.services.config_service import build_run_config
from topo_sensing.services.pipeline_service import execute_workflow
from topo_sensing.services.run_service import create_run, get_run, load_run_table, update_run_status
from topo_sensing.workflows import ClosedFormsWorkflow, ManyBodyQFIWorkflow


class TestRunLedger:

    def test_log_is_appended(self, db_session):
        run = create_run(db_session, command="edge-qfi", config_json="{}")
        assert run.status == "pending"
        update_run_status(db_session, run, "running", log="step one")
        update_run_status(db_session, run, "done", log="step two")
        stored = get_run(db_session, run.id)
        assert stored.status == "done"
        assert stored.log.splitlines() == ["Run created.", "step one", "step two"]

    def test_missing_run(self, db_session):
        assert get_run(db_session, 12345) is None


class TestRecordedWorkflow:

    def test_successful_run_stores_table(self, db_session, results_dir):
        cfg = build_run_config("closed-forms", {}, {"lambdas": [0.5], "sizes": [8]})
        run, result = execute_workflow(db_session, ClosedFormsWorkflow(), cfg, results_dir)
        assert run.status == "done"
        assert run.config_json == cfg.canonical_json()
        assert "closed_forms completed." in run.log
        pd.testing.assert_frame_equal(load_run_table(run), result.data)

    def test_failed_run_is_marked(self, db_session, results_dir):
        cfg = build_run_config("manybody-qfi", {}, {"model": "chern-wire"})
        with pytest.raises(ConfigError):
            execute_workflow(db_session, ManyBodyQFIWorkflow(), cfg, results_dir)
        run = get_run(db_session, 1)
        assert run.status == "failed"
        assert run.table_path is None
        assert "ConfigError" in run.log
