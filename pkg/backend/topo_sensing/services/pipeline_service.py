import logging
from pathlib import Path
from typing import Optional, Tuple

import pandas as pd
from sqlalchemy.orm import Session

from ..core.run_config import RunConfig
from ..models.run import Run
from ..workflows.base_workflow import BaseWorkflow, WorkflowResult
from .run_service import create_run, save_run_table, update_run_status

logger = logging.getLogger(__name__)


def result_table(result: WorkflowResult) -> pd.DataFrame:
    """
    Tabular view of a workflow result: the data itself for table workflows,
    the per-run estimates for the estimate workflow.
    """
    if isinstance(result.data, pd.DataFrame):
        return result.data
    runs = result.metadata.get("runs")
    if isinstance(runs, pd.DataFrame):
        return runs
    return pd.DataFrame()


def execute_workflow(
    db: Session,
    workflow: BaseWorkflow,
    cfg: RunConfig,
    results_dir: Optional[Path] = None,
) -> Tuple[Run, WorkflowResult]:
    """
    Run a workflow under the run ledger:
    - create a Run row with the canonical config
    - run the workflow
    - save the result table as parquet
    - mark the run done (or failed, re-raising the error)
    """
    run = create_run(db, command=cfg.command, config_json=cfg.canonical_json(), output_path=cfg.output)
    update_run_status(db, run, "running", log=f"Starting {workflow.name}.")

    try:
        result = workflow.run(cfg)
    except Exception as e:
        update_run_status(db, run, "failed", log=f"{type(e).__name__}: {e}")
        raise

    table = result_table(result)
    table_path = None
    if not table.empty:
        table_path = str(save_run_table(run, table, results_dir))

    log_lines = result.metadata.get("log", [])
    update_run_status(
        db,
        run,
        status="done",
        log=f"{workflow.name} completed.\n" + "\n".join(log_lines),
        table_path=table_path,
    )
    logger.info("run %d (%s) done", run.id, cfg.command)
    return run, result
