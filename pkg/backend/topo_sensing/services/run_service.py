from pathlib import Path
from typing import Optional

import pandas as pd
from sqlalchemy.orm import Session

from ..core.config import settings
from ..models.run import Run


def create_run(db: Session, command: str, config_json: str, output_path: Optional[str] = None) -> Run:
    """
    Create a Run row for tracking one CLI invocation.
    """
    run = Run(
        command=command,
        config_json=config_json,
        status="pending",
        log="Run created.",
        output_path=output_path,
    )
    db.add(run)
    db.commit()
    db.refresh(run)
    return run


def update_run_status(
    db: Session,
    run: Run,
    status: str,
    log: Optional[str] = None,
    table_path: Optional[str] = None,
) -> Run:
    """
    Update run status, append to log, and optionally set table_path.
    """
    run.status = status

    if log:
        if run.log:
            run.log = run.log + "\n" + log
        else:
            run.log = log

    if table_path is not None:
        run.table_path = table_path

    db.commit()
    db.refresh(run)
    return run


def get_run(db: Session, run_id: int) -> Optional[Run]:
    return db.query(Run).filter(Run.id == run_id).first()


def save_run_table(run: Run, df: pd.DataFrame, results_dir: Optional[Path] = None) -> Path:
    """
    Persist a result table as parquet under RESULTS_DIR/run_<id>.parquet.
    """
    results_dir = results_dir or settings.RESULTS_DIR
    results_dir.mkdir(parents=True, exist_ok=True)
    path = results_dir / f"run_{run.id}.parquet"
    df.to_parquet(path, index=False)
    return path


def load_run_table(run: Run) -> pd.DataFrame:
    if not run.table_path:
        raise ValueError(f"Run {run.id} has no stored table.")
    path = Path(run.table_path)
    if not path.exists():
        raise ValueError(f"Result table not found: {path}")
    return pd.read_parquet(path)
