from pydantic_settings import BaseSettings
from pathlib import Path


class Settings(BaseSettings):
    APP_NAME: str = "Topological QFI Toolkit"
    DATABASE_URL: str = "sqlite:///./topo_sensing_runs.db"

    # Base directory = project root (…/topo-sensing)
    BASE_DIR: Path = Path(__file__).resolve().parents[3]

    # Data directories
    DATA_DIR: Path = BASE_DIR / "backend" / "data"
    RESULTS_DIR: Path = DATA_DIR / "results"

    LOG_LEVEL: str = "INFO"

    # -------- Numerical tolerances --------
    # relative finite-difference step: h = FD_STEP * max(1, |lambda|)
    FD_STEP: float = 1e-5
    GAP_FLOOR: float = 1e-12
    PROB_FLOOR: float = 1e-14
    # relative to ||A||
    DEGENERACY_TOL: float = 1e-10
    EDGE_CLUSTER_TOL: float = 1e-8
    # relative to ||H||; levels within this band of zero stay empty in open chains
    ZERO_MODE_TOL: float = 1e-8

    # -------- Model defaults --------
    # Chern couplings; t1 = t2 = 1 unless overridden.
    DEFAULT_T1: float = 1.0
    DEFAULT_T2: float = 1.0
    DEFAULT_J2: float = 1.0

    # -------- Monte-Carlo defaults --------
    DEFAULT_SEED: int = 2
    DEFAULT_SAMPLES: int = 10_000
    DEFAULT_REPS: int = 200

    MAX_WORKERS: int = 1
    RECORD_RUNS: bool = True

    class Config:
        # Environment file for local overrides
        env_file = ".env"
        # Ignore extra env vars instead of crashing
        extra = "ignore"


settings = Settings()
