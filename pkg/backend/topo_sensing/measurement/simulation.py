"""Monte-Carlo check of Cramer-Rao saturation by position measurement + MLE."""

import json
import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import List, Optional, Tuple

import numpy as np
from pydantic import BaseModel, ConfigDict

from ..core.config import settings
from ..core.errors import InvalidParams, TopoSensingError
from ..edge.localization import bulk_selector, edge_selector
from ..edge.states import ssh_edge_family
from ..estimation.fisher import PureState, cfi, position_probabilities
from ..hamiltonians.block import assemble_dense
from ..hamiltonians.families import ModelFamily, ModelKind
from .mle import PositionModel, mle_estimate, position_fisher, position_model
from .sampling import sample_positions

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class SimConfig:
    family: ModelFamily
    lam_true: float
    L: int
    interval: Tuple[float, float]
    M: int = 10_000
    R: int = 200
    seed: int = 0

    def __post_init__(self):
        if self.M < 1 or self.R < 1:
            raise InvalidParams(f"M and R must be >= 1, got M={self.M}, R={self.R}.")
        lo, hi = self.interval
        if not lo < self.lam_true < hi:
            raise InvalidParams(f"lambda_true={self.lam_true} is not inside the interval ({lo}, {hi}).")


class EstimationReport(BaseModel):
    # failed runs and an infinite bound are written as null
    model_config = ConfigDict(ser_json_inf_nan="null")

    lambda_mean: float
    variance: float
    crb: float
    ratio: float
    estimates: List[float]
    failures: int

    def to_json(self) -> str:
        return json.dumps(json.loads(self.model_dump_json()), sort_keys=True)


def _true_state(cfg: SimConfig):
    """Measured state at lambda_true plus (d, decoupled indices)."""
    family = cfg.family
    if family.kind == ModelKind.SSH and family.is_topological(cfg.lam_true):
        return ssh_edge_family(cfg.lam_true, cfg.L).state(), 2, ()
    chain = family.build(cfg.lam_true, cfg.L)
    select = edge_selector(chain.d) if family.is_topological(cfg.lam_true) else bulk_selector
    state = PureState.normalized(select(assemble_dense(chain)))
    return state, chain.d, chain.decoupled_indices()


def _true_fisher(cfg: SimConfig, model: PositionModel, custom_model: bool) -> float:
    family = cfg.family
    if not custom_model and family.kind == ModelKind.SSH and family.is_topological(cfg.lam_true):
        derivative = ssh_edge_family(cfg.lam_true, cfg.L).derivative()
        return cfi(position_probabilities(derivative, 2))
    return position_fisher(model, cfg.lam_true)


def estimator_stats(cfg: SimConfig, model: Optional[PositionModel] = None, threads: Optional[int] = None) -> EstimationReport:
    """
    R independent experiments of M position measurements each; compares the
    sample variance of the MLE with the Cramer-Rao bound 1/(M F^C).
    """
    custom_model = model is not None
    model = model or position_model(cfg.family, cfg.L)
    state, d, decoupled = _true_state(cfg)

    def one_run(run_index: int) -> float:
        counts = sample_positions(state, d, cfg.M, cfg.seed, run_index, decoupled)
        try:
            return mle_estimate(counts, model, cfg.interval)
        except TopoSensingError as e:
            logger.debug("run %d failed: %s", run_index, e)
            return float("nan")

    workers = max(1, threads or settings.MAX_WORKERS)
    with ThreadPoolExecutor(max_workers=workers) as pool:
        estimates = np.array(list(pool.map(one_run, range(cfg.R))))

    ok = estimates[np.isfinite(estimates)]
    failures = int(cfg.R - ok.size)
    if failures:
        logger.warning("%d of %d runs failed", failures, cfg.R)

    fisher = _true_fisher(cfg, model, custom_model)
    crb = 1.0 / (cfg.M * fisher) if fisher > 0 else float("inf")
    mean = float(ok.mean()) if ok.size else float("nan")
    variance = float(np.var(ok, ddof=1)) if ok.size > 1 else float("nan")
    ratio = variance / crb if np.isfinite(crb) and np.isfinite(variance) else float("nan")

    return EstimationReport(
        lambda_mean=mean,
        variance=variance,
        crb=crb,
        ratio=ratio,
        estimates=[float(x) for x in estimates],
        failures=failures,
    )
