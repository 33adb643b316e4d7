import pandas as pd

from ..core.errors import ConfigError, InvalidParams
from ..core.run_config import RunConfig
from ..measurement.simulation import SimConfig, estimator_stats
from ..services.config_service import family_from_config, simulation_defaults
from .base_workflow import BaseWorkflow, WorkflowResult

# default search half-width around lambda_true
DEFAULT_HALF_WIDTH = 0.25


class EstimateWorkflow(BaseWorkflow):
    """
    Cramer-Rao check: R experiments of M position measurements, MLE per
    experiment, sample variance against 1/(M F^C).
    """

    name = "estimate"

    def run(self, cfg: RunConfig) -> WorkflowResult:
        family = family_from_config(cfg)
        lam = cfg.lambdas[0]
        L = cfg.sizes[0]
        if cfg.interval is not None:
            interval = tuple(cfg.interval)
        elif family.name == "ssh":
            interval = (max(0.0, lam - DEFAULT_HALF_WIDTH), min(0.999, lam + DEFAULT_HALF_WIDTH))
        else:
            interval = (lam - DEFAULT_HALF_WIDTH, lam + DEFAULT_HALF_WIDTH)

        try:
            sim = SimConfig(family=family, lam_true=lam, L=L, interval=interval, **simulation_defaults(cfg))
        except InvalidParams as e:
            raise ConfigError(str(e)) from e

        report = estimator_stats(sim, threads=cfg.threads)
        runs = pd.DataFrame({"run": range(len(report.estimates)), "estimate": report.estimates})
        log = [
            f"{sim.R} runs x {sim.M} samples at lambda={lam:g}, L={L}, seed={sim.seed}.",
            f"variance/CRB = {report.ratio:.4f}, failures = {report.failures}.",
        ]
        return WorkflowResult(report, {"log": log, "runs": runs})
