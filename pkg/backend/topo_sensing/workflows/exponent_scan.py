from ..core.errors import ConfigError, InvalidParams, InvalidSize
from ..core.run_config import RunConfig
from ..scaling.scan import PIPELINES, exponent_scan
from ..services.config_service import family_from_config
from .base_workflow import BaseWorkflow, WorkflowResult


class ExponentScanWorkflow(BaseWorkflow):
    name = "exponent_scan"

    def run(self, cfg: RunConfig) -> WorkflowResult:
        quantity = (cfg.quantity or "edge").replace("-", "_")
        if quantity not in PIPELINES:
            raise ConfigError(f"Unknown quantity '{cfg.quantity}'. Choose from {sorted(PIPELINES)}.")
        family = family_from_config(cfg)
        try:
            table = exponent_scan(family, quantity, cfg.lambdas, cfg.sizes, threads=cfg.threads)
        except (InvalidSize, InvalidParams) as e:
            raise ConfigError(str(e)) from e

        log = [f"Scanned {len(cfg.lambdas)} lambda values of {family.name}/{quantity} over L={cfg.sizes}."]
        for row in table.itertuples(index=False):
            log.append(f"lambda={row[0]:g}: b={row[1]:.6g} {row[5]}".rstrip())
        return WorkflowResult(table, {"log": log})
