from typing import List

import numpy as np
import pandas as pd

from ..core.errors import ConfigError
from ..core.run_config import RunConfig
from ..many_body.closed_forms import chern_tpt_sum, ssh_tpt_closed_form
from ..many_body.obc import qfi_obc_projector, qfi_strip
from ..many_body.pbc import qfi_pbc_sum
from ..services.config_service import family_from_config
from .base_workflow import BaseWorkflow, WorkflowResult, guarded

COLUMNS = ["lambda", "L", "F", "method", "excluded", "flags"]
METHODS = ("pbc-sum", "projector-obc", "closed-form")
CRITICAL_TOL = 1e-12


class ManyBodyQFIWorkflow(BaseWorkflow):
    """
    Ground-state QFI of the half-filled two-band models.

    The Chern closed form is reported as the many-body QFI 4 t2^2 * chern_tpt_sum,
    so it is directly comparable with the pbc-sum column.
    """

    name = "manybody_qfi"

    def _validate(self, cfg: RunConfig) -> str:
        method = cfg.method or "pbc-sum"
        if cfg.model not in ("ssh", "chern-bloch"):
            raise ConfigError(f"manybody-qfi supports models ssh and chern-bloch, got '{cfg.model}'.")
        if method not in METHODS:
            raise ConfigError(f"Unknown method '{method}'. Choose from {list(METHODS)}.")
        if method == "closed-form":
            critical = 1.0 if cfg.model == "ssh" else -4.0
            off = [lam for lam in cfg.lambdas if abs(lam - critical) > CRITICAL_TOL]
            if off:
                raise ConfigError(f"closed-form is only defined at lambda = {critical:g}; got {off}.")
        return method

    def run(self, cfg: RunConfig) -> WorkflowResult:
        method = self._validate(cfg)
        family = family_from_config(cfg)
        log: List[str] = [f"Model {family.name}, method {method}."]
        rows = []

        for lam in cfg.lambdas:
            for L in cfg.sizes:
                excluded = 0
                if method == "pbc-sum":
                    res, flags = guarded(qfi_pbc_sum, family, lam, L)
                    value = np.nan if flags else res.value
                    excluded = 0 if flags else int(res.grid.excluded.size)
                elif method == "projector-obc":
                    if family.name == "chern-bloch":
                        value, flags = guarded(qfi_strip, lam, L, family.params["t1"], family.params["t2"])
                    else:
                        value, flags = guarded(qfi_obc_projector, family, lam, L)
                else:
                    if family.name == "ssh":
                        value, flags = guarded(ssh_tpt_closed_form, L)
                    else:
                        t2 = family.params["t2"]
                        value, flags = guarded(chern_tpt_sum, L, family.params["t1"], t2)
                        value = 4.0 * t2 * t2 * value
                rows.append({"lambda": lam, "L": L, "F": value, "method": method,
                             "excluded": excluded, "flags": flags})
                log.append(f"lambda={lam:g}, L={L}: F={value:.12g}{' ' + flags if flags else ''}.")

        return WorkflowResult(pd.DataFrame(rows, columns=COLUMNS), {"log": log})
