import pandas as pd

from ..core.config import settings
from ..core.run_config import RunConfig
from ..edge.closed_form import qfi_phi_z_closed_form, qfi_tpt_limit
from ..many_body.closed_forms import (
    band_inversion_lowest_modes,
    chern_tpt_sum,
    ssh_continuum_limit,
    ssh_tpt_closed_form,
)
from .base_workflow import BaseWorkflow, WorkflowResult, guarded

COLUMNS = ["quantity", "lambda", "L", "value", "flags"]


class ClosedFormsWorkflow(BaseWorkflow):
    """Evaluates every analytic expression for the requested (lambda, L) pairs."""

    name = "closed_forms"

    def run(self, cfg: RunConfig) -> WorkflowResult:
        p = cfg.params
        t1, t2 = p.get("t1", settings.DEFAULT_T1), p.get("t2", settings.DEFAULT_T2)
        alpha, lambda_c = p.get("alpha", 1.0), p.get("lambda_c", 0.0)
        rows = []

        def add(quantity, lam, L, fn, *args):
            value, flags = guarded(fn, *args)
            rows.append({"quantity": quantity, "lambda": lam, "L": L, "value": value, "flags": flags})

        for lam in cfg.lambdas:
            for L in cfg.sizes:
                add("edge_closed_form", lam, L, qfi_phi_z_closed_form, abs(lam), 1.0, L)
                add("edge_tpt_limit", lam, L, qfi_tpt_limit, 1.0, 0.0, L)
                add("ssh_tpt", lam, L, ssh_tpt_closed_form, L)
                add("ssh_continuum", lam, L, ssh_continuum_limit, lam)
                add("chern_tpt_sum", lam, L, chern_tpt_sum, L, t1, t2)
                add("band_inversion", lam, L, band_inversion_lowest_modes, L, alpha, lam, lambda_c)

        table = pd.DataFrame(rows, columns=COLUMNS)
        n_flagged = int((table["flags"] != "").sum())
        return WorkflowResult(table, {"log": [f"Evaluated {len(table)} closed forms ({n_flagged} not applicable)."]})
