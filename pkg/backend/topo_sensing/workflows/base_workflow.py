from abc import ABC, abstractmethod
from typing import Any, Dict, Optional

import numpy as np

from ..core.errors import TopoSensingError
from ..core.run_config import RunConfig


class WorkflowResult:
    def __init__(self, data: Any, metadata: Optional[Dict] = None):
        self.data = data
        self.metadata = metadata or {}


class BaseWorkflow(ABC):
    name: str = "base_workflow"

    @abstractmethod
    def run(self, cfg: RunConfig) -> WorkflowResult:
        """
        Run the workflow for one RunConfig.
        Must return a WorkflowResult whose metadata carries a "log" list.
        """
        ...


def guarded(fn, *args, **kwargs):
    """Call ``fn``; numerical errors become (nan, "error:<Name>")."""
    try:
        return fn(*args, **kwargs), ""
    except TopoSensingError as e:
        return np.nan, f"error:{type(e).__name__}"
