from .closed_forms import ClosedFormsWorkflow
from .edge_qfi import EdgeQFIWorkflow
from .estimate import EstimateWorkflow
from .exponent_scan import ExponentScanWorkflow
from .manybody_qfi import ManyBodyQFIWorkflow

WORKFLOWS = {
    "edge-qfi": EdgeQFIWorkflow,
    "manybody-qfi": ManyBodyQFIWorkflow,
    "exponent-scan": ExponentScanWorkflow,
    "estimate": EstimateWorkflow,
    "closed-forms": ClosedFormsWorkflow,
}
