"""
Command-line entry point.

    python -m topo_sensing.main edge-qfi --model ssh --lambda 0.5 --sizes 32
    python -m topo_sensing.main exponent-scan --lambda-grid 0.1:0.9:9 --sizes 64,128,256,512,1024
"""

import argparse
import logging
import sys
from typing import Any, Dict, List, Optional

from .core.config import settings
from .core.errors import ConfigError, TopoSensingError
from .core.log_setup import configure_logging
from .core.run_config import COMMANDS, RunConfig
from .services.config_service import (
    build_run_config,
    load_config_file,
    parse_float_list,
    parse_interval,
    parse_lambda_grid,
    parse_sizes,
)
from .services.output_service import all_rows_failed, render_table, write_output
from .workflows import WORKFLOWS
from .workflows.base_workflow import WorkflowResult

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_NUMERIC = 3

# flag name -> model parameter key
PARAM_FLAGS = {"kx": "kx", "t1": "t1", "t2": "t2", "alpha": "alpha", "lambda_c": "lambda_c", "j2": "j2"}


def _add_common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--model", help="ssh, chern-wire, chern-bloch or band-inversion")
    grid = p.add_mutually_exclusive_group()
    grid.add_argument("--lambda", dest="lambdas", help="comma-separated lambda values")
    grid.add_argument("--lambda-grid", help="lo:hi:n evenly spaced lambda values")
    p.add_argument("--sizes", help="comma-separated system sizes L1,L2,...")
    p.add_argument("--kx", type=float)
    p.add_argument("--t1", type=float)
    p.add_argument("--t2", type=float)
    p.add_argument("--alpha", type=float)
    p.add_argument("--lambda-c", type=float)
    p.add_argument("--j2", type=float)
    p.add_argument("--samples", type=int)
    p.add_argument("--reps", type=int)
    p.add_argument("--seed", type=int)
    p.add_argument("--method", help="pbc-sum, projector-obc or closed-form")
    p.add_argument("--quantity", help="edge, manybody_pbc or manybody_obc")
    p.add_argument("--interval", help="lo:hi search interval for the estimator")
    p.add_argument("--format", choices=["csv", "json"])
    p.add_argument("--output", help="write the table here instead of stdout")
    p.add_argument("--config", help="JSON config file; flags override its values")
    p.add_argument("--threads", type=int)
    p.add_argument("--log-level")
    p.add_argument("--no-record", action="store_true", help="skip the run ledger")


def create_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="topo_sensing", description=settings.APP_NAME)
    sub = parser.add_subparsers(dest="command", required=True)
    for command in COMMANDS:
        _add_common(sub.add_parser(command))
    return parser


def flag_values(args: argparse.Namespace) -> Dict[str, Any]:
    """Translate parsed flags into RunConfig fields (None means 'not given')."""
    lambdas: Optional[List[float]] = None
    if args.lambdas is not None:
        lambdas = parse_float_list(args.lambdas)
    elif args.lambda_grid is not None:
        lambdas = parse_lambda_grid(args.lambda_grid)

    params = {key: getattr(args, attr) for attr, key in PARAM_FLAGS.items() if getattr(args, attr) is not None}
    return {
        "model": args.model,
        "lambdas": lambdas,
        "sizes": parse_sizes(args.sizes) if args.sizes is not None else None,
        "method": args.method,
        "quantity": args.quantity,
        "samples": args.samples,
        "reps": args.reps,
        "seed": args.seed,
        "interval": parse_interval(args.interval) if args.interval is not None else None,
        "format": args.format,
        "output": args.output,
        "threads": args.threads,
        "params": params,
    }


def _run(cfg: RunConfig, record: bool) -> WorkflowResult:
    workflow = WORKFLOWS[cfg.command]()
    if not record:
        return workflow.run(cfg)

    from .core.db import session_scope
    from .core.init_db import init_db
    from .services.pipeline_service import execute_workflow

    init_db()
    with session_scope() as db:
        run, result = execute_workflow(db, workflow, cfg)
        logger.info("recorded run %d", run.id)
    return result


def _render(cfg: RunConfig, result: WorkflowResult) -> str:
    if cfg.command == "estimate":
        if cfg.format == "json":
            return result.data.to_json() + "\n"
        return render_table(result.metadata["runs"], "csv")
    return render_table(result.data, cfg.format)


def _all_failed(cfg: RunConfig, result: WorkflowResult) -> bool:
    if cfg.command == "estimate":
        return result.data.failures == len(result.data.estimates)
    return all_rows_failed(result.data)


def main(argv: Optional[List[str]] = None) -> int:
    args = create_parser().parse_args(argv)
    configure_logging(args.log_level)

    try:
        cfg = build_run_config(args.command, load_config_file(args.config), flag_values(args))
        result = _run(cfg, record=settings.RECORD_RUNS and not args.no_record)
    except ConfigError as e:
        logger.error("configuration error: %s", e)
        return EXIT_CONFIG
    except TopoSensingError as e:
        if isinstance(e, ValueError):
            logger.error("invalid input: %s", e)
            return EXIT_CONFIG
        logger.error("numerical failure: %s", e)
        return EXIT_NUMERIC

    write_output(_render(cfg, result), cfg.output)
    if _all_failed(cfg, result):
        logger.error("every row failed")
        return EXIT_NUMERIC
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
