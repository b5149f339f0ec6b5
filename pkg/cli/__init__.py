"""
Command-line entry point
"""

import sys
from typing import List, Optional

from config.run_config import ConfigError, RunConfig
from utils import get_logger, setup_logging, log_exception, LoggerContext
from core.data import DatasetError
from core.kmeans import ClusteringError
from core.oversamplers import NoMinorityClusterError, OversamplingError
from .parser import build_parser
from .commands import (
    COMMANDS,
    EXIT_OK,
    EXIT_INPUT_ERROR,
    EXIT_NO_MINORITY_CLUSTER,
    EXIT_INTERNAL,
)

logger = get_logger(__name__)


def main(argv: Optional[List[str]] = None) -> int:
    """
    Parse ``argv``, run the command, map failures to exit codes

    Exit codes: 0 ok, 2 input error, 3 no cluster passed the filter,
    4 internal failure.
    """
    args = build_parser().parse_args(argv)
    flags = vars(args).copy()
    command = flags.pop('command')
    config_file = flags.pop('config_file', None)
    if not flags.get('inputs'):
        # inputs may come from the config file
        flags.pop('inputs', None)

    try:
        cfg = RunConfig.from_sources(command, flags, config_file)
        setup_logging(cfg.log_level)
    except (ConfigError, ValueError) as e:
        logger.error(f"Invalid configuration: {e}")
        print(f"error: {e}", file=sys.stderr)
        return EXIT_INPUT_ERROR

    try:
        with LoggerContext(logger, f"{command} {' '.join(cfg.inputs)}"):
            return COMMANDS[command](cfg)
    except NoMinorityClusterError as e:
        logger.error(str(e))
        print(f"error: {e}", file=sys.stderr)
        return EXIT_NO_MINORITY_CLUSTER
    except (DatasetError, ConfigError, ClusteringError, OversamplingError,
            FileNotFoundError, ValueError) as e:
        logger.error(f"Input error: {e}")
        print(f"error: {e}", file=sys.stderr)
        return EXIT_INPUT_ERROR
    except Exception as e:
        log_exception(logger, e, f"{command} failed")
        print(f"internal error: {e}", file=sys.stderr)
        return EXIT_INTERNAL


__all__ = ['main']
