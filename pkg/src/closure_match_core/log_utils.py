"""closure_match_core/log_utils.py.

Centralized logging for the solver library and CLI.

Logs go to stderr (and optionally a rotating file) so that stdout and output
files stay byte-identical between runs.

"""

from pathlib import Path
import sys

from loguru import logger

from closure_match_core import solver_policy
from closure_match_core.config_utils import get_runtime_config_path, load_yaml_config

__all__ = [
    "init_logger",
    "log_run_end",
    "log_run_start",
    "logger",
]

_logger_initialized = False


def _runtime_log_level(root: Path) -> str | None:
    if not get_runtime_config_path(root).exists():
        return None
    try:
        return load_yaml_config(root_dir=root).get("log_level")
    except Exception as e:
        logger.warning(f"Failed to load runtime config: {e}")
        return None


def init_logger(log_level: str | None = None, log_to_console: bool = True) -> None:
    """Initialize Loguru logging once per session.

    The level comes from ``log_level``, then ``log_level`` in
    runtime_config.yaml, then the policy's ``logging.log_level``, then INFO.

    Args:
        log_level (Optional[str]): Override log level (e.g. "DEBUG").
        log_to_console (bool): Whether to log to stderr.
    """
    global _logger_initialized
    if _logger_initialized:
        logger.debug("Logger already initialized.")
        return

    logger.remove()

    project_root = Path.cwd()
    try:
        policy = solver_policy.load_solver_policy(project_root)
    except Exception as e:
        policy = {}
        logger.warning(f"Failed to load solver policy: {e}")
    settings = policy.get("logging", {})

    level = (
        (log_level or _runtime_log_level(project_root) or settings.get("log_level", "INFO"))
        .upper()
        .strip()
    )

    if settings.get("log_to_file", False):
        logs_dir = project_root / settings.get("log_subdir", "logs")
        logs_dir.mkdir(parents=True, exist_ok=True)
        logger.add(
            str(logs_dir / settings.get("log_file_template", "{time:YYYY-MM-DD}.log")),
            format="{time} | {level} | {message}",
            rotation="1 day",
            retention=f"{settings.get('log_retention_days', 7)} days",
            encoding="utf-8",
            level=level,
            backtrace=True,
            diagnose=True,
        )

    if log_to_console:
        # Resolve sys.stderr per message so redirected streams are honoured.
        logger.add(
            sink=lambda message: sys.stderr.write(message),
            format="<green>{time}</green> | <level>{level}</level> | {message}",
            level=level,
            backtrace=True,
            diagnose=True,
        )

    logger.debug(f"Logger initialized (level: {level})")
    _logger_initialized = True


def log_run_start(command: str) -> None:
    """Log the start of a CLI command.

    Args:
        command (str): Name of the command.
    """
    logger.info(f"===== Starting {command} =====")


def log_run_end(command: str, status: str = "success") -> None:
    """Log the end of a CLI command.

    Args:
        command (str): Name of the command.
        status (str): Status text (e.g. "success" or "error").
    """
    logger.info(f"===== {command} completed with status: {status} =====")
