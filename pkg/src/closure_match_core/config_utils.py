"""closure_match_core/config_utils.py.

Utilities for reading configuration and YAML side files.

Provides:
- Reading and writing YAML files (policy overrides, the SAT mapping sidecar)
- Reading YAML configuration files from the working directory
- Locating runtime_config.yaml
- Looking up dotted keys in a loaded solver policy

Typical usage:

    from closure_match_core import config_utils, solver_policy

    policy = solver_policy.load_solver_policy(Path.cwd())
    budget = config_utils.policy_value(policy, "oracle.max_edges", 22)
"""

from pathlib import Path
from typing import Any

from loguru import logger
import yaml

__all__ = [
    "RUNTIME_CONFIG_FILENAME",
    "get_runtime_config_path",
    "load_yaml_config",
    "policy_value",
    "read_yaml",
    "write_yaml",
]

RUNTIME_CONFIG_FILENAME = "runtime_config.yaml"


def write_yaml(data: dict[str, Any], path: str | Path) -> Path:
    """Write a dictionary to a YAML file, creating parent folders.

    Keys keep insertion order so the output is deterministic.

    Returns:
        Path: The path the file was written to.
    """
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with path.open("w", encoding="utf-8") as f:
        yaml.safe_dump(data, f, sort_keys=False)
    return path


def read_yaml(path: str | Path) -> dict[str, Any]:
    """Read a YAML file into a dictionary; an empty file gives ``{}``."""
    with Path(path).open("r", encoding="utf-8") as f:
        return yaml.safe_load(f) or {}


def get_runtime_config_path(root_dir: Path | None = None) -> Path:
    """Return the path of runtime_config.yaml under ``root_dir`` (default: cwd)."""
    return (root_dir or Path.cwd()) / RUNTIME_CONFIG_FILENAME


def load_yaml_config(
    filename: str = RUNTIME_CONFIG_FILENAME, root_dir: Path | None = None
) -> dict[str, Any]:
    """Load a YAML configuration file.

    Args:
        filename (str): Name of the YAML file.
        root_dir (Optional[Path]): Directory to read from; defaults to the working directory.

    Returns:
        dict[str, Any]: Parsed configuration dictionary.

    Raises:
        FileNotFoundError: If config file is missing.
    """
    config_path = (root_dir or Path.cwd()) / filename

    if not config_path.exists():
        msg = f"Config file not found: {config_path}"
        logger.error(msg)
        raise FileNotFoundError(msg)

    config = read_yaml(config_path)
    logger.debug(f"Loaded config from {config_path}")
    return config


def policy_value(policy: dict[str, Any], dotted_key: str, default: Any = None) -> Any:
    """Return ``policy[a][b]...`` for ``dotted_key = "a.b..."``, or ``default``.

    Args:
        policy (dict[str, Any]): A loaded policy.
        dotted_key (str): Keys separated by dots, e.g. ``"oracle.max_edges"``.
        default (Any): Value returned when any key along the path is missing.

    Returns:
        Any: The configured value or the default.
    """
    node: Any = policy
    for key in dotted_key.split("."):
        if not isinstance(node, dict) or key not in node:
            return default
        node = node[key]
    return node
