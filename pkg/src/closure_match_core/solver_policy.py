"""closure_match_core/solver_policy.py.

Load the solver policy: oracle budgets, pre-processing and verify defaults,
and logging settings.

A project policy may only name the sections and keys the bundled policy
defines; values are overlaid key by key within each section.
"""

from pathlib import Path
from typing import Any

from loguru import logger
import yaml

from closure_match_core.errors import InputError

__all__ = ["DEFAULT_POLICY_PATH", "POLICY_FILENAME", "load_solver_policy"]

POLICY_FILENAME = "solver_policy.yaml"
DEFAULT_POLICY_PATH = Path(__file__).parent / POLICY_FILENAME


def _read_policy_file(path: Path) -> dict[str, Any]:
    try:
        with path.open(encoding="utf-8") as f:
            data = yaml.safe_load(f) or {}
    except yaml.YAMLError as e:
        logger.error(f"Failed to parse policy file at {path}: {e}")
        raise InputError("E_BAD_POLICY", f"{path} is not valid YAML") from e
    if not isinstance(data, dict):
        raise InputError("E_BAD_POLICY", f"{path} must be a mapping of sections")
    return data


def _overlay_sections(
    defaults: dict[str, Any], custom: dict[str, Any], source: Path
) -> dict[str, Any]:
    """Overlay ``custom`` on ``defaults`` one section at a time.

    Raises:
        InputError: ``E_BAD_POLICY`` for an unknown section or key, or a
        section that is not a mapping.
    """
    merged = {section: dict(values) for section, values in defaults.items()}
    for section, values in custom.items():
        if section not in merged:
            known = ", ".join(sorted(merged))
            raise InputError(
                "E_BAD_POLICY", f"{source}: unknown section {section!r} (known: {known})"
            )
        if not isinstance(values, dict):
            raise InputError("E_BAD_POLICY", f"{source}: section {section!r} must be a mapping")
        unknown = sorted(set(values) - set(merged[section]))
        if unknown:
            raise InputError(
                "E_BAD_POLICY", f"{source}: unknown keys in {section!r}: {', '.join(unknown)}"
            )
        merged[section].update(values)
    return merged


def load_solver_policy(
    project_root: Path | None = None,
    override_file: Path | None = None,
) -> dict[str, Any]:
    """Load the solver policy.

    Behavior:
    - Load defaults from the bundled `solver_policy.yaml`.
    - If the project root (or `override_file`) provides a policy, overlay its
      sections on the defaults.

    Args:
        project_root: Optional directory to look for `solver_policy.yaml` in.
        override_file: Optional explicit policy file; wins over `project_root`.

    Returns:
        dict: Combined policy, with `__policy_path__` naming the file that won.

    Raises:
        InputError: ``E_BAD_POLICY`` if the project policy is malformed or names
        a section or key the bundled policy does not define.
    """
    policy_data = _read_policy_file(DEFAULT_POLICY_PATH)
    policy_path = DEFAULT_POLICY_PATH

    custom_policy_path = None
    if override_file:
        custom_policy_path = Path(override_file)
    elif project_root:
        custom_policy_path = Path(project_root) / POLICY_FILENAME

    if custom_policy_path and custom_policy_path.exists():
        custom_data = _read_policy_file(custom_policy_path)
        policy_data = _overlay_sections(policy_data, custom_data, custom_policy_path)
        policy_path = custom_policy_path
        logger.debug(f"Loaded custom policy from {custom_policy_path}")

    policy_data["__policy_path__"] = str(policy_path)
    return policy_data
