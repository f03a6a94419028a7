"""Generate seeded random instances, envy instances and (3,B2) formulas.

File:   gen.py
Module: cli.gen
"""

from pathlib import Path
from typing import Any

from closure_match_core.cli.common import emit, run_guarded
from closure_match_core.errors import ExitCode
from closure_match_core.instance_generator import (
    GenParams,
    gen_b2sat,
    gen_envy_instance,
    gen_instance,
)
from closure_match_core.instance_writer import serialize_envy_instance, serialize_instance
from closure_match_core.sat_reduction import format_b2sat


def instance_main(settings: dict[str, Any], output: Path | None = None, envy: bool = False) -> int:
    """Write a random instance (or envy instance).

    Args:
        settings (dict[str, Any]): Keyword arguments for ``GenParams``.
        output (Path | None): Destination; stdout when omitted.
        envy (bool): Emit an envy instance instead of a matching instance.

    Returns:
        int: 0 on success, 2 on invalid parameters.
    """

    def _body() -> int:
        params = GenParams(**settings)
        if envy:
            text = serialize_envy_instance(gen_envy_instance(params))
        else:
            text = serialize_instance(gen_instance(params))
        emit(text, output)
        return ExitCode.OK

    return run_guarded("gen instance", _body)


def b2sat_main(n: int, seed: int, output: Path | None = None) -> int:
    """Write a random (3,B2) formula with n variables.

    Returns:
        int: 0 on success, 2 if n is not a positive multiple of 3.
    """

    def _body() -> int:
        emit(format_b2sat(gen_b2sat(n, seed)), output)
        return ExitCode.OK

    return run_guarded("gen b2sat", _body)
