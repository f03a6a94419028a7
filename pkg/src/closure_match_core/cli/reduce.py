"""Build matching instances from (3,B2) formulas and envy instances.

``reduce sat`` writes the gadget instance and a YAML sidecar naming each
gadget vertex; ``reduce envy`` writes the all-closed, all-tied instance.

File:   reduce.py
Module: cli.reduce
"""

from pathlib import Path

from closure_match_core import log_utils
from closure_match_core.cli.common import emit, run_guarded
from closure_match_core.config_utils import write_yaml
from closure_match_core.envy_reduction import reduce_envyfree
from closure_match_core.errors import ExitCode
from closure_match_core.instance_reader import parse_envy_instance, read_text_file
from closure_match_core.instance_writer import serialize_instance
from closure_match_core.sat_reduction import parse_b2sat, reduce_sat

logger = log_utils.logger


def sat_main(cnf_path: Path, output: Path | None = None, mapping: Path | None = None) -> int:
    """Reduce a formula file.

    The mapping defaults to ``<output>.map.yaml`` when an output file is given.

    Returns:
        int: 0 on success, 2 on a malformed formula.
    """

    def _body() -> int:
        inst, sat_mapping = reduce_sat(parse_b2sat(read_text_file(cnf_path)))
        emit(serialize_instance(inst), output)
        target = mapping or (output.with_name(output.name + ".map.yaml") if output else None)
        if target is not None:
            write_yaml(sat_mapping.to_dict(), target)
            logger.info(f"Mapping written to {target}")
        return ExitCode.OK

    return run_guarded("reduce sat", _body)


def envy_main(input_path: Path, output: Path | None = None) -> int:
    """Reduce an envy instance file.

    Returns:
        int: 0 on success, 2 on bad input.
    """

    def _body() -> int:
        envy = parse_envy_instance(read_text_file(input_path))
        emit(serialize_instance(reduce_envyfree(envy)), output)
        return ExitCode.OK

    return run_guarded("reduce envy", _body)
