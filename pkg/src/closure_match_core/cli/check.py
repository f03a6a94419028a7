"""Check a matching for stability and list its blocking edges.

Each reported line reads ``<doctor> <hospital> doctor=<flag> hospital=<flag>``
with flags ``strong``, ``weak`` or ``none``.

File:   check.py
Module: cli.check
"""

from pathlib import Path

from closure_match_core.cli.common import emit, run_guarded
from closure_match_core.errors import ExitCode
from closure_match_core.instance_reader import parse_matching, read_instance_file, read_text_file
from closure_match_core.stability_utils import all_block_reports, blocking_edges


def main(
    instance_path: Path,
    matching_path: Path,
    output: Path | None = None,
    verbose: bool = False,
) -> int:
    """Check a matching file against an instance file.

    Args:
        instance_path (Path): The instance.
        matching_path (Path): The matching (``solve`` output is accepted).
        output (Path | None): Report file; stdout when omitted.
        verbose (bool): Also list edges that block on only one side.

    Returns:
        int: 0 if stable, 1 if some edge blocks, 2 if the matching is malformed.
    """

    def _body() -> int:
        inst = read_instance_file(instance_path)
        matching = parse_matching(read_text_file(matching_path), inst)
        blocking = blocking_edges(inst, matching)
        reports = all_block_reports(inst, matching) if verbose else blocking
        emit("".join(f"{r.describe()}\n" for r in reports), output)
        return ExitCode.NO_STABLE_MATCHING if blocking else ExitCode.OK

    return run_guarded("check", _body)
