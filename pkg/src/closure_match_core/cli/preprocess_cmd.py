"""Dump the pre-processing result (R, μ, L, critical hospitals, trace).

File:   preprocess_cmd.py
Module: cli.preprocess_cmd
"""

from pathlib import Path

from closure_match_core.cli.common import emit, run_guarded, setting
from closure_match_core.errors import ExitCode
from closure_match_core.instance_reader import read_instance_file
from closure_match_core.instance_writer import format_preprocess_output
from closure_match_core.preprocess import critical_hospitals, preprocess


def main(input_path: Path, output: Path | None = None, trace: bool | None = None) -> int:
    """Pre-process an instance file.

    Returns:
        int: 0 on success, 2 on bad input, 4 on an internal failure.
    """

    def _body() -> int:
        inst = read_instance_file(input_path)
        keep_trace = bool(setting(trace, "preprocess.keep_trace", True))
        res = preprocess(inst, keep_trace=keep_trace)
        emit(format_preprocess_output(res, critical_hospitals(inst, res), keep_trace), output)
        return ExitCode.OK

    return run_guarded("preprocess", _body)
