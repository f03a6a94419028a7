"""closure_match_core/instance_writer.py.

Canonical text for instances, matchings and solver results.

Vertices are sorted, tie-group members are sorted, groups appear in rank
order, and ``closed:`` is omitted when no hospital is closed. Identical
values always produce identical text.

"""

from collections.abc import Iterable
from pathlib import Path

from closure_match_core import log_utils
from closure_match_core.envy_reduction import EnvyInstance
from closure_match_core.instance_model import Edge, Instance, Matching, PrefOrder
from closure_match_core.preprocess import PreprocessResult

__all__ = [
    "format_preprocess_output",
    "format_solve_output",
    "serialize_envy_instance",
    "serialize_instance",
    "serialize_matching",
    "write_text_file",
]

logger = log_utils.logger


def _format_pref(vertex: str, order: PrefOrder) -> str:
    body = " > ".join(" = ".join(sorted(group)) for group in order.groups)
    return f"pref {vertex}: {body}" if body else f"pref {vertex}:"


def _format_ids(key: str, ids: Iterable[str]) -> str:
    joined = " ".join(sorted(ids))
    return f"{key}: {joined}" if joined else f"{key}:"


def serialize_instance(inst: Instance) -> str:
    """Return the canonical instance text."""
    lines = [_format_ids("doctors", inst.doctors), _format_ids("hospitals", inst.hospitals)]
    if inst.closed:
        lines.append(_format_ids("closed", inst.closed))
    lines.extend(_format_pref(v, inst.prefs[v]) for v in inst.doctors)
    lines.extend(_format_pref(v, inst.prefs[v]) for v in inst.hospitals)
    return "\n".join(lines) + "\n"


def serialize_envy_instance(envy: EnvyInstance) -> str:
    """Return the canonical envy-instance text (doctor lists only)."""
    lines = [_format_ids("doctors", envy.doctors), _format_ids("hospitals", envy.hospitals)]
    lines.extend(_format_pref(d, envy.prefs[d]) for d in envy.doctors)
    return "\n".join(lines) + "\n"


def _edge_lines(edges: Iterable[Edge]) -> list[str]:
    return [str(e) for e in sorted(edges)]


def serialize_matching(matching: Matching) -> str:
    """Return one ``<doctor> <hospital>`` line per edge, canonical order."""
    lines = _edge_lines(matching.edges)
    return "\n".join(lines) + "\n" if lines else ""


def format_solve_output(matching: Matching | None, method: str) -> str:
    """Return the ``solve`` result text.

    Args:
        matching (Matching | None): The stable matching, or None for No.
        method (str): The method that produced the answer.

    Returns:
        str: ``status: stable`` or ``status: none``, the method comment, then the edges.
    """
    status = "none" if matching is None else "stable"
    text = f"status: {status}\n# method: {method}\n"
    if matching is not None:
        text += serialize_matching(matching)
    return text


def format_preprocess_output(
    res: PreprocessResult, critical: Iterable[str], include_trace: bool = False
) -> str:
    """Return the sectioned ``preprocess`` dump.

    Sections are ``[forbidden]`` (R), ``[matching]`` (μ), ``[flat]`` (L),
    ``[critical]`` and, when requested, ``[trace]``.
    """
    lines = [
        f"# outer_rounds: {res.outer_rounds}",
        f"# max_inner_iterations: {res.max_inner_iterations}",
        "[forbidden]",
        *_edge_lines(res.forbidden),
        "[matching]",
        *_edge_lines(res.matching.edges),
        "[flat]",
        *_edge_lines(res.flat),
        "[critical]",
        *sorted(critical),
    ]
    if include_trace:
        lines.append("[trace]")
        for step in res.trace:
            head = f"t={step.t} i={step.i} {step.grew_by.value}"
            if step.b_t is not None:
                head += f" b=({step.b_t})"
            lines.append(f"{head}: " + "; ".join(_edge_lines(step.added)))
    return "\n".join(lines) + "\n"


def write_text_file(text: str, path: str | Path) -> Path:
    """Write text to a file, creating parent folders.

    Returns:
        Path: The path written.
    """
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(text, encoding="utf-8")
    logger.debug(f"Wrote {path}")
    return path
