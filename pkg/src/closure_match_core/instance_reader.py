"""closure_match_core/instance_reader.py.

Parse instance, envy-instance and matching files.

Instance format (``#`` starts a comment, blank lines ignored)::

    doctors: a b
    hospitals: x y
    closed: y
    pref a: x > y
    pref x: a = b

A vertex without a ``pref`` line is read as having an empty list (no
edges). A second ``pref`` line for the same vertex is an ``E_SYNTAX`` error.

"""

from dataclasses import dataclass, field
from pathlib import Path

from closure_match_core import log_utils
from closure_match_core.envy_reduction import EnvyInstance
from closure_match_core.errors import InputError
from closure_match_core.instance_model import ID_PATTERN, Edge, Instance, Matching, PrefOrder

__all__ = [
    "parse_envy_instance",
    "parse_instance",
    "parse_matching",
    "read_instance_file",
    "read_text_file",
]

logger = log_utils.logger


@dataclass
class _Sections:
    doctors: list[str] | None = None
    hospitals: list[str] | None = None
    closed: list[str] | None = None
    prefs: dict[str, PrefOrder] = field(default_factory=dict)


def _strip_comment(line: str) -> str:
    return line.split("#", 1)[0].strip()


def _parse_ids(body: str, lineno: int) -> list[str]:
    ids = body.split()
    for vertex in ids:
        if not ID_PATTERN.match(vertex):
            raise InputError("E_SYNTAX", f"Line {lineno}: invalid id {vertex!r}")
    return ids


def _parse_pref_body(body: str, lineno: int) -> PrefOrder:
    """Parse ``g1 > g2 ...`` where each group is ``id = id ...``."""
    if not body.strip():
        return PrefOrder()
    groups = []
    for chunk in body.split(">"):
        members = [m.strip() for m in chunk.split("=")]
        for member in members:
            if not member or not ID_PATTERN.match(member):
                raise InputError("E_SYNTAX", f"Line {lineno}: malformed preference group {chunk.strip()!r}")
        groups.append(members)
    return PrefOrder.from_lists(groups)


def _parse_sections(text: str, allow_closed: bool) -> _Sections:
    sections = _Sections()
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = _strip_comment(raw)
        if not line:
            continue
        head, sep, body = line.partition(":")
        if not sep:
            raise InputError("E_SYNTAX", f"Line {lineno}: expected '<key>: ...', got {line!r}")
        head = head.strip()
        if head in ("doctors", "hospitals", "closed"):
            if head == "closed" and not allow_closed:
                raise InputError("E_SYNTAX", f"Line {lineno}: 'closed:' is not allowed here")
            if getattr(sections, head) is not None:
                raise InputError("E_SYNTAX", f"Line {lineno}: repeated '{head}:' line")
            setattr(sections, head, _parse_ids(body, lineno))
        elif head.startswith("pref ") or head.startswith("pref\t"):
            vertex = head[4:].strip()
            if not ID_PATTERN.match(vertex):
                raise InputError("E_SYNTAX", f"Line {lineno}: invalid id {vertex!r}")
            if vertex in sections.prefs:
                raise InputError("E_SYNTAX", f"Line {lineno}: second 'pref {vertex}:' line")
            sections.prefs[vertex] = _parse_pref_body(body, lineno)
        else:
            raise InputError("E_SYNTAX", f"Line {lineno}: unknown key {head!r}")
    if sections.doctors is None or sections.hospitals is None:
        raise InputError("E_SYNTAX", "Missing 'doctors:' or 'hospitals:' line")
    return sections


def parse_instance(text: str) -> Instance:
    """Parse an instance file.

    Args:
        text (str): File contents.

    Returns:
        Instance: The validated instance.

    Raises:
        InputError: ``E_SYNTAX``, ``E_UNKNOWN_ID``, ``E_DUP_ID``, ``E_ASYMMETRIC``,
            ``E_CLOSED_NOT_HOSPITAL`` or ``E_DUP_PREF_ENTRY``.
    """
    sections = _parse_sections(text, allow_closed=True)
    return Instance(
        doctors=tuple(sections.doctors or ()),
        hospitals=tuple(sections.hospitals or ()),
        closed=frozenset(sections.closed or ()),
        prefs=sections.prefs,
    )


def parse_envy_instance(text: str) -> EnvyInstance:
    """Parse an envy instance: the instance format without ``closed:`` and hospital lists."""
    sections = _parse_sections(text, allow_closed=False)
    return EnvyInstance(
        doctors=tuple(sections.doctors or ()),
        hospitals=tuple(sections.hospitals or ()),
        prefs=sections.prefs,
    )


def parse_matching(text: str, inst: Instance | None = None) -> Matching:
    """Parse ``<doctor> <hospital>`` lines into a matching.

    Comment lines and a ``status:`` line are skipped, so ``solve`` output can be
    read back directly.

    Args:
        text (str): File contents.
        inst (Instance | None): If given, every pair must be an edge of it.

    Returns:
        Matching: The parsed matching.

    Raises:
        InputError: ``E_SYNTAX``, ``E_EDGE_NOT_IN_E`` or ``E_NOT_MATCHING``.
    """
    edges = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = _strip_comment(raw)
        if not line or line.startswith("status:"):
            continue
        parts = line.split()
        if len(parts) != 2:
            raise InputError("E_SYNTAX", f"Line {lineno}: expected '<doctor> <hospital>'")
        edge = Edge(parts[0], parts[1])
        if inst is not None and edge not in inst.edge_set:
            raise InputError("E_EDGE_NOT_IN_E", f"Line {lineno}: ({edge}) is not an edge")
        edges.append(edge)
    if len(set(edges)) != len(edges):
        raise InputError("E_NOT_MATCHING", "An edge is listed twice")
    return Matching(frozenset(edges))


def read_text_file(path: str | Path) -> str:
    """Read a UTF-8 text file.

    Raises:
        InputError: ``E_IO`` if the file cannot be read, ``E_SYNTAX`` if it is
            not valid UTF-8.
    """
    path = Path(path)
    try:
        return path.read_text(encoding="utf-8")
    except UnicodeDecodeError as e:
        logger.error(f"Failed to decode {path}: {e}")
        raise InputError("E_SYNTAX", f"{path} is not valid UTF-8 text") from e
    except OSError as e:
        logger.error(f"Failed to read {path}: {e}")
        raise InputError("E_IO", f"Cannot read {path}") from e


def read_instance_file(path: str | Path) -> Instance:
    """Read and parse an instance file."""
    return parse_instance(read_text_file(path))
