"""Strongly stable matching with closed hospitals: solvers, reductions and oracles."""

try:
    from closure_match_core._version import __version__
except ImportError:  # pragma: no cover
    __version__ = "0.0.0"
