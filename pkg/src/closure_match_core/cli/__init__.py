"""Command-line interface for closure-match-core."""
