"""Entry point for the closure-match CLI.

File: cli.__main__
"""

from closure_match_core.cli.cli import app

if __name__ == "__main__":
    app()
