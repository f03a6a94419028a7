"""Command-line interface for strongly stable matching with closures.

Provides commands for:
- Solving instances and checking matchings
- Dumping the pre-processing result
- Generating seeded instances and (3,B2) formulas
- Reducing formulas and envy instances to matching instances
- Running the oracle-equivalence verify suites

Run `closure-match --help` for usage.

File: cli.py
"""

from pathlib import Path

import typer

from closure_match_core import log_utils

from . import check, gen, preprocess_cmd, reduce, solve, solve_envy, verify
from .solve import SolveMethod
from .verify import VerifyMode

app = typer.Typer(help="Stable matching with closed hospitals.", no_args_is_help=True)
gen_app = typer.Typer(help="Generate seeded random inputs.", no_args_is_help=True)
reduce_app = typer.Typer(help="Reduce other problems to matching instances.", no_args_is_help=True)
app.add_typer(gen_app, name="gen")
app.add_typer(reduce_app, name="reduce")

OUTPUT_OPTION = typer.Option(None, "--output", "-o", help="Write here instead of stdout.")


@app.callback()
def main_callback(
    log_level: str | None = typer.Option(None, "--log-level", help="Override the log level."),
):
    """Initialize logging before any command runs."""
    log_utils.init_logger(log_level)


@app.command("solve")
def solve_command(
    input_path: Path = typer.Argument(..., exists=True, dir_okay=False, help="Instance file."),
    output: Path | None = OUTPUT_OPTION,
    method: SolveMethod = typer.Option(SolveMethod.AUTO, "--method", "-m"),
    budget: int | None = typer.Option(None, "--budget", help="Brute-force edge budget."),
):
    """Find a stable matching or report that none exists."""
    raise typer.Exit(solve.main(input_path, output, method, budget))


@app.command("check")
def check_command(
    instance_path: Path = typer.Argument(..., exists=True, dir_okay=False),
    matching_path: Path = typer.Argument(..., exists=True, dir_okay=False),
    output: Path | None = OUTPUT_OPTION,
    verbose: bool = typer.Option(False, "--verbose", "-v", help="Also list one-sided blocks."),
):
    """Check a matching for stability."""
    raise typer.Exit(check.main(instance_path, matching_path, output, verbose))


@app.command("preprocess")
def preprocess_command(
    input_path: Path = typer.Argument(..., exists=True, dir_okay=False),
    output: Path | None = OUTPUT_OPTION,
    trace: bool | None = typer.Option(None, "--trace/--no-trace"),
):
    """Dump R, μ, L, the critical hospitals and the growth trace."""
    raise typer.Exit(preprocess_cmd.main(input_path, output, trace))


@app.command("solve-envy")
def solve_envy_command(
    input_path: Path = typer.Argument(..., exists=True, dir_okay=False),
    output: Path | None = OUTPUT_OPTION,
):
    """Find a doctor-saturating envy-free matching."""
    raise typer.Exit(solve_envy.main(input_path, output))


@app.command("verify")
def verify_command(
    mode: VerifyMode = typer.Argument(...),
    trials: int | None = typer.Option(None, "--trials"),
    seed: int | None = typer.Option(None, "--seed"),
    budget: int | None = typer.Option(
        None,
        "--budget",
        help="Edge cap for the enumeration suites; bipartite and sat use the policy oracle limits.",
    ),
    report: Path | None = typer.Option(None, "--report", help="Write .json, .md or .txt."),
):
    """Run an oracle-equivalence suite."""
    raise typer.Exit(verify.main(mode, trials, seed, budget, report))


@gen_app.command("instance")
def gen_instance_command(
    seed: int = typer.Option(0, "--seed"),
    n_doctors: int = typer.Option(4, "--doctors"),
    n_hospitals: int = typer.Option(4, "--hospitals"),
    max_degree: int | None = typer.Option(None, "--max-degree"),
    edge_prob: float = typer.Option(0.5, "--edge-prob"),
    tie_prob: float = typer.Option(0.3, "--tie-prob"),
    closure_prob: float = typer.Option(0.3, "--closure-prob"),
    enforce_star: bool = typer.Option(False, "--star"),
    enforce_degree2: bool = typer.Option(False, "--degree2"),
    max_edges: int | None = typer.Option(None, "--max-edges"),
    envy: bool = typer.Option(False, "--envy", help="Emit an envy instance."),
    output: Path | None = OUTPUT_OPTION,
):
    """Generate a random instance."""
    settings = {
        "seed": seed,
        "n_doctors": n_doctors,
        "n_hospitals": n_hospitals,
        "max_degree": max_degree,
        "edge_prob": edge_prob,
        "tie_prob": tie_prob,
        "closure_prob": closure_prob,
        "enforce_star": enforce_star,
        "enforce_degree2": enforce_degree2,
        "max_edges": max_edges,
    }
    raise typer.Exit(gen.instance_main(settings, output, envy))


@gen_app.command("b2sat")
def gen_b2sat_command(
    n: int = typer.Option(..., "--n", help="Variables (a multiple of 3)."),
    seed: int = typer.Option(0, "--seed"),
    output: Path | None = OUTPUT_OPTION,
):
    """Generate a random (3,B2) formula."""
    raise typer.Exit(gen.b2sat_main(n, seed, output))


@reduce_app.command("sat")
def reduce_sat_command(
    cnf_path: Path = typer.Option(..., "--cnf", exists=True, dir_okay=False),
    output: Path | None = OUTPUT_OPTION,
    mapping: Path | None = typer.Option(None, "--mapping", help="Sidecar map file."),
):
    """Reduce a (3,B2) formula to a matching instance."""
    raise typer.Exit(reduce.sat_main(cnf_path, output, mapping))


@reduce_app.command("envy")
def reduce_envy_command(
    input_path: Path = typer.Option(..., "--input", exists=True, dir_okay=False),
    output: Path | None = OUTPUT_OPTION,
):
    """Reduce an envy instance to an all-closed matching instance."""
    raise typer.Exit(reduce.envy_main(input_path, output))


def main():
    """Entry point for the CLI application."""
    app()


if __name__ == "__main__":
    main()
