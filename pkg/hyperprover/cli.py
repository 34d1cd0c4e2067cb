"""
hyperprover CLI

Command-line interface for the A and Ł provers.
"""
import json
import logging
import sys
import time
from pathlib import Path

import click
from rich import box
from rich.console import Console
from rich.markup import escape
from rich.panel import Panel
from rich.table import Table

from hyperprover.__version__ import __version__
from hyperprover.core.budget import SearchBudget
from hyperprover.core.config import CONFIG_FILENAME, Config
from hyperprover.core.constants import EXIT_ERROR, EXIT_INVALID, EXIT_VALID, CalculusId
from hyperprover.core.corpus import SUITES, SuiteRunner, run_bench
from hyperprover.core.engine import SURFACES, Engine, parse_goal, resolve_calculus
from hyperprover.core.events import TraceEmitter
from hyperprover.core.hyper_calculi import check_proof, prove_ga, prove_gl
from hyperprover.core.proof import ProofTree, Verdict
from hyperprover.core.reporting import ProofReport, ReportManager
from hyperprover.core.structures import Sequent
from hyperprover.core.syntax import parse_formula, render_formula
from hyperprover.core.translate import TRANSLATIONS, transfer_countermodel, translate as apply_translation

console = Console()
logger = logging.getLogger(__name__)

CHECKABLE = [c.value for c in CalculusId]


def _fail(exc: Exception) -> None:
    console.print(f"[bold red]FAIL Error: {escape(str(exc))}[/bold red]")
    sys.exit(EXIT_ERROR)


def _crash(exc: Exception) -> None:
    """Report an unexpected exception; call from the except block"""
    logger.exception("Unexpected %s", type(exc).__name__)
    _fail(RuntimeError(f"internal {type(exc).__name__}: {exc}"))


def _emitter(config: Config):
    if not config.trace_enabled:
        return None
    return TraceEmitter(Path.cwd(), config=config)


def _print_verdict(verdict: Verdict) -> None:
    if verdict.valid:
        console.print("[bold green]Valid[/bold green]")
        if verdict.proof is not None:
            console.print(
                f"[dim]Proof: {verdict.proof.size()} nodes, depth {verdict.proof.depth()}[/dim]"
            )
            console.print(verdict.proof.render_tree(), markup=False, highlight=False)
        elif verdict.certificate:
            console.print(f"[dim]Certificate: {escape(verdict.certificate.get('kind', 'unknown'))}[/dim]")
        return
    console.print("[bold yellow]Invalid[/bold yellow]")
    if verdict.countermodel is not None:
        table = Table(title="Countermodel", box=box.SIMPLE)
        table.add_column("Variable", style="cyan")
        table.add_column("Value")
        for name, value in verdict.countermodel.to_dict().items():
            table.add_row(escape(name), value)
        console.print(table)


@click.group(invoke_without_command=True)
@click.option("--version", is_flag=True, help="Show version and exit")
@click.option("--verbose", "-v", is_flag=True, help="Log search events at DEBUG level")
@click.pass_context
def main(ctx, version, verbose):
    """
    hyperprover - decide formulas of abelian logic and Lukasiewicz logic

    Hypersequent, terminating, labelled and single-sequent calculi with
    proof checking, embeddings and acceptance suites.
    """
    if verbose:
        logging.basicConfig(level=logging.DEBUG)
    if version:
        console.print(f"hyperprover version {__version__}")
        sys.exit(0)
    if ctx.invoked_subcommand is None:
        console.print(
            Panel(
                "[bold cyan]Decision procedures for A and Ł[/bold cyan]\n"
                f"[dim]Version {__version__}[/dim]",
                border_style="bright_cyan",
            )
        )
        console.print("[yellow]Run 'hyperprover --help' for usage information[/yellow]\n")


@main.command()
@click.option("--logic", type=click.Choice(["a", "l"]), default="a", show_default=True, help="Logic of the goal")
@click.option(
    "--calculus",
    type=click.Choice(list(SURFACES)),
    default="hyper",
    show_default=True,
    help="Calculus to search in",
)
@click.option("--goal", required=True, help='Formula or hypersequent, e.g. "(A -> B) \\/ (B -> A)"')
@click.option("--format", "fmt", type=click.Choice(["text", "json"]), default="text", show_default=True)
@click.option("--seed", type=int, default=None, help="Seed for search order and sampling")
@click.option("--timeout-ms", type=int, default=None, help="Deadline for the search")
@click.option("--report", is_flag=True, help="Write a markdown report under the runtime directory")
def prove(logic, calculus, goal, fmt, seed, timeout_ms, report):
    """Prove or refute a goal"""
    try:
        config = Config.load()
        calculus_id = resolve_calculus(logic, calculus)
        parsed = parse_goal(goal, logic, calculus_id)
        engine = Engine(config, _emitter(config))
        started = time.monotonic()
        verdict = engine.decide(parsed, calculus_id, seed=seed, timeout_ms=timeout_ms)
        elapsed_ms = int((time.monotonic() - started) * 1000)

        if fmt == "json":
            data = {"goal": str(parsed), "calculus": calculus_id.value}
            data.update(verdict.to_dict())
            click.echo(json.dumps(data, indent=2, sort_keys=True, ensure_ascii=True))
        else:
            console.print(f"[bold cyan]{escape(calculus_id.value)}[/bold cyan] {escape(str(parsed))}")
            _print_verdict(verdict)

        if report:
            manager = ReportManager(Path.cwd(), config=config)
            path = manager.save(ProofReport(str(parsed), calculus_id.value, verdict, elapsed_ms))
            if fmt == "text":
                console.print(f"[dim]Report: {path}[/dim]")
    except (RuntimeError, OSError, ValueError, click.ClickException) as e:
        _fail(e)
    except Exception as e:
        _crash(e)
    sys.exit(EXIT_VALID if verdict.valid else EXIT_INVALID)


@main.command(name="check-proof")
@click.option("--calculus", type=click.Choice(CHECKABLE), required=True, help="Calculus the proof is written in")
@click.option("--file", "proof_file", type=click.Path(dir_okay=False), required=True, help="Proof JSON")
def check_proof_cmd(calculus, proof_file):
    """Check a proof tree against the rules of a calculus"""
    try:
        text = Path(proof_file).read_text(encoding="utf-8")
        pt = ProofTree.from_json(text, calculus)
        result = check_proof(pt, calculus)
    except (RuntimeError, OSError, ValueError, click.ClickException) as e:
        _fail(e)
    except Exception as e:
        _crash(e)
    if result.valid:
        console.print(f"[bold green]OK Proof accepted[/bold green] ({pt.size()} nodes)")
        sys.exit(EXIT_VALID)
    console.print(
        f"[bold red]FAIL Proof rejected at {result.render_path()}:[/bold red] {escape(result.message or '')}"
    )
    sys.exit(EXIT_INVALID)


@main.command()
@click.option("--translation", type=click.Choice(list(TRANSLATIONS)), default="star", show_default=True)
@click.option("--formula", required=True, help="Ł formula to translate")
@click.option("--check", is_flag=True, help="Decide both sides and compare the verdicts")
def translate(translation, formula, check):
    """Translate an Ł formula into abelian logic"""
    try:
        f = parse_formula(formula, "l")
        image = apply_translation(f, translation)
        console.print(render_formula(image), markup=False, highlight=False)
        if not check:
            return
        config = Config.load()
        limit = config.max_constraints
        source = prove_gl(Sequent.of([], [f]), budget=SearchBudget.from_config(config), max_constraints=limit)
        target = prove_ga(Sequent.of([], [image]), budget=SearchBudget.from_config(config), max_constraints=limit)
    except (RuntimeError, OSError, ValueError, click.ClickException) as e:
        _fail(e)
    except Exception as e:
        _crash(e)
    label = {True: "valid", False: "invalid"}
    console.print(f"[dim]Ł: {label[source.valid]}, A: {label[target.valid]}[/dim]")
    if source.valid != target.valid:
        console.print("[bold red]FAIL Verdicts disagree[/bold red]")
        sys.exit(EXIT_INVALID)
    if translation == "star" and not target.valid:
        try:
            model = transfer_countermodel(target.countermodel, f)
        except ValueError as e:
            _fail(e)
        console.print(f"[dim]Ł countermodel: {escape(model.render())}[/dim]")


@main.command()
@click.option("--suite", type=click.Choice(list(SUITES)), default=None, help="Acceptance suite to run")
@click.option(
    "--goals", "goals_file", type=click.Path(dir_okay=False), default=None, help="Goal file, one goal per line"
)
@click.option("--logic", type=click.Choice(["a", "l"]), default="a", show_default=True, help="Logic of the goal file")
@click.option("--max-nodes", type=int, default=None, help="Formula size for enumerated and translations")
@click.option("--samples", type=int, default=None, help="Soundness samples per valid goal")
def corpus(suite, goals_file, logic, max_nodes, samples):
    """Run an acceptance suite or a goal file"""
    try:
        if (suite is None) == (goals_file is None):
            raise click.UsageError("Give exactly one of --suite and --goals")
        config = Config.load()
        if goals_file is not None:
            suite = "goals"
        kwargs: dict = {"path": goals_file, "logic": logic} if suite == "goals" else {}
        if max_nodes is not None and suite in ("enumerated", "translations"):
            kwargs["max_nodes"] = max_nodes
        if samples is not None and suite in ("axioms", "enumerated"):
            kwargs["samples"] = samples
        console.print(f"[bold cyan]Running suite {suite}...[/bold cyan]\n")
        result = SuiteRunner(config, Engine(config, _emitter(config))).run(suite, **kwargs)
    except (RuntimeError, OSError, ValueError, click.ClickException) as e:
        _fail(e)
    except Exception as e:
        _crash(e)

    table = Table(title=f"Suite {suite}", box=box.SIMPLE)
    table.add_column("Passed", style="green")
    table.add_column("Failed", style="red")
    table.add_column("Elapsed")
    table.add_row(str(result.passed), str(result.failed), f"{result.elapsed_ms} ms")
    console.print(table)
    for failure in result.failures[:20]:
        console.print(f"  FAIL {escape(failure)}")
    if result.ok:
        console.print("[bold green]OK All checks passed[/bold green]")
        sys.exit(EXIT_VALID)
    sys.exit(EXIT_INVALID)


@main.command()
@click.option("--searches", type=int, default=500, show_default=True, help="Number of random searches")
@click.option("--depth", type=int, default=3, show_default=True, help="Formula depth")
@click.option("--seed", type=int, default=0, show_default=True)
def bench(searches, depth, seed):
    """Run random GA_t/GŁ_t searches and report measure statistics"""
    try:
        config = Config.load()
        emitter = TraceEmitter(Path.cwd(), config=config, persist=config.trace_enabled)
        result = run_bench(searches, depth, seed, config=config, emitter=emitter)
    except (RuntimeError, OSError, ValueError, click.ClickException) as e:
        _fail(e)
    except Exception as e:
        _crash(e)

    summary = Table(title="Focused searches", box=box.SIMPLE)
    summary.add_column("Metric", style="cyan")
    summary.add_column("Value")
    for key in ("searches", "valid", "steps", "violations", "timeouts", "errors", "max_depth"):
        summary.add_row(key, str(getattr(result, key)))
    console.print(summary)

    rules = Table(title="Rule applications", box=box.SIMPLE)
    rules.add_column("Rule", style="cyan")
    rules.add_column("Count")
    for rule, n in sorted(result.rule_counts.items()):
        rules.add_row(escape(rule), str(n))
    console.print(rules)
    sys.exit(EXIT_VALID if result.violations == 0 and result.errors == 0 else EXIT_INVALID)


@main.group()
def config():
    """Manage prover.yaml"""


@config.command()
@click.option("--force", is_flag=True, help="Overwrite an existing prover.yaml")
def init(force):
    """Write prover.yaml with default values"""
    path = Path.cwd() / CONFIG_FILENAME
    if path.exists() and not force:
        console.print(f"[yellow]{CONFIG_FILENAME} already exists (use --force to overwrite)[/yellow]")
        sys.exit(EXIT_INVALID)
    try:
        Config.default().save(path)
    except OSError as e:
        _fail(e)
    console.print(f"[bold green]OK Created {CONFIG_FILENAME}[/bold green]")


@config.command()
def show():
    """Print the effective configuration"""
    try:
        cfg = Config.load()
    except (OSError, ValueError) as e:
        _fail(e)
    table = Table(title="Configuration", box=box.SIMPLE)
    table.add_column("Key", style="cyan")
    table.add_column("Value")
    for section, values in cfg.data.items():
        if isinstance(values, dict):
            for key, value in values.items():
                table.add_row(f"{section}.{key}", escape(str(value)))
        else:
            table.add_row(section, escape(str(values)))
    console.print(table)


if __name__ == "__main__":
    main()
