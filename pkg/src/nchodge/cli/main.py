"""Main CLI entry point for nchodge."""

import functools
import logging
import sys
from collections.abc import Callable
from fractions import Fraction
from pathlib import Path
from typing import Any

import click
from pydantic import ValidationError
from rich.console import Console
from rich.panel import Panel
from rich.table import Table

from nchodge import __version__
from nchodge.ainf import check_ainf_relations, check_maurer_cartan, check_strict_units
from nchodge.ainf.bounding import deform_by_bounding_cochains
from nchodge.cli.document import LoadedDocument, emit_document, load_document, to_document
from nchodge.config import get_settings
from nchodge.connections import (
    BasisConnection,
    GGMConnection,
    random_basis_connection,
    tilde_independence,
)
from nchodge.cyclic import (
    NegativeCyclicComplex,
    check_trace_closed,
    free_generators,
    hc_minus_ranks,
    higher_residue_pairing,
    mukai_pairing,
)
from nchodge.errors import DocumentError, NCHodgeError, ParameterOutOfRange, UnknownSymbol
from nchodge.hochschild import (
    ComplexKind,
    HochschildComplex,
    degree_window,
    homology_ranks,
    homology_representatives,
)
from nchodge.models import ModelKind, ModelSpec, build_model, standard_models
from nchodge.scalars import Derivation
from nchodge.suite import run_suite
from nchodge.vshs import (
    check_miniversal,
    check_morphism,
    check_opposite_subspace,
    check_vshs,
    group_algebra_toy,
    mukai_sign,
    projective_line_toy,
)

console = Console()
logger = logging.getLogger(__name__)

EXIT_CHECK_FAILED = 1
EXIT_PARSE_ERROR = 2

VSHS_TOYS: dict[str, Callable[[], Any]] = {
    "projective_line": projective_line_toy,
    "classical_projective_line": lambda: projective_line_toy(quantum=False),
    "group_algebra": group_algebra_toy,
}


def setup_logging(verbose: bool = False) -> None:
    """Configure logging based on verbosity."""
    level = logging.DEBUG if verbose else get_settings().log_level.upper()
    logging.basicConfig(
        level=level,
        format="%(asctime)s - %(name)s - %(levelname)s - %(message)s",
    )


def handle_errors(command: Callable[..., None]) -> Callable[..., None]:
    """Map library errors to their exit codes."""

    @functools.wraps(command)
    def wrapper(*args: Any, **kwargs: Any) -> None:
        try:
            command(*args, **kwargs)
        except NCHodgeError as e:
            console.print(f"[bold red]Error:[/bold red] {type(e).__name__}: {e.message}")
            logger.debug("command failed", exc_info=True)
            sys.exit(e.exit_code)
        except ValidationError as e:
            console.print(f"[bold red]Invalid configuration:[/bold red] {e}")
            sys.exit(EXIT_PARSE_ERROR)

    return wrapper


def parse_degrees(value: str) -> tuple[int, int]:
    """``a..b`` (or a single degree) as an inclusive window."""
    try:
        if ".." in value:
            low, high = value.split("..", 1)
            window = (int(low), int(high))
        else:
            window = (int(value), int(value))
    except ValueError:
        raise DocumentError(f"cannot parse degree window {value!r}; expected a..b") from None
    if window[0] > window[1]:
        raise ParameterOutOfRange(f"empty degree window {value!r}")
    return window


def parse_rational(value: str) -> Fraction:
    try:
        return Fraction(value)
    except (ValueError, ZeroDivisionError):
        raise DocumentError(f"{value!r} is not a rational number") from None


def _truncation(report: dict) -> str:
    return ", ".join(f"{k}={v}" for k, v in report.items())


def _require_uncurved(loaded: LoadedDocument, what: str) -> None:
    if loaded.structure.is_curved():
        raise ParameterOutOfRange(f"{what} needs an uncurved structure; apply deform first")


@click.group()
@click.version_option(version=__version__)
@click.option("-v", "--verbose", is_flag=True, help="Enable verbose output")
def cli(verbose: bool) -> None:
    """nchodge - exact noncommutative Hodge theory for curved A-infinity categories.

    Reads category documents, computes Hochschild and negative cyclic
    homology, pairings and Getzler-Gauss-Manin connections, and checks
    VSHS axioms.
    """
    try:
        setup_logging(verbose)
    except ValidationError as e:
        console.print(f"[bold red]Invalid configuration:[/bold red] {e}")
        sys.exit(EXIT_PARSE_ERROR)


# =============================================================================
# Document commands
# =============================================================================


@cli.command()
@click.argument("file", type=click.Path(exists=True, dir_okay=False, path_type=Path))
@click.option("--json", "as_json", is_flag=True, help="Print the reports as JSON")
@handle_errors
def validate(file: Path, as_json: bool) -> None:
    """Parse a document and check the A-infinity relations and unit laws.

    Bounding cochains and trace functionals in the document are checked
    too. Exits 1 when any check fails.
    """
    loaded = load_document(file)
    structure = loaded.structure
    checks: dict[str, dict] = {}

    relations = check_ainf_relations(structure)
    checks["ainf_relations"] = relations.to_dict()
    units = check_strict_units(structure)
    checks["strict_units"] = units.to_dict()
    passed = relations.passed and units.passed
    if loaded.bounding is not None:
        mc = check_maurer_cartan(structure, loaded.bounding)
        checks["maurer_cartan"] = mc.to_dict()
        passed = passed and mc.passed
    if loaded.trace is not None:
        failing = check_trace_closed(structure, loaded.trace)
        checks["trace_closed"] = {"passed": not failing, "failing_words": failing}
        passed = passed and not failing

    if as_json:
        console.print_json(data={"passed": passed, "checks": checks})
    else:
        table = Table(title=f"Validation of {file.name}")
        table.add_column("Check", style="cyan")
        table.add_column("Result", style="green")
        table.add_column("Detail")
        for name, report in checks.items():
            ok = report.get("passed", False)
            detail = ""
            if name == "ainf_relations":
                detail = f"{len(relations.violations)} violations"
            elif name == "strict_units" and not units.applicable:
                detail = "no units declared"
            elif name == "strict_units":
                detail = "; ".join(units.failures[:3])
            table.add_row(name, "[green]pass[/green]" if ok else "[red]FAIL[/red]", detail)
        console.print(table)
        console.print(f"[dim]{_truncation(structure.ring.truncation.to_dict())}[/dim]")
    if not passed:
        sys.exit(EXIT_CHECK_FAILED)


@cli.command()
@click.argument("file", type=click.Path(exists=True, dir_okay=False, path_type=Path))
@click.option("--degrees", default="0..4", show_default=True, help="Degree window a..b")
@click.option("--length", "length_max", type=int, default=None, help="Bar length cap")
@click.option("--nonunital", is_flag=True, help="Use the non-unital complex")
@click.option("--json", "as_json", is_flag=True, help="Print the report as JSON")
@handle_errors
def hh(file: Path, degrees: str, length_max: int | None, nonunital: bool, as_json: bool) -> None:
    """Hochschild homology ranks on a degree window.

    A rank is flagged stable when raising the length cap does not change it.
    """
    loaded = load_document(file)
    kind = ComplexKind.NONUNITAL if nonunital else ComplexKind.HOCHSCHILD
    report = homology_ranks(loaded.structure, kind, parse_degrees(degrees), length_max)

    if as_json:
        console.print_json(data=report.to_dict())
        return
    table = Table(title=f"{report.complex_kind} homology of {file.name}")
    table.add_column("Degree", style="cyan", justify="right")
    table.add_column("Rank", style="green", justify="right")
    table.add_column("Chains", justify="right")
    table.add_column("Stable", style="yellow")
    for n in sorted(report.ranks):
        table.add_row(
            str(n),
            str(report.ranks[n]),
            str(report.chain_dimensions.get(n, 0)),
            "yes" if report.stable.get(n, False) else "no",
        )
    console.print(table)
    console.print(f"[dim]length_max={report.length_max}[/dim]")


@cli.command()
@click.argument("file", type=click.Path(exists=True, dir_okay=False, path_type=Path))
@click.option("--degrees", default="0..2", show_default=True, help="Degree window a..b")
@click.option("--length", "length_max", type=int, default=None, help="Bar length cap")
@click.option("--umax", "u_max", type=int, default=None, help="Largest power of u kept")
@click.option("--json", "as_json", is_flag=True, help="Print the report as JSON")
@handle_errors
def hc(file: Path, degrees: str, length_max: int | None, u_max: int | None, as_json: bool) -> None:
    """Truncated negative cyclic homology ranks."""
    loaded = load_document(file)
    report = hc_minus_ranks(loaded.structure, parse_degrees(degrees), length_max, u_max)

    if as_json:
        console.print_json(data=report.to_dict())
        return
    table = Table(title=f"Negative cyclic homology of {file.name}")
    table.add_column("Degree", style="cyan", justify="right")
    table.add_column("Rank", style="green", justify="right")
    table.add_column("Free", justify="right")
    table.add_column("Torsion", justify="right")
    table.add_column("Mod u", justify="right")
    for n in sorted(report.ranks):
        table.add_row(
            str(n),
            str(report.ranks[n]),
            str(report.free_ranks.get(n, 0)),
            str(report.torsion_ranks.get(n, 0)),
            str(report.mod_u_ranks.get(n, 0)),
        )
    console.print(table)


@cli.command()
@click.argument("file", type=click.Path(exists=True, dir_okay=False, path_type=Path))
@click.option(
    "--kind",
    type=click.Choice(["mukai", "residue"]),
    default="mukai",
    show_default=True,
    help="Pairing to evaluate",
)
@click.option("--degrees", "--classes", "degrees", default="0..1", show_default=True, help="Degrees of the classes paired")
@click.option("--length", "length_max", type=int, default=3, show_default=True, help="Bar length cap")
@click.option("--umax", "u_max", type=int, default=1, show_default=True, help="Largest power of u kept")
@click.option("--json", "as_json", is_flag=True, help="Print the Gram matrix as JSON")
@handle_errors
def pair(file: Path, kind: str, degrees: str, length_max: int, u_max: int, as_json: bool) -> None:
    """Gram matrix of the Mukai or higher residue pairing.

    Mukai pairs non-unital Hochschild homology representatives; residue
    pairs free generators of truncated negative cyclic homology.
    """
    loaded = load_document(file)
    structure = loaded.structure
    _require_uncurved(loaded, "pair")
    low, high = parse_degrees(degrees)
    window = degree_window(structure, low, high)

    labels: list[str] = []
    gram: list[list[str]] = []
    if kind == "mukai":
        complex_ = HochschildComplex(structure, nonunital=True, length_max=length_max)
        classes = []
        for n in window:
            for i, z in enumerate(homology_representatives(complex_, n).representatives):
                labels.append(f"{n}:{i}")
                classes.append(z)
        gram = [[str(mukai_pairing(complex_, a, b)) for b in classes] for a in classes]
    else:
        q = NegativeCyclicComplex(structure, length_max, u_max)
        generators = []
        for n in window:
            for i, s in enumerate(free_generators(q, n)):
                labels.append(f"{n}:{i}")
                generators.append(s)
        gram = [
            [str(higher_residue_pairing(q.hochschild, a, b)) for b in generators]
            for a in generators
        ]

    if as_json:
        console.print_json(data={"kind": kind, "classes": labels, "gram": gram})
        return
    if not labels:
        console.print("[yellow]No classes in the degree window.[/yellow]")
        return
    table = Table(title=f"{kind} pairing on {file.name}")
    table.add_column("", style="cyan")
    for label in labels:
        table.add_column(label, justify="right")
    for label, row in zip(labels, gram):
        table.add_row(label, *row)
    console.print(table)


@cli.command()
@click.argument("file", type=click.Path(exists=True, dir_okay=False, path_type=Path))
@click.option("--derivation", "label", default=None, help="Show only this Omega label")
@click.option("--degrees", default="0..1", show_default=True, help="Degrees of the generators")
@click.option("--length", "length_max", type=int, default=2, show_default=True, help="Bar length cap")
@click.option("--umax", "u_max", type=int, default=1, show_default=True, help="Largest power of u kept")
@click.option("--seed", type=int, default=1, show_default=True, help="Seed of the comparison connection")
@click.option("--json", "as_json", is_flag=True, help="Print the matrices as JSON")
@handle_errors
def ggm(
    file: Path,
    label: str | None,
    degrees: str,
    length_max: int,
    u_max: int,
    seed: int,
    as_json: bool,
) -> None:
    """Getzler-Gauss-Manin connection matrix on negative cyclic homology.

    Uses the document's derivation (T d/dT when absent) and the flat
    hom-space connection, and compares against a seeded random one. Exits 1
    when the matrix does not descend or depends on that choice.
    """
    loaded = load_document(file)
    structure = loaded.structure
    _require_uncurved(loaded, "ggm")
    derivation = loaded.derivation or Derivation.d_log_t(loaded.ring)
    if label is not None and label not in derivation.label_names:
        raise UnknownSymbol(f"unknown Omega label '{label}'")

    q = NegativeCyclicComplex(structure, length_max, u_max)
    low, high = parse_degrees(degrees)
    generators = [s for n in degree_window(structure, low, high) for s in free_generators(q, n)]
    flat = BasisConnection.flat(structure, derivation)
    on_homology = GGMConnection(q, flat, derivation).on_homology(generators)
    independence = tilde_independence(
        q, derivation, [flat, random_basis_connection(structure, derivation, seed=seed)], generators
    )
    labels = [label] if label is not None else on_homology.labels

    if as_json:
        data = on_homology.to_dict()
        data["independence"] = independence.to_dict()
        console.print_json(data=data)
    else:
        for name in labels:
            table = Table(title=f"u∇ along {name}")
            table.add_column("", style="cyan")
            for j in range(len(generators)):
                table.add_column(f"s{j}", justify="right")
            for i, row in enumerate(on_homology.matrices[name]):
                table.add_row(f"s{i}", *(str(v) for v in row))
            console.print(table)
        console.print(
            f"descends={on_homology.descends} independent_of_choice={independence.agree}"
        )
    if not (on_homology.descends and independence.agree):
        sys.exit(EXIT_CHECK_FAILED)


@cli.command()
@click.argument("file", type=click.Path(exists=True, dir_okay=False, path_type=Path))
@click.option("--output", type=click.Path(path_type=Path), help="Write the document here")
@handle_errors
def deform(file: Path, output: Path | None) -> None:
    """Apply the document's bounding cochains and emit the deformed structure."""
    loaded = load_document(file)
    if loaded.bounding is None:
        raise ParameterOutOfRange(f"{file.name} has no bounding_cochains block")
    mc = check_maurer_cartan(loaded.structure, loaded.bounding)
    if not mc.passed:
        logger.warning("bounding cochains of %s do not solve the Maurer-Cartan equation", file)
    deformed = deform_by_bounding_cochains(loaded.structure, loaded.bounding)
    text = emit_document(to_document(deformed, derivation=loaded.derivation))
    if output:
        output.write_text(text, encoding="utf-8")
        console.print(f"[green]Deformed structure saved to {output}[/green]")
    else:
        click.echo(text, nl=False)


@cli.command("vshs-check")
@click.argument("file", type=click.Path(exists=True, dir_okay=False, path_type=Path))
@click.option("--json", "as_json", is_flag=True, help="Print the reports as JSON")
@handle_errors
def vshs_check(file: Path, as_json: bool) -> None:
    """Check the VSHS axioms and the optional morphism, splitting and section."""
    loaded = load_document(file)
    vshs = loaded.vshs
    if vshs is None:
        raise DocumentError(f"{file.name} has no vshs block")

    reports: dict[str, Any] = {"vshs": check_vshs(vshs)}
    if loaded.morphism is not None:
        reports["morphism"] = check_morphism(
            loaded.morphism, vshs, vshs, require_isomorphism=loaded.require_isomorphism
        )
    if loaded.splitting is not None:
        reports["opposite_subspace"] = check_opposite_subspace(vshs, loaded.splitting)
    if loaded.section is not None:
        reports["miniversal"] = check_miniversal(vshs, loaded.section, loaded.tangent_labels)
    passed = all(r.passed for r in reports.values())
    sign = mukai_sign(vshs.dimension_parity)

    if as_json:
        console.print_json(
            data={
                "passed": passed,
                "sign": sign,
                "dimension_parity": vshs.dimension_parity,
                "reports": {name: r.to_dict() for name, r in reports.items()},
            }
        )
    else:
        table = Table(title=f"VSHS checks of {file.name}")
        table.add_column("Check", style="cyan")
        table.add_column("Result", style="green")
        for name, r in reports.items():
            table.add_row(name, "[green]pass[/green]" if r.passed else "[red]FAIL[/red]")
        console.print(table)
        axioms = reports["vshs"]
        console.print(
            f"leibniz={axioms.leibniz} covariance={axioms.covariance} "
            f"graded={axioms.graded} polarized={axioms.polarized}"
        )
        console.print(f"[dim]sign (-1)^(n(n+1)/2) = {sign} for n = {vshs.dimension_parity}[/dim]")
    if not passed:
        sys.exit(EXIT_CHECK_FAILED)


# =============================================================================
# Suite and models
# =============================================================================


@cli.command()
@click.option("--seed", type=int, default=1, show_default=True, help="Seed of every sampled datum")
@click.option("--quick", is_flag=True, help="Smaller length caps and fewer random models")
@click.option("--json", "as_json", is_flag=True, help="Print the full report as JSON")
@handle_errors
def suite(seed: int, quick: bool, as_json: bool) -> None:
    """Run the identity suite over every built-in model.

    Exits 1 when any check fails.
    """
    if not as_json:
        console.print(
            Panel.fit(
                f"[bold blue]nchodge identity suite[/bold blue]\nseed={seed} quick={quick}",
                title="Suite",
            )
        )
    report = run_suite(seed=seed, quick=quick)

    if as_json:
        console.print_json(data=report.to_dict())
    else:
        table = Table(title="Checks")
        table.add_column("Check", style="cyan")
        table.add_column("Passed", style="green", justify="right")
        table.add_column("Failed", style="red", justify="right")
        for name, counts in report.summary().items():
            table.add_row(name, str(counts["passed"]), str(counts["failed"]))
        console.print(table)
        for failure in report.failures[:20]:
            console.print(f"  [red]✗[/red] {failure.name} on {failure.model}: {failure.detail}")
        if report.passed:
            console.print(f"\n[bold green]✓ All {len(report.results)} checks passed[/bold green]")
        else:
            console.print(f"\n[bold red]{len(report.failures)} checks failed[/bold red]")
    if not report.passed:
        sys.exit(EXIT_CHECK_FAILED)


@cli.command()
def models() -> None:
    """List the built-in models."""
    table = Table(title="Built-in models")
    table.add_column("Name", style="cyan")
    table.add_column("Kind", style="green")
    for spec in standard_models():
        table.add_row(spec.name, ModelKind(spec.kind).value)
    console.print(table)
    console.print(f"[dim]VSHS toys: {', '.join(VSHS_TOYS)}[/dim]")


@cli.command("emit-model")
@click.argument("kind", type=click.Choice([k.value for k in ModelKind] + list(VSHS_TOYS)))
@click.option("-n", "n", type=int, default=1, show_default=True, help="Size parameter")
@click.option("--t-weight", default=None, help="Novikov weight (Clifford, deformed dual numbers)")
@click.option("--seed", type=int, default=1, show_default=True, help="Seed of a random DGA")
@click.option("--output", type=click.Path(path_type=Path), help="Write the document here")
@handle_errors
def emit_model(kind: str, n: int, t_weight: str | None, seed: int, output: Path | None) -> None:
    """Write a built-in model as a canonical document."""
    if kind in VSHS_TOYS:
        vshs = VSHS_TOYS[kind]()
        document = to_document(None, ring=vshs.ring, vshs=vshs)
    else:
        weights = (parse_rational(t_weight),) if t_weight is not None else ()
        built = build_model(ModelSpec(ModelKind(kind), n=n, t_weights=weights, seed=seed))
        document = to_document(built.structure, bounding=built.bounding, trace=built.trace)
    text = emit_document(document)
    if output:
        output.write_text(text, encoding="utf-8")
        console.print(f"[green]Model saved to {output}[/green]")
    else:
        click.echo(text, nl=False)


@cli.command()
@handle_errors
def config() -> None:
    """Show current configuration.

    Values come from NCHODGE_* environment variables and a .env file.
    """
    settings = get_settings()

    console.print(Panel.fit("[bold]nchodge Configuration[/bold]", title="Config"))

    table = Table(show_header=True)
    table.add_column("Setting", style="cyan")
    table.add_column("Value", style="green")

    table.add_row("Threads", str(settings.threads))
    table.add_row("Max complex dimension", str(settings.max_complex_dimension))
    table.add_row("Oracle max dimension", str(settings.oracle_max_dimension))
    table.add_row("Precision floor", settings.precision_floor)
    table.add_row("Inverse relative precision", str(settings.inverse_relative_precision))
    table.add_row("Default T precision", settings.default_t_precision)
    table.add_row("Default bulk degree max", str(settings.default_bulk_degree_max))
    table.add_row("Default u max", str(settings.default_u_max))
    table.add_row("Default length max", str(settings.default_length_max))
    table.add_row("Log Level", settings.log_level)

    console.print(table)


if __name__ == "__main__":
    cli()
