"""
Command-line interface for horofol
"""
import functools
import logging
import sys
from typing import Dict, Optional, Tuple

import click
from rich import box
from rich.console import Console
from rich.logging import RichHandler
from rich.panel import Panel
from rich.progress import Progress, SpinnerColumn, TextColumn
from rich.table import Table

from . import __version__
from .config import Settings, get_settings, use_settings
from .errors import HorofolError, InputError, VerificationFailure
from .groups.ball import enumerate_ball, make_element
from .groups.group_spec import GroupSpec, load_group_spec
from .groups.lattice import non_arithmeticity_report
from .groups.projections import length_spectrum, limit_cone_sample
from .groups.transversality import (
    componentwise_shadow_report,
    div_factors_report,
    transversality_check,
)
from .measures.density import conformality_residual, full_boundary_cells, ps_density
from .measures.essential import essential_witness
from .measures.poincare import LinearForm, critical_exponent
from .models import LemmaId, VerifyJob
from .pipeline import (
    CENSUS_COLUMNS,
    RESIDUAL_COLUMNS,
    census_rows,
    first_loxodromic,
    quasi_invariance_record,
    run_pipeline,
)
from .reporters import CSVReporter, JSONReporter
from .verifiers import registered, run_verify

console = Console()
logger = logging.getLogger(__name__)


def _fail(e: HorofolError) -> None:
    console.print(f"\n[red]✗ Error:[/red] {e}\n")
    ctx = click.get_current_context(silent=True)
    if ctx is not None and (ctx.find_root().obj or {}).get('verbose'):
        console.print_exception()
    sys.exit(e.exit_code)


def handles_errors(command):
    """Turn library errors into a message and their exit code"""

    @functools.wraps(command)
    def wrapper(*args, **kwargs):
        try:
            return command(*args, **kwargs)
        except HorofolError as e:
            _fail(e)

    return wrapper


def spec_options(command):
    """--spec, --L and --workers shared by the group commands"""
    command = click.option('--workers', type=int, default=1, show_default=True,
                           help='Worker processes for ball enumeration')(command)
    command = click.option('--L', 'L', type=int, default=8, show_default=True,
                           help='Maximal word length')(command)
    command = click.option('--spec', 'spec_path', default='diagonal_schottky', show_default=True,
                           help='Group specification JSON file or bundled name')(command)
    return command


def psi_option(command):
    return click.option('--psi', default=None,
                        help='Linear form a,b,... (default: uniform 1/r)')(command)


def out_option(command):
    return click.option('--out', '-o', default=None, help='Output file path')(command)


def _form(psi: Optional[str], spec: GroupSpec) -> LinearForm:
    if psi is None:
        return LinearForm(tuple(1.0 / spec.r for _ in range(spec.r)))
    return LinearForm.parse(psi)


def _parse_tolerances(pairs: Tuple[str, ...]) -> Dict[str, float]:
    tolerances = {}
    for pair in pairs:
        key, sep, value = pair.partition('=')
        if not sep or not key:
            raise InputError(f"Tolerance must look like key=value, got '{pair}'")
        try:
            tolerances[key.strip()] = float(value)
        except ValueError as e:
            raise InputError(f"Tolerance {key} is not a number: '{value}'") from e
    return tolerances


def _header(title: str) -> None:
    console.print(
        Panel.fit(f"[bold cyan]horofol[/bold cyan] - {title}", subtitle=f"v{__version__}")
    )


def _saved(path: str) -> None:
    console.print(f"[green]✓[/green] Saved to: {path}")


def _density_exponent(spec, psi, L, workers, s, ball):
    if s is not None:
        return s
    estimate = critical_exponent(spec, psi, L, workers, ball=ball)
    console.print(f"[cyan]→[/cyan] delta = {estimate.delta:.6f}")
    return estimate.delta + get_settings().DENSITY_S_OFFSET


@click.group()
@click.version_option(version=__version__)
@click.option('--config', 'config_path', type=click.Path(exists=True), default=None,
              help='YAML file of tolerance and cap overrides')
@click.option('--verbose', '-v', is_flag=True, help='Verbose output')
@click.pass_context
def main(ctx, config_path: Optional[str], verbose: bool):
    """
    horofol - Horospherical foliations of transverse groups

    Busemann cocycles, shadows, Cartan projections, Patterson-Sullivan densities
    and seeded verification of the quantitative lemmas behind them.
    """
    ctx.obj = {'verbose': verbose}
    logging.basicConfig(
        level=logging.DEBUG if verbose else logging.WARNING,
        format="%(message)s",
        handlers=[RichHandler(console=console, show_path=False)],
        force=True,
    )
    try:
        use_settings(Settings.load(config_path))
    except HorofolError as e:
        _fail(e)


@main.command()
@click.option('--lemma', required=True, help='Lemma id, see `horofol lemmas`')
@click.option('--trials', type=int, default=100, show_default=True)
@click.option('--seed', type=int, default=0, show_default=True)
@click.option('--tol', multiple=True, help='Tolerance override key=value (repeatable)')
@click.option('--workers', type=int, default=1, show_default=True)
@click.option('--timing', is_flag=True, help='Write wall time into the JSON report')
@out_option
@handles_errors
def verify(lemma: str, trials: int, seed: int, tol: Tuple[str, ...], workers: int, timing: bool,
           out: Optional[str]):
    """Run a seeded verification suite for one lemma"""
    job = VerifyJob(LemmaId.parse(lemma), trials, seed, _parse_tolerances(tol), workers)
    _header("Lemma verification")
    console.print(f"[cyan]→[/cyan] Lemma: [bold]{job.lemma_id.value}[/bold]")
    console.print(f"[cyan]→[/cyan] Trials: [bold]{trials}[/bold], seed [bold]{seed}[/bold]")

    with Progress(SpinnerColumn(), TextColumn("[progress.description]{task.description}"),
                  console=console) as progress:
        task = progress.add_task("[cyan]Running trials...", total=None)
        report = run_verify(job)
        progress.update(task, completed=True)

    table = Table(title="Worst case", box=box.ROUNDED)
    table.add_column("Field", style="bold")
    table.add_column("Value")
    for key, value in report.worst_case.items():
        table.add_row(str(key), str(value))
    console.print(table)
    console.print(f"[cyan]→[/cyan] Wall time: {report.wall_time:.3f}s")

    if out:
        JSONReporter().generate(report.to_dict(timing=timing), out)
        _saved(out)

    if not report.passed:
        console.print(f"\n[red]✗[/red] {report.failures}/{trials} trials failed\n")
        sys.exit(VerificationFailure.exit_code)
    console.print("\n[green]✓[/green] All trials passed\n")


@main.command()
def lemmas():
    """List the registered verifiers"""
    table = Table(title="Registered verifiers", box=box.ROUNDED)
    table.add_column("Lemma", style="bold cyan")
    table.add_column("Checks")
    for verifier in registered():
        table.add_row(verifier.lemma_id.value, verifier.description)
    console.print(table)


@main.command()
@spec_options
@out_option
@handles_errors
def ball(spec_path: str, L: int, workers: int, out: Optional[str]):
    """Enumerate the word ball and print its census"""
    spec = load_group_spec(spec_path)
    rows = census_rows(enumerate_ball(spec, L, workers))

    table = Table(title=f"Ball census: {spec.name}", box=box.ROUNDED)
    table.add_column("Length", justify="right")
    table.add_column("Elements", justify="right")
    table.add_column("Total", justify="right")
    table.add_column("Min kappa")
    table.add_column("Max kappa")
    for row in rows:
        table.add_row(
            str(row['word_length']), str(row['elements']), str(row['total']),
            ", ".join(f"{v:.3f}" for v in row['min_cartan']),
            ", ".join(f"{v:.3f}" for v in row['max_cartan']),
        )
    console.print(table)

    if out:
        CSVReporter().generate(rows, CENSUS_COLUMNS, out)
        _saved(out)


@main.command()
@spec_options
@click.option('--threshold', type=float, default=1e-3, show_default=True,
              help='Covolume below which the sample counts as dense')
@out_option
@handles_errors
def spectrum(spec_path: str, L: int, workers: int, threshold: float, out: Optional[str]):
    """Jordan projections of the ball and the non-arithmeticity heuristic"""
    spec = load_group_spec(spec_path)
    sample = length_spectrum(spec, L, workers)
    console.print(f"[cyan]→[/cyan] {len(sample.vectors)} distinct Jordan projections")
    if len(sample.vectors):
        report = non_arithmeticity_report(sample, threshold)
        mark = "[green]✓[/green]" if report.dense_heuristic else "[red]✗[/red]"
        console.print(f"{mark} Dense heuristic (rank {report.rank}, "
                      f"covolume {report.lattice_covolume:.3e})")
    if out:
        JSONReporter().generate(sample, out)
        _saved(out)


@main.command()
@spec_options
@out_option
@handles_errors
def cone(spec_path: str, L: int, workers: int, out: Optional[str]):
    """Unit Cartan directions sampling the limit cone"""
    spec = load_group_spec(spec_path)
    directions = limit_cone_sample(spec, L, workers)
    console.print(f"[cyan]→[/cyan] {len(directions)} directions")
    if len(directions):
        for i, (lo, hi) in enumerate(zip(directions.min(axis=0), directions.max(axis=0)), 1):
            console.print(f"  u{i} in [{lo:.4f}, {hi:.4f}]")
    if out:
        columns = ['sample'] + [f"u{i + 1}" for i in range(spec.r)]
        rows = [
            dict(sample=k, **{f"u{i + 1}": float(v) for i, v in enumerate(row)})
            for k, row in enumerate(directions)
        ]
        CSVReporter().generate(rows, columns, out)
        _saved(out)


@main.command()
@spec_options
@click.option('--R', 'R', type=float, default=1.0, show_default=True,
              help='Shadow radius in the first factor')
@out_option
@handles_errors
def transverse(spec_path: str, L: int, workers: int, R: float, out: Optional[str]):
    """Divergence, antipodality and the componentwise shadow diagnostic"""
    spec = load_group_spec(spec_path)
    ball_ = enumerate_ball(spec, L, workers)
    report = transversality_check(spec, L, ball=ball_)
    factors = div_factors_report(spec, L, ball=ball_)
    shadows = componentwise_shadow_report(spec, L, R, ball=ball_)

    table = Table(title="Transversality", box=box.ROUNDED)
    table.add_column("Check", style="bold")
    table.add_column("Status", justify="center")
    table.add_column("Detail")
    for name, ok, detail in (
        ("divergent", report.divergent_ok, f"floor {report.growth_floor:.3f}"),
        ("antipodal", report.antipodal_ok, f"{len(report.witnesses)} witnesses"),
        ("div factors", factors.holds, ", ".join(f"{t:.2f}" for t in factors.thresholds)),
    ):
        status = "[green]✓[/green]" if ok else "[red]✗[/red]"
        table.add_row(name, status, detail)
    table.add_row("shadow radius", "[cyan]→[/cyan]",
                  f"{shadows.max_radius:.4f} over {shadows.pairs_in_shadow} pairs")
    console.print(table)

    if out:
        JSONReporter().generate({
            'transversality': report,
            'div_factors': factors,
            'componentwise_shadow': shadows,
        }, out)
        _saved(out)
    if not (report.divergent_ok and report.antipodal_ok):
        sys.exit(VerificationFailure.exit_code)


@main.command()
@spec_options
@psi_option
@out_option
@handles_errors
def delta(spec_path: str, L: int, workers: int, psi: Optional[str], out: Optional[str]):
    """Critical exponent of the psi-Poincare series"""
    spec = load_group_spec(spec_path)
    estimate = critical_exponent(spec, _form(psi, spec), L, workers)
    console.print(f"[cyan]→[/cyan] delta = [bold]{estimate.delta:.6f}[/bold] "
                  f"from {estimate.buckets_used} buckets up to T = {estimate.complete_up_to:.3f}")
    mark = "[green]✓[/green]" if estimate.divergence_type_evidence else "[yellow]⚠[/yellow]"
    console.print(f"{mark} Divergence-type evidence (growth {estimate.growth:.4f})")
    if out:
        JSONReporter().generate(estimate, out)
        _saved(out)


@main.command()
@spec_options
@psi_option
@click.option('--s', 's', type=float, default=None, help='Exponent (default: delta + offset)')
@out_option
@handles_errors
def density(spec_path: str, L: int, workers: int, psi: Optional[str], s: Optional[float],
            out: Optional[str]):
    """Atomic Patterson-Sullivan density at exponent s"""
    spec = load_group_spec(spec_path)
    form = _form(psi, spec)
    ball_ = enumerate_ball(spec, L, workers)
    s = _density_exponent(spec, form, L, workers, s, ball_)
    nu = ps_density(spec, form, s, L, ball=ball_)
    console.print(f"[cyan]→[/cyan] {len(nu)} atoms at s = {s:.6f}")
    if out:
        JSONReporter().generate(nu, out)
        _saved(out)


@main.command()
@spec_options
@psi_option
@click.option('--s', 's', type=float, default=None, help='Exponent (default: delta + offset)')
@click.option('--generator', '-g', 'words', multiple=True,
              help='Word to test (default: every generator)')
@click.option('--cells', type=int, default=None, help='Cells per factor')
@out_option
@handles_errors
def residual(spec_path: str, L: int, workers: int, psi: Optional[str], s: Optional[float],
             words: Tuple[str, ...], cells: Optional[int], out: Optional[str]):
    """Conformality residual of the density per group element"""
    spec = load_group_spec(spec_path)
    form = _form(psi, spec)
    ball_ = enumerate_ball(spec, L, workers)
    s = _density_exponent(spec, form, L, workers, s, ball_)
    nu = ps_density(spec, form, s, L, ball=ball_)
    cells = cells or get_settings().CELLS_PER_FACTOR

    table = Table(title="Conformality residuals", box=box.ROUNDED)
    table.add_column("Element", style="bold")
    table.add_column("Residual", justify="right")
    rows = []
    for word in words or tuple(spec.generators):
        report = conformality_residual(spec, form, s, L, make_element(spec, word), cells,
                                       ball=ball_, nu=nu)
        table.add_row(word, f"{report.residual:.6f}")
        rows.extend(dict(row, generator=word) for row in report.rows)
    console.print(table)
    if out:
        CSVReporter().generate(rows, RESIDUAL_COLUMNS, out)
        _saved(out)


@main.command('br-check')
@spec_options
@psi_option
@click.option('--tol', type=float, default=1e-9, show_default=True,
              help='Allowed relative error of the shift ratio')
@out_option
@handles_errors
def br_check(spec_path: str, L: int, workers: int, psi: Optional[str], tol: float,
             out: Optional[str]):
    """Burger-Roblin quasi-invariance under translation by tau_phi"""
    spec = load_group_spec(spec_path)
    form = _form(psi, spec)
    ball_ = enumerate_ball(spec, L, workers)
    estimate = critical_exponent(spec, form, L, workers, ball=ball_)
    nu = ps_density(spec, form, estimate.delta + get_settings().DENSITY_S_OFFSET, L, ball=ball_)
    record = quasi_invariance_record(spec, form, nu, estimate.delta)

    console.print(f"[cyan]→[/cyan] phi = {record['phi']}, delta = {estimate.delta:.6f}")
    console.print(f"[cyan]→[/cyan] ratio {record['observed_ratio']:.9g} "
                  f"against {record['expected_ratio']:.9g}")
    console.print(f"[cyan]→[/cyan] invariance defect "
                  f"{record['horo_invariance']['defect']:.3e}")
    if out:
        JSONReporter().generate(record, out)
        _saved(out)
    if not record['ratio_error'] <= tol:
        console.print(f"\n[red]✗[/red] Ratio error {record['ratio_error']:.3e} exceeds {tol}\n")
        sys.exit(VerificationFailure.exit_code)
    console.print("\n[green]✓[/green] Quasi-invariance holds\n")


@main.command()
@spec_options
@psi_option
@click.option('--phi', default=None, help='Loxodromic word (default: first generator)')
@click.option('--a', 'target', required=True, help='Target vector a,b,... in R^r')
@click.option('--eps', type=float, default=0.5, show_default=True)
@handles_errors
def essential(spec_path: str, L: int, workers: int, psi: Optional[str], phi: Optional[str],
              target: str, eps: float):
    """Search the ball for a witness that the target lies in the essential subgroup"""
    spec = load_group_spec(spec_path)
    form = _form(psi, spec)
    try:
        a = [float(v) for v in target.split(",")]
    except ValueError as e:
        raise InputError(f"Cannot read a target vector from '{target}'") from e
    ball_ = enumerate_ball(spec, L, workers)
    s = _density_exponent(spec, form, L, workers, None, ball_)
    nu = ps_density(spec, form, s, L, ball=ball_)
    element = make_element(spec, phi) if phi else first_loxodromic(spec)[0]
    witness = essential_witness(spec, nu, full_boundary_cells(spec.r), element, a, eps, L,
                                ball=ball_)
    console.print(f"[green]✓[/green] Witness g = [bold]{witness.word}[/bold] "
                  f"for phi = {element.word}")


@main.command()
@spec_options
@psi_option
@click.option('--out', '-o', default='horofol-out', show_default=True, help='Output directory')
@handles_errors
def pipeline(spec_path: str, L: int, workers: int, psi: Optional[str], out: str):
    """Compute every artifact for a specification into one directory"""
    form = _form(psi, load_group_spec(spec_path))
    _header("Pipeline")

    with Progress(SpinnerColumn(), TextColumn("[progress.description]{task.description}"),
                  console=console) as progress:
        task = progress.add_task("[cyan]Enumerating ball...", total=None)
        result = run_pipeline(
            spec_path, form, L, out, workers,
            on_step=lambda kind: progress.update(task, description=f"[cyan]{kind}..."),
        )
        progress.update(task, completed=True)

    table = Table(title="Artifacts", box=box.ROUNDED)
    table.add_column("Kind", style="bold")
    table.add_column("File")
    for kind, path in result.artifacts.items():
        table.add_row(kind, path)
    console.print(table)

    if result.refused:
        for reason in result.refused:
            console.print(f"[red]✗[/red] Refused {reason}")
        sys.exit(InputError.exit_code)
    console.print(f"\n[green]✓[/green] Pipeline written to: {out}\n")


if __name__ == '__main__':
    main()
