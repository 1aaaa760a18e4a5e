"""
End-to-end pipeline: census, spectrum, cone, transversality, delta, density,
residuals and the quasi-invariance record for one group specification
"""
import logging
import math
from pathlib import Path
from typing import Callable, Optional

from .config import get_settings
from .errors import DimensionMismatch, EmptyCells, InsufficientGrowthData, NotJointlyLoxodromic
from .groups.ball import Ball, enumerate_ball, make_element
from .groups.group_spec import GroupSpec, load_group_spec
from .groups.lattice import non_arithmeticity_report
from .groups.projections import jordan_projection, length_spectrum, limit_cone_sample
from .groups.transversality import (
    componentwise_shadow_report,
    div_factors_report,
    transversality_check,
)
from .measures.burger_roblin import BoxRegion, horo_invariance_defect, shift_ratio
from .measures.density import (
    AtomicMeasure,
    conformality_residual,
    full_boundary_cells,
    ps_density,
)
from .measures.poincare import LinearForm, critical_exponent
from .models import PipelineResult
from .reporters import CSVReporter, JSONReporter, MarkdownReporter

logger = logging.getLogger(__name__)

NON_ARITHMETICITY_THRESHOLD = 1e-3
SHADOW_RADIUS = 1.0
CENSUS_COLUMNS = ['word_length', 'elements', 'total', 'min_cartan', 'max_cartan']
RESIDUAL_COLUMNS = ['generator', 'cell_id', 'cell', 'mass', 'image_mass', 'residual']

ARTIFACT_FILES = {
    'census': 'census.csv',
    'spectrum': 'spectrum.json',
    'non_arithmeticity': 'non_arithmeticity.json',
    'cone': 'cone.csv',
    'transversality': 'transversality.json',
    'delta': 'delta.json',
    'measure': 'measure.json',
    'residual': 'residual.csv',
    'quasi_invariance': 'quasi_invariance.json',
    'summary': 'summary.md',
    'index': 'pipeline.json',
}


def census_rows(ball: Ball):
    """Per word length: new elements, running total and the Cartan range"""
    rows, total = [], 0
    for n in range(ball.length + 1):
        index = ball.sphere(n)
        if not index.size:
            continue
        total += index.size
        cartan = ball.cartan[index]
        rows.append({
            'word_length': n,
            'elements': int(index.size),
            'total': total,
            'min_cartan': cartan.min(axis=0),
            'max_cartan': cartan.max(axis=0),
        })
    return rows


def first_loxodromic(spec: GroupSpec):
    """First generator loxodromic in every factor, with its Jordan projection"""
    for name in spec.generators:
        element = make_element(spec, name)
        try:
            return element, jordan_projection(element)
        except NotJointlyLoxodromic:
            continue
    raise InsufficientGrowthData("No generator is loxodromic in every factor")


def quasi_invariance_record(spec: GroupSpec, psi: LinearForm, nu: AtomicMeasure, delta: float):
    """Shift ratio along tau_phi and the horospherical invariance defect on the unit box"""
    phi, tau = first_loxodromic(spec)
    region = BoxRegion.unit(full_boundary_cells(spec.r))
    observed, expected = shift_ratio(nu, delta, psi, region, tau)
    invariance = horo_invariance_defect(
        nu, delta, psi, phi.matrix, region, spec.basepoint, phi.word
    )
    return {
        'phi': phi.word,
        'tau': tau.tolist(),
        'delta': delta,
        'psi': psi.to_list(),
        'region': region.to_dict(),
        'observed_ratio': observed,
        'expected_ratio': expected,
        'ratio_error': abs(observed / expected - 1.0) if expected > 0 else math.inf,
        'horo_invariance': invariance.to_dict(),
    }


class _Run:
    """Writes artifacts into one directory and records refusals"""

    def __init__(self, result: PipelineResult, out_dir: Path,
                 on_step: Optional[Callable[[str], None]]):
        self.result = result
        self.out_dir = out_dir
        self.on_step = on_step
        self.json = JSONReporter()
        self.csv = CSVReporter()

    def path(self, kind: str) -> str:
        return str(self.out_dir / ARTIFACT_FILES[kind])

    def step(self, kind: str, action: Callable[[], None]) -> bool:
        if self.on_step:
            self.on_step(kind)
        try:
            action()
            return True
        except (InsufficientGrowthData, EmptyCells) as e:
            logger.warning("%s refused: %s", kind, e)
            self.result.refused.append(f"{kind}: {e}")
            return False

    def write_json(self, kind: str, record) -> None:
        data = record.to_dict() if hasattr(record, 'to_dict') else record
        self.json.generate(data, self.path(kind))
        self.result.add_artifact(kind, ARTIFACT_FILES[kind], data)

    def write_csv(self, kind: str, rows, columns, record=None) -> None:
        self.csv.generate(rows, columns, self.path(kind))
        self.result.add_artifact(kind, ARTIFACT_FILES[kind], record)


def run_pipeline(
    spec_path: str, psi: LinearForm, Lmax: int, out_dir: str = "horofol-out", workers: int = 1,
    on_step: Optional[Callable[[str], None]] = None,
) -> PipelineResult:
    """Compute and export every artifact for a specification.

    Steps that need a larger ball are refused with InsufficientGrowthData and
    listed in the result; the census is always written.
    """
    settings = get_settings()
    spec = load_group_spec(spec_path)
    if psi.r != spec.r:
        raise DimensionMismatch(f"Form of rank {psi.r} for a group acting on {spec.r} factors")

    result = PipelineResult(spec.name or spec_path, Lmax, psi.to_list())
    run = _Run(result, Path(out_dir), on_step)
    ball = enumerate_ball(spec, Lmax, workers)
    state = {}

    def census():
        run.write_csv('census', census_rows(ball), CENSUS_COLUMNS, {'elements': len(ball)})

    def spectrum():
        sample = length_spectrum(spec, Lmax, ball=ball)
        run.write_json('spectrum', sample)
        if not len(sample.vectors):
            raise InsufficientGrowthData("No jointly loxodromic element in the ball")
        report = non_arithmeticity_report(sample, NON_ARITHMETICITY_THRESHOLD)
        run.write_json('non_arithmeticity', report)

    def cone():
        directions = limit_cone_sample(spec, Lmax, ball=ball)
        columns = ['sample'] + [f"u{i + 1}" for i in range(spec.r)]
        rows = [
            dict(sample=k, **{f"u{i + 1}": float(v) for i, v in enumerate(row)})
            for k, row in enumerate(directions)
        ]
        run.write_csv('cone', rows, columns, {'samples': len(rows)})

    def transversality():
        report = transversality_check(spec, Lmax, ball=ball)
        run.write_json('transversality', {
            'transversality': report.to_dict(),
            'div_factors': div_factors_report(spec, Lmax, ball=ball).to_dict(),
            'componentwise_shadow': componentwise_shadow_report(
                spec, Lmax, SHADOW_RADIUS, ball=ball
            ).to_dict(),
        })

    def delta():
        estimate = critical_exponent(spec, psi, Lmax, ball=ball)
        state['delta'] = estimate.delta
        run.write_json('delta', estimate)

    def measure():
        if 'delta' not in state:
            raise InsufficientGrowthData("Density needs a critical exponent estimate")
        s = state['delta'] + settings.DENSITY_S_OFFSET
        nu = ps_density(spec, psi, s, Lmax, ball=ball)
        state['nu'], state['s'] = nu, s
        run.write_json('measure', nu)

    def residual():
        if 'nu' not in state:
            raise InsufficientGrowthData("Residuals need a density")
        rows, worst = [], {}
        for name in spec.generators:
            report = conformality_residual(
                spec, psi, state['s'], Lmax, make_element(spec, name), settings.CELLS_PER_FACTOR,
                ball=ball, nu=state['nu'],
            )
            worst[name] = report.residual
            rows.extend(dict(row, generator=name) for row in report.rows)
        run.write_csv('residual', rows, RESIDUAL_COLUMNS, worst)

    def quasi_invariance():
        if 'nu' not in state:
            raise InsufficientGrowthData("Quasi-invariance needs a density")
        record = quasi_invariance_record(spec, psi, state['nu'], state['delta'])
        run.write_json('quasi_invariance', record)

    run.step('census', census)
    if Lmax < 1:
        for kind in ('spectrum', 'cone', 'transversality', 'delta', 'measure', 'residual',
                     'quasi_invariance'):
            run.step(kind, _refuse(kind, Lmax))
    else:
        for kind, action in (('spectrum', spectrum), ('cone', cone),
                             ('transversality', transversality), ('delta', delta),
                             ('measure', measure), ('residual', residual),
                             ('quasi_invariance', quasi_invariance)):
            run.step(kind, action)

    MarkdownReporter().generate(result, run.path('summary'))
    result.artifacts['summary'] = ARTIFACT_FILES['summary']
    run.json.generate(result, run.path('index'))
    logger.info("pipeline wrote %d artifacts, refused %d steps",
                len(result.artifacts), len(result.refused))
    return result


def _refuse(kind: str, Lmax: int) -> Callable[[], None]:
    def action():
        raise InsufficientGrowthData(f"{kind} needs a ball of positive radius, got L = {Lmax}")
    return action
