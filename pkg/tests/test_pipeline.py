"""
Tests for the end-to-end pipeline
"""
import json

import pytest

from horofol.errors import DimensionMismatch
from horofol.measures.poincare import LinearForm
from horofol.pipeline import ARTIFACT_FILES, census_rows, first_loxodromic, run_pipeline
from horofol.groups.ball import enumerate_ball


def test_census_rows(diagonal_spec):
    rows = census_rows(enumerate_ball(diagonal_spec, 2))
    assert [row['elements'] for row in rows] == [1, 4, 12]
    assert rows[-1]['total'] == 17
    assert rows[0]['max_cartan'].tolist() == [0.0, 0.0]


def test_first_loxodromic(diagonal_spec):
    element, tau = first_loxodromic(diagonal_spec)
    assert element.word == "a"
    assert tau == pytest.approx(list(element.cartan))


def test_rank_mismatch(tmp_path):
    with pytest.raises(DimensionMismatch):
        run_pipeline("diagonal_schottky", LinearForm.of(1.0), 2, str(tmp_path))


def test_zero_length_writes_census_only(tmp_path, uniform_psi):
    steps = []
    result = run_pipeline("diagonal_schottky", uniform_psi, 0, str(tmp_path), on_step=steps.append)
    assert set(result.artifacts) == {'census', 'summary', 'index'}
    assert len(result.refused) == 7
    assert steps[0] == 'census'
    assert (tmp_path / "census.csv").read_text().splitlines() == [
        "word_length,elements,total,min_cartan,max_cartan",
        "0,1,1,0.0 0.0,0.0 0.0",
    ]
    index = json.loads((tmp_path / "pipeline.json").read_text())
    assert index['max_word_length'] == 0
    assert index['refused'] == result.refused


def test_full_run(tmp_path, uniform_psi):
    result = run_pipeline("diagonal_schottky", uniform_psi, 6, str(tmp_path))
    for kind in ('census', 'spectrum', 'non_arithmeticity', 'cone', 'transversality', 'delta',
                 'measure', 'quasi_invariance', 'summary', 'index'):
        assert kind in result.artifacts
        assert (tmp_path / ARTIFACT_FILES[kind]).exists()
    assert result.records['quasi_invariance']['ratio_error'] < 1e-9
    assert result.records['quasi_invariance']['phi'] == "a"
    assert result.records['transversality']['transversality']['divergent_ok']
    summary = (tmp_path / "summary.md").read_text()
    assert "## Critical exponent" in summary


@pytest.mark.slow
def test_acceptance_length(tmp_path, uniform_psi):
    result = run_pipeline("diagonal_schottky", uniform_psi, 10, str(tmp_path))
    assert not result.refused
    assert result.records['quasi_invariance']['ratio_error'] < 1e-9
