"""
Tests for the command-line interface
"""
import json

import pytest
from click.testing import CliRunner

from horofol import __version__
from horofol.cli import main


@pytest.fixture
def runner():
    return CliRunner()


def test_version(runner):
    result = runner.invoke(main, ['--version'])
    assert result.exit_code == 0
    assert __version__ in result.output


def test_lemmas(runner):
    result = runner.invoke(main, ['lemmas'])
    assert result.exit_code == 0
    assert "appendix_const" in result.output
    assert "jordan_growth" in result.output


class TestVerify:

    def test_passing_lemma(self, runner, tmp_path):
        out = tmp_path / "report.json"
        result = runner.invoke(main, ['verify', '--lemma', 'appendix_const', '--trials', '1',
                                      '--out', str(out)])
        assert result.exit_code == 0
        report = json.loads(out.read_text())
        assert report['failures'] == 0
        assert 'wall_time' not in report

    def test_timing_flag(self, runner, tmp_path):
        out = tmp_path / "report.json"
        runner.invoke(main, ['verify', '--lemma', 'cocycle', '--trials', '2', '--timing',
                             '--out', str(out)])
        assert 'wall_time' in json.loads(out.read_text())

    def test_reports_are_reproducible(self, runner, tmp_path):
        paths = [tmp_path / "first.json", tmp_path / "second.json"]
        for path in paths:
            runner.invoke(main, ['verify', '--lemma', 'shadow_buse', '--trials', '10',
                                 '--seed', '4', '--out', str(path)])
        assert paths[0].read_text() == paths[1].read_text()

    def test_failures_exit_2(self, runner):
        result = runner.invoke(main, ['verify', '--lemma', 'cocycle', '--trials', '3',
                                      '--tol', 'cocycle=-1'])
        assert result.exit_code == 2

    def test_unknown_lemma_exits_3(self, runner):
        result = runner.invoke(main, ['verify', '--lemma', 'nope'])
        assert result.exit_code == 3
        assert "Unknown lemma" in result.output

    def test_malformed_tolerance_exits_3(self, runner):
        result = runner.invoke(main, ['verify', '--lemma', 'cocycle', '--tol', 'cocycle'])
        assert result.exit_code == 3


class TestGroupCommands:

    def test_ball_census(self, runner, tmp_path):
        out = tmp_path / "census.csv"
        result = runner.invoke(main, ['ball', '--L', '2', '--out', str(out)])
        assert result.exit_code == 0
        assert len(out.read_text().splitlines()) == 4

    def test_negative_length_exits_3(self, runner):
        assert runner.invoke(main, ['ball', '--L', '-1']).exit_code == 3

    def test_missing_spec_exits_3(self, runner, tmp_path):
        result = runner.invoke(main, ['ball', '--spec', str(tmp_path / "missing.json")])
        assert result.exit_code == 3

    def test_delta_needs_long_words(self, runner):
        assert runner.invoke(main, ['delta', '--L', '3']).exit_code == 3

    def test_transverse(self, runner):
        result = runner.invoke(main, ['transverse', '--L', '5'])
        assert result.exit_code == 0
        assert "antipodal" in result.output

    def test_psi_rank_mismatch_exits_3(self, runner):
        assert runner.invoke(main, ['delta', '--L', '6', '--psi', '1']).exit_code == 3

    def test_unreachable_essential_target(self, runner):
        result = runner.invoke(main, ['essential', '--L', '6', '--a', '100,100', '--eps', '1'])
        assert result.exit_code == 1


def test_bad_config_exits_3(runner, tmp_path):
    config = tmp_path / "bad.yaml"
    config.write_text("no_such_setting: 1\n")
    result = runner.invoke(main, ['--config', str(config), 'lemmas'])
    assert result.exit_code == 3


def test_pipeline_refusals_exit_3(runner, tmp_path):
    result = runner.invoke(main, ['pipeline', '--L', '0', '--out', str(tmp_path)])
    assert result.exit_code == 3
    assert (tmp_path / "census.csv").exists()
