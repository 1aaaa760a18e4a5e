"""
Tests for atomic conformal densities and boundary cells
"""
import math

import numpy as np
import pytest

from horofol.errors import DimensionMismatch, InputError
from horofol.geometry.product_space import ProductBoundaryPoint
from horofol.groups.ball import enumerate_ball, make_element
from horofol.measures.density import (
    AtomicMeasure,
    BoundaryCell,
    cell_layout,
    cell_mass,
    cell_mass_difference,
    cell_of,
    conformality_residual,
    full_boundary_cells,
    grid_indices,
    ps_density,
)
from horofol.measures.poincare import critical_exponent


class TestCells:

    def test_layout(self):
        edges = cell_layout(4)
        assert len(edges) == 5
        assert edges[-1] == pytest.approx(2.0 * math.pi)
        with pytest.raises(InputError):
            cell_layout(0)

    def test_grid_indices_clamp_top(self):
        assert grid_indices(np.array([0.0, math.pi, 2.0 * math.pi]), 4).tolist() == [0, 2, 3]

    def test_cell_of_infinity(self):
        cell = cell_of(ProductBoundaryPoint.parse([None, 0.0]), 4)
        assert cell.grid_index == (0, 2)
        assert cell.contains_angles(np.array([[0.0, math.pi]])).all()

    def test_invalid_interval(self):
        with pytest.raises(InputError):
            BoundaryCell(((1.0, 0.5),))
        with pytest.raises(InputError):
            BoundaryCell(((0.0, 7.0),))

    def test_rank_mismatch(self):
        with pytest.raises(DimensionMismatch):
            full_boundary_cells(2)[0].contains_angles(np.zeros((3, 1)))


class TestDensity:

    def test_total_mass_and_atoms(self, diagonal_spec, uniform_psi):
        nu = ps_density(diagonal_spec, uniform_psi, 1.0, 4)
        assert nu.total_mass == pytest.approx(1.0)
        assert 0 < len(nu) <= len(enumerate_ball(diagonal_spec, 4)) - 1
        assert cell_mass(nu, full_boundary_cells(2)) == pytest.approx(1.0)

    def test_diagonal_atoms_lie_on_the_diagonal(self, diagonal_spec, uniform_psi):
        nu = ps_density(diagonal_spec, uniform_psi, 1.0, 3)
        finite = np.isfinite(nu.points[:, 0])
        assert np.array_equal(finite, np.isfinite(nu.points[:, 1]))
        assert nu.points[finite, 0] == pytest.approx(nu.points[finite, 1])

    def test_rejects_bad_arguments(self, diagonal_spec, uniform_psi):
        with pytest.raises(InputError):
            ps_density(diagonal_spec, uniform_psi, 0.0, 4)
        with pytest.raises(InputError):
            ps_density(diagonal_spec, uniform_psi, 1.0, 1)

    def test_negative_weights_rejected(self, uniform_psi):
        with pytest.raises(InputError):
            AtomicMeasure(np.zeros((1, 2)), np.array([-1.0]), 1.0, uniform_psi, 2)

    def test_serialization_keeps_atoms(self, diagonal_spec, uniform_psi):
        nu = ps_density(diagonal_spec, uniform_psi, 1.0, 2)
        restored = AtomicMeasure.from_dict(nu.to_dict())
        assert len(restored) == len(nu)
        assert restored.weights == pytest.approx(nu.weights)
        assert cell_mass_difference(nu, restored, 8) == pytest.approx(0.0, abs=1e-12)

    def test_cell_mass_difference_of_shifted_exponents(self, diagonal_spec, uniform_psi):
        first = ps_density(diagonal_spec, uniform_psi, 1.0, 3)
        second = ps_density(diagonal_spec, uniform_psi, 2.0, 3)
        assert 0.0 < cell_mass_difference(first, second, 8) <= 1.0


class TestConformality:

    def test_identity_residual_is_zero(self, diagonal_spec, uniform_psi):
        g = make_element(diagonal_spec, "e")
        report = conformality_residual(diagonal_spec, uniform_psi, 1.0, 4, g, 8)
        assert report.residual == pytest.approx(0.0, abs=1e-12)
        assert report.to_dict()['word'] == "e"

    def test_needs_enough_cells(self, diagonal_spec, uniform_psi):
        g = make_element(diagonal_spec, "a")
        with pytest.raises(InputError):
            conformality_residual(diagonal_spec, uniform_psi, 1.0, 4, g, 3)

    def test_generator_residual_is_finite(self, diagonal_spec, uniform_psi):
        g = make_element(diagonal_spec, "a")
        report = conformality_residual(diagonal_spec, uniform_psi, 1.0, 4, g, 8)
        assert math.isfinite(report.residual)
        assert any(row['residual'] is not None for row in report.rows)

    @pytest.mark.slow
    def test_residual_does_not_grow_with_length(self, diagonal_spec, uniform_psi):
        ball = enumerate_ball(diagonal_spec, 10)
        delta = critical_exponent(diagonal_spec, uniform_psi, 10, ball=ball).delta
        g = make_element(diagonal_spec, "a")
        eight = conformality_residual(diagonal_spec, uniform_psi, delta + 0.01, 8, g, 64, ball=ball)
        ten = conformality_residual(diagonal_spec, uniform_psi, delta + 0.01, 10, g, 64, ball=ball)
        assert ten.residual <= eight.residual + 0.05
