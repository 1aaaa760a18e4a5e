"""
Tests for the lattice-reduction density heuristic
"""
import math

import numpy as np
import pytest

from horofol.groups.lattice import gram_schmidt, lll_reduce, non_arithmeticity_report
from horofol.groups.projections import length_spectrum


def test_gram_schmidt_orthogonal():
    B = np.array([[3.0, 1.0, 0.0], [2.0, 2.0, 1.0], [1.0, 0.0, 4.0]])
    Q, _ = gram_schmidt(B)
    gram = Q @ Q.T
    assert gram - np.diag(np.diag(gram)) == pytest.approx(np.zeros((3, 3)), abs=1e-10)


def test_lll_finds_short_basis():
    B = np.array([[1.0, 0.0], [1000.0, 1.0]])
    reduced = lll_reduce(B)
    assert np.abs(np.linalg.det(reduced)) == pytest.approx(1.0)
    assert np.linalg.norm(reduced, axis=1).max() == pytest.approx(1.0)


def test_integer_lattice_is_not_dense():
    report = non_arithmeticity_report(np.array([[1.0, 0.0], [0.0, 1.0]]), 1e-3)
    assert not report.dense_heuristic
    assert report.lattice_covolume == pytest.approx(1.0)
    assert report.rank == 2


def test_irrational_vector_makes_dense():
    vectors = np.array([[1.0, 0.0], [0.0, 1.0], [math.sqrt(2.0), math.sqrt(3.0)]])
    report = non_arithmeticity_report(vectors, 1e-3, depth=12)
    assert report.dense_heuristic
    assert report.lattice_covolume < 1e-3
    assert len(report.basis) == 2


def test_rank_deficient_sample(diagonal_spec):
    report = non_arithmeticity_report(length_spectrum(diagonal_spec, 3), 1e-3)
    assert report.rank == 1
    assert not report.dense_heuristic
    assert report.to_dict()['lattice_covolume'] is None
