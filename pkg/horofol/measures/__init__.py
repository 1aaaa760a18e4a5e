"""
Poincare series, conformal densities and Burger-Roblin measures
"""
from .poincare import CriticalExponent, LinearForm
from .density import AtomicMeasure, BoundaryCell, ResidualReport
from .burger_roblin import BoxRegion, HoroInvarianceReport, HoroPoint

__all__ = [
    'LinearForm', 'CriticalExponent', 'AtomicMeasure', 'BoundaryCell', 'ResidualReport',
    'BoxRegion', 'HoroPoint', 'HoroInvarianceReport',
]
