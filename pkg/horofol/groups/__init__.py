"""
Finitely generated subgroups of the product isometry group
"""
from .group_spec import GroupSpec, load_group_spec, parse_group_spec
from .ball import Ball, GroupElement, enumerate_ball
from .projections import SpectrumSample
from .lattice import NonArithmeticityReport
from .transversality import ComponentwiseShadowReport, DivFactorsReport, TransversalityReport

__all__ = [
    'GroupSpec', 'load_group_spec', 'parse_group_spec', 'Ball', 'GroupElement',
    'enumerate_ball', 'SpectrumSample', 'NonArithmeticityReport', 'TransversalityReport',
    'DivFactorsReport', 'ComponentwiseShadowReport',
]
