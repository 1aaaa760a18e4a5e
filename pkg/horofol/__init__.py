"""
horofol - Numerical companion for horospherical foliations of transverse groups
"""

__version__ = "0.1.0"
__description__ = "Hyperbolic products, Patterson-Sullivan densities and lemma verification"
