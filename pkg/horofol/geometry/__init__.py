"""
Geometry of the hyperbolic plane and of products of hyperbolic planes
"""
from .hyperbolic_plane import (
    BoundaryPointH2,
    GeodesicH2,
    H2Point,
    IsometryH2,
    IsometryType,
    RayH2,
    SegmentH2,
)
from .product_space import ProductBoundaryPoint, ProductIsometry, ProductPoint, SegmentTuple
from .alignment import AlignmentReport, AxisConstant, ContractingDecomposition, SqueezeEstimate

__all__ = [
    'H2Point', 'BoundaryPointH2', 'IsometryH2', 'IsometryType', 'GeodesicH2', 'RayH2',
    'SegmentH2', 'ProductPoint', 'ProductBoundaryPoint', 'ProductIsometry', 'SegmentTuple',
    'AlignmentReport', 'ContractingDecomposition', 'SqueezeEstimate', 'AxisConstant',
]
