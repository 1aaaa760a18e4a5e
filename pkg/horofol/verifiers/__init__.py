"""
Seeded numerical verifiers, one per lemma id
"""

from .base import REGISTRY, Outcome, Verifier, get_verifier, registered, run_verify
from . import alignment_checks, group_checks, plane_checks  # noqa: F401  (registration)

__all__ = ['REGISTRY', 'Outcome', 'Verifier', 'get_verifier', 'registered', 'run_verify']
