"""
Shared domain types, potentials and special functions
"""

from model.errors import CMSError, ConfigError, PoleError
from model.spec import ModelSpec, PhaseState, PotentialKind, Trajectory

__all__ = ['CMSError', 'ConfigError', 'PoleError', 'ModelSpec', 'PhaseState', 'PotentialKind', 'Trajectory']
