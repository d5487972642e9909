"""Exact and numerical checks of vanishing integral moments of conserved tensors."""

from .system import Moment, Verdict, build_system, solve_system, sweep_patterns
from .words import Word, WordError

__version__ = "0.1.0"
