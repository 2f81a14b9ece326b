"""Exact Lipschitz stability constants for the argmin mapping of a linear program
under right-hand-side perturbations."""
from __future__ import annotations

__version__ = "0.1.0"
