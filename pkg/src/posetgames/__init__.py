"""Solvers for positional games played on partially ordered boards."""

from .core import Color, Convention, Game, Outcome, Player, Poset, Position, build_poset
from .oracle import MMResult, best_move, outcome4, solve_mb, solve_mm

__all__ = [
    "Color",
    "Convention",
    "Game",
    "MMResult",
    "Outcome",
    "Player",
    "Poset",
    "Position",
    "best_move",
    "build_poset",
    "outcome4",
    "solve_mb",
    "solve_mm",
]
__version__ = "0.1.0"
