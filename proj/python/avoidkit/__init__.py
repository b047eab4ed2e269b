"""Mutually avoiding sets, crossing families, and positive-fraction
families over exact rational arithmetic.

Coordinates cross the boundary as strings ("p/q" or integers) so no
precision is lost; index sets and verdicts are plain Python structures.
"""

try:
    from ._avoidkit import *  # noqa: F401,F403  (installed package layout)
except ImportError:  # pragma: no cover - in-tree builds put the module on sys.path
    from _avoidkit import *  # noqa: F401,F403

__all__ = [name for name in dir() if not name.startswith("_")]
