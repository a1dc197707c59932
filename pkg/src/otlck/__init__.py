"""otlck: exact-arithmetic toolkit for OT solvmanifold data and LCK
structure verification on solvable Lie algebras."""

__version__ = "0.1.0"
