"""Quadratization and minor-embedding toolchain for annealer hardware."""

__version__ = "0.1.0"
