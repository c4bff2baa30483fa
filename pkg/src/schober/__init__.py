"""Exact computations around type-A perverse schobers and singular Soergel bimodules."""

__version__ = "0.1.0"
