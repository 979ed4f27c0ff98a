"""Reduction forge: compile SAT formulas into partition, bin packing and
scheduling instances, and check the compiled instances with exact solvers."""

__version__ = "0.1.0"
