"""Minimum Membership Dominating Set solvers and instance generators."""

__version__ = "1.0.0"
