"""Contrastive-explanation workbench for heterogeneous multi-robot task
allocation, scheduling, and motion planning."""

__version__ = "0.1.0"
