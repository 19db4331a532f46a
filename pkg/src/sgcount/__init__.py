"""Exact counts of connected spanning subgraphs on Sierpinski gaskets."""

__version__ = "0.1.0"
