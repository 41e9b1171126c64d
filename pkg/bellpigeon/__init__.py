"""Bell inequalities from the pigeonhole principle and the quantum pigeonhole effect."""

__version__ = "0.1.0"
