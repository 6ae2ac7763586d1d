"""selfmeasure - restricted observer states for a finite-dimensional measuring system."""

__version__ = "0.1.0"
