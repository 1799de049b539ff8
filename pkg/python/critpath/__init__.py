"""critpath - critical path analysis on CPM/PERT networks with an exact and a genetic engine."""

__version__ = "1.0.0"
