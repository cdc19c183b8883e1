"""Edge orientation and distributed routing for (n,k)-star graphs, with brute-force checks."""

__version__ = "0.1.0"
