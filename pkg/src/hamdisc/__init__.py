"""Oriented discrepancy of Hamilton cycles: constructive pipelines and oracles."""

__version__ = "0.1.0"
