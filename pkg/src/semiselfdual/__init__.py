"""Exact tools for semi self-dual binary codes, their dual-distance bounds,
and the fixed-code test for involutions of extremal codes."""

__version__ = "0.1.0"
