"""Brute-force checks and bound calculators that stand apart from the router."""
