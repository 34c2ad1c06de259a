"""Exact and floating-point angular momentum primitives."""
