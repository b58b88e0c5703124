"""Braid-equivalent pairs of unimodal permutations and their realisation in the Henon family."""

__version__ = "0.1.0"
