"""Exact and numerical toolkit for the GSp(2n) x GL(1) doubling integral."""
