"""Exact arithmetic: quadratic surds and generalized Pell equations."""
