"""Verdict engine: evidence, verdicts and the criterion dispatch."""
