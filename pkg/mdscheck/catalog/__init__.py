"""Catalogs of Hilbert-scheme components of smooth space curves."""
