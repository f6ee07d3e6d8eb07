"""Lattice and intersection-theoretic models: quartic K3 lattices, blowups, linkage."""
