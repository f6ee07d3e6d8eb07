"""mds-criteria: Mori dream space criteria for blowups of P^3 along space curves."""

__version__ = "0.1.0"
