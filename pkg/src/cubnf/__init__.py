"""cubnf: a normal-form kernel for Cartesian cubical type theory."""

__version__ = "0.1.0"
