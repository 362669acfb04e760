"""Exact-arithmetic calculus of cyclic pairings on DG coalgebras, the
induced brackets on cyclic words, and their images in representation
algebras.  All coefficients are `fractions.Fraction`; every identity
the package claims is checked exactly by the `verify` suites."""

__version__ = "0.1.0"
