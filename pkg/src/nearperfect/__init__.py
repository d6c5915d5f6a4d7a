"""Near-perfect (almost) p-ary sequences: autocorrelation, difference sets,
nonexistence criteria, exhaustive search and status tables."""

__version__ = "0.1.0"
