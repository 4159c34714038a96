"""Exact construction and certification of deformed hypersurfaces built from
generic hyperplane arrangements in P^n."""

__version__ = "0.1.0"
