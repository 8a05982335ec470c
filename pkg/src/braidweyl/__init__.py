"""Braided Weyl algebras over the standard Hecke braiding: relation tables,
normal ordering, derivative calculus, the radial Laplacian and the Poisson
brackets of their semiclassical limits."""

__version__ = "0.1.0"
