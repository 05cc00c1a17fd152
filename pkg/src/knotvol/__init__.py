"""Root-of-unity state sums, saddle potentials and hyperbolic volumes for
Borromean-family links, twisted Whitehead links and double twist knots."""

__version__ = "0.1.0"
