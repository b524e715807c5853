"""twistpoly: link diagram invariants, twist families, and Mahler measures."""

__version__ = "0.1.0"
