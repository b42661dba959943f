"""Tools for finite modular lattices.

The package revolves around three representations of the same data: a
lattice given by covers, its base of lines (join-irreducibles plus a
point-line structure), and the family of closed order ideals written as
compressed wildcard rows.  Submodules convert between these, and the
analysis layer checks the structural identities that tie them together.
"""

__version__ = "0.1.0"
