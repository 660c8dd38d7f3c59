"""Exact-arithmetic workbench for generalized rook-Brauer diagram algebras and their Tor."""
