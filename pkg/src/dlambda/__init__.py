"""Exact word-length perturbation toolkit for dihedral groups."""
