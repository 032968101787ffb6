"""Quiver mutation, maximal green sequences and radical-vector certificates."""
