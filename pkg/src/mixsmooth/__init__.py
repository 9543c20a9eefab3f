"""Quasi-norms of dominating mixed and isotropic smoothness on periodic grids."""
