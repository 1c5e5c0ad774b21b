"""Exact computational geometry toolkit.

Subpackages cover exact arithmetic in Q(sqrt2, sqrt3), simplicial and
cubical complexes, dual-graph path construction, discrete Morse theory,
affine subspace arrangements, a symmetric cubical-torus pipeline on the
4-sphere, and exact projective incidence constructions, plus a command
line front end.
"""

__version__ = "0.1.0"
