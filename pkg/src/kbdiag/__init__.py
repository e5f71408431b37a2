"""Exact Kauffman brackets for link diagrams drawn in a disk with holes.

Diagrams live on a sphere with g+1 marked punctures (puncture 0 plays the
role of the outer boundary).  The package computes the bracket as an exact
element of Q(A), classifies resolutions, evaluates crossingless parts via
a shadow-style region formula, and checks breadth identities and
non-alternating certificates on enumerated or user-supplied diagrams.
"""

from __future__ import annotations

__version__ = "0.1.0"

from .laurent import LaurentPoly, RationalFn, NEG_INF, POS_INF, circ, delta

__all__ = [
    "LaurentPoly",
    "RationalFn",
    "NEG_INF",
    "POS_INF",
    "circ",
    "delta",
    "__version__",
]
