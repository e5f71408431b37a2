"""Shadow evaluation of a crossingless resolution.

The essential circles of a resolution cut the punctured sphere into a
tree of regions.  An admissible coloring assigns a nonnegative integer
to every region so that regions holding punctures get 0 and regions on
the two sides of a circle differ by exactly one.  The value of the
resolution is the sum over admissible colorings of

    prod over regions R of circ(xi(R)) ** chi(R)

where chi(R) = 2 - (boundary circles of R) - (punctures in R).

Colorings exist precisely when all puncture-carrying regions sit in the
same bipartition class of the region tree; in that case there is a
unique coloring xi0 using only the colors 0 and 1 (the bipartition
parity), it is pointwise minimal among admissible colorings, and since
every region has nonpositive Euler characteristic, half the top degree
of the value equals

    psi = sum over regions of chi(R) * xi0(R)
        = max over colorings of sum of chi(R) * xi(R),

a nonpositive integer.
"""

from __future__ import annotations

from functools import lru_cache
from typing import Iterator, Optional

from .laurent import LaurentPoly, RationalFn, circ
from .resolution import RegionComplex

__all__ = [
    "colorings_exist",
    "enumerate_colorings",
    "minimal_coloring",
    "psi",
    "psi_from_colorings",
    "psi_from_value",
    "resolution_value",
]


def _tree_adjacency(comp: RegionComplex) -> dict[int, list[int]]:
    adj: dict[int, list[int]] = {r.index: [] for r in comp.regions}
    for u, v in comp.edges:
        adj[u].append(v)
        adj[v].append(u)
    return adj


def _depths(comp: RegionComplex) -> dict[int, int]:
    exts = comp.externals()
    adj = _tree_adjacency(comp)
    depth = {exts[0]: 0}
    queue = [exts[0]]
    while queue:
        u = queue.pop(0)
        for v in adj[u]:
            if v not in depth:
                depth[v] = depth[u] + 1
                queue.append(v)
    return depth


def colorings_exist(comp: RegionComplex) -> bool:
    """True when every puncture-carrying region has even tree depth parity."""
    depth = _depths(comp)
    return all(depth[e] % 2 == 0 for e in comp.externals())


def minimal_coloring(comp: RegionComplex) -> Optional[dict[int, int]]:
    """The unique admissible coloring taking only the colors 0 and 1.

    It sends each region to its bipartition parity relative to the
    puncture-carrying regions and is pointwise minimal among admissible
    colorings.  None when no admissible coloring exists.
    """
    depth = _depths(comp)
    if any(depth[e] % 2 for e in comp.externals()):
        return None
    return {r: depth[r] % 2 for r in depth}


def enumerate_colorings(comp: RegionComplex) -> Iterator[dict[int, int]]:
    """All admissible colorings, in no particular order."""
    exts = comp.externals()
    adj = _tree_adjacency(comp)
    root = exts[0]
    ext_set = set(exts)
    # DFS order with parents, rooted at one external region
    order = [root]
    parent: dict[int, int] = {root: -1}
    for u in order:
        for v in adj[u]:
            if v not in parent:
                parent[v] = u
                order.append(v)

    def grow(i: int, xi: dict[int, int]) -> Iterator[dict[int, int]]:
        if i == len(order):
            yield dict(xi)
            return
        r = order[i]
        base = xi[parent[r]]
        choices = [base + 1] if base == 0 else [base - 1, base + 1]
        for val in choices:
            if r in ext_set and val != 0:
                continue
            xi[r] = val
            yield from grow(i + 1, xi)
            del xi[r]

    yield from grow(1, {root: 0})


@lru_cache(maxsize=None)
def _circ_power(n: int, e: int) -> RationalFn:
    return RationalFn(circ(n), LaurentPoly.one()) ** e


def resolution_value(comp: RegionComplex) -> RationalFn:
    """Sum of coloring weights; zero exactly when no coloring exists."""
    total = RationalFn.zero()
    weighted = [r for r in comp.regions if r.chi != 0]
    for xi in enumerate_colorings(comp):
        term = RationalFn.one()
        for r in weighted:
            term = term * _circ_power(xi[r.index], r.chi)
        total = total + term
    return total


def psi(comp: RegionComplex) -> Optional[int]:
    """Half the top degree of the resolution value, by the distance rule."""
    xi0 = minimal_coloring(comp)
    if xi0 is None:
        return None
    return sum(r.chi * xi0[r.index] for r in comp.regions)


def psi_from_value(comp: RegionComplex) -> Optional[int]:
    value = resolution_value(comp)
    if value.is_zero():
        return None
    deg = value.ord_inf()
    assert isinstance(deg, int) and deg % 2 == 0
    return deg // 2


def psi_from_colorings(comp: RegionComplex) -> Optional[int]:
    best = None
    for xi in enumerate_colorings(comp):
        s = sum(r.chi * xi[r.index] for r in comp.regions)
        best = s if best is None else max(best, s)
    return best
