"""Crossingless resolutions of a diagram state.

A state assigns +1 or -1 to every crossing.  Smoothing accordingly turns
the diagram into disjoint embedded circles on the punctured sphere; the
complement regions then form a tree with the circles as edges.  This
module traces those circles, classifies them as trivial (one side free
of punctures) or essential, and builds the region complex of the
essential part, which is what the shadow evaluation consumes.

Smoothing convention at a crossing with counterclockwise slots
s0 s1 s2 s3 and over flag o (o=0 means the strand through s0, s2 is on
top): the +1 smoothing joins the slot pairs starting at the over
strand's entry, i.e. pairs (s_a, s_{a+1}) and (s_{a+2}, s_{a+3}) with
a = o, and the -1 smoothing uses a = o + 1.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping

from .diagram import DiagramError, PuncturedDiagram

__all__ = ["Circle", "Region", "RegionComplex", "Resolution", "resolve"]


@dataclass(frozen=True)
class Circle:
    key: str  # least arc id on the circle, or the loop piece id
    arcs: tuple[str, ...]
    mask: int  # punctures on the circle's left side
    mask_min: int  # side mask canonicalized so bit 0 (outer puncture) is clear
    trivial: bool


@dataclass(frozen=True)
class Region:
    index: int
    faces: tuple[int, ...]  # union-face indices of the source diagram
    punctures: tuple[int, ...]
    mask: int
    circles: tuple[int, ...]  # incident essential circles, by position
    chi: int

    @property
    def external(self) -> bool:
        return bool(self.punctures)


@dataclass(frozen=True)
class RegionComplex:
    """Sphere cut along the essential circles only."""

    regions: tuple[Region, ...]
    edges: tuple[tuple[int, int], ...]  # per essential circle: (left, right)
    keys: tuple[str, ...]  # essential circle keys, parallel to edges

    def externals(self) -> tuple[int, ...]:
        return tuple(r.index for r in self.regions if r.external)

    def internals(self) -> tuple[int, ...]:
        return tuple(r.index for r in self.regions if not r.external)

    def phi_counts(self) -> dict[int, int]:
        """Internal region census by complexity: h -> #{R internal, chi(R) = 1-h}."""
        out: dict[int, int] = {}
        for r in self.regions:
            if not r.external:
                h = 1 - r.chi
                out[h] = out.get(h, 0) + 1
        return out


@dataclass(frozen=True)
class Resolution:
    state: tuple[tuple[str, int], ...]
    sum_signs: int
    circles: tuple[Circle, ...]
    complex: RegionComplex

    @property
    def trivial_count(self) -> int:
        return sum(1 for c in self.circles if c.trivial)

    @property
    def essential_count(self) -> int:
        return sum(1 for c in self.circles if not c.trivial)


class _UF:
    def __init__(self, n: int):
        self.parent = list(range(n))

    def find(self, i: int) -> int:
        p = self.parent
        while p[i] != i:
            p[i] = p[p[i]]
            i = p[i]
        return i

    def union(self, a: int, b: int) -> None:
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            self.parent[max(ra, rb)] = min(ra, rb)


def _tree_side_masks(
    n_regions: int,
    region_mask: list[int],
    edges: list[tuple[int, int]],
    total: int,
) -> list[int]:
    """For each edge of the region tree, punctures on its first-node side."""
    adj: dict[int, list[tuple[int, int]]] = {i: [] for i in range(n_regions)}
    for ei, (u, v) in enumerate(edges):
        if u == v:
            raise DiagramError("resolution circle bounds one region twice")
        adj[u].append((v, ei))
        adj[v].append((u, ei))
    if edges and n_regions != len(edges) + 1:
        raise DiagramError("region graph of a resolution is not a tree")
    # root at 0; subtree masks by reverse BFS order
    order: list[int] = [0] if n_regions else []
    parent_edge: dict[int, tuple[int, int]] = {}
    seen = {0} if n_regions else set()
    i = 0
    while i < len(order):
        u = order[i]
        i += 1
        for v, ei in adj[u]:
            if v not in seen:
                seen.add(v)
                parent_edge[v] = (u, ei)
                order.append(v)
    if len(seen) != n_regions:
        raise DiagramError("region graph of a resolution is not connected")
    subtree = list(region_mask)
    for u in reversed(order):
        if u in parent_edge:
            p, _ = parent_edge[u]
            subtree[p] |= subtree[u]
    side: list[int] = [0] * len(edges)
    for ei, (u, v) in enumerate(edges):
        if v in parent_edge and parent_edge[v][1] == ei:
            # u is the parent: its side is everything outside v's subtree
            side[ei] = total ^ subtree[v]
        else:
            if not (u in parent_edge and parent_edge[u][1] == ei):
                raise DiagramError("region graph of a resolution is not a tree")
            side[ei] = subtree[u]
    return side


def resolve(d: PuncturedDiagram, state: Mapping[str, int]) -> Resolution:
    """Smooth every crossing according to ``state`` and analyze the result."""
    cids = [cid for cid, _ in d.crossings]
    missing = [cid for cid in cids if cid not in state]
    if missing:
        raise DiagramError(f"state missing crossing {missing[0]}")
    uf = _UF(len(d.union_faces))
    partner: dict[str, str] = {}
    for cid, c in d.crossings:
        sigma = state[cid]
        if sigma not in (1, -1):
            raise DiagramError(f"state for crossing {cid} must be +1 or -1")
        a = (c.over + (0 if sigma == 1 else 1)) % 2
        s = c.slots
        for x in (a, a + 2):
            partner[s[x % 4]] = s[(x + 1) % 4]
            partner[s[(x + 1) % 4]] = s[x % 4]
        uf.union(d.corner_class[s[(a + 1) % 4]], d.corner_class[s[(a + 3) % 4]])

    # trace circles through the smoothed crossings
    raw: list[tuple[str, tuple[str, ...], int, int]] = []  # key, arcs, left, right
    visited: set[str] = set()
    for aid, _arc in d.arcs:
        if aid in visited:
            continue
        chain: list[str] = []
        cur_aid, cur_end = aid, 0
        while True:
            visited.add(cur_aid)
            chain.append(cur_aid)
            arrive = d.arc(cur_aid).ends[1 - cur_end]
            nxt = partner[arrive]
            cur_aid, cur_end = d._arc_at_slot[nxt]
            if (cur_aid, cur_end) == (aid, 0):
                break
        if len(set(chain)) != len(chain):
            raise DiagramError("smoothed circle traverses an arc twice")
        left = uf.find(d.dart_class[(aid, 0)])
        right = uf.find(d.dart_class[(aid, 1)])
        raw.append((min(chain), tuple(chain), left, right))
    for lid in d.loops:
        left = uf.find(d.dart_class[(lid, 0)])
        right = uf.find(d.dart_class[(lid, 1)])
        raw.append((lid, (lid,), left, right))
    raw.sort(key=lambda t: t[0])

    # full region tree (all circles) for enclosure masks
    roots = sorted({uf.find(i) for i in range(len(d.union_faces))})
    root_index = {r: i for i, r in enumerate(roots)}
    region_mask_full = [0] * len(roots)
    for ci in range(len(d.union_faces)):
        region_mask_full[root_index[uf.find(ci)]] |= d.face_mask[ci]
    total = (1 << (d.genus + 1)) - 1
    edges_full = [(root_index[left], root_index[right]) for _, _, left, right in raw]
    left_masks = _tree_side_masks(len(roots), region_mask_full, edges_full, total)

    circles: list[Circle] = []
    for (key, arcs, _l, _r), lm in zip(raw, left_masks):
        trivial = lm == 0 or lm == total
        mask_min = lm if not (lm & 1) else lm ^ total
        circles.append(
            Circle(key=key, arcs=arcs, mask=lm, mask_min=mask_min, trivial=trivial)
        )

    # shadow complex: additionally merge the two sides of each trivial circle
    uf2 = _UF(len(d.union_faces))
    uf2.parent = list(uf.parent)
    for (key, arcs, left, right), c in zip(raw, circles):
        if c.trivial:
            uf2.union(left, right)
    roots2 = sorted({uf2.find(i) for i in range(len(d.union_faces))})
    idx2 = {r: i for i, r in enumerate(roots2)}
    faces_of: dict[int, list[int]] = {i: [] for i in range(len(roots2))}
    mask2 = [0] * len(roots2)
    for ci in range(len(d.union_faces)):
        i = idx2[uf2.find(ci)]
        faces_of[i].append(ci)
        mask2[i] |= d.face_mask[ci]
    ess = [(t, c) for t, c in zip(raw, circles) if not c.trivial]
    edges2 = [
        (idx2[uf2.find(left)], idx2[uf2.find(right)]) for (_, _, left, right), _ in ess
    ]
    keys2 = tuple(c.key for _, c in ess)
    incident: dict[int, list[int]] = {i: [] for i in range(len(roots2))}
    for ei, (u, v) in enumerate(edges2):
        if u == v:
            raise DiagramError("essential circle with equal sides")
        incident[u].append(ei)
        incident[v].append(ei)
    regions = []
    for i in range(len(roots2)):
        pl = tuple(
            sorted(p for p in range(d.genus + 1) if mask2[i] >> p & 1)
        )
        deg = len(incident[i])
        regions.append(
            Region(
                index=i,
                faces=tuple(faces_of[i]),
                punctures=pl,
                mask=mask2[i],
                circles=tuple(incident[i]),
                chi=2 - deg - len(pl),
            )
        )
    comp = RegionComplex(tuple(regions), tuple(edges2), keys2)
    return Resolution(
        state=tuple(sorted((cid, state[cid]) for cid in cids)),
        sum_signs=sum(state[cid] for cid in cids),
        circles=tuple(circles),
        complex=comp,
    )
