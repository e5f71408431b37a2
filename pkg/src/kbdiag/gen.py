"""Template enumeration, seeded sampling, and independent bracket oracles.

Diagrams come from three committed template families.  "loops" emits
crossingless nested-loop forests.  "chain" closes the standard
two-strand twist region of n crossings into a necklace; varying which
face holds which puncture already covers the classical twist diagrams
and the two-crossing example around one hole.  "curls" closes a ring
of n kinks, one lobe per crossing; putting a puncture inside each lobe
gives the extremal connected diagrams that use every hole with as many
crossings as holes.  Puncture 0 always sits in the text's ambient
face, so each sphere configuration is generated rooted at puncture 0's
region and the remaining textual duplicates differ only by relabeling,
which the canonical key removes.

``canonical_key`` identifies diagrams up to crossing, arc, and loop
relabeling together with slot rotations of each crossing (the over flag
follows the rotation parity).  With full=True it additionally forgets
puncture labels, the quotient an orientation-preserving homeomorphism
of the holed sphere could induce; the full key is defined for single
piece diagrams and pure loop forests, which is what the counting tests
use.

``oracle_bracket`` recomputes brackets by a structurally different
route than the production state sum: it smooths one crossing at a time
recursively down to crossingless diagrams and evaluates those by
exhaustive enumeration of admissible region colorings, multiplying
circle values over regions weighted by Euler characteristic.  No circle
classification, no region tree, no propagation.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, replace
from random import Random
from typing import Iterator, Optional

from .bracket import state_resolution
from .diagram import (
    AMBIENT,
    AMBIENT_FACE,
    Arc,
    Crossing,
    Piece,
    PuncturedDiagram,
    diagram_genus,
    is_alternating,
    is_connected,
    parse_diagram,
    simplicity_report,
    trace_faces,
    z2_class,
)
from .laurent import RationalFn, circ
from .moves import smooth_crossing
from .shadow import psi

__all__ = [
    "ENUM_CAP",
    "FAMILIES",
    "CapExceededError",
    "GenSpec",
    "canonical_key",
    "classical_bracket",
    "enumerate_diagrams",
    "extreme_psi",
    "oracle_bracket",
    "performance_diagram",
    "psi_extreme_violations",
    "random_diagram",
]

ENUM_CAP = 10

FAMILIES = ("loops", "chain", "curls")


class CapExceededError(ValueError):
    """Requested crossing count exceeds the committed enumeration cap."""


@dataclass(frozen=True)
class GenSpec:
    """What to enumerate and which diagrams to keep.

    Predicates are tri-state: None imposes nothing, True keeps only
    diagrams with the property, False keeps only those without it.
    All predicates use the diagram module's definitions.
    """

    max_crossings: int
    genus: int
    connected: Optional[bool] = None
    alternating: Optional[bool] = None
    z2_trivial: Optional[bool] = None
    fills_genus: Optional[bool] = None
    simple: Optional[bool] = None
    seed: int = 0
    max_loops: int = 2
    families: tuple[str, ...] = FAMILIES


def _matches(spec: GenSpec, d: PuncturedDiagram) -> bool:
    if spec.connected is not None and is_connected(d) != spec.connected:
        return False
    if spec.alternating is not None and is_alternating(d) != spec.alternating:
        return False
    if spec.z2_trivial is not None:
        if (not any(z2_class(d))) != spec.z2_trivial:
            return False
    if spec.fills_genus is not None:
        if (diagram_genus(d) == d.genus) != spec.fills_genus:
            return False
    if spec.simple is not None and simplicity_report(d).simple != spec.simple:
        return False
    return True


# -- chain templates ---------------------------------------------------------


def _chain_lines(n: int, flags: int) -> list[str]:
    lines = [
        f"X m c{i} c{i}.0 c{i}.1 c{i}.2 c{i}.3 {flags >> i & 1}" for i in range(n)
    ]
    for i in range(n):
        j = (i + 1) % n
        lines.append(f"E m e{i} c{i}.2 c{j}.1")
        lines.append(f"E m f{i} c{i}.3 c{j}.0")
    return lines


def _chain_piece(n: int, flags: int) -> Piece:
    crossings = tuple(
        Crossing(
            f"c{i}",
            (f"c{i}.0", f"c{i}.1", f"c{i}.2", f"c{i}.3"),
            flags >> i & 1,
        )
        for i in range(n)
    )
    arcs = []
    for i in range(n):
        j = (i + 1) % n
        arcs.append(Arc(f"e{i}", (f"c{i}.2", f"c{j}.1")))
        arcs.append(Arc(f"f{i}", (f"c{i}.3", f"c{j}.0")))
    return Piece("m", crossings, tuple(arcs))


def _chain_faces(n: int) -> list[str]:
    # the face circuits do not depend on the over flags
    return sorted(trace_faces(_chain_piece(n, 0)))


# -- curl-ring templates ------------------------------------------------------
#
# One strand closing up through n kinks: each crossing carries a lobe
# (slot 2 joined to slot 1) and the strand continues to the next
# crossing (slot 3 to slot 0).  n = 1 coincides with the one-crossing
# chain; the weak-key dedup drops the repeat.


def _curl_lines(n: int, flags: int) -> list[str]:
    lines = [
        f"X m c{i} c{i}.0 c{i}.1 c{i}.2 c{i}.3 {flags >> i & 1}" for i in range(n)
    ]
    for i in range(n):
        j = (i + 1) % n
        lines.append(f"E m e{i} c{i}.2 c{i}.1")
        lines.append(f"E m f{i} c{i}.3 c{j}.0")
    return lines


def _curl_piece(n: int, flags: int) -> Piece:
    crossings = tuple(
        Crossing(
            f"c{i}",
            (f"c{i}.0", f"c{i}.1", f"c{i}.2", f"c{i}.3"),
            flags >> i & 1,
        )
        for i in range(n)
    )
    arcs = []
    for i in range(n):
        j = (i + 1) % n
        arcs.append(Arc(f"e{i}", (f"c{i}.2", f"c{i}.1")))
        arcs.append(Arc(f"f{i}", (f"c{i}.3", f"c{j}.0")))
    return Piece("m", crossings, tuple(arcs))


def _curl_faces(n: int) -> list[str]:
    return sorted(trace_faces(_curl_piece(n, 0)))


def _single_piece_texts(genus: int, body: list[str], faces: list[str]) -> Iterator[str]:
    head = ["kbdiag 1", f"genus {genus}"]
    for own in faces:
        inner = [f for f in faces if f != own]
        regions: list[Optional[str]] = [None] + inner  # None is the ambient region
        base = head + body
        base.append(f"place piece m . f:. {own}")
        base.append("place puncture 0 . f:. .")
        for combo in itertools.combinations_with_replacement(
            range(len(regions)), genus
        ):
            lines = list(base)
            for label, ri in enumerate(combo, start=1):
                r = regions[ri]
                if r is None:
                    lines.append(f"place puncture {label} . f:. .")
                else:
                    lines.append(f"place puncture {label} m {r} .")
            yield "\n".join(lines) + "\n"


# -- loop-forest templates ---------------------------------------------------
#
# Rooted trees are nested tuples of canonically sorted child trees; a
# forest is a sorted tuple of trees.  Nesting means each loop sits in
# the inner face of its parent.


def _trees(m: int) -> list[tuple]:
    if m == 1:
        return [()]
    return [tuple(f) for f in _forests_exact(m - 1)]


def _forests_exact(s: int) -> list[tuple]:
    if s == 0:
        return [()]
    out = set()
    for k in range(1, s + 1):
        for t in _trees(k):
            for rest in _forests_exact(s - k):
                out.add(tuple(sorted(rest + (t,))))
    return sorted(out)


def _forest_texts(genus: int, max_loops: int) -> Iterator[str]:
    head = ["kbdiag 1", f"genus {genus}"]
    for total in range(max_loops + 1):
        for forest in _forests_exact(total):
            lines = list(head)
            regions: list[Optional[str]] = [None]
            counter = itertools.count()

            def emit(tree: tuple, parent: Optional[str]) -> None:
                kid = f"k{next(counter)}"
                lines.append(f"O {kid}")
                if parent is None:
                    lines.append(f"place piece {kid} . f:. f:{kid}:L")
                else:
                    lines.append(
                        f"place piece {kid} {parent} f:{parent}:R f:{kid}:L"
                    )
                regions.append(kid)
                for child in tree:
                    emit(child, kid)

            for tree in forest:
                emit(tree, None)
            lines.append("place puncture 0 . f:. .")
            for combo in itertools.combinations_with_replacement(
                range(len(regions)), genus
            ):
                placed = list(lines)
                for label, ri in enumerate(combo, start=1):
                    r = regions[ri]
                    if r is None:
                        placed.append(f"place puncture {label} . f:. .")
                    else:
                        placed.append(f"place puncture {label} {r} f:{r}:R .")
                yield "\n".join(placed) + "\n"


def _candidates(spec: GenSpec) -> Iterator[str]:
    if "loops" in spec.families:
        yield from _forest_texts(spec.genus, spec.max_loops)
    if "chain" in spec.families:
        for n in range(1, spec.max_crossings + 1):
            faces = _chain_faces(n)
            for flags in range(1 << n):
                yield from _single_piece_texts(
                    spec.genus, _chain_lines(n, flags), faces
                )
    if "curls" in spec.families:
        for n in range(1, spec.max_crossings + 1):
            faces = _curl_faces(n)
            for flags in range(1 << n):
                yield from _single_piece_texts(
                    spec.genus, _curl_lines(n, flags), faces
                )


def enumerate_diagrams(spec: GenSpec) -> Iterator[PuncturedDiagram]:
    """All template diagrams matching the spec, deduplicated.

    Deterministic order; duplicates under the weak canonical key are
    suppressed.  Raises CapExceededError when max_crossings exceeds the
    committed cap.
    """
    if spec.max_crossings > ENUM_CAP:
        raise CapExceededError(
            f"max_crossings {spec.max_crossings} exceeds cap {ENUM_CAP}"
        )
    if spec.max_crossings < 0 or spec.genus < 0:
        raise ValueError("max_crossings and genus must be nonnegative")
    unknown = set(spec.families) - set(FAMILIES)
    if unknown:
        raise ValueError(f"unknown template families: {sorted(unknown)}")
    seen: set[str] = set()
    for text in _candidates(spec):
        d = parse_diagram(text)
        key = canonical_key(d)
        if key in seen:
            continue
        seen.add(key)
        if _matches(spec, d):
            yield d


def random_diagram(spec: GenSpec) -> PuncturedDiagram:
    """A reproducible sample from the chain family: same seed, same diagram."""
    if spec.max_crossings > ENUM_CAP:
        raise CapExceededError(
            f"max_crossings {spec.max_crossings} exceeds cap {ENUM_CAP}"
        )
    rng = Random(spec.seed)
    n = rng.randint(1, max(1, spec.max_crossings))
    flags = rng.randrange(1 << n)
    faces = _chain_faces(n)
    own = rng.choice(faces)
    lines = ["kbdiag 1", f"genus {spec.genus}"]
    lines += _chain_lines(n, flags)
    lines.append(f"place piece m . f:. {own}")
    lines.append("place puncture 0 . f:. .")
    regions: list[Optional[str]] = [None] + [f for f in faces if f != own]
    for label in range(1, spec.genus + 1):
        r = rng.choice(regions)
        if r is None:
            lines.append(f"place puncture {label} . f:. .")
        else:
            lines.append(f"place puncture {label} m {r} .")
    return parse_diagram("\n".join(lines) + "\n")


def performance_diagram(n: int = 12, genus: int = 2) -> PuncturedDiagram:
    """A connected chain with punctures spread out, for timing runs.

    Picks the first placement (in enumeration order) that is connected,
    mod-2 trivial, and uses all its holes, so the bracket is a nonzero
    rational function and every code path is exercised.
    """
    faces = _chain_faces(n)
    for text in _single_piece_texts(genus, _chain_lines(n, (1 << n) - 1), faces):
        d = parse_diagram(text)
        if (
            is_connected(d)
            and not any(z2_class(d))
            and diagram_genus(d) == d.genus
        ):
            return d
    raise ValueError(f"no qualifying placement for n={n}, genus={genus}")


# -- canonical keys ----------------------------------------------------------


def _crossing_piece_code(
    d: PuncturedDiagram, piece: Piece, decor: dict[str, str]
) -> str:
    """Lex-least BFS code over root crossings and slot rotations.

    Rotating a crossing by one slot swaps which strand counts as over,
    so the emitted flag is the stored one xored with the rotation
    parity.  Face decorations travel with the face's least corner in
    the relabeling, which makes the code placement-aware.
    """
    slot_owner: dict[str, tuple[str, int]] = {}
    crossing_index: dict[str, Crossing] = {}
    for c in piece.crossings:
        crossing_index[c.id] = c
        for pos, s in enumerate(c.slots):
            slot_owner[s] = (c.id, pos)
    other_end: dict[str, str] = {}
    for a in piece.arcs:
        other_end[a.ends[0]] = a.ends[1]
        other_end[a.ends[1]] = a.ends[0]
    pfaces = trace_faces(piece)

    best: Optional[str] = None
    for root in piece.crossings:
        for r0 in range(4):
            ids = {root.id: 0}
            rot = {root.id: r0}
            order = [root.id]
            conn: list[tuple[int, int, int, int]] = []
            qi = 0
            while qi < len(order):
                cid = order[qi]
                qi += 1
                c = crossing_index[cid]
                for k in range(4):
                    s = c.slots[(rot[cid] + k) % 4]
                    peer = other_end[s]
                    c2, pos2 = slot_owner[peer]
                    if c2 not in ids:
                        ids[c2] = len(ids)
                        rot[c2] = pos2
                        order.append(c2)
                    conn.append((ids[cid], k, ids[c2], (pos2 - rot[c2]) % 4))
            flags = tuple(
                crossing_index[cid].over ^ (rot[cid] & 1) for cid in order
            )
            faceitems = []
            for fid, pf in pfaces.items():
                key = min(
                    (ids[slot_owner[s][0]], (slot_owner[s][1] - rot[slot_owner[s][0]]) % 4)
                    for s in pf.corners
                )
                faceitems.append((key, decor.get(fid, "")))
            faceitems.sort()
            code = f"{flags}|{conn}|{faceitems}"
            if best is None or code < best:
                best = code
    assert best is not None
    return best


def _face_decor(d: PuncturedDiagram, ci: int, mode: str) -> str:
    if mode == "labels":
        return ",".join(str(i) for i in d.face_punctures[ci])
    if mode == "counts":
        return str(len(d.face_punctures[ci]))
    return ""


def canonical_key(
    d: PuncturedDiagram, full: bool = False, punctures: bool = True
) -> str:
    """Relabeling-invariant identity string for a placed diagram.

    The weak key (default) quotients by piece/arc relabelings and slot
    rotations only; puncture labels and the ambient rooting stay.  The
    full key drops puncture labels to counts and minimizes over the
    choices a homeomorphism of the sphere allows; it is implemented for
    single-piece diagrams and pure loop forests.  punctures=False drops
    face decorations entirely, keying the bare map.
    """
    mode = "" if not punctures else ("counts" if full else "labels")
    loops_only = all(p.loop for p in d.pieces.values())
    single = len(d.pieces) == 1 and not d.loops

    if full and not (single or loops_only):
        raise ValueError(
            "full canonical key needs a single piece or a pure loop forest"
        )

    incident: dict[int, list[str]] = {}
    piece_class: dict[str, list[int]] = {}
    for pid, piece in d.pieces.items():
        if piece.loop:
            cis = sorted({d.dart_class[(pid, 0)], d.dart_class[(pid, 1)]})
            assert len(cis) == 2, "a loop must separate two faces"
        else:
            cis = sorted(
                {d._class_of[(pid, fid)] for fid in d.piece_faces(pid)}
            )
        piece_class[pid] = cis
        for ci in cis:
            incident.setdefault(ci, []).append(pid)

    def class_node(ci: int, from_pid: Optional[str]) -> str:
        kids = sorted(
            piece_node(pid, ci)
            for pid in incident.get(ci, [])
            if pid != from_pid
        )
        return "{" + _face_decor(d, ci, mode) + ";" + ",".join(kids) + "}"

    def piece_node(pid: str, up_ci: int) -> str:
        piece = d.pieces[pid]
        if piece.loop:
            inner = [ci for ci in piece_class[pid] if ci != up_ci]
            return "O(" + class_node(inner[0], pid) + ")"
        decor = {}
        for fid in d.piece_faces(pid):
            ci = d._class_of[(pid, fid)]
            decor[fid] = "^" if ci == up_ci else class_node(ci, pid)
        return _crossing_piece_code(d, piece, decor)

    if full and single:
        pid, piece = next(iter(d.pieces.items()))
        decor = {
            fid: _face_decor(d, d._class_of[(pid, fid)], mode)
            for fid in d.piece_faces(pid)
        }
        return "F:" + _crossing_piece_code(d, piece, decor)

    ambient_ci = d._class_of[(AMBIENT, AMBIENT_FACE)]
    if full and loops_only:
        return "F:" + min(
            class_node(ci, None) for ci in range(len(d.union_faces))
        )
    return class_node(ambient_ci, None)


# -- independent oracles -----------------------------------------------------


def _coloring_value(d: PuncturedDiagram) -> RationalFn:
    """Crossingless evaluation by brute-force admissible colorings.

    Regions are the union faces; two regions are adjacent along each
    loop and their colors must differ by exactly one; regions holding a
    puncture are pinned to color 0.  Each admissible coloring
    contributes the product over regions of the colored circle value
    raised to the region's Euler characteristic (2 minus bounding loops
    minus punctures).
    """
    if d.n_crossings:
        raise ValueError("coloring evaluation needs a crossingless diagram")
    nclasses = len(d.union_faces)
    deg = [0] * nclasses
    adj: dict[int, list[int]] = {ci: [] for ci in range(nclasses)}
    for lid in d.loops:
        a = d.dart_class[(lid, 0)]
        b = d.dart_class[(lid, 1)]
        deg[a] += 1
        deg[b] += 1
        adj[a].append(b)
        adj[b].append(a)
    npunct = [len(pl) for pl in d.face_punctures]
    chi = [2 - deg[ci] - npunct[ci] for ci in range(nclasses)]

    # visit order: breadth-first from the region holding puncture 0, so
    # every later region has a colored neighbor (the sphere's region
    # adjacency is connected)
    start = d._class_of[d.puncture_placements[0]]
    order = [start]
    seen = {start}
    qi = 0
    while qi < len(order):
        for nb in adj[order[qi]]:
            if nb not in seen:
                seen.add(nb)
                order.append(nb)
        qi += 1
    if len(order) != nclasses:
        raise ValueError("region adjacency is not connected")

    total = RationalFn.zero()
    colors: dict[int, int] = {}

    def weight() -> RationalFn:
        acc = RationalFn.one()
        for ci in range(nclasses):
            acc = acc * RationalFn(circ(colors[ci])) ** chi[ci]
        return acc

    def assign(i: int) -> None:
        nonlocal total
        if i == len(order):
            total = total + weight()
            return
        ci = order[i]
        if npunct[ci]:
            cands = [0]
        else:
            prev = next(colors[nb] for nb in adj[ci] if nb in colors)
            cands = [c for c in (prev - 1, prev + 1) if c >= 0]
        for c in cands:
            if all(
                abs(c - colors[nb]) == 1 for nb in adj[ci] if nb in colors
            ):
                colors[ci] = c
                assign(i + 1)
                del colors[ci]

    assign(0)
    return total


def oracle_bracket(d: PuncturedDiagram) -> RationalFn:
    """Bracket by recursive smoothing, for cross-checking the state sum."""
    if d.n_crossings > ENUM_CAP:
        raise ValueError(f"oracle limited to {ENUM_CAP} crossings")
    if d.n_crossings == 0:
        return _coloring_value(d)
    cid = min(cid for cid, _ in d.crossings)
    acc = RationalFn.zero()
    for sign in (1, -1):
        child, _info = smooth_crossing(d, cid, sign)
        acc = acc + RationalFn.monomial(1, sign) * oracle_bracket(child)
    return acc


_DELTA_POWERS: dict[int, RationalFn] = {}


def _delta_pow(k: int) -> RationalFn:
    if k not in _DELTA_POWERS:
        _DELTA_POWERS[k] = RationalFn(circ(1)) ** k
    return _DELTA_POWERS[k]


def classical_bracket(d: PuncturedDiagram) -> RationalFn:
    """State sum for diagrams whose punctures all share one face.

    Every resolution circle is then trivial, so a state contributes
    A^(sum of signs) times the unknot value per circle.  Circles are
    counted with a plain union-find over slots, no face machinery.
    """
    if diagram_genus(d) != 0:
        raise ValueError("classical evaluation needs all punctures in one face")
    cids = sorted(cid for cid, _ in d.crossings)
    crossings = {cid: d.crossing(cid) for cid in cids}
    n = len(cids)
    base_parent: dict[str, str] = {}
    for _aid, arc in d.arcs:
        base_parent.setdefault(arc.ends[0], arc.ends[0])
        base_parent.setdefault(arc.ends[1], arc.ends[1])

    total = RationalFn.zero()
    for index in range(1 << n):
        parent = dict(base_parent)

        def find(x: str) -> str:
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        def union(x: str, y: str) -> None:
            rx, ry = find(x), find(y)
            if rx != ry:
                parent[rx] = ry

        for _aid, arc in d.arcs:
            union(arc.ends[0], arc.ends[1])
        sum_signs = 0
        for i, cid in enumerate(cids):
            sigma = -1 if index >> i & 1 else 1
            sum_signs += sigma
            c = crossings[cid]
            a = (c.over + (0 if sigma == 1 else 1)) % 2
            s = c.slots
            union(s[a], s[(a + 1) % 4])
            union(s[(a + 2) % 4], s[(a + 3) % 4])
        circles = len({find(x) for x in parent}) + len(d.loops)
        total = total + RationalFn.monomial(1, sum_signs) * _delta_pow(circles)
    return total


def extreme_psi(d: PuncturedDiagram) -> Optional[tuple[int, int]]:
    """Psi of the all-positive and the all-negative resolution.

    None when either extreme resolution admits no coloring (its value
    is zero, so psi is undefined there).
    """
    n = len(d.crossings)
    plus = psi(state_resolution(d, 0).complex)
    minus = psi(state_resolution(d, (1 << n) - 1).complex)
    if plus is None or minus is None:
        return None
    return plus, minus


def psi_extreme_violations(
    spec: GenSpec,
) -> Iterator[tuple[int, int, PuncturedDiagram]]:
    """Experimental search for extreme psi sums past 2 - genus.

    Scans connected, genus-filling, mod-2 trivial diagrams (any other
    predicates on ``spec`` still apply) and yields (psi+, psi-, d)
    whenever psi+ + psi- > 2 - genus.  The template census is clean at
    genus <= 2; genus 3 yields violations from four crossings on, so
    the candidate bound 2 - genus is not a theorem.
    """
    base = replace(
        spec, connected=True, z2_trivial=True, fills_genus=True
    )
    for d in enumerate_diagrams(base):
        pair = extreme_psi(d)
        if pair is not None and pair[0] + pair[1] > 2 - spec.genus:
            yield pair[0], pair[1], d
