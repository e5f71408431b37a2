"""Combinatorial model of link diagrams in a disk with g holes.

A diagram lives on a sphere carrying g+1 labeled punctures; puncture 0 is
the distinguished outer boundary.  The diagram itself is a disjoint union
of pieces:

* a crossing piece is a connected 4-valent planar map given by a rotation
  system: crossings with four slot names in counterclockwise order plus
  arcs joining pairs of slots,
* a loop piece is a single crossingless closed curve.

Relative position of pieces and punctures on the sphere is recorded by a
nesting forest.  A virtual ambient piece named ``.`` with the single face
``f:.`` roots the forest; every real piece and every puncture is placed
into a face of some host piece.  A placed piece also names which of its
own faces opens toward the host ("side").  Faces of the assembled sphere
are then equivalence classes of per-piece faces: the side face of a piece
merges with the face of the host it was placed into.

Face identifiers are derived, not stored: a face of a crossing piece is
``f:`` plus the lexicographically least corner on its boundary, where the
corner between slot s and its counterclockwise successor is named by s.
Loop pieces have the two faces ``f:<id>:L`` and ``f:<id>:R``.

The textual format is line based and round-trips byte-identically once
records are in canonical order::

    kbdiag 1
    genus 1
    X <piece> <crossing> <s0> <s1> <s2> <s3> <over>
    E <piece> <arc> <slot> <slot>
    O <loop>
    place piece <piece> <host> <hostface> <sideface>
    place puncture <index> <host> <hostface> .
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Iterable, Sequence

__all__ = [
    "AMBIENT",
    "AMBIENT_FACE",
    "Arc",
    "Crossing",
    "DiagramError",
    "FaceInfo",
    "FaceStructure",
    "Piece",
    "PuncturedDiagram",
    "SimplicityReport",
    "adequacy",
    "assemble",
    "diagram_genus",
    "faces",
    "is_alternating",
    "is_connected",
    "mirror_diagram",
    "parse_diagram",
    "serialize",
    "simplicity_report",
    "z2_class",
]

AMBIENT = "."
AMBIENT_FACE = "f:."

_ID_RE = re.compile(r"^[A-Za-z0-9_.~-]+$")


class DiagramError(ValueError):
    """Raised for malformed diagram text or inconsistent structure."""


@dataclass(frozen=True)
class Crossing:
    id: str
    slots: tuple[str, str, str, str]  # counterclockwise
    over: int  # 0: strand (slots[0], slots[2]) passes over; 1: the other

    def slot_pos(self, slot: str) -> int:
        return self.slots.index(slot)


@dataclass(frozen=True)
class Arc:
    id: str
    ends: tuple[str, str]  # slot names


@dataclass(frozen=True)
class Piece:
    """One connected component of the diagram.

    Loop pieces have ``loop=True`` and neither crossings nor arcs.
    """

    id: str
    crossings: tuple[Crossing, ...] = ()
    arcs: tuple[Arc, ...] = ()
    loop: bool = False


@dataclass(frozen=True)
class _PieceFace:
    """A face of a single piece: a cyclic boundary walk.

    ``darts`` is the circuit of directed arc traversals with this face on
    the left; ``corners`` has one entry per dart, the corner slot passed
    after that dart.  Loop faces have one pseudo-dart and no corners.
    """

    id: str
    darts: tuple[tuple[str, int], ...]
    corners: tuple[str, ...]


@dataclass(frozen=True)
class FaceInfo:
    id: str
    members: tuple[tuple[str, str], ...]  # (piece, piece-face id)
    corners: tuple[str, ...]
    punctures: tuple[int, ...]
    external: bool


@dataclass(frozen=True)
class FaceStructure:
    faces: tuple[FaceInfo, ...]

    def by_id(self, fid: str) -> FaceInfo:
        for f in self.faces:
            if f.id == fid:
                return f
        raise KeyError(fid)


def trace_faces(piece: Piece) -> dict[str, _PieceFace]:
    """Trace the faces of one piece on its own sphere.

    Darts are (arc id, dir); dir 0 travels ends[0] -> ends[1].  The circuit
    keeps the face on the left; the corner recorded after a dart is the slot
    whose arc the walk leaves on next.  Raises if the rotation system is not
    planar (face count must be crossings + 2).
    """
    if piece.loop:
        left = _PieceFace(f"f:{piece.id}:L", ((piece.id, 0),), ())
        right = _PieceFace(f"f:{piece.id}:R", ((piece.id, 1),), ())
        return {left.id: left, right.id: right}
    slot_owner: dict[str, tuple[str, int]] = {}
    for c in piece.crossings:
        for pos, s in enumerate(c.slots):
            slot_owner[s] = (c.id, pos)
    arc_at_slot: dict[str, tuple[str, int]] = {}
    arc_index: dict[str, Arc] = {}
    for a in piece.arcs:
        arc_index[a.id] = a
        arc_at_slot[a.ends[0]] = (a.id, 0)
        arc_at_slot[a.ends[1]] = (a.id, 1)
    crossing_index = {c.id: c for c in piece.crossings}
    faces: dict[str, _PieceFace] = {}
    pending: set[tuple[str, int]] = set()
    for a in piece.arcs:
        pending.add((a.id, 0))
        pending.add((a.id, 1))
    while pending:
        start = min(pending)
        circuit: list[tuple[str, int]] = []
        corners: list[str] = []
        d = start
        while True:
            circuit.append(d)
            pending.discard(d)
            aid, direction = d
            arc = arc_index[aid]
            head = arc.ends[1 - direction]
            cid, pos = slot_owner[head]
            crossing = crossing_index[cid]
            out_slot = crossing.slots[(pos - 1) % 4]
            corners.append(out_slot)
            a2, end2 = arc_at_slot[out_slot]
            d = (a2, 0) if end2 == 0 else (a2, 1)
            if d == start:
                break
        fid = "f:" + min(corners)
        faces[fid] = _PieceFace(fid, tuple(circuit), tuple(corners))
    expected = len(piece.crossings) + 2
    if len(faces) != expected:
        raise DiagramError(
            f"nonplanar rotation system in piece {piece.id}:"
            f" traced {len(faces)} faces, expected {expected}"
        )
    return faces


@dataclass(frozen=True)
class SimplicityReport:
    nugatory: tuple[str, ...]
    two_external: tuple[str, ...]
    twice_same_external: tuple[str, ...]
    k: int

    @property
    def simple(self) -> bool:
        return not (self.nugatory or self.two_external or self.twice_same_external)


class PuncturedDiagram:
    """Validated immutable diagram with precomputed face structure."""

    def __init__(
        self,
        genus: int,
        pieces: Sequence[Piece],
        piece_placements: dict[str, tuple[str, str, str]],  # pid -> (host, hostface, side)
        puncture_placements: dict[int, tuple[str, str]],  # index -> (host, hostface)
    ):
        self.genus = genus
        self.pieces: dict[str, Piece] = {p.id: p for p in pieces}
        if len(self.pieces) != len(pieces):
            raise DiagramError("duplicate piece id")
        self.piece_placements = dict(piece_placements)
        self.puncture_placements = dict(puncture_placements)
        self._validate_ids()
        self._trace_all_faces()
        self._validate_placements()
        self._build_union_faces()

    # -- construction-time validation ---------------------------------------

    def _validate_ids(self) -> None:
        if self.genus < 0:
            raise DiagramError("genus must be nonnegative")
        seen: set[str] = set()

        def claim(name: str, what: str) -> None:
            if not _ID_RE.match(name) or name == AMBIENT:
                raise DiagramError(f"invalid {what} id {name!r}")
            if name in seen:
                raise DiagramError(f"duplicate id {name!r} ({what})")
            seen.add(name)

        self._slot_owner: dict[str, tuple[str, int]] = {}
        self._crossing_index: dict[str, tuple[str, Crossing]] = {}
        self._arc_index: dict[str, tuple[str, Arc]] = {}
        for piece in self.pieces.values():
            claim(piece.id, "piece")
            if piece.loop:
                if piece.crossings or piece.arcs:
                    raise DiagramError(f"loop piece {piece.id} must be bare")
                continue
            if not piece.crossings:
                raise DiagramError(f"piece {piece.id} has no crossings; use a loop record")
            for c in piece.crossings:
                claim(c.id, "crossing")
                if c.over not in (0, 1):
                    raise DiagramError(f"crossing {c.id}: over flag must be 0 or 1")
                if len(set(c.slots)) != 4:
                    raise DiagramError(f"crossing {c.id}: four distinct slots required")
                for i, s in enumerate(c.slots):
                    claim(s, "slot")
                    self._slot_owner[s] = (c.id, i)
                self._crossing_index[c.id] = (piece.id, c)
            arc_at: dict[str, str] = {}
            for a in piece.arcs:
                claim(a.id, "arc")
                for s in a.ends:
                    if s not in self._slot_owner:
                        raise DiagramError(f"arc {a.id}: unknown slot {s}")
                    if self._slot_owner[s][0] not in {c.id for c in piece.crossings}:
                        raise DiagramError(f"arc {a.id}: slot {s} belongs to another piece")
                    if s in arc_at:
                        raise DiagramError(
                            f"slot conflict: slot {s} used by arcs {arc_at[s]} and {a.id}"
                        )
                    arc_at[s] = a.id
                self._arc_index[a.id] = (piece.id, a)
            if a_dangling := [
                s for c in piece.crossings for s in c.slots if s not in arc_at
            ]:
                raise DiagramError(f"dangling slot {a_dangling[0]} in piece {piece.id}")
            self._check_piece_connected(piece)
        self._arc_at_slot: dict[str, tuple[str, int]] = {}
        for aid, (_pid, a) in self._arc_index.items():
            self._arc_at_slot[a.ends[0]] = (aid, 0)
            self._arc_at_slot[a.ends[1]] = (aid, 1)

    def _check_piece_connected(self, piece: Piece) -> None:
        ids = [c.id for c in piece.crossings]
        adj: dict[str, set[str]] = {cid: set() for cid in ids}
        for a in piece.arcs:
            u = self._slot_owner[a.ends[0]][0]
            v = self._slot_owner[a.ends[1]][0]
            adj[u].add(v)
            adj[v].add(u)
        stack, seen = [ids[0]], {ids[0]}
        while stack:
            for nxt in adj[stack.pop()]:
                if nxt not in seen:
                    seen.add(nxt)
                    stack.append(nxt)
        if len(seen) != len(ids):
            raise DiagramError(f"piece {piece.id} is not connected")

    # -- faces per piece -----------------------------------------------------

    def _trace_all_faces(self) -> None:
        self._piece_faces: dict[str, dict[str, _PieceFace]] = {}
        for piece in self.pieces.values():
            self._piece_faces[piece.id] = self._trace_piece(piece)

    def _trace_piece(self, piece: Piece) -> dict[str, _PieceFace]:
        return trace_faces(piece)

    # -- placements ----------------------------------------------------------

    def _validate_placements(self) -> None:
        placed = set(self.piece_placements)
        real = set(self.pieces)
        if placed != real:
            missing = sorted(real - placed) + sorted(placed - real)
            raise DiagramError(f"placement mismatch for piece {missing[0]}")
        for pid, (host, hostface, side) in self.piece_placements.items():
            self._check_host_face(host, hostface, f"piece {pid}")
            if side not in self._piece_faces[pid]:
                raise DiagramError(f"unknown face {side} on piece {pid}")
        expected = set(range(self.genus + 1))
        if set(self.puncture_placements) != expected:
            raise DiagramError(
                f"puncture count mismatch: genus {self.genus} expects"
                f" punctures {sorted(expected)}, found"
                f" {sorted(self.puncture_placements)}"
            )
        for idx, (host, hostface) in self.puncture_placements.items():
            self._check_host_face(host, hostface, f"puncture {idx}")
        # host chains must reach the ambient piece without cycles
        for pid in self.pieces:
            seen = {pid}
            cur = pid
            while cur != AMBIENT:
                cur = self.piece_placements[cur][0]
                if cur in seen:
                    raise DiagramError(f"nesting cycle involving piece {pid}")
                seen.add(cur)

    def _check_host_face(self, host: str, hostface: str, what: str) -> None:
        if host == AMBIENT:
            if hostface != AMBIENT_FACE:
                raise DiagramError(f"unknown face {hostface} on the ambient piece")
            return
        if host not in self.pieces:
            raise DiagramError(f"unknown host piece {host} for {what}")
        if hostface not in self._piece_faces[host]:
            raise DiagramError(f"unknown face {hostface} on piece {host}")

    # -- union faces -----------------------------------------------------------

    def _build_union_faces(self) -> None:
        keys: list[tuple[str, str]] = [(AMBIENT, AMBIENT_FACE)]
        for pid, pf in self._piece_faces.items():
            keys.extend((pid, fid) for fid in pf)
        index = {k: i for i, k in enumerate(keys)}
        parent = list(range(len(keys)))

        def find(i: int) -> int:
            while parent[i] != i:
                parent[i] = parent[parent[i]]
                i = parent[i]
            return i

        for pid, (host, hostface, side) in self.piece_placements.items():
            a, b = find(index[(pid, side)]), find(index[(host, hostface)])
            if a != b:
                parent[a] = b
        classes: dict[int, list[tuple[str, str]]] = {}
        self._class_of: dict[tuple[str, str], int] = {}
        order: list[int] = []
        for k, i in index.items():
            r = find(i)
            if r not in classes:
                classes[r] = []
                order.append(r)
            classes[r].append(k)
        # a sphere diagram has exactly (sum of piece face counts) - pieces + 1 faces
        expected = sum(len(pf) for pf in self._piece_faces.values()) - len(self.pieces) + 1
        if len(classes) != expected:
            raise DiagramError("placements do not assemble into a sphere")
        self.union_faces: list[tuple[tuple[str, str], ...]] = []
        for idx_, r in enumerate(sorted(order, key=lambda r: min(classes[r]))):
            members = tuple(sorted(classes[r]))
            self.union_faces.append(members)
            for m in members:
                self._class_of[m] = idx_
        self.face_punctures: list[tuple[int, ...]] = [() for _ in self.union_faces]
        bag: dict[int, list[int]] = {}
        for idx in sorted(self.puncture_placements):
            host, hostface = self.puncture_placements[idx]
            bag.setdefault(self._class_of[(host, hostface)], []).append(idx)
        for ci, pl in bag.items():
            self.face_punctures[ci] = tuple(pl)
        self.face_mask: list[int] = [
            sum(1 << i for i in pl) for pl in self.face_punctures
        ]
        # fast lookup tables used by resolutions and surgery
        self.corner_class: dict[str, int] = {}
        self.dart_class: dict[tuple[str, int], int] = {}
        for pid, pf in self._piece_faces.items():
            for fid, f in pf.items():
                ci = self._class_of[(pid, fid)]
                for corner in f.corners:
                    self.corner_class[corner] = ci
                for dart in f.darts:
                    self.dart_class[dart] = ci

    # -- convenience queries ---------------------------------------------------

    @property
    def crossings(self) -> list[tuple[str, Crossing]]:
        return [(cid, pc[1]) for cid, pc in sorted(self._crossing_index.items())]

    @property
    def n_crossings(self) -> int:
        return len(self._crossing_index)

    @property
    def loops(self) -> list[str]:
        return sorted(p.id for p in self.pieces.values() if p.loop)

    @property
    def arcs(self) -> list[tuple[str, Arc]]:
        return [(aid, pa[1]) for aid, pa in sorted(self._arc_index.items())]

    def crossing(self, cid: str) -> Crossing:
        return self._crossing_index[cid][1]

    def piece_of_crossing(self, cid: str) -> str:
        return self._crossing_index[cid][0]

    def arc(self, aid: str) -> Arc:
        return self._arc_index[aid][1]

    def piece_faces(self, pid: str) -> dict[str, _PieceFace]:
        if pid == AMBIENT:
            return {}
        return self._piece_faces[pid]

    def union_face_id(self, ci: int) -> str:
        members = self.union_faces[ci]
        return min(fid for _, fid in members)

    def strands(self) -> list[list[tuple[str, int]]]:
        """Closed strand components of crossing pieces.

        Each component is the cyclic list of crossing passages
        ``(crossing id, entry slot position)``; loop pieces contribute
        nothing here.
        """
        out: list[list[tuple[str, int]]] = []
        visited: set[tuple[str, int]] = set()
        for aid in sorted(self._arc_index):
            for direction in (0, 1):
                start = (aid, direction)
                if start in visited:
                    continue
                comp: list[tuple[str, int]] = []
                d = start
                while True:
                    visited.add(d)
                    visited.add((d[0], 1 - d[1]))  # reverse run is the same strand
                    cur_aid, cur_dir = d
                    _, cur_arc = self._arc_index[cur_aid]
                    head = cur_arc.ends[1 - cur_dir]
                    cid, pos = self._slot_owner[head]
                    comp.append((cid, pos))
                    _, crossing = self._crossing_index[cid]
                    out_slot = crossing.slots[(pos + 2) % 4]
                    a2, end2 = self._arc_at_slot[out_slot]
                    d = (a2, end2)
                    if d == start:
                        break
                out.append(comp)
        return out


# -- assembling a diagram from merge classes ---------------------------------


def assemble(
    genus: int,
    pieces: Sequence[Piece],
    face_classes: Iterable[Iterable[tuple[str, str]]],
    puncture_class: dict[int, int],
) -> PuncturedDiagram:
    """Build a diagram from pieces plus the sphere's face classes.

    ``face_classes`` lists the faces of the assembled sphere, each as the
    per-piece faces it merges (the ambient face ``(".", "f:.")`` must
    appear in exactly one class).  ``puncture_class`` sends a puncture
    index to the position of its class in ``face_classes``.  Placements
    are reconstructed by walking the piece-face incidence tree from the
    ambient piece.
    """
    classes = [tuple(sorted(c)) for c in face_classes]
    owner: dict[tuple[str, str], int] = {}
    for i, cl in enumerate(classes):
        for m in cl:
            owner[m] = i
    by_piece: dict[str, list[tuple[str, str]]] = {}
    for pid_fid in owner:
        by_piece.setdefault(pid_fid[0], []).append(pid_fid)
    piece_placements: dict[str, tuple[str, str, str]] = {}
    anchor: dict[int, tuple[str, str]] = {}
    start = owner[(AMBIENT, AMBIENT_FACE)]
    anchor[start] = (AMBIENT, AMBIENT_FACE)
    queue = [start]
    placed: set[str] = {AMBIENT}
    seen_classes = {start}
    while queue:
        ci = queue.pop(0)
        host, hostface = anchor[ci]
        for pid, fid in classes[ci]:
            if pid in placed:
                continue
            placed.add(pid)
            piece_placements[pid] = (host, hostface, fid)
            for other in sorted(by_piece[pid]):
                oc = owner[other]
                if oc not in seen_classes:
                    seen_classes.add(oc)
                    anchor[oc] = other
                    queue.append(oc)
    puncture_placements = {
        idx: anchor[ci] for idx, ci in sorted(puncture_class.items())
    }
    if len(placed) - 1 != len(pieces):
        raise DiagramError("face classes do not connect all pieces to the ambient")
    return PuncturedDiagram(genus, pieces, piece_placements, puncture_placements)


# -- parsing and serialization -------------------------------------------------


def parse_diagram(text: str) -> PuncturedDiagram:
    """Parse the line format documented in the module docstring."""
    lines = [
        ln.strip()
        for ln in text.splitlines()
        if ln.strip() and not ln.lstrip().startswith("#")
    ]
    if not lines or lines[0].split() != ["kbdiag", "1"]:
        raise DiagramError("missing header line 'kbdiag 1'")
    if len(lines) < 2 or lines[1].split()[:1] != ["genus"]:
        raise DiagramError("missing genus line")
    try:
        genus = int(lines[1].split()[1])
    except (IndexError, ValueError) as exc:
        raise DiagramError("malformed genus line") from exc
    crossings: dict[str, list[Crossing]] = {}
    arcs: dict[str, list[Arc]] = {}
    loops: list[str] = []
    piece_placements: dict[str, tuple[str, str, str]] = {}
    puncture_placements: dict[int, tuple[str, str]] = {}
    for ln in lines[2:]:
        tok = ln.split()
        kind = tok[0]
        if kind == "X":
            if len(tok) != 8:
                raise DiagramError(f"malformed crossing record: {ln!r}")
            pid, cid, s0, s1, s2, s3, over = tok[1:]
            try:
                over_i = int(over)
            except ValueError as exc:
                raise DiagramError(f"crossing {cid}: bad over flag {over!r}") from exc
            crossings.setdefault(pid, []).append(
                Crossing(cid, (s0, s1, s2, s3), over_i)
            )
        elif kind == "E":
            if len(tok) != 5:
                raise DiagramError(f"malformed arc record: {ln!r}")
            pid, aid, sa, sb = tok[1:]
            arcs.setdefault(pid, []).append(Arc(aid, (sa, sb)))
        elif kind == "O":
            if len(tok) != 2:
                raise DiagramError(f"malformed loop record: {ln!r}")
            loops.append(tok[1])
        elif kind == "place":
            if len(tok) != 6:
                raise DiagramError(f"malformed placement record: {ln!r}")
            what, name, host, hostface, side = tok[1:]
            if what == "piece":
                if name in piece_placements:
                    raise DiagramError(f"piece {name} placed twice")
                piece_placements[name] = (host, hostface, side)
            elif what == "puncture":
                try:
                    idx = int(name)
                except ValueError as exc:
                    raise DiagramError(f"bad puncture index {name!r}") from exc
                if side != ".":
                    raise DiagramError(f"puncture {idx}: side field must be '.'")
                if idx in puncture_placements:
                    raise DiagramError(f"puncture {idx} placed twice")
                puncture_placements[idx] = (host, hostface)
            else:
                raise DiagramError(f"unknown placement kind {what!r}")
        else:
            raise DiagramError(f"unknown record {kind!r}")
    pieces: list[Piece] = []
    for pid in sorted(set(crossings) | set(arcs)):
        pieces.append(
            Piece(
                pid,
                tuple(sorted(crossings.get(pid, []), key=lambda c: c.id)),
                tuple(sorted(arcs.get(pid, []), key=lambda a: a.id)),
            )
        )
    for lid in loops:
        pieces.append(Piece(lid, loop=True))
    return PuncturedDiagram(genus, pieces, piece_placements, puncture_placements)


def serialize(d: PuncturedDiagram) -> str:
    """Canonical textual form: records sorted, ids preserved."""
    out = ["kbdiag 1", f"genus {d.genus}"]
    for pid in sorted(p for p in d.pieces if not d.pieces[p].loop):
        piece = d.pieces[pid]
        for c in sorted(piece.crossings, key=lambda c: c.id):
            out.append(f"X {pid} {c.id} {' '.join(c.slots)} {c.over}")
    for pid in sorted(p for p in d.pieces if not d.pieces[p].loop):
        piece = d.pieces[pid]
        for a in sorted(piece.arcs, key=lambda a: a.id):
            out.append(f"E {pid} {a.id} {a.ends[0]} {a.ends[1]}")
    for lid in d.loops:
        out.append(f"O {lid}")
    for pid in sorted(d.piece_placements):
        host, hostface, side = d.piece_placements[pid]
        out.append(f"place piece {pid} {host} {hostface} {side}")
    for idx in sorted(d.puncture_placements):
        host, hostface = d.puncture_placements[idx]
        out.append(f"place puncture {idx} {host} {hostface} .")
    return "\n".join(out) + "\n"


# -- analyses -------------------------------------------------------------------


def mirror_diagram(d: PuncturedDiagram) -> PuncturedDiagram:
    """The same diagram with every crossing switched."""
    pieces = []
    for p in d.pieces.values():
        if p.loop:
            pieces.append(p)
        else:
            flipped = tuple(
                Crossing(c.id, c.slots, 1 - c.over) for c in p.crossings
            )
            pieces.append(Piece(p.id, flipped, p.arcs))
    return PuncturedDiagram(
        d.genus, pieces, d.piece_placements, d.puncture_placements
    )


def faces(d: PuncturedDiagram) -> FaceStructure:
    """Faces of the assembled sphere with puncture content."""
    infos = []
    for ci, members in enumerate(d.union_faces):
        corners: list[str] = []
        for pid, fid in members:
            if pid == AMBIENT:
                continue
            corners.extend(d.piece_faces(pid)[fid].corners)
        pl = d.face_punctures[ci]
        infos.append(
            FaceInfo(
                id=d.union_face_id(ci),
                members=members,
                corners=tuple(corners),
                punctures=pl,
                external=bool(pl),
            )
        )
    return FaceStructure(tuple(infos))


def is_connected(d: PuncturedDiagram) -> bool:
    """True when the diagram is a single connected piece.

    The empty diagram counts as not connected.
    """
    return len(d.pieces) == 1


def is_alternating(d: PuncturedDiagram) -> bool:
    """True when along every strand crossings alternate over and under.

    The check is cyclic, so a strand passing exactly one crossing fails
    it.  Crossingless loop pieces impose no condition.
    """
    for comp in d.strands():
        flags = []
        for cid, pos in comp:
            c = d.crossing(cid)
            flags.append(1 if pos % 2 == c.over else 0)
        if any(flags[i] == flags[(i + 1) % len(flags)] for i in range(len(flags))):
            return False
    return True


def diagram_genus(d: PuncturedDiagram) -> int:
    """Number of distinct faces holding punctures, minus one."""
    classes = {
        d._class_of[(host, hostface)]
        for host, hostface in d.puncture_placements.values()
    }
    return len(classes) - 1


def z2_class(d: PuncturedDiagram) -> tuple[int, ...]:
    """Mod-2 winding class of the underlying link.

    Returned as g+1 bits indexed by puncture, canonicalized so bit 0
    is zero (the two sides of a circle give the same class).
    """
    from .resolution import resolve

    state = {cid: 1 for cid, _ in d.crossings}
    res = resolve(d, state)
    total = 0
    for circle in res.circles:
        total ^= circle.mask_min  # per-circle mask already has bit 0 clear
    return tuple((total >> i) & 1 for i in range(d.genus + 1))


def adequacy(d: PuncturedDiagram) -> tuple[bool, bool]:
    """(plus, minus) adequacy via trivial-circle counts.

    A diagram is plus-adequate when switching any single crossing
    strictly lowers the number of homotopically trivial circles of the
    all-plus resolution, and dually for minus.
    """
    from .resolution import resolve

    cids = [cid for cid, _ in d.crossings]
    out = []
    for base in (1, -1):
        state = {cid: base for cid in cids}
        ref = resolve(d, state).trivial_count
        ok = True
        for cid in cids:
            flipped = dict(state)
            flipped[cid] = -base
            if resolve(d, flipped).trivial_count >= ref:
                ok = False
                break
        out.append(ok)
    return out[0], out[1]


def simplicity_report(d: PuncturedDiagram) -> SimplicityReport:
    """Classify crossings against the simpleness conditions.

    ``nugatory``: crossings with two opposite corners on one face such
    that one of the two halves obtained by the separating smoothing can
    be enclosed in a puncture-free disk.  ``two_external``: crossings
    whose corners meet two distinct puncture-carrying faces (their count
    is ``k``).  ``twice_same_external``: crossings meeting one
    puncture-carrying face at two or more corners.
    """
    from .moves import crossing_is_nugatory

    nugatory = []
    two_external = []
    twice_same = []
    for cid, c in d.crossings:
        face_ids = [d.corner_class[s] for s in c.slots]
        ext = [ci for ci in face_ids if d.face_punctures[ci]]
        distinct = set(ext)
        if len(distinct) >= 2:
            two_external.append(cid)
        if len(ext) > len(distinct):
            twice_same.append(cid)
        if crossing_is_nugatory(d, cid):
            nugatory.append(cid)
    return SimplicityReport(
        nugatory=tuple(nugatory),
        two_external=tuple(two_external),
        twice_same_external=tuple(twice_same),
        k=len(two_external),
    )
