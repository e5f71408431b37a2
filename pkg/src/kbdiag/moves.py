"""Local surgery on punctured diagrams.

``smooth_crossing`` replaces one crossing by either pinch pattern and is the
workhorse behind skein recursion and nugatory detection.  ``add_kink``,
``add_finger`` and ``slide_triangle`` perform the three Reidemeister moves
(kink in, finger across, triangle past a crossing) and report the exact
bracket factor they introduce, so move sequences double as an independent
integrity check on the state-sum engine.

Every construction rebuilds the sphere placement from face merge classes.
New faces are classified by votes: a corner at a surviving crossing keeps
its old union class, corners at fresh crossings follow a fixed local table,
and a ``DiagramError`` is raised if the votes ever disagree, so a wrong
table cannot produce a silently wrong diagram.
"""

from __future__ import annotations

from dataclasses import dataclass

from .diagram import (
    AMBIENT,
    AMBIENT_FACE,
    Arc,
    Crossing,
    DiagramError,
    Piece,
    PuncturedDiagram,
    assemble,
    trace_faces,
)
from .laurent import RationalFn
from .resolution import _UF

Dart = tuple[str, int]
_Root = tuple[str, object]


def _all_ids(d: PuncturedDiagram) -> set[str]:
    ids: set[str] = set(d.pieces)
    for piece in d.pieces.values():
        for c in piece.crossings:
            ids.add(c.id)
            ids.update(c.slots)
        for a in piece.arcs:
            ids.add(a.id)
    return ids


def _fresh_crossing_ids(used: set[str], count: int) -> list[str]:
    # reserve the whole x<N> family: crossing, slots, and two arc names
    out: list[str] = []
    n = 0
    while len(out) < count:
        cid = f"x{n}"
        family = [cid, f"{cid}k", f"{cid}t"] + [f"{cid}.{i}" for i in range(4)]
        if all(name not in used for name in family):
            out.append(cid)
            used.update(family)
        n += 1
    return out


def _piece_names(used: set[str]):
    n = 0
    while True:
        name = f"p{n}"
        if name not in used:
            used.add(name)
            yield name
        n += 1


def _base_votes(d: PuncturedDiagram, skip: set[str]) -> dict[tuple[str, str], _Root]:
    vote: dict[tuple[str, str], _Root] = {
        (AMBIENT, AMBIENT_FACE): ("old", d._class_of[(AMBIENT, AMBIENT_FACE)])
    }
    for pid in d.pieces:
        if pid in skip:
            continue
        for fid in d.piece_faces(pid):
            vote[(pid, fid)] = ("old", d._class_of[(pid, fid)])
    return vote


def _puncture_roots(d: PuncturedDiagram) -> dict[int, _Root]:
    return {
        idx: ("old", d._class_of[d.puncture_placements[idx]])
        for idx in d.puncture_placements
    }


def _assemble_votes(
    d: PuncturedDiagram,
    pieces: list[Piece],
    vote: dict[tuple[str, str], _Root],
    punct_root: dict[int, _Root],
) -> PuncturedDiagram:
    groups: dict[_Root, list[tuple[str, str]]] = {}
    for key, root in vote.items():
        groups.setdefault(root, []).append(key)
    roots = sorted(groups, key=lambda r: min(groups[r]))
    pos = {r: i for i, r in enumerate(roots)}
    for idx, root in punct_root.items():
        if root not in pos:
            raise DiagramError(f"surgery lost the face holding puncture {idx}")
    classes = [sorted(groups[r]) for r in roots]
    pclass = {idx: pos[root] for idx, root in punct_root.items()}
    return assemble(d.genus, pieces, classes, pclass)


# -- smoothing one crossing ----------------------------------------------------


@dataclass(frozen=True)
class SmoothInfo:
    """Where the strands of a smoothed crossing ended up."""

    removed: str
    sign: int
    where: dict[str, tuple[str, str]]  # old arc id -> ("arc" | "loop", new id)
    piece_of: dict[str, str]  # new arc or loop id -> new piece id
    class_map: dict[int, int]  # old union class index -> new union class index
    pinch_class: int  # new union class at the smoothing site


def smooth_crossing(
    d: PuncturedDiagram, cid: str, sign: int
) -> tuple[PuncturedDiagram, SmoothInfo]:
    """Replace crossing ``cid`` by its ``sign`` smoothing.

    Sign +1 pairs the slots so that the corner classes at positions
    over+1 and over+3 merge; this matches the resolution states, so
    ``A * smooth(+1) + A^-1 * smooth(-1)`` reproduces the bracket.
    """
    if sign not in (1, -1):
        raise DiagramError("smoothing sign must be +1 or -1")
    try:
        pid = d.piece_of_crossing(cid)
    except KeyError:
        raise DiagramError(f"unknown crossing {cid}") from None
    piece = d.pieces[pid]
    c = d.crossing(cid)
    s = c.slots
    a0 = (c.over + (0 if sign == 1 else 1)) % 2
    pairs = ((s[a0], s[(a0 + 1) % 4]), (s[(a0 + 2) % 4], s[(a0 + 3) % 4]))
    merged = (s[(a0 + 1) % 4], s[(a0 + 3) % 4])

    uf = _UF(len(d.union_faces))
    uf.union(d.corner_class[merged[0]], d.corner_class[merged[1]])

    join: dict[Dart, Dart] = {}
    for sx, sy in pairs:
        ex, ey = d._arc_at_slot[sx], d._arc_at_slot[sy]
        join[ex] = ey
        join[ey] = ex
    consumed = sorted({aid for aid, _ in join})
    remaining = tuple(cr for cr in piece.crossings if cr.id != cid)

    new_arcs: list[Arc] = []
    loop_ids: list[str] = []
    where: dict[str, tuple[str, str]] = {}
    used: set[str] = set()
    for aid in consumed:  # chains between surviving crossings
        if aid in used:
            continue
        free = [e for e in (0, 1) if (aid, e) not in join]
        if not free:
            continue
        e0 = free[0]
        chain = [aid]
        used.add(aid)
        cur = (aid, 1 - e0)
        while cur in join:
            nxt_aid, nxt_end = join[cur]
            chain.append(nxt_aid)
            used.add(nxt_aid)
            cur = (nxt_aid, 1 - nxt_end)
        nid = min(chain)
        new_arcs.append(Arc(nid, (d.arc(aid).ends[e0], d.arc(cur[0]).ends[cur[1]])))
        for m in chain:
            where[m] = ("arc", nid)
    for aid in consumed:  # cycles close into free loops
        if aid in used:
            continue
        cyc = [aid]
        used.add(aid)
        cur = join[(aid, 1)]
        while cur[0] != aid:
            b, f = cur
            cyc.append(b)
            used.add(b)
            cur = join[(b, 1 - f)]
        lid = min(cyc)
        loop_ids.append(lid)
        for m in cyc:
            where[m] = ("loop", lid)

    kept = [a for a in piece.arcs if a.id not in set(consumed)] + new_arcs
    owner = {sl: cr.id for cr in remaining for sl in cr.slots}
    adj: dict[str, set[str]] = {cr.id: set() for cr in remaining}
    arc_cr: dict[str, str] = {}
    for a in kept:
        u, v = owner[a.ends[0]], owner[a.ends[1]]
        arc_cr[a.id] = u
        adj[u].add(v)
        adj[v].add(u)
    new_pieces: list[Piece] = []
    piece_of: dict[str, str] = {}
    seen: set[str] = set()
    taken = _all_ids(d)
    fresh = iter(_piece_names(taken))
    for cr in remaining:
        if cr.id in seen:
            continue
        comp = {cr.id}
        stack = [cr.id]
        while stack:
            for nxt in adj[stack.pop()]:
                if nxt not in comp:
                    comp.add(nxt)
                    stack.append(nxt)
        seen |= comp
        name = pid if len(seen) == len(remaining) and not new_pieces else next(fresh)
        part_arcs = tuple(a for a in kept if arc_cr[a.id] in comp)
        new_pieces.append(
            Piece(name, crossings=tuple(cr2 for cr2 in remaining if cr2.id in comp), arcs=part_arcs)
        )
        for a in part_arcs:
            piece_of[a.id] = name
    for lid in loop_ids:
        new_pieces.append(Piece(lid, loop=True))
        piece_of[lid] = lid

    vote = _base_votes(d, {pid})
    for key in vote:
        vote[key] = ("old", uf.find(vote[key][1]))
    for np_ in new_pieces:
        if np_.loop:
            lid = np_.id
            vote[(lid, f"f:{lid}:L")] = ("old", uf.find(d.dart_class[(lid, 0)]))
            vote[(lid, f"f:{lid}:R")] = ("old", uf.find(d.dart_class[(lid, 1)]))
            continue
        for fid, pf in trace_faces(np_).items():
            cls = {uf.find(d.corner_class[x]) for x in pf.corners}
            if len(cls) != 1:
                raise DiagramError("smoothing produced inconsistent face classes")
            vote[(np_.id, fid)] = ("old", cls.pop())
    punct_root = {
        idx: ("old", uf.find(root[1])) for idx, root in _puncture_roots(d).items()
    }

    others = [p for p in d.pieces.values() if p.id != pid]
    dp = _assemble_votes(d, others + new_pieces, vote, punct_root)
    new_index = {vote[members[0]]: j for j, members in enumerate(dp.union_faces)}
    class_map = {
        ci: new_index[("old", uf.find(ci))] for ci in range(len(d.union_faces))
    }
    pinch = class_map[d.corner_class[merged[0]]]
    return dp, SmoothInfo(cid, sign, where, piece_of, class_map, pinch)


# -- nugatory crossings --------------------------------------------------------


def crossing_is_nugatory(d: PuncturedDiagram, cid: str) -> bool:
    """True when one side of the crossing's pinch can be flipped away.

    A crossing pinches when a single union face meets two opposite corners.
    Smoothing along the pinch splits the strand graph; the crossing is
    nugatory when either split side encloses no punctures.  Pieces hosted
    inside the pinch face itself obstruct nothing.
    """
    try:
        c = d.crossing(cid)
    except KeyError:
        raise DiagramError(f"unknown crossing {cid}") from None
    s = c.slots
    for j in (0, 1):
        if d.corner_class[s[j]] != d.corner_class[s[j + 2]]:
            continue
        sign = 1 if c.over == (j + 1) % 2 else -1
        dp, info = smooth_crossing(d, cid, sign)
        side_a = info.where[d._arc_at_slot[s[j]][0]]
        side_b = info.where[d._arc_at_slot[s[j + 1]][0]]
        pa = info.piece_of[side_a[1]]
        pb = info.piece_of[side_b[1]]
        counts = _split_puncture_counts(dp, info.pinch_class, pa, pb)
        if counts is not None and min(counts) == 0:
            return True
    return False


def _split_puncture_counts(
    dp: PuncturedDiagram, pinch: int, pa: str, pb: str
) -> tuple[int, int] | None:
    adj: dict[str, set[str]] = {AMBIENT: set()}
    for pid in dp.pieces:
        adj[pid] = set()
    first_piece: list[str] = []
    for ci, members in enumerate(dp.union_faces):
        ps = sorted({m[0] for m in members})
        first_piece.append(ps[0])
        if ci == pinch:
            continue
        for other in ps[1:]:
            adj[ps[0]].add(other)
            adj[other].add(ps[0])
    comp: dict[str, int] = {}
    for node in sorted(adj):
        if node in comp:
            continue
        comp[node] = len(first_piece) + len(comp)  # any unique tag
        tag = comp[node]
        stack = [node]
        while stack:
            for nxt in adj[stack.pop()]:
                if nxt not in comp:
                    comp[nxt] = tag
                    stack.append(nxt)
    if comp[pa] == comp[pb]:
        return None
    count_a = count_b = 0
    for ci in range(len(dp.union_faces)):
        if ci == pinch:
            continue
        side = comp[first_piece[ci]]
        if side == comp[pa]:
            count_a += len(dp.face_punctures[ci])
        elif side == comp[pb]:
            count_b += len(dp.face_punctures[ci])
    return count_a, count_b


# -- Reidemeister moves --------------------------------------------------------


def add_kink(
    d: PuncturedDiagram, dart: Dart, over: int
) -> tuple[PuncturedDiagram, RationalFn]:
    """First move: curl the strand, lobe to the right of ``dart``.

    ``over`` is the new crossing's flag; the bracket gains -A^3 when the
    first passage runs over (over = 0) and -A^-3 otherwise.
    """
    if over not in (0, 1):
        raise DiagramError("over flag must be 0 or 1")
    if dart not in d.dart_class:
        raise DiagramError(f"no strand side {dart!r}")
    sid, direction = dart
    used = _all_ids(d)
    (xid,) = _fresh_crossing_ids(used, 1)
    t = tuple(f"{xid}.{i}" for i in range(4))
    cross = Crossing(xid, t, over)
    kink = Arc(f"{xid}k", (t[2], t[3]))
    f_dart: dict[Dart, int] = {}
    if sid in d.pieces:  # dart on a bare loop
        body = Arc(f"{xid}t", (t[1], t[0]))
        piece = Piece(sid, crossings=(cross,), arcs=(body, kink))
        f_dart[(body.id, 0)] = d.dart_class[(sid, direction)]
        f_dart[(body.id, 1)] = d.dart_class[(sid, 1 - direction)]
    else:
        host_pid, arc = d._arc_index[sid]
        a1 = Arc(sid, (arc.ends[direction], t[0]))
        a2 = Arc(f"{xid}t", (t[1], arc.ends[1 - direction]))
        old = d.pieces[host_pid]
        piece = Piece(
            host_pid,
            crossings=old.crossings + (cross,),
            arcs=tuple(a for a in old.arcs if a.id != sid) + (a1, a2, kink),
        )
        for frag in (a1, a2):
            f_dart[(frag.id, 0)] = d.dart_class[(sid, direction)]
            f_dart[(frag.id, 1)] = d.dart_class[(sid, 1 - direction)]
    vote = _base_votes(d, {piece.id})
    for fid, pf in trace_faces(piece).items():
        cls: set[_Root] = set()
        for x in pf.corners:
            if x not in t:
                cls.add(("old", d.corner_class[x]))
        for dt in pf.darts:
            if dt in f_dart:
                cls.add(("old", f_dart[dt]))
        if set(pf.corners) == {t[2]}:
            if cls:
                raise DiagramError("kink lobe touched existing faces")
            vote[(piece.id, fid)] = ("new", "lobe")
            continue
        if len(cls) != 1:
            raise DiagramError("kink produced inconsistent face classes")
        vote[(piece.id, fid)] = cls.pop()
    pieces = [piece if p.id == piece.id else p for p in d.pieces.values()]
    dp = _assemble_votes(d, pieces, vote, _puncture_roots(d))
    return dp, RationalFn.monomial(-1, 3 if over == 0 else -3)


def add_finger(
    d: PuncturedDiagram, dart1: Dart, dart2: Dart, over: int
) -> tuple[PuncturedDiagram, RationalFn]:
    """Second move: push a finger of dart1's strand across dart2's strand.

    Both darts must border the same union face on their left; the finger
    crosses that face. dart1's strand passes over when ``over`` is 1.  The
    crossed face splits only when the two darts lie on the same boundary
    circuit; hosted pieces and punctures stay with the portion behind
    dart2's far corner.
    """
    if over not in (0, 1):
        raise DiagramError("over flag must be 0 or 1")
    for dt in (dart1, dart2):
        if dt not in d.dart_class:
            raise DiagramError(f"no strand side {dt!r}")
    if dart1[0] == dart2[0]:
        raise DiagramError("finger endpoints must lie on different arcs or loops")
    froot = d.dart_class[dart1]
    if froot != d.dart_class[dart2]:
        raise DiagramError("darts do not border a common face")
    a_id, a_dir = dart1
    b_id, b_dir = dart2
    h_root = d.dart_class[(a_id, 1 - a_dir)]
    g_root = d.dart_class[(b_id, 1 - b_dir)]

    used = _all_ids(d)
    uid, vid = _fresh_crossing_ids(used, 2)
    u = tuple(f"{uid}.{i}" for i in range(4))
    v = tuple(f"{vid}.{i}" for i in range(4))
    # slots run west, south, east, north; dart2's strand crosses west to
    # east through both, the finger descends into v and climbs out of u
    cu = Crossing(uid, u, over)
    cv = Crossing(vid, v, over)
    bridge = Arc(f"{uid}k", (v[1], u[1]))

    def strand_pieces(sid: str) -> tuple[str, ...]:
        if sid in d.pieces:
            return (sid,)
        return (d._arc_index[sid][0],)

    (p1,) = strand_pieces(a_id)
    (p2,) = strand_pieces(b_id)
    if a_id in d.pieces:
        arcs1 = [Arc(f"{uid}t", (v[3], u[3]))]
    else:
        arc_a = d.arc(a_id)
        arcs1 = [
            Arc(a_id, (arc_a.ends[a_dir], v[3])),
            Arc(f"{uid}t", (u[3], arc_a.ends[1 - a_dir])),
        ]
    if b_id in d.pieces:
        arcs2 = [Arc(f"{vid}k", (u[2], v[0])), Arc(f"{vid}t", (v[2], u[0]))]
    else:
        arc_b = d.arc(b_id)
        arcs2 = [
            Arc(b_id, (arc_b.ends[b_dir], u[0])),
            Arc(f"{vid}k", (u[2], v[0])),
            Arc(f"{vid}t", (v[2], arc_b.ends[1 - b_dir])),
        ]

    # does the finger split the crossed face?  only when both darts sit on
    # the same boundary circuit; the corners walked from dart1 to dart2
    # fall on the fresh side of the split
    special: dict[str, _Root] = {}
    fresh_split: _Root = ("new", "split")
    same_circuit = False
    if a_id not in d.pieces:
        pf1 = next(
            f for f in d.piece_faces(p1).values() if dart1 in f.darts
        )
        if dart2 in pf1.darts:
            same_circuit = True
            ds = list(pf1.darts)
            cs = list(pf1.corners)
            i1 = ds.index(dart1)
            m = (ds.index(dart2) - i1) % len(ds)
            for k in range(len(ds)):
                slot = cs[(i1 + k) % len(ds)]
                special[slot] = fresh_split if k < m else ("old", froot)
    west_f: _Root = fresh_split if same_circuit else ("old", froot)
    special[u[0]] = ("old", g_root)
    special[u[1]] = ("new", "bigon")
    special[u[2]] = ("old", h_root)
    special[u[3]] = west_f
    special[v[0]] = ("new", "bigon")
    special[v[1]] = ("old", g_root)
    special[v[2]] = ("old", froot)
    special[v[3]] = ("old", h_root)

    merged_ids = {p1, p2}
    name = min(merged_ids)
    crossings: list[Crossing] = [cu, cv]
    arcs: list[Arc] = [bridge] + arcs1 + arcs2
    for mp in sorted(merged_ids):
        mpiece = d.pieces[mp]
        crossings.extend(mpiece.crossings)
        arcs.extend(a for a in mpiece.arcs if a.id not in (a_id, b_id))
    piece = Piece(name, crossings=tuple(crossings), arcs=tuple(arcs))

    vote = _base_votes(d, merged_ids)
    for fid, pf in trace_faces(piece).items():
        cls = {
            special[x] if x in special else ("old", d.corner_class[x])
            for x in pf.corners
        }
        if len(cls) != 1:
            raise DiagramError("finger produced inconsistent face classes")
        vote[(name, fid)] = cls.pop()
    pieces = [p for p in d.pieces.values() if p.id not in merged_ids] + [piece]
    dp = _assemble_votes(d, pieces, vote, _puncture_roots(d))
    return dp, RationalFn.one()


def slide_triangle(
    d: PuncturedDiagram, cid: str, j: int
) -> tuple[PuncturedDiagram, RationalFn]:
    """Third move: slide the triangle at corner ``j`` of ``cid`` across it.

    The corner must bound an empty three-cornered face whose far side
    passes consistently over or under at both of its other crossings.
    Implemented by exchanging the arc ends plugged into opposite slots
    of ``cid``, which carries each of its corner classes two steps around.
    """
    if _triangle_site(d, cid, j) is None:
        raise DiagramError(
            f"corner {j} of crossing {cid} does not bound a slidable triangle"
        )
    pid = d.piece_of_crossing(cid)
    c = d.crossing(cid)
    swap = {
        c.slots[j % 4]: c.slots[(j + 2) % 4],
        c.slots[(j + 2) % 4]: c.slots[j % 4],
        c.slots[(j + 1) % 4]: c.slots[(j + 3) % 4],
        c.slots[(j + 3) % 4]: c.slots[(j + 1) % 4],
    }
    old = d.pieces[pid]
    piece = Piece(
        pid,
        crossings=old.crossings,
        arcs=tuple(
            Arc(a.id, (swap.get(a.ends[0], a.ends[0]), swap.get(a.ends[1], a.ends[1])))
            for a in old.arcs
        ),
    )
    rotated = {
        c.slots[jj]: ("old", d.corner_class[c.slots[(jj + 2) % 4]]) for jj in range(4)
    }
    vote = _base_votes(d, {pid})
    for fid, pf in trace_faces(piece).items():
        cls = {
            rotated[x] if x in rotated else ("old", d.corner_class[x])
            for x in pf.corners
        }
        if len(cls) != 1:
            raise DiagramError("triangle slide produced inconsistent face classes")
        vote[(pid, fid)] = cls.pop()
    pieces = [piece if p.id == pid else p for p in d.pieces.values()]
    dp = _assemble_votes(d, pieces, vote, _puncture_roots(d))
    return dp, RationalFn.one()


def _triangle_site(d: PuncturedDiagram, cid: str, j: int) -> tuple[str, str] | None:
    try:
        c = d.crossing(cid)
    except KeyError:
        raise DiagramError(f"unknown crossing {cid}") from None
    pid = d.piece_of_crossing(cid)
    sj = c.slots[j % 4]
    ci = d.corner_class[sj]
    if len(d.union_faces[ci]) != 1 or d.face_punctures[ci]:
        return None
    ((mpid, mfid),) = d.union_faces[ci]
    pf = d.piece_faces(mpid)[mfid]
    if len(pf.corners) != 3 or sj not in pf.corners:
        return None
    su, sv = [x for x in pf.corners if x != sj]
    u_cid = d._slot_owner[su][0]
    v_cid = d._slot_owner[sv][0]
    if len({cid, u_cid, v_cid}) != 3:
        return None
    near = {d._arc_at_slot[sj][0], d._arc_at_slot[c.slots[(j + 1) % 4]][0]}
    far = [aid for aid, _dir in pf.darts if aid not in near]
    if len(set(far)) != 1:
        return None
    s_arc = d.arc(far[0])
    e0c, e0pos = d._slot_owner[s_arc.ends[0]]
    e1c, e1pos = d._slot_owner[s_arc.ends[1]]
    if {e0c, e1c} != {u_cid, v_cid}:
        return None
    if (e0pos % 2 == d.crossing(e0c).over) != (e1pos % 2 == d.crossing(e1c).over):
        return None
    return mpid, mfid


# -- site enumeration ----------------------------------------------------------


def kink_sites(d: PuncturedDiagram) -> list[tuple[Dart, int]]:
    darts: list[Dart] = []
    for aid, _arc in d.arcs:
        darts += [(aid, 0), (aid, 1)]
    for lid in d.loops:
        darts += [(lid, 0), (lid, 1)]
    return [(dt, over) for dt in sorted(darts) for over in (0, 1)]


def finger_sites(d: PuncturedDiagram) -> list[tuple[Dart, Dart, int]]:
    by_class: dict[int, list[Dart]] = {}
    for dart, ci in d.dart_class.items():
        by_class.setdefault(ci, []).append(dart)
    out: list[tuple[Dart, Dart, int]] = []
    for ci in sorted(by_class):
        group = sorted(by_class[ci])
        for d1 in group:
            for d2 in group:
                if d1[0] != d2[0]:
                    out += [(d1, d2, 0), (d1, d2, 1)]
    return out


def triangle_sites(d: PuncturedDiagram) -> list[tuple[str, int]]:
    return [
        (cid, j)
        for cid, _c in d.crossings
        for j in range(4)
        if _triangle_site(d, cid, j) is not None
    ]
