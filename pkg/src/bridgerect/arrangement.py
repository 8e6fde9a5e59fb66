"""Superposition of two arc systems as a planar combinatorial map.

Geometry is kept throughout: both systems live in equatorial coordinates and
the only freedom is how the crossing points of A and B interleave on each
segment.  The raw superposition puts A's points first; bigons and half-bigons
are removed by swapping adjacent A/B points along the equator, which is an
isotopy of B.  From the geometry we build the full map (arcs plus equator),
whose faces are discs, and merge faces across equator edges to obtain the
faces of ``A ∪ B`` (possibly with several boundary cycles).
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from functools import cached_property
from typing import NamedTuple, Sequence

from .sphere import (
    LOWER,
    PUNCTURES,
    SEGMENTS,
    UPPER,
    ArcSystem,
    canonicalize_system,
    flip,
)

A_SIDE, B_SIDE = 0, 1
OWNER_NAMES = ("A", "B")


class NotMinimal(ValueError):
    pass


class _UF:
    def __init__(self, n: int):
        self.parent = list(range(n))

    def find(self, x: int) -> int:
        p = self.parent
        while p[x] != x:
            p[x] = p[p[x]]
            x = p[x]
        return x

    def union(self, x: int, y: int) -> None:
        x, y = self.find(x), self.find(y)
        if x != y:
            self.parent[y] = x


class Crossing(NamedTuple):
    hemisphere: str
    a_arc: int
    a_chord: int
    b_arc: int
    b_chord: int


class ABDart(NamedTuple):
    """A maximal arc piece between two vertices of ``A ∪ B``.

    Vertices are ``("p", k)`` for punctures and ``("x", c)`` for crossings;
    ``piece`` counts pieces along the arc from its start, ``forward`` tells
    whether the dart runs with the arc's orientation.
    """

    owner: int
    arc: int
    piece: int
    forward: bool
    tail: tuple
    head: tuple


@dataclass(frozen=True)
class Face:
    cycles: tuple[tuple[int, ...], ...]
    darts: Sequence[ABDart] = field(repr=False, compare=False)

    @property
    def is_disc(self) -> bool:
        return len(self.cycles) == 1

    def corners(self, c: int = 0) -> list[tuple]:
        return [self.darts[d].tail for d in self.cycles[c]]

    def sides(self, c: int = 0) -> list[tuple[int, int]]:
        return [(self.darts[d].owner, self.darts[d].arc) for d in self.cycles[c]]

    @property
    def corner_count(self) -> int:
        return sum(len(c) for c in self.cycles)

    @property
    def punctures_on_boundary(self) -> list[int]:
        return sorted({v[1] for c in range(len(self.cycles)) for v in self.corners(c) if v[0] == "p"})

    def crossing_corners(self, c: int = 0) -> int:
        return sum(1 for v in self.corners(c) if v[0] == "x")

    def signature(self) -> tuple:
        """Rotation-invariant description of the face used for confluence checks."""
        sigs = []
        for c in range(len(self.cycles)):
            seq = [(v[0], o, a) for v, (o, a) in zip(self.corners(c), self.sides(c))]
            rots = [tuple(seq[i:] + seq[:i]) for i in range(len(seq))]
            sigs.append(min(rots) if rots else ())
        return tuple(sorted(sigs))


class SubarcRef(NamedTuple):
    owner: int
    arc: int
    lo: int
    hi: int


class _Geometry:
    """Boundary points, chords and crossings for one interleaving state."""

    def __init__(self, systems: tuple[ArcSystem, ArcSystem], order: dict[int, list[tuple]]):
        self.systems = systems
        self.order = order
        bp: list[tuple] = []
        index: dict[tuple, int] = {}
        for k in PUNCTURES:
            index[("p", k)] = len(bp)
            bp.append(("p", k))
            for tok in order[k]:
                index[tok] = len(bp)
                bp.append(tok)
        self.bp = bp
        self.index = index
        nb = len(bp)
        self.nb = nb
        # chords[(owner, arc)] = list of (hemisphere, u, v) as boundary indices
        chords: dict[tuple[int, int], list[tuple[str, int, int]]] = {}
        for owner, S in enumerate(systems):
            for i, arc in enumerate(S.arcs):
                pts = [index[("p", arc.start)]]
                pts.extend(index[(owner, i, t)] for t in range(len(arc.events)))
                pts.append(index[("p", arc.end)])
                chords[(owner, i)] = [(arc.side_of_chord(t), pts[t], pts[t + 1]) for t in range(len(pts) - 1)]
        self.chords = chords
        crossings: list[Crossing] = []
        for (oa, ia), clist in chords.items():
            if oa != A_SIDE:
                continue
            for ta, (ha, u, v) in enumerate(clist):
                lo, hi = (u, v) if u < v else (v, u)
                for ib in range(3):
                    for tb, (hb, c, d) in enumerate(chords[(B_SIDE, ib)]):
                        if hb != ha or c in (u, v) or d in (u, v):
                            continue
                        if (lo < c < hi) != (lo < d < hi):
                            crossings.append(Crossing(ha, ia, ta, ib, tb))
        self.crossings = crossings

    def segment_of(self, b: int):
        tok = self.bp[b]
        return tok[1] if tok[0] == "p" else None


@dataclass
class Arrangement:
    A: ArcSystem
    B: ArcSystem
    order: dict[int, list[tuple]]
    minimal: bool = False

    # ---------------------------------------------------------- construction
    @cached_property
    def geometry(self) -> _Geometry:
        return _Geometry((self.A, self.B), self.order)

    @property
    def crossings(self) -> list[Crossing]:
        return self.geometry.crossings

    @property
    def n_crossings(self) -> int:
        return len(self.geometry.crossings)

    def matrix(self) -> tuple[tuple[int, ...], ...]:
        m = [[0] * 3 for _ in range(3)]
        for x in self.crossings:
            m[x.a_arc][x.b_arc] += 1
        return tuple(tuple(r) for r in m)

    @cached_property
    def _map(self):
        return _build_map(self)

    # full map accessors
    @property
    def ab_darts(self) -> list[ABDart]:
        return self._map["ab_darts"]

    @property
    def faces(self) -> list[Face]:
        return self._map["faces"]

    @property
    def dart_face(self) -> list[int]:
        """Index into :attr:`faces` of the face to the right of each AB dart."""
        return self._map["dart_face"]

    @property
    def ab_rotation(self) -> dict[tuple, list[int]]:
        return self._map["ab_rot"]

    @property
    def full_map(self) -> dict:
        """Raw permutation data of the map including the equator."""
        return self._map

    def ab_alpha(self, d: int) -> int:
        return self._map["ab_alpha"][d]

    @property
    def components(self) -> int:
        return self._map["components"]

    def euler(self) -> tuple[int, int, int, int]:
        V = len(PUNCTURES) + self.n_crossings
        E = len(self.ab_darts) // 2
        return V, E, len(self.faces), self.components

    def euler_holds(self) -> bool:
        V, E, F, C = self.euler()
        return V - E + F == 1 + C

    # ---------------------------------------------------------- arc walks
    @cached_property
    def sequences(self) -> dict[tuple[int, int], list[int]]:
        """Crossing ids met along each arc ``(owner, arc)`` from its start."""
        g = self.geometry
        by_chord: dict[tuple[int, int, int], list[int]] = {}
        for cid, x in enumerate(g.crossings):
            by_chord.setdefault((A_SIDE, x.a_arc, x.a_chord), []).append(cid)
            by_chord.setdefault((B_SIDE, x.b_arc, x.b_chord), []).append(cid)
        seqs = {}
        for (owner, i), clist in g.chords.items():
            seq: list[int] = []
            for t, (h, u, v) in enumerate(clist):
                cids = by_chord.get((owner, i, t), [])
                seq.extend(sorted(cids, key=lambda c: _along_key(g, owner, c, u, v)))
            seqs[(owner, i)] = seq
        return seqs

    def other_arcs(self, owner: int, arc: int) -> list[int]:
        """Indices of the other system's arcs met along an arc, in order."""
        xs = self.crossings
        if owner == A_SIDE:
            return [xs[c].b_arc for c in self.sequences[(owner, arc)]]
        return [xs[c].a_arc for c in self.sequences[(owner, arc)]]

    def stations(self, owner: int, arc: int) -> list[tuple[tuple, int]]:
        """Points of an arc lying on the other system, endpoints included.

        Each entry is ``(vertex, other_arc)``; the endpoints are punctures and
        lie on the other system's arc through that puncture.
        """
        S = self.A if owner == A_SIDE else self.B
        T = self.B if owner == A_SIDE else self.A
        a = S.arcs[arc]
        at = {p: j for j, b in enumerate(T.arcs) for p in (b.start, b.end)}
        inner = [(("x", c), o) for c, o in zip(self.sequences[(owner, arc)], self.other_arcs(owner, arc))]
        return [(("p", a.start), at[a.start])] + inner + [(("p", a.end), at[a.end])]

    def station_of(self, owner: int, arc: int, vertex: tuple) -> int:
        """Index of a vertex among the stations of an arc."""
        if vertex[0] == "x":
            return self.positions[(owner, vertex[1])] + 1
        S = self.A if owner == A_SIDE else self.B
        if S.arcs[arc].start == vertex[1]:
            return 0
        return len(self.sequences[(owner, arc)]) + 1

    def parallel_partner(self, owner: int, arc: int) -> int | None:
        """Other-system arc bounding a puncture-cornered bigon with this arc, if any."""
        darts = self.ab_darts
        for face in self.faces:
            if face.is_disc and len(face.cycles[0]) == 2:
                sides = [(darts[d].owner, darts[d].arc) for d in face.cycles[0]]
                if (owner, arc) in sides and face.crossing_corners() == 0:
                    other = [a for o, a in sides if o != owner]
                    if other:
                        return other[0]
        return None

    @cached_property
    def positions(self) -> dict[tuple[int, int], int]:
        """(owner, crossing id) -> index of the crossing along its arc of that owner."""
        out = {}
        for (owner, _), seq in self.sequences.items():
            for k, c in enumerate(seq):
                out[(owner, c)] = k
        return out

    def crossing_sign(self, cid: int, ref: int = A_SIDE, flip_convention: bool = False) -> int:
        """+1 when the other arc's forward dart follows the reference forward dart counterclockwise."""
        rot = self.ab_rotation[("x", cid)]
        darts = self.ab_darts
        ref_fwd = next(d for d in rot if darts[d].owner == ref and darts[d].forward)
        k = rot.index(ref_fwd)
        nxt = darts[rot[(k + 1) % 4]]
        s = 1 if nxt.forward else -1
        return -s if flip_convention else s

    def dart_of_piece(self, owner: int, arc: int, piece: int, forward: bool = True) -> int:
        return self._map["piece_dart"][(owner, arc, piece, forward)]


def _along_key(g: _Geometry, owner: int, cid: int, u: int, v: int) -> int:
    x = g.crossings[cid]
    if owner == A_SIDE:
        h, c, d = g.chords[(B_SIDE, x.b_arc)][x.b_chord]
    else:
        h, c, d = g.chords[(A_SIDE, x.a_arc)][x.a_chord]
    n = g.nb
    span = (v - u) % n
    inside = c if 0 < (c - u) % n < span else d
    return (inside - u) % n


def _build_map(arr: Arrangement) -> dict:
    g = arr.geometry
    nb = g.nb
    seqs = arr.sequences
    ncross = len(g.crossings)
    # vertices: boundary points 0..nb-1, crossings nb..nb+ncross-1
    origin: list[int] = []
    info: list[tuple] = []  # per dart: (kind, owner, arc, piece, forward)

    def add_edge(u, w, data_fwd, data_bwd):
        origin.append(u)
        info.append(data_fwd)
        origin.append(w)
        info.append(data_bwd)
        return len(origin) - 2

    # equator
    for b in range(nb):
        add_edge(b, (b + 1) % nb, ("E",), ("E",))
    # chord pieces; remember darts at chord ends and at crossings
    chord_start_dart: dict[tuple[int, int, int], int] = {}
    chord_end_dart: dict[tuple[int, int, int], int] = {}
    at_cross: dict[int, dict[str, int]] = {c: {} for c in range(ncross)}
    for (owner, i), clist in g.chords.items():
        seq = seqs[(owner, i)]
        k = 0
        piece = 0
        for t, (h, u, v) in enumerate(clist):
            verts = [u]
            while k < len(seq) and _chord_of(g, owner, seq[k]) == t:
                verts.append(nb + seq[k])
                k += 1
            verts.append(v)
            for j in range(len(verts) - 1):
                e = add_edge(verts[j], verts[j + 1], ("C", owner, i, piece, True),
                             ("C", owner, i, piece, False))
                if j == 0:
                    chord_start_dart[(owner, i, t)] = e
                if j == len(verts) - 2:
                    chord_end_dart[(owner, i, t)] = e + 1
                if verts[j] >= nb:
                    at_cross[verts[j] - nb][f"{owner}f"] = e
                if verts[j + 1] >= nb:
                    at_cross[verts[j + 1] - nb][f"{owner}b"] = e + 1
                if verts[j + 1] >= nb:
                    piece += 1
    nd = len(origin)
    rot: dict[int, list[int]] = {}
    # crossings
    for cid, x in enumerate(g.crossings):
        h, u, v = g.chords[(A_SIDE, x.a_arc)][x.a_chord]
        _, c, d = g.chords[(B_SIDE, x.b_arc)][x.b_chord]
        span = (v - u) % nb
        d_in_first = 0 < (d - u) % nb < span  # B's forward end lies in ccw interval (u, v)
        dd = at_cross[cid]
        to_in, to_out = (dd["1f"], dd["1b"]) if d_in_first else (dd["1b"], dd["1f"])
        if h == UPPER:
            rot[nb + cid] = [dd["0b"], to_in, dd["0f"], to_out]
        else:
            rot[nb + cid] = [dd["0b"], to_out, dd["0f"], to_in]
    # boundary points
    for b, tok in enumerate(g.bp):
        eq_next = 2 * b
        eq_prev = 2 * ((b - 1) % nb) + 1
        if tok[0] == "p":
            k = tok[1]
            ends = []  # (hemisphere, far, owner, dart)
            for (owner, i), clist in g.chords.items():
                arc = (g.systems[owner]).arcs[i]
                if arc.start == k:
                    h, u, v = clist[0]
                    ends.append((h, v, owner, chord_start_dart[(owner, i, 0)]))
                if arc.end == k:
                    h, u, v = clist[-1]
                    ends.append((h, u, owner, chord_end_dart[(owner, i, len(clist) - 1)]))

            def sweep_key(e, b=b, k=k):
                h, far, owner, _ = e
                off = (far - b) % nb
                far_tok = g.bp[far]
                # identical chords: the end at the lower puncture lists A first
                tie = owner if (far_tok[0] == "p" and k < far_tok[1]) else -owner
                return off, tie

            up = sorted((e for e in ends if e[0] == UPPER), key=sweep_key)
            lo = sorted((e for e in ends if e[0] == LOWER), key=sweep_key)
            lo_sweep = sorted(lo, key=lambda e: (-sweep_key(e)[0], sweep_key(e)[1]))
            rot[b] = [eq_next] + [e[3] for e in up] + [eq_prev] + [e[3] for e in lo_sweep]
        else:
            owner, i, t = tok
            arc = g.systems[owner].arcs[i]
            before = chord_end_dart[(owner, i, t)]      # back along chord t
            after = chord_start_dart[(owner, i, t + 1)]  # along chord t+1
            if arc.side_of_chord(t) == UPPER:
                upper, lower = before, after
            else:
                upper, lower = after, before
            rot[b] = [lower, eq_next, upper, eq_prev]
    sigma = [0] * nd
    for v, lst in rot.items():
        for j, d in enumerate(lst):
            sigma[d] = lst[(j + 1) % len(lst)]
    # full faces (face to the right of each dart)
    face_of = [-1] * nd
    nf = 0
    for d0 in range(nd):
        if face_of[d0] >= 0:
            continue
        d = d0
        while face_of[d] < 0:
            face_of[d] = nf
            d = sigma[d ^ 1]
        nf += 1
    uf = _UF(nf)
    for b in range(nb):
        uf.union(face_of[2 * b], face_of[2 * b + 1])

    # AB darts: chains through equator points
    def vkey(vid):
        if vid >= nb:
            return ("x", vid - nb)
        tok = g.bp[vid]
        return ("p", tok[1]) if tok[0] == "p" else None

    ab_darts: list[ABDart] = []
    ab_first: list[int] = []
    ab_chain: list[list[int]] = []
    start_of: dict[int, int] = {}
    for d in range(nd):
        if info[d][0] != "C" or vkey(origin[d]) is None:
            continue
        chain = [d]
        cur = d
        while vkey(origin[cur ^ 1]) is None:
            cur = sigma[sigma[cur ^ 1]]
            chain.append(cur)
        _, owner, i, piece, fwd = info[d]
        start_of[d] = len(ab_darts)
        ab_darts.append(ABDart(owner, i, piece, fwd, vkey(origin[d]), vkey(origin[chain[-1] ^ 1])))
        ab_first.append(d)
        ab_chain.append(chain)
    ab_alpha = [start_of[ab_chain[k][-1] ^ 1] for k in range(len(ab_darts))]
    ab_rot: dict[tuple, list[int]] = {}
    for vid, lst in rot.items():
        key = vkey(vid)
        if key is None:
            continue
        ab_rot[key] = [start_of[d] for d in lst if d in start_of]
    ab_sigma = [0] * len(ab_darts)
    for lst in ab_rot.values():
        for j, d in enumerate(lst):
            ab_sigma[d] = lst[(j + 1) % len(lst)]
    seen = [False] * len(ab_darts)
    cycles_by_class: dict[int, list[tuple[int, ...]]] = {}
    for d0 in range(len(ab_darts)):
        if seen[d0]:
            continue
        cyc = []
        d = d0
        while not seen[d]:
            seen[d] = True
            cyc.append(d)
            d = ab_sigma[ab_alpha[d]]
        cls = uf.find(face_of[ab_first[cyc[0]]])
        cycles_by_class.setdefault(cls, []).append(tuple(cyc))
    faces = []
    dart_face = [-1] * len(ab_darts)
    for cls in sorted(cycles_by_class):
        cycs = tuple(sorted(cycles_by_class[cls], key=min))
        for cyc in cycs:
            for d in cyc:
                dart_face[d] = len(faces)
        faces.append(Face(cycs, ab_darts))
    vuf_index = {("p", k): k - 1 for k in PUNCTURES}
    for c in range(ncross):
        vuf_index[("x", c)] = 6 + c
    vuf = _UF(6 + ncross)
    for dt in ab_darts:
        vuf.union(vuf_index[dt.tail], vuf_index[dt.head])
    components = len({vuf.find(x) for x in range(6 + ncross)})
    piece_dart = {}
    for k, dt in enumerate(ab_darts):
        piece_dart[(dt.owner, dt.arc, dt.piece, dt.forward)] = k
    return {
        "ab_darts": ab_darts,
        "ab_alpha": ab_alpha,
        "ab_rot": ab_rot,
        "ab_chain": ab_chain,
        "faces": faces,
        "dart_face": dart_face,
        "components": components,
        "piece_dart": piece_dart,
        "origin": origin,
        "info": info,
        "sigma": sigma,
        "full_face_of": face_of,
        "full_faces": nf,
    }


def _chord_of(g: _Geometry, owner: int, cid: int) -> int:
    x = g.crossings[cid]
    return x.a_chord if owner == A_SIDE else x.b_chord


# ------------------------------------------------------------------ operations

def superpose(A: ArcSystem, B: ArcSystem) -> Arrangement:
    """Raw arrangement: on every segment all of A's points precede B's."""
    A = canonicalize_system(A)
    B = canonicalize_system(B)
    order: dict[int, list[tuple]] = {}
    for s in SEGMENTS:
        toks = []
        for owner, S in enumerate((A, B)):
            pts = [((owner, i, t), r) for i, arc in enumerate(S.arcs)
                   for t, (seg, r) in enumerate(arc.events) if seg == s]
            toks.extend(tok for tok, _ in sorted(pts, key=lambda z: z[1]))
        order[s] = toks
    return Arrangement(A, B, order)


def _reducible_faces(arr: Arrangement) -> list[int]:
    out = []
    darts = arr.ab_darts
    for f, face in enumerate(arr.faces):
        if not face.is_disc or len(face.cycles[0]) != 2:
            continue
        d1, d2 = face.cycles[0]
        if darts[d1].owner == darts[d2].owner:
            continue
        if face.crossing_corners() >= 1:
            out.append(f)
    return out


def _swap_plan(arr: Arrangement, f: int) -> list[tuple[int, int, int]]:
    """Equator swaps (segment, i, j) that cancel the bigon or half-bigon ``f``."""
    g = arr.geometry
    m = arr._map
    d1, d2 = arr.faces[f].cycles[0]
    chain = m["ab_chain"]
    origin = m["origin"]

    def inner(dart):
        # equator points strictly inside the chain, in travel order
        return [origin[fd ^ 1] for fd in chain[dart][:-1]]

    p1 = inner(d1)
    p2 = list(reversed(inner(d2)))
    if len(p1) != len(p2) or not p1:
        raise AssertionError("bigon sides cross the equator differently")
    plan = []
    for x, y in zip(p1, p2):
        tx, ty = g.bp[x], g.bp[y]
        sx = _segment_of_token(arr, tx)
        sy = _segment_of_token(arr, ty)
        if sx != sy:
            raise AssertionError("bigon sides cross different segments")
        lst = arr.order[sx]
        i, j = lst.index(tx), lst.index(ty)
        if abs(i - j) != 1:
            raise AssertionError("bigon equator points are not adjacent")
        plan.append((sx, min(i, j), max(i, j)))
    return plan


def _segment_of_token(arr: Arrangement, tok) -> int:
    owner, i, t = tok
    S = arr.A if owner == A_SIDE else arr.B
    return S.arcs[i].events[t][0]


def reduce_step(arr: Arrangement, rng: random.Random | None = None) -> Arrangement | None:
    faces = _reducible_faces(arr)
    if not faces:
        return None
    f = rng.choice(faces) if rng is not None else faces[0]
    order = {s: list(v) for s, v in arr.order.items()}
    for s, i, j in _swap_plan(arr, f):
        order[s][i], order[s][j] = order[s][j], order[s][i]
    return Arrangement(arr.A, arr.B, order)


def reduce_to_minimal(arr: Arrangement, rng: random.Random | None = None) -> Arrangement:
    """Remove bigons and half-bigons until none remain (crossings strictly decrease)."""
    if arr.minimal:
        return arr
    cur = arr
    while True:
        nxt = reduce_step(cur, rng)
        if nxt is None:
            break
        if nxt.n_crossings >= cur.n_crossings:
            raise AssertionError("reduction move did not lower the crossing count")
        cur = nxt
    return Arrangement(cur.A, cur.B, cur.order, minimal=True)


def minimal_arrangement(A: ArcSystem, B: ArcSystem) -> Arrangement:
    return reduce_to_minimal(superpose(A, B))


def intersection_matrix(A: ArcSystem, B: ArcSystem) -> tuple[tuple[int, ...], ...]:
    return minimal_arrangement(A, B).matrix()


def face_census(arr: Arrangement) -> list[Face]:
    if not arr.minimal:
        raise NotMinimal("face census needs a reduced arrangement")
    faces = arr.faces
    total = sum(f.corner_count for f in faces)
    expected = 4 * arr.n_crossings + 2 * len(PUNCTURES)
    if total != expected:
        raise AssertionError(f"corner bookkeeping {total} != {expected}")
    return faces


def isotopic_by_arrangement(A: ArcSystem, B: ArcSystem) -> bool:
    if A.pairing() != B.pairing():
        return False
    arr = minimal_arrangement(A, B)
    if arr.n_crossings:
        return False
    darts = arr.ab_darts
    for i, a in enumerate(arr.A.arcs):
        j = next(j for j, b in enumerate(arr.B.arcs) if {b.start, b.end} == {a.start, a.end})
        ok = False
        for face in arr.faces:
            if face.is_disc and len(face.cycles[0]) == 2:
                owners = {(darts[d].owner, darts[d].arc) for d in face.cycles[0]}
                if owners == {(A_SIDE, i), (B_SIDE, j)}:
                    ok = True
                    break
        if not ok:
            return False
    return True
