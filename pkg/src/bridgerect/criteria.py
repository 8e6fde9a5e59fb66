"""Decision procedures on a pair of arc systems.

All report objects label arcs 1, 2, 3 (so tuple ``((2, 3), (1, 3))`` reads
"A-arcs 2 and 3 against B-arcs 1 and 3").  Every procedure works on the
reduced arrangement, where crossing counts are minimal.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from itertools import combinations
from typing import Literal

from .arrangement import (
    A_SIDE,
    B_SIDE,
    Arrangement,
    SubarcRef,
    _UF,
    minimal_arrangement,
)
from .sphere import ArcSystem, are_isotopic

PAIRS = ((1, 2), (1, 3), (2, 3))
ALL_TUPLES = tuple((a, b) for a in PAIRS for b in PAIRS)


class IsotopicDegenerate(ValueError):
    pass


def _pair(i: int, j: int) -> tuple[int, int]:
    return (i, j) if i < j else (j, i)


# ------------------------------------------------------------------ rectangles

@dataclass
class RectangleReport:
    holds: bool
    realized: frozenset
    missing: frozenset
    witnesses: dict = field(default_factory=dict)
    diagnostic: str = ""

    def __post_init__(self):
        assert self.realized | self.missing == frozenset(ALL_TUPLES)
        assert not (self.realized & self.missing)
        assert self.holds == (not self.missing)


def _report(realized: dict, diagnostic: str = "") -> RectangleReport:
    got = frozenset(realized)
    return RectangleReport(
        holds=len(got) == 9 and not diagnostic,
        realized=got,
        missing=frozenset(ALL_TUPLES) - got,
        witnesses=dict(realized),
        diagnostic=diagnostic,
    )


def rectangle_faces(arr: Arrangement) -> dict:
    """Tuples realised by disc faces with four crossing corners."""
    darts = arr.ab_darts
    out: dict = {}
    for f, face in enumerate(arr.faces):
        if not face.is_disc or len(face.cycles[0]) != 4 or face.crossing_corners() != 4:
            continue
        cyc = face.cycles[0]
        sides = [(darts[d].owner, darts[d].arc + 1) for d in cyc]
        a = [arc for o, arc in sides if o == A_SIDE]
        b = [arc for o, arc in sides if o == B_SIDE]
        if len(a) != 2 or a[0] == a[1] or b[0] == b[1]:
            continue
        out.setdefault((_pair(*a), _pair(*b)), f)
    return out


def rectangle_report(A: ArcSystem, B: ArcSystem, arr: Arrangement | None = None) -> RectangleReport:
    if are_isotopic(A, B):
        return _report({}, "isotopic input: the rectangle condition is undefined")
    arr = arr or minimal_arrangement(A, B)
    return _report(rectangle_faces(arr))


def rectangle_tuples_by_scan(A: ArcSystem, B: ArcSystem, arr: Arrangement | None = None) -> frozenset:
    """Independent check walking adjacent crossings along A and following B outwards.

    Uses only the rotation system and the full map (with the equator); no
    face list of ``A ∪ B`` is consulted.
    """
    if are_isotopic(A, B):
        return frozenset()
    arr = arr or minimal_arrangement(A, B)
    m = arr.full_map
    xs = arr.crossings
    pos = arr.positions
    darts = arr.ab_darts
    rot = arr.ab_rotation
    found = set()
    for i in range(3):
        seq = arr.sequences[(A_SIDE, i)]
        for t in range(len(seq) - 1):
            x, y = seq[t], seq[t + 1]
            k, l = xs[x].b_arc, xs[y].b_arc
            if k == l:
                continue
            D = arr.dart_of_piece(A_SIDE, i, t + 1, True)
            for left in (True, False):
                quad = _quad(arr, D, left)
                if quad is None:
                    continue
                _, by, Aj, bx = quad
                j = darts[Aj].arc
                if j == i:
                    continue
                if _encloses_puncture(arr, quad, left):
                    continue
                found.add((_pair(i + 1, j + 1), _pair(k + 1, l + 1)))
    return frozenset(found)


def _turn(arr: Arrangement, incoming: int, left: bool) -> int:
    """Next dart of the boundary walk keeping the region on the given side."""
    back = arr.ab_alpha(incoming)
    v = arr.ab_darts[back].tail
    lst = arr.ab_rotation[v]
    k = lst.index(back)
    return lst[(k - 1) % len(lst)] if left else lst[(k + 1) % len(lst)]


def _quad(arr: Arrangement, D: int, left: bool):
    darts = arr.ab_darts
    walk = [D]
    d = D
    for _ in range(3):
        d = _turn(arr, d, left)
        if darts[d].tail[0] != "x" or darts[d].head[0] != "x":
            return None
        walk.append(d)
    if _turn(arr, d, left) != D:
        return None
    owners = [darts[w].owner for w in walk]
    if owners != [A_SIDE, B_SIDE, A_SIDE, B_SIDE]:
        return None
    return tuple(walk)


def _encloses_puncture(arr: Arrangement, quad, left: bool) -> bool:
    m = arr.full_map
    chain = m["ab_chain"]
    origin = m["origin"]
    sigma = m["sigma"]
    face_of = m["full_face_of"]
    wall = set()
    for d in quad:
        for fd in chain[d]:
            wall.add(fd)
            wall.add(fd ^ 1)
    first = chain[quad[0]][0]
    start = face_of[first ^ 1] if left else face_of[first]
    by_face: dict[int, list[int]] = {}
    for d, f in enumerate(face_of):
        by_face.setdefault(f, []).append(d)
    nb = arr.geometry.nb
    bp = arr.geometry.bp
    seen = {start}
    todo = deque([start])
    while todo:
        f = todo.popleft()
        for d in by_face[f]:
            o = origin[d]
            if o < nb and bp[o][0] == "p":
                return True
            if d in wall:
                continue
            g = face_of[d ^ 1]
            if g not in seen:
                seen.add(g)
                todo.append(g)
    return False


# ------------------------------------------------------------------ waves

@dataclass(frozen=True)
class Wave:
    """Subarc of a target arc between consecutive stations on one base arc.

    ``subarc`` holds station indices along the host arc (0 is its start
    puncture).  A sign is 0 at a puncture, where no orientation frame exists.
    """

    host_arc: int
    base_arc: int
    subarc: SubarcRef
    signs: tuple[int, int]
    dart: int = field(compare=False, repr=False)
    base_stations: tuple[int, int] = field(compare=False, repr=False, default=(0, 0))


def separates(arr: Arrangement, target_dart: int, ref_arc: int, lo: int, hi: int,
              ref: int = A_SIDE) -> bool:
    """Does the closed curve (target dart + ref arc between stations lo, hi) split the other ref arcs?"""
    darts = arr.ab_darts
    lo, hi = min(lo, hi), max(lo, hi)
    cut = {target_dart, arr.ab_alpha(target_dart)}
    for piece in range(lo, hi):
        e = arr.dart_of_piece(ref, ref_arc, piece, True)
        cut.add(e)
        cut.add(arr.ab_alpha(e))
    uf = _UF(len(arr.faces))
    for e in range(len(darts)):
        if e not in cut:
            uf.union(arr.dart_face[e], arr.dart_face[arr.ab_alpha(e)])
    others = [j for j in range(3) if j != ref_arc]
    reps = [uf.find(arr.dart_face[arr.dart_of_piece(ref, j, 0, True)]) for j in others]
    return reps[0] != reps[1]


def is_essential(arr: Arrangement, wave: Wave) -> bool:
    lo, hi = wave.base_stations
    return separates(arr, wave.dart, wave.base_arc - 1, lo, hi)


def find_waves(ref: ArcSystem, target: ArcSystem, arr: Arrangement | None = None,
               flip_convention: bool = False) -> list[Wave]:
    arr = arr or minimal_arrangement(ref, target)
    out = []
    for j in range(3):
        st = arr.stations(B_SIDE, j)
        for t in range(len(st) - 1):
            (u, i), (v, i2) = st[t], st[t + 1]
            if i != i2:
                continue
            signs = tuple(arr.crossing_sign(w[1], A_SIDE, flip_convention) if w[0] == "x" else 0
                          for w in (u, v))
            if signs[0] and signs[0] == signs[1]:
                continue
            d = arr.dart_of_piece(B_SIDE, j, t, True)
            w = Wave(j + 1, i + 1, SubarcRef(B_SIDE, j + 1, t, t + 1), signs, d,
                     (arr.station_of(A_SIDE, i, u), arr.station_of(A_SIDE, i, v)))
            if is_essential(arr, w):
                out.append(w)
    return out


# ------------------------------------------------------------------ normal form

@dataclass
class NormalFormReport:
    holds: bool
    violations: list  # (system, arc, station, other_arc)


def normal_form_report(A: ArcSystem, B: ArcSystem, arr: Arrangement | None = None) -> NormalFormReport:
    """Adjacent stations along any arc on the same arc of the other system.

    Shared endpoints count as stations, except for an arc parallel to an arc
    of the other system, which contributes nothing.
    """
    arr = arr or minimal_arrangement(A, B)
    bad = []
    for owner in (A_SIDE, B_SIDE):
        for i in range(3):
            st = arr.stations(owner, i)
            if len(st) == 2 and arr.parallel_partner(owner, i) is not None:
                continue
            for t in range(len(st) - 1):
                if st[t][1] == st[t + 1][1]:
                    bad.append(("AB"[owner], i + 1, t, st[t][1] + 1))
    return NormalFormReport(not bad, bad)


# ------------------------------------------------------------------ adjacent pairs

Kind = Literal["ParallelConnect", "WavePair", "Mixed", "Unclassified"]


@dataclass(frozen=True)
class PairClass:
    ref_arc: int
    target_arc: int
    positions: tuple[int, int]
    kind: Kind
    other_ref: int | None = None


def _side_dart(arr: Arrangement, cid: int, left: bool) -> int:
    """Target dart leaving crossing ``cid`` on the given side of the oriented ref arc."""
    darts = arr.ab_darts
    lst = arr.ab_rotation[("x", cid)]
    k = next(n for n, d in enumerate(lst) if darts[d].owner == A_SIDE and darts[d].forward)
    return lst[(k + 1) % 4] if left else lst[(k - 1) % 4]


def classify_adjacent_pairs(ref: ArcSystem, target: ArcSystem,
                            arr: Arrangement | None = None) -> list[PairClass]:
    """Sort each adjacent same-arc crossing pair along the ref arcs into the three cases.

    For each pair ``p, q`` the target subarcs ``c_p, c_q`` leaving on one side
    of the ref arc are inspected; the case order is wave pair, parallel
    connection, mixed.  Pairs fitting none are kept as ``Unclassified``.
    """
    arr = arr or minimal_arrangement(ref, target)
    xs = arr.crossings
    darts = arr.ab_darts
    ref_at = {p: i for i, a in enumerate(arr.A.arcs) for p in (a.start, a.end)}
    waves = {w.dart for w in find_waves(ref, target, arr)}
    waves |= {arr.ab_alpha(d) for d in waves}

    def lands(d):
        h = darts[d].head
        return xs[h[1]].a_arc if h[0] == "x" else ref_at[h[1]]

    out = []
    for i in range(3):
        seq = arr.sequences[(A_SIDE, i)]
        for t in range(len(seq) - 1):
            p, q = seq[t], seq[t + 1]
            j0 = xs[p].b_arc
            if xs[q].b_arc != j0:
                continue
            D = arr.dart_of_piece(A_SIDE, i, t + 1, True)
            sides = [(left, _side_dart(arr, p, left), _side_dart(arr, q, left)) for left in (True, False)]
            kind, other = "Unclassified", None
            if any(cp in waves and darts[cp].head == ("x", q) for _, cp, _ in sides):
                kind = "WavePair"
            if kind == "Unclassified":
                for left, cp, cq in sides:
                    face = arr.faces[arr.dart_face[arr.ab_alpha(D) if left else D]]
                    if not face.is_disc or len(face.cycles[0]) != 4:
                        continue
                    pattern = face.sides()
                    k = pattern.index((A_SIDE, i))
                    pattern = pattern[k:] + pattern[:k]
                    if pattern[1] == pattern[3] == (B_SIDE, j0) and pattern[2][0] == A_SIDE:
                        kind, other = "ParallelConnect", pattern[2][1] + 1
                        break
            if kind == "Unclassified":
                for left, cp, cq in sides:
                    for a, b in ((cp, cq), (cq, cp)):
                        if a in waves and lands(b) != i:
                            kind, other = "Mixed", lands(b) + 1
                            break
                    if kind != "Unclassified":
                        break
            out.append(PairClass(i + 1, j0 + 1, (t, t + 1), kind, other))
    return out


# ------------------------------------------------------------------ connecting subarcs

def connecting_pairs(G: ArcSystem, k: int, B: ArcSystem, arr: Arrangement | None = None) -> frozenset:
    """Pairs ``{i, j}`` of B-arcs joined by a subarc of ``G``'s arc ``k`` (1-based) with interior off B."""
    arr = arr or minimal_arrangement(G, B)
    others = arr.other_arcs(A_SIDE, k - 1)
    return frozenset(_pair(a + 1, b + 1) for a, b in zip(others, others[1:]) if a != b)


@dataclass(frozen=True)
class NoPartnerCertificate:
    witness_arc: int
    missing_pair: tuple[int, int]


def certify_no_rc_partner(G: ArcSystem, B: ArcSystem,
                          arr: Arrangement | None = None) -> NoPartnerCertificate | None:
    """Find an arc of ``G`` missing some connecting pair against ``B``.

    Such an arc rules out every system of ``G``'s tangle as a rectangle
    partner of ``B``.
    """
    arr = arr or minimal_arrangement(G, B)
    for k in range(1, 4):
        if not arr.sequences[(A_SIDE, k - 1)] and _arc_isotopic_to_other(arr, k - 1):
            raise IsotopicDegenerate(f"arc {k} is isotopic to an arc of the candidate system")
    for k in range(1, 4):
        got = connecting_pairs(G, k, B, arr)
        for pr in PAIRS:
            if pr not in got:
                return NoPartnerCertificate(k, pr)
    return None


def _arc_isotopic_to_other(arr: Arrangement, i: int) -> bool:
    darts = arr.ab_darts
    for face in arr.faces:
        if face.is_disc and len(face.cycles[0]) == 2:
            sides = {(darts[d].owner, darts[d].arc) for d in face.cycles[0]}
            if (A_SIDE, i) in sides and any(o == B_SIDE for o, _ in sides):
                return True
    return False


def tuple_swap(tuples) -> frozenset:
    return frozenset((b, a) for a, b in tuples)


__all__ = [
    "ALL_TUPLES", "PAIRS", "IsotopicDegenerate", "RectangleReport", "rectangle_report",
    "rectangle_tuples_by_scan", "Wave", "find_waves", "is_essential", "separates", "NormalFormReport",
    "normal_form_report", "PairClass", "classify_adjacent_pairs", "connecting_pairs",
    "NoPartnerCertificate", "certify_no_rc_partner", "tuple_swap",
]
