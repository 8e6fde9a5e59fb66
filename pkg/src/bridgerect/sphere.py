"""The six-punctured bridge sphere and arc systems in equatorial coordinates.

Punctures ``p1..p6`` sit in cyclic order on an equator circle; segment ``s_k``
runs from ``p_k`` to ``p_{k+1}`` (``s6`` closes the circle back to ``p1``).
An arc is recorded by the hemisphere it leaves its start puncture into and the
ordered list of equator crossings ``(segment, rank)``; ranks order the crossing
points along a segment from ``p_k`` towards ``p_{k+1}``.  Between crossings an
arc is a chord of the current hemisphere, so two chords of one hemisphere meet
exactly when their endpoints interleave on the equator.

Internally an arc is also handled as a *path*: ``(start, side, word, end)``
where ``word`` is the bare sequence of crossed segments.  Reduced words are a
complete isotopy invariant of a single arc, and the ranks of a disjoint
system are recovered from its words by :func:`rank_paths`.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cmp_to_key
from typing import Iterable, Iterator, NamedTuple, Sequence

N_PUNCTURES = 6
PUNCTURES = tuple(range(1, N_PUNCTURES + 1))
SEGMENTS = PUNCTURES
UPPER = "U"
LOWER = "L"


def flip(side: str) -> str:
    return LOWER if side == UPPER else UPPER


def seg_next(k: int) -> int:
    return k % N_PUNCTURES + 1


def seg_prev(k: int) -> int:
    return (k - 2) % N_PUNCTURES + 1


def segments_at(p: int) -> tuple[int, int]:
    """The two segments incident to puncture ``p``: ``s_{p-1}`` and ``s_p``."""
    return seg_prev(p), p


def punctures_adjacent(p: int, q: int) -> bool:
    return (p - q) % N_PUNCTURES in (1, N_PUNCTURES - 1)


# cyclic positions on the equator in half steps: p_k -> 2k-2, s_k -> 2k-1
def puncture_pos(p: int) -> int:
    return 2 * (p - 1)


def segment_pos(s: int) -> int:
    return 2 * (s - 1) + 1


class Path(NamedTuple):
    start: int
    side: str
    word: tuple[int, ...]
    end: int

    def side_of_chord(self, t: int) -> str:
        return self.side if t % 2 == 0 else flip(self.side)

    def end_side(self) -> str:
        return self.side_of_chord(len(self.word))

    def reversed(self) -> "Path":
        return Path(self.end, self.end_side(), tuple(reversed(self.word)), self.start)


def reduce_path(path: Path) -> Path:
    """Free reduction plus endpoint rotation, oriented from the lower puncture.

    Crossing ``s_{p-1}`` or ``s_p`` straight out of ``p`` can always be undone
    by swinging the arc end around ``p``.  An event-free chord between
    adjacent punctures is isotopic in either hemisphere; Upper is chosen.
    """
    start, side, word, end = path
    stack: list[int] = []
    for s in word:
        if stack and stack[-1] == s:
            stack.pop()
        else:
            stack.append(s)
    word_l = stack
    lo = 0
    hi = len(word_l)
    changed = True
    while changed:
        changed = False
        if lo < hi and word_l[lo] in segments_at(start):
            lo += 1
            side = flip(side)
            changed = True
        if lo < hi and word_l[hi - 1] in segments_at(end):
            hi -= 1
            changed = True
    red = tuple(word_l[lo:hi])
    if not red and punctures_adjacent(start, end):
        side = UPPER
    out = Path(start, side, red, end)
    if out.start > out.end:
        out = out.reversed()
    return out


@dataclass(frozen=True)
class ArcCoord:
    start: int
    side: str
    events: tuple[tuple[int, int], ...]
    end: int

    @property
    def word(self) -> tuple[int, ...]:
        return tuple(s for s, _ in self.events)

    @property
    def path(self) -> Path:
        return Path(self.start, self.side, self.word, self.end)

    def side_of_chord(self, t: int) -> str:
        return self.side if t % 2 == 0 else flip(self.side)

    def points(self) -> list[tuple[int, int, int]]:
        """Equator keys of the chord endpoints, from start to end."""
        pts = [(self.start, 0, 0)]
        pts.extend((s, 1, r) for s, r in self.events)
        pts.append((self.end, 0, 0))
        return pts

    def chords(self) -> Iterator[tuple[str, tuple, tuple]]:
        pts = self.points()
        for t in range(len(pts) - 1):
            yield self.side_of_chord(t), pts[t], pts[t + 1]


@dataclass(frozen=True)
class ArcSystem:
    arcs: tuple[ArcCoord, ArcCoord, ArcCoord]
    name: str = ""

    def __iter__(self):
        return iter(self.arcs)

    def __getitem__(self, i: int) -> ArcCoord:
        return self.arcs[i]

    def __len__(self) -> int:
        return len(self.arcs)

    @property
    def paths(self) -> tuple[Path, ...]:
        return tuple(a.path for a in self.arcs)

    def equator_crossings(self) -> int:
        return sum(len(a.events) for a in self.arcs)

    def pairing(self) -> frozenset:
        return frozenset(frozenset((a.start, a.end)) for a in self.arcs)

    def key(self) -> tuple:
        """Hashable coordinate record (arc order matters)."""
        return tuple((a.start, a.side, a.events, a.end) for a in self.arcs)

    def renamed(self, name: str) -> "ArcSystem":
        return ArcSystem(self.arcs, name)

    def permuted(self, order: Sequence[int], name: str | None = None) -> "ArcSystem":
        """Reindex arcs; ``order[i]`` is the old index of new arc ``i``."""
        return ArcSystem(tuple(self.arcs[i] for i in order),
                         self.name if name is None else name)


# ---------------------------------------------------------------- validation

class Violation(NamedTuple):
    kind: str
    message: str
    location: str = ""


class InvalidSystem(ValueError):
    def __init__(self, violations: list[Violation]):
        self.violations = violations
        super().__init__("; ".join(f"{v.kind}: {v.message}" for v in violations))

    @property
    def kinds(self) -> set[str]:
        return {v.kind for v in self.violations}


def _interleave(a, b, c, d) -> bool:
    """Strict interleaving of chords ab and cd on a circle (keys distinct)."""
    lo, hi = (a, b) if a < b else (b, a)
    return (lo < c < hi) != (lo < d < hi)


def _coerce_arc(raw) -> ArcCoord:
    if isinstance(raw, ArcCoord):
        return raw
    if isinstance(raw, dict):
        events = tuple((int(s), int(r)) for s, r in raw.get("events", ()))
        return ArcCoord(int(raw["start"]), str(raw["side"]), events, int(raw["end"]))
    start, side, events, end = raw
    return ArcCoord(int(start), str(side), tuple((int(s), int(r)) for s, r in events), int(end))


def system_violations(arcs: Sequence[ArcCoord]) -> list[Violation]:
    out: list[Violation] = []
    if len(arcs) != 3:
        out.append(Violation("NonPerfectMatching", f"expected 3 arcs, got {len(arcs)}"))
    for i, a in enumerate(arcs, 1):
        loc = f"arc {i}"
        if a.side not in (UPPER, LOWER):
            out.append(Violation("HemisphereMismatch", f"start side {a.side!r} is not U or L", loc))
        for p in (a.start, a.end):
            if p not in PUNCTURES:
                out.append(Violation("NonPerfectMatching", f"no puncture p{p}", loc))
        if a.start == a.end:
            out.append(Violation("NonPerfectMatching", f"arc starts and ends at p{a.start}", loc))
        for s, r in a.events:
            if s not in SEGMENTS or r < 1:
                out.append(Violation("RankGap", f"bad event {s}@{r}", loc))
    ends = sorted(p for a in arcs for p in (a.start, a.end))
    if ends != list(PUNCTURES):
        out.append(Violation("NonPerfectMatching", f"endpoints {ends} are not p1..p6 once each"))
    if out:
        return out
    for s in SEGMENTS:
        ranks = sorted(r for a in arcs for seg, r in a.events if seg == s)
        if len(set(ranks)) != len(ranks):
            out.append(Violation("RankClash", f"repeated rank on s{s}: {ranks}", f"s{s}"))
        elif ranks != list(range(1, len(ranks) + 1)):
            out.append(Violation("RankGap", f"ranks on s{s} are {ranks}, not 1..{len(ranks)}", f"s{s}"))
    if out:
        return out
    chords = [(h, u, v, i, t) for i, a in enumerate(arcs, 1) for t, (h, u, v) in enumerate(a.chords())]
    for x in range(len(chords)):
        h1, u1, v1, i1, t1 = chords[x]
        if u1 == v1:
            out.append(Violation("SelfCrossing", f"degenerate chord at {u1}", f"arc {i1} chord {t1}"))
        for y in range(x + 1, len(chords)):
            h2, u2, v2, i2, t2 = chords[y]
            if h1 != h2:
                continue
            if {u1, v1} & {u2, v2}:
                out.append(Violation("SelfCrossing", "chords share an endpoint in one hemisphere",
                                     f"arc {i1} chord {t1} / arc {i2} chord {t2}"))
            elif _interleave(u1, v1, u2, v2):
                out.append(Violation("SelfCrossing", f"chords cross in hemisphere {h1}",
                                     f"arc {i1} chord {t1} / arc {i2} chord {t2}"))
    return out


def validate_system(raw, name: str | None = None) -> ArcSystem:
    """Build an :class:`ArcSystem` from a raw description, or raise :class:`InvalidSystem`.

    ``raw`` is an ArcSystem, a dict with ``arcs`` (and optional ``name``), or
    a sequence of three arcs given as dicts / ``(start, side, events, end)``.
    """
    if isinstance(raw, ArcSystem):
        arcs, nm = list(raw.arcs), raw.name
    elif isinstance(raw, dict):
        arcs, nm = [_coerce_arc(a) for a in raw["arcs"]], raw.get("name", "")
    else:
        arcs, nm = [_coerce_arc(a) for a in raw], ""
    bad = system_violations(arcs)
    if bad:
        raise InvalidSystem(bad)
    return ArcSystem(tuple(arcs), name if name is not None else nm)


# ------------------------------------------------------------------ ranking

def _loc_pos(loc: tuple[str, int]) -> int:
    kind, k = loc
    return segment_pos(k) if kind == "s" else puncture_pos(k)


def _walk(path: Path, t: int, forward: bool) -> Iterator[tuple[str, int]]:
    if forward:
        for s in path.word[t + 1:]:
            yield ("s", s)
        yield ("p", path.end)
    else:
        for s in reversed(path.word[:t]):
            yield ("s", s)
        yield ("p", path.start)


def _compare_passes(paths: Sequence[Path], seg: int, P, Q) -> int:
    """-1 if pass P lies before pass Q along ``seg`` (towards p_{seg+1})."""
    (i, t), (j, u) = P, Q
    after_p = paths[i].side_of_chord(t + 1)
    fwd_q = paths[j].side_of_chord(u + 1) == after_p
    wp = _walk(paths[i], t, True)
    wq = _walk(paths[j], u, fwd_q)
    common = ("s", seg)
    flips = 0
    for lp, lq in zip(wp, wq):
        if lp == lq and lp[0] == "s":
            common = lp
            flips += 1
            continue
        if lp == lq:
            raise ValueError(f"passes {P} and {Q} cannot be separated")
        c = _loc_pos(common)
        before = (_loc_pos(lq) - c) % 12 < (_loc_pos(lp) - c) % 12
        if flips % 2:
            before = not before
        return -1 if before else 1
    raise ValueError(f"passes {P} and {Q} cannot be separated")


def rank_arcs(paths: Sequence[Path]) -> tuple[ArcCoord, ...]:
    """Assign ranks to the crossings of taut paths without validating."""
    passes: dict[int, list[tuple[int, int]]] = {s: [] for s in SEGMENTS}
    for i, p in enumerate(paths):
        for t, s in enumerate(p.word):
            passes[s].append((i, t))
    rank: dict[tuple[int, int], int] = {}
    for s, lst in passes.items():
        lst.sort(key=cmp_to_key(lambda P, Q, s=s: _compare_passes(paths, s, P, Q)))
        for r, pq in enumerate(lst, 1):
            rank[pq] = r
    arcs = tuple(
        ArcCoord(p.start, p.side, tuple((s, rank[(i, t)]) for t, s in enumerate(p.word)), p.end)
        for i, p in enumerate(paths))
    return arcs


def rank_paths(paths: Sequence[Path], name: str = "") -> ArcSystem:
    """Assign ranks to the crossings of disjoint taut paths and validate."""
    return validate_system(rank_arcs(paths), name)


def system_from_paths(paths: Iterable[Path], name: str = "") -> ArcSystem:
    return rank_paths([reduce_path(p) for p in paths], name)


def canonicalize_system(A: ArcSystem) -> ArcSystem:
    """Equator-taut representative with dense ranks, arcs oriented from their lower puncture."""
    return system_from_paths(A.paths, A.name)


def canonical_key(A: ArcSystem) -> tuple:
    """Isotopy invariant of a system as an unordered set of arcs."""
    return tuple(sorted(reduce_path(p) for p in A.paths))


def are_isotopic(A: ArcSystem, B: ArcSystem) -> bool:
    """Isotopy of arc systems decided through their minimal superposition."""
    from .arrangement import isotopic_by_arrangement

    return isotopic_by_arrangement(A, B)


def make_system(arcs: Iterable[tuple[int, str, Sequence[int], int]], name: str = "") -> ArcSystem:
    """Convenience constructor from ``(start, side, word, end)`` tuples."""
    return system_from_paths((Path(a, h, tuple(w), b) for a, h, w, b in arcs), name)


EPSILON = make_system([(1, UPPER, (), 2), (3, UPPER, (), 4), (5, UPPER, (), 6)], "epsilon")
