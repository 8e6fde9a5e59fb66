"""Sphere homeomorphisms (catalog half twists) and bridge-arc rewiring.

Twists act on reduced crossing words: a half twist about the disc around
segment ``s_k`` swaps ``p_k`` and ``p_{k+1}``, rewrites each crossing of
``s_k`` as a three-letter detour and prefixes arcs leaving the swapped
punctures.  Ranks are recomputed afterwards, so every result is canonical.

Rewiring replaces one arc of a system by another embedded arc with the same
endpoints avoiding the two kept arcs.  With two strands' discs fixed, any
such arc bounds a disc with the third strand, so the tangle is unchanged.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .sphere import (
    LOWER,
    SEGMENTS,
    UPPER,
    ArcCoord,
    ArcSystem,
    InvalidSystem,
    Path,
    canonical_key,
    flip,
    puncture_pos,
    punctures_adjacent,
    rank_arcs,
    rank_paths,
    reduce_path,
    seg_next,
    seg_prev,
    segment_pos,
    segments_at,
    system_from_paths,
)

log = logging.getLogger(__name__)


class BudgetExceeded(RuntimeError):
    pass


# ------------------------------------------------------------------ twists

PAIR_CIRCLES = tuple(f"pair{k}" for k in SEGMENTS)
EPSILON_CIRCLES = ("eps1", "eps2", "eps3")
CATALOG = EPSILON_CIRCLES + PAIR_CIRCLES


@dataclass(frozen=True)
class TwistSpec:
    circle: str
    half_turns: int = 1

    def __post_init__(self):
        if self.circle not in CATALOG:
            raise ValueError(f"unknown twist circle {self.circle!r}; choose from {CATALOG}")

    @property
    def segment(self) -> int:
        """The equator segment enclosed by the twist disc."""
        if self.circle.startswith("eps"):
            return 2 * int(self.circle[3:]) - 1
        return int(self.circle[4:])

    def inverse(self) -> "TwistSpec":
        return TwistSpec(self.circle, -self.half_turns)


def _start_image(k: int, positive: bool, p: int, side: str) -> tuple[int, str, list[int]]:
    a, b = k, seg_next(k)
    if p not in (a, b):
        return p, side, []
    other = b if p == a else a
    # leaving into the hemisphere the disc rotates away from picks up a detour
    near = seg_prev(k) if (side == UPPER) == positive else seg_next(k)
    return other, flip(side), [near]


def _half_twist_path(k: int, positive: bool, path: Path) -> Path:
    start, side, prefix = _start_image(k, positive, path.start, path.side)
    word = list(prefix)
    for t, s in enumerate(path.word):
        if s != k:
            word.append(s)
            continue
        down = path.side_of_chord(t) == UPPER
        if down == positive:
            word.extend((seg_prev(k), k, seg_next(k)))
        else:
            word.extend((seg_next(k), k, seg_prev(k)))
    end, _, suffix = _start_image(k, positive, path.end, path.end_side())
    word.extend(reversed(suffix))
    return reduce_path(Path(start, side, tuple(word), end))


def twist_paths(t: TwistSpec, paths: Iterable[Path]) -> list[Path]:
    paths = list(paths)
    k = t.segment
    for _ in range(abs(t.half_turns)):
        paths = [_half_twist_path(k, t.half_turns > 0, p) for p in paths]
    return paths


def apply_twist(t: TwistSpec, A: ArcSystem) -> ArcSystem:
    """Image of ``A`` under the catalog twist ``t``; arc indices are preserved."""
    return rank_paths(twist_paths(t, A.paths), A.name)


def apply_twists(word: Sequence[TwistSpec], A: ArcSystem) -> ArcSystem:
    """Apply twists left to right (the first entry acts first)."""
    paths = list(A.paths)
    for t in word:
        paths = twist_paths(t, paths)
    return rank_paths(paths, A.name)


# ------------------------------------------------------------------ rewiring

@dataclass(frozen=True)
class RewireMove:
    arc_index: int  # 1-based
    replacement: Path

    def apply(self, A: ArcSystem) -> ArcSystem:
        old = A.arcs[self.arc_index - 1]
        if {old.start, old.end} != {self.replacement.start, self.replacement.end}:
            raise ValueError("replacement must keep the endpoints of the replaced arc")
        paths = list(A.paths)
        paths[self.arc_index - 1] = reduce_path(self.replacement)
        return rank_paths(paths, A.name)


def _equator_layout(kept: Sequence[ArcCoord]):
    """Cyclic positions of punctures, kept points and the gaps between them.

    Returns ``(position, gaps, chords)``: ``position`` maps ``("p", k)`` and
    ``(arc, t)`` to an integer, ``gaps[s]`` lists the gap positions on segment
    ``s`` and ``chords[h]`` lists kept chords in hemisphere ``h``.
    """
    kept = list(kept)
    position: dict = {}
    gaps: dict[int, list[int]] = {}
    n = 0
    for k in SEGMENTS:
        position[("p", k)] = n
        n += 1
        pts = sorted((r, (i, t)) for i, arc in enumerate(kept)
                     for t, (s, r) in enumerate(arc.events) if s == k)
        gaps[k] = [n]
        n += 1
        for _, key in pts:
            position[key] = n
            gaps[k].append(n + 1)
            n += 2
    chords = {UPPER: [], LOWER: []}
    for i, arc in enumerate(kept):
        pts = [position[("p", arc.start)]]
        pts += [position[(i, t)] for t in range(len(arc.events))]
        pts.append(position[("p", arc.end)])
        for t in range(len(pts) - 1):
            u, v = sorted((pts[t], pts[t + 1]))
            chords[arc.side_of_chord(t)].append((u, v))
    return position, gaps, chords


def _same_region(chords, a: int, b: int) -> bool:
    return all((u < a < v) == (u < b < v) for u, v in chords)


def _candidate_paths(kept: Sequence[ArcCoord], start: int, end: int, max_crossings: int,
                     cap: int) -> set[Path]:
    """Reduced paths from ``start`` to ``end`` of bounded length avoiding the kept chords."""
    position, gaps, chords = _equator_layout(kept)
    p0, p1 = position[("p", start)], position[("p", end)]
    banned_first = set(segments_at(start))
    banned_last = set(segments_at(end))
    found: set[Path] = set()
    seen: set = set()

    def dfs(side0: str, h: str, at: int, word: tuple[int, ...]):
        state = (side0, h, at, word)
        if state in seen:
            return
        seen.add(state)
        if _same_region(chords[h], at, p1):
            if not word and punctures_adjacent(start, end):
                if side0 == UPPER:
                    found.add(Path(start, UPPER, (), end))
            elif not word or word[-1] not in banned_last:
                found.add(Path(start, side0, word, end))
            if len(found) > cap:
                raise BudgetExceeded(f"more than {cap} replacement candidates")
        if len(word) == max_crossings:
            return
        for s in SEGMENTS:
            if word and s == word[-1]:
                continue
            if not word and s in banned_first:
                continue
            for g in gaps[s]:
                if _same_region(chords[h], at, g):
                    dfs(side0, flip(h), g, word + (s,))

    for side0 in (UPPER, LOWER):
        dfs(side0, side0, p0, ())
    return found


@dataclass(frozen=True)
class EnumerationConfig:
    rewires: int = 1
    max_crossings: int = 4
    max_classes: int = 20000
    max_candidates: int = 200000


def enumerate_replacements(A: ArcSystem, k: int, max_crossings: int,
                           max_candidates: int = 200000) -> list[ArcSystem]:
    """All classes of systems obtained by rewiring arc ``k`` (1-based) within the crossing budget."""
    idx = k - 1
    paths = list(A.paths)
    kept = [p for i, p in enumerate(paths) if i != idx]
    kept_arcs = rank_arcs(kept)
    old = paths[idx]
    out = {canonical_key(A): A}
    for cand in sorted(_candidate_paths(kept_arcs, old.start, old.end, max_crossings, max_candidates)):
        if reduce_path(cand) != cand:
            continue
        new_paths = list(paths)
        new_paths[idx] = cand
        try:
            S = rank_paths(new_paths, A.name)
        except InvalidSystem:
            continue
        out.setdefault(canonical_key(S), S)
    return list(out.values())


@dataclass
class EnumerationResult:
    systems: list[ArcSystem]
    parents: list[tuple[int, int] | None]  # (parent index, rewired arc 1-based)
    depth: list[int]
    truncated: bool = False
    note: str = ""

    def __len__(self) -> int:
        return len(self.systems)


def enumerate_systems(base: ArcSystem, rewires: int, max_crossings: int,
                      max_classes: int = 20000, max_candidates: int = 200000) -> EnumerationResult:
    """Breadth-first closure of rewiring moves starting from ``base``."""
    base = rank_paths(base.paths, base.name)
    res = EnumerationResult([base], [None], [0])
    index = {canonical_key(base): 0}
    frontier = [0]
    for level in range(1, rewires + 1):
        nxt = []
        for parent in frontier:
            for k in (1, 2, 3):
                try:
                    reps = enumerate_replacements(res.systems[parent], k, max_crossings, max_candidates)
                except BudgetExceeded as exc:
                    res.truncated, res.note = True, str(exc)
                    log.warning("replacement budget hit: %s", exc)
                    continue
                for S in reps:
                    key = canonical_key(S)
                    if key in index:
                        continue
                    if len(res.systems) >= max_classes:
                        res.truncated = True
                        res.note = f"class cap {max_classes} reached"
                        return res
                    index[key] = len(res.systems)
                    res.systems.append(S)
                    res.parents.append((parent, k))
                    res.depth.append(level)
                    nxt.append(index[key])
        frontier = nxt
        log.info("depth %d: %d new classes", level, len(nxt))
    return res
