"""Built-in fixtures, the text format for arc systems, and SVG rendering."""

from __future__ import annotations

import math
from dataclasses import dataclass
from pathlib import Path as FsPath
from typing import Iterable

from .arrangement import A_SIDE, B_SIDE, minimal_arrangement
from .criteria import rectangle_faces
from .sphere import (
    EPSILON,
    LOWER,
    PUNCTURES,
    SEGMENTS,
    UPPER,
    ArcCoord,
    ArcSystem,
    canonicalize_system,
    validate_system,
)

HEADER = "bridge-arc-system v1"


class ParseError(ValueError):
    def __init__(self, message: str, line: int, column: int = 1):
        super().__init__(f"line {line}, column {column}: {message}")
        self.line = line
        self.column = column


# ------------------------------------------------------------------ text format

def dumps(A: ArcSystem) -> str:
    out = [HEADER, f"system {A.name or 'unnamed'}"]
    for k, arc in enumerate(A.arcs, 1):
        out.append(f"arc {k} {arc.start} {arc.end} {arc.side}")
        events = " ".join(f"{s}@{r}" for s, r in arc.events)
        out.append(f"events {k} :" + (f" {events}" if events else ""))
    out.append("end")
    return "\n".join(out) + "\n"


def _tokens(line: str) -> list[tuple[str, int]]:
    """Whitespace tokens with 1-based columns, comments stripped."""
    body = line.split("#", 1)[0]
    out, col = [], 0
    for part in body.split():
        col = body.index(part, col)
        out.append((part, col + 1))
        col += len(part)
    return out


def _int(tok: tuple[str, int], lineno: int, what: str) -> int:
    try:
        return int(tok[0])
    except ValueError:
        raise ParseError(f"expected {what}, got {tok[0]!r}", lineno, tok[1]) from None


def loads(text: str) -> ArcSystem:
    """Parse one system; the result is validated but keeps its file ranks."""
    lines = [(n, _tokens(raw)) for n, raw in enumerate(text.splitlines(), 1)]
    lines = [(n, t) for n, t in lines if t]
    if not lines or " ".join(tok for tok, _ in lines[0][1]) != HEADER:
        n = lines[0][0] if lines else 1
        raise ParseError(f"first line must be {HEADER!r}", n)
    it = iter(lines[1:])
    n, toks = next(it, (lines[0][0] + 1, []))
    if len(toks) != 2 or toks[0][0] != "system":
        raise ParseError("expected 'system <name>'", n, toks[0][1] if toks else 1)
    name = toks[1][0]
    arcs: list[ArcCoord] = []
    pending = None
    ended = False
    for n, toks in it:
        head = toks[0][0]
        if ended:
            raise ParseError("content after 'end'", n, toks[0][1])
        if head == "end":
            if pending is not None:
                raise ParseError(f"arc {pending[0]} has no events line", n, toks[0][1])
            ended = True
        elif head == "arc":
            if pending is not None:
                raise ParseError(f"arc {pending[0]} has no events line", n, toks[0][1])
            if len(toks) != 5:
                raise ParseError("expected 'arc <k> <pStart> <pEnd> <U|L>'", n, toks[0][1])
            k = _int(toks[1], n, "arc index")
            if k != len(arcs) + 1:
                raise ParseError(f"arc index {k} out of order", n, toks[1][1])
            ends = []
            for tok in toks[2:4]:
                p = _int(tok, n, "puncture")
                if p not in PUNCTURES:
                    raise ParseError(f"puncture {p} outside 1..6", n, tok[1])
                ends.append(p)
            side = toks[4][0]
            if side not in (UPPER, LOWER):
                raise ParseError(f"side must be U or L, got {side!r}", n, toks[4][1])
            pending = (k, ends[0], ends[1], side)
        elif head == "events":
            if pending is None:
                raise ParseError("events line without arc", n, toks[0][1])
            if len(toks) < 3 or toks[2][0] != ":":
                raise ParseError("expected 'events <k> :'", n, toks[0][1])
            k = _int(toks[1], n, "arc index")
            if k != pending[0]:
                raise ParseError(f"events for arc {k} but arc {pending[0]} is open", n, toks[1][1])
            events = []
            for tok, col in toks[3:]:
                seg, at, rank = tok.partition("@")
                if not at or not seg.isdigit() or not rank.isdigit():
                    raise ParseError(f"bad event {tok!r}; expected <segment>@<rank>", n, col)
                s, r = int(seg), int(rank)
                if s not in SEGMENTS or r < 1:
                    raise ParseError(f"bad event {tok!r}", n, col)
                events.append((s, r))
            arcs.append(ArcCoord(pending[1], pending[3], tuple(events), pending[2]))
            pending = None
        else:
            raise ParseError(f"unknown record {head!r}", n, toks[0][1])
    if not ended:
        raise ParseError("missing 'end'", lines[-1][0])
    return validate_system(tuple(arcs), name)


def save_system(A: ArcSystem, path) -> None:
    FsPath(path).write_text(dumps(A), encoding="utf-8")


def load_system(source: str) -> ArcSystem:
    """Load a builtin (``@name``) or a file; the result is canonicalized."""
    if source.startswith("@"):
        return builtin(source).system
    return canonicalize_system(loads(FsPath(source).read_text(encoding="utf-8")))


# ------------------------------------------------------------------ fixtures

@dataclass(frozen=True)
class FixtureEntry:
    name: str
    system: ArcSystem
    provenance: str


_FIXTURE_TEXT: dict[str, tuple[str, str]] = {}


def _register(name: str, text: str, provenance: str) -> None:
    _FIXTURE_TEXT[name] = (text, provenance)


def builtin(name: str) -> FixtureEntry:
    if name == "@epsilon":
        return FixtureEntry(name, EPSILON, "reference trivial system: three upper chords over s1, s3, s5")
    if name not in _FIXTURE_TEXT:
        raise KeyError(f"unknown builtin {name!r}; known: {', '.join(builtin_names())}")
    text, prov = _FIXTURE_TEXT[name]
    return FixtureEntry(name, canonicalize_system(loads(text)), prov)


def builtin_names() -> list[str]:
    return ["@epsilon", *sorted(_FIXTURE_TEXT)]


_register("@delta85", """\
bridge-arc-system v1
system delta85
arc 1 4 6 U
events 1 : 1@1 2@4 3@15 5@8 6@10 2@14 3@5
arc 2 1 3 L
events 2 : 2@5 3@14 5@9 6@9 2@15 3@4 6@1 5@17 3@6 2@13 6@11 5@7 3@16 2@3 1@2 3@22 5@1 6@17 2@7 3@12 5@11 6@7 2@17 3@2 6@3 5@15 3@8 2@11 6@13 5@5 3@18 2@1 1@4 3@20 5@3 6@15 2@9 3@10 5@13 6@5
arc 3 2 5 U
events 3 : 3@19 5@4 6@14 2@10 3@9 5@14 6@4 3@1 2@18 6@6 5@12 3@11 2@8 6@16 5@2 3@21 1@3 2@2 3@17 5@6 6@12 2@12 3@7 5@16 6@2 3@3 2@16 6@8 5@10 3@13 2@6 6@18
end
""", "image of the nested upper caps (3,4),(2,5),(1,6) under the braid "
   "s1^-3 s2 s1^-3 s2 (s1 = pair1, s2 = pair2 half twists), carried back by the "
   "twist word pair6, pair5 that sends epsilon to the nested caps; the 2-bridge "
   "diagram epsilon over this system has determinant 21; arcs kept in construction order")

_register("@rc-positive-A", """\
bridge-arc-system v1
system rc-positive-A
arc 1 1 2 U
events 1 :
arc 2 3 4 U
events 2 :
arc 3 5 6 U
events 3 :
end
""", "epsilon under its own name, first half of the positive control pair")

_register("@rc-positive-B", """\
bridge-arc-system v1
system rc-positive-B
arc 1 3 4 U
events 1 : 5@5 6@2 1@3 3@3 5@2
arc 2 1 6 L
events 2 : 3@6 4@1 5@1 3@4 1@2 6@3 5@4 3@1 1@5
arc 3 2 5 U
events 3 : 5@6 6@1 1@4 3@2 5@3 6@4 1@1 3@5
end
""", "epsilon under the twist word pair2^-1 pair4^-1 pair6 pair4^-1 eps3^-2 pair5^-1 "
   "pair4^-1 eps3^-1 eps1^-1 pair6, found by seeded hill climbing on the number of "
   "realised tuples against epsilon; all nine tuples confirmed by both rectangle routines")


# ------------------------------------------------------------------ SVG

_COLORS = {A_SIDE: ("#c0392b", "#27ae60", "#2980b9"), B_SIDE: ("#222222", "#7f7f7f", "#b07d2b")}


def _geodesic(a: float, b: float, samples: int = 48) -> list[tuple[float, float]]:
    """Arc of the circle orthogonal to the unit circle through angles ``a`` and ``b``."""
    d = (b - a) % (2 * math.pi)
    if abs(d - math.pi) < 1e-6:
        b = a + math.pi - 1e-3
        d = math.pi - 1e-3
    half = d / 2 if d < math.pi else (2 * math.pi - d) / 2
    mid = a + d / 2 if d < math.pi else a - (2 * math.pi - d) / 2
    c = 1 / math.cos(half)
    r = math.tan(half)
    cx, cy = c * math.cos(mid), c * math.sin(mid)
    pa = (math.cos(a) - cx, math.sin(a) - cy)
    pb = (math.cos(b) - cx, math.sin(b) - cy)
    ta, tb = math.atan2(pa[1], pa[0]), math.atan2(pb[1], pb[0])
    sweep = (tb - ta) % (2 * math.pi)
    if sweep > math.pi:
        sweep -= 2 * math.pi
    return [(cx + r * math.cos(ta + sweep * k / samples), cy + r * math.sin(ta + sweep * k / samples))
            for k in range(samples + 1)]


def _outside(pts):
    out = []
    for x, y in pts:
        m = math.hypot(x, y) or 1e-9
        out.append((x / m * (2 - m), y / m * (2 - m)))
    return out


def _seg_hit(p, q, r, s):
    d = (q[0] - p[0]) * (s[1] - r[1]) - (q[1] - p[1]) * (s[0] - r[0])
    if abs(d) < 1e-15:
        return None
    t = ((r[0] - p[0]) * (s[1] - r[1]) - (r[1] - p[1]) * (s[0] - r[0])) / d
    u = ((r[0] - p[0]) * (q[1] - p[1]) - (r[1] - p[1]) * (q[0] - p[0])) / d
    if 0 <= t <= 1 and 0 <= u <= 1:
        return p[0] + t * (q[0] - p[0]), p[1] + t * (q[1] - p[1])
    return None


def _poly_hit(P, Q):
    for k in range(len(P) - 1):
        for m in range(len(Q) - 1):
            h = _seg_hit(P[k], P[k + 1], Q[m], Q[m + 1])
            if h:
                return h
    return P[len(P) // 2]


@dataclass
class _Layout:
    bp: list
    chords: dict


def _single_layout(A: ArcSystem) -> _Layout:
    bp, index = [], {}
    for k in PUNCTURES:
        index[("p", k)] = len(bp)
        bp.append(("p", k))
        pts = sorted((r, (A_SIDE, i, t)) for i, a in enumerate(A.arcs)
                     for t, (seg, r) in enumerate(a.events) if seg == k)
        for _, tok in pts:
            index[tok] = len(bp)
            bp.append(tok)
    chords = {}
    for i, a in enumerate(A.arcs):
        pts = [index[("p", a.start)]] + [index[(A_SIDE, i, t)] for t in range(len(a.events))]
        pts.append(index[("p", a.end)])
        chords[(A_SIDE, i)] = [(a.side_of_chord(t), pts[t], pts[t + 1]) for t in range(len(pts) - 1)]
    return _Layout(bp, chords)


def render_svg(A: ArcSystem, B: ArcSystem | None = None, path=None, size: int = 640) -> str:
    """Plane picture: upper chords inside the equator circle, lower chords outside."""
    if B is None:
        arr = None
        g = _single_layout(A)
        owners = (A_SIDE,)
    else:
        arr = minimal_arrangement(A, B)
        g = arr.geometry
        owners = (A_SIDE, B_SIDE)
    # punctures get extra room so labels stay readable
    weights = [3.0 if tok[0] == "p" else 1.0 for tok in g.bp]
    total = sum(weights)
    angles, acc = [], 0.0
    for w in weights:
        angles.append(2 * math.pi * (acc + w / 2) / total)
        acc += w
    scale = size / 4.4
    c0 = size / 2

    def xy(p):
        return c0 + scale * p[0], c0 - scale * p[1]

    def poly(pts):
        return " ".join(f"{x:.2f},{y:.2f}" for x, y in map(xy, pts))

    out = [f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{size}" height="{size}" '
           f'viewBox="0 0 {size} {size}">',
           '<rect width="100%" height="100%" fill="white"/>',
           f'<circle class="equator" cx="{c0}" cy="{c0}" r="{scale:.2f}" fill="none" stroke="#999" '
           'stroke-dasharray="4 3"/>']
    drawn: dict = {}
    for owner in owners:
        for (o, i), chords in g.chords.items():
            if o != owner:
                continue
            color = _COLORS[owner][i % 3]
            for t, (h, u, v) in enumerate(chords):
                pts = _geodesic(angles[u], angles[v])
                if h == LOWER:
                    pts = _outside(pts)
                drawn[(owner, i, t)] = pts
                out.append(f'<polyline class="chord {"AB"[owner]}{i + 1}" points="{poly(pts)}" '
                           f'fill="none" stroke="{color}" stroke-width="2"/>')
    if arr is not None:
        for face_id in rectangle_faces(arr).values():
            corners = []
            for v in arr.faces[face_id].corners():
                x = g.crossings[v[1]]
                corners.append(_poly_hit(drawn[(A_SIDE, x.a_arc, x.a_chord)], drawn[(B_SIDE, x.b_arc, x.b_chord)]))
            out.append(f'<polygon class="rectangle" points="{poly(corners)}" fill="#f1c40f" '
                       'fill-opacity="0.35" stroke="none"/>')
        for x in g.crossings:
            p = _poly_hit(drawn[(A_SIDE, x.a_arc, x.a_chord)], drawn[(B_SIDE, x.b_arc, x.b_chord)])
            cx, cy = xy(p)
            out.append(f'<circle class="crossing" cx="{cx:.2f}" cy="{cy:.2f}" r="3" fill="black"/>')
    for b, tok in enumerate(g.bp):
        if tok[0] != "p":
            continue
        x, y = xy((math.cos(angles[b]), math.sin(angles[b])))
        lx, ly = xy((1.12 * math.cos(angles[b]), 1.12 * math.sin(angles[b])))
        out.append(f'<circle class="puncture" cx="{x:.2f}" cy="{y:.2f}" r="5" fill="black"/>')
        out.append(f'<text x="{lx:.2f}" y="{ly:.2f}" font-size="14" text-anchor="middle">p{tok[1]}</text>')
    out.append("</svg>")
    svg = "\n".join(out) + "\n"
    if path is not None:
        FsPath(path).write_text(svg, encoding="utf-8")
    return svg


def iter_fixture_pairs() -> Iterable[tuple[str, ArcSystem, ArcSystem]]:
    yield "epsilon/epsilon", EPSILON, EPSILON
    for name in ("@delta85", "@rc-positive-A"):
        if name in _FIXTURE_TEXT:
            partner = "@epsilon" if name == "@delta85" else "@rc-positive-B"
            yield f"{name}/{partner}", builtin(name).system, load_system(partner)
