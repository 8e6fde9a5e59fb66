"""Rebuild the 8_5 partner system from a 3-braid and compare with the frozen fixture.

The knot is the closure of s1^3 s2^-1 s1^3 s2^-1.  Closing the braid with
nested caps gives a 3-bridge diagram: the caps N = (3,4),(2,5),(1,6) on one
side and their braid image on the other.  The twist word h = pair6, pair5
carries epsilon onto N, so conjugating by h puts epsilon on one side.

Both chiralities are built.  For each the script prints the crossing count,
the intersection matrix, the coloring determinant of the diagram (21 for 8_5)
and the connecting pairs that matter for the rectangle condition.

    python scripts/build_delta85.py
"""

from __future__ import annotations

import argparse
from fractions import Fraction

from bridgerect.arrangement import minimal_arrangement
from bridgerect.catalog import dumps, load_system
from bridgerect.criteria import connecting_pairs, rectangle_report
from bridgerect.moves import TwistSpec, apply_twists
from bridgerect.sphere import EPSILON, ArcSystem, canonical_key, make_system

BRAID = [(1, 1)] * 3 + [(2, -1)] + [(1, 1)] * 3 + [(2, -1)]
NESTED = make_system([(3, "U", (), 4), (2, "U", (), 5), (1, "U", (), 6)], "nested")
TO_NESTED = [TwistSpec("pair6", 1), TwistSpec("pair5", 1)]


def build(sign: int) -> ArcSystem:
    word = [TwistSpec(f"pair{g}", sign * e) for g, e in BRAID]
    back = [t.inverse() for t in reversed(TO_NESTED)]
    return apply_twists(back, apply_twists(word, NESTED)).renamed("delta85")


def _det(rows: list[list[Fraction]]) -> Fraction:
    m = [r[:] for r in rows]
    n, det = len(m), Fraction(1)
    for i in range(n):
        p = next((r for r in range(i, n) if m[r][i] != 0), None)
        if p is None:
            return Fraction(0)
        if p != i:
            m[i], m[p] = m[p], m[i]
            det = -det
        det *= m[i][i]
        for r in range(i + 1, n):
            f = m[r][i] / m[i][i]
            for c in range(i, n):
                m[r][c] -= f * m[i][c]
    return det


def burau_determinant(braid) -> int:
    """|det(I - reduced Burau(t=-1))| of a 3-braid, the determinant of its closure."""
    s1 = [[Fraction(1), Fraction(1)], [Fraction(0), Fraction(1)]]
    s2 = [[Fraction(1), Fraction(0)], [Fraction(-1), Fraction(1)]]

    def mul(a, b):
        return [[sum(a[i][k] * b[k][j] for k in range(2)) for j in range(2)] for i in range(2)]

    def inv(a):
        d = a[0][0] * a[1][1] - a[0][1] * a[1][0]
        return [[a[1][1] / d, -a[0][1] / d], [-a[1][0] / d, a[0][0] / d]]

    m = [[Fraction(1), Fraction(0)], [Fraction(0), Fraction(1)]]
    for g, e in braid:
        step = s1 if g == 1 else s2
        m = mul(m, step if e > 0 else inv(step))
    return abs(int((1 - m[0][0]) * (1 - m[1][1]) - m[0][1] * m[1][0]))


def coloring_determinant(D: ArcSystem) -> int:
    """Fox coloring determinant of the bridge diagram epsilon (over) and D (under).

    Over-strands are the epsilon arcs; D's arcs are cut at each crossing.
    Each crossing gives 2*over - left - right; one row and column are dropped.
    """
    arr = minimal_arrangement(EPSILON, D)
    parent: dict = {}

    def find(x):
        parent.setdefault(x, x)
        while parent[x] != x:
            x = parent[x]
        return x

    over_at = {p: i for i, a in enumerate(EPSILON.arcs) for p in (a.start, a.end)}
    rels = []
    for j, arc in enumerate(D.arcs):
        seq = arr.sequences[(1, j)]
        parent[find(("d", j, 0))] = find(("e", over_at[arc.start]))
        parent[find(("d", j, len(seq)))] = find(("e", over_at[arc.end]))
        for t, cid in enumerate(seq):
            rels.append((("e", arr.crossings[cid].a_arc), ("d", j, t), ("d", j, t + 1)))
    for r in rels:
        for x in r:
            find(x)
    classes = sorted({find(x) for x in parent}, key=str)
    col = {c: k for k, c in enumerate(classes)}
    rows = []
    for over, left, right in rels:
        row = [Fraction(0)] * len(classes)
        row[col[find(over)]] += 2
        row[col[find(left)]] -= 1
        row[col[find(right)]] -= 1
        rows.append(row)
    return abs(int(_det([r[1:] for r in rows[1:]])))


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--dump", action="store_true", help="print the system in file format")
    args = ap.parse_args()
    print(f"braid closure determinant {burau_determinant(BRAID)}")
    frozen = load_system("@delta85")
    for sign in (1, -1):
        D = build(sign)
        arr = minimal_arrangement(D, EPSILON)
        pairs = [sorted(connecting_pairs(D, k, EPSILON, arr)) for k in (1, 2, 3)]
        rep = rectangle_report(D, EPSILON, arr)
        same = canonical_key(D) == canonical_key(frozen)
        print(f"sign {sign:+d}: crossings {arr.n_crossings} matrix {arr.matrix()} "
              f"determinant {coloring_determinant(D)} rc {rep.holds} connecting {pairs} "
              f"frozen fixture {'matches' if same else 'differs'}")
        if args.dump:
            print(dumps(D))
    print(f"sanity: unknot diagram determinant "
          f"{coloring_determinant(make_system([(2, 'U', (), 3), (4, 'U', (), 5), (1, 'U', (), 6)]))}")


if __name__ == "__main__":
    main()
