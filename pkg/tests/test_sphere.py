import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from bridgerect.sphere import (
    EPSILON,
    ArcCoord,
    InvalidSystem,
    Path,
    are_isotopic,
    canonical_key,
    canonicalize_system,
    make_system,
    rank_paths,
    reduce_path,
    validate_system,
)
from conftest import random_pairs, systems


def arcs(*raw):
    return [ArcCoord(a, h, tuple(ev), b) for a, h, ev, b in raw]


# ------------------------------------------------------------ validation

def test_epsilon_is_three_upper_chords():
    assert [(a.start, a.side, a.events, a.end) for a in EPSILON] == [
        (1, "U", (), 2), (3, "U", (), 4), (5, "U", (), 6)]
    assert EPSILON.equator_crossings() == 0


@pytest.mark.parametrize("raw, kind", [
    (arcs((1, "U", (), 2), (3, "U", (), 4), (4, "U", (), 6)), "NonPerfectMatching"),
    (arcs((1, "U", (), 2), (3, "U", (), 4)), "NonPerfectMatching"),
    (arcs((1, "U", ((3, 1),), 2), (3, "L", ((1, 1),), 4), (5, "U", ((3, 1),), 6)), "RankClash"),
    (arcs((1, "U", ((3, 2),), 2), (3, "U", (), 4), (5, "U", (), 6)), "RankGap"),
    (arcs((1, "X", (), 2), (3, "U", (), 4), (5, "U", (), 6)), "HemisphereMismatch"),
    # p1-p4 and p3-p6 as upper chords interleave
    (arcs((1, "U", (), 4), (2, "L", (), 5), (3, "U", (), 6)), "SelfCrossing"),
])
def test_validation_names_the_violation(raw, kind):
    with pytest.raises(InvalidSystem) as exc:
        validate_system(raw)
    assert kind in exc.value.kinds


def test_validate_accepts_dicts_and_tuples():
    d = {"name": "e", "arcs": [{"start": 1, "side": "U", "events": [], "end": 2},
                               (3, "U", (), 4), (5, "U", (), 6)]}
    A = validate_system(d)
    assert A.name == "e" and A.key() == EPSILON.key()


def test_hemisphere_mismatch_for_disjoint_chords_in_both_hemispheres():
    # the same chord used above and below makes two arcs share an endpoint
    raw = arcs((1, "U", (), 2), (1, "L", (), 2), (5, "U", (), 6))
    with pytest.raises(InvalidSystem):
        validate_system(raw)


# ------------------------------------------------------------ reduction

@pytest.mark.parametrize("path, expected", [
    (Path(1, "U", (3, 3), 2), Path(1, "U", (), 2)),
    (Path(1, "L", (), 2), Path(1, "U", (), 2)),
    # leaving p1 across s1 or s6 is undone by swinging around p1
    (Path(1, "U", (1, 2), 4), Path(1, "L", (2,), 4)),
    (Path(1, "U", (1, 3), 4), Path(1, "L", (), 4)),
    (Path(1, "U", (6,), 4), Path(1, "L", (), 4)),
    # oriented from the lower puncture
    (Path(4, "U", (2,), 1), Path(1, "L", (2,), 4)),
])
def test_reduce_path_examples(path, expected):
    assert reduce_path(path) == expected


@given(st.integers(1, 6), st.integers(1, 6), st.sampled_from("UL"),
       st.lists(st.integers(1, 6), max_size=10))
def test_reduce_path_is_idempotent_and_orientation_free(a, b, side, word):
    if a == b:
        return
    p = Path(a, side, tuple(word), b)
    r = reduce_path(p)
    assert reduce_path(r) == r
    assert reduce_path(p.reversed()) == r
    assert r.start < r.end
    assert all(x != y for x, y in zip(r.word, r.word[1:]))


def test_path_reversal_is_an_involution():
    p = Path(2, "L", (4, 5, 1), 6)
    assert p.reversed().reversed() == p
    assert p.reversed().side == "U"


# ------------------------------------------------------------ ranking and keys

@given(systems())
def test_twist_images_validate_and_rank_from_words(A):
    again = rank_paths(A.paths)
    assert again.key() == A.key()
    assert canonicalize_system(A).key() == A.key()


@given(systems(), st.permutations([0, 1, 2]))
def test_canonical_key_ignores_arc_order_and_orientation(A, order):
    B = A.permuted(order)
    C = make_system([p.reversed() for p in A.paths])
    assert canonical_key(A) == canonical_key(B) == canonical_key(C)


def test_canonical_key_and_arrangement_agree_on_isotopy():
    # two independent routes: reduced words versus an empty minimal superposition
    rng = random.Random(7)
    pairs = random_pairs(rng, 40, max_len=4)
    pairs += [(A, A.permuted([2, 0, 1])) for A, _ in pairs[:10]]
    seen_equal = 0
    for A, B in pairs:
        same = canonical_key(A) == canonical_key(B)
        seen_equal += same
        assert are_isotopic(A, B) == same
    assert seen_equal >= 10


def test_renamed_and_permuted():
    A = EPSILON.renamed("x")
    assert A.name == "x" and A.key() == EPSILON.key()
    assert [a.start for a in EPSILON.permuted([2, 1, 0])] == [5, 3, 1]


def test_detour_through_a_segment_is_removed():
    # epsilon_1 dips across s2 and straight back
    A = validate_system(arcs((1, "U", ((2, 2), (2, 1)), 2), (3, "U", (), 4), (5, "U", (), 6)))
    C = canonicalize_system(A)
    assert C.key() == EPSILON.key()
    assert canonicalize_system(C).key() == C.key()
    assert are_isotopic(A, EPSILON)


def test_epsilon_arc_redrawn_below_is_isotopic():
    A = validate_system(arcs((1, "L", ((4, 2), (4, 1)), 2), (3, "U", (), 4), (5, "U", (), 6)))
    assert are_isotopic(A, EPSILON) and are_isotopic(EPSILON, A)


def test_wrapped_third_arc_is_not_isotopic():
    from bridgerect.arrangement import intersection_matrix
    from bridgerect.moves import enumerate_systems

    # the rewired third arc can only meet the arc it replaced
    wrapped = next(S for S in enumerate_systems(EPSILON, 1, 4).systems if 5 in S.paths[2].word)
    assert not are_isotopic(EPSILON, wrapped)
    assert intersection_matrix(EPSILON, wrapped) == ((0, 0, 0), (0, 0, 0), (0, 0, 1))
