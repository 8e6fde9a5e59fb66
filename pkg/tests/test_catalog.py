import xml.etree.ElementTree as ET

import pytest
from hypothesis import given

from bridgerect.arrangement import minimal_arrangement
from bridgerect.catalog import (
    ParseError,
    builtin,
    builtin_names,
    dumps,
    iter_fixture_pairs,
    load_system,
    loads,
    render_svg,
    save_system,
)
from bridgerect.criteria import rectangle_report
from bridgerect.sphere import EPSILON, InvalidSystem, canonical_key
from conftest import systems

GOOD = """\
bridge-arc-system v1
system sample   # trailing comment
arc 1 1 2 L
events 1 : 3@1
arc 2 3 4 L
events 2 : 1@1 3@2 5@1
arc 3 5 6 L
events 3 : 3@3
end
"""


def test_parse_keeps_file_ranks():
    A = loads(GOOD)
    assert A.name == "sample"
    assert A.arcs[1].events == ((1, 1), (3, 2), (5, 1))
    assert A.arcs[1].side == "L"


@given(systems())
def test_dump_then_load_is_identity(A):
    assert loads(dumps(A)).key() == A.key()


def test_save_and_load_file(tmp_path):
    p = tmp_path / "eps.arcs"
    save_system(EPSILON, p)
    assert load_system(str(p)).key() == EPSILON.key()


@pytest.mark.parametrize("text, line, column", [
    (GOOD.replace("3@2 5@1", "3@x 5@1"), 6, 16),
    (GOOD.replace("bridge-arc-system v1", "bridge-arc-system v2"), 1, 1),
    (GOOD.replace("arc 2 3 4 L", "arc 2 3 4 Q"), 5, 11),
    (GOOD.replace("arc 2 3 4 L", "arc 2 3 9 L"), 5, 9),
    (GOOD.replace("arc 3 5 6 L", "arc 4 5 6 L"), 7, 5),
    (GOOD.replace("end\n", ""), 8, 1),
    (GOOD.replace("events 2 :", "events 3 :"), 6, 8),
    (GOOD + "arc 4 1 2 U\n", 10, 1),
])
def test_parse_errors_carry_position(text, line, column):
    with pytest.raises(ParseError) as exc:
        loads(text)
    assert (exc.value.line, exc.value.column) == (line, column)


def test_well_formed_but_invalid_system_is_rejected():
    with pytest.raises(InvalidSystem) as exc:
        loads(GOOD.replace("3@2 5@1", "3@4 5@1"))
    assert "RankGap" in exc.value.kinds


def test_builtins_are_valid_and_documented():
    names = builtin_names()
    assert {"@epsilon", "@delta85", "@rc-positive-A", "@rc-positive-B"} <= set(names)
    for name in names:
        entry = builtin(name)
        assert entry.provenance
        assert entry.system.equator_crossings() >= 0
    with pytest.raises(KeyError):
        builtin("@nope")


def test_builtin_text_is_stable():
    delta = load_system("@delta85")
    assert delta.equator_crossings() == 79
    assert [(a.start, a.end) for a in delta] == [(4, 6), (1, 3), (2, 5)]
    assert canonical_key(load_system("@rc-positive-A")) == canonical_key(EPSILON)


def test_fixture_pairs_cover_the_anchors():
    names = [n for n, _, _ in iter_fixture_pairs()]
    assert names == ["epsilon/epsilon", "@delta85/@epsilon", "@rc-positive-A/@rc-positive-B"]


def _by_class(svg, cls):
    root = ET.fromstring(svg)
    return [e for e in root.iter() if (e.get("class") or "").split()[0:1] == [cls]]


def test_svg_for_a_pair(tmp_path):
    A, B = load_system("@rc-positive-A"), load_system("@rc-positive-B")
    out = tmp_path / "pair.svg"
    svg = render_svg(A, B, out)
    assert out.read_text() == svg
    arr = minimal_arrangement(A, B)
    assert len(_by_class(svg, "crossing")) == arr.n_crossings
    assert len(_by_class(svg, "puncture")) == 6
    assert len(_by_class(svg, "rectangle")) >= len(rectangle_report(A, B).witnesses)


def test_svg_for_a_single_system():
    svg = render_svg(EPSILON)
    assert len(_by_class(svg, "chord")) == 3
    assert not _by_class(svg, "crossing")


def test_delta_fixture_is_the_braid_closure_image():
    from bridgerect.moves import TwistSpec, apply_twists
    from bridgerect.sphere import make_system

    nested = make_system([(3, "U", (), 4), (2, "U", (), 5), (1, "U", (), 6)])
    braid = [("pair1", -1)] * 3 + [("pair2", 1)] + [("pair1", -1)] * 3 + [("pair2", 1)]
    back = [TwistSpec("pair5", -1), TwistSpec("pair6", -1)]
    D = apply_twists(back, apply_twists([TwistSpec(c, e) for c, e in braid], nested))
    assert canonical_key(D) == canonical_key(load_system("@delta85"))
