# Copyright Contributors to the khoveq project.
# SPDX-License-Identifier: MIT

import itertools
import logging

import pytest

from khoveq.diagram import (
    LinkDiagram,
    Resolution,
    Tangle,
    add_kink,
    apply_action,
    braid_closure,
    connected_sum,
    disjoint_union,
    lift_fundamental_domain,
    mirror,
    parse_diagram,
    parse_tangle,
    remove_kink,
    resolve,
    smooth,
    writhe,
)
from khoveq.exceptions import (
    ActionException,
    DiagramParseException,
    EvenOrderException,
    KhovEqException,
)
from khoveq.khovanov import EnhancedState
from tests.constants import MALFORMED, TREFOIL_NONPLANAR, TREFOIL_SYM_P2, UNLINK2_P2


def test_trefoil(trefoil):
    assert trefoil.n == 3
    assert trefoil.crossing_signs() == [1, 1, 1]
    assert trefoil.writhe() == 3
    assert trefoil.is_planar()
    assert len(trefoil.components()) == 1
    assert parse_diagram(str(trefoil)) == trefoil


def test_unknot(unknot):
    assert unknot.n == 0
    assert unknot.loops == (1,)
    assert unknot.writhe() == 0
    assert len(unknot.resolve([])) == 1
    assert unknot.is_planar()


def test_nonplanar_record(caplog):
    with caplog.at_level(logging.WARNING):
        d = parse_diagram(TREFOIL_NONPLANAR.read_text())
    assert not d.is_planar()
    assert "planar" in caplog.text


def test_malformed_file():
    with pytest.raises(DiagramParseException) as exc:
        parse_diagram(MALFORMED.read_text())
    assert exc.value.lineno == 2
    assert str(exc.value) == "line 2: X expects 4 arguments"


@pytest.mark.parametrize(
    "text",
    [
        "Y 1 2\n",
        "X 1 2 3\n",
        "X 1 1 2 2\nMAP 1 1\n",
        "X 1 1 1 2\n",
        "X 1 1 2 2\nO 2\n",
        "O 1\nO 1\n",
        "X 1 1 2 2\nSYM 1\nSYM 1\n",
        "X 1 1 2 2\nSYM 1\nMAP 1 2\n",
        "X 1 1 2 2\nRAY 3 1\n",
    ],
)
def test_parse_invalid(text):
    with pytest.raises(DiagramParseException):
        parse_diagram(text)


def test_parse_comments_and_fresh_loops():
    d = parse_diagram("# two loops\nX 1 1 2 2  # curl\nO\nO\n")
    assert d.loops == (3, 4)
    assert d.free_loops == 2


def test_resolve(trefoil):
    r = trefoil.resolve([1, 1, 1])
    assert [sorted(c) for c in r.circles] == [[1, 2, 3], [4, 5, 6]]
    assert r.sigma == 3
    assert r.windings is None
    assert r.essential == (False, False)
    assert len(trefoil.resolve([-1, -1, -1])) == 3
    assert trefoil.resolve([1, 1, 1]) is r


@pytest.mark.parametrize("markers", [[1, 1], [1, 0, 1]])
def test_resolve_invalid(trefoil, markers):
    with pytest.raises(KhovEqException):
        trefoil.resolve(markers)


def test_annular_resolution(annular_kink):
    assert annular_kink.annular
    r = annular_kink.resolve([1])
    assert r.circles == ((1,), (2,))
    assert r.windings == (-1, 1)
    assert r.essential == (True, True)
    r = annular_kink.resolve([-1])
    assert r.windings == (0,)
    assert r.essential == (False,)


def test_action(trefoil):
    a = trefoil.action()
    assert a.p == 3
    assert a.crossing_perm == (1, 2, 0)
    assert a.arc_perm == {1: 2, 2: 3, 3: 1, 4: 5, 5: 6, 6: 4}
    assert a.act(trefoil.resolve([1, 1, -1])) == trefoil.resolve([-1, 1, 1])
    assert a.power(3).crossing_perm == (0, 1, 2)


def test_action_on_states_preserves_signs(trefoil):
    a = trefoil.action()
    state = EnhancedState([1, 1, 1], [1, -1], 3)
    image = a.act(state)
    assert image.markers == (1, 1, 1)
    assert image == state
    assert a.act(a.act(a.act(EnhancedState([1, -1, -1], [1, -1], 3)))) == EnhancedState(
        [1, -1, -1], [1, -1], 3
    )


def test_module_level_helpers(trefoil, unknot):
    assert writhe(trefoil) == 3
    assert writhe(unknot) == 0
    assert resolve(trefoil, [1, 1, 1]) is trefoil.resolve([1, 1, 1])
    a = trefoil.action()
    r = trefoil.resolve([1, -1, -1])
    assert apply_action(a, r) == a.act(r)
    assert apply_action(a, r).markers == (-1, 1, -1)


def test_with_override(trefoil):
    a = trefoil.action()
    assert not a.allow_even
    b = a.with_override()
    assert b.allow_even
    assert (b.p, b.crossing_perm, b.arc_perm) == (a.p, a.crossing_perm, a.arc_perm)


def test_even_order():
    d = parse_diagram(TREFOIL_SYM_P2.read_text())
    with pytest.raises(EvenOrderException):
        d.action()
    with pytest.raises(ActionException):
        d.action(allow_even=True)
    unlink = parse_diagram(UNLINK2_P2.read_text())
    assert unlink.action(allow_even=True).p == 2


def test_action_not_an_automorphism():
    d = LinkDiagram(
        [(1, 2, 5, 4), (2, 3, 6, 5), (3, 1, 4, 6)],
        symmetry_order=3,
        crossing_map={0: 0, 1: 2, 2: 1},
    )
    with pytest.raises(ActionException):
        d.action()
    with pytest.raises(ActionException):
        LinkDiagram(loops=[1]).action()


def test_from_braid():
    t = Tangle.from_braid([1], 2)
    assert t.crossings == ((2, 4, 3, 1),)
    assert t.left == (1, 2)
    assert t.right == (3, 4)
    with pytest.raises(KhovEqException):
        Tangle.from_braid([2], 2)


def test_lift_fundamental_domain(trefoil):
    d, a = lift_fundamental_domain(Tangle.from_braid([1], 2), 3)
    assert str(d).startswith("X 2 4 3 1\nX 4 6 5 3\nX 6 2 1 5\nSYM 3\n")
    assert d.writhe() == 3
    assert d.is_planar()
    assert a.p == 3
    assert a.crossing_perm == (1, 2, 0)


def test_lift_annular():
    d, _ = lift_fundamental_domain(Tangle.from_braid([1], 2), 3, annular=True)
    assert d.annular
    assert sum(abs(n) for n in d.rays.values()) == 2


def test_parse_tangle():
    t = parse_tangle("X 2 4 3 1\nLEFT 1 2\nRIGHT 3 4\n")
    assert t == Tangle.from_braid([1], 2)
    with pytest.raises(DiagramParseException):
        parse_tangle("X 2 4 3 1\nLEFT 1 2\nRIGHT 3\n")


def test_braid_closure():
    d = braid_closure([1, 1, 1], 2)
    assert d.n == 3
    assert d.writhe() == 3
    assert d.symmetry_order is None
    assert braid_closure([-1, -1, -1], 2).writhe() == -3


def test_smooth(trefoil):
    hopf = smooth(trefoil, 0, 1)
    assert hopf.n == 2
    assert len(hopf.components()) == 2
    assert hopf.is_planar()
    curls = smooth(trefoil, 0, -1)
    assert curls.n == 2
    assert len(curls.components()) == 1


def test_mirror(trefoil):
    m = mirror(trefoil)
    assert m.writhe() == -3
    assert m.is_planar()
    assert mirror(m).writhe() == 3


def test_disjoint_union(unknot, trefoil):
    d = disjoint_union(trefoil, unknot)
    assert d.n == 3
    assert d.loops == (7,)
    assert len(d.components()) == 2


def test_connected_sum_with_mirror(trefoil, unknot):
    d = connected_sum(trefoil, mirror(trefoil))
    assert d.n == 6
    assert d.writhe() == 0
    assert d.is_planar()
    assert len(d.components()) == 1
    with_unknot = connected_sum(trefoil, unknot)
    assert (with_unknot.crossings, with_unknot.loops) == (trefoil.crossings, ())
    with pytest.raises(KhovEqException):
        connected_sum(trefoil, unknot, 9)


@pytest.mark.parametrize(
    "word, strands",
    [([1, 1, 1], 2), ([1, -2, 1], 3), ([1, 2, -1, 2], 3), ([-1, -1, 2, 3, -2], 4)],
)
def test_marker_flip_changes_circles_by_one(word, strands):
    d = braid_closure(word, strands)
    for markers in itertools.product((1, -1), repeat=d.n):
        count = len(d.resolve(markers))
        for v in range(d.n):
            flipped = markers[:v] + (-markers[v],) + markers[v + 1 :]
            assert abs(len(d.resolve(flipped)) - count) == 1


def test_lift_of_one_copy_is_closure():
    d, a = lift_fundamental_domain(Tangle.from_braid([1], 2), 1)
    assert d.crossings == ((2, 2, 1, 1),)
    assert d.writhe() == 1
    assert d.is_planar()
    assert a.crossing_perm == (0,)
    assert a.arc_perm == {1: 1, 2: 2}
    closure = braid_closure([1, -2, 1], 3)
    d, _ = lift_fundamental_domain(Tangle.from_braid([1, -2, 1], 3), 1)
    assert (d.crossings, d.loops) == (closure.crossings, closure.loops)


@pytest.mark.parametrize(
    "word, strands, p, components",
    [
        ([], 1, 3, 1),
        ([], 2, 3, 2),
        ([], 3, 5, 3),
        ([1], 2, 3, 1),
        ([1], 2, 2, 2),
        ([1, 2], 3, 3, 3),
        ([1, 2], 3, 5, 1),
    ],
)
def test_lift_component_count(word, strands, p, components):
    d, _ = lift_fundamental_domain(
        Tangle.from_braid(word, strands), p, allow_even=p % 2 == 0
    )
    assert len(d.components()) == components


@pytest.mark.parametrize("sign", [1, -1])
def test_add_and_remove_kink(trefoil, sign):
    kinked = add_kink(trefoil, 1, sign)
    assert kinked.n == 4
    assert kinked.crossing_signs()[-1] == sign
    assert kinked.writhe() == 3 + sign
    assert kinked.is_planar()
    assert remove_kink(kinked, 3) == trefoil


def test_kink_on_loop(unknot):
    assert add_kink(unknot, 1, 1) == LinkDiagram([(1, 1, 2, 2)])
    assert remove_kink(add_kink(unknot, 1, -1), 0) == unknot
    with pytest.raises(KhovEqException):
        remove_kink(parse_diagram("X 1 2 3 4\nX 3 4 1 2\n"), 0)


def test_resolution_equality():
    assert Resolution([1], [[1], [2]]) == Resolution((1,), ((1,), (2,)))
    assert Resolution([1], [[1], [2]], [0, 1]) != Resolution([1], [[1], [2]])
