# Copyright Contributors to the khoveq project.
# SPDX-License-Identifier: MIT

import pytest
import sympy as sp

from khoveq.diagram import LinkDiagram, add_kink
from khoveq.exceptions import (
    ChainMapException,
    DiagramParseException,
    KhovEqException,
    ResourceCapException,
)
from khoveq.f2linalg import F2Matrix
from khoveq.khovanov import (
    ChainMap,
    EnhancedState,
    Flavor,
    GradedComplex,
    HomologyTable,
    build_complex,
    differential_terms,
    enumerate_states,
    euler_polynomial,
    framed_euler_polynomial,
    homology,
    incidence,
    r1_chain_map,
    skein_exactness_check,
)
from khoveq.polynomials import LaurentPoly
from tests.constants import TREFOIL_GRADINGS, TREFOIL_JONES, UNLINK3_JONES

CURL = LinkDiagram([(1, 1, 2, 2)])


def test_state_gradings():
    state = EnhancedState([1, 1, -1], [1, -1, -1], writhe=3)
    assert (state.sigma, state.tau) == (1, -1)
    assert state.grading(Flavor.ORIENTED) == (1, 3)
    assert state.grading(Flavor.FRAMED) == (-1, 3)


def test_enumerate_states(unknot, trefoil):
    assert enumerate_states(unknot) == [
        EnhancedState([], [1]),
        EnhancedState([], [-1]),
    ]
    assert enumerate_states(trefoil, (0, 1)) == [EnhancedState([1, 1, 1], [-1, -1])]
    with pytest.raises(ResourceCapException):
        enumerate_states(trefoil, cap=2)


@pytest.mark.parametrize(
    "signs, terms",
    [
        ([1, 1], [EnhancedState([-1], [1])]),
        ([1, -1], [EnhancedState([-1], [-1])]),
        ([-1, 1], [EnhancedState([-1], [-1])]),
        ([-1, -1], []),
    ],
)
def test_differential_terms_merge(signs, terms):
    assert differential_terms(CURL, EnhancedState([1], signs)) == terms


def test_differential_terms_split():
    d = LinkDiagram([(1, 2, 2, 1)])
    assert d.resolve([1]).circles == ((1, 2),)
    assert differential_terms(d, EnhancedState([1], [1])) == [
        EnhancedState([-1], [1, -1]),
        EnhancedState([-1], [-1, 1]),
    ]
    assert differential_terms(d, EnhancedState([1], [-1])) == [
        EnhancedState([-1], [-1, -1])
    ]
    assert differential_terms(d, EnhancedState([-1], [1, 1])) == []


@pytest.mark.parametrize("flavor", [Flavor.ORIENTED, Flavor.FRAMED])
def test_marker_change_must_merge_or_split(flavor):
    d = LinkDiagram([(1, 2, 1, 2)])
    assert len(d.resolve([1])) == len(d.resolve([-1])) == 1
    with pytest.raises(DiagramParseException, match="crossing 1"):
        build_complex(d, flavor)


def test_incidence_matches_differential(trefoil):
    states = enumerate_states(trefoil)
    for s in states:
        expected = set(differential_terms(trefoil, s))
        found = {
            s2
            for s2 in states
            for v in range(trefoil.n)
            if incidence(trefoil, s, s2, v)
        }
        assert found == expected


def test_unknot_homology(unknot):
    h = homology(build_complex(unknot))
    assert h == HomologyTable({(0, 1): 1, (0, -1): 1})
    assert h.format_table() == "(0,1):1 (0,-1):1"
    assert str(euler_polynomial(h)) == "q+q^-1"


def test_trefoil_homology(trefoil):
    c = build_complex(trefoil)
    assert c.check_d_squared()
    h = homology(c)
    assert h == HomologyTable({key: 1 for key in TREFOIL_GRADINGS})
    assert h.format_table() == "(0,3):1 (0,1):1 (2,7):1 (2,5):1 (3,9):1 (3,7):1"
    assert str(euler_polynomial(h)) == TREFOIL_JONES
    assert c.chain_euler_polynomial() == euler_polynomial(h)


def test_unlink_homology(unlink3):
    h = homology(build_complex(unlink3))
    assert h == HomologyTable({(0, 3): 1, (0, 1): 3, (0, -1): 3, (0, -3): 1})
    assert str(euler_polynomial(h)) == UNLINK3_JONES


def test_framed_homology(unknot):
    c = build_complex(unknot, Flavor.FRAMED)
    assert c.step == (-1, 0)
    h = homology(c)
    assert h == HomologyTable({(1, -2): 1, (-1, 2): 1})
    assert framed_euler_polynomial(h, unknot.n) == LaurentPoly({2: -1, -2: -1}, "A")


def test_homology_jobs(trefoil):
    c = build_complex(trefoil, Flavor.FRAMED)
    assert homology(c, jobs=4) == homology(c)


def test_homology_table():
    h = HomologyTable({(0, 1): 1, (2, 5): 0, (2, 3): 2})
    assert (2, 5) not in h
    assert h.total_dimension() == 3
    assert h.forget(1) == HomologyTable({(0,): 1, (2,): 2})
    assert HomologyTable.from_json(h.to_json()) == h
    assert h.to_json() == [
        {"gradings": [0, 1], "dim": 1},
        {"gradings": [2, 3], "dim": 2},
    ]
    with pytest.raises(KhovEqException):
        h[(0, 0)] = -1


def test_graded_complex_shape_check():
    with pytest.raises(KhovEqException):
        GradedComplex({(0,): ["a"], (1,): ["b"]}, {(0,): F2Matrix(2, 1)}, (1,))
    c = GradedComplex({(0,): ["a"], (1,): ["b"]}, {(0,): F2Matrix(1, 1, [(0, 0)])}, (1,))
    assert homology(c) == HomologyTable()
    assert c.chain_dimensions() == HomologyTable({(0,): 1, (1,): 1})


@pytest.mark.parametrize("flavor", [Flavor.ORIENTED, Flavor.FRAMED])
@pytest.mark.parametrize("sign", [1, -1])
def test_r1_chain_map_on_unknot(unknot, flavor, sign):
    kinked = add_kink(unknot, 1, sign)
    f = r1_chain_map(build_complex(unknot, flavor), build_complex(kinked, flavor), 0)
    assert f.commutes()
    assert f.is_quasi_isomorphism()
    if flavor is Flavor.ORIENTED:
        assert f.offset == (0, 0)
    else:
        assert f.offset == (-sign, 3 * sign)


@pytest.mark.parametrize("sign", [1, -1])
def test_r1_chain_map_on_trefoil(trefoil, sign):
    kinked = add_kink(trefoil, 1, sign)
    f = r1_chain_map(build_complex(trefoil), build_complex(kinked), 3)
    assert f.commutes()
    assert f.is_quasi_isomorphism()


def test_r1_chain_map_rejects_unrelated(unknot, trefoil):
    with pytest.raises(ChainMapException):
        r1_chain_map(build_complex(unknot), build_complex(trefoil), 0)
    with pytest.raises(ChainMapException):
        r1_chain_map(
            build_complex(unknot),
            build_complex(add_kink(unknot, 1, 1), Flavor.FRAMED),
            0,
        )


@pytest.mark.parametrize("v", [0, 1, 2])
def test_skein_exactness(trefoil, v):
    report = skein_exactness_check(trefoil, v)
    assert report, report.violations


def test_skein_exactness_on_curl():
    assert skein_exactness_check(CURL, 0)


def test_poincare_polynomial(unknot):
    t, q = sp.symbols("t q")
    assert homology(build_complex(unknot)).poincare_polynomial(t, q) == q + 1 / q


def test_identity_chain_map(trefoil):
    c = build_complex(trefoil)
    identity = ChainMap(c, c, {key: F2Matrix.identity(c.dim(key)) for key in c.keys})
    assert identity.commutes()
    assert identity.compose(identity).matrices == identity.matrices
    h = homology(c)
    for key, m in identity.induced_on_homology().items():
        assert m == F2Matrix.identity(h.get(key, 0))


def test_zero_chain_map_is_not_quasi_isomorphism(trefoil):
    c = build_complex(trefoil)
    zero = ChainMap(c, c, {})
    assert zero.commutes()
    report = zero.is_quasi_isomorphism()
    assert not report
    assert len(report.violations) == 6
