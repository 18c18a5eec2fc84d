# Copyright Contributors to the khoveq project.
# SPDX-License-Identifier: MIT

import pytest
from flexmock import flexmock

from khoveq import equivariant
from khoveq.diagram import CyclicAction, parse_diagram
from khoveq.equivariant import (
    OrbitBasis,
    action_is_trivial,
    check_equivariance,
    check_transfer,
    compare_theorem1,
    equivariant_homology,
    equivariant_jones,
    fixed_subspace_check,
    fixed_subspace_dims,
    induced_action_on_homology,
    orbit_counts,
    quotient_complex,
    transfer_and_projection,
)
from khoveq.exceptions import EquivarianceException, EvenOrderException
from khoveq.f2linalg import F2Matrix
from khoveq.khovanov import GradedComplex, HomologyTable, build_complex, homology
from tests.constants import TREFOIL_GRADINGS, UNLINK2_P2, UNLINK3_EQUIVARIANT_JONES


class Swap:
    """Order two action on letters."""

    def __init__(self, images, p=2, allow_even=True):
        self.images = images
        self.p = p
        self.allow_even = allow_even

    def act(self, element):
        return self.images.get(element, element)


def two_term_complex():
    # d(a) = c, d(b) = 0
    return GradedComplex(
        {(0,): ["a", "b"], (1,): ["c"]}, {(0,): F2Matrix(1, 2, [(0, 0)])}, (1,)
    )


def test_orbit_basis():
    orbits = OrbitBasis.from_permutations({(0,): [1, 2, 0, 3]})
    assert orbits.orbits == {(0,): [(0, 1, 2), (3,)]}
    assert orbits.representatives((0,)) == [0, 3]
    assert orbits.class_of[(0,)] == {0: 0, 1: 0, 2: 0, 3: 1}
    assert orbits.counts() == HomologyTable({(0,): 2})
    assert orbits.representatives((5,)) == []


def test_trefoil_equivariant(trefoil):
    c = build_complex(trefoil)
    a = trefoil.action()
    assert check_equivariance(c, a)
    e = quotient_complex(c, a)
    assert e.quotient.check_d_squared()
    h = equivariant_homology(e)
    assert h == HomologyTable({key: 1 for key in TREFOIL_GRADINGS})
    assert str(equivariant_jones(h)) == "-q^9+q^5+q^3+q"
    assert action_is_trivial(induced_action_on_homology(c, a))
    assert compare_theorem1(trefoil, a)


def test_unlink_equivariant(unlink3):
    c = build_complex(unlink3)
    a = unlink3.action()
    h = equivariant_homology(quotient_complex(c, a))
    assert h == HomologyTable({(0, 3): 1, (0, 1): 1, (0, -1): 1, (0, -3): 1})
    assert str(equivariant_jones(h)) == UNLINK3_EQUIVARIANT_JONES
    phi = induced_action_on_homology(c, a)
    assert not action_is_trivial(phi)
    assert phi[(0, 1)] @ phi[(0, 1)] @ phi[(0, 1)] == F2Matrix.identity(3)
    assert fixed_subspace_dims(phi) == h
    assert orbit_counts(c, a) == h
    report = fixed_subspace_check(c, a)
    assert report
    assert str(report) == "fixed subspace: PASS"


def test_transfer_and_projection(trefoil):
    e = quotient_complex(build_complex(trefoil), trefoil.action())
    t, pi = transfer_and_projection(e)
    assert t.commutes()
    assert pi.commutes()
    assert check_transfer(e)


def test_identity_action(trefoil):
    c = build_complex(trefoil)
    e = quotient_complex(c, CyclicAction.identity(trefoil))
    assert equivariant_homology(e) == homology(c)
    assert check_transfer(e)


def test_even_order_is_informational():
    d = parse_diagram(UNLINK2_P2.read_text())
    a = d.action(allow_even=True)
    c = build_complex(d)
    transfer = check_transfer(quotient_complex(c, a))
    assert transfer.informational
    assert not transfer
    report = compare_theorem1(d, a)
    assert report.informational
    assert report


def test_even_order_without_override():
    with pytest.raises(EvenOrderException):
        quotient_complex(two_term_complex(), Swap({}, allow_even=False))


def test_action_not_commuting():
    c = two_term_complex()
    a = Swap({"a": "b", "b": "a"})
    report = check_equivariance(c, a)
    assert not report
    assert report.violations == ["Action does not commute with d on grading (0,)"]
    with pytest.raises(EquivarianceException):
        quotient_complex(c, a)


def test_action_leaving_grading():
    report = check_equivariance(two_term_complex(), Swap({"a": "c", "c": "a"}))
    assert not report
    assert "out of grading (0,)" in report.violations[0]


def test_action_of_wrong_order():
    c = GradedComplex({(0,): ["a", "b", "c"]}, {}, (1,))
    report = check_equivariance(c, Swap({"a": "b", "b": "c", "c": "a"}))
    assert report.violations == ["Action does not have order dividing 2 on grading (0,)"]


def test_fixed_subspace_check_reports_mismatch(unlink3):
    flexmock(equivariant).should_receive("equivariant_homology").and_return(
        HomologyTable({(0, 1): 3})
    ).once()
    report = fixed_subspace_check(build_complex(unlink3), unlink3.action(), "mocked")
    assert not report
    assert "(0, 1): equivariant dimension 3, fixed dimension 1" in report.violations


def test_compare_reuses_given_complex(trefoil):
    c = build_complex(trefoil)
    flexmock(equivariant).should_receive("build_complex").never()
    assert compare_theorem1(trefoil, trefoil.action(), c=c)
