# Copyright Contributors to the khoveq project.
# SPDX-License-Identifier: MIT

"""
Quotient of a chain complex by a cyclic group acting through basis permutations.

Any object with an order `p`, an `allow_even` flag and an `act(element)` method
returning the image of a basis element drives the construction, so the same
code serves diagram symmetries, their annular lifts and graph automorphisms.
"""

import logging
from typing import Dict, List, Mapping, Optional, Protocol, Sequence, Tuple

from khoveq.diagram import LinkDiagram
from khoveq.exceptions import EquivarianceException, EvenOrderException
from khoveq.f2linalg import F2Matrix, image, kernel, matrix_of_map_on_quotient, rank
from khoveq.formatter import formatted
from khoveq.khovanov import (
    ChainMap,
    Flavor,
    Grading,
    GradedComplex,
    HomologyTable,
    build_complex,
    homology,
)
from khoveq.polynomials import LaurentPoly
from khoveq.utils import CheckReport

logger = logging.getLogger(__name__)


class Action(Protocol):
    p: int
    allow_even: bool

    def act(self, element):  # type: ignore[no-untyped-def]
        ...


def _check_order(a: Action) -> None:
    if a.p % 2 == 0 and not a.allow_even:
        raise EvenOrderException(
            f"Group order {a.p} is even, the comparison theorems assume odd order"
        )


def _basis_permutations(c: GradedComplex, a: Action) -> Dict[Grading, List[int]]:
    """
    Index of the image of every basis element within its grading.

    Raises:
        EquivarianceException: If an image is not a basis element of the same grading.
    """
    permutations = {}
    for key, elements in c.basis.items():
        index = c.index[key]
        perm = []
        for element in elements:
            target = a.act(element)
            if target not in index:
                raise EquivarianceException(
                    f"Action moves {element!r} out of grading {key}"
                )
            perm.append(index[target])
        if len(set(perm)) != len(perm):
            raise EquivarianceException(f"Action is not injective on grading {key}")
        permutations[key] = perm
    return permutations


def check_equivariance(c: GradedComplex, a: Action) -> CheckReport:
    """
    Checks that the action permutes every grading, has order dividing p and
    commutes with the differential.
    """
    report = CheckReport("equivariance")
    try:
        permutations = _basis_permutations(c, a)
    except EquivarianceException as e:
        report.add(str(e))
        return report
    matrices = {key: F2Matrix.permutation(perm) for key, perm in permutations.items()}
    for key, perm in permutations.items():
        power = list(range(len(perm)))
        for _ in range(a.p):
            power = [perm[j] for j in power]
        if power != list(range(len(perm))):
            report.add(f"Action does not have order dividing {a.p} on grading {key}")
        target = c.target(key)
        phi_target = matrices.get(target, F2Matrix.identity(0))
        if c.differential(key) @ matrices[key] != phi_target @ c.differential(key):
            report.add(f"Action does not commute with d on grading {key}")
    return report


class OrbitBasis:
    """
    Orbits of the action on the basis of every grading.

    Each orbit lists basis indices as S, φ(S), φ²(S), ... starting from its
    smallest index, which is the representative; orbits are ordered by
    representative.
    """

    def __init__(self, orbits: Mapping[Grading, Sequence[Sequence[int]]]) -> None:
        self.orbits = {key: [tuple(o) for o in v] for key, v in orbits.items()}
        self.class_of = {
            key: {j: n for n, orbit in enumerate(v) for j in orbit}
            for key, v in self.orbits.items()
        }

    @formatted
    def __repr__(self) -> str:
        return f"OrbitBasis({self.orbits!r})"

    @classmethod
    def from_permutations(cls, permutations: Mapping[Grading, Sequence[int]]) -> "OrbitBasis":
        orbits = {}
        for key, perm in permutations.items():
            seen = set()
            key_orbits = []
            for start in range(len(perm)):
                if start in seen:
                    continue
                orbit = [start]
                j = perm[start]
                while j != start:
                    orbit.append(j)
                    j = perm[j]
                seen.update(orbit)
                key_orbits.append(orbit)
            orbits[key] = key_orbits
        return cls(orbits)

    def representatives(self, key: Grading) -> List[int]:
        return [orbit[0] for orbit in self.orbits.get(key, [])]

    def counts(self) -> HomologyTable:
        return HomologyTable({key: len(v) for key, v in self.orbits.items()})


class EquivariantComplex:
    """
    Orbit quotient of a complex.

    Attributes:
        underlying: Complex acted upon.
        action: The acting group generator.
        orbit_basis: Orbits per grading.
        quotient: Complex spanned by the orbit classes.
        projections: Matrix of the quotient map per grading.
    """

    def __init__(
        self,
        underlying: GradedComplex,
        action: Action,
        orbit_basis: OrbitBasis,
        quotient: GradedComplex,
        projections: Mapping[Grading, F2Matrix],
    ) -> None:
        self.underlying = underlying
        self.action = action
        self.orbit_basis = orbit_basis
        self.quotient = quotient
        self.projections = dict(projections)

    @formatted
    def __repr__(self) -> str:
        return f"EquivariantComplex(p={self.action.p!r}, quotient={self.quotient!r})"

    @property
    def quotient_differentials(self) -> Dict[Grading, F2Matrix]:
        return self.quotient.differentials


def quotient_complex(c: GradedComplex, a: Action) -> EquivariantComplex:
    """
    Builds the complex of orbit classes.

    The differential of a class is the projection of d applied to its
    representative; coefficients of states in one orbit add up mod 2.

    Raises:
        EvenOrderException: If p is even and not explicitly allowed.
        EquivarianceException: If the action does not commute with d.
    """
    _check_order(a)
    report = check_equivariance(c, a)
    if not report:
        raise EquivarianceException("; ".join(report.violations))
    orbit_basis = OrbitBasis.from_permutations(_basis_permutations(c, a))
    basis = {
        key: [c.basis[key][j] for j in orbit_basis.representatives(key)]
        for key in c.keys
    }
    projections = {
        key: F2Matrix(
            len(orbit_basis.orbits[key]),
            c.dim(key),
            ((orbit_basis.class_of[key][j], j) for j in range(c.dim(key))),
        )
        for key in c.keys
    }
    differentials = {}
    for key in c.keys:
        target = c.target(key)
        by_column: Dict[int, List[int]] = {}
        for row, col in c.differential(key).entries:
            by_column.setdefault(col, []).append(row)
        entries = [
            (orbit_basis.class_of[target][row], n)
            for n, rep in enumerate(orbit_basis.representatives(key))
            for row in by_column.get(rep, ())
        ]
        differentials[key] = F2Matrix(len(basis.get(target, ())), len(basis[key]), entries)
    quotient = GradedComplex(basis, differentials, c.step, c.diagram, c.flavor)
    logger.debug(
        f"Quotient by Z/{a.p}: {sum(c.dim(k) for k in c.keys)} states in "
        f"{sum(quotient.dim(k) for k in quotient.keys)} orbits"
    )
    return EquivariantComplex(c, a, orbit_basis, quotient, projections)


def equivariant_homology(e: EquivariantComplex, jobs: int = 1) -> HomologyTable:
    return homology(e.quotient, jobs)


def equivariant_jones(h: HomologyTable) -> LaurentPoly:
    """Σ (-1)^i q^j dim H_G^{i,j}."""
    return h.euler_polynomial("q")


def transfer_and_projection(e: EquivariantComplex) -> Tuple[ChainMap, ChainMap]:
    """
    Transfer t and projection π.

    t sends a class to the sum of φ^k(S) over k = 0..p-1, which is the orbit
    sum when p / |orbit| is odd and zero otherwise; π sends a state to its class.
    """
    c, q = e.underlying, e.quotient
    transfer = {}
    for key in q.keys:
        entries = [
            (j, n)
            for n, orbit in enumerate(e.orbit_basis.orbits[key])
            if (e.action.p // len(orbit)) % 2
            for j in orbit
        ]
        transfer[key] = F2Matrix(c.dim(key), q.dim(key), entries)
    return ChainMap(q, c, transfer), ChainMap(c, q, e.projections)


def check_transfer(e: EquivariantComplex) -> CheckReport:
    """t and π are chain maps and π∘t is the identity on every grading."""
    report = CheckReport("transfer", informational=e.action.p % 2 == 0)
    t, pi = transfer_and_projection(e)
    report.merge(t.commutes())
    report.merge(pi.commutes())
    composite = pi.compose(t)
    for key in e.quotient.keys:
        if composite.matrix(key) != F2Matrix.identity(e.quotient.dim(key)):
            report.add(f"π∘t is not the identity on {key}")
    if report.informational and not report.passed:
        logger.warning(f"{report} for a group of even order {e.action.p}")
    return report


def induced_action_on_homology(c: GradedComplex, a: Action) -> Dict[Grading, F2Matrix]:
    """
    Matrix of φ_* on every homology group, in the coset representative basis.

    Raises:
        EquivarianceException: If the action does not commute with d.
    """
    report = check_equivariance(c, a)
    if not report:
        raise EquivarianceException("; ".join(report.violations))
    result = {}
    for key, perm in _basis_permutations(c, a).items():
        result[key] = matrix_of_map_on_quotient(
            F2Matrix.permutation(perm),
            kernel(c.differential(key)),
            image(c.incoming(key)),
        )
    return result


def fixed_subspace_dims(phi_star: Mapping[Grading, F2Matrix]) -> HomologyTable:
    """dim ker(φ_* - id) per grading."""
    return HomologyTable(
        {
            key: m.cols - rank(m + F2Matrix.identity(m.cols))
            for key, m in phi_star.items()
        }
    )


def action_is_trivial(phi_star: Mapping[Grading, F2Matrix]) -> bool:
    return all(m == F2Matrix.identity(m.cols) for m in phi_star.values())


def fixed_subspace_check(
    c: GradedComplex,
    a: Action,
    name: str = "fixed subspace",
    jobs: int = 1,
) -> CheckReport:
    """
    Compares the equivariant homology with the fixed subspace of the induced
    action, grading by grading.

    Raises:
        EvenOrderException: If p is even and not explicitly allowed.
    """
    _check_order(a)
    report = CheckReport(name, informational=a.p % 2 == 0)
    equivariant = equivariant_homology(quotient_complex(c, a), jobs)
    fixed = fixed_subspace_dims(induced_action_on_homology(c, a))
    for key in sorted(set(equivariant) | set(fixed)):
        if equivariant.get(key, 0) != fixed.get(key, 0):
            report.add(
                f"{key}: equivariant dimension {equivariant.get(key, 0)}, "
                f"fixed dimension {fixed.get(key, 0)}"
            )
    if report.informational and not report.passed:
        logger.warning(f"{report} for a group of even order {a.p}")
    return report


def compare_theorem1(
    d_tilde: LinkDiagram,
    a: Action,
    flavor: Flavor = Flavor.ORIENTED,
    cap: Optional[int] = None,
    jobs: int = 1,
    c: Optional[GradedComplex] = None,
) -> CheckReport:
    """
    Equivariant homology of a symmetric diagram against the fixed points of
    the induced action on its homology.

    Args:
        c: Complex of `d_tilde` in the given flavor, built when omitted.

    Raises:
        EvenOrderException: If p is even and not explicitly allowed.
    """
    _check_order(a)
    if c is None:
        c = build_complex(d_tilde, flavor, cap)
    return fixed_subspace_check(c, a, "Theorem 1", jobs)


def orbit_counts(c: GradedComplex, a: Action) -> HomologyTable:
    """Number of orbits per grading, without building the quotient."""
    return OrbitBasis.from_permutations(_basis_permutations(c, a)).counts()

