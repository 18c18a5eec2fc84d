# Copyright Contributors to the khoveq project.
# SPDX-License-Identifier: MIT

"""
Homology of diagrams in the annulus.

A third grading k sums the circle signs over the circles that wind around the
puncture. The differential is the framed one with every term that changes k
removed.
"""

import logging
from typing import List, Mapping, Optional, Sequence

import sympy as sp

from khoveq.diagram import LinkDiagram
from khoveq.equivariant import Action, equivariant_homology, quotient_complex
from khoveq.exceptions import KhovEqException
from khoveq.f2linalg import F2Matrix
from khoveq.formatter import formatted
from khoveq.khovanov import (
    EnhancedState,
    Flavor,
    Grading,
    GradedComplex,
    HomologyTable,
    _assemble,
    enumerate_states,
    homology,
)

logger = logging.getLogger(__name__)

ANNULAR_STEP = (-1, 0, 0)


def annular_degree(d: LinkDiagram, state: EnhancedState) -> int:
    r = d.resolve(state.markers)
    return sum(sign for sign, essential in zip(state.signs, r.essential) if essential)


class AnnularState:
    """
    Enhanced state together with its annular degree.

    Attributes:
        underlying: The enhanced state.
        k: Sum of the signs of the essential circles.
    """

    def __init__(self, underlying: EnhancedState, k: int) -> None:
        self.underlying = underlying
        self.k = k

    @formatted
    def __repr__(self) -> str:
        return f"AnnularState({self.underlying!r}, k={self.k!r})"

    @property
    def grading(self) -> Grading:
        return self.underlying.p_fr, self.underlying.q_fr, self.k


class AnnularComplex(GradedComplex):
    """
    Framed complex graded by (p, q, k).

    Attributes:
        dropped_terms: Number of framed differential terms removed because
            they change k.
    """

    def __init__(
        self,
        basis: Mapping[Grading, Sequence[EnhancedState]],
        differentials: Mapping[Grading, F2Matrix],
        diagram: LinkDiagram,
        dropped_terms: int = 0,
    ) -> None:
        super().__init__(basis, differentials, ANNULAR_STEP, diagram, Flavor.FRAMED)
        self.dropped_terms = dropped_terms

    @formatted
    def __repr__(self) -> str:
        sizes = {key: len(v) for key, v in self.basis.items()}
        return f"AnnularComplex({sizes!r}, dropped_terms={self.dropped_terms!r})"

    def euler_characteristic(self) -> sp.Expr:
        """(-1)^n Σ (-1)^p A^q t^k dim C_{p,q,k}."""
        A, t = sp.symbols("A t")
        sign = -1 if self.diagram.n % 2 else 1  # type: ignore[union-attr]
        return sp.expand(
            sign
            * sp.Add(
                *(
                    (-1) ** (p % 2) * len(states) * A**q * t**k
                    for (p, q, k), states in self.basis.items()
                )
            )
        )


def _require_rays(d: LinkDiagram) -> None:
    if not d.annular:
        raise KhovEqException("Diagram carries no puncture ray data")


def annular_states(d: LinkDiagram, cap: Optional[int] = None) -> List[AnnularState]:
    _require_rays(d)
    return [
        AnnularState(state, annular_degree(d, state))
        for state in enumerate_states(d, None, Flavor.FRAMED, cap)
    ]


def build_annular_complex(d: LinkDiagram, cap: Optional[int] = None) -> AnnularComplex:
    """
    Raises:
        KhovEqException: If the diagram has no ray data.
        ResourceCapException: If the diagram has more crossings than `cap`.
    """
    _require_rays(d)
    states = enumerate_states(d, None, Flavor.FRAMED, cap)
    basis, differentials, dropped = _assemble(
        d,
        states,
        lambda s: (s.p_fr, s.q_fr, annular_degree(d, s)),
        ANNULAR_STEP,
        restrict=True,
    )
    logger.debug(
        f"Built annular complex: {len(states)} states, {dropped} k-changing terms dropped"
    )
    return AnnularComplex(basis, differentials, d, dropped)


def annular_homology(c: AnnularComplex, jobs: int = 1) -> HomologyTable:
    return homology(c, jobs)


def equivariant_annular_homology(
    d_tilde: LinkDiagram, a: Action, cap: Optional[int] = None, jobs: int = 1
) -> HomologyTable:
    """
    Homology of the orbit quotient of the annular complex.

    Raises:
        EvenOrderException: If p is even and not explicitly allowed.
        EquivarianceException: If the action does not preserve k or does not
            commute with d.
    """
    return equivariant_homology(quotient_complex(build_annular_complex(d_tilde, cap), a), jobs)
