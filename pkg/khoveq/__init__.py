# Copyright Contributors to the khoveq project.
# SPDX-License-Identifier: MIT

"""
Khovanov homology over GF(2) of links with a cyclic symmetry, its equivariant
and annular variants, and chromatic graph homology
"""

from importlib.metadata import PackageNotFoundError, distribution

from khoveq.annular import AnnularComplex
from khoveq.chromatic import Graph, GraphAutomorphism
from khoveq.diagram import CyclicAction, LinkDiagram, Tangle
from khoveq.equivariant import EquivariantComplex
from khoveq.khovanov import ChainMap, EnhancedState, Flavor, GradedComplex, HomologyTable
from khoveq.polynomials import LaurentPoly

try:
    __version__ = distribution(__name__).version
except PackageNotFoundError:
    # package is not installed
    pass

__all__ = [
    AnnularComplex.__name__,
    ChainMap.__name__,
    CyclicAction.__name__,
    EnhancedState.__name__,
    EquivariantComplex.__name__,
    Flavor.__name__,
    GradedComplex.__name__,
    Graph.__name__,
    GraphAutomorphism.__name__,
    HomologyTable.__name__,
    LaurentPoly.__name__,
    LinkDiagram.__name__,
    Tangle.__name__,
]
