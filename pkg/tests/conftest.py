# Copyright Contributors to the khoveq project.
# SPDX-License-Identifier: MIT

import pytest

from khoveq.chromatic import parse_graph
from khoveq.diagram import parse_diagram
from tests.constants import (
    ANNULAR_KINK,
    ANNULAR_Z3,
    TREFOIL_SYM,
    TRIANGLE_GRAPH,
    UNKNOT,
    UNLINK3,
)


@pytest.fixture(scope="session")
def unknot():
    return parse_diagram(UNKNOT.read_text())


@pytest.fixture(scope="session")
def unlink3():
    return parse_diagram(UNLINK3.read_text())


@pytest.fixture(scope="session")
def trefoil():
    return parse_diagram(TREFOIL_SYM.read_text())


@pytest.fixture(scope="session")
def annular_kink():
    return parse_diagram(ANNULAR_KINK.read_text())


@pytest.fixture(scope="session")
def annular_z3():
    return parse_diagram(ANNULAR_Z3.read_text())


@pytest.fixture(scope="session")
def triangle():
    return parse_graph(TRIANGLE_GRAPH.read_text())
