# Copyright Contributors to the khoveq project.
# SPDX-License-Identifier: MIT

"""
Brute-force recomputations used to cross-check the main pipeline.

Nothing here goes through the resolution tracing or the packed elimination:
circles are connected components of networkx graphs, ranks come from galois
and polynomials are assembled in sympy.
"""

import collections
import functools
import itertools
import logging
from typing import (
    Callable,
    Dict,
    FrozenSet,
    Hashable,
    List,
    Mapping,
    Optional,
    Protocol,
    Sequence,
    Tuple,
    Union,
)

import galois
import networkx as nx
import numpy as np
import sympy as sp

from khoveq.constants import DEFAULT_CROSSING_CAP, DEFAULT_DENSE_CAP
from khoveq.diagram import LinkDiagram
from khoveq.exceptions import ActionException, KhovEqException, ResourceCapException
from khoveq.khovanov import GradedComplex, HomologyTable
from khoveq.polynomials import LaurentPoly

logger = logging.getLogger(__name__)

GF2 = galois.GF(2)

A = sp.Symbol("A")
T = sp.Symbol("t")
LAMBDA = sp.Symbol("lambda")

# smoothing pairs of a crossing record, per marker
_SMOOTHINGS = {1: ((0, 1), (2, 3)), -1: ((0, 3), (1, 2))}


class _ToNetworkx(Protocol):
    def to_networkx(self) -> nx.Graph:
        ...


def _check_cap(d: LinkDiagram, cap: Optional[int]) -> None:
    cap = DEFAULT_CROSSING_CAP if cap is None else cap
    if d.n > cap:
        raise ResourceCapException(f"Diagram has {d.n} crossings, the cap is {cap}")


def _circle_count(d: LinkDiagram, markers: Sequence[int]) -> int:
    graph = nx.Graph()
    graph.add_nodes_from(label for record in d.crossings for label in record)
    for record, marker in zip(d.crossings, markers):
        for s, t in _SMOOTHINGS[marker]:
            graph.add_edge(record[s], record[t])
    return nx.number_connected_components(graph) + len(d.loops)


def bracket_statesum(d: LinkDiagram, cap: Optional[int] = None) -> LaurentPoly:
    """
    ⟨D⟩ = Σ over markers of (-A)^σ (-A² - A⁻²)^(circles).

    Raises:
        ResourceCapException: If the diagram has more crossings than `cap`.
    """
    _check_cap(d, cap)
    logger.debug(f"Bracket state sum over {2 ** d.n} markers")
    counts: Dict[Tuple[int, int], int] = collections.Counter()
    for markers in itertools.product((1, -1), repeat=d.n):
        counts[sum(markers), _circle_count(d, markers)] += 1
    delta = -(A**2) - A**-2
    expression = sp.Add(
        *(n * (-A) ** sigma * delta**circles for (sigma, circles), n in counts.items())
    )
    return LaurentPoly.from_sympy(sp.expand(expression), A)


def jones_from_bracket(b: LaurentPoly, w: int) -> LaurentPoly:
    """
    Multiplies by (-A)^(-3w) and reads A^(-2) as -q, times (-1)^w.

    Raises:
        KhovEqException: If an odd power of A survives the normalization.
    """
    normalized = LaurentPoly.from_sympy(sp.expand(b.to_sympy(A) * (-A) ** (-3 * w)), A)
    coefficients = {}
    for exponent, coefficient in normalized.terms():
        if exponent % 2:
            raise KhovEqException(f"Odd power A^{exponent} in a normalized bracket")
        j = -exponent // 2
        coefficients[j] = coefficient * (-1) ** ((j + w) % 2)
    return LaurentPoly(coefficients, "q")


def _edge_set(graph: nx.Graph) -> FrozenSet[FrozenSet[Hashable]]:
    return frozenset(frozenset(e) for e in graph.edges)


@functools.lru_cache(maxsize=None)
def _delcon(nodes: FrozenSet[Hashable], edges: FrozenSet[FrozenSet[Hashable]]) -> sp.Expr:
    if not edges:
        return LAMBDA ** len(nodes)
    edge = min(edges, key=sorted)
    u, v = sorted(edge)
    deleted = edges - {edge}
    graph = nx.Graph()
    graph.add_nodes_from(nodes)
    graph.add_edges_from(tuple(e) for e in deleted)
    contracted = nx.contracted_nodes(graph, u, v, self_loops=False)
    return sp.expand(
        _delcon(nodes, deleted)
        - _delcon(frozenset(contracted.nodes), _edge_set(contracted))
    )


def chromatic_delcon(g: Union[nx.Graph, "_ToNetworkx"]) -> sp.Expr:
    """
    Chromatic polynomial in λ by deletion and contraction.

    Accepts a networkx graph or anything with a `to_networkx()` method.
    """
    graph = g if isinstance(g, nx.Graph) else g.to_networkx()
    return _delcon(frozenset(graph.nodes), _edge_set(graph))


def _dense_rank(rows: int, cols: int, entries: Sequence[Tuple[int, int]]) -> int:
    if not rows or not cols:
        return 0
    dense = np.zeros((rows, cols), dtype=np.uint8)
    for r, c in entries:
        dense[r, c] ^= 1
    return int(np.linalg.matrix_rank(GF2(dense)))


def dense_homology(c: GradedComplex, cap: Optional[int] = None) -> HomologyTable:
    """
    Homology through dense matrices over galois.GF(2).

    Raises:
        ResourceCapException: If the total chain dimension exceeds `cap`.
    """
    cap = DEFAULT_DENSE_CAP if cap is None else cap
    total = sum(c.dim(key) for key in c.keys)
    if total > cap:
        raise ResourceCapException(f"Complex has dimension {total}, the dense cap is {cap}")
    ranks = {}
    for key in c.keys:
        m = c.differential(key)
        ranks[key] = _dense_rank(m.rows, m.cols, sorted(m.entries))
    table = HomologyTable()
    for key in c.keys:
        table[key] = c.dim(key) - ranks[key] - ranks.get(c.source(key), 0)
    return table


def burnside_orbit_count(
    states: Mapping[Hashable, Sequence[Hashable]],
    act: Callable[[Hashable], Hashable],
    p: int,
) -> Dict[Hashable, int]:
    """
    (1/p) Σ_k |Fix(φ^k)| per grading.

    Raises:
        ActionException: If a count is not an integer.
    """
    result = {}
    for key, elements in states.items():
        fixed = 0
        for element in elements:
            image = element
            for _ in range(p):
                if image == element:
                    fixed += 1
                image = act(image)
        if fixed % p:
            raise ActionException(f"Fixed point count {fixed} at {key} is not divisible by {p}")
        result[key] = fixed // p
    return result


def _endpoint_graph(d: LinkDiagram, markers: Sequence[int]) -> nx.MultiGraph:
    endpoints: Dict[int, List[Tuple[int, int]]] = collections.defaultdict(list)
    for c, record in enumerate(d.crossings):
        for s, label in enumerate(record):
            endpoints[label].append((c, s))
    graph = nx.MultiGraph()
    for label, (first, second) in endpoints.items():
        graph.add_edge(first, second, arc=label)
    for c, marker in enumerate(markers):
        for s, t in _SMOOTHINGS[marker]:
            graph.add_edge((c, s), (c, t), arc=None)
    return graph


def _winding(d: LinkDiagram, graph: nx.MultiGraph, component: set) -> int:
    heads = d.heads
    total = 0
    for u, v, key in nx.find_cycle(graph.subgraph(component)):
        arc = graph.edges[u, v, key]["arc"]
        if arc is None:
            continue
        count = d.rays.get(arc, 0)  # type: ignore[union-attr]
        total += count if heads[arc] == v else -count
    return total


def annular_bracket_statesum(d: LinkDiagram, cap: Optional[int] = None) -> sp.Expr:
    """
    Σ over markers of (-A)^σ times -A² - A⁻² per trivial circle and
    -(A⁻² t + A² t⁻¹) per circle winding around the puncture.

    Raises:
        KhovEqException: If the diagram has no ray data.
        ResourceCapException: If the diagram has more crossings than `cap`.
    """
    if not d.annular:
        raise KhovEqException("Diagram carries no puncture ray data")
    _check_cap(d, cap)
    trivial = -(A**2) - A**-2
    essential = -(A**-2 * T + A**2 / T)
    terms = []
    for markers in itertools.product((1, -1), repeat=d.n):
        graph = _endpoint_graph(d, markers)
        windings = [_winding(d, graph, comp) for comp in nx.connected_components(graph)]
        windings.extend(d.rays.get(x, 0) for x in d.loops)  # type: ignore[union-attr]
        factor = sp.Mul(*(essential if w else trivial for w in windings))
        terms.append((-A) ** sum(markers) * factor)
    return sp.expand(sp.Add(*terms))
