# Copyright Contributors to the khoveq project.
# SPDX-License-Identifier: MIT

"""
Chromatic graph homology over GF(2).

An enhanced state is a set of edges together with a label, 1 or x, on every
connected component of the spanning subgraph. i counts edges, j counts x labels.
"""

import collections
import itertools
import logging
import re
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

import networkx as nx
import sympy as sp

from khoveq.constants import DEFAULT_EDGE_CAP
from khoveq.equivariant import (
    equivariant_homology,
    fixed_subspace_check,
    quotient_complex,
)
from khoveq.exceptions import (
    ActionException,
    EvenOrderException,
    GraphParseException,
    ResourceCapException,
)
from khoveq.f2linalg import F2Matrix
from khoveq.formatter import formatted
from khoveq.khovanov import Grading, GradedComplex, HomologyTable, homology
from khoveq.oracles import LAMBDA, chromatic_delcon
from khoveq.utils import CheckReport, UnionFind

logger = logging.getLogger(__name__)

Edge = Tuple[int, int]

# label values
ONE = 0
X = 1

GRAPH_STEP = (1, 0)


class Graph:
    """
    Simple graph on vertices 0..n-1.

    Attributes:
        vertices: Number of vertices.
        edges: Edges as ordered pairs (u, v) with u < v, sorted.
        automorphism: Image of every vertex, if a symmetry is declared.
        p: Declared order of the automorphism.
    """

    def __init__(
        self,
        vertices: int,
        edges: Iterable[Sequence[int]] = (),
        automorphism: Optional[Sequence[int]] = None,
        p: Optional[int] = None,
    ) -> None:
        """
        Raises:
            GraphParseException: If an edge is a loop, repeated or refers to a
                missing vertex.
        """
        if vertices < 0:
            raise GraphParseException(f"Negative vertex count {vertices}")
        normalized = []
        for u, v in edges:
            if u == v:
                raise GraphParseException(f"Loop at vertex {u + 1}")
            if not (0 <= u < vertices and 0 <= v < vertices):
                raise GraphParseException(f"Edge {(u + 1, v + 1)} refers to a missing vertex")
            normalized.append((min(u, v), max(u, v)))
        if len(set(normalized)) != len(normalized):
            raise GraphParseException("Repeated edge")
        self.vertices = vertices
        self.edges: Tuple[Edge, ...] = tuple(sorted(normalized))
        self.edge_index = {e: k for k, e in enumerate(self.edges)}
        self.automorphism = tuple(automorphism) if automorphism is not None else None
        self.p = p

    def _key(self) -> tuple:
        return self.vertices, self.edges

    def __hash__(self) -> int:
        return hash(self._key())

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Graph):
            return NotImplemented
        return self._key() == other._key()

    @formatted
    def __repr__(self) -> str:
        return f"Graph({self.vertices!r}, {list(self.edges)!r}, p={self.p!r})"

    def __str__(self) -> str:
        lines = [f"V {self.vertices}"]
        lines.extend(f"E {u + 1} {v + 1}" for u, v in self.edges)
        if self.automorphism is not None:
            images = ", ".join(
                f"{v + 1}->{w + 1}" for v, w in enumerate(self.automorphism) if v != w
            )
            lines.append(f"AUT {self.p}: {images}")
        return "\n".join(lines) + "\n"

    def components(self, edges: Iterable[int]) -> List[List[int]]:
        """Vertex sets of the spanning subgraph on the given edges, by smallest vertex."""
        uf = UnionFind(range(self.vertices))
        for k in edges:
            uf.union(*self.edges[k])
        return uf.classes()

    def to_networkx(self) -> nx.Graph:
        graph = nx.Graph()
        graph.add_nodes_from(range(self.vertices))
        graph.add_edges_from(self.edges)
        return graph

    def action(self, allow_even: bool = False) -> "GraphAutomorphism":
        """
        Raises:
            ActionException: If no automorphism is declared or it is invalid.
        """
        if self.automorphism is None or self.p is None:
            raise ActionException("Graph declares no automorphism")
        return GraphAutomorphism(self, self.automorphism, self.p, allow_even)


class GraphEnhancedState(collections.abc.Hashable):
    """
    Attributes:
        edges: Indices of the chosen edges, sorted.
        labels: ONE or X per component of the spanning subgraph.
    """

    def __init__(self, edges: Iterable[int], labels: Sequence[int]) -> None:
        self.edges = tuple(sorted(edges))
        self.labels = tuple(labels)

    def _key(self) -> tuple:
        return self.edges, self.labels

    def __hash__(self) -> int:
        return hash(self._key())

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, GraphEnhancedState):
            return NotImplemented
        return self._key() == other._key()

    @formatted
    def __repr__(self) -> str:
        labels = "".join("x" if label == X else "1" for label in self.labels)
        return f"GraphEnhancedState({list(self.edges)!r}, {labels!r})"

    @property
    def i(self) -> int:
        return len(self.edges)

    @property
    def j(self) -> int:
        return sum(self.labels)

    @property
    def grading(self) -> Grading:
        return self.i, self.j


class GraphAutomorphism:
    """
    Vertex permutation of a graph generating an action of Z/p.

    Attributes:
        graph: Graph acted upon.
        perm: Image of every vertex.
        p: Group order.
        allow_even: Whether an even order was explicitly permitted.
    """

    def __init__(
        self, graph: Graph, perm: Sequence[int], p: int, allow_even: bool = False
    ) -> None:
        """
        Raises:
            ActionException: If the permutation does not preserve edges or its
                order does not divide p.
            EvenOrderException: If p is even and not explicitly allowed.
        """
        if p < 1:
            raise ActionException(f"Group order {p} is not positive")
        if p % 2 == 0:
            if not allow_even:
                raise EvenOrderException(
                    f"Group order {p} is even, the comparison theorems assume odd order"
                )
            logger.warning(f"Using a group of even order {p}, theorem checks are informational")
        self.graph = graph
        self.perm = tuple(perm)
        self.p = p
        self.allow_even = allow_even
        if sorted(self.perm) != list(range(graph.vertices)):
            raise ActionException("Automorphism is not a permutation of the vertices")
        self.edge_perm = []
        for u, v in graph.edges:
            image = (min(self.perm[u], self.perm[v]), max(self.perm[u], self.perm[v]))
            if image not in graph.edge_index:
                raise ActionException(f"Edge {(u + 1, v + 1)} is not mapped onto an edge")
            self.edge_perm.append(graph.edge_index[image])
        power = list(range(graph.vertices))
        for _ in range(p):
            power = [self.perm[v] for v in power]
        if power != list(range(graph.vertices)):
            raise ActionException(f"Automorphism does not have order dividing {p}")

    @formatted
    def __repr__(self) -> str:
        return f"GraphAutomorphism({list(self.perm)!r}, p={self.p!r})"

    def act(self, state: GraphEnhancedState) -> GraphEnhancedState:
        edges = [self.edge_perm[k] for k in state.edges]
        target = {
            v: n for n, comp in enumerate(self.graph.components(edges)) for v in comp
        }
        labels = [ONE] * len(set(target.values()))
        for comp, label in zip(self.graph.components(state.edges), state.labels):
            labels[target[self.perm[comp[0]]]] = label
        return GraphEnhancedState(edges, labels)


def _check_cap(g: Graph, cap: Optional[int]) -> None:
    cap = DEFAULT_EDGE_CAP if cap is None else cap
    if len(g.edges) > cap:
        raise ResourceCapException(f"Graph has {len(g.edges)} edges, the cap is {cap}")


def graph_states(g: Graph, cap: Optional[int] = None) -> List[GraphEnhancedState]:
    """Enhanced states by edge count, then edge subset, then labels with 1 before x."""
    _check_cap(g, cap)
    states = []
    for size in range(len(g.edges) + 1):
        for subset in itertools.combinations(range(len(g.edges)), size):
            count = len(g.components(subset))
            for labels in itertools.product((ONE, X), repeat=count):
                states.append(GraphEnhancedState(subset, labels))
    return states


def graph_differential_terms(g: Graph, state: GraphEnhancedState) -> List[GraphEnhancedState]:
    """
    Adds every absent edge. Merging components multiplies their labels with
    1⋆1 = 1, 1⋆x = x and x⋆x = 0; closing a cycle keeps the labels.
    """
    components = g.components(state.edges)
    old = {v: n for n, comp in enumerate(components) for v in comp}
    result = []
    for k, (u, v) in enumerate(g.edges):
        if k in state.edges:
            continue
        a, b = old[u], old[v]
        if a != b and state.labels[a] == state.labels[b] == X:
            continue
        edges = state.edges + (k,)
        labels = []
        for comp in g.components(edges):
            merged = {old[w] for w in comp}
            labels.append(X if any(state.labels[n] == X for n in merged) else ONE)
        result.append(GraphEnhancedState(edges, labels))
    return result


def build_graph_complex(g: Graph, cap: Optional[int] = None) -> GradedComplex:
    """
    Raises:
        ResourceCapException: If the graph has more edges than `cap`.
    """
    states = graph_states(g, cap)
    basis: Dict[Grading, List[GraphEnhancedState]] = collections.defaultdict(list)
    for state in states:
        basis[state.grading].append(state)
    position = {s: row for items in basis.values() for row, s in enumerate(items)}
    differentials = {}
    for key, items in basis.items():
        target = (key[0] + 1, key[1])
        entries = [
            (position[term], col)
            for col, state in enumerate(items)
            for term in graph_differential_terms(g, state)
        ]
        differentials[key] = F2Matrix(len(basis.get(target, ())), len(items), entries)
    logger.debug(f"Built graph complex: {len(states)} states in {len(basis)} gradings")
    return GradedComplex(basis, differentials, GRAPH_STEP)


def graph_homology(g: Graph, cap: Optional[int] = None, jobs: int = 1) -> HomologyTable:
    return homology(build_graph_complex(g, cap), jobs)


def chromatic_euler_check(g: Graph, cap: Optional[int] = None) -> CheckReport:
    """Euler characteristic of the homology at q = λ - 1 against the chromatic polynomial."""
    report = CheckReport("chromatic Euler characteristic")
    euler = graph_homology(g, cap).euler_polynomial("q")
    q = sp.Symbol("q")
    difference = sp.expand(euler.to_sympy(q).subs(q, LAMBDA - 1) - chromatic_delcon(g))
    if difference != 0:
        report.add(f"Euler characteristic differs from P(λ) by {difference}")
    return report


def equivariant_graph_homology(
    g: Graph,
    p: Optional[int] = None,
    allow_even: bool = False,
    cap: Optional[int] = None,
    jobs: int = 1,
) -> HomologyTable:
    """
    Homology of the orbit quotient of the graph complex.

    Args:
        g: Graph with an automorphism.
        p: Group order, defaults to the declared one.

    Raises:
        ActionException: If no automorphism is declared or it is invalid.
        EvenOrderException: If p is even and not explicitly allowed.
    """
    if g.automorphism is None:
        raise ActionException("Graph declares no automorphism")
    order = p if p is not None else g.p
    if order is None:
        raise ActionException("Group order of the automorphism is unknown")
    a = GraphAutomorphism(g, g.automorphism, order, allow_even)
    return equivariant_homology(quotient_complex(build_graph_complex(g, cap), a), jobs)


def graph_fixed_subspace_check(
    g: Graph, allow_even: bool = False, cap: Optional[int] = None
) -> CheckReport:
    """Equivariant graph homology against the fixed points of the induced action."""
    return fixed_subspace_check(
        build_graph_complex(g, cap), g.action(allow_even), "fixed subspace"
    )


_AUT = re.compile(r"^AUT\s+(?P<p>\d+)\s*:?\s*(?P<images>.*)$")
_IMAGE = re.compile(r"^(\d+)\s*(?:->|→)\s*(\d+)$")


def parse_graph(text: str) -> Graph:
    """
    Parses a graph file: `V n`, `E a b` per edge and optionally
    `AUT p: v1->w1, v2->w2, ...`, vertices numbered from 1; `#` starts a comment.

    Raises:
        GraphParseException: If the text is malformed.
    """
    vertices: Optional[int] = None
    edges: List[Edge] = []
    images: Dict[int, int] = {}
    p: Optional[int] = None
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        keyword, _, rest = line.partition(" ")
        if keyword == "V":
            if vertices is not None:
                raise GraphParseException("Repeated V line", lineno)
            if not rest.strip().isdigit():
                raise GraphParseException(f"Malformed line {raw.strip()!r}", lineno)
            vertices = int(rest)
        elif keyword == "E":
            fields = rest.split()
            if len(fields) != 2 or not all(f.isdigit() for f in fields):
                raise GraphParseException(f"Malformed line {raw.strip()!r}", lineno)
            edges.append((int(fields[0]) - 1, int(fields[1]) - 1))
        elif keyword == "AUT":
            m = _AUT.match(line)
            if not m or p is not None:
                raise GraphParseException(f"Malformed line {raw.strip()!r}", lineno)
            p = int(m.group("p"))
            for item in filter(None, (x.strip() for x in m.group("images").split(","))):
                pair = _IMAGE.match(item)
                if not pair:
                    raise GraphParseException(f"Malformed vertex image {item!r}", lineno)
                images[int(pair.group(1)) - 1] = int(pair.group(2)) - 1
        else:
            raise GraphParseException(f"Malformed line {raw.strip()!r}", lineno)
    if vertices is None:
        raise GraphParseException("Missing V line")
    automorphism = None
    if p is not None:
        if any(not (0 <= v < vertices and 0 <= w < vertices) for v, w in images.items()):
            raise GraphParseException("AUT refers to a missing vertex")
        automorphism = [images.get(v, v) for v in range(vertices)]
    graph = Graph(vertices, edges, automorphism, p)
    logger.debug(f"Parsed graph with {vertices} vertices and {len(graph.edges)} edges")
    return graph
