# Copyright Contributors to the khoveq project.
# SPDX-License-Identifier: MIT

from typing import Dict, Generic, Hashable, Iterable, List, Optional, TypeVar

from khoveq.formatter import formatted

T = TypeVar("T", bound=Hashable)


class UnionFind(Generic[T]):
    """
    Disjoint-set forest with union by rank and path compression.

    Classes are reported ordered by their smallest element, which makes every
    derived numbering (circles, components, glued arcs) deterministic.
    """

    def __init__(self, elements: Iterable[T] = ()) -> None:
        self.parent: Dict[T, T] = {}
        self.rank: Dict[T, int] = {}
        for element in elements:
            self.add(element)

    def add(self, element: T) -> None:
        if element not in self.parent:
            self.parent[element] = element
            self.rank[element] = 0

    def find(self, element: T) -> T:
        root = element
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[element] != root:
            self.parent[element], element = root, self.parent[element]
        return root

    def union(self, x: T, y: T) -> bool:
        x, y = self.find(x), self.find(y)
        if x == y:
            return False
        if self.rank[x] < self.rank[y]:
            x, y = y, x
        elif self.rank[x] == self.rank[y]:
            self.rank[x] += 1
        self.parent[y] = x
        return True

    def classes(self) -> List[List[T]]:
        """Equivalence classes, each sorted, ordered by smallest element."""
        groups: Dict[T, List[T]] = {}
        for element in self.parent:
            groups.setdefault(self.find(element), []).append(element)
        return sorted((sorted(g) for g in groups.values()), key=lambda g: g[0])

    def __len__(self) -> int:
        return sum(1 for e in self.parent if self.parent[e] == e)


class CheckReport:
    """
    Outcome of a numerical verification.

    Attributes:
        name: Name of the check.
        violations: Human-readable description of every failing case.
        informational: Whether the verdict is not backed by a theorem
            (e.g. group of even order), failures are then only reported.
    """

    def __init__(
        self,
        name: str,
        violations: Optional[List[str]] = None,
        informational: bool = False,
    ) -> None:
        self.name = name
        self.violations = list(violations or [])
        self.informational = informational

    @formatted
    def __repr__(self) -> str:
        return (
            f"CheckReport({self.name!r}, {self.violations!r}, "
            f"informational={self.informational!r})"
        )

    def __str__(self) -> str:
        verdict = "PASS" if self.passed else "FAIL"
        if self.informational:
            verdict += " (informational)"
        return f"{self.name}: {verdict}"

    def __bool__(self) -> bool:
        return self.passed

    @property
    def passed(self) -> bool:
        return not self.violations

    def add(self, violation: str) -> None:
        self.violations.append(violation)

    def merge(self, other: "CheckReport") -> None:
        self.violations.extend(f"{other.name}: {v}" for v in other.violations)
        self.informational = self.informational or other.informational
