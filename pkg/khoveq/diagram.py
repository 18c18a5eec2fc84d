# Copyright Contributors to the khoveq project.
# SPDX-License-Identifier: MIT

"""
Planar link diagrams, their Kauffman resolutions and cyclic symmetries.

A crossing is a record of four arc labels listed counterclockwise starting at
the incoming under-strand. An arc joins two crossing slots; crossingless
circles are free loops carrying their own label.
"""

import collections
import logging
import re
from typing import (
    Dict,
    Iterable,
    List,
    Mapping,
    Optional,
    Sequence,
    Tuple,
    TypeVar,
    Union,
)

from khoveq.constants import A_PARTNER, B_PARTNER, STRAIGHT
from khoveq.exceptions import (
    ActionException,
    DiagramParseException,
    EvenOrderException,
    KhovEqException,
    OrientationException,
)
from khoveq.formatter import formatted
from khoveq.utils import UnionFind

logger = logging.getLogger(__name__)

Endpoint = Tuple[int, int]
Record = Tuple[int, int, int, int]
# one traversal step: arc, endpoint it is entered from, endpoint it is left at
Step = Tuple[int, Optional[Endpoint], Optional[Endpoint]]


class Resolution:
    """
    Smoothing of every crossing of a diagram.

    Attributes:
        markers: +1 or -1 per crossing.
        circles: Arc labels of every circle in traversal order, circles ordered
            by their smallest arc.
        windings: Signed number of times each circle crosses the puncture ray,
            `None` for classical diagrams.
    """

    def __init__(
        self,
        markers: Sequence[int],
        circles: Sequence[Sequence[int]],
        windings: Optional[Sequence[int]] = None,
    ) -> None:
        self.markers = tuple(markers)
        self.circles = tuple(tuple(c) for c in circles)
        self.windings = tuple(windings) if windings is not None else None
        self.circle_of = {arc: i for i, c in enumerate(self.circles) for arc in c}

    def _key(self) -> tuple:
        return self.markers, self.circles, self.windings

    def __hash__(self) -> int:
        return hash(self._key())

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Resolution):
            return NotImplemented
        return self._key() == other._key()

    @formatted
    def __repr__(self) -> str:
        return f"Resolution({self.markers!r}, {self.circles!r}, {self.windings!r})"

    def __len__(self) -> int:
        return len(self.circles)

    @property
    def sigma(self) -> int:
        return sum(self.markers)

    @property
    def essential(self) -> Tuple[bool, ...]:
        """Whether each circle winds around the puncture."""
        if self.windings is None:
            return tuple(False for _ in self.circles)
        return tuple(w != 0 for w in self.windings)


class LinkDiagram:
    """
    Planar diagram of a link, optionally drawn in an annulus.

    Attributes:
        crossings: Crossing records.
        loops: Labels of crossingless circles.
        rays: Signed number of times each arc crosses the puncture ray,
            `None` for classical diagrams.
        symmetry_order: Declared order of a cyclic symmetry.
        crossing_map: Declared images of crossings (0-based) under the symmetry.
        loop_map: Declared images of free loops under the symmetry.
    """

    def __init__(
        self,
        crossings: Iterable[Sequence[int]] = (),
        loops: Iterable[int] = (),
        rays: Optional[Mapping[int, int]] = None,
        symmetry_order: Optional[int] = None,
        crossing_map: Optional[Mapping[int, int]] = None,
        loop_map: Optional[Mapping[int, int]] = None,
    ) -> None:
        """
        Initializes and validates a diagram.

        Raises:
            DiagramParseException: If an arc label does not occur exactly twice
                in crossing slots or collides with a free loop.
        """
        self.crossings: Tuple[Record, ...] = tuple(
            tuple(int(a) for a in record) for record in crossings  # type: ignore[misc]
        )
        self.loops = tuple(sorted(int(x) for x in loops))
        self.rays = {int(k): int(v) for k, v in rays.items()} if rays is not None else None
        self.symmetry_order = symmetry_order
        self.crossing_map = dict(crossing_map or {})
        self.loop_map = dict(loop_map or {})
        self._validate()
        endpoints: Dict[int, List[Endpoint]] = collections.defaultdict(list)
        for c, record in enumerate(self.crossings):
            for s, arc in enumerate(record):
                endpoints[arc].append((c, s))
        self.endpoints: Dict[int, Tuple[Endpoint, Endpoint]] = {
            arc: (e[0], e[1]) for arc, e in endpoints.items()
        }
        self.arcs = tuple(sorted(set(self.endpoints) | set(self.loops)))
        self._resolutions: Dict[Tuple[int, ...], Resolution] = {}
        self._heads: Optional[Dict[int, Optional[Endpoint]]] = None

    def _validate(self) -> None:
        counts = collections.Counter(a for record in self.crossings for a in record)
        for c, record in enumerate(self.crossings):
            if len(record) != 4:
                raise DiagramParseException(f"Crossing {c + 1} has {len(record)} slots")
            if any(a <= 0 for a in record):
                raise DiagramParseException(f"Crossing {c + 1} has a non-positive label")
        for arc, count in sorted(counts.items()):
            if count != 2:
                raise DiagramParseException(f"Arc {arc} appears {count} times")
        if len(set(self.loops)) != len(self.loops):
            raise DiagramParseException("Free loop labels are not distinct")
        for loop in self.loops:
            if loop <= 0 or loop in counts:
                raise DiagramParseException(f"Free loop label {loop} is not a fresh label")
        if self.rays is not None:
            unknown = set(self.rays) - set(counts) - set(self.loops)
            if unknown:
                raise DiagramParseException(f"Ray data for unknown arcs {sorted(unknown)}")

    def _key(self) -> tuple:
        rays = tuple(sorted(self.rays.items())) if self.rays is not None else None
        return self.crossings, self.loops, rays

    def __hash__(self) -> int:
        return hash(self._key())

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, LinkDiagram):
            return NotImplemented
        return self._key() == other._key()

    @formatted
    def __repr__(self) -> str:
        return (
            f"LinkDiagram({list(self.crossings)!r}, {list(self.loops)!r}, "
            f"rays={self.rays!r}, symmetry_order={self.symmetry_order!r})"
        )

    def __str__(self) -> str:
        lines = [f"X {' '.join(str(a) for a in record)}" for record in self.crossings]
        lines.extend(f"O {loop}" for loop in self.loops)
        if self.rays is not None:
            lines.extend(f"RAY {arc} {count}" for arc, count in sorted(self.rays.items()))
        if self.symmetry_order is not None:
            lines.append(f"SYM {self.symmetry_order}")
            lines.extend(
                f"MAP {c + 1} {t + 1}" for c, t in sorted(self.crossing_map.items())
            )
            lines.extend(f"AMAP {a} {b}" for a, b in sorted(self.loop_map.items()))
        return "\n".join(lines) + "\n"

    @property
    def n(self) -> int:
        """Number of crossings."""
        return len(self.crossings)

    @property
    def free_loops(self) -> int:
        return len(self.loops)

    @property
    def annular(self) -> bool:
        return self.rays is not None

    @property
    def max_label(self) -> int:
        return max(self.arcs, default=0)

    def _trace(self, partners: Sequence[Sequence[int]]) -> List[List[Step]]:
        """
        Follows arcs through crossings, leaving each crossing at the partner slot.

        Returns:
            Closed paths, each starting at its smallest arc entered from that
            arc's first endpoint, ordered by smallest arc.
        """
        loops = set(self.loops)
        visited = set()
        paths = []
        for start_arc in self.arcs:
            if start_arc in visited:
                continue
            if start_arc in loops:
                visited.add(start_arc)
                paths.append([(start_arc, None, None)])
                continue
            start = self.endpoints[start_arc][0]
            arc, enter = start_arc, start
            path: List[Step] = []
            while True:
                first, second = self.endpoints[arc]
                leave = second if enter == first else first
                path.append((arc, enter, leave))
                visited.add(arc)
                c, s = leave
                enter = (c, partners[c][s])
                arc = self.crossings[c][enter[1]]
                if arc == start_arc and enter == start:
                    break
            paths.append(path)
        return paths

    def components(self) -> List[List[int]]:
        """Arcs of every link component in traversal order."""
        return [[arc for arc, _, _ in path] for path in self._trace([STRAIGHT] * self.n)]

    @property
    def heads(self) -> Dict[int, Optional[Endpoint]]:
        """
        Endpoint every arc points to, `None` for free loops.

        Raises:
            OrientationException: If a component passes under a crossing in both
                directions.
        """
        if self._heads is None:
            heads: Dict[int, Optional[Endpoint]] = {}
            for path in self._trace([STRAIGHT] * self.n):
                evidence = set()
                for arc, _, leave in path:
                    if leave is not None and leave[1] in (0, 2):
                        evidence.add(1 if leave[1] == 0 else -1)
                if len(evidence) > 1:
                    raise OrientationException(
                        f"Component through arc {path[0][0]} has no consistent orientation"
                    )
                forward = evidence != {-1}
                for arc, enter, leave in path:
                    heads[arc] = leave if forward else enter
            self._heads = heads
        return self._heads

    def is_orientable(self) -> bool:
        try:
            self.heads
        except OrientationException:
            return False
        return True

    def crossing_signs(self) -> List[int]:
        """+1 if the over-strand enters at slot 3, -1 if it enters at slot 1."""
        heads = self.heads
        return [
            1 if heads[record[3]] == (c, 3) else -1
            for c, record in enumerate(self.crossings)
        ]

    def writhe(self) -> int:
        return sum(self.crossing_signs())

    def resolve(self, markers: Sequence[int]) -> Resolution:
        """
        Smooths every crossing, +1 joins slots (0,1)(2,3), -1 joins (0,3)(1,2).

        Raises:
            KhovEqException: If the marker vector has the wrong length.
        """
        key = tuple(markers)
        if key in self._resolutions:
            return self._resolutions[key]
        if len(key) != self.n or any(m not in (1, -1) for m in key):
            raise KhovEqException(f"Invalid marker vector {key} for {self.n} crossings")
        paths = self._trace([A_PARTNER if m == 1 else B_PARTNER for m in key])
        windings = None
        if self.rays is not None:
            heads = self.heads
            windings = []
            for path in paths:
                total = 0
                for arc, _, leave in path:
                    forward = leave is None or heads[arc] == leave
                    count = self.rays.get(arc, 0)
                    total += count if forward else -count
                windings.append(total)
                if abs(total) >= 2:
                    logger.warning(
                        f"Circle through arc {path[0][0]} winds {total} times "
                        f"around the puncture"
                    )
        resolution = Resolution(key, [[a for a, _, _ in p] for p in paths], windings)
        self._resolutions[key] = resolution
        return resolution

    def pieces(self) -> int:
        """Number of connected pieces of the projection."""
        uf = UnionFind(self.arcs)
        for record in self.crossings:
            for arc in record[1:]:
                uf.union(record[0], arc)
        return len(uf)

    def is_planar(self) -> bool:
        """Checks that the record describes a diagram drawn on the sphere."""
        all_a = len(self.resolve([1] * self.n))
        all_b = len(self.resolve([-1] * self.n))
        return all_a + all_b == self.n + 2 * self.pieces()

    def action(self, allow_even: bool = False) -> "CyclicAction":
        """
        Cyclic action declared by the SYM, MAP and AMAP lines.

        Arc images follow slot-wise from the crossing images.

        Raises:
            ActionException: If no symmetry is declared or the declared maps are
                not an automorphism of the declared order.
        """
        if self.symmetry_order is None:
            raise ActionException("Diagram declares no symmetry")
        crossing_perm = [self.crossing_map.get(c, c) for c in range(self.n)]
        arc_perm = derive_arc_perm(self, crossing_perm, self.loop_map)
        return CyclicAction(
            self, self.symmetry_order, crossing_perm, arc_perm, allow_even
        )


def derive_arc_perm(
    d: LinkDiagram, crossing_perm: Sequence[int], loop_map: Mapping[int, int]
) -> Dict[int, int]:
    arc_perm: Dict[int, int] = {}
    for c, record in enumerate(d.crossings):
        if not 0 <= crossing_perm[c] < d.n:
            raise ActionException(f"Crossing {c + 1} is mapped outside of the diagram")
        for arc, image in zip(record, d.crossings[crossing_perm[c]]):
            if arc_perm.setdefault(arc, image) != image:
                raise ActionException(
                    f"Crossing map sends arc {arc} to both {arc_perm[arc]} and {image}"
                )
    for loop in d.loops:
        arc_perm[loop] = loop_map.get(loop, loop)
    return arc_perm


class Tangle:
    """
    Diagram in a strip, a fundamental domain of a symmetric diagram.

    Attributes:
        crossings: Crossing records.
        loops: Labels of crossingless circles inside the strip.
        left: Arc labels crossing the left boundary, bottom to top.
        right: Arc labels crossing the right boundary, bottom to top.
    """

    def __init__(
        self,
        crossings: Iterable[Sequence[int]],
        left: Sequence[int],
        right: Sequence[int],
        loops: Iterable[int] = (),
    ) -> None:
        self.crossings: Tuple[Record, ...] = tuple(
            tuple(int(a) for a in record) for record in crossings  # type: ignore[misc]
        )
        self.left = tuple(left)
        self.right = tuple(right)
        self.loops = tuple(sorted(loops))
        self._validate()

    def _validate(self) -> None:
        if len(self.left) != len(self.right):
            raise DiagramParseException(
                f"Boundaries have {len(self.left)} and {len(self.right)} arcs"
            )
        for side in (self.left, self.right):
            if len(set(side)) != len(side):
                raise DiagramParseException("Boundary lists an arc twice")
        counts = collections.Counter(a for record in self.crossings for a in record)
        counts.update(self.left)
        counts.update(self.right)
        for arc, count in sorted(counts.items()):
            if count != 2:
                raise DiagramParseException(f"Arc {arc} has {count} ends")
        if any(loop in counts for loop in self.loops):
            raise DiagramParseException("Free loop label reused")

    def _key(self) -> tuple:
        return self.crossings, self.left, self.right, self.loops

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Tangle):
            return NotImplemented
        return self._key() == other._key()

    def __hash__(self) -> int:
        return hash(self._key())

    @formatted
    def __repr__(self) -> str:
        return (
            f"Tangle({list(self.crossings)!r}, {list(self.left)!r}, "
            f"{list(self.right)!r}, {list(self.loops)!r})"
        )

    @property
    def labels(self) -> List[int]:
        found = {a for record in self.crossings for a in record}
        return sorted(found | set(self.left) | set(self.right) | set(self.loops))

    @classmethod
    def from_braid(cls, word: Sequence[int], strands: int) -> "Tangle":
        """
        Braid on upward strands, generator i crosses strands i and i+1
        (1-based), positive generators are positive crossings.
        """
        if strands < 1:
            raise KhovEqException("Braid needs at least one strand")
        current = list(range(1, strands + 1))
        fresh = strands + 1
        crossings = []
        for letter in word:
            i = abs(letter)
            if letter == 0 or i >= strands:
                raise KhovEqException(f"Invalid generator {letter} on {strands} strands")
            a, b = i - 1, i
            in_a, in_b = current[a], current[b]
            out_a, out_b = fresh, fresh + 1
            fresh += 2
            if letter > 0:
                crossings.append((in_b, out_b, out_a, in_a))
            else:
                crossings.append((in_a, in_b, out_b, out_a))
            current[a], current[b] = out_a, out_b
        return cls(crossings, list(range(1, strands + 1)), current)

    def add_kink(self, arc: int, sign: int = 1) -> "Tangle":
        """
        Adds a curl on an arc, the part near the far end gets a fresh label.

        Ends are ordered left boundary, crossing slots, right boundary; the
        curl sign is relative to running from the first end to the last.
        """
        ends: List[Tuple[int, Union[int, Endpoint]]] = []
        if arc in self.left:
            ends.append((0, self.left.index(arc)))
        for c, record in enumerate(self.crossings):
            for s, a in enumerate(record):
                if a == arc:
                    ends.append((1, (c, s)))
        if arc in self.right:
            ends.append((2, self.right.index(arc)))
        if len(ends) != 2:
            raise KhovEqException(f"Arc {arc} is not an arc of the tangle")
        labels = self.labels
        kink, tail = labels[-1] + 1, labels[-1] + 2
        crossings = [list(r) for r in self.crossings]
        right = list(self.right)
        kind, where = ends[1]
        if kind == 1:
            c, s = where  # type: ignore[misc]
            crossings[c][s] = tail
        else:
            right[where] = tail  # type: ignore[index]
        crossings.append(_kink_record(arc, tail, kink, sign))
        return Tangle(crossings, self.left, right, self.loops)


def _kink_record(arc: int, tail: int, kink: int, sign: int) -> Record:
    if sign > 0:
        return arc, tail, kink, kink
    return arc, kink, kink, tail


class CyclicAction:
    """
    Action of Z/p generated by a diagram automorphism.

    Attributes:
        diagram: Diagram acted upon.
        p: Group order.
        crossing_perm: Image of every crossing index.
        arc_perm: Image of every arc label.
        allow_even: Whether an even order was explicitly permitted.
    """

    def __init__(
        self,
        diagram: LinkDiagram,
        p: int,
        crossing_perm: Sequence[int],
        arc_perm: Mapping[int, int],
        allow_even: bool = False,
    ) -> None:
        """
        Initializes and validates an action.

        Raises:
            ActionException: If the permutations are not an automorphism of
                order dividing p.
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
        self.diagram = diagram
        self.p = p
        self.crossing_perm = tuple(crossing_perm)
        self.arc_perm = dict(arc_perm)
        self.allow_even = allow_even
        self._validate()

    def _validate(self) -> None:
        d = self.diagram
        if sorted(self.crossing_perm) != list(range(d.n)):
            raise ActionException("Crossing map is not a permutation")
        if sorted(self.arc_perm) != list(d.arcs) or sorted(
            self.arc_perm.values()
        ) != list(d.arcs):
            raise ActionException("Arc map is not a permutation of the arcs")
        for c, record in enumerate(d.crossings):
            image = tuple(self.arc_perm[a] for a in record)
            if image != d.crossings[self.crossing_perm[c]]:
                raise ActionException(
                    f"Crossing {c + 1} is not mapped onto crossing "
                    f"{self.crossing_perm[c] + 1} slot by slot"
                )
        loops = set(d.loops)
        if any(self.arc_perm[x] not in loops for x in loops):
            raise ActionException("Free loop mapped onto a non-loop arc")
        power = self.power(self.p)
        if power.crossing_perm != tuple(range(d.n)) or any(
            power.arc_perm[a] != a for a in d.arcs
        ):
            raise ActionException(f"Action does not have order dividing {self.p}")

    @formatted
    def __repr__(self) -> str:
        return (
            f"CyclicAction(p={self.p!r}, crossing_perm={list(self.crossing_perm)!r}, "
            f"arc_perm={self.arc_perm!r}, allow_even={self.allow_even!r})"
        )

    @classmethod
    def identity(cls, diagram: LinkDiagram, p: int = 1) -> "CyclicAction":
        return cls(
            diagram, p, range(diagram.n), {a: a for a in diagram.arcs}, p % 2 == 0
        )

    def power(self, k: int) -> "_Permutations":
        crossing_perm = list(range(self.diagram.n))
        arc_perm = {a: a for a in self.diagram.arcs}
        for _ in range(k % self.p if self.p else 0):
            crossing_perm = [self.crossing_perm[c] for c in crossing_perm]
            arc_perm = {a: self.arc_perm[b] for a, b in arc_perm.items()}
        return _Permutations(tuple(crossing_perm), arc_perm)

    def with_override(self) -> "CyclicAction":
        return CyclicAction(
            self.diagram, self.p, self.crossing_perm, self.arc_perm, allow_even=True
        )

    def act(self, obj: "T") -> "T":
        return apply_action(self, obj)


class _Permutations:
    def __init__(self, crossing_perm: Tuple[int, ...], arc_perm: Dict[int, int]) -> None:
        self.crossing_perm = crossing_perm
        self.arc_perm = arc_perm


T = TypeVar("T")


def apply_action(a: CyclicAction, obj: T) -> T:
    """
    Transports a resolution or an enhanced state along the action.

    Markers move with their crossings; circles and their signs move with their arcs.
    """
    d = a.diagram
    markers = [0] * d.n
    for c, m in enumerate(obj.markers):  # type: ignore[attr-defined]
        markers[a.crossing_perm[c]] = m
    image = d.resolve(markers)
    if isinstance(obj, Resolution):
        return image  # type: ignore[return-value]
    source = d.resolve(obj.markers)  # type: ignore[attr-defined]
    signs = [0] * len(image)
    for circle, sign in zip(source.circles, obj.signs):  # type: ignore[attr-defined]
        signs[image.circle_of[a.arc_perm[circle[0]]]] = sign
    return obj.with_data(markers, signs)  # type: ignore[attr-defined]


def resolve(d: LinkDiagram, markers: Sequence[int]) -> Resolution:
    return d.resolve(markers)


def writhe(d: LinkDiagram) -> int:
    return d.writhe()


_LINE = re.compile(r"^(?P<keyword>[A-Z]+)(?P<args>(?:\s+-?\d+)*)\s*$")


def _parse_lines(text: str, allowed: Iterable[str]) -> List[Tuple[int, str, List[int]]]:
    allowed = set(allowed)
    result = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        m = _LINE.match(line)
        if not m or m.group("keyword") not in allowed:
            raise DiagramParseException(f"Malformed line {raw.strip()!r}", lineno)
        result.append((lineno, m.group("keyword"), [int(x) for x in m.group("args").split()]))
    return result


_ARITY = {"X": (4,), "O": (0, 1), "RAY": (2,), "SYM": (1,), "MAP": (2,), "AMAP": (2,)}


def _collect(text: str, keywords: Iterable[str]) -> Dict[str, List[Tuple[int, List[int]]]]:
    collected: Dict[str, List[Tuple[int, List[int]]]] = collections.defaultdict(list)
    for lineno, keyword, args in _parse_lines(text, keywords):
        arity = _ARITY.get(keyword)
        if arity is not None and len(args) not in arity:
            raise DiagramParseException(
                f"{keyword} expects {' or '.join(map(str, arity))} arguments", lineno
            )
        collected[keyword].append((lineno, args))
    return collected


def _loops(collected: Dict[str, List[Tuple[int, List[int]]]], used: Iterable[int]) -> List[int]:
    labels = [args[0] for _, args in collected["O"] if args]
    fresh = max(list(used) + labels, default=0)
    loops = []
    for _, args in collected["O"]:
        if args:
            loops.append(args[0])
        else:
            fresh += 1
            loops.append(fresh)
    return loops


def parse_diagram(text: str) -> LinkDiagram:
    """
    Parses a diagram file.

    Lines are `X a b c d` (crossing), `O [label]` (free loop), `RAY a n`
    (ray crossings of arc a), `SYM p`, `MAP i j` (crossing i goes to j, 1-based),
    `AMAP a b` (free loop a goes to b); `#` starts a comment.

    Raises:
        DiagramParseException: If the text is malformed.
    """
    collected = _collect(text, ("X", "O", "RAY", "SYM", "MAP", "AMAP"))
    crossings = [args for _, args in collected["X"]]
    loops = _loops(collected, (a for record in crossings for a in record))
    rays = None
    if collected["RAY"]:
        rays = collections.Counter()
        for _, (arc, count) in collected["RAY"]:
            rays[arc] += count
    symmetry_order = None
    if len(collected["SYM"]) > 1:
        raise DiagramParseException("Repeated SYM line", collected["SYM"][1][0])
    if collected["SYM"]:
        symmetry_order = collected["SYM"][0][1][0]
    elif collected["MAP"] or collected["AMAP"]:
        raise DiagramParseException("MAP without SYM", (collected["MAP"] + collected["AMAP"])[0][0])
    crossing_map = {}
    for lineno, (i, j) in collected["MAP"]:
        if not (1 <= i <= len(crossings) and 1 <= j <= len(crossings)):
            raise DiagramParseException("MAP refers to a missing crossing", lineno)
        crossing_map[i - 1] = j - 1
    loop_map = {a: b for _, (a, b) in collected["AMAP"]}
    diagram = LinkDiagram(crossings, loops, rays, symmetry_order, crossing_map, loop_map)
    if not diagram.is_planar():
        logger.warning("Crossing records do not describe a planar diagram")
    logger.debug(f"Parsed diagram with {diagram.n} crossings and {diagram.free_loops} loops")
    return diagram


def parse_tangle(text: str) -> Tangle:
    """
    Parses a tangle file, the diagram format plus `LEFT a1 ... ak` and
    `RIGHT b1 ... bk`.

    Raises:
        DiagramParseException: If the text is malformed.
    """
    collected = _collect(text, ("X", "O", "LEFT", "RIGHT"))
    for side in ("LEFT", "RIGHT"):
        if len(collected[side]) > 1:
            raise DiagramParseException(f"Repeated {side} line", collected[side][1][0])
    crossings = [args for _, args in collected["X"]]
    left = collected["LEFT"][0][1] if collected["LEFT"] else []
    right = collected["RIGHT"][0][1] if collected["RIGHT"] else []
    used = [a for record in crossings for a in record] + left + right
    return Tangle(crossings, left, right, _loops(collected, used))


def lift_fundamental_domain(
    t: Tangle, p: int, annular: bool = False, allow_even: bool = False
) -> Tuple[LinkDiagram, CyclicAction]:
    """
    Glues p copies of a tangle around a circle.

    The right boundary of copy i is glued to the left boundary of copy i+1 mod p;
    the action rotates copy i onto copy i+1.

    Args:
        t: Fundamental domain.
        p: Number of copies.
        annular: Whether to record the arcs crossing the seam between the last
            and the first copy as puncture-ray crossings.
        allow_even: Whether an even number of copies is permitted.

    Raises:
        ActionException: If p < 1.
    """
    if p < 1:
        raise ActionException(f"Cannot glue {p} copies")
    labels = t.labels
    uf: UnionFind[Tuple[int, int]] = UnionFind((i, x) for i in range(p) for x in labels)
    for i in range(p):
        for left, right in zip(t.left, t.right):
            uf.union((i, left), ((i - 1) % p, right))
    classes = uf.classes()
    label_of = {member: k + 1 for k, cls in enumerate(classes) for member in cls}
    nc = len(t.crossings)
    crossings = [
        [label_of[(i, a)] for a in record] for i in range(p) for record in t.crossings
    ]
    used = {a for record in crossings for a in record}
    loops = sorted({label_of[cls[0]] for cls in classes} - used)
    crossing_map = {i * nc + c: ((i + 1) % p) * nc + c for i in range(p) for c in range(nc)}
    arc_perm = {label_of[(i, x)]: label_of[((i + 1) % p, x)] for i in range(p) for x in labels}
    loop_map = {x: arc_perm[x] for x in loops}
    rays = None
    if annular:
        plain = LinkDiagram(crossings, loops)
        rays = collections.Counter({a: 0 for a in plain.arcs})
        for position in range(len(t.left)):
            arc = label_of[(0, t.left[position])]
            rays[arc] += _seam_direction(t, plain, position, label_of, p)
    diagram = LinkDiagram(crossings, loops, rays, p, crossing_map, loop_map)
    action = CyclicAction(
        diagram, p, [crossing_map[c] for c in range(p * nc)], arc_perm, allow_even
    )
    logger.debug(f"Lifted {nc}-crossing tangle to {diagram.n} crossings, p={p}")
    return diagram, action


def _seam_direction(
    t: Tangle,
    d: LinkDiagram,
    position: int,
    label_of: Mapping[Tuple[int, int], int],
    p: int,
) -> int:
    """+1 if the arc crossing the seam at `position` runs from the last copy into the first."""
    copy, current = 0, position
    for _ in range(p * max(len(t.left), 1)):
        x = t.left[current]
        for c, record in enumerate(t.crossings):
            for s, a in enumerate(record):
                if a == x:
                    endpoint = (copy * len(t.crossings) + c, s)
                    return 1 if d.heads[label_of[(copy, x)]] == endpoint else -1
        current = t.right.index(x)
        copy = (copy + 1) % p
        if copy == 0 and current == position:
            break
    return 1


def braid_closure(word: Sequence[int], strands: int) -> LinkDiagram:
    """Closure of a braid, see `Tangle.from_braid` for the conventions."""
    diagram, _ = lift_fundamental_domain(Tangle.from_braid(word, strands), 1)
    return LinkDiagram(diagram.crossings, diagram.loops)


def _merge_arcs(
    d: LinkDiagram, v: int, pairs: Sequence[Tuple[int, int]]
) -> Tuple[List[Record], List[int], Dict[int, int]]:
    """Removes crossing v joining the arcs at the given slot pairs."""
    uf = UnionFind(d.arcs)
    for s, t in pairs:
        uf.union(d.crossings[v][s], d.crossings[v][t])
    label_map = {a: cls[0] for cls in uf.classes() for a in cls}
    crossings = [
        tuple(label_map[a] for a in record)
        for c, record in enumerate(d.crossings)
        if c != v
    ]
    used = {a for record in crossings for a in record}
    loops = sorted({label_map[a] for a in d.arcs} - used)
    return crossings, loops, label_map  # type: ignore[return-value]


def smooth(d: LinkDiagram, v: int, marker: int) -> LinkDiagram:
    """Diagram with crossing v smoothed, +1 gives D_0 and -1 gives D_infinity."""
    return smoothing_with_labels(d, v, marker)[0]


def smoothing_with_labels(
    d: LinkDiagram, v: int, marker: int
) -> Tuple[LinkDiagram, Dict[int, int]]:
    """
    Smooths crossing v, arcs joined by the smoothing keep their smallest label.

    Returns:
        Smoothed diagram and the label every old arc ends up in.
    """
    if d.annular:
        raise KhovEqException("Smoothing of annular diagrams is not supported")
    if not 0 <= v < d.n:
        raise KhovEqException(f"Diagram has no crossing {v}")
    partner = A_PARTNER if marker == 1 else B_PARTNER
    pairs = [(s, partner[s]) for s in (0, 1, 2, 3) if s < partner[s]]
    crossings, loops, label_map = _merge_arcs(d, v, pairs)
    return LinkDiagram(crossings, loops), label_map


def mirror(d: LinkDiagram) -> LinkDiagram:
    """Changes every crossing, keeping the orientation when there is one."""
    heads = d.heads if d.is_orientable() else None
    crossings = []
    for c, (a, b, e, f) in enumerate(d.crossings):
        if heads is None or heads[f] == (c, 3):
            crossings.append((f, a, b, e))
        else:
            crossings.append((b, e, f, a))
    return LinkDiagram(crossings, d.loops, d.rays)


def disjoint_union(d1: LinkDiagram, d2: LinkDiagram) -> LinkDiagram:
    shift = d1.max_label
    crossings = list(d1.crossings) + [
        tuple(a + shift for a in record) for record in d2.crossings
    ]
    loops = list(d1.loops) + [x + shift for x in d2.loops]
    rays = None
    if d1.annular or d2.annular:
        rays = dict(d1.rays or {})
        rays.update({a + shift: n for a, n in (d2.rays or {}).items()})
    return LinkDiagram(crossings, loops, rays)


def connected_sum(
    d1: LinkDiagram, d2: LinkDiagram, arc1: Optional[int] = None, arc2: Optional[int] = None
) -> LinkDiagram:
    """
    Joins the component of `arc1` in d1 with the component of `arc2` in d2.

    Both arcs are cut next to their heads and reconnected crosswise, which keeps
    every orientation and crossing sign. Arcs default to the smallest label,
    labels of d2 are shifted past those of d1 and ray data is not carried over.

    Raises:
        KhovEqException: If an arc is missing.
        OrientationException: If a diagram admits no consistent orientation.
    """
    arc1 = min(d1.arcs) if arc1 is None else arc1
    arc2 = min(d2.arcs) if arc2 is None else arc2
    if arc1 not in d1.arcs or arc2 not in d2.arcs:
        raise KhovEqException(f"Cannot join arcs {arc1} and {arc2}")
    shift = d1.max_label
    crossings = [list(record) for record in d1.crossings] + [
        [a + shift for a in record] for record in d2.crossings
    ]
    loops = list(d1.loops) + [x + shift for x in d2.loops]
    if arc1 in d1.loops:
        loops.remove(arc1)
    elif arc2 in d2.loops:
        loops.remove(arc2 + shift)
    else:
        c1, s1 = d1.heads[arc1]  # type: ignore[misc]
        c2, s2 = d2.heads[arc2]  # type: ignore[misc]
        crossings[c1][s1] = arc2 + shift
        crossings[d1.n + c2][s2] = arc1
    return LinkDiagram(crossings, loops)


def add_kink(d: LinkDiagram, arc: int, sign: int = 1) -> LinkDiagram:
    """
    First Reidemeister move: a curl of the given sign on an arc.

    The curl becomes the last crossing; the arc keeps its label up to the curl
    and the part after it gets a fresh label.
    """
    if arc not in d.arcs:
        raise KhovEqException(f"Diagram has no arc {arc}")
    kink, tail = d.max_label + 1, d.max_label + 2
    crossings = [list(record) for record in d.crossings]
    loops = list(d.loops)
    if arc in loops:
        tail = arc
        loops.remove(arc)
    else:
        c, s = d.heads[arc]  # type: ignore[misc]
        crossings[c][s] = tail
    crossings.append(list(_kink_record(arc, tail, kink, sign)))
    return LinkDiagram(crossings, loops, d.rays)


def kink_slots(d: LinkDiagram, v: int) -> Tuple[int, int]:
    """
    Adjacent slots of crossing v joined by a curl arc, the largest such label wins.

    Raises:
        KhovEqException: If crossing v is not a curl.
    """
    record = d.crossings[v]
    candidates = [
        (record[s], s) for s in range(4) if record[s] == record[(s + 1) % 4]
    ]
    if not candidates:
        raise KhovEqException(f"Crossing {v + 1} is not a curl")
    _, s = max(candidates)
    return s, (s + 1) % 4


def remove_kink(d: LinkDiagram, v: int) -> LinkDiagram:
    """Inverse of `add_kink`: removes curl crossing v."""
    s, t = kink_slots(d, v)
    others = [u for u in range(4) if u not in (s, t)]
    crossings, loops, label_map = _merge_arcs(d, v, [(others[0], others[1])])
    kink = d.crossings[v][s]
    loops = [x for x in loops if x != label_map[kink]]
    rays = None
    if d.rays is not None:
        if d.rays.get(kink, 0):
            raise KhovEqException("Curl arc crosses the puncture ray")
        rays = collections.Counter()
        for a, count in d.rays.items():
            if a != kink:
                rays[label_map[a]] += count
    return LinkDiagram(crossings, loops, rays)
