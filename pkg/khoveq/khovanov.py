# Copyright Contributors to the khoveq project.
# SPDX-License-Identifier: MIT

"""
Enhanced-state chain complex of a link diagram over GF(2).

An enhanced state is a marker per crossing plus a sign per circle of the
resulting resolution. With σ the marker sum, τ the sign sum and w the writhe,
the oriented gradings are i = (w - σ)/2, j = (3w - σ + 2τ)/2 and the framed
ones p = τ, q = σ - 2τ. The differential flips one +1 marker to -1 and
lowers τ by exactly one.
"""

import collections
import concurrent.futures
import enum
import itertools
import logging
from typing import (
    Callable,
    Dict,
    Hashable,
    Iterable,
    List,
    Mapping,
    Optional,
    Sequence,
    Tuple,
)

import sympy as sp

from khoveq.constants import DEFAULT_CROSSING_CAP
from khoveq.diagram import (
    LinkDiagram,
    kink_slots,
    remove_kink,
    smoothing_with_labels,
)
from khoveq.exceptions import (
    ChainMapException,
    DiagramParseException,
    KhovEqException,
    OrientationException,
    ResourceCapException,
)
from khoveq.f2linalg import F2Matrix, image, kernel, matrix_of_map_on_quotient, rank
from khoveq.formatter import formatted
from khoveq.polynomials import LaurentPoly
from khoveq.utils import CheckReport

logger = logging.getLogger(__name__)

Grading = Tuple[int, ...]


class Flavor(enum.Enum):
    ORIENTED = "oriented"
    FRAMED = "framed"


STEPS = {Flavor.ORIENTED: (1, 0), Flavor.FRAMED: (-1, 0)}


def shift(key: Grading, by: Grading, sign: int = 1) -> Grading:
    return tuple(k + sign * b for k, b in zip(key, by))


class EnhancedState(collections.abc.Hashable):
    """
    Kauffman state with a sign on every circle.

    Attributes:
        markers: +1 or -1 per crossing.
        signs: +1 or -1 per circle, in the circle order of the resolution.
        writhe: Writhe of the diagram, `None` if the diagram is not oriented.
    """

    def __init__(
        self, markers: Sequence[int], signs: Sequence[int], writhe: Optional[int] = None
    ) -> None:
        self.markers = tuple(markers)
        self.signs = tuple(signs)
        self.writhe = writhe

    def _key(self) -> tuple:
        return self.markers, self.signs

    def __hash__(self) -> int:
        return hash(self._key())

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, EnhancedState):
            return NotImplemented
        return self._key() == other._key()

    @formatted
    def __repr__(self) -> str:
        return (
            f"EnhancedState({list(self.markers)!r}, {list(self.signs)!r}, "
            f"writhe={self.writhe!r})"
        )

    @property
    def sigma(self) -> int:
        return sum(self.markers)

    @property
    def tau(self) -> int:
        return sum(self.signs)

    def _writhe(self) -> int:
        if self.writhe is None:
            raise OrientationException("Oriented gradings need an oriented diagram")
        return self.writhe

    @property
    def i(self) -> int:
        return (self._writhe() - self.sigma) // 2

    @property
    def j(self) -> int:
        return (3 * self._writhe() - self.sigma + 2 * self.tau) // 2

    @property
    def p_fr(self) -> int:
        return self.tau

    @property
    def q_fr(self) -> int:
        return self.sigma - 2 * self.tau

    def grading(self, flavor: Flavor) -> Grading:
        if flavor is Flavor.ORIENTED:
            return self.i, self.j
        return self.p_fr, self.q_fr

    def with_data(self, markers: Sequence[int], signs: Sequence[int]) -> "EnhancedState":
        return EnhancedState(markers, signs, self.writhe)


class HomologyTable(collections.UserDict):
    """
    Dimensions over GF(2) keyed by grading tuples, zero entries are not stored.
    """

    def __init__(self, data: Optional[Mapping[Sequence[int], int]] = None) -> None:
        super().__init__()
        for key, value in (data or {}).items():
            self[key] = value

    def __setitem__(self, key: Sequence[int], value: int) -> None:
        if value < 0:
            raise KhovEqException(f"Negative dimension {value} at {tuple(key)}")
        key = tuple(key)
        if value:
            self.data[key] = value
        else:
            self.data.pop(key, None)

    @formatted
    def __repr__(self) -> str:
        return f"HomologyTable({dict(sorted(self.data.items()))!r})"

    def __str__(self) -> str:
        return self.format_table()

    def _display_order(self) -> List[Grading]:
        return sorted(self.data, key=lambda k: (k[0],) + tuple(-x for x in k[1:]))

    def format_table(self) -> str:
        """Entries `(i,j):dim` by first grading ascending, the others descending."""
        return " ".join(
            f"({','.join(str(x) for x in key)}):{self.data[key]}"
            for key in self._display_order()
        )

    def total_dimension(self) -> int:
        return sum(self.data.values())

    def euler_polynomial(self, variable: str = "q") -> LaurentPoly:
        """Σ (-1)^(first grading) variable^(second grading) dim."""
        coefficients: Dict[int, int] = collections.Counter()
        for key, dim in self.data.items():
            coefficients[key[1]] += (-1) ** (key[0] % 2) * dim
        return LaurentPoly(coefficients, variable)

    def poincare_polynomial(self, t: sp.Symbol, q: sp.Symbol) -> sp.Expr:
        return sp.Add(*(dim * t ** key[0] * q ** key[1] for key, dim in self.data.items()))

    def forget(self, index: int) -> "HomologyTable":
        """Sums the dimensions over one grading."""
        result: Dict[Grading, int] = collections.Counter()
        for key, dim in self.data.items():
            result[key[:index] + key[index + 1 :]] += dim
        return HomologyTable(result)

    def to_json(self) -> List[Dict[str, object]]:
        return [
            {"gradings": list(key), "dim": self.data[key]} for key in sorted(self.data)
        ]

    @classmethod
    def from_json(cls, entries: Iterable[Mapping[str, object]]) -> "HomologyTable":
        return cls({tuple(e["gradings"]): e["dim"] for e in entries})  # type: ignore


class GradedComplex:
    """
    Graded chain complex over GF(2) with a differential of fixed degree.

    Attributes:
        basis: Ordered basis elements per grading.
        differentials: Matrix from every grading to the grading shifted by `step`.
        step: Degree of the differential.
        diagram: Diagram the complex was built from, if any.
        flavor: Grading convention, if built from a diagram.
    """

    def __init__(
        self,
        basis: Mapping[Grading, Sequence[Hashable]],
        differentials: Mapping[Grading, F2Matrix],
        step: Grading,
        diagram: Optional[LinkDiagram] = None,
        flavor: Optional[Flavor] = None,
    ) -> None:
        self.basis = {tuple(k): tuple(v) for k, v in sorted(basis.items()) if v}
        self.step = tuple(step)
        self.diagram = diagram
        self.flavor = flavor
        self.index = {
            key: {element: i for i, element in enumerate(elements)}
            for key, elements in self.basis.items()
        }
        self.differentials: Dict[Grading, F2Matrix] = {}
        for key, matrix in differentials.items():
            key = tuple(key)
            expected = (self.dim(self.target(key)), self.dim(key))
            if matrix.shape != expected:
                raise KhovEqException(
                    f"Differential at {key} has shape {matrix.shape}, expected {expected}"
                )
            if not matrix.is_zero():
                self.differentials[key] = matrix

    @formatted
    def __repr__(self) -> str:
        sizes = {key: len(v) for key, v in self.basis.items()}
        return f"GradedComplex({sizes!r}, step={self.step!r})"

    @property
    def keys(self) -> List[Grading]:
        return list(self.basis)

    def dim(self, key: Grading) -> int:
        return len(self.basis.get(tuple(key), ()))

    def target(self, key: Grading) -> Grading:
        return shift(key, self.step)

    def source(self, key: Grading) -> Grading:
        return shift(key, self.step, -1)

    def differential(self, key: Grading) -> F2Matrix:
        key = tuple(key)
        if key in self.differentials:
            return self.differentials[key]
        return F2Matrix.zero(self.dim(self.target(key)), self.dim(key))

    def incoming(self, key: Grading) -> F2Matrix:
        return self.differential(self.source(key))

    def chain_dimensions(self) -> HomologyTable:
        return HomologyTable({key: len(v) for key, v in self.basis.items()})

    def chain_euler_polynomial(self, variable: str = "q") -> LaurentPoly:
        return self.chain_dimensions().euler_polynomial(variable)

    def check_d_squared(self) -> CheckReport:
        report = CheckReport("d∘d = 0")
        for key in self.keys:
            product = self.differential(self.target(key)) @ self.differential(key)
            if not product.is_zero():
                report.add(f"d∘d is nonzero on {key}")
        return report


def homology(c: GradedComplex, jobs: int = 1) -> HomologyTable:
    """
    Dimensions of ker d / im d per grading, ranks of distinct gradings
    computed independently.
    """
    keys = c.keys
    if jobs > 1:
        with concurrent.futures.ThreadPoolExecutor(max_workers=jobs) as executor:
            ranks = dict(zip(keys, executor.map(lambda k: rank(c.differential(k)), keys)))
    else:
        ranks = {key: rank(c.differential(key)) for key in keys}
    table = HomologyTable()
    for key in keys:
        table[key] = c.dim(key) - ranks[key] - ranks.get(c.source(key), 0)
    logger.debug(f"Homology of {len(keys)} gradings: {table.format_table()}")
    return table


def euler_polynomial(h: HomologyTable) -> LaurentPoly:
    """Σ (-1)^i q^j dim H^{i,j}."""
    return h.euler_polynomial("q")


def framed_euler_polynomial(h: HomologyTable, crossings: int) -> LaurentPoly:
    """(-1)^n Σ (-1)^p A^q dim, equal to the Kauffman bracket."""
    sign = -1 if crossings % 2 else 1
    return h.euler_polynomial("A") * sign


def _check_cap(d: LinkDiagram, cap: Optional[int]) -> None:
    cap = DEFAULT_CROSSING_CAP if cap is None else cap
    if d.n > cap:
        raise ResourceCapException(f"Diagram has {d.n} crossings, the cap is {cap}")


def _writhe_for(d: LinkDiagram, flavor: Flavor) -> Optional[int]:
    if flavor is Flavor.ORIENTED:
        return d.writhe()
    return d.writhe() if d.is_orientable() else None


def enumerate_states(
    d: LinkDiagram,
    grading: Optional[Grading] = None,
    flavor: Flavor = Flavor.ORIENTED,
    cap: Optional[int] = None,
) -> List[EnhancedState]:
    """
    Enhanced states in marker-lex then sign-lex order, +1 before -1.

    Args:
        d: Diagram.
        grading: Only states of this grading, all states if `None`.
        flavor: Convention `grading` refers to.
        cap: Largest accepted number of crossings.

    Raises:
        ResourceCapException: If the diagram has more crossings than `cap`.
        OrientationException: If oriented gradings are requested for a
            diagram without consistent orientation.
    """
    _check_cap(d, cap)
    writhe = _writhe_for(d, flavor)
    wanted = tuple(grading) if grading is not None else None
    states = []
    for markers in itertools.product((1, -1), repeat=d.n):
        circles = len(d.resolve(markers))
        for signs in itertools.product((1, -1), repeat=circles):
            state = EnhancedState(markers, signs, writhe)
            if wanted is None or state.grading(flavor) == wanted:
                states.append(state)
    return states


def differential_terms(d: LinkDiagram, state: EnhancedState) -> List[EnhancedState]:
    """
    States with incidence 1 from `state`, over all +1 markers.

    Raises:
        DiagramParseException: If changing one marker neither merges nor
            splits circles.
    """
    result = []
    r = d.resolve(state.markers)
    for v, marker in enumerate(state.markers):
        if marker != 1:
            continue
        markers = state.markers[:v] + (-1,) + state.markers[v + 1 :]
        r2 = d.resolve(markers)
        if len(r2) == len(r):
            raise DiagramParseException(
                f"Changing the marker of crossing {v + 1} keeps the number of circles, "
                "the crossing records do not describe a diagram in the plane"
            )
        record = d.crossings[v]
        first, second = r.circle_of[record[0]], r.circle_of[record[2]]
        if first != second:
            touched = {r2.circle_of[record[0]]}
        else:
            touched = {r2.circle_of[record[0]], r2.circle_of[record[1]]}
        base = [
            0 if j in touched else state.signs[r.circle_of[circle[0]]]
            for j, circle in enumerate(r2.circles)
        ]
        options: List[Dict[int, int]]
        if first != second:
            a, b = state.signs[first], state.signs[second]
            if a == b == -1:
                continue
            options = [{r2.circle_of[record[0]]: 1 if a == b == 1 else -1}]
        else:
            left, right = r2.circle_of[record[0]], r2.circle_of[record[1]]
            if state.signs[first] == 1:
                options = [{left: 1, right: -1}, {left: -1, right: 1}]
            else:
                options = [{left: -1, right: -1}]
        for option in options:
            signs = list(base)
            for j, sign in option.items():
                signs[j] = sign
            result.append(state.with_data(markers, signs))
    return result


def incidence(
    d: LinkDiagram, s: EnhancedState, s2: EnhancedState, v: int
) -> int:
    """
    Incidence number (S : S')_v over GF(2).

    1 iff the states differ only at crossing v, S has marker +1 and S' marker -1
    there, circles away from v keep their signs and the signs at v follow
    merge (+,+)->+, (+,-)->-, (-,+)->- and split +->(+,-) or (-,+), -->(-,-).
    """
    if s.markers[v] != 1 or s2.markers[v] != -1:
        return 0
    if any(a != b for u, (a, b) in enumerate(zip(s.markers, s2.markers)) if u != v):
        return 0
    r, r2 = d.resolve(s.markers), d.resolve(s2.markers)
    before = {frozenset(c): sign for c, sign in zip(r.circles, s.signs)}
    after = {frozenset(c): sign for c, sign in zip(r2.circles, s2.signs)}
    common = set(before) & set(after)
    if any(before[c] != after[c] for c in common):
        return 0
    old = sorted(before[c] for c in before if c not in common)
    new = sorted(after[c] for c in after if c not in common)
    if len(old) == 2 and len(new) == 1:
        allowed = {(1, 1): [1], (-1, 1): [-1]}.get(tuple(old), [])  # type: ignore
        return int(new[0] in allowed)
    if len(old) == 1 and len(new) == 2:
        allowed_pairs = {1: [[-1, 1]], -1: [[-1, -1]]}[old[0]]
        return int(new in allowed_pairs)
    return 0


def _assemble(
    d: LinkDiagram,
    states: Iterable[EnhancedState],
    key_of: Callable[[EnhancedState], Grading],
    step: Grading,
    restrict: bool = False,
) -> Tuple[Dict[Grading, List[EnhancedState]], Dict[Grading, F2Matrix], int]:
    """
    Groups states by grading and builds the differential matrices.

    With `restrict`, terms landing outside the grading shifted by `step` are
    dropped and counted instead of being reported as an error.
    """
    basis: Dict[Grading, List[EnhancedState]] = collections.defaultdict(list)
    for state in states:
        basis[key_of(state)].append(state)
    position = {
        state: (key, row) for key, items in basis.items() for row, state in enumerate(items)
    }
    dropped = 0
    differentials = {}
    for key, items in basis.items():
        target = shift(key, step)
        entries = []
        for col, state in enumerate(items):
            for term in differential_terms(d, state):
                term_key, row = position[term]
                if term_key != target:
                    if not restrict:
                        raise KhovEqException(
                            f"Differential sends grading {key} to {term_key}"
                        )
                    dropped += 1
                    continue
                entries.append((row, col))
        differentials[key] = F2Matrix(len(basis.get(target, ())), len(items), entries)
    return dict(basis), differentials, dropped


def build_complex(
    d: LinkDiagram, flavor: Flavor = Flavor.ORIENTED, cap: Optional[int] = None
) -> GradedComplex:
    """
    Enhanced-state complex, d raises i by one in the oriented flavor and
    lowers p by one in the framed flavor.

    Raises:
        DiagramParseException: If the records admit a marker change that
            keeps the number of circles.
        ResourceCapException: If the diagram has more crossings than `cap`.
    """
    states = enumerate_states(d, None, flavor, cap)
    basis, differentials, _ = _assemble(
        d, states, lambda s: s.grading(flavor), STEPS[flavor]
    )
    logger.debug(
        f"Built {flavor.value} complex: {len(states)} states in {len(basis)} gradings"
    )
    return GradedComplex(basis, differentials, STEPS[flavor], d, flavor)


class ChainMap:
    """
    Grading-preserving (up to a fixed shift) map between two complexes.

    Attributes:
        source: Domain complex.
        target: Codomain complex.
        matrices: Matrix per source grading.
        offset: Grading shift from source to target.
    """

    def __init__(
        self,
        source: GradedComplex,
        target: GradedComplex,
        matrices: Mapping[Grading, F2Matrix],
        offset: Optional[Grading] = None,
    ) -> None:
        if source.step != target.step:
            raise ChainMapException("Complexes have differentials of different degree")
        self.source = source
        self.target = target
        self.offset = tuple(offset) if offset is not None else tuple(0 for _ in source.step)
        self.matrices = {tuple(k): m for k, m in matrices.items()}

    @formatted
    def __repr__(self) -> str:
        return f"ChainMap({len(self.matrices)!r} gradings, offset={self.offset!r})"

    def matrix(self, key: Grading) -> F2Matrix:
        key = tuple(key)
        if key in self.matrices:
            return self.matrices[key]
        return F2Matrix.zero(self.target.dim(shift(key, self.offset)), self.source.dim(key))

    def compose(self, inner: "ChainMap") -> "ChainMap":
        """self ∘ inner."""
        matrices = {
            key: self.matrix(shift(key, inner.offset)) @ inner.matrix(key)
            for key in inner.source.keys
        }
        return ChainMap(
            inner.source, self.target, matrices, shift(inner.offset, self.offset)
        )

    def commutes(self) -> CheckReport:
        report = CheckReport("chain map")
        keys = set(self.source.keys) | {
            shift(k, self.offset, -1) for k in self.target.keys
        }
        for key in sorted(keys):
            left = self.target.differential(shift(key, self.offset)) @ self.matrix(key)
            right = self.matrix(self.source.target(key)) @ self.source.differential(key)
            if left != right:
                report.add(f"d∘f != f∘d on {key}")
        return report

    def induced_on_homology(self) -> Dict[Grading, F2Matrix]:
        result = {}
        for key in self.source.keys:
            target_key = shift(key, self.offset)
            result[key] = matrix_of_map_on_quotient(
                self.matrix(key),
                kernel(self.source.differential(key)),
                image(self.source.incoming(key)),
                kernel(self.target.differential(target_key)),
                image(self.target.incoming(target_key)),
            )
        return result

    def is_quasi_isomorphism(self) -> CheckReport:
        report = CheckReport("isomorphism on homology")
        h_source, h_target = homology(self.source), homology(self.target)
        keys = set(h_source) | {shift(k, self.offset, -1) for k in h_target}
        induced = self.induced_on_homology()
        for key in sorted(keys):
            dim = h_source.get(key, 0)
            if dim != h_target.get(shift(key, self.offset), 0):
                report.add(f"homology dimensions differ at {key}")
            elif dim and rank(induced[key]) != dim:
                report.add(f"induced map is not of full rank at {key}")
        return report


def r1_chain_map(
    c_before: GradedComplex, c_after: GradedComplex, v: int
) -> ChainMap:
    """
    Chain map inducing the isomorphism for a first Reidemeister move.

    With c0 the small circle created at the curl v and c1 the circle through
    the rest of the strand, a positive curl maps S to S ⊗ (c0 = -) plus, when
    c1 is positive, S with c0 = + and c1 = -; a negative curl maps S to S ⊗ (c0 = +).

    Raises:
        ChainMapException: If the second diagram is not the first one with a
            curl added at crossing v, or the flavors differ.
    """
    before, after = c_before.diagram, c_after.diagram
    if before is None or after is None or c_before.flavor is not c_after.flavor:
        raise ChainMapException("Both complexes must come from diagrams of one flavor")
    try:
        slots = kink_slots(after, v)
        reduced = remove_kink(after, v)
    except KhovEqException as e:
        raise ChainMapException(str(e)) from e
    if reduced != before:
        raise ChainMapException(f"Removing curl {v + 1} does not give the first diagram")
    record = after.crossings[v]
    kink = record[slots[0]]
    x, y = (record[s] for s in range(4) if s not in slots)
    merged = min(x, y)
    positive = set(slots) in ({0, 1}, {2, 3})
    marker = 1 if positive else -1
    flavor = c_after.flavor
    writhe = _writhe_for(after, flavor)
    columns: Dict[Grading, List[Tuple[Grading, EnhancedState, int]]] = collections.defaultdict(list)
    for key, states in c_before.basis.items():
        for col, state in enumerate(states):
            markers = state.markers[:v] + (marker,) + state.markers[v:]
            r, r2 = before.resolve(state.markers), after.resolve(markers)
            small, strand = r2.circle_of[kink], r2.circle_of[x]
            signs = [
                0 if j == small
                else state.signs[r.circle_of[merged if c[0] in (x, y) else c[0]]]
                for j, c in enumerate(r2.circles)
            ]
            images = []
            if positive:
                images.append({small: -1})
                if signs[strand] == 1:
                    images.append({small: 1, strand: -1})
            else:
                images.append({small: 1})
            for change in images:
                new = list(signs)
                for j, sign in change.items():
                    new[j] = sign
                term = EnhancedState(markers, new, writhe)
                target_key = term.grading(flavor)
                columns[key].append((target_key, term, col))
    offsets = {
        shift(target_key, key, -1)
        for key, items in columns.items()
        for target_key, _, _ in items
    }
    if len(offsets) > 1:
        raise ChainMapException(f"Curl map shifts gradings inconsistently: {offsets}")
    offset = offsets.pop() if offsets else tuple(0 for _ in c_before.step)
    matrices = {}
    for key in c_before.keys:
        target_key = shift(key, offset)
        entries = [
            (c_after.index[target_key][term], col) for _, term, col in columns[key]
        ]
        matrices[key] = F2Matrix(c_after.dim(target_key), c_before.dim(key), entries)
    return ChainMap(c_before, c_after, matrices, offset)


def _transport(
    state: EnhancedState,
    markers: Sequence[int],
    source: LinkDiagram,
    target: LinkDiagram,
    label_map: Callable[[int], int],
) -> EnhancedState:
    """Same circles with the same signs, on a diagram sharing all circles."""
    r = source.resolve(state.markers)
    r2 = target.resolve(markers)
    signs = [0] * len(r2)
    for circle, sign in zip(r.circles, state.signs):
        signs[r2.circle_of[label_map(circle[0])]] = sign
    return EnhancedState(markers, signs)


def skein_exactness_check(
    d_plus: LinkDiagram, v: int, cap: Optional[int] = None
) -> CheckReport:
    """
    Checks exactness of 0 -> C_{p,q}(D_inf) -> C_{p,q-1}(D_+) -> C_{p,q-2}(D_0) -> 0.

    D_0 and D_inf are the +1 and -1 smoothings of crossing v; alpha includes the
    states of D_+ with marker -1 at v, beta projects onto those with marker +1.
    """
    report = CheckReport(f"skein sequence at crossing {v + 1}")
    d_zero, zero_labels = smoothing_with_labels(d_plus, v, 1)
    d_inf, _ = smoothing_with_labels(d_plus, v, -1)
    c_plus = build_complex(d_plus, Flavor.FRAMED, cap)
    c_zero = build_complex(d_zero, Flavor.FRAMED, cap)
    c_inf = build_complex(d_inf, Flavor.FRAMED, cap)
    offset = (0, -1)

    alpha_matrices = {}
    for key, states in c_inf.basis.items():
        entries = []
        for col, state in enumerate(states):
            markers = state.markers[:v] + (-1,) + state.markers[v:]
            # smoothed arcs keep an original label, which lies on the same circle
            term = _transport(state, markers, d_inf, d_plus, lambda a: a)
            entries.append((c_plus.index[shift(key, offset)][term], col))
        alpha_matrices[key] = F2Matrix(c_plus.dim(shift(key, offset)), len(states), entries)
    beta_matrices = {}
    for key, states in c_plus.basis.items():
        entries = []
        for col, state in enumerate(states):
            if state.markers[v] != 1:
                continue
            markers = state.markers[:v] + state.markers[v + 1 :]
            term = _transport(state, markers, d_plus, d_zero, zero_labels.__getitem__)
            entries.append((c_zero.index[shift(key, offset)][term], col))
        beta_matrices[key] = F2Matrix(c_zero.dim(shift(key, offset)), len(states), entries)

    alpha = ChainMap(c_inf, c_plus, alpha_matrices, offset)
    beta = ChainMap(c_plus, c_zero, beta_matrices, offset)
    report.merge(alpha.commutes())
    report.merge(beta.commutes())
    middle = set(c_plus.keys) | {shift(k, offset) for k in c_inf.keys} | {
        shift(k, offset, -1) for k in c_zero.keys
    }
    for key in sorted(middle):
        a = alpha.matrix(shift(key, offset, -1))
        b = beta.matrix(key)
        rank_a, rank_b = rank(a), rank(b)
        if rank_a != a.cols:
            report.add(f"alpha is not injective into {key}")
        if rank_b != b.rows:
            report.add(f"beta is not surjective from {key}")
        if not (b @ a).is_zero() or rank_a != c_plus.dim(key) - rank_b:
            report.add(f"image of alpha differs from kernel of beta at {key}")
        if c_plus.dim(key) != a.cols + b.rows:
            report.add(f"chain dimensions do not add up at {key}")
    logger.debug(f"{report}")
    return report
