# Copyright Contributors to the khoveq project.
# SPDX-License-Identifier: MIT

"""
Linear algebra over the two-element field.

Matrices are built from sparse position sets and eliminated on dense rows
packed into 64-bit words, so one XOR clears 64 columns at once.
"""

import collections
import logging
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

import numpy as np

from khoveq.exceptions import FiltrationException, KhovEqException, SubspaceException
from khoveq.formatter import formatted

logger = logging.getLogger(__name__)

WORD = 64


def _pack(dense: np.ndarray) -> np.ndarray:
    rows, cols = dense.shape
    width = -(-cols // WORD) * WORD
    padded = np.zeros((rows, width), dtype=np.uint8)
    padded[:, :cols] = dense & 1
    return np.packbits(padded, axis=1, bitorder="little").view("<u8")


def _unpack(words: np.ndarray, cols: int) -> np.ndarray:
    bits = np.unpackbits(
        np.ascontiguousarray(words).view(np.uint8), axis=1, bitorder="little"
    )
    return bits[:, :cols].astype(np.uint8)


def _column(words: np.ndarray, col: int) -> np.ndarray:
    shift = np.uint64(col % WORD)
    return ((words[:, col // WORD] >> shift) & np.uint64(1)).astype(bool)


def _row_reduce(
    dense: np.ndarray, pivot_limit: Optional[int] = None
) -> Tuple[np.ndarray, List[int]]:
    """
    Gauss-Jordan elimination with the smallest available column as pivot.

    Args:
        dense: Matrix as an array of zeros and ones.
        pivot_limit: Only the first `pivot_limit` columns are searched for pivots,
            row operations still act on the full width (augmented reduction).

    Returns:
        Tuple of the nonzero rows of the reduced echelon form and the pivot columns.
    """
    rows, cols = dense.shape
    words = _pack(dense)
    limit = cols if pivot_limit is None else pivot_limit
    pivots: List[int] = []
    top = 0
    for col in range(limit):
        if top == rows:
            break
        column = _column(words, col)
        candidates = np.flatnonzero(column[top:])
        if candidates.size == 0:
            continue
        found = top + int(candidates[0])
        if found != top:
            words[[top, found]] = words[[found, top]]
            column[[top, found]] = column[[found, top]]
        column[top] = False
        words[column] ^= words[top]
        pivots.append(col)
        top += 1
    return _unpack(words[:top], cols), pivots


class F2Matrix:
    """
    Sparse matrix over GF(2).

    Attributes:
        rows: Number of rows.
        cols: Number of columns.
        entries: Positions holding 1.
    """

    def __init__(
        self, rows: int, cols: int, entries: Iterable[Tuple[int, int]] = ()
    ) -> None:
        """
        Initializes a matrix, repeated positions cancel in pairs.

        Args:
            rows: Number of rows.
            cols: Number of columns.
            entries: Positions holding 1, with multiplicity.

        Raises:
            KhovEqException: If a position lies outside of the matrix.
        """
        positions = set()
        for r, c in entries:
            if not (0 <= r < rows and 0 <= c < cols):
                raise KhovEqException(f"Position {(r, c)} outside {rows}x{cols} matrix")
            positions ^= {(r, c)}
        self.rows = rows
        self.cols = cols
        self.entries = frozenset(positions)
        self._dense: Optional[np.ndarray] = None

    def _key(self) -> tuple:
        return self.rows, self.cols, self.entries

    def __hash__(self) -> int:
        return hash(self._key())

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, F2Matrix):
            return NotImplemented
        return self._key() == other._key()

    @formatted
    def __repr__(self) -> str:
        return f"F2Matrix({self.rows!r}, {self.cols!r}, {sorted(self.entries)!r})"

    @property
    def shape(self) -> Tuple[int, int]:
        return self.rows, self.cols

    @classmethod
    def from_dense(cls, dense: np.ndarray) -> "F2Matrix":
        array = np.asarray(dense, dtype=np.int64) % 2
        rows, cols = array.shape
        return cls(rows, cols, zip(*(idx.tolist() for idx in np.nonzero(array))))

    @classmethod
    def identity(cls, n: int) -> "F2Matrix":
        return cls(n, n, ((i, i) for i in range(n)))

    @classmethod
    def zero(cls, rows: int, cols: int) -> "F2Matrix":
        return cls(rows, cols)

    @classmethod
    def permutation(cls, perm: Sequence[int]) -> "F2Matrix":
        """Matrix sending basis vector j to basis vector `perm[j]`."""
        return cls(len(perm), len(perm), ((perm[j], j) for j in range(len(perm))))

    def to_dense(self) -> np.ndarray:
        if self._dense is None:
            dense = np.zeros((self.rows, self.cols), dtype=np.uint8)
            if self.entries:
                r, c = zip(*self.entries)
                dense[list(r), list(c)] = 1
            dense.flags.writeable = False
            self._dense = dense
        return self._dense

    def is_zero(self) -> bool:
        return not self.entries

    def transpose(self) -> "F2Matrix":
        return F2Matrix(self.cols, self.rows, ((c, r) for r, c in self.entries))

    def __add__(self, other: "F2Matrix") -> "F2Matrix":
        if self.shape != other.shape:
            raise KhovEqException(f"Cannot add {self.shape} and {other.shape} matrices")
        return F2Matrix(self.rows, self.cols, self.entries ^ other.entries)

    def __matmul__(self, other: "F2Matrix") -> "F2Matrix":
        if self.cols != other.rows:
            raise KhovEqException(
                f"Cannot multiply {self.shape} and {other.shape} matrices"
            )
        by_row: Dict[int, List[int]] = collections.defaultdict(list)
        for k, c in other.entries:
            by_row[k].append(c)
        products = ((r, c) for r, k in self.entries for c in by_row.get(k, ()))
        return F2Matrix(self.rows, other.cols, products)

    def apply(self, vector: np.ndarray) -> np.ndarray:
        """Image of a vector given as an array of zeros and ones."""
        return (self.to_dense().astype(np.int64) @ np.asarray(vector, np.int64)) % 2

    def restrict_columns(self, columns: Sequence[int]) -> "F2Matrix":
        index = {c: i for i, c in enumerate(columns)}
        return F2Matrix(
            self.rows,
            len(columns),
            ((r, index[c]) for r, c in self.entries if c in index),
        )


class F2Subspace:
    """
    Subspace of GF(2)^n stored as a reduced row-echelon basis.

    Attributes:
        ambient_dim: Dimension of the ambient space.
        basis: Basis rows in reduced row-echelon form, strictly increasing pivots.
        pivots: Pivot column of every basis row.
    """

    def __init__(self, ambient_dim: int, vectors: Optional[np.ndarray] = None) -> None:
        """
        Initializes the span of the given vectors.

        Args:
            ambient_dim: Dimension of the ambient space.
            vectors: Spanning vectors as rows, need not be independent.
        """
        self.ambient_dim = ambient_dim
        if vectors is None or ambient_dim == 0 or len(vectors) == 0:
            self.basis = np.zeros((0, ambient_dim), dtype=np.uint8)
            self.pivots: List[int] = []
        else:
            array = np.asarray(vectors, dtype=np.uint8).reshape(-1, ambient_dim)
            self.basis, self.pivots = _row_reduce(array)
        self.basis.flags.writeable = False

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, F2Subspace):
            return NotImplemented
        return self.ambient_dim == other.ambient_dim and np.array_equal(
            self.basis, other.basis
        )

    def __hash__(self) -> int:
        return hash((self.ambient_dim, self.basis.tobytes()))

    @formatted
    def __repr__(self) -> str:
        return f"F2Subspace({self.ambient_dim!r}, {self.basis.tolist()!r})"

    @classmethod
    def full(cls, n: int) -> "F2Subspace":
        return cls(n, np.eye(n, dtype=np.uint8))

    @property
    def dim(self) -> int:
        return len(self.pivots)

    def reduce(self, vectors: np.ndarray) -> np.ndarray:
        """Remainders of the given row vectors modulo the subspace."""
        if not self.ambient_dim:
            return np.zeros((0, 0), dtype=np.uint8)
        result = np.array(vectors, dtype=np.uint8).reshape(-1, self.ambient_dim)
        for row, pivot in zip(self.basis, self.pivots):
            result[result[:, pivot] == 1] ^= row
        return result

    def contains(self, vector: np.ndarray) -> bool:
        return not self.reduce(vector).any()

    def is_subspace_of(self, other: "F2Subspace") -> bool:
        if self.ambient_dim != other.ambient_dim:
            return False
        if not self.dim:
            return True
        return not other.reduce(self.basis).any()


def rank(m: F2Matrix) -> int:
    """GF(2) rank, eliminating along the shorter side."""
    if m.rows == 0 or m.cols == 0 or m.is_zero():
        return 0
    dense = m.to_dense() if m.cols <= m.rows else m.to_dense().T
    return len(_row_reduce(dense)[1])


def kernel(m: F2Matrix) -> F2Subspace:
    """Null space {v : m v = 0}."""
    reduced, pivots = _row_reduce(m.to_dense())
    pivot_set = set(pivots)
    free = [c for c in range(m.cols) if c not in pivot_set]
    vectors = np.zeros((len(free), m.cols), dtype=np.uint8)
    for k, f in enumerate(free):
        vectors[k, f] = 1
        for row, pivot in zip(reduced, pivots):
            vectors[k, pivot] = row[f]
    return F2Subspace(m.cols, vectors)


def image(m: F2Matrix) -> F2Subspace:
    """Column space."""
    return F2Subspace(m.rows, m.to_dense().T)


def quotient_basis(sub: F2Subspace, sup: F2Subspace) -> List[np.ndarray]:
    """
    Coset representatives of sup / sub.

    The representatives are the basis vectors of `sup` that are independent of
    `sub` and of the representatives chosen before them.

    Raises:
        SubspaceException: If `sub` is not contained in `sup`.
    """
    if not sub.is_subspace_of(sup):
        raise SubspaceException("Subspace is not contained in the superspace")
    if sub.dim == sup.dim:
        return []
    stacked = np.concatenate([sub.basis, sup.basis]).T
    _, pivots = _row_reduce(stacked)
    return [sup.basis[c - sub.dim].copy() for c in pivots if c >= sub.dim]


def _coordinates(
    rows: Sequence[np.ndarray], vectors: Sequence[np.ndarray], ambient_dim: int
) -> np.ndarray:
    """Coefficients expressing every vector in the independent `rows`."""
    k = len(rows)
    if not vectors:
        return np.zeros((0, k), dtype=np.uint8)
    augmented = np.concatenate(
        [
            np.array(rows, dtype=np.uint8).reshape(k, ambient_dim),
            np.eye(k, dtype=np.uint8),
        ],
        axis=1,
    )
    reduced, pivots = _row_reduce(augmented, pivot_limit=ambient_dim)
    remainders = np.array(vectors, dtype=np.uint8).reshape(-1, ambient_dim)
    tags = np.zeros((len(remainders), k), dtype=np.uint8)
    for row, pivot in zip(reduced, pivots):
        hit = remainders[:, pivot] == 1
        remainders[hit] ^= row[:ambient_dim]
        tags[hit] ^= row[ambient_dim:]
    if remainders.any():
        raise FiltrationException("Vector outside of the spanned subspace")
    return tags


def matrix_of_map_on_quotient(
    m: F2Matrix,
    cycles: F2Subspace,
    boundaries: F2Subspace,
    target_cycles: Optional[F2Subspace] = None,
    target_boundaries: Optional[F2Subspace] = None,
) -> F2Matrix:
    """
    Matrix of the map induced by `m` on cycles / boundaries.

    Bases of both quotients are the representatives from `quotient_basis`.

    Args:
        m: Linear map.
        cycles: Source cycles.
        boundaries: Source boundaries.
        target_cycles: Target cycles, defaults to the source ones.
        target_boundaries: Target boundaries, defaults to the source ones.

    Returns:
        Matrix with one column per source representative.

    Raises:
        FiltrationException: If `m` does not map cycles to cycles and
            boundaries to boundaries.
    """
    target_cycles = target_cycles if target_cycles is not None else cycles
    target_boundaries = (
        target_boundaries if target_boundaries is not None else boundaries
    )
    if m.cols != cycles.ambient_dim or m.rows != target_cycles.ambient_dim:
        raise FiltrationException(
            f"{m.rows}x{m.cols} map does not act between "
            f"{cycles.ambient_dim} and {target_cycles.ambient_dim} dimensional spaces"
        )
    dense = m.to_dense().astype(np.int64)
    if boundaries.dim and target_boundaries.reduce(
        (boundaries.basis @ dense.T) % 2
    ).any():
        raise FiltrationException("Map does not preserve boundaries")
    if cycles.dim and target_cycles.reduce((cycles.basis @ dense.T) % 2).any():
        raise FiltrationException("Map does not preserve cycles")
    source = quotient_basis(boundaries, cycles)
    target = quotient_basis(target_boundaries, target_cycles)
    if not source or not target:
        return F2Matrix.zero(len(target), len(source))
    images = [(dense @ r.astype(np.int64)) % 2 for r in source]
    tags = _coordinates(
        list(target_boundaries.basis) + target,
        images,
        target_cycles.ambient_dim,
    )
    offset = target_boundaries.dim
    coefficients = tags[:, offset:]
    return F2Matrix(
        len(target),
        len(source),
        ((int(r), int(c)) for c, r in zip(*np.nonzero(coefficients))),
    )
