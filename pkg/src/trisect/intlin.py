"""Exact integer linear algebra: Smith forms, lattices, unimodular solves.

All matrices are immutable and carry Python ints, so nothing here ever
rounds or overflows.  The row-reduction kernels live in ``_kernel`` and
are trusted only up to a post-hoc check: callers of
:func:`smith_normal_form` get a decomposition whose defining identity
``U @ M @ V == S`` has been asserted against the input.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Sequence

from . import _kernel
from .errors import DimensionMismatch, NotSublattice, NotUnimodular


class IntMatrix:
    """Immutable integer matrix stored row-major.

    Empty shapes (0 x n, m x 0, 0 x 0) are legal and act as rank-0
    neutral elements everywhere.
    """

    __slots__ = ("_data", "rows", "cols", "_hash")

    def __init__(self, rows: Iterable[Iterable[int]], cols: int | None = None):
        data = tuple(tuple(int(x) for x in row) for row in rows)
        width = len(data[0]) if data else (cols if cols is not None else 0)
        for row in data:
            if len(row) != width:
                raise DimensionMismatch("ragged rows in matrix literal")
        object.__setattr__(self, "_data", data)
        object.__setattr__(self, "rows", len(data))
        object.__setattr__(self, "cols", width)
        object.__setattr__(self, "_hash", None)

    def __setattr__(self, name, value):
        raise AttributeError("IntMatrix is immutable")

    # -- constructors ------------------------------------------------

    @classmethod
    def _wrap(cls, data: tuple, cols: int) -> "IntMatrix":
        """Internal fast path: `data` is a trusted tuple of int tuples."""
        obj = object.__new__(cls)
        object.__setattr__(obj, "_data", data)
        object.__setattr__(obj, "rows", len(data))
        object.__setattr__(obj, "cols", cols)
        object.__setattr__(obj, "_hash", None)
        return obj

    @classmethod
    def identity(cls, n: int) -> "IntMatrix":
        return cls._wrap(tuple(tuple(1 if i == j else 0 for j in range(n))
                               for i in range(n)), n)

    @classmethod
    def zeros(cls, m: int, n: int) -> "IntMatrix":
        row = (0,) * n
        return cls._wrap((row,) * m, n)

    @classmethod
    def diagonal(cls, entries: Sequence[int], rows: int | None = None,
                 cols: int | None = None) -> "IntMatrix":
        m = len(entries) if rows is None else rows
        n = len(entries) if cols is None else cols
        return cls(((entries[i] if (i == j and i < len(entries)) else 0
                     for j in range(n)) for i in range(m)), cols=n)

    @classmethod
    def from_columns(cls, columns: Sequence[Sequence[int]],
                     ambient: int | None = None) -> "IntMatrix":
        if not columns:
            return cls.zeros(ambient or 0, 0)
        n = len(columns[0])
        for c in columns:
            if len(c) != n:
                raise DimensionMismatch("columns of unequal length")
        return cls(((c[i] for c in columns) for i in range(n)),
                   cols=len(columns))

    @classmethod
    def block_diagonal(cls, blocks: Sequence["IntMatrix"]) -> "IntMatrix":
        m = sum(b.rows for b in blocks)
        n = sum(b.cols for b in blocks)
        out = [[0] * n for _ in range(m)]
        i0 = j0 = 0
        for b in blocks:
            for i in range(b.rows):
                row = b._data[i]
                for j in range(b.cols):
                    out[i0 + i][j0 + j] = row[j]
            i0 += b.rows
            j0 += b.cols
        return cls._wrap(tuple(tuple(r) for r in out), n)

    # -- access ------------------------------------------------------

    def __getitem__(self, ij) -> int:
        i, j = ij
        return self._data[i][j]

    def row(self, i: int) -> tuple[int, ...]:
        return self._data[i]

    def col(self, j: int) -> tuple[int, ...]:
        return tuple(r[j] for r in self._data)

    def columns(self) -> list[tuple[int, ...]]:
        return [self.col(j) for j in range(self.cols)]

    def to_lists(self) -> list[list[int]]:
        return [list(r) for r in self._data]

    def to_rows(self) -> tuple[tuple[int, ...], ...]:
        return self._data

    def take_columns(self, idx: Sequence[int]) -> "IntMatrix":
        return IntMatrix._wrap(tuple(tuple(r[j] for j in idx)
                                     for r in self._data), len(idx))

    def take_rows(self, idx: Sequence[int]) -> "IntMatrix":
        return IntMatrix._wrap(tuple(self._data[i] for i in idx), self.cols)

    # -- algebra -----------------------------------------------------

    def __matmul__(self, other: "IntMatrix") -> "IntMatrix":
        if self.cols != other.rows:
            raise DimensionMismatch(
                f"cannot multiply {self.rows}x{self.cols} by "
                f"{other.rows}x{other.cols}")
        if self.rows == 0 or self.cols == 0 or other.cols == 0:
            return IntMatrix.zeros(self.rows, other.cols)
        out = _kernel.matmul(self.to_lists(), other.to_lists())
        return IntMatrix._wrap(tuple(tuple(r) for r in out), other.cols)

    def __add__(self, other: "IntMatrix") -> "IntMatrix":
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise DimensionMismatch("shape mismatch in addition")
        return IntMatrix._wrap(tuple(tuple(a + b for a, b in zip(r1, r2))
                                     for r1, r2 in zip(self._data, other._data)),
                               self.cols)

    def __sub__(self, other: "IntMatrix") -> "IntMatrix":
        return self + (-other)

    def __neg__(self) -> "IntMatrix":
        return IntMatrix._wrap(tuple(tuple(-x for x in r) for r in self._data),
                               self.cols)

    def transpose(self) -> "IntMatrix":
        return IntMatrix._wrap(tuple(zip(*self._data)) if self._data
                               else ((),) * self.cols, self.rows)

    def hstack(self, other: "IntMatrix") -> "IntMatrix":
        if self.rows != other.rows:
            raise DimensionMismatch("row counts differ in hstack")
        return IntMatrix._wrap(tuple(r1 + r2 for r1, r2
                                     in zip(self._data, other._data)),
                               self.cols + other.cols)

    def is_zero(self) -> bool:
        return all(x == 0 for r in self._data for x in r)

    def is_symmetric(self) -> bool:
        if self.rows != self.cols:
            return False
        d = self._data
        return all(d[i][j] == d[j][i]
                   for i in range(self.rows) for j in range(i))

    def diagonal_entries(self) -> tuple[int, ...]:
        return tuple(self._data[i][i] for i in range(min(self.rows, self.cols)))

    # -- dunder plumbing ----------------------------------------------

    def __eq__(self, other) -> bool:
        return (isinstance(other, IntMatrix) and self.cols == other.cols
                and self._data == other._data)

    def __hash__(self) -> int:
        h = self._hash
        if h is None:
            h = hash((self.cols, self._data))
            object.__setattr__(self, "_hash", h)
        return h

    def __repr__(self) -> str:
        return f"IntMatrix({[list(r) for r in self._data]!r})"


def matvec(m: IntMatrix, v: Sequence[int]) -> tuple[int, ...]:
    """m @ v for a plain tuple/list vector."""
    if m.cols != len(v):
        raise DimensionMismatch("matrix-vector length mismatch")
    out = []
    for r in m.to_rows():
        acc = 0
        for a, b in zip(r, v):
            if a and b:
                acc += a * b
        out.append(acc)
    return tuple(out)


@dataclass(frozen=True)
class SmithDecomposition:
    """U @ M @ V == S with U, V unimodular and S in Smith normal form."""

    U: IntMatrix
    S: IntMatrix
    V: IntMatrix

    def diagonal(self) -> tuple[int, ...]:
        return self.S.diagonal_entries()

    @property
    def rank(self) -> int:
        return sum(1 for d in self.diagonal() if d)


def _freeze(rows: list[list[int]] | None, cols: int) -> IntMatrix | None:
    if rows is None:
        return None
    return IntMatrix._wrap(tuple(tuple(r) for r in rows), cols)


@lru_cache(maxsize=512)
def _full_snf(m: IntMatrix):
    """All five SNF components, cached per matrix."""
    if m.rows == 0 or m.cols == 0:
        # list-of-lists cannot carry a 0 x n shape through the kernel
        eye_r = IntMatrix.identity(m.rows)
        eye_c = IntMatrix.identity(m.cols)
        return m, eye_r, eye_c, eye_r, eye_c
    s, u, v, uinv, vinv = _kernel.snf(m.to_lists(), True, True, True, True)
    n = m.cols
    return (_freeze(s, n), _freeze(u, m.rows), _freeze(v, n),
            _freeze(uinv, m.rows), _freeze(vinv, n))


def _snf_v_only(m: IntMatrix):
    """One-shot S and V for kernel computations; skips the cache."""
    if m.rows == 0 or m.cols == 0:
        return m, IntMatrix.identity(m.cols)
    s, _, v, _, _ = _kernel.snf(m.to_lists(), False, True, False, False)
    return _freeze(s, m.cols), _freeze(v, m.cols)


def smith_normal_form(m: IntMatrix) -> SmithDecomposition:
    """Smith normal form with transforms; total on every integer matrix.

    The identity U @ M @ V == S is asserted before returning, so a
    kernel bug can never silently corrupt downstream homology.
    """
    s, u, v, _, _ = _full_snf(m)
    assert u @ m @ v == s, "SNF kernel identity violated"
    return SmithDecomposition(U=u, S=s, V=v)


def rank(m: IntMatrix) -> int:
    if m.rows == 0 or m.cols == 0:
        return 0
    s, _, _, _, _ = _kernel.snf(m.to_lists(), False, False, False, False)
    return sum(1 for i in range(min(m.rows, m.cols)) if s[i][i])


def determinant(m: IntMatrix) -> int:
    """Exact determinant by fraction-free (Bareiss) elimination."""
    if m.rows != m.cols:
        raise DimensionMismatch("determinant of a non-square matrix")
    n = m.rows
    if n == 0:
        return 1
    a = m.to_lists()
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for i in range(k + 1, n):
                if a[i][k]:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
        prev = a[k][k]
    return sign * a[n - 1][n - 1]


def is_unimodular(m: IntMatrix) -> bool:
    if m.rows != m.cols:
        return False
    if m.rows == 0:
        return True
    return determinant(m) in (1, -1)


def unimodular_inverse(m: IntMatrix) -> IntMatrix:
    """Inverse over the integers; raises NotUnimodular if |det| != 1.

    From U @ M @ V == I the inverse is V @ U, with no division at all.
    """
    if m.rows != m.cols:
        raise DimensionMismatch("inverse of a non-square matrix")
    s, u, v, _, _ = _full_snf(m)
    if any(d != 1 for d in s.diagonal_entries()) or s.rows != m.rows:
        raise NotUnimodular(f"matrix has invariant factors {s.diagonal_entries()}")
    inv = v @ u
    assert m @ inv == IntMatrix.identity(m.rows)
    return inv


def solve_matrix(m: IntMatrix, b: IntMatrix) -> IntMatrix | None:
    """Integer solution X of m @ X == b, or None if none exists.

    Free coordinates are set to zero, so the particular solution is
    deterministic.
    """
    if m.rows != b.rows:
        raise DimensionMismatch("solve: row counts differ")
    s, u, v, _, _ = _full_snf(m)
    diag = s.diagonal_entries()
    r = sum(1 for d in diag if d)
    ub = u @ b
    y = [[0] * b.cols for _ in range(m.cols)]
    for j in range(b.cols):
        for i in range(b.rows):
            t = ub[i, j]
            if i < r:
                if t % diag[i]:
                    return None
                y[i][j] = t // diag[i]
            elif t:
                return None
    return v @ IntMatrix(y, cols=b.cols)


def solve_vector(m: IntMatrix, b: Sequence[int]) -> tuple[int, ...] | None:
    x = solve_matrix(m, IntMatrix.from_columns([tuple(b)], ambient=m.rows))
    return None if x is None else x.col(0)


class Lattice:
    """Finitely generated subgroup of Z^ambient with an explicit basis.

    Basis columns are always Z-linearly independent; use
    :meth:`Lattice.span` to build one from possibly dependent
    generators.
    """

    __slots__ = ("ambient_rank", "basis")

    def __init__(self, ambient_rank: int, basis: IntMatrix, *,
                 _trusted: bool = False):
        if basis.rows != ambient_rank:
            raise DimensionMismatch("basis rows must match ambient rank")
        if not _trusted and rank(basis) != basis.cols:
            raise DimensionMismatch("basis columns are linearly dependent")
        object.__setattr__(self, "ambient_rank", ambient_rank)
        object.__setattr__(self, "basis", basis)

    def __setattr__(self, name, value):
        raise AttributeError("Lattice is immutable")

    @classmethod
    def zero(cls, ambient_rank: int) -> "Lattice":
        return cls(ambient_rank, IntMatrix.zeros(ambient_rank, 0))

    @classmethod
    def span(cls, generators: IntMatrix) -> "Lattice":
        """Lattice generated by the columns (dependencies are reduced out)."""
        s, v = _snf_v_only(generators)
        mv = generators @ v
        keep = [j for j in range(mv.cols)
                if any(mv[i, j] for i in range(mv.rows))]
        return cls(generators.rows, mv.take_columns(keep), _trusted=True)

    @property
    def rank(self) -> int:
        return self.basis.cols

    def contains(self, vector: Sequence[int]) -> bool:
        if len(vector) != self.ambient_rank:
            raise DimensionMismatch("vector length != ambient rank")
        return solve_vector(self.basis, vector) is not None

    def contains_lattice(self, other: "Lattice") -> bool:
        return solve_matrix(self.basis, other.basis) is not None

    def same_span(self, other: "Lattice") -> bool:
        return self.contains_lattice(other) and other.contains_lattice(self)

    def __repr__(self) -> str:
        return f"Lattice(ambient={self.ambient_rank}, rank={self.rank})"


def kernel_basis(m: IntMatrix) -> Lattice:
    """Saturated basis of the integer kernel {x : m @ x == 0}."""
    s, v = _snf_v_only(m)
    diag = s.diagonal_entries()
    r = sum(1 for d in diag if d)
    cols = v.take_columns(range(r, m.cols))
    return Lattice(m.cols, cols, _trusted=True)


def saturate(lat: Lattice) -> Lattice:
    """Smallest lattice of the same rational span with torsion-free quotient."""
    if lat.rank == 0:
        return lat
    s, _, _, uinv, _ = _full_snf(lat.basis)
    return Lattice(lat.ambient_rank, uinv.take_columns(range(lat.rank)),
                   _trusted=True)


def lattice_intersection(l1: Lattice, l2: Lattice) -> Lattice:
    """l1 /\\ l2 via the kernel of the concatenated basis matrix."""
    if l1.ambient_rank != l2.ambient_rank:
        raise DimensionMismatch("lattices live in different ambients")
    if l1.rank == 0 or l2.rank == 0:
        return Lattice.zero(l1.ambient_rank)
    stacked = l1.basis.hstack(-l2.basis)
    ker = kernel_basis(stacked)
    top = ker.basis.take_rows(range(l1.rank))
    return Lattice(l1.ambient_rank, l1.basis @ top, _trusted=True)


def reduce_mod_lattice(vector: Sequence[int], lat: Lattice) -> tuple[int, ...]:
    """Canonical representative of `vector` modulo `lat`.

    In the coordinates diagonalizing the lattice the first `rank`
    entries are floor-reduced modulo the invariant factors; the rest are
    untouched.  Deterministic, and zero exactly on lattice elements.
    """
    if lat.rank == 0:
        return tuple(int(x) for x in vector)
    s, u, _, uinv, _ = _full_snf(lat.basis)
    diag = s.diagonal_entries()
    y = list(matvec(u, vector))
    for i, d in enumerate(diag):
        y[i] -= d * (y[i] // d)
    return matvec(uinv, y)


def lattice_quotient(sub: Lattice, sup: Lattice):
    """Invariant factors and a free-part complement of sup/sub.

    Returns (factors, complement): `factors` are the torsion
    coefficients (> 1) of the quotient, and the columns of `complement`
    are elements of sup whose images form a basis of the free part.
    Complement columns are reduced modulo sub so the choice is canonical.
    Raises NotSublattice when sub is not contained in sup.
    """
    if sub.ambient_rank != sup.ambient_rank:
        raise DimensionMismatch("lattices live in different ambients")
    coords = solve_matrix(sup.basis, sub.basis)
    if coords is None:
        raise NotSublattice("claimed sublattice has a column outside the ambient lattice")
    s, _, _, uinv, _ = _full_snf(coords)
    diag = s.diagonal_entries()
    factors = [d for d in diag if d > 1]
    free_cols = uinv.take_columns(range(sub.rank, sup.rank))
    complement = sup.basis @ free_cols
    if sub.rank and complement.cols:
        reduced = [reduce_mod_lattice(complement.col(j), sub)
                   for j in range(complement.cols)]
        complement = IntMatrix.from_columns(reduced, ambient=sup.ambient_rank)
    return factors, complement
