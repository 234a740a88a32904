"""
Exact arithmetic core for linked systems of symmetric designs.

This module provides the integer and rational matrix containers every other
module computes with, the shared exception hierarchy, and exact rank by
fraction-free (Bareiss) elimination. Reported values never pass through
floating point: the float64 product path is only taken when every partial
sum is an integer below 2**53, where float arithmetic is exact.
"""

from __future__ import annotations

import logging
import math
from collections.abc import Iterable, Sequence
from dataclasses import dataclass
from fractions import Fraction
from typing import TypeAlias

from typing_extensions import Self, override

import numpy as np
import numpy.typing as npt

log = logging.getLogger(__name__)

Rational: TypeAlias = Fraction
IntRows: TypeAlias = Sequence[Sequence[int]]
RatRows: TypeAlias = Sequence[Sequence[Fraction | int]]

# Largest magnitude for which float64 sums of integers stay exact.
_FLOAT_EXACT = 2**53
# Headroom kept below the int64 limit before switching to Python ints.
_INT64_SAFE = 2**62


# --- errors ---
class LssdError(Exception):
    """Base class for every error raised by the lssd modules."""


class DimensionError(LssdError, ValueError):
    """Matrix shapes do not fit the requested operation."""


class InvalidParametersError(LssdError, ValueError):
    """A (v, k, lambda) triple or an index tuple violates a stated constraint."""

    def __init__(self, message: str, constraint: str) -> None:
        super().__init__(message)
        self.constraint: str = constraint


class InfeasibleError(LssdError):
    """Parameters admit no linked system on more than two fibers."""


class ConstructionError(LssdError, RuntimeError):
    """A construction produced data that failed its own integrity check."""


class DegenerateSchemeError(LssdError):
    """Scheme construction refused for degenerate parameters."""


class KreinViolationError(LssdError):
    """A Krein parameter came out negative."""

    def __init__(self, i: int, j: int, k: int, value: Fraction) -> None:
        super().__init__(f"Krein parameter q_{{{i},{j}}}^{k} = {value} is negative")
        self.indices: tuple[int, int, int] = (i, j, k)
        self.value: Fraction = value


class SearchBudgetExhausted(LssdError):
    """A bounded search ran out of budget before reaching its target."""


class NoSuchFamilyError(LssdError):
    """The requested family provably cannot exist."""


class FormatError(LssdError, ValueError):
    """An input document or text matrix is malformed."""

    def __init__(self, message: str, field: str = "") -> None:
        super().__init__(message)
        self.field: str = field


# --- scalar helpers ---
def is_perfect_square(n: int) -> int | None:
    """Return the integer square root of n if n is a perfect square, else None."""
    if n < 0:
        return None
    root = math.isqrt(n)
    return root if root * root == n else None


def common_denominator(values: Iterable[Fraction]) -> int:
    """Least common multiple of the denominators of `values` (1 for none)."""
    den = 1
    for x in values:
        den = math.lcm(den, x.denominator)
    return den


def _max_abs(arr: npt.NDArray[np.generic]) -> int:
    if arr.size == 0:
        return 0
    return int(np.max(np.abs(arr)))


def _to_int_array(data: object) -> npt.NDArray[np.generic]:
    arr = np.array(data)
    if arr.dtype.kind == "b" or arr.dtype.kind in "iu":
        arr = arr.astype(np.int64)
    elif arr.dtype == object:
        flat = [int(x) for x in arr.ravel()]
        arr = np.array(flat, dtype=object).reshape(arr.shape)
        if _max_abs(arr) < _INT64_SAFE:
            arr = arr.astype(np.int64)
    else:
        raise TypeError(f"integer matrix entries expected, got dtype {arr.dtype}")
    return arr


def _matmul_arrays(
    a: npt.NDArray[np.generic], b: npt.NDArray[np.generic]
) -> npt.NDArray[np.generic]:
    bound = _max_abs(a) * _max_abs(b) * max(a.shape[1], 1)
    if bound < _FLOAT_EXACT:
        prod = a.astype(np.float64) @ b.astype(np.float64)
        return np.rint(prod).astype(np.int64)
    if bound < _INT64_SAFE and a.dtype != object and b.dtype != object:
        return a.astype(np.int64) @ b.astype(np.int64)
    log.debug("integer product bound %d exceeds int64, using Python ints", bound)
    return np.dot(a.astype(object), b.astype(object))


@dataclass(frozen=True, eq=False)
class IntMatrix:
    """
    Immutable dense integer matrix.

    - Backed by a read-only numpy array: int64 while entries fit, Python ints
      (object dtype) beyond that.
    - Products pick the cheapest exact path (see module docstring).
    - Equality compares shape and entries.
    """

    data: npt.NDArray[np.generic]

    def __post_init__(self) -> None:
        arr = _to_int_array(self.data)
        if arr.ndim != 2:
            raise DimensionError(f"matrix must be 2-dimensional, got shape {arr.shape}")
        arr.flags.writeable = False
        object.__setattr__(self, "data", arr)

    # --- factories ---
    @classmethod
    def from_rows(cls, rows: IntRows) -> Self:
        """Build from a sequence of equal-length integer rows."""
        widths = {len(r) for r in rows}
        if len(widths) > 1:
            raise DimensionError(f"ragged rows with lengths {sorted(widths)}")
        return cls(np.array([[int(x) for x in r] for r in rows], dtype=object))

    @classmethod
    def identity(cls, n: int) -> Self:
        return cls(np.eye(n, dtype=np.int64))

    @classmethod
    def zeros(cls, rows: int, cols: int) -> Self:
        return cls(np.zeros((rows, cols), dtype=np.int64))

    @classmethod
    def ones(cls, rows: int, cols: int) -> Self:
        return cls(np.ones((rows, cols), dtype=np.int64))

    @classmethod
    def block(cls, blocks: Sequence[Sequence[IntMatrix]]) -> Self:
        """Assemble a block matrix from a grid of IntMatrix blocks."""
        return cls(np.block([[b.data for b in row] for row in blocks]))

    # --- shape ---
    @property
    def rows(self) -> int:
        return int(self.data.shape[0])

    @property
    def cols(self) -> int:
        return int(self.data.shape[1])

    @property
    def shape(self) -> tuple[int, int]:
        return (self.rows, self.cols)

    @property
    def T(self) -> IntMatrix:
        return IntMatrix(self.data.T)

    def __getitem__(self, index: tuple[int, int]) -> int:
        return int(self.data[index])

    def tolist(self) -> list[list[int]]:
        return [[int(x) for x in row] for row in self.data]

    def submatrix(self, r0: int, r1: int, c0: int, c1: int) -> IntMatrix:
        """Rows r0..r1-1 and columns c0..c1-1."""
        return IntMatrix(self.data[r0:r1, c0:c1])

    # --- arithmetic ---
    def _check_same_shape(self, other: IntMatrix) -> None:
        if self.shape != other.shape:
            raise DimensionError(f"shape mismatch {self.shape} vs {other.shape}")

    def _combine(self, other: IntMatrix, sign: int) -> IntMatrix:
        self._check_same_shape(other)
        a, b = self.data, other.data
        if _max_abs(a) + _max_abs(b) >= _INT64_SAFE:
            a, b = a.astype(object), b.astype(object)
        return IntMatrix(a + sign * b)

    def __add__(self, other: IntMatrix) -> IntMatrix:
        return self._combine(other, 1)

    def __sub__(self, other: IntMatrix) -> IntMatrix:
        return self._combine(other, -1)

    def __neg__(self) -> IntMatrix:
        return IntMatrix(-self.data)

    def scale(self, c: int) -> IntMatrix:
        a = self.data
        if _max_abs(a) * abs(c) >= _INT64_SAFE:
            a = a.astype(object)
        return IntMatrix(a * c)

    def __matmul__(self, other: IntMatrix) -> IntMatrix:
        return int_mat_mul(self, other)

    # --- inspection ---
    def row_sums(self) -> list[int]:
        return [int(x) for x in self.data.sum(axis=1)]

    def col_sums(self) -> list[int]:
        return [int(x) for x in self.data.sum(axis=0)]

    def values(self) -> set[int]:
        """Distinct entries."""
        return {int(x) for x in np.unique(self.data)}

    def is_zero_one(self) -> bool:
        return self.values() <= {0, 1}

    def is_symmetric(self) -> bool:
        return self.rows == self.cols and bool(np.array_equal(self.data, self.data.T))

    def to_rational(self) -> RatMatrix:
        return RatMatrix(self.data.astype(object))

    @override
    def __eq__(self, other: object) -> bool:
        if not isinstance(other, IntMatrix):
            return NotImplemented
        return self.shape == other.shape and bool(np.array_equal(self.data, other.data))

    __hash__ = None  # type: ignore[assignment]

    @override
    def __repr__(self) -> str:
        return f"IntMatrix(shape={self.shape})"


@dataclass(frozen=True, eq=False)
class RatMatrix:
    """
    Immutable dense matrix of `Fraction` entries (object-dtype numpy array).
    Fractions are always in lowest terms with positive denominators.
    """

    data: npt.NDArray[np.object_]

    def __post_init__(self) -> None:
        arr = np.array(self.data, dtype=object)
        if arr.ndim != 2:
            raise DimensionError(f"matrix must be 2-dimensional, got shape {arr.shape}")
        conv = np.empty(arr.shape, dtype=object)
        for index, x in np.ndenumerate(arr):
            conv[index] = Fraction(x)
        conv.flags.writeable = False
        object.__setattr__(self, "data", conv)

    @classmethod
    def from_rows(cls, rows: RatRows) -> Self:
        widths = {len(r) for r in rows}
        if len(widths) > 1:
            raise DimensionError(f"ragged rows with lengths {sorted(widths)}")
        grid = np.empty((len(rows), widths.pop() if widths else 0), dtype=object)
        for i, row in enumerate(rows):
            for j, x in enumerate(row):
                grid[i, j] = Fraction(x)
        return cls(grid)

    @classmethod
    def from_int(cls, m: IntMatrix) -> Self:
        return cls(m.data.astype(object))

    @classmethod
    def identity(cls, n: int) -> Self:
        return cls(np.eye(n, dtype=np.int64).astype(object))

    @property
    def rows(self) -> int:
        return int(self.data.shape[0])

    @property
    def cols(self) -> int:
        return int(self.data.shape[1])

    @property
    def shape(self) -> tuple[int, int]:
        return (self.rows, self.cols)

    @property
    def T(self) -> RatMatrix:
        return RatMatrix(self.data.T)

    def __getitem__(self, index: tuple[int, int]) -> Fraction:
        return self.data[index]

    def tolist(self) -> list[list[Fraction]]:
        return [list(row) for row in self.data]

    def __matmul__(self, other: RatMatrix) -> RatMatrix:
        return mat_mul(self, other)

    def __add__(self, other: RatMatrix) -> RatMatrix:
        if self.shape != other.shape:
            raise DimensionError(f"shape mismatch {self.shape} vs {other.shape}")
        return RatMatrix(self.data + other.data)

    def scale(self, c: Fraction | int) -> RatMatrix:
        return RatMatrix(self.data * Fraction(c))

    def to_scaled_int(self) -> tuple[IntMatrix, int]:
        """Return (D * self, D) with D the common denominator of all entries."""
        den = common_denominator(self.data.ravel())
        ints = [[int(x * den) for x in row] for row in self.data]
        return IntMatrix.from_rows(ints), den

    @override
    def __eq__(self, other: object) -> bool:
        if not isinstance(other, RatMatrix):
            return NotImplemented
        return self.shape == other.shape and bool(np.all(self.data == other.data))

    __hash__ = None  # type: ignore[assignment]

    @override
    def __repr__(self) -> str:
        return f"RatMatrix(shape={self.shape})"


# --- operations ---
def int_mat_mul(a: IntMatrix, b: IntMatrix) -> IntMatrix:
    """Exact integer product; raises DimensionError when a.cols != b.rows."""
    if a.cols != b.rows:
        raise DimensionError(f"cannot multiply {a.shape} by {b.shape}")
    return IntMatrix(_matmul_arrays(a.data, b.data))


def mat_mul(a: RatMatrix, b: RatMatrix) -> RatMatrix:
    """Exact rational product; raises DimensionError when a.cols != b.rows."""
    if a.cols != b.rows:
        raise DimensionError(f"cannot multiply {a.shape} by {b.shape}")
    return RatMatrix(np.dot(a.data, b.data))


def kronecker(a: IntMatrix, b: IntMatrix) -> IntMatrix:
    """Standard Kronecker product of shape (a.rows*b.rows, a.cols*b.cols)."""
    x, y = a.data, b.data
    if _max_abs(x) * _max_abs(y) >= _INT64_SAFE:
        x, y = x.astype(object), y.astype(object)
    return IntMatrix(np.kron(x, y))


def _integer_rows(m: RatMatrix | IntMatrix) -> npt.NDArray[np.object_]:
    if isinstance(m, IntMatrix):
        return m.data.astype(object)
    out = np.empty(m.shape, dtype=object)
    for i, row in enumerate(m.data):
        den = common_denominator(row)
        for j, x in enumerate(row):
            out[i, j] = int(x * den)
    return out


def rank_exact(m: RatMatrix | IntMatrix) -> int:
    """
    Rank over the rationals by Bareiss fraction-free elimination.

    Rational rows are first cleared of denominators (row scaling keeps the
    rank). Every division in the elimination is exact, so all intermediate
    values stay integers.
    """
    a = _integer_rows(m).copy()
    n_rows, n_cols = a.shape
    rank = 0
    prev: int = 1
    for col in range(n_cols):
        if rank == n_rows:
            break
        nonzero = [r for r in range(rank, n_rows) if a[r, col] != 0]
        if not nonzero:
            continue
        p = nonzero[0]
        if p != rank:
            a[[rank, p]] = a[[p, rank]]
        pivot = a[rank, col]
        if rank + 1 < n_rows and col + 1 < n_cols:
            lower = a[rank + 1 :, col + 1 :]
            factors = a[rank + 1 :, col][:, None]
            pivot_row = a[rank, col + 1 :][None, :]
            a[rank + 1 :, col + 1 :] = (lower * pivot - factors * pivot_row) // prev
        a[rank + 1 :, col] = 0
        prev = pivot
        rank += 1
    return rank
