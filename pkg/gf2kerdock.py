"""
Linked systems from Kerdock sets (the Cameron-Seidel construction).

A Kerdock set is a family of quadratic forms on Z_2^n (n = 2r) whose pairwise
sums have full-rank alternating bilinear forms. Each form Q gives the coset
[Q(x)]_x + RM(1, n); the 2^n codewords vanishing at the last point, with that
coordinate dropped and 0 -> -1, 1 -> +1, form a regular simplex. Between two
such simplices only the dot products 2^r - 1 and -(2^r + 1) occur, and the
positive ones define an LSSD(2^2r, 2^(r-1)(2^r+1), 2^(r-1)(2^(r-1)+1); w).

Points: index i in [0, 2^n) has coordinate x_(j+1) equal to bit j of i.
"""

from __future__ import annotations

import logging
from collections.abc import Sequence
from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations
from typing_extensions import Self, override

import numpy as np
import numpy.typing as npt

from constants import KERDOCK_N4_FORMS
from lssd_core import (
    ConstructionError,
    DimensionError,
    IntMatrix,
    InvalidParametersError,
    NoSuchFamilyError,
    SearchBudgetExhausted,
)
from lssd_designs import DesignParams
from lssd_system import LssdGraph

log = logging.getLogger(__name__)

DEFAULT_SEARCH_BUDGET = 1_000_000
MAX_SEARCH_N = 8


def _popcount_parity(x: int) -> int:
    return x.bit_count() & 1


def _rank_bitsets(rows: Sequence[int], n_cols: int) -> int:
    """Rank over GF(2) of rows given as int bitsets (bit j = column j)."""
    work = list(rows)
    rank = 0
    for col in range(n_cols):
        pivot = next((i for i in range(rank, len(work)) if (work[i] >> col) & 1), None)
        if pivot is None:
            continue
        work[rank], work[pivot] = work[pivot], work[rank]
        for i in range(len(work)):
            if i != rank and (work[i] >> col) & 1:
                work[i] ^= work[rank]
        rank += 1
        if rank == len(work):
            break
    return rank


def bilinear_rank_gf2(m: BilinearFormGF2 | Sequence[Sequence[int]]) -> int:
    """Rank over GF(2) of a square 01 matrix or a bilinear form."""
    if isinstance(m, BilinearFormGF2):
        return _rank_bitsets(m.rows, m.n)
    widths = {len(r) for r in m}
    if len(widths) > 1 or (widths and widths.pop() != len(m)):
        raise DimensionError("bilinear_rank_gf2 needs a square matrix")
    rows = [sum((int(x) & 1) << j for j, x in enumerate(r)) for r in m]
    return _rank_bitsets(rows, len(m))


@dataclass(frozen=True)
class BilinearFormGF2:
    """Symmetric zero-diagonal 01 matrix, stored as row bitmasks."""

    n: int
    rows: tuple[int, ...]

    def __post_init__(self) -> None:
        if len(self.rows) != self.n:
            raise DimensionError(f"expected {self.n} rows, got {len(self.rows)}")
        for i, row in enumerate(self.rows):
            if row >> self.n:
                raise DimensionError(f"row {i} has bits beyond column {self.n - 1}")
            if (row >> i) & 1:
                raise InvalidParametersError(f"nonzero diagonal entry at {i}", "zero diagonal")
            for j in range(self.n):
                if (row >> j) & 1 != (self.rows[j] >> i) & 1:
                    raise InvalidParametersError(f"entries ({i},{j}) and ({j},{i}) differ", "symmetric")

    @classmethod
    def from_matrix(cls, matrix: Sequence[Sequence[int]]) -> Self:
        rows = tuple(sum((int(x) & 1) << j for j, x in enumerate(r)) for r in matrix)
        return cls(len(matrix), rows)

    def to_matrix(self) -> list[list[int]]:
        return [[(row >> j) & 1 for j in range(self.n)] for row in self.rows]

    @property
    def rank(self) -> int:
        return _rank_bitsets(self.rows, self.n)

    def __add__(self, other: BilinearFormGF2) -> BilinearFormGF2:
        return BilinearFormGF2(self.n, tuple(a ^ b for a, b in zip(self.rows, other.rows)))


@dataclass(frozen=True)
class QuadraticFormGF2:
    """
    Q(x) = sum_{i<j} upper[i][j] x_i x_j + sum_i linear[i] x_i over GF(2).

    `upper[i]` is a bitmask of the columns j > i; `linear` a bitmask over the
    coordinates.
    """

    n: int
    upper: tuple[int, ...]
    linear: int = 0

    def __post_init__(self) -> None:
        if len(self.upper) != self.n:
            raise DimensionError(f"expected {self.n} rows, got {len(self.upper)}")
        for i, row in enumerate(self.upper):
            if row & ((1 << (i + 1)) - 1) or row >> self.n:
                raise DimensionError(f"row {i} is not strictly upper triangular")
        if self.linear >> self.n:
            raise DimensionError("linear part has bits beyond n")

    @classmethod
    def from_bilinear(cls, b: BilinearFormGF2) -> Self:
        """The quadratic form with zero linear part whose upper half is b's."""
        return cls(b.n, tuple(row & ~((1 << (i + 1)) - 1) for i, row in enumerate(b.rows)))

    @classmethod
    def from_mask(cls, n: int, mask: int) -> Self:
        """Decode a strictly-upper bitmask, pairs (i, j) enumerated with i outer."""
        upper = [0] * n
        for bit, (i, j) in enumerate(combinations(range(n), 2)):
            if (mask >> bit) & 1:
                upper[i] |= 1 << j
        return cls(n, tuple(upper))

    def bilinear(self) -> BilinearFormGF2:
        rows = list(self.upper)
        for i, row in enumerate(self.upper):
            for j in range(i + 1, self.n):
                if (row >> j) & 1:
                    rows[j] |= 1 << i
        return BilinearFormGF2(self.n, tuple(rows))

    def evaluate(self, x: int) -> int:
        total = _popcount_parity(self.linear & x)
        for i, row in enumerate(self.upper):
            if (x >> i) & 1:
                total ^= _popcount_parity(row & x)
        return total

    def truth_table(self) -> npt.NDArray[np.uint8]:
        """[Q(x)]_x over all 2^n points in index order."""
        points = np.arange(2**self.n)
        bits = ((points[:, None] >> np.arange(self.n)) & 1).astype(np.int64)
        upper = np.array(
            [[(row >> j) & 1 for j in range(self.n)] for row in self.upper], dtype=np.int64
        ).reshape(self.n, self.n)
        lin = np.array([(self.linear >> j) & 1 for j in range(self.n)], dtype=np.int64)
        values = ((bits @ upper) * bits).sum(axis=1) + bits @ lin
        return (values % 2).astype(np.uint8)

    def __add__(self, other: QuadraticFormGF2) -> QuadraticFormGF2:
        return QuadraticFormGF2(
            self.n,
            tuple(a ^ b for a, b in zip(self.upper, other.upper)),
            self.linear ^ other.linear,
        )


@dataclass(frozen=True)
class KerdockFamily:
    """Quadratic forms on Z_2^n with every pairwise sum of full rank."""

    n: int
    forms: tuple[QuadraticFormGF2, ...]

    def __post_init__(self) -> None:
        if self.n < 2 or self.n % 2:
            raise InvalidParametersError(f"n = {self.n} must be even and positive", "n even")
        if len(self.forms) > 2 ** (self.n - 1):
            raise InvalidParametersError(
                f"{len(self.forms)} forms exceed the maximum 2^(n-1) = {2 ** (self.n - 1)}",
                "w<=2^(n-1)",
            )
        for a, b in combinations(range(len(self.forms)), 2):
            if (self.forms[a] + self.forms[b]).bilinear().rank != self.n:
                raise InvalidParametersError(
                    f"forms {a + 1} and {b + 1} sum to a singular form", "pairwise full rank"
                )

    @property
    def w(self) -> int:
        return len(self.forms)

    @property
    def r(self) -> int:
        return self.n // 2


@dataclass(frozen=True, eq=False)
class SignSimplex:
    """2^n unscaled +1/-1 vectors of length 2^n - 1, pairwise dot product -1."""

    n: int
    vectors: IntMatrix

    def __post_init__(self) -> None:
        expected = (2**self.n, 2**self.n - 1)
        if self.vectors.shape != expected:
            raise DimensionError(f"simplex shape {self.vectors.shape}, expected {expected}")

    def gram(self) -> IntMatrix:
        return self.vectors @ self.vectors.T

    @override
    def __repr__(self) -> str:
        return f"SignSimplex(n={self.n})"


def reference_kerdock_n4() -> KerdockFamily:
    """The eight forms on Z_2^4 of the reference example."""
    forms = tuple(
        QuadraticFormGF2.from_bilinear(BilinearFormGF2.from_matrix(m)) for m in KERDOCK_N4_FORMS
    )
    return KerdockFamily(4, forms)


def family_from_bilinear(matrices: Sequence[Sequence[Sequence[int]]]) -> KerdockFamily:
    """Recover zero-linear quadratic forms from alternating matrices and validate them."""
    if not matrices:
        raise InvalidParametersError("no forms given", "w>=1")
    forms = tuple(
        QuadraticFormGF2.from_bilinear(BilinearFormGF2.from_matrix(m)) for m in matrices
    )
    return KerdockFamily(forms[0].n, forms)


# --- search ---
@lru_cache(maxsize=None)
def _mask_nonsingular(n: int, mask: int) -> bool:
    return QuadraticFormGF2.from_mask(n, mask).bilinear().rank == n


def search_kerdock_family(
    n: int, target_w: int, budget: int = DEFAULT_SEARCH_BUDGET
) -> KerdockFamily:
    """
    Depth-first search for `target_w` forms with pairwise full-rank sums.

    Forms have zero linear part and are enumerated by their strictly-upper
    bitmask in increasing order, starting from the zero form, so the result
    is deterministic. `budget` bounds the number of candidate forms tested.

    Raises NoSuchFamilyError when target_w > 2^(n-1) or the exhaustive search
    finds nothing, and SearchBudgetExhausted when the budget runs out first.
    """
    if n < 2 or n % 2 or n > MAX_SEARCH_N:
        raise InvalidParametersError(
            f"search needs even n in 2..{MAX_SEARCH_N}, got {n}", "n even, n<=8"
        )
    if target_w < 1:
        raise InvalidParametersError(f"target w = {target_w} must be positive", "w>=1")
    if target_w > 2 ** (n - 1):
        raise NoSuchFamilyError(
            f"no family of {target_w} forms on Z_2^{n}: at most 2^(n-1) = {2 ** (n - 1)}"
        )
    n_masks = 2 ** (n * (n - 1) // 2)
    chosen = [0]
    remaining = budget

    def extend(start: int) -> bool:
        nonlocal remaining
        if len(chosen) == target_w:
            return True
        for mask in range(start, n_masks):
            if remaining <= 0:
                raise SearchBudgetExhausted(
                    f"budget of {budget} candidates exhausted with {len(chosen)} of "
                    + f"{target_w} forms on Z_2^{n}"
                )
            remaining -= 1
            if all(_mask_nonsingular(n, mask ^ c) for c in chosen):
                chosen.append(mask)
                if extend(mask + 1):
                    return True
                _ = chosen.pop()
        return False

    if not extend(1):
        raise NoSuchFamilyError(f"exhaustive search found no {target_w} forms on Z_2^{n}")
    log.debug("kerdock search n=%d w=%d used %d candidates", n, target_w, budget - remaining)
    family = KerdockFamily(n, tuple(QuadraticFormGF2.from_mask(n, m) for m in chosen))
    return family


# --- codes, simplices and the graph ---
def rm1_coset(q: QuadraticFormGF2) -> npt.NDArray[np.uint8]:
    """
    The 2^(n+1) words [Q(x)]_x + (a.x + b), a outer and b inner.

    Row 0 is Q's own truth table and row 1 its complement.
    """
    n = q.n
    points = np.arange(2**n)
    bits = ((points[:, None] >> np.arange(n)) & 1).astype(np.int64)
    # row a holds the truth table of x -> a.x
    linear = ((bits @ bits.T) % 2).astype(np.uint8)
    base = q.truth_table()[None, :] ^ linear
    words = np.empty((2 ** (n + 1), 2**n), dtype=np.uint8)
    words[0::2] = base
    words[1::2] = base ^ 1
    return words


def kerdock_simplex(q: QuadraticFormGF2) -> SignSimplex:
    """Codewords vanishing at the last point, last coordinate dropped, mapped to +1/-1."""
    words = rm1_coset(q)
    kept = words[words[:, -1] == 0][:, :-1].astype(np.int64)
    return SignSimplex(q.n, IntMatrix(2 * kept - 1))


def cameron_seidel_lssd(fam: KerdockFamily) -> LssdGraph:
    """
    One fiber per form; a in X_i and b in X_j are adjacent iff their unscaled
    dot product is positive.

    Raises ConstructionError when a cross-fiber dot product is not one of
    2^r - 1 and -(2^r + 1).
    """
    r = fam.r
    params = DesignParams(4**r, 2 ** (r - 1) * (2**r + 1), 2 ** (r - 1) * (2 ** (r - 1) + 1))
    simplices = [kerdock_simplex(q) for q in fam.forms]
    allowed = {2**r - 1, -(2**r + 1)}
    blocks: dict[tuple[int, int], IntMatrix] = {}
    for i, j in combinations(range(fam.w), 2):
        dots = simplices[i].vectors @ simplices[j].vectors.T
        if extra := dots.values() - allowed:
            raise ConstructionError(
                f"fibers {i + 1},{j + 1}: dot products {sorted(extra)} outside {sorted(allowed)}"
            )
        blocks[(i, j)] = IntMatrix((dots.data > 0).astype(np.int64))
    log.info("built Cameron-Seidel LSSD%s with w = %d", params, fam.w)
    return LssdGraph(fam.w, params, blocks, provenance=f"kerdock n={fam.n} w={fam.w}")
