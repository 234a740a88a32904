"""
Hadamard matrices, orthogonal arrays and unbiased Hadamard sets.

Optimistic LSSDs with Menon parameters (v = 4u^2, k = 2u^2 + u) are the same
thing as sets of w - 1 regular Hadamard matrices of order v that are pairwise
unbiased. This module builds such sets (Beth-Wocjan: an orthogonal array plus
a regular Hadamard matrix of the array's order) and converts in both
directions.

Conventions:

- A Hadamard matrix H_i relating basis 1 to basis i has rows indexed by the
  vectors of basis 1 and columns by those of basis i.
- Two Hadamard matrices of order n are unbiased when every entry of
  H_1ᵀ H_2 is +-sqrt(n); block (i, j) of the LSSD is the sign pattern of
  H_iᵀ H_j / sqrt(n).
- Orthogonal arrays use symbols 1..n; the API takes 0-based column indices.
"""

from __future__ import annotations

import logging
from collections.abc import Sequence
from dataclasses import dataclass
from functools import cached_property
from itertools import combinations
from typing_extensions import Self, override

import numpy as np
import numpy.typing as npt
import sympy

from constants import H4, H36_ROWS, OA16_COLUMNS, sign_rows
from lssd_core import (
    ConstructionError,
    DimensionError,
    IntMatrix,
    InvalidParametersError,
    is_perfect_square,
    kronecker,
)
from lssd_designs import DesignParams
from lssd_system import (
    LssdGraph,
    classify,
    fiber_label,
    multipartite_complement,
    mu_nu,
    verify_lssd,
)

log = logging.getLogger(__name__)


# --- Hadamard matrices ---
@dataclass(frozen=True)
class HadamardProps:
    is_hadamard: bool
    is_regular: bool
    row_sum: int | None


def hadamard_props(h: IntMatrix) -> HadamardProps:
    """
    Exact Hadamard and regularity checks.

    Regular means every row sum and column sum equals one constant c with
    c^2 = order. Raises DimensionError for non-square input and
    InvalidParametersError for entries other than +-1.
    """
    n = h.rows
    if h.shape != (n, n):
        raise DimensionError(f"Hadamard matrix must be square, got {h.shape}")
    if not h.values() <= {1, -1}:
        raise InvalidParametersError("Hadamard entries must be +1 or -1", "entries +-1")
    is_hadamard = h @ h.T == IntMatrix.identity(n).scale(n)
    sums = set(h.row_sums()) | set(h.col_sums())
    row_sum: int | None = None
    if len(sums) == 1:
        c = sums.pop()
        if c * c == n:
            row_sum = c
    return HadamardProps(is_hadamard, is_hadamard and row_sum is not None, row_sum if is_hadamard else None)


@dataclass(frozen=True, eq=False)
class HadamardMatrix:
    """A +-1 matrix with H Hᵀ = order * I."""

    entries: IntMatrix

    def __post_init__(self) -> None:
        if not hadamard_props(self.entries).is_hadamard:
            raise InvalidParametersError(
                f"{self.entries.shape} matrix is not Hadamard", "H Hᵀ = nI"
            )

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[int]]) -> Self:
        return cls(IntMatrix.from_rows(rows))

    @classmethod
    def from_signs(cls, rows: Sequence[str]) -> Self:
        """Build from rows of '+'/'-' characters."""
        return cls(IntMatrix.from_rows(sign_rows(list(rows))))

    @property
    def order(self) -> int:
        return self.entries.rows

    @cached_property
    def props(self) -> HadamardProps:
        return hadamard_props(self.entries)

    @property
    def row_sum(self) -> int | None:
        """The common row sum when the matrix is regular."""
        return self.props.row_sum

    @property
    def is_regular(self) -> bool:
        return self.props.is_regular

    def negated(self) -> HadamardMatrix:
        return HadamardMatrix(-self.entries)

    def signs(self) -> list[str]:
        return ["".join("+" if x == 1 else "-" for x in row) for row in self.entries.tolist()]

    @override
    def __eq__(self, other: object) -> bool:
        if not isinstance(other, HadamardMatrix):
            return NotImplemented
        return self.entries == other.entries

    __hash__ = None  # type: ignore[assignment]

    @override
    def __repr__(self) -> str:
        return f"HadamardMatrix(order={self.order}, row_sum={self.row_sum})"


def unbiased(h1: HadamardMatrix, h2: HadamardMatrix) -> bool:
    """True iff every entry of h1ᵀ h2 is +-sqrt(order); False when order is not a square."""
    if h1.order != h2.order:
        raise DimensionError(f"orders differ: {h1.order} and {h2.order}")
    root = is_perfect_square(h1.order)
    if root is None:
        log.debug("order %d is not a square: no unbiased pair exists", h1.order)
        return False
    return (h1.entries.T @ h2.entries).values() <= {root, -root}


def sylvester(e: int) -> HadamardMatrix:
    """The 2^e x 2^e Sylvester matrix, a Kronecker power of [[1, 1], [1, -1]]."""
    if e < 0:
        raise InvalidParametersError(f"exponent {e} must be nonnegative", "e>=0")
    base = IntMatrix.from_rows([[1, 1], [1, -1]])
    h = IntMatrix.identity(1)
    for _ in range(e):
        h = kronecker(h, base)
    return HadamardMatrix(h)


def reference_h4() -> HadamardMatrix:
    """Regular 4x4 Hadamard matrix with -1 diagonal, row sum 2."""
    return HadamardMatrix.from_rows(H4)


def reference_h36() -> HadamardMatrix:
    """Regular 36x36 Hadamard matrix, row sum 6."""
    return HadamardMatrix.from_signs(H36_ROWS)


def hadamard_power(h: HadamardMatrix, e: int) -> HadamardMatrix:
    """H^(⊗e); a regular H with row sum c gives a regular power with row sum c^e."""
    if e < 1:
        raise InvalidParametersError(f"exponent {e} must be positive", "e>=1")
    out = h.entries
    for _ in range(e - 1):
        out = kronecker(out, h.entries)
    return HadamardMatrix(out)


# --- finite fields ---
# Irreducible polynomials over GF(p), coefficients from the constant term up.
IRREDUCIBLE: dict[int, list[int]] = {
    4: [1, 1, 1],
    8: [1, 1, 0, 1],
    16: [1, 1, 0, 0, 1],
    32: [1, 0, 1, 0, 0, 1],
    64: [1, 1, 0, 0, 0, 0, 1],
    9: [1, 0, 1],
    27: [1, 2, 0, 1],
    25: [2, 0, 1],
    49: [1, 0, 1],
}
MAX_FIELD_ORDER = 64


def _prime_power(q: int) -> tuple[int, int]:
    factors = sympy.factorint(q) if q >= 2 else {}
    if len(factors) != 1:
        raise InvalidParametersError(f"q = {q} is not a prime power", "q prime power")
    ((p, e),) = factors.items()
    return int(p), int(e)


@dataclass(frozen=True, eq=False)
class FiniteField:
    """
    GF(q) with elements 0..q-1 read as base-p digit vectors (constant digit
    first). Addition and multiplication tables are precomputed.
    """

    q: int
    p: int
    e: int
    add: npt.NDArray[np.int64]
    mul: npt.NDArray[np.int64]

    @classmethod
    def create(cls, q: int) -> Self:
        p, e = _prime_power(q)
        if q > MAX_FIELD_ORDER:
            raise InvalidParametersError(
                f"fields are tabulated up to order {MAX_FIELD_ORDER}, got {q}", "q<=64"
            )
        if e == 1:
            xs = np.arange(q)
            return cls(q, p, e, (xs[:, None] + xs[None, :]) % q, (xs[:, None] * xs[None, :]) % q)
        if q not in IRREDUCIBLE:
            raise InvalidParametersError(f"no irreducible polynomial tabulated for q = {q}", "q tabulated")
        modulus = IRREDUCIBLE[q]
        digits = [[(x // p**i) % p for i in range(e)] for x in range(q)]
        add = np.zeros((q, q), dtype=np.int64)
        mul = np.zeros((q, q), dtype=np.int64)
        for a in range(q):
            for b in range(q):
                add[a, b] = _from_digits([(x + y) % p for x, y in zip(digits[a], digits[b])], p)
                mul[a, b] = _from_digits(_poly_mul_mod(digits[a], digits[b], modulus, p), p)
        field = cls(q, p, e, add, mul)
        field.check_axioms()
        return field

    def check_axioms(self) -> None:
        """Each row of the addition table, and each nonzero row of the multiplication table, permutes the elements."""
        everything = set(range(self.q))
        for a in range(self.q):
            if set(self.add[a].tolist()) != everything:
                raise ConstructionError(f"GF({self.q}): addition by {a} is not a bijection")
            if a and set(self.mul[a, 1:].tolist()) != everything - {0}:
                raise ConstructionError(f"GF({self.q}): {a} has no inverse")


def _from_digits(digits: Sequence[int], p: int) -> int:
    return sum(d * p**i for i, d in enumerate(digits))


def _poly_mul_mod(a: Sequence[int], b: Sequence[int], modulus: Sequence[int], p: int) -> list[int]:
    e = len(modulus) - 1
    prod = [0] * (2 * e - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            prod[i + j] = (prod[i + j] + x * y) % p
    # modulus is monic: reduce from the top degree down
    for deg in range(len(prod) - 1, e - 1, -1):
        c = prod[deg]
        if c:
            for i, m in enumerate(modulus):
                prod[deg - e + i] = (prod[deg - e + i] - c * m) % p
    return prod[:e]


def latin_squares(q: int) -> list[npt.NDArray[np.int64]]:
    """The q - 1 mutually orthogonal Latin squares L_a(x, y) = a*x + y, a != 0 (0-based symbols)."""
    f = FiniteField.create(q)
    return [f.add[f.mul[a][:, None], np.arange(q)[None, :]] for a in range(1, q)]


# --- orthogonal arrays ---
@dataclass(frozen=True, eq=False)
class OrthogonalArray:
    """
    n^2 rows over symbols 1..n in which every ordered pair of columns shows
    every ordered symbol pair once. Construction checks shape and symbols;
    `check_pairs` checks orthogonality.
    """

    n: int
    rows: npt.NDArray[np.int64]

    def __post_init__(self) -> None:
        arr = np.array(self.rows, dtype=np.int64)
        if arr.ndim != 2 or arr.shape[0] != self.n * self.n or arr.shape[1] < 2:
            raise DimensionError(
                f"an OA over {self.n} symbols needs {self.n ** 2} rows and 2+ columns, "
                + f"got shape {arr.shape}"
            )
        if arr.min() < 1 or arr.max() > self.n:
            raise InvalidParametersError(f"symbols must lie in 1..{self.n}", "symbols 1..n")
        arr.flags.writeable = False
        object.__setattr__(self, "rows", arr)

    @classmethod
    def from_columns(cls, n: int, columns: Sequence[Sequence[int]]) -> Self:
        return cls(n, np.array(columns, dtype=np.int64).T)

    @property
    def cols(self) -> int:
        return int(self.rows.shape[1])

    def first_bad_pair(self) -> tuple[int, int] | None:
        """The lexicographically least column pair that repeats a symbol pair."""
        zero_based = self.rows - 1
        for a, b in combinations(range(self.cols), 2):
            codes = zero_based[:, a] * self.n + zero_based[:, b]
            if len(np.unique(codes)) != self.n * self.n:
                return (a, b)
        return None

    def check_pairs(self) -> bool:
        return self.first_bad_pair() is None

    def require_orthogonal(self) -> None:
        if (bad := self.first_bad_pair()) is not None:
            raise ConstructionError(f"columns {fiber_label(*bad)} repeat a symbol pair")

    def occurrence_index(self, col: int) -> npt.NDArray[np.int64]:
        """For each row, how many earlier rows carry the same symbol in `col`."""
        order = np.argsort(self.rows[:, col], kind="stable")
        occ = np.empty(self.n * self.n, dtype=np.int64)
        occ[order] = np.arange(self.n * self.n) % self.n
        return occ

    @override
    def __repr__(self) -> str:
        return f"OrthogonalArray(n={self.n}, cols={self.cols})"


def mols_oa(q: int) -> OrthogonalArray:
    """OA with q + 1 columns: x, y and one column per Latin square, rows with x outer."""
    squares = latin_squares(q)
    xs, ys = np.meshgrid(np.arange(q), np.arange(q), indexing="ij")
    columns = [xs.ravel(), ys.ravel(), *(sq.ravel() for sq in squares)]
    oa = OrthogonalArray(q, np.stack(columns, axis=1) + 1)
    log.debug("built %r from GF(%d)", oa, q)
    return oa


def macneish_product(o1: OrthogonalArray, o2: OrthogonalArray) -> OrthogonalArray:
    """
    Product array on n1*n2 symbols: row pairs (r1 outer, r2 inner), symbol
    (a, b) encoded as (a - 1) n2 + b, keeping min(cols) columns.
    """
    cols = min(o1.cols, o2.cols)
    a = np.repeat(o1.rows[:, :cols], o2.rows.shape[0], axis=0)
    b = np.tile(o2.rows[:, :cols], (o1.rows.shape[0], 1))
    return OrthogonalArray(o1.n * o2.n, (a - 1) * o2.n + b)


def macneish_power(o: OrthogonalArray, e: int) -> OrthogonalArray:
    if e < 1:
        raise InvalidParametersError(f"exponent {e} must be positive", "e>=1")
    out = o
    for _ in range(e - 1):
        out = macneish_product(out, o)
    return out


def reference_oa16() -> OrthogonalArray:
    """The 16 x 3 array over symbols 1..4 of the 16-dimensional example."""
    return OrthogonalArray.from_columns(4, OA16_COLUMNS)


# --- Beth-Wocjan ---
def _check_inputs(o: OrthogonalArray, h: HadamardMatrix) -> None:
    if h.order != o.n:
        raise DimensionError(f"Hadamard order {h.order} differs from OA symbol count {o.n}")


def beth_wocjan_bases(o: OrthogonalArray, h: HadamardMatrix) -> list[IntMatrix]:
    """
    One n^2 x n^2 matrix M_i per OA column, unscaled (entries 0, +-1).

    Column (j, l) of M_i (j outer) is supported on the rows of O carrying
    symbol j + 1 in column i; its t-th support row from the top holds H[t][l].
    """
    _check_inputs(o, h)
    n = o.n
    hm = h.entries.data.astype(np.int64)
    bases: list[IntMatrix] = []
    rows = np.arange(n * n)
    for i in range(o.cols):
        occ = o.occurrence_index(i)
        sym = o.rows[:, i] - 1
        m = np.zeros((n * n, n * n), dtype=np.int64)
        cols = sym[:, None] * n + np.arange(n)[None, :]
        m[rows[:, None], cols] = hm[occ]
        bases.append(IntMatrix(m))
    return bases


def basis_hadamard(o: OrthogonalArray, h: HadamardMatrix, i: int, j: int) -> HadamardMatrix:
    """
    H_{i,j} = M_iᵀ M_j without forming the bases.

    The supports of columns (j1, .) of M_i and (j2, .) of M_j meet in the one
    OA row k carrying j1 in column i and j2 in column j, so block (j1, j2) is
    the outer product of the H rows selected by k's occurrence indices.
    """
    _check_inputs(o, h)
    if i == j:
        raise DimensionError("basis_hadamard needs two distinct columns")
    n = o.n
    hm = h.entries.data.astype(np.int64)
    s1, s2 = o.rows[:, i] - 1, o.rows[:, j] - 1
    a = hm[o.occurrence_index(i)]
    b = hm[o.occurrence_index(j)]
    out = np.zeros((n, n, n, n), dtype=np.int64)
    ls = np.arange(n)
    out[s1[:, None, None], ls[None, :, None], s2[:, None, None], ls[None, None, :]] = (
        a[:, :, None] * b[:, None, :]
    )
    return HadamardMatrix(IntMatrix(out.reshape(n * n, n * n)))


@dataclass(frozen=True, eq=False)
class UnbiasedHadamardSet:
    """
    Pairwise unbiased Hadamard matrices of one square order.

    `from_matrices` negates any regular matrix with negative row sum.
    """

    order: int
    matrices: tuple[HadamardMatrix, ...]

    def __post_init__(self) -> None:
        if is_perfect_square(self.order) is None:
            raise InvalidParametersError(f"order {self.order} is not a perfect square", "order square")
        if not self.matrices:
            raise InvalidParametersError("an unbiased set needs at least one matrix", "nonempty")
        for idx, hm in enumerate(self.matrices):
            if hm.order != self.order:
                raise DimensionError(f"matrix {idx + 1} has order {hm.order}, expected {self.order}")
        for a, b in combinations(range(len(self.matrices)), 2):
            if not unbiased(self.matrices[a], self.matrices[b]):
                raise InvalidParametersError(f"matrices {a + 1} and {b + 1} are not unbiased", "unbiased")

    @classmethod
    def from_matrices(cls, matrices: Sequence[HadamardMatrix]) -> Self:
        if not matrices:
            raise InvalidParametersError("an unbiased set needs at least one matrix", "nonempty")
        fixed = [
            m.negated() if m.row_sum is not None and m.row_sum < 0 else m for m in matrices
        ]
        return cls(fixed[0].order, tuple(fixed))

    @property
    def all_regular(self) -> bool:
        return all(m.is_regular and (m.row_sum or 0) > 0 for m in self.matrices)

    @property
    def root(self) -> int:
        root = is_perfect_square(self.order)
        assert root is not None
        return root

    def __len__(self) -> int:
        return len(self.matrices)


def beth_wocjan_unbiased_set(o: OrthogonalArray, h: HadamardMatrix) -> UnbiasedHadamardSet:
    """
    H_{1,i} for every OA column i after the first.

    Each output is Hadamard of order n^2; when H is regular with row sum c,
    each output is regular with row sum c^2 (otherwise the set is returned
    and its `all_regular` flag is False). Raises ConstructionError when the
    array is not orthogonal or a check fails.
    """
    _check_inputs(o, h)
    o.require_orthogonal()
    try:
        matrices = [basis_hadamard(o, h, 0, i) for i in range(1, o.cols)]
    except InvalidParametersError as e:
        raise ConstructionError(f"Beth-Wocjan output is not Hadamard: {e}") from e
    c = h.row_sum
    if c is not None:
        for idx, m in enumerate(matrices):
            if m.row_sum != c * c:
                raise ConstructionError(
                    f"H_1,{idx + 2} has row sum {m.row_sum}, expected {c * c}"
                )
    else:
        log.warning("Hadamard input of order %d is not regular; outputs carry no regularity guarantee", h.order)
    try:
        result = UnbiasedHadamardSet.from_matrices(matrices)
    except InvalidParametersError as e:
        raise ConstructionError(f"Beth-Wocjan outputs are not unbiased: {e}") from e
    log.info("built %d unbiased Hadamard matrices of order %d", len(result), result.order)
    return result


# --- LSSD equivalence ---
def lssd_from_unbiased_hadamards(s: UnbiasedHadamardSet) -> LssdGraph:
    """
    w = |S| + 1 fibers: fiber 1 is the standard basis, block (1, i) has an
    edge where H_i is +1 and block (i, j) where H_iᵀ H_j / sqrt(v) is +1.

    Raises InvalidParametersError for non-regular input and ConstructionError
    (naming the failing fibers) when the result is not an LSSD.
    """
    if not s.all_regular:
        raise InvalidParametersError("every matrix must be regular", "regular")
    v = s.order
    c = s.matrices[0].row_sum
    assert c is not None
    k2 = v + c
    k = k2 // 2
    if k2 % 2 or (k * (k - 1)) % (v - 1):
        raise ConstructionError(f"row sum {c} does not give a design on {v} points")
    params = DesignParams(v, k, k * (k - 1) // (v - 1))
    root = s.root
    hs = [m.entries for m in s.matrices]
    blocks: dict[tuple[int, int], IntMatrix] = {}
    for i, hi in enumerate(hs, start=1):
        blocks[(0, i)] = IntMatrix((hi.data == 1).astype(np.int64))
    for (i, hi), (j, hj) in combinations(enumerate(hs, start=1), 2):
        blocks[(i, j)] = IntMatrix(((hi.T @ hj).data == root).astype(np.int64))
    g = LssdGraph(len(hs) + 1, params, blocks, provenance=f"unbiased Hadamards order={v}")
    report = verify_lssd(g)
    if not report.ok:
        where = report.failures[0] if report.failures else "unknown"
        raise ConstructionError(f"Hadamard set is not mutually consistent: {where}")
    log.info("built LSSD%s with w = %d from unbiased Hadamards", params, g.w)
    return g


def hadamards_from_lssd(g: LssdGraph) -> UnbiasedHadamardSet:
    """
    H_i[a][b] = +1 iff vertex a of fiber 1 and vertex b of fiber i are
    adjacent in the mu-heavy relation, for i = 2..w.

    Refuses (InvalidParametersError) unless the system is optimistic with
    |v - 2k| = 2s. Raises ConstructionError if the outputs are not regular,
    not unbiased, or do not reproduce the other blocks.
    """
    p = g.params
    s_root = p.require_s()
    if classify(p).outlook != "optimistic" or abs(p.v - 2 * p.k) != 2 * s_root:
        raise InvalidParametersError(
            f"LSSD{p} is not an optimistic system with |v-2k| = 2s", "Menon optimistic"
        )
    mu_heavy = g if mu_nu(p).heaviness == "mu-heavy" else multipartite_complement(g)
    v = p.v
    ones = IntMatrix.ones(v, v)
    hs: list[HadamardMatrix] = []
    for i in range(1, g.w):
        b = mu_heavy.incidence(0, i)
        try:
            hs.append(HadamardMatrix(b.scale(2) - ones))
        except InvalidParametersError as e:
            raise ConstructionError(f"block {fiber_label(0, i)} does not give a Hadamard matrix") from e
    try:
        result = UnbiasedHadamardSet.from_matrices(hs)
    except InvalidParametersError as e:
        raise ConstructionError(f"extracted matrices are not unbiased: {e}") from e
    if not result.all_regular:
        raise ConstructionError("extracted matrices are not all regular")
    root = result.root
    for i, j in combinations(range(1, g.w), 2):
        expected = mu_heavy.incidence(i, j).scale(2) - ones
        signs = (hs[i - 1].entries.T @ hs[j - 1].entries).data // root
        if IntMatrix(signs) != expected:
            raise ConstructionError(f"block {fiber_label(i, j)} is not the sign pattern of H_iᵀH_j")
    return result
