"""
Euclidean pictures of an LSSD.

Every Gram matrix here is a nonnegative combination of the primitive
idempotents E0, E1, E3 of the system's scheme, written in the relation basis
A0..A3 (A1 the mu-heavy adjacency, A2 the within-fiber relation, A3 the other
cross relation). Matrices are carried as integers times an explicit scale D,
so no square roots or floating point enter:

- `simplex_gram`: (vw/(v-1)) E1, one regular simplex per fiber;
- `equiangular_gram`: vt(alpha E0 + beta E1 + gamma E3) on t fibers, vt
  equiangular lines;
- `mub_gram`: w(E0 + E1), w orthonormal bases that are mutually unbiased
  exactly for optimistic Menon parameters.
"""

from __future__ import annotations

import logging
from collections.abc import Sequence
from dataclasses import dataclass
from fractions import Fraction
from typing import Literal, TypeAlias

from typing_extensions import override

import numpy as np

from hadamard_oa import HadamardMatrix, UnbiasedHadamardSet
from lssd_core import (
    ConstructionError,
    DimensionError,
    InfeasibleError,
    IntMatrix,
    InvalidParametersError,
    is_perfect_square,
    rank_exact,
)
from lssd_designs import DesignParams
from lssd_scheme import RelationMatrices, eigenmatrices, natural_params, relation_matrices
from lssd_system import LssdGraph, classify, fiber_label, mu_nu, restrict_fibers, verify_lssd

log = logging.getLogger(__name__)

SimplexMode: TypeAlias = Literal["first", "second"]
Coefficients: TypeAlias = tuple[Fraction, Fraction, Fraction, Fraction]


@dataclass(frozen=True, eq=False)
class ScaledGram:
    """
    A real Gram matrix G stored as the integer matrix D*G.

    Construction checks symmetry and the unit diagonal; `check_rank` compares
    the exact rank with `claimed_rank`.
    """

    scale: int
    entries: IntMatrix
    claimed_rank: int | None = None

    def __post_init__(self) -> None:
        if self.scale <= 0:
            raise InvalidParametersError(f"scale must be positive, got {self.scale}", "D>0")
        if not self.entries.is_symmetric():
            raise DimensionError(f"Gram matrix of shape {self.entries.shape} is not symmetric")
        if set(np.diag(self.entries.data).tolist()) - {self.scale}:
            raise InvalidParametersError("Gram diagonal must equal the scale", "unit vectors")

    @property
    def dim(self) -> int:
        return self.entries.rows

    def value(self, a: int, b: int) -> Fraction:
        return Fraction(self.entries[a, b], self.scale)

    def check_rank(self) -> int:
        rank = rank_exact(self.entries)
        if self.claimed_rank is not None and rank != self.claimed_rank:
            raise ConstructionError(f"Gram rank is {rank}, expected {self.claimed_rank}")
        return rank

    @override
    def __eq__(self, other: object) -> bool:
        if not isinstance(other, ScaledGram):
            return NotImplemented
        return self.scale == other.scale and self.entries == other.entries

    __hash__ = None  # type: ignore[assignment]

    @override
    def __repr__(self) -> str:
        return f"ScaledGram(dim={self.dim}, scale={self.scale}, rank={self.claimed_rank})"


@dataclass(frozen=True)
class GramProfile:
    """Inner products of a linked-simplex Gram matrix."""

    within_fiber_ip: Fraction
    cross_ip_positive: Fraction
    cross_ip_negative: Fraction


@dataclass(frozen=True)
class LineSystemCoeffs:
    """
    Weights of E0, E1, E3 in an equiangular line Gram matrix.

    `alpha`, `beta` and `gamma` already include the factor vt; `c` is the
    common absolute cosine.
    """

    alpha: Fraction
    beta: Fraction
    gamma: Fraction
    c: Fraction
    t: int


@dataclass(frozen=True)
class MubProfile:
    beta1: Fraction
    beta2: Fraction
    is_mub: bool


@dataclass(frozen=True, eq=False)
class MubGram:
    """w(E0 + E1) scaled by D = vs: an orthonormal basis per fiber."""

    gram: ScaledGram
    v: int
    w: int
    profile: MubProfile

    @property
    def beta1(self) -> Fraction:
        return self.profile.beta1

    @property
    def beta2(self) -> Fraction:
        return self.profile.beta2

    @property
    def is_mub(self) -> bool:
        return self.profile.is_mub

    def extract_hadamards(self) -> UnbiasedHadamardSet:
        """Sign patterns of the cross blocks between fiber 1 and each other fiber."""
        if not self.is_mub:
            raise InvalidParametersError("the bases are not mutually unbiased", "is_mub")
        v = self.v
        data = self.gram.entries.data
        matrices = [
            HadamardMatrix(IntMatrix(np.sign(data[0:v, i * v : (i + 1) * v])))
            for i in range(1, self.w)
        ]
        return UnbiasedHadamardSet.from_matrices(matrices)


# --- coefficients ---
def idempotent_coefficients(
    p: DesignParams, w: int, x0: Fraction | int, x1: Fraction | int, x3: Fraction | int
) -> Coefficients:
    """
    Expand x0 E0 + x1 E1 + x3 E3 in the relation basis.

    Returns (y0, y1, y2, y3) with x0 E0 + x1 E1 + x3 E3 = sum y_u A_u, using
    E_i = (1/vw) sum_u Q[u][i] A_u on the natural (mu-heavy) parameters.
    """
    _, q = eigenmatrices(p, w)
    vw = p.v * w
    xs = (Fraction(x0), Fraction(x1), Fraction(x3))
    ys = [(xs[0] * q[u, 0] + xs[1] * q[u, 1] + xs[2] * q[u, 3]) / vw for u in range(4)]
    return (ys[0], ys[1], ys[2], ys[3])


def _combine(rel: RelationMatrices, ys: Coefficients, scale: int) -> IntMatrix:
    out = IntMatrix.zeros(*rel.a0.shape)
    for y, a in zip(ys, rel.as_list()):
        scaled = y * scale
        if scaled.denominator != 1:
            raise ConstructionError(f"coefficient {y} is not integral at scale {scale}")
        out = out + a.scale(int(scaled))
    return out


def _natural_relations(g: LssdGraph) -> RelationMatrices:
    report = verify_lssd(g)
    if not report.ok:
        raise InvalidParametersError(f"{g!r} is not an LSSD: {report.failures[0]}", "verified LSSD")
    return relation_matrices(g, allow_degenerate=True)


# --- linked simplices ---
def simplex_gram(
    p: DesignParams, w: int, g: LssdGraph | None = None, mode: SimplexMode = "first"
) -> tuple[ScaledGram, GramProfile]:
    """
    Gram matrix of w linked regular simplices, scale D = (v-1)s.

    Within a fiber the scaled entries are -s; across fibers they are v-k on
    mu-heavy edges and -k elsewhere (natural parameters). A single simplex
    (w = 1) needs no graph. `mode="second"` negates the second simplex of a
    two-fiber system, which links the complementary design.
    """
    nat = natural_params(p)
    v, k = nat.v, nat.k
    s = nat.require_s()
    scale = (v - 1) * s
    profile = GramProfile(
        Fraction(-1, v - 1), Fraction(v - k, scale), Fraction(-k, scale)
    )
    if g is None:
        if w != 1:
            raise InvalidParametersError(f"a system graph is needed for w = {w}", "graph for w>=2")
        if mode != "first":
            raise InvalidParametersError("the second linked pair needs two fibers", "w=2")
        entries = IntMatrix.identity(v).scale(scale + s) - IntMatrix.ones(v, v).scale(s)
        gram = ScaledGram(scale, entries, claimed_rank=v - 1)
        gram.check_rank()
        return gram, profile
    if g.w != w or g.params.v != v or natural_params(g.params) != nat:
        raise InvalidParametersError(f"{g!r} does not match {p} with w = {w}", "params match")
    rel = _natural_relations(g)
    ys = idempotent_coefficients(nat, w, 0, Fraction(v * w, v - 1), 0)
    entries = _combine(rel, ys, scale)
    if mode == "second":
        if w != 2:
            raise InvalidParametersError(f"the second linked pair needs w = 2, got {w}", "w=2")
        signs = np.concatenate([np.ones(v, dtype=np.int64), -np.ones(v, dtype=np.int64)])
        entries = IntMatrix(entries.data * signs[:, None] * signs[None, :])
        profile = GramProfile(
            profile.within_fiber_ip, -profile.cross_ip_negative, -profile.cross_ip_positive
        )
    gram = ScaledGram(scale, entries, claimed_rank=v - 1)
    gram.check_rank()
    log.debug("simplex Gram for %r: %r", g, gram)
    return gram, profile


def _rarest_position(block_values: np.ndarray, mask: np.ndarray, values: list[int]) -> tuple[int, int]:
    counts = [int(np.count_nonzero((block_values == x) & mask)) for x in values]
    rare = values[counts.index(min(counts))]
    a, b = np.argwhere((block_values == rare) & mask)[0]
    return int(a), int(b)


def lssd_from_gram(gram: ScaledGram, v: int, w: int) -> LssdGraph:
    """
    Recover the system from the Gram matrix of w linked simplices.

    Adjacency is the larger of the two cross inner products gamma > zeta, and
    k follows from k gamma + (v - k) zeta = 0, the simplex of each fiber
    summing to zero.
    """
    if gram.dim != v * w:
        raise DimensionError(f"Gram of side {gram.dim} cannot hold {w} fibers of {v}")
    scale = gram.scale
    if scale % (v - 1):
        raise InvalidParametersError(
            f"scale {scale} cannot carry the within-fiber product -1/{v - 1}", "simplex blocks"
        )
    data = gram.entries.data
    simplex = IntMatrix.identity(v).scale(scale + scale // (v - 1)) - IntMatrix.ones(v, v).scale(
        scale // (v - 1)
    )
    fiber = np.arange(v * w) // v
    for i in range(w):
        if IntMatrix(data[i * v : (i + 1) * v, i * v : (i + 1) * v]) != simplex:
            raise ConstructionError(f"diagonal block {fiber_label(i)} is not a regular simplex Gram")
    cross = fiber[:, None] != fiber[None, :]
    values = sorted(int(x) for x in np.unique(data[cross]))
    if len(values) != 2:
        a, b = _rarest_position(data, cross, values)
        raise ConstructionError(
            f"cross inner products take {len(values)} values {values}; entry at fibers "
            + f"{fiber_label(a // v, b // v)} vertices ({a % v}, {b % v}) is {int(data[a, b])}"
        )
    zeta, gamma = Fraction(values[0]), Fraction(values[1])
    k_frac = zeta * v / (zeta - gamma)
    if k_frac.denominator != 1 or not 0 < k_frac < v:
        raise ConstructionError(f"cross products {values} give non-integral degree k = {k_frac}")
    k = int(k_frac)
    adjacency = (data == values[1]) & cross
    blocks: dict[tuple[int, int], IntMatrix] = {}
    for i in range(w):
        for j in range(i + 1, w):
            b = IntMatrix(adjacency[i * v : (i + 1) * v, j * v : (j + 1) * v])
            if set(b.row_sums()) | set(b.col_sums()) != {k}:
                raise ConstructionError(f"block {fiber_label(i, j)} is not {k}-regular")
            blocks[(i, j)] = b
    if (k * (k - 1)) % (v - 1):
        raise ConstructionError(f"degree {k} on {v} points gives non-integral lambda")
    params = DesignParams(v, k, k * (k - 1) // (v - 1))
    if w > 2:
        try:
            mu_nu(params)
        except InfeasibleError as e:
            raise ConstructionError(
                f"mu and nu are not integral for {params}: these linked simplices cannot exist"
            ) from e
    g = LssdGraph(w, params, blocks, provenance="gram")
    report = verify_lssd(g)
    if not report.ok:
        raise ConstructionError(f"recovered system is not an LSSD: {report.failures[0]}")
    return g


# --- equiangular lines ---
def line_coefficients(p: DesignParams, t: int) -> LineSystemCoeffs:
    """
    Weights giving vt equiangular lines on t fibers with cosine 1/(2s+1).

    Raises InvalidParametersError when a weight would be negative; this is
    the pessimistic bound t <= (2v - 2k + 2s)/(v - 2k).
    """
    nat = natural_params(p)
    v, k = nat.v, nat.k
    s = nat.require_s()
    d = 2 * s + 1
    alpha = Fraction(v + 2 * s - (t - 1) * (v - 2 * k), d)
    beta = Fraction(2 * t * s, d)
    gamma = Fraction(2 * v - 2 * k + 2 * s, d)
    if v > 2 * k:
        log.debug("pessimistic %s: line bound applies to t = %d", nat, t)
    if alpha < 0:
        raise InvalidParametersError(
            f"t = {t} exceeds (2v-2k+2s)/(v-2k) = {Fraction(2 * v - 2 * k + 2 * s, v - 2 * k)} "
            + f"for pessimistic {nat}",
            "pessimistic t bound",
        )
    return LineSystemCoeffs(alpha, beta, gamma, Fraction(1, d), t)


def equiangular_gram(g: LssdGraph, t: int) -> tuple[ScaledGram, LineSystemCoeffs]:
    """
    vt equiangular lines from the first t fibers, scale D = 2s + 1.

    Every off-diagonal scaled entry is +-1 and the rank is the sum of the
    multiplicities of the idempotents with positive weight (v + t - 1 when
    all three weights are positive).
    """
    if not 1 <= t <= g.w:
        raise InvalidParametersError(f"t = {t} outside 1..{g.w}", "1<=t<=w")
    nat = natural_params(g.params)
    v = nat.v
    coeffs = line_coefficients(nat, t)
    d = 2 * nat.require_s() + 1
    rank = (1 if coeffs.alpha > 0 else 0) + (v - 1) + (t - 1 if coeffs.gamma > 0 else 0)
    if t == 1:
        ys = idempotent_coefficients(nat, 1, coeffs.alpha, coeffs.beta, 0)
        entries = IntMatrix.identity(v).scale(int(ys[0] * d) - int(ys[2] * d)) + IntMatrix.ones(
            v, v
        ).scale(int(ys[2] * d))
    else:
        sub = restrict_fibers(g, range(t)) if t < g.w else g
        rel = _natural_relations(sub)
        ys = idempotent_coefficients(nat, t, coeffs.alpha, coeffs.beta, coeffs.gamma)
        entries = _combine(rel, ys, d)
    gram = ScaledGram(d, entries, claimed_rank=rank)
    off = entries.data[~np.eye(entries.rows, dtype=bool)]
    if off.size and set(np.abs(off).tolist()) != {1}:
        raise ConstructionError(f"line Gram is not equiangular: |entries| {sorted(set(np.abs(off).tolist()))}")
    gram.check_rank()
    log.info("%d equiangular lines in dimension %d with cosine %s", v * t, rank, coeffs.c)
    return gram, coeffs


# --- mutually unbiased bases ---
def mub_profile(p: DesignParams) -> MubProfile:
    """beta1 = (v-k+s)/(vs), beta2 = -(k-s)/(vs) and whether they are +-1/sqrt(v)."""
    nat = natural_params(p)
    v, k = nat.v, nat.k
    s = nat.require_s()
    beta1 = Fraction(v - k + s, v * s)
    beta2 = Fraction(-(k - s), v * s)
    try:
        optimistic = classify(nat).outlook == "optimistic"
    except (InfeasibleError, InvalidParametersError):
        optimistic = False
    return MubProfile(beta1, beta2, optimistic and abs(v - 2 * k) == 2 * s)


def mub_gram(g: LssdGraph) -> MubGram:
    """Gram matrix of w(E0 + E1) at scale vs; cross entries are beta1, beta2."""
    nat = natural_params(g.params)
    v = nat.v
    s = nat.require_s()
    scale = v * s
    rel = _natural_relations(g)
    ys = idempotent_coefficients(nat, g.w, g.w, g.w, 0)
    gram = ScaledGram(scale, _combine(rel, ys, scale), claimed_rank=v)
    profile = mub_profile(nat)
    if profile.is_mub:
        root = is_perfect_square(v)
        assert root is not None
        fiber = np.arange(v * g.w) // v
        cross = fiber[:, None] != fiber[None, :]
        if set(np.abs(gram.entries.data[cross]).tolist()) != {scale // root}:
            raise ConstructionError("cross inner products are not all +-1/sqrt(v)")
    gram.check_rank()
    return MubGram(gram, v, g.w, profile)


# --- frame identity ---
def frame_sum_check(
    vectors: IntMatrix, norm2: int, x: Sequence[Fraction | int], y: Sequence[Fraction | int]
) -> tuple[Fraction, Fraction]:
    """
    Both sides of sum_i <u_i, x><u_i, y> / |u|^2 = (v/(v-1)) <x, y>.

    `vectors` holds the v simplex vectors unscaled, each of squared norm
    `norm2`. The two values are equal for every regular simplex.
    """
    v = vectors.rows
    if len(x) != vectors.cols or len(y) != vectors.cols:
        raise DimensionError(f"vectors of length {vectors.cols} expected")
    if set(np.einsum("ij,ij->i", vectors.data, vectors.data).tolist()) != {norm2}:
        raise InvalidParametersError(f"simplex vectors must all have squared norm {norm2}", "norm")
    rows = vectors.tolist()
    xs = [Fraction(a) for a in x]
    ys = [Fraction(b) for b in y]
    lhs = sum(
        (sum((Fraction(c) * a for c, a in zip(row, xs)), Fraction(0))
         * sum((Fraction(c) * b for c, b in zip(row, ys)), Fraction(0))
         for row in rows),
        Fraction(0),
    ) / norm2
    rhs = Fraction(v, v - 1) * sum((a * b for a, b in zip(xs, ys)), Fraction(0))
    return lhs, rhs
