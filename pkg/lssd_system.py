"""
Linked systems of symmetric designs (LSSDs).

An LSSD(v, k, lambda; w) is a w-partite graph on fibers X_1..X_w of v vertices
each where:

  (i)   no edge joins two vertices of the same fiber,
  (ii)  the edges between any two fibers form a symmetric (v, k, lambda) design,
  (iii) for x in X_i and z in X_j (i != j) and any third fiber X_h, the number
        of common neighbours of x and z in X_h is mu when x ~ z and nu otherwise.

`LssdGraph` stores one 01 block per fiber pair i < j; the (j, i) incidence is
its transpose. Fiber and vertex indices are 0-based here; reports and JSON
documents label fibers from 1.
"""

from __future__ import annotations

import logging
from collections.abc import Mapping, Sequence
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from itertools import combinations
from types import MappingProxyType
from typing import Literal, TypeAlias

from typing_extensions import override

import numpy as np

from lssd_core import (
    DimensionError,
    IntMatrix,
    InfeasibleError,
    InvalidParametersError,
)
from lssd_designs import DesignParams, complement_params, design_gram

log = logging.getLogger(__name__)

Branch: TypeAlias = Literal["+", "-"]
Heaviness: TypeAlias = Literal["mu-heavy", "nu-heavy"]
Outlook: TypeAlias = Literal["optimistic", "pessimistic"]
FiberPair: TypeAlias = tuple[int, int]

DEFAULT_WORKERS = 1


@dataclass(frozen=True)
class MuNu:
    """
    Triangle constants nu = k(k +- s)/v and mu = nu -+ s.

    `branch` records which sign made k(k +- s)/v integral.
    """

    mu: int
    nu: int
    branch: Branch

    @property
    def heaviness(self) -> Heaviness:
        return "mu-heavy" if self.mu > self.nu else "nu-heavy"


@dataclass(frozen=True)
class LssdClass:
    heaviness: Heaviness
    outlook: Outlook

    @override
    def __str__(self) -> str:
        return f"{self.heaviness}, {self.outlook}"


def mu_nu(p: DesignParams) -> MuNu:
    """
    Compute mu and nu from the unique integral branch of k(k +- s)/v.

    Raises InfeasibleError when s is not integral or neither branch is
    integral (no system with w > 2 exists), and InvalidParametersError when
    both branches are integral for a non-degenerate triple.
    """
    s = p.s
    if s is None:
        raise InfeasibleError(f"k - lambda = {p.n} is not a perfect square")
    v, k = p.v, p.k
    plus_ok = (k * (k + s)) % v == 0
    minus_ok = (k * (k - s)) % v == 0
    branch: Branch
    if p.degenerate:
        # identity matchings realise nu = 0, their complements nu = v - 1
        branch = "-" if k == 1 else "+"
    elif plus_ok and minus_ok:
        raise InvalidParametersError(
            f"both k(k+s)/v and k(k-s)/v are integral for {p}", "exactly one branch"
        )
    elif plus_ok:
        branch = "+"
    elif minus_ok:
        branch = "-"
    else:
        raise InfeasibleError(
            f"neither {k * (k + s)}/{v} nor {k * (k - s)}/{v} is an integer for {p}"
        )
    if branch == "+":
        nu = k * (k + s) // v
        return MuNu(mu=nu - s, nu=nu, branch=branch)
    nu = k * (k - s) // v
    return MuNu(mu=nu + s, nu=nu, branch=branch)


def classify(p: DesignParams) -> LssdClass:
    """Heaviness from mu vs nu; outlook from the sign of (2k - v)(mu - nu)."""
    mn = mu_nu(p)
    product = (2 * p.k - p.v) * (mn.mu - mn.nu)
    if product == 0:
        raise InvalidParametersError(f"2k = v for {p}; outlook undefined", "2k!=v")
    return LssdClass(mn.heaviness, "optimistic" if product > 0 else "pessimistic")


def fiber_label(*fibers: int) -> str:
    """1-based label used in reports and documents, e.g. '1,3'."""
    return ",".join(str(f + 1) for f in fibers)


@dataclass(frozen=True, eq=False)
class LssdGraph:
    """
    A w-fiber system with one v x v 01 block per fiber pair.

    - `blocks[(i, j)]` for i < j has rows indexed by fiber i and columns by
      fiber j.
    - Construction checks the block set and shapes only; design and triangle
      properties are the verifier's job.
    - `provenance` is free text carried into saved documents.
    """

    w: int
    params: DesignParams
    blocks: Mapping[FiberPair, IntMatrix]
    provenance: str = ""

    def __post_init__(self) -> None:
        if self.w < 2:
            raise DimensionError(f"an LSSD needs at least 2 fibers, got w = {self.w}")
        expected = set(combinations(range(self.w), 2))
        present = set(self.blocks)
        if missing := sorted(expected - present):
            raise DimensionError(f"missing block blocks[{fiber_label(*missing[0])}]")
        if extra := sorted(present - expected):
            raise DimensionError(f"unexpected block key {extra[0]}")
        v = self.params.v
        for key in sorted(expected):
            b = self.blocks[key]
            if b.shape != (v, v):
                raise DimensionError(
                    f"blocks[{fiber_label(*key)}] has shape {b.shape}, expected ({v}, {v})"
                )
            if not b.is_zero_one():
                raise DimensionError(f"blocks[{fiber_label(*key)}] is not 01-valued")
        frozen = {key: self.blocks[key] for key in sorted(expected)}
        object.__setattr__(self, "blocks", MappingProxyType(frozen))

    @property
    def v(self) -> int:
        return self.params.v

    @property
    def order(self) -> int:
        """Number of vertices vw."""
        return self.params.v * self.w

    def incidence(self, i: int, j: int) -> IntMatrix:
        """Incidence from fiber i (rows) to fiber j (columns), i != j."""
        if i == j:
            raise DimensionError(f"fiber {i + 1} has no incidence with itself")
        if i < j:
            return self.blocks[(i, j)]
        return self.blocks[(j, i)].T

    def adjacency(self) -> IntMatrix:
        """Full vw x vw 01 adjacency, fibers in index order."""
        v = self.v
        zero = IntMatrix.zeros(v, v)
        grid = [
            [zero if i == j else self.incidence(i, j) for j in range(self.w)]
            for i in range(self.w)
        ]
        return IntMatrix.block(grid)

    def with_provenance(self, provenance: str) -> LssdGraph:
        return LssdGraph(self.w, self.params, self.blocks, provenance)

    @override
    def __eq__(self, other: object) -> bool:
        if not isinstance(other, LssdGraph):
            return NotImplemented
        return (
            self.w == other.w
            and self.params == other.params
            and all(self.blocks[key] == other.blocks[key] for key in self.blocks)
        )

    __hash__ = None  # type: ignore[assignment]

    @override
    def __repr__(self) -> str:
        return f"LssdGraph(params={self.params}, w={self.w})"


@dataclass(frozen=True)
class Failure:
    """A single counterexample: the axiom, the fibers involved and the vertices."""

    axiom: Literal["i", "ii", "iii"]
    fibers: tuple[int, ...]
    vertices: tuple[int, ...]
    detail: str

    @override
    def __str__(self) -> str:
        where = f"fibers {fiber_label(*self.fibers)}" if self.fibers else "parameters"
        verts = f" vertices {self.vertices}" if self.vertices else ""
        return f"axiom ({self.axiom}) fails at {where}{verts}: {self.detail}"


@dataclass(frozen=True)
class LssdReport:
    w: int
    params: DesignParams
    axiom_i_ok: bool
    axiom_ii_ok: bool
    axiom_iii_ok: bool
    observed_mu: int | None
    observed_nu: int | None
    lssd_class: LssdClass | None
    failures: tuple[Failure, ...] = ()
    notes: tuple[str, ...] = field(default=())

    @property
    def ok(self) -> bool:
        return self.axiom_i_ok and self.axiom_ii_ok and self.axiom_iii_ok


# --- verification internals ---
def _first_mismatch(actual: IntMatrix, expected: IntMatrix) -> tuple[int, int]:
    a, b = np.argwhere(actual.data != expected.data)[0]
    return int(a), int(b)


def _check_design_block(g: LssdGraph, i: int, j: int) -> Failure | None:
    b = g.blocks[(i, j)]
    target = design_gram(g.params)
    rows = b @ b.T
    if rows != target:
        x, y = _first_mismatch(rows, target)
        return Failure(
            "ii",
            (i, j),
            (x, y),
            f"rows {x},{y} of fiber {i + 1} share {rows[x, y]} neighbours, "
            + f"expected {target[x, y]}",
        )
    cols = b.T @ b
    if cols != target:
        x, y = _first_mismatch(cols, target)
        return Failure(
            "ii",
            (i, j),
            (x, y),
            f"columns {x},{y} of fiber {j + 1} share {cols[x, y]} neighbours, "
            + f"expected {target[x, y]}",
        )
    return None


@dataclass(frozen=True)
class _TripleResult:
    fibers: tuple[int, int, int]
    mu_values: frozenset[int]
    nu_values: frozenset[int]
    failure: Failure | None


def _check_triple(g: LssdGraph, i: int, j: int, h: int, mn: MuNu) -> _TripleResult:
    # common neighbours in X_h of x in X_i and z in X_j
    prod = g.incidence(i, h) @ g.incidence(h, j)
    n_ij = g.incidence(i, j)
    mask = n_ij.data == 1
    mu_values = frozenset(int(x) for x in np.unique(prod.data[mask]))
    nu_values = frozenset(int(x) for x in np.unique(prod.data[~mask]))
    v = g.v
    expected = IntMatrix.ones(v, v).scale(mn.nu) + n_ij.scale(mn.mu - mn.nu)
    failure = None
    if prod != expected:
        a, b = _first_mismatch(prod, expected)
        failure = Failure(
            "iii",
            (i, j, h),
            (a, b),
            f"{prod[a, b]} common neighbours in fiber {h + 1}, expected "
            + f"{expected[a, b]} (mu={mn.mu}, nu={mn.nu})",
        )
    return _TripleResult((i, j, h), mu_values, nu_values, failure)


def verify_lssd(g: LssdGraph, workers: int = DEFAULT_WORKERS) -> LssdReport:
    """
    Check axioms (i)-(iii) exactly.

    Axiom (iii) is checked as the matrix identity
    N_ih N_hj = nu J + (mu - nu) N_ij for every unordered pair {i, j} and
    every third fiber h. `workers` > 1 runs the fiber triples on a thread
    pool; the report is identical either way and keeps the lexicographically
    least witness per axiom.
    """
    p = g.params
    notes: list[str] = []
    failures: list[Failure] = []
    log.debug("verifying %r", g)

    axiom_ii_ok = True
    for i, j in sorted(g.blocks):
        failure = _check_design_block(g, i, j)
        if failure is not None:
            axiom_ii_ok = False
            failures.append(failure)
            break

    observed_mu: int | None = None
    observed_nu: int | None = None
    axiom_iii_ok = True
    mn: MuNu | None = None
    try:
        mn = mu_nu(p)
    except (InfeasibleError, InvalidParametersError) as e:
        if g.w > 2:
            axiom_iii_ok = False
            failures.append(Failure("iii", (), (), str(e)))
        else:
            notes.append(f"mu/nu undefined: {e}")

    if g.w == 2:
        notes.append("w = 2: axiom (iii) is vacuous")
    elif mn is not None:
        triples = [
            (i, j, h)
            for i, j in combinations(range(g.w), 2)
            for h in range(g.w)
            if h not in (i, j)
        ]
        if workers > 1:
            with ThreadPoolExecutor(max_workers=workers) as pool:
                results = list(pool.map(lambda t: _check_triple(g, *t, mn), triples))
        else:
            results = [_check_triple(g, *t, mn) for t in triples]
        all_mu = frozenset().union(*(r.mu_values for r in results))
        all_nu = frozenset().union(*(r.nu_values for r in results))
        if len(all_mu) == 1:
            observed_mu = next(iter(all_mu))
        if len(all_nu) == 1:
            observed_nu = next(iter(all_nu))
        bad = [r.failure for r in results if r.failure is not None]
        if bad:
            axiom_iii_ok = False
            failures.append(min(bad, key=lambda f: (f.fibers, f.vertices)))

    lssd_class: LssdClass | None = None
    if mn is not None and 2 * p.k != p.v:
        lssd_class = classify(p)

    report = LssdReport(
        w=g.w,
        params=p,
        axiom_i_ok=True,
        axiom_ii_ok=axiom_ii_ok,
        axiom_iii_ok=axiom_iii_ok,
        observed_mu=observed_mu,
        observed_nu=observed_nu,
        lssd_class=lssd_class,
        failures=tuple(failures),
        notes=tuple(notes),
    )
    log.debug("verification of %r: ok=%s", g, report.ok)
    return report


# --- transformations and constructions ---
def multipartite_complement(g: LssdGraph) -> LssdGraph:
    """Replace every block B by J - B; parameters become (v, v-k, v-2k+lambda)."""
    v = g.v
    ones = IntMatrix.ones(v, v)
    blocks = {key: ones - b for key, b in g.blocks.items()}
    return LssdGraph(g.w, complement_params(g.params), blocks, g.provenance)


def degenerate_lssd(v: int, w: int) -> LssdGraph:
    """Identity matchings between all fibers: an LSSD(v, 1, 0; w) with mu = 1, nu = 0."""
    p = DesignParams(v, 1, 0)
    eye = IntMatrix.identity(v)
    blocks = {pair: eye for pair in combinations(range(w), 2)}
    return LssdGraph(w, p, blocks, provenance=f"degenerate v={v} w={w}")


def restrict_fibers(g: LssdGraph, subset: Sequence[int]) -> LssdGraph:
    """Induced system on the listed fibers, re-indexed in the given order."""
    chosen = list(subset)
    if len(chosen) < 2:
        raise DimensionError("restriction needs at least 2 fibers")
    if len(set(chosen)) != len(chosen):
        raise DimensionError(f"repeated fiber in {chosen}")
    for f in chosen:
        if not 0 <= f < g.w:
            raise DimensionError(f"fiber index {f} out of range 0..{g.w - 1}")
    blocks = {
        (a, b): g.incidence(chosen[a], chosen[b])
        for a, b in combinations(range(len(chosen)), 2)
    }
    return LssdGraph(len(chosen), g.params, blocks, g.provenance)
