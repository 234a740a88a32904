"""
The 3-class Q-antipodal association scheme induced by an LSSD.

Relations, in the natural (Q-polynomial) ordering:

  R0  identity
  R1  adjacency in the mu-heavy member of {graph, multipartite complement}
  R2  distinct vertices of the same fiber
  R3  adjacency in the nu-heavy member

Tables follow the usual conventions: L_i[k][j] = p_{ij}^k, P[j][i] is the
eigenvalue of A_i on the idempotent E_j, Q[i][j] the coefficient of A_i in
vw E_j, and L*_i[k][j] = q_{ij}^k.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations_with_replacement
from typing import TypeAlias

import numpy as np

from lssd_core import (
    ConstructionError,
    DegenerateSchemeError,
    InfeasibleError,
    IntMatrix,
    InvalidParametersError,
    KreinViolationError,
    LssdError,
    RatMatrix,
)
from lssd_designs import DesignParams, complement_params
from lssd_system import LssdGraph, MuNu, multipartite_complement, mu_nu

log = logging.getLogger(__name__)

KreinCube: TypeAlias = tuple[tuple[tuple[Fraction, ...], ...], ...]


def natural_params(p: DesignParams) -> DesignParams:
    """
    The mu-heavy member of {p, complement(p)}.

    Parameters without an integral mu/nu branch are returned unchanged; only
    two-fiber systems can carry them.
    """
    try:
        mn = mu_nu(p)
    except (InfeasibleError, InvalidParametersError):
        return p
    return p if mn.heaviness == "mu-heavy" else complement_params(p)


def q_polynomial_condition(p: DesignParams) -> bool:
    """s(v - 2) > v - 2k on the natural parameters (irreducibility of L1*)."""
    nat = natural_params(p)
    s = nat.require_s()
    return s * (nat.v - 2) > nat.v - 2 * nat.k


def _natural_mu_nu(nat: DesignParams, w: int) -> MuNu:
    try:
        return mu_nu(nat)
    except (InfeasibleError, InvalidParametersError):
        if w != 2:
            raise
        # the mu and nu columns are multiplied by w - 2
        return MuNu(mu=0, nu=0, branch="-")


# --- relation matrices ---
@dataclass(frozen=True, eq=False)
class RelationMatrices:
    params: DesignParams
    w: int
    a0: IntMatrix
    a1: IntMatrix
    a2: IntMatrix
    a3: IntMatrix

    def as_list(self) -> list[IntMatrix]:
        return [self.a0, self.a1, self.a2, self.a3]


def relation_matrices(g: LssdGraph, allow_degenerate: bool = False) -> RelationMatrices:
    """
    Assemble A0..A3 in the natural ordering.

    A nu-heavy input is replaced by its multipartite complement first, so A1 is
    always the mu-heavy adjacency. Degenerate parameters are refused unless
    `allow_degenerate` is set, since their scheme is not Q-polynomial.
    """
    nat_graph = g
    try:
        if mu_nu(g.params).heaviness == "nu-heavy":
            nat_graph = multipartite_complement(g)
            log.debug("relabelled nu-heavy %r through its complement", g)
    except (InfeasibleError, InvalidParametersError):
        if g.w > 2:
            raise
    p = nat_graph.params
    if p.degenerate and not allow_degenerate:
        s = p.require_s()
        raise DegenerateSchemeError(
            f"degenerate parameters {p}: s(v-2) = {s * (p.v - 2)} is not greater "
            + f"than v-2k = {p.v - 2 * p.k}, the scheme is not Q-polynomial"
        )
    v, w = p.v, g.w
    size = v * w
    eye = IntMatrix.identity(size)
    a1 = nat_graph.adjacency()
    within = IntMatrix.block(
        [
            [IntMatrix.ones(v, v) if i == j else IntMatrix.zeros(v, v) for j in range(w)]
            for i in range(w)
        ]
    )
    a2 = within - eye
    a3 = IntMatrix.ones(size, size) - eye - a1 - a2
    return RelationMatrices(p, w, eye, a1, a2, a3)


# --- closed-form tables ---
def intersection_numbers(
    p: DesignParams, w: int
) -> tuple[IntMatrix, IntMatrix, IntMatrix, IntMatrix]:
    """L0..L3 with L_i[k][j] = p_{ij}^k, on the natural parameters of p."""
    nat = natural_params(p)
    v, k, lam = nat.as_tuple()
    mn = _natural_mu_nu(nat, w)
    mu, nu = mn.mu, mn.nu
    l0 = IntMatrix.identity(4)
    l1 = IntMatrix.from_rows(
        [
            [0, k * (w - 1), 0, 0],
            [1, mu * (w - 2), k - 1, (k - mu) * (w - 2)],
            [0, lam * (w - 1), 0, (k - lam) * (w - 1)],
            [0, nu * (w - 2), k, (k - nu) * (w - 2)],
        ]
    )
    l2 = IntMatrix.from_rows(
        [
            [0, 0, v - 1, 0],
            [0, k - 1, 0, v - k],
            [1, 0, v - 2, 0],
            [0, k, 0, v - k - 1],
        ]
    )
    l3 = IntMatrix.from_rows(
        [
            [0, 0, 0, (v - k) * (w - 1)],
            [0, (k - mu) * (w - 2), v - k, (v + mu - 2 * k) * (w - 2)],
            [0, (k - lam) * (w - 1), 0, (v + lam - 2 * k) * (w - 1)],
            [1, (k - nu) * (w - 2), v - k - 1, (v + nu - 2 * k) * (w - 2)],
        ]
    )
    return l0, l1, l2, l3


def multiplicities(p: DesignParams, w: int) -> tuple[int, int, int, int]:
    v = p.v
    return (1, v - 1, (w - 1) * (v - 1), w - 1)


def eigenmatrices(p: DesignParams, w: int) -> tuple[RatMatrix, RatMatrix]:
    """Closed-form first and second eigenmatrices (P, Q); needs integral s."""
    nat = natural_params(p)
    v, k = nat.v, nat.k
    s = nat.require_s()
    pm = RatMatrix.from_rows(
        [
            [1, k * (w - 1), v - 1, (v - k) * (w - 1)],
            [1, s * (w - 1), -1, -s * (w - 1)],
            [1, -s, -1, s],
            [1, -k, v - 1, k - v],
        ]
    )
    qm = RatMatrix.from_rows(
        [
            [1, v - 1, (w - 1) * (v - 1), w - 1],
            [1, Fraction(v - k, s), Fraction(k - v, s), -1],
            [1, -1, 1 - w, w - 1],
            [1, Fraction(-k, s), Fraction(k, s), -1],
        ]
    )
    return pm, qm


def _closed_form_lstar(nat: DesignParams, w: int) -> tuple[RatMatrix, RatMatrix]:
    v, k = nat.v, nat.k
    s = nat.require_s()
    ws = w * s
    d = 2 * k - v
    lstar1 = RatMatrix.from_rows(
        [
            [0, v - 1, 0, 0],
            [
                1,
                Fraction((1 - w) * d + (v - 2) * s, ws),
                Fraction((w - 1) * (s * (v - 2) + d), ws),
                0,
            ],
            [
                0,
                Fraction(s * (v - 2) + d, ws),
                Fraction(s * (w - 1) * (v - 2) - d, ws),
                1,
            ],
            [0, 0, v - 1, 0],
        ]
    )
    lstar3 = RatMatrix.from_rows(
        [
            [0, 0, 0, w - 1],
            [0, 0, w - 1, 0],
            [0, 1, w - 2, 0],
            [1, 0, 0, w - 2],
        ]
    )
    return lstar1, lstar3


@dataclass(frozen=True, eq=False)
class KreinParameters:
    lstar1: RatMatrix
    lstar3: RatMatrix
    q: KreinCube

    def value(self, i: int, j: int, k: int) -> Fraction:
        """q_{ij}^k."""
        return self.q[i][j][k]

    def lstar(self, i: int) -> RatMatrix:
        return RatMatrix.from_rows(
            [[self.q[i][j][k] for j in range(4)] for k in range(4)]
        )


def krein_cube(p: DesignParams, w: int) -> KreinCube:
    """
    All q_{ij}^k from the eigenmatrices:
    q_{ij}^k = (1/vw) sum_u Q[u][i] Q[u][j] P[k][u].
    """
    nat = natural_params(p)
    pm, qm = eigenmatrices(nat, w)
    n = nat.v * w
    return tuple(
        tuple(
            tuple(
                sum(
                    (qm[u, i] * qm[u, j] * pm[k, u] for u in range(4)),
                    start=Fraction(0),
                )
                / n
                for k in range(4)
            )
            for j in range(4)
        )
        for i in range(4)
    )


def krein_parameters(p: DesignParams, w: int) -> KreinParameters:
    """
    Compute every Krein parameter and cross-check L1*, L3* against their
    closed forms.

    Raises KreinViolationError for the first negative q_{ij}^k (in (i, j, k)
    order) and ConstructionError if the two computations disagree.
    """
    nat = natural_params(p)
    cube = krein_cube(nat, w)
    for i in range(4):
        for j in range(4):
            for k in range(4):
                if cube[i][j][k] < 0:
                    raise KreinViolationError(i, j, k, cube[i][j][k])
    result = KreinParameters(*_closed_form_lstar(nat, w), q=cube)
    for i, closed in ((1, result.lstar1), (3, result.lstar3)):
        if result.lstar(i) != closed:
            raise ConstructionError(
                f"L{i}* from the eigenmatrices disagrees with its closed form for {nat}, w={w}"
            )
    return result


@dataclass(frozen=True, eq=False)
class SchemeTables:
    params: DesignParams
    w: int
    l: tuple[IntMatrix, IntMatrix, IntMatrix, IntMatrix]
    p: RatMatrix
    q: RatMatrix
    krein: KreinParameters
    multiplicities: tuple[int, int, int, int]

    @property
    def lstar1(self) -> RatMatrix:
        return self.krein.lstar1

    @property
    def lstar3(self) -> RatMatrix:
        return self.krein.lstar3

    @property
    def valencies(self) -> tuple[int, ...]:
        return tuple(int(x) for x in self.p.data[0])


def scheme_tables(p: DesignParams, w: int) -> SchemeTables:
    """All closed-form tables of the scheme of an LSSD(p; w), natural ordering."""
    nat = natural_params(p)
    pm, qm = eigenmatrices(nat, w)
    return SchemeTables(
        params=nat,
        w=w,
        l=intersection_numbers(nat, w),
        p=pm,
        q=qm,
        krein=krein_parameters(nat, w),
        multiplicities=multiplicities(nat, w),
    )


# --- Kerdock (Cameron-Seidel) closed forms ---
def kerdock_params(r: int) -> DesignParams:
    """(2^{2r}, 2^{r-1}(2^r + 1), 2^{r-1}(2^{r-1} + 1)), the mu-heavy Kerdock triple."""
    if r < 2:
        raise InvalidParametersError(f"Kerdock tables need r >= 2, got {r}", "r>=2")
    return DesignParams(4**r, 2 ** (r - 1) * (2**r + 1), 2 ** (r - 1) * (2 ** (r - 1) + 1))


@dataclass(frozen=True)
class KerdockTables:
    """
    Nontrivial p_{ij}^k and q_{ij}^k (1 <= i <= j <= 3, 0 <= k <= 3) of the
    Cameron-Seidel scheme, written directly in r and w.
    """

    r: int
    w: int
    p: dict[tuple[int, int, int], Fraction] = field(default_factory=dict)
    q: dict[tuple[int, int, int], Fraction] = field(default_factory=dict)


def kerdock_tables(r: int, w: int) -> KerdockTables:
    if not 2 <= w <= 2 ** (2 * r - 1):
        raise InvalidParametersError(
            f"Kerdock systems on 2^{2 * r} points have 2 <= w <= {2 ** (2 * r - 1)}",
            "2<=w<=2^(2r-1)",
        )
    _ = kerdock_params(r)
    R = 2**r
    V = R * R
    quarter = Fraction(R, 4)
    half = Fraction(R, 2)
    # column (i, j) -> entries for k = 0..3
    p_cols: dict[tuple[int, int], tuple[Fraction, ...]] = {
        (1, 1): tuple(
            quarter * x
            for x in ((2 * R + 2) * (w - 1), (R + 3) * (w - 2), (R + 2) * (w - 1), (R + 1) * (w - 2))
        ),
        (1, 2): (Fraction(0), half * (R + 1) - 1, Fraction(0), half * (R + 1)),
        (1, 3): tuple(
            quarter * x for x in (0, (R - 1) * (w - 2), R * (w - 1), (R + 1) * (w - 2))
        ),
        (2, 2): (Fraction(V - 1), Fraction(0), Fraction(V - 2), Fraction(0)),
        (2, 3): (Fraction(0), half * (R - 1), Fraction(0), half * (R - 1) - 1),
        (3, 3): tuple(
            quarter * x
            for x in ((2 * R - 2) * (w - 1), (R - 1) * (w - 2), (R - 2) * (w - 1), (R - 3) * (w - 2))
        ),
    }
    fw = Fraction(V, w)
    q_cols: dict[tuple[int, int], tuple[Fraction, ...]] = {
        (1, 1): (Fraction(V - 1), fw - 2, fw, Fraction(0)),
        (1, 2): (Fraction(0), fw * (w - 1), fw * (w - 1) - 2, Fraction(V - 1)),
        (1, 3): (Fraction(0), Fraction(0), Fraction(1), Fraction(0)),
        (2, 2): (
            Fraction((w - 1) * (V - 1)),
            fw * (w - 1) ** 2 - 2 * (w - 1),
            fw * (w - 1) ** 2 - 2 * (w - 2),
            Fraction((w - 2) * (V - 1)),
        ),
        (2, 3): (Fraction(0), Fraction(w - 1), Fraction(w - 2), Fraction(0)),
        (3, 3): (Fraction(w - 1), Fraction(0), Fraction(0), Fraction(w - 2)),
    }
    tables = KerdockTables(r, w)
    for (i, j), col in p_cols.items():
        for k, x in enumerate(col):
            tables.p[(i, j, k)] = x
    for (i, j), col in q_cols.items():
        for k, x in enumerate(col):
            tables.q[(i, j, k)] = x
    return tables


def kerdock_mismatches(r: int, w: int) -> list[str]:
    """Entries where kerdock_tables(r, w) and scheme_tables at the Kerdock triple differ."""
    kt = kerdock_tables(r, w)
    st = scheme_tables(kerdock_params(r), w)
    out: list[str] = []
    for (i, j, k), x in kt.p.items():
        if Fraction(st.l[i][k, j]) != x:
            out.append(f"p_{i}{j}^{k}: {x} vs {st.l[i][k, j]}")
    for (i, j, k), x in kt.q.items():
        if st.krein.value(i, j, k) != x:
            out.append(f"q_{i}{j}^{k}: {x} vs {st.krein.value(i, j, k)}")
    return out


# --- verification ---
@dataclass(frozen=True)
class SchemeReport:
    params: DesignParams
    w: int
    partition_ok: bool
    algebra_ok: bool
    q_polynomial_ok: bool | None
    krein_ok: bool | None
    q_antipodal_ok: bool | None
    failures: tuple[str, ...] = ()
    notes: tuple[str, ...] = ()

    @property
    def ok(self) -> bool:
        checks = (
            self.partition_ok,
            self.algebra_ok,
            self.q_polynomial_ok,
            self.krein_ok,
            self.q_antipodal_ok,
        )
        return all(c is not False for c in checks)


def verify_scheme(g: LssdGraph) -> SchemeReport:
    """
    Check the relation algebra of g against the closed-form tables.

    - partition: A0 + A1 + A2 + A3 = J with symmetric 01 relations
    - algebra: A_i A_j = sum_k p_{ij}^k A_k for 1 <= i <= j <= 3
    - Q-polynomial: s(v - 2) > v - 2k
    - Krein: every q_{ij}^k >= 0
    - Q-antipodal: q_{33}^1 = q_{33}^2 = 0 (skipped for w = 2)
    """
    failures: list[str] = []
    notes: list[str] = []
    rel = relation_matrices(g, allow_degenerate=True)
    p, w = rel.params, rel.w
    mats = rel.as_list()
    size = p.v * w

    total = mats[0] + mats[1] + mats[2] + mats[3]
    partition_ok = total == IntMatrix.ones(size, size) and all(
        a.is_zero_one() and a.is_symmetric() for a in mats
    )
    if not partition_ok:
        failures.append("relations do not partition X x X into symmetric 01 matrices")

    algebra_ok = True
    try:
        ls = intersection_numbers(p, w)
    except LssdError as e:
        algebra_ok = False
        failures.append(f"intersection numbers unavailable: {e}")
    else:
        for i, j in combinations_with_replacement(range(1, 4), 2):
            product = mats[i] @ mats[j]
            expected = IntMatrix.zeros(size, size)
            for k in range(4):
                expected = expected + mats[k].scale(ls[i][k, j])
            if product != expected:
                algebra_ok = False
                a, b = (int(x) for x in np.argwhere(product.data != expected.data)[0])
                failures.append(
                    f"A{i}A{j} differs from sum_k p_{i}{j}^k A_k at ({a}, {b})"
                )

    q_polynomial_ok: bool | None = None
    krein_ok: bool | None = None
    q_antipodal_ok: bool | None = None
    if p.s is None:
        notes.append(f"k - lambda = {p.n} is not a square: eigenmatrix checks skipped")
    else:
        q_polynomial_ok = q_polynomial_condition(p)
        if not q_polynomial_ok:
            failures.append(
                f"s(v-2) = {p.s * (p.v - 2)} is not greater than v-2k = {p.v - 2 * p.k}"
            )
        try:
            krein = krein_parameters(p, w)
        except KreinViolationError as e:
            krein_ok = False
            failures.append(str(e))
        else:
            krein_ok = True
            if w == 2:
                notes.append("w = 2: Q-antipodality not checked")
            else:
                q_antipodal_ok = krein.value(3, 3, 1) == 0 and krein.value(3, 3, 2) == 0
                if not q_antipodal_ok:
                    failures.append("q_33^1 or q_33^2 is nonzero")

    report = SchemeReport(
        params=p,
        w=w,
        partition_ok=partition_ok,
        algebra_ok=algebra_ok,
        q_polynomial_ok=q_polynomial_ok,
        krein_ok=krein_ok,
        q_antipodal_ok=q_antipodal_ok,
        failures=tuple(failures),
        notes=tuple(notes),
    )
    log.debug("scheme check for %r: ok=%s", g, report.ok)
    return report


# --- formatting ---
def _format_matrix(name: str, rows: list[list[object]]) -> list[str]:
    cells = [[str(x) for x in row] for row in rows]
    width = max(len(c) for row in cells for c in row)
    lines = [f"{name} ="]
    lines.extend("  [" + " ".join(c.rjust(width) for c in row) + "]" for row in cells)
    return lines


def format_tables(tables: SchemeTables) -> str:
    """Plain-text rendering of the intersection, eigen and Krein matrices."""
    lines = [f"scheme of LSSD{tables.params} with w = {tables.w}"]
    lines.append("multiplicities = " + ", ".join(str(m) for m in tables.multiplicities))
    for i, li in enumerate(tables.l):
        lines.extend(_format_matrix(f"L{i}", li.tolist()))
    lines.extend(_format_matrix("P", tables.p.tolist()))
    lines.extend(_format_matrix("Q", tables.q.tolist()))
    lines.extend(_format_matrix("L1*", tables.lstar1.tolist()))
    lines.extend(_format_matrix("L3*", tables.lstar3.tolist()))
    return "\n".join(lines)
