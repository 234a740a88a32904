from __future__ import annotations

from fractions import Fraction

import pytest

from lssd_core import (
    DegenerateSchemeError,
    IntMatrix,
    InvalidParametersError,
    KreinViolationError,
    RatMatrix,
)
from lssd_designs import DesignParams
from lssd_scheme import (
    eigenmatrices,
    format_tables,
    intersection_numbers,
    kerdock_mismatches,
    kerdock_params,
    kerdock_tables,
    krein_parameters,
    multiplicities,
    natural_params,
    q_polynomial_condition,
    relation_matrices,
    scheme_tables,
    verify_scheme,
)
from lssd_system import LssdGraph, multipartite_complement

KERDOCK16 = DesignParams(16, 10, 6)


def test_natural_params() -> None:
    assert natural_params(DesignParams(16, 6, 2)) == KERDOCK16
    assert natural_params(KERDOCK16) == KERDOCK16
    assert natural_params(DesignParams(7, 3, 1)) == DesignParams(7, 3, 1)


def test_q_polynomial_condition() -> None:
    assert q_polynomial_condition(KERDOCK16)
    assert not q_polynomial_condition(DesignParams(4, 1, 0))


def test_relation_matrices(kerdock3: LssdGraph) -> None:
    rel = relation_matrices(kerdock3)
    assert rel.a1.row_sums() == [20] * 48
    assert rel.a2.row_sums() == [15] * 48
    assert rel.a3.row_sums() == [12] * 48
    total = rel.a0 + rel.a1 + rel.a2 + rel.a3
    assert total == IntMatrix.ones(48, 48)


def test_relation_matrices_normalise_nu_heavy_input(kerdock3: LssdGraph) -> None:
    rel = relation_matrices(multipartite_complement(kerdock3))
    assert rel.params == KERDOCK16
    assert rel.a1 == kerdock3.adjacency()


def test_degenerate_scheme_is_refused(degenerate3: LssdGraph) -> None:
    with pytest.raises(DegenerateSchemeError):
        _ = relation_matrices(degenerate3)
    assert relation_matrices(degenerate3, allow_degenerate=True).a1.row_sums() == [2] * 12


def test_intersection_numbers_first_rows() -> None:
    l0, l1, l2, l3 = intersection_numbers(KERDOCK16, 3)
    assert l0 == IntMatrix.identity(4)
    assert l1.tolist()[0] == [0, 20, 0, 0]
    assert l2.tolist()[0] == [0, 0, 15, 0]
    assert l3.tolist()[0] == [0, 0, 0, 12]
    # p_11^1 = mu (w - 2)
    assert l1[1, 1] == 7


def test_multiplicities() -> None:
    assert multiplicities(KERDOCK16, 3) == (1, 15, 30, 2)


@pytest.mark.parametrize("w", [2, 3, 8])
def test_eigenmatrices_are_inverse(w: int) -> None:
    p, q = eigenmatrices(KERDOCK16, w)
    assert p @ q == RatMatrix.identity(4).scale(16 * w)


def test_krein_tight_at_eight_fibers() -> None:
    krein = krein_parameters(KERDOCK16, 8)
    assert krein.value(1, 1, 1) == 0
    assert krein.value(3, 3, 1) == 0
    assert krein.value(3, 3, 2) == 0


def test_krein_violation_beyond_the_bound() -> None:
    with pytest.raises(KreinViolationError) as info:
        _ = krein_parameters(KERDOCK16, 9)
    assert info.value.indices == (1, 1, 1)
    assert info.value.value == Fraction(16, 9) - 2


def test_lstar_closed_forms_match_the_cube() -> None:
    tables = scheme_tables(KERDOCK16, 5)
    assert tables.krein.lstar(1) == tables.lstar1
    assert tables.krein.lstar(3) == tables.lstar3
    assert tables.valencies == (1, 40, 15, 24)


@pytest.mark.parametrize("w", [2, 3, 5, 8])
def test_kerdock_closed_forms(w: int) -> None:
    assert kerdock_mismatches(2, w) == []


def test_kerdock_closed_forms_for_r3() -> None:
    assert kerdock_mismatches(3, 4) == []
    assert kerdock_params(3) == DesignParams(64, 36, 20)


def test_corrected_kerdock_entries() -> None:
    tables = kerdock_tables(2, 8)
    assert tables.p[(2, 3, 3)] == 16 - 10 - 1
    assert tables.q[(2, 2, 2)] == 86


def test_kerdock_tables_range() -> None:
    with pytest.raises(InvalidParametersError):
        _ = kerdock_tables(2, 9)
    with pytest.raises(InvalidParametersError):
        _ = kerdock_params(1)


def test_verify_scheme(kerdock8: LssdGraph, beth_wocjan3: LssdGraph) -> None:
    for g in (kerdock8, beth_wocjan3):
        report = verify_scheme(g)
        assert report.ok, report.failures
        assert report.q_antipodal_ok
        assert report.krein_ok


def test_verify_scheme_two_fibers(kerdock3: LssdGraph) -> None:
    from lssd_system import restrict_fibers

    report = verify_scheme(restrict_fibers(kerdock3, [0, 1]))
    assert report.ok
    assert report.q_antipodal_ok is None
    assert "w = 2: Q-antipodality not checked" in report.notes


def test_verify_scheme_flags_degenerate(degenerate3: LssdGraph) -> None:
    report = verify_scheme(degenerate3)
    assert report.q_polynomial_ok is False
    assert not report.ok


def test_format_tables() -> None:
    text = format_tables(scheme_tables(KERDOCK16, 3))
    assert text.startswith("scheme of LSSD(16,10,6) with w = 3")
    for name in ("L1 =", "P =", "Q =", "L1* =", "L3* ="):
        assert name in text
