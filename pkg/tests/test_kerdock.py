from __future__ import annotations

import pytest

from constants import KERDOCK_N4_FORMS, Q2_VECTOR, Q8_VECTOR, X2_ROWS, sign_rows
from gf2kerdock import (
    BilinearFormGF2,
    KerdockFamily,
    QuadraticFormGF2,
    bilinear_rank_gf2,
    cameron_seidel_lssd,
    family_from_bilinear,
    kerdock_simplex,
    reference_kerdock_n4,
    rm1_coset,
    search_kerdock_family,
)
from lssd_core import (
    DimensionError,
    IntMatrix,
    InvalidParametersError,
    NoSuchFamilyError,
    SearchBudgetExhausted,
)
from lssd_designs import DesignParams
from lssd_system import LssdGraph, verify_lssd


def test_reference_forms_are_pairwise_nonsingular() -> None:
    fam = reference_kerdock_n4()
    assert (fam.n, fam.w, fam.r) == (4, 8, 2)


def test_truth_tables() -> None:
    fam = reference_kerdock_n4()
    q2, q8 = fam.forms[1], fam.forms[7]
    assert q2.truth_table().tolist() == Q2_VECTOR
    assert q8.truth_table().tolist() == Q8_VECTOR
    assert [q8.evaluate(x) for x in range(16)] == Q8_VECTOR


def test_simplex_of_the_second_form() -> None:
    simplex = kerdock_simplex(reference_kerdock_n4().forms[1])
    assert simplex.vectors == IntMatrix.from_rows(sign_rows(X2_ROWS))
    expected = IntMatrix.identity(16).scale(16) - IntMatrix.ones(16, 16)
    assert simplex.gram() == expected


def test_rm1_coset_layout() -> None:
    q = reference_kerdock_n4().forms[1]
    words = rm1_coset(q)
    assert words.shape == (32, 16)
    assert words[0].tolist() == Q2_VECTOR
    assert (words[1] ^ words[0]).tolist() == [1] * 16


def test_bilinear_rank() -> None:
    assert bilinear_rank_gf2([[0, 1], [1, 0]]) == 2
    assert bilinear_rank_gf2([[0, 1, 1], [1, 0, 1], [1, 1, 0]]) == 2
    assert bilinear_rank_gf2(BilinearFormGF2.from_matrix(KERDOCK_N4_FORMS[0])) == 0
    with pytest.raises(DimensionError):
        _ = bilinear_rank_gf2([[0, 1, 0], [1, 0, 0]])


def test_bilinear_form_validation() -> None:
    with pytest.raises(InvalidParametersError):
        _ = BilinearFormGF2.from_matrix([[1, 0], [0, 0]])
    with pytest.raises(InvalidParametersError):
        _ = BilinearFormGF2.from_matrix([[0, 1], [0, 0]])


def test_quadratic_form_from_mask() -> None:
    # bits 0 and 5 are the pairs (1,2) and (3,4)
    q = QuadraticFormGF2.from_mask(4, 0b100001)
    assert q.bilinear() == BilinearFormGF2.from_matrix(KERDOCK_N4_FORMS[1])


def test_family_validation() -> None:
    forms = reference_kerdock_n4().forms
    with pytest.raises(InvalidParametersError):
        _ = KerdockFamily(4, (forms[2], forms[2]))
    with pytest.raises(InvalidParametersError):
        _ = KerdockFamily(3, ())
    with pytest.raises(InvalidParametersError):
        _ = family_from_bilinear([])
    assert family_from_bilinear(KERDOCK_N4_FORMS[:4]).w == 4


def test_search_finds_a_maximal_family() -> None:
    fam = search_kerdock_family(4, 8)
    assert fam.w == 8
    assert fam.forms[0] == QuadraticFormGF2(4, (0, 0, 0, 0))
    assert search_kerdock_family(4, 8) == fam


def test_search_limits() -> None:
    with pytest.raises(NoSuchFamilyError):
        _ = search_kerdock_family(4, 9)
    with pytest.raises(SearchBudgetExhausted):
        _ = search_kerdock_family(4, 8, budget=3)
    with pytest.raises(InvalidParametersError):
        _ = search_kerdock_family(5, 2)
    assert search_kerdock_family(2, 2).w == 2


def test_cameron_seidel_graph(kerdock8: LssdGraph) -> None:
    assert kerdock8.params == DesignParams(16, 10, 6)
    assert kerdock8.w == 8
    assert all(b.row_sums() == [10] * 16 for b in kerdock8.blocks.values())
    assert kerdock8.provenance == "kerdock n=4 w=8"


def test_searched_family_builds_an_lssd() -> None:
    g = cameron_seidel_lssd(search_kerdock_family(4, 4))
    assert verify_lssd(g).ok


@pytest.mark.slow
def test_kerdock_on_64_points() -> None:
    g = cameron_seidel_lssd(search_kerdock_family(6, 3))
    assert g.params == DesignParams(64, 36, 20)
    report = verify_lssd(g)
    assert report.ok
    assert (report.observed_mu, report.observed_nu) == (22, 18)
