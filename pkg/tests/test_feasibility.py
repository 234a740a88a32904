from __future__ import annotations

from fractions import Fraction

import pytest

from feasibility import (
    FAMILIES,
    FamilySpec,
    Rejection,
    bounds,
    family_def,
    family_params,
    integrality_screen,
    krein_tight_at,
    menon_params,
    screen_family,
)
from lssd_core import InvalidParametersError, NoSuchFamilyError
from lssd_designs import DesignParams
from lssd_system import LssdClass, classify, mu_nu

KERDOCK16 = DesignParams(16, 10, 6)


def test_screen_accepts_kerdock_parameters() -> None:
    verdict = integrality_screen(16, 10, 6)
    assert verdict.feasible
    assert verdict.branch == "-"
    assert verdict.notes == ()
    assert (verdict.gcd_k_v, verdict.gcd_s_v) == (2, 2)


def test_screen_reports_every_failed_condition() -> None:
    verdict = integrality_screen(7, 3, 1)
    assert not verdict.feasible
    assert verdict.notes == ("s integral", "gcd(k,v)>1", "v composite")
    assert verdict.branch is None


def test_screen_nu_branches() -> None:
    verdict = integrality_screen(15, 7, 3)
    assert "nu integral" in verdict.notes
    assert not (verdict.nu_plus_integral or verdict.nu_minus_integral)
    assert integrality_screen(36, 15, 6).feasible


def test_screen_flags_degenerate() -> None:
    verdict = integrality_screen(4, 1, 0)
    assert verdict.degenerate
    assert "non-degenerate" in verdict.notes


def test_screen_rejects_non_design_triples() -> None:
    with pytest.raises(InvalidParametersError):
        _ = integrality_screen(7, 3, 2)


def test_bounds_for_kerdock_parameters() -> None:
    b = bounds(KERDOCK16)
    assert b.krein_w_max == 8
    assert b.absolute_w_max == 7
    assert bounds(KERDOCK16, q111_is_zero=True).absolute_w_max == 8
    assert b.menon_w_max == 8
    assert b.krein_tight_admissible
    assert (b.noda_lhs, b.noda_rhs) == (20, 140)
    assert b.noda_holds(8)
    assert not b.noda_holds(9)
    assert b.noda_w_max(20) == 8


def test_krein_tightness() -> None:
    assert krein_tight_at(KERDOCK16, 8)
    assert not krein_tight_at(KERDOCK16, 7)


def test_pessimistic_parameters_have_no_krein_bound() -> None:
    b = bounds(DesignParams(36, 15, 6))
    assert b.krein_w_max is None
    assert b.absolute_w_max == 17
    assert b.menon_w_max is None


def test_odd_menon_order_forces_two_fibers() -> None:
    b = bounds(DesignParams(36, 21, 12))
    assert b.menon_w_max == 2
    assert b.krein_w_max == Fraction(34 * 3, 6) + 1


def test_menon_params() -> None:
    assert menon_params(2) == (DesignParams(16, 6, 2), KERDOCK16)
    with pytest.raises(InvalidParametersError):
        _ = menon_params(0)


def test_family_registry() -> None:
    assert sorted(FAMILIES) == list(range(1, 22))
    with pytest.raises(NoSuchFamilyError):
        _ = family_def(22)


@pytest.mark.parametrize(
    ("family_id", "indices", "expected"),
    [
        (1, {"q": 2, "m": 2}, (7, 3, 1)),
        (2, {"n": 4}, (15, 7, 3)),
        (6, {"t": 2}, (16, 6, 2)),
        (14, {"q": 2, "d": 2}, (320, 88, 24)),
        (21, {"t": 2, "m": 1}, (160, 54, 18)),
    ],
)
def test_family_closed_forms(
    family_id: int, indices: dict[str, int], expected: tuple[int, int, int]
) -> None:
    result = family_params(FamilySpec(family_id, indices))
    assert isinstance(result, DesignParams)
    assert result.as_tuple() == expected


def test_auto_rejected_family() -> None:
    result = family_params(FamilySpec.create(3, t=2))
    assert isinstance(result, Rejection)
    assert "prime" in result.reason


def test_family_index_validation() -> None:
    with pytest.raises(InvalidParametersError):
        _ = FamilySpec.create(1, z=3)
    with pytest.raises(InvalidParametersError):
        _ = family_params(FamilySpec.create(1, q=6, m=2))
    assert str(FamilySpec.create(1, m=3)) == "family 1 (q=2, m=3)"


def test_menon_family_always_passes() -> None:
    screen = screen_family(6)
    assert screen.verdict == "always-pass"
    assert [r.spec.indices["t"] for r in screen.rows] == list(range(2, 21))


def test_kharaghani_ionin_family_never_passes() -> None:
    screen = screen_family(21, range(2, 7))
    assert screen.verdict == "never-pass"
    first = screen.rows[0]
    assert first.params == DesignParams(160, 54, 18)
    assert "nu integral" in first.failed_conditions


def test_point_hyperplane_family() -> None:
    screen = screen_family(1, [3, 2])
    assert [r.params for r in screen.rows] == [DesignParams(7, 3, 1), DesignParams(15, 7, 3)]
    assert screen.verdict == "never-pass"


def test_rejected_rows() -> None:
    screen = screen_family(4, range(1, 3))
    assert all(r.status == "rejected" for r in screen.rows)
    assert screen.verdict == "never-pass"


def test_invalid_rows_are_not_counted() -> None:
    screen = screen_family(6, range(1, 4))
    assert screen.rows[0].status == "invalid"
    assert screen.rows[0].reason == "degenerate parameters"
    assert screen.verdict == "always-pass"


SUMMARY = {
    6: "always-pass",
    7: "always-pass",
    9: "always-pass",
    13: "always-pass",
    14: "always-pass",
    12: "pass-iff-m=1",
    15: "pass-iff-m=1",
    16: "pass-iff-m=1",
    17: "pass-iff-m=1",
    18: "pass-iff-m=1",
    19: "pass-iff-m=1",
}


# (family, fixed indices, primary range); None means the registered range
SCREENING_GRID: list[tuple[int, dict[str, int], range | None]] = [
    *((1, {"q": q}, range(2, 6)) for q in (2, 3, 4, 5)),
    (2, {}, range(2, 41)),
    (3, {}, None),
    (4, {}, None),
    (5, {}, range(3, 12)),
    (6, {}, range(2, 21)),
    *((7, {"q": q}, range(1, 4)) for q in (2, 3, 4)),
    (8, {}, range(2, 11)),
    (9, {}, range(2, 5)),
    *((10, {"q": q}, range(1, 5)) for q in (2, 3, 4)),
    *((11, {"q": q}, range(1, 5)) for q in (2, 3, 4)),
    *((12, {"q": 2, "d": d}, range(1, 4)) for d in (1, 2)),
    (13, {}, range(1, 4)),
    *((14, {"q": q}, range(1, 3)) for q in (2, 3)),
    *((family_id, {}, range(1, 4)) for family_id in range(15, 20)),
    (20, {}, range(2, 6)),
    (21, {}, range(2, 7)),
]


@pytest.mark.parametrize(("family_id", "fixed", "index_range"), SCREENING_GRID)
def test_family_summary(family_id: int, fixed: dict[str, int], index_range: range | None) -> None:
    screen = screen_family(family_id, index_range, fixed)
    assert screen.verdict == SUMMARY.get(family_id, "never-pass")


def test_mersenne_family_screens_over_d() -> None:
    screen = screen_family(20)
    assert [r.spec.indices["d"] for r in screen.rows] == [2, 3, 4, 5]
    assert [r.status for r in screen.rows] == ["rejected", "rejected", "invalid", "rejected"]
    assert "2^d - 1" in screen.rows[2].reason
    assert screen.verdict == "never-pass"


def test_rejected_families_have_no_closed_form() -> None:
    assert all(
        (FAMILIES[i].closed_form is None) == (FAMILIES[i].auto_reject is not None) for i in FAMILIES
    )
    with pytest.raises(InvalidParametersError):
        _ = family_params(FamilySpec.create(3, t=0))


def _design_triples(v_max: int) -> list[DesignParams]:
    triples: list[DesignParams] = []
    for v in range(4, v_max + 1):
        for k in range(2, v - 1):
            if (k * (k - 1)) % (v - 1) == 0:
                triples.append(DesignParams(v, k, k * (k - 1) // (v - 1)))
    return triples


def test_screen_agrees_with_mu_nu() -> None:
    for p in _design_triples(200):
        verdict = integrality_screen(*p.as_tuple())
        if p.s is None:
            assert not verdict.feasible
            continue
        if verdict.feasible:
            assert verdict.gcd_k_v > 1 and verdict.gcd_s_v is not None and verdict.gcd_s_v > 1
            mn = mu_nu(p)
            assert mn.branch == verdict.branch
            assert abs(mn.mu - mn.nu) == p.s
        if verdict.nu_plus_integral != verdict.nu_minus_integral:
            assert verdict.branch == ("+" if verdict.nu_plus_integral else "-")
        else:
            assert verdict.branch is None


def test_noda_matches_krein_for_optimistic_mu_heavy_parameters() -> None:
    checked = []
    for p in _design_triples(100):
        if not integrality_screen(*p.as_tuple()).feasible:
            continue
        if classify(p) != LssdClass("mu-heavy", "optimistic"):
            continue
        report = bounds(p)
        assert report.krein_w_max is not None
        assert report.noda_lhs > 0
        assert Fraction(report.noda_rhs, report.noda_lhs) == report.krein_w_max - 1
        checked.append(p.as_tuple())
    assert {(16, 10, 6), (45, 33, 24), (64, 36, 20)} <= set(checked)
