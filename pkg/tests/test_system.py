from __future__ import annotations

from typing import cast

import pytest

from lssd_core import DimensionError, IntMatrix, InfeasibleError, InvalidParametersError
from lssd_designs import DesignParams
from lssd_system import (
    LssdGraph,
    classify,
    degenerate_lssd,
    fiber_label,
    mu_nu,
    multipartite_complement,
    restrict_fibers,
    verify_lssd,
)


@pytest.mark.parametrize(
    ("triple", "mu", "nu", "branch"),
    [
        ((16, 10, 6), 7, 5, "-"),
        ((16, 6, 2), 1, 3, "+"),
        ((36, 15, 6), 8, 5, "-"),
        ((4, 1, 0), 1, 0, "-"),
        ((4, 3, 2), 2, 3, "+"),
    ],
)
def test_mu_nu(triple: tuple[int, int, int], mu: int, nu: int, branch: str) -> None:
    mn = mu_nu(DesignParams(*triple))
    assert (mn.mu, mn.nu, mn.branch) == (mu, nu, branch)


def test_mu_nu_needs_integral_s() -> None:
    with pytest.raises(InfeasibleError):
        _ = mu_nu(DesignParams(7, 3, 1))


def test_classify() -> None:
    c = classify(DesignParams(16, 10, 6))
    assert (c.heaviness, c.outlook) == ("mu-heavy", "optimistic")
    c = classify(DesignParams(16, 6, 2))
    assert (c.heaviness, c.outlook) == ("nu-heavy", "optimistic")
    c = classify(DesignParams(36, 15, 6))
    assert (c.heaviness, c.outlook) == ("mu-heavy", "pessimistic")
    c = classify(DesignParams(4, 1, 0))
    assert c.outlook == "pessimistic"
    with pytest.raises(InvalidParametersError):
        _ = classify(DesignParams(2, 1, 0))


def test_fiber_label_is_one_based() -> None:
    assert fiber_label(0, 2) == "1,3"


def test_kerdock_system_verifies(kerdock8: LssdGraph) -> None:
    report = verify_lssd(kerdock8)
    assert report.ok
    assert report.params == DesignParams(16, 10, 6)
    assert (report.observed_mu, report.observed_nu) == (7, 5)
    assert report.lssd_class is not None
    assert str(report.lssd_class) == "mu-heavy, optimistic"
    assert report.failures == ()


def test_parallel_verification_matches_serial(kerdock8: LssdGraph) -> None:
    assert verify_lssd(kerdock8, workers=4) == verify_lssd(kerdock8)


def test_beth_wocjan_system_verifies(beth_wocjan3: LssdGraph) -> None:
    report = verify_lssd(beth_wocjan3)
    assert report.ok
    assert (report.observed_mu, report.observed_nu) == (7, 5)


def test_degenerate_system(degenerate3: LssdGraph) -> None:
    report = verify_lssd(degenerate3)
    assert report.ok
    assert (report.observed_mu, report.observed_nu) == (1, 0)
    assert degenerate3.params.degenerate
    assert verify_lssd(degenerate_lssd(5, 7)).ok


def test_graph_shape(kerdock3: LssdGraph) -> None:
    assert kerdock3.order == 48
    adj = kerdock3.adjacency()
    assert adj.shape == (48, 48)
    assert adj.is_symmetric()
    assert adj.row_sums() == [20] * 48
    assert kerdock3.incidence(1, 0) == kerdock3.incidence(0, 1).T
    with pytest.raises(DimensionError):
        _ = kerdock3.incidence(1, 1)


def test_broken_design_block_is_reported(kerdock3: LssdGraph) -> None:
    data = kerdock3.blocks[(0, 1)].data.copy()
    data[0, 0] ^= 1
    blocks = dict(kerdock3.blocks)
    blocks[(0, 1)] = IntMatrix(data)
    report = verify_lssd(LssdGraph(3, kerdock3.params, blocks))
    assert not report.ok
    assert not report.axiom_ii_ok
    assert report.failures[0].axiom == "ii"
    assert report.failures[0].fibers == (0, 1)


def test_row_swap_breaks_triangles_only(kerdock3: LssdGraph) -> None:
    data = kerdock3.blocks[(1, 2)].data.copy()
    data[[0, 1]] = data[[1, 0]]
    blocks = dict(kerdock3.blocks)
    blocks[(1, 2)] = IntMatrix(data)
    report = verify_lssd(LssdGraph(3, kerdock3.params, blocks))
    assert report.axiom_ii_ok
    assert not report.axiom_iii_ok
    assert [f.axiom for f in report.failures] == ["iii"]
    assert "common neighbours" in str(report.failures[0])


def test_two_fibers_skip_triangles(kerdock8: LssdGraph) -> None:
    report = verify_lssd(restrict_fibers(kerdock8, [0, 5]))
    assert report.ok
    assert "w = 2: axiom (iii) is vacuous" in report.notes


def test_complement(kerdock3: LssdGraph) -> None:
    comp = multipartite_complement(kerdock3)
    assert comp.params == DesignParams(16, 6, 2)
    report = verify_lssd(comp)
    assert report.ok
    assert (report.observed_mu, report.observed_nu) == (1, 3)
    assert multipartite_complement(comp) == kerdock3


def test_restriction_reorders(kerdock8: LssdGraph) -> None:
    sub = restrict_fibers(kerdock8, [4, 2, 7])
    assert sub.w == 3
    assert sub.incidence(0, 1) == kerdock8.incidence(4, 2)
    assert verify_lssd(sub).ok
    with pytest.raises(DimensionError):
        _ = restrict_fibers(kerdock8, [1, 1])
    with pytest.raises(DimensionError):
        _ = restrict_fibers(kerdock8, [0, 8])


def test_graph_validation() -> None:
    p = DesignParams(4, 1, 0)
    eye = IntMatrix.identity(4)
    with pytest.raises(DimensionError, match="blocks\\[1,3\\]"):
        _ = LssdGraph(3, p, {(0, 1): eye, (1, 2): eye})
    with pytest.raises(DimensionError):
        _ = LssdGraph(2, p, {(0, 1): eye.scale(2)})
    with pytest.raises(DimensionError):
        _ = LssdGraph(2, p, {(0, 1): IntMatrix.identity(3)})
    with pytest.raises(DimensionError):
        _ = LssdGraph(1, p, {})


@pytest.mark.parametrize("name", ["kerdock3", "kerdock8", "beth_wocjan3", "degenerate3"])
def test_complement_is_a_verifying_involution(name: str, request: pytest.FixtureRequest) -> None:
    g = cast(LssdGraph, request.getfixturevalue(name))
    comp = multipartite_complement(g)
    assert verify_lssd(comp).ok
    assert multipartite_complement(comp) == g
