from __future__ import annotations

import numpy as np
import pytest

from lssd_core import IntMatrix, InvalidParametersError
from lssd_designs import (
    DesignParams,
    complement_params,
    design_gram,
    difference_set_incidence,
    is_design_incidence,
    validate_params,
)


def test_params_derived_values() -> None:
    p = DesignParams(16, 6, 2)
    assert p.n == 4
    assert p.s == 2
    assert not p.degenerate
    assert str(p) == "(16,6,2)"
    assert p.as_tuple() == (16, 6, 2)


def test_fano_has_no_integral_s() -> None:
    p = validate_params(7, 3, 1)
    assert p.s is None
    with pytest.raises(InvalidParametersError):
        _ = p.require_s()


@pytest.mark.parametrize(
    ("triple", "constraint"),
    [
        ((7, 3, 2), "k(k-1)=lambda(v-1)"),
        ((7, 7, 7), "0<=lambda<k<v"),
        ((1, 0, 0), "v>=2"),
    ],
)
def test_invalid_triples_name_the_constraint(triple: tuple[int, int, int], constraint: str) -> None:
    with pytest.raises(InvalidParametersError) as info:
        _ = DesignParams(*triple)
    assert info.value.constraint == constraint


@pytest.mark.parametrize("triple", [(4, 1, 0), (4, 3, 2), (9, 8, 7)])
def test_degenerate_flag(triple: tuple[int, int, int]) -> None:
    assert DesignParams(*triple).degenerate


def test_complement() -> None:
    assert complement_params(DesignParams(16, 6, 2)) == DesignParams(16, 10, 6)
    assert complement_params(DesignParams(7, 3, 1)) == DesignParams(7, 4, 2)


def test_parse() -> None:
    assert DesignParams.parse("16, 10, 6") == DesignParams(16, 10, 6)
    with pytest.raises(ValueError):
        _ = DesignParams.parse("16,10")
    with pytest.raises(ValueError):
        _ = DesignParams.parse("a,b,c")


def test_design_gram() -> None:
    g = design_gram(DesignParams(7, 3, 1))
    assert g[0, 0] == 3
    assert g[0, 1] == 1


def test_fano_difference_set() -> None:
    p = DesignParams(7, 3, 1)
    b = difference_set_incidence(7, [1, 2, 4])
    assert b.row_sums() == [3] * 7
    assert is_design_incidence(b, p)
    broken = b.data.copy()
    broken[0, 0] ^= 1
    assert not is_design_incidence(IntMatrix(broken), p)


def test_identity_is_the_degenerate_design() -> None:
    assert is_design_incidence(IntMatrix(np.eye(5, dtype=np.int64)), DesignParams(5, 1, 0))
