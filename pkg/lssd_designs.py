"""
Symmetric 2-design parameters and incidence verification.

A symmetric (v, k, lambda) design has v points and v blocks of size k with
any two blocks meeting in lambda points, so its incidence matrix B satisfies
B Bᵀ = Bᵀ B = (k - lambda) I + lambda J and k(k - 1) = lambda(v - 1).
"""

from __future__ import annotations

import logging
from collections.abc import Iterable
from dataclasses import dataclass
from typing_extensions import Self, override

from lssd_core import (
    DimensionError,
    IntMatrix,
    InvalidParametersError,
    is_perfect_square,
)

log = logging.getLogger(__name__)


@dataclass(frozen=True)
class DesignParams:
    """
    Validated parameters of a symmetric 2-design.

    - `n` is the order k - lambda; `s` its integer square root when one exists.
    - `degenerate` flags k = 1 or k = v - 1. Such triples are legal designs
      but the induced scheme is not Q-polynomial.
    """

    v: int
    k: int
    lam: int

    def __post_init__(self) -> None:
        v, k, lam = self.v, self.k, self.lam
        if v < 2:
            raise InvalidParametersError(f"v = {v} must be at least 2", "v>=2")
        if not 0 <= lam < k < v:
            raise InvalidParametersError(
                f"ordering 0 <= lambda < k < v fails for ({v}, {k}, {lam})",
                "0<=lambda<k<v",
            )
        if k * (k - 1) != lam * (v - 1):
            raise InvalidParametersError(
                f"k(k-1) = {k * (k - 1)} differs from lambda(v-1) = {lam * (v - 1)}",
                "k(k-1)=lambda(v-1)",
            )

    @property
    def n(self) -> int:
        return self.k - self.lam

    @property
    def s(self) -> int | None:
        return is_perfect_square(self.k - self.lam)

    @property
    def degenerate(self) -> bool:
        return self.k == 1 or self.k == self.v - 1

    def require_s(self) -> int:
        """Return s, raising InvalidParametersError when k - lambda is not a square."""
        s = self.s
        if s is None:
            raise InvalidParametersError(
                f"k - lambda = {self.n} is not a perfect square", "s integral"
            )
        return s

    def as_tuple(self) -> tuple[int, int, int]:
        return (self.v, self.k, self.lam)

    @override
    def __str__(self) -> str:
        return f"({self.v},{self.k},{self.lam})"

    @classmethod
    def parse(cls, text: str) -> Self:
        """Parse 'v,k,lambda'."""
        parts = [p.strip() for p in text.split(",")]
        if len(parts) != 3:
            raise ValueError(f"expected 'v,k,lambda', got {text!r}")
        try:
            v, k, lam = (int(p) for p in parts)
        except ValueError as e:
            raise ValueError(f"non-integer parameter in {text!r}") from e
        return cls(v, k, lam)


def validate_params(v: int, k: int, lam: int) -> DesignParams:
    """Return DesignParams for (v, k, lambda) or raise naming the failed constraint."""
    return DesignParams(v, k, lam)


def complement_params(p: DesignParams) -> DesignParams:
    """Parameters (v, v-k, v-2k+lambda) of the complementary design."""
    return DesignParams(p.v, p.v - p.k, p.v - 2 * p.k + p.lam)


def design_gram(p: DesignParams) -> IntMatrix:
    """The matrix (k - lambda) I + lambda J."""
    return IntMatrix.identity(p.v).scale(p.k - p.lam) + IntMatrix.ones(p.v, p.v).scale(
        p.lam
    )


def is_design_incidence(b: IntMatrix, p: DesignParams) -> bool:
    """True iff B Bᵀ = Bᵀ B = (k - lambda) I + lambda J exactly."""
    if b.shape != (p.v, p.v):
        raise DimensionError(f"incidence shape {b.shape} does not match v = {p.v}")
    target = design_gram(p)
    return b @ b.T == target and b.T @ b == target


def difference_set_incidence(v: int, difference_set: Iterable[int]) -> IntMatrix:
    """Cyclic development of a difference set in Z_v: B[i][j] = 1 iff j - i is in D."""
    ds = {d % v for d in difference_set}
    return IntMatrix.from_rows(
        [[1 if (j - i) % v in ds else 0 for j in range(v)] for i in range(v)]
    )
