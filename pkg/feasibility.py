"""
Parameter-level feasibility for linked systems with w > 2 fibers.

- `integrality_screen`: the necessary conditions on (v, k, lambda) alone
  (integral s, exactly one integral nu branch, gcd(k, v) > 1, gcd(s, v) > 1,
  composite v).
- `bounds`: the Noda, Krein, absolute and Menon bounds on w.
- `FAMILIES`: the 21 known families of symmetric designs, with closed forms
  for their parameters and `screen_family` to sweep an index range.
"""

from __future__ import annotations

import logging
import math
from collections.abc import Callable, Iterable, Mapping
from dataclasses import dataclass, field
from fractions import Fraction
from types import MappingProxyType
from typing import Literal, TypeAlias

from typing_extensions import Self, override

import sympy

from lssd_core import InvalidParametersError, NoSuchFamilyError
from lssd_designs import DesignParams
from lssd_system import Branch, MuNu, mu_nu

log = logging.getLogger(__name__)

FamilyVerdict: TypeAlias = Literal[
    "always-pass", "pass-iff-m=1", "never-pass", "mixed", "no-valid-index"
]
RowStatus: TypeAlias = Literal["pass", "fail", "rejected", "invalid"]


# --- integrality screen ---
@dataclass(frozen=True)
class ScreenVerdict:
    params: DesignParams
    s_integral: bool
    nu_plus_integral: bool
    nu_minus_integral: bool
    gcd_k_v: int
    gcd_s_v: int | None
    v_composite: bool
    degenerate: bool
    feasible: bool
    branch: Branch | None
    notes: tuple[str, ...] = ()


def integrality_screen(v: int, k: int, lam: int) -> ScreenVerdict:
    """
    Evaluate every necessary condition and report all of them.

    Raises InvalidParametersError when (v, k, lambda) is not a design triple.
    """
    p = DesignParams(v, k, lam)
    s = p.s
    notes: list[str] = []
    plus_ok = minus_ok = False
    gcd_s_v: int | None = None
    if s is None:
        notes.append("s integral")
    else:
        plus_ok = (k * (k + s)) % v == 0
        minus_ok = (k * (k - s)) % v == 0
        gcd_s_v = math.gcd(s, v)
        if not (plus_ok or minus_ok):
            notes.append("nu integral")
        elif plus_ok and minus_ok and not p.degenerate:
            notes.append("exactly one nu branch")
        if gcd_s_v == 1:
            notes.append("gcd(s,v)>1")
    gcd_k_v = math.gcd(k, v)
    if gcd_k_v == 1:
        notes.append("gcd(k,v)>1")
    v_composite = not sympy.isprime(v)
    if not v_composite:
        notes.append("v composite")
    if p.degenerate:
        notes.append("non-degenerate")
    feasible = not notes
    branch: Branch | None = None
    if s is not None and plus_ok != minus_ok:
        branch = "+" if plus_ok else "-"
    log.debug("screen %s: feasible=%s failed=%s", p, feasible, notes)
    return ScreenVerdict(
        params=p,
        s_integral=s is not None,
        nu_plus_integral=plus_ok,
        nu_minus_integral=minus_ok,
        gcd_k_v=gcd_k_v,
        gcd_s_v=gcd_s_v,
        v_composite=v_composite,
        degenerate=p.degenerate,
        feasible=feasible,
        branch=branch,
        notes=tuple(notes),
    )


# --- bounds on w ---
def _noda_terms(p: DesignParams, mn: MuNu) -> tuple[int, int]:
    """(L, R) such that the Noda inequality reads (w - 1) L <= R."""
    v, k, lam = p.as_tuple()
    c = math.comb
    tail = (v - k) * c(mn.nu, 3) + k * c(mn.mu, 3)
    lhs = (k - 2) * lam * c(k, 3) - (v - 2) * tail
    rhs = (v - 2) * ((v - 1) * c(lam, 3) + c(k, 3) - tail)
    return lhs, rhs


def krein_tight_at(p: DesignParams, w: int) -> bool:
    """q_{11}^1 = 0 at w, i.e. (w - 1)(2k - v) = (v - 2)s."""
    s = p.require_s()
    return 2 * p.k > p.v and (w - 1) * (2 * p.k - p.v) == (p.v - 2) * s


@dataclass(frozen=True)
class BoundsReport:
    """
    Upper bounds on the number of fibers.

    - `krein_w_max`: (v - 2)s/(2k - v) + 1 when 2k > v, else None (the Krein
      and simplified Noda bounds say nothing about pessimistic systems).
    - `absolute_w_max`: floor((v - 1)/2), or floor((v + 1)/2) when q_{11}^1 = 0.
    - `menon_w_max`: 2u^2 when v = 4u^2 and v - 2k = -2s; forced to 2 for odd u.
    - `krein_tight_admissible`: 4(k - lambda) <= v <= 2k, necessary for q_{11}^1 = 0.
    """

    params: DesignParams
    mu_nu: MuNu
    krein_w_max: Fraction | None
    absolute_w_max: int
    menon_w_max: int | None
    q111_is_zero: bool
    krein_tight_admissible: bool
    noda_lhs: int
    noda_rhs: int

    def noda_holds(self, w: int) -> bool:
        """The full binomial Noda inequality at w, in exact integers."""
        return (w - 1) * self.noda_lhs <= self.noda_rhs

    def noda_table(self, ws: Iterable[int]) -> dict[int, bool]:
        return {w: self.noda_holds(w) for w in ws}

    def noda_w_max(self, limit: int) -> int | None:
        """Largest w in 2..limit satisfying the Noda inequality, or None."""
        passing = [w for w in range(2, limit + 1) if self.noda_holds(w)]
        return max(passing) if passing else None


def bounds(p: DesignParams, q111_is_zero: bool = False) -> BoundsReport:
    """Evaluate every bound on the parameters exactly as given."""
    mn = mu_nu(p)
    v, k, lam = p.as_tuple()
    s = p.require_s()
    krein_w_max = Fraction((v - 2) * s, 2 * k - v) + 1 if 2 * k > v else None
    absolute_w_max = (v + 1) // 2 if q111_is_zero else (v - 1) // 2
    menon_w_max: int | None = None
    if (u := _menon_u(p)) is not None:
        menon_w_max = 2 * u * u if u % 2 == 0 else 2
    lhs, rhs = _noda_terms(p, mn)
    return BoundsReport(
        params=p,
        mu_nu=mn,
        krein_w_max=krein_w_max,
        absolute_w_max=absolute_w_max,
        menon_w_max=menon_w_max,
        q111_is_zero=q111_is_zero,
        krein_tight_admissible=4 * (k - lam) <= v <= 2 * k,
        noda_lhs=lhs,
        noda_rhs=rhs,
    )


def _menon_u(p: DesignParams) -> int | None:
    s = p.s
    if s is None or p.v - 2 * p.k != -2 * s:
        return None
    root = math.isqrt(p.v // 4)
    if 4 * root * root != p.v:
        return None
    return root


def menon_params(u: int) -> tuple[DesignParams, DesignParams]:
    """The complementary Menon pair (4u^2, (2u-1)u, (u-1)u) and (4u^2, (2u+1)u, (u+1)u)."""
    if u < 1:
        raise InvalidParametersError(f"Menon parameters need u >= 1, got {u}", "u>=1")
    v = 4 * u * u
    return (
        DesignParams(v, (2 * u - 1) * u, (u - 1) * u),
        DesignParams(v, (2 * u + 1) * u, (u + 1) * u),
    )


# --- families of symmetric designs ---
Indices: TypeAlias = Mapping[str, int]
ClosedForm: TypeAlias = Callable[[Indices], tuple[Fraction, Fraction, Fraction]]
IndexCheck: TypeAlias = Callable[[Indices], None]


def _is_prime_power(q: int) -> bool:
    return q >= 2 and len(sympy.factorint(q)) == 1


def _require_prime_power(name: str, q: int) -> None:
    if not _is_prime_power(q):
        raise InvalidParametersError(f"{name} = {q} is not a prime power", f"{name} prime power")


def _require_prime(name: str, q: int) -> None:
    if not sympy.isprime(q):
        raise InvalidParametersError(f"{name} = {q} is not prime", f"{name} prime")


def _require_at_least(name: str, x: int, low: int) -> None:
    if x < low:
        raise InvalidParametersError(f"{name} = {x} must be at least {low}", f"{name}>={low}")


def _geom(q: int, top: int) -> int:
    """q^top + ... + q + 1 (0 when top < 0)."""
    return sum(q**e for e in range(top + 1))


def _f(x: int) -> Fraction:
    return Fraction(x)


def _point_hyperplane(ix: Indices) -> tuple[Fraction, Fraction, Fraction]:
    q, m = ix["q"], ix["m"]
    _require_prime_power("q", q)
    _require_at_least("m", m, 2)
    return _f(_geom(q, m)), _f(_geom(q, m - 1)), _f(_geom(q, m - 2))


def _hadamard_designs(ix: Indices) -> tuple[Fraction, Fraction, Fraction]:
    n = ix["n"]
    _require_at_least("n", n, 2)
    return _f(4 * n - 1), _f(2 * n - 1), _f(n - 1)


def _positive_t(ix: Indices) -> None:
    _require_at_least("t", ix["t"], 1)


def _whiteman(ix: Indices) -> tuple[Fraction, Fraction, Fraction]:
    p = ix["p"]
    q = 3 * p + 2
    _require_prime("p", p)
    _require_prime("q", q)
    return _f(p * q), Fraction(p * q - 1, 4), Fraction(p * q - 5, 16)


def _menon(ix: Indices) -> tuple[Fraction, Fraction, Fraction]:
    t = ix["t"]
    _require_at_least("t", t, 1)
    return _f(4 * t * t), _f(2 * t * t - t), _f(t * t - t)


def _mcfarland(ix: Indices) -> tuple[Fraction, Fraction, Fraction]:
    q, m = ix["q"], ix["m"]
    _require_prime_power("q", q)
    _require_at_least("m", m, 1)
    return (
        _f(q ** (m + 1) * (_geom(q, m) + 1)),
        _f(q**m * _geom(q, m)),
        _f(q**m * _geom(q, m - 1)),
    )


def _wilson_ss(ix: Indices) -> tuple[Fraction, Fraction, Fraction]:
    m = ix["m"]
    _require_at_least("m", m, 2)
    return _f(m**3 + m + 1), _f(m * m + 1), _f(m)


def _spence(ix: Indices) -> tuple[Fraction, Fraction, Fraction]:
    m = ix["m"]
    _require_at_least("m", m, 1)
    return (
        Fraction(3**m * (3**m - 1), 2),
        Fraction(3 ** (m - 1) * (3**m + 1), 2),
        Fraction(3 ** (m - 1) * (3 ** (m - 1) + 1), 2),
    )


def _rajkundlia(ix: Indices) -> tuple[Fraction, Fraction, Fraction]:
    q, d, m = ix["q"], ix["d"], ix["m"]
    _require_prime_power("q", q)
    _require_at_least("d", d, 2)
    _require_at_least("m", m, 1)
    r = (q**d - 1) // (q - 1)
    return (
        1 + Fraction(q * r * (r**m - 1), r - 1),
        _f(r**m),
        Fraction(r ** (m - 1) * (r - 1), q),
    )


def _wilson_brouwer(ix: Indices) -> tuple[Fraction, Fraction, Fraction]:
    q, m = ix["q"], ix["m"]
    _require_prime_power("q", q)
    _require_at_least("m", m, 1)
    return (
        _f(2 * (_geom(q, m) - 1) + 1),
        _f(q**m),
        Fraction(q ** (m - 1) * (q - 1), 2),
    )


def _spence_jp_ionin(ix: Indices) -> tuple[Fraction, Fraction, Fraction]:
    q, d, m = ix["q"], ix["d"], ix["m"]
    _require_prime_power("q", q)
    _require_at_least("d", d, 1)
    _require_at_least("m", m, 1)
    r = (q ** (d + 1) - 1) // (q - 1)
    return (
        Fraction(q ** (d + 1) * (r ** (2 * m) - 1), r - 1),
        _f(r ** (2 * m - 1) * q**d),
        _f((r - 1) * r ** (2 * m - 2) * q ** (d - 1)),
    )


def _davis_jedwab(ix: Indices) -> tuple[Fraction, Fraction, Fraction]:
    d = ix["d"]
    _require_at_least("d", d, 0)
    return (
        Fraction(2 ** (2 * d + 4) * (2 ** (2 * d + 2) - 1), 3),
        Fraction(2 ** (2 * d + 1) * (2 ** (2 * d + 3) + 1), 3),
        Fraction(2 ** (2 * d + 1) * (2 ** (2 * d + 1) + 1), 3),
    )


def _chen(ix: Indices) -> tuple[Fraction, Fraction, Fraction]:
    q, d = ix["q"], ix["d"]
    _require_prime_power("q", q)
    _require_at_least("d", d, 1)
    # k uses the denominator q + 1; with q - 1 the triple breaks k(k-1) = lambda(v-1)
    return (
        Fraction(4 * q ** (2 * d) * (q ** (2 * d) - 1), q * q - 1),
        q ** (2 * d - 1) * (1 + Fraction(2 * (q ** (2 * d) - 1), q + 1)),
        Fraction(q ** (2 * d - 1) * (q - 1) * (q ** (2 * d - 1) + 1), q + 1),
    )


def _ionin_15(ix: Indices) -> tuple[Fraction, Fraction, Fraction]:
    q, d, m = ix["q"], ix["d"], ix["m"]
    _require_prime_power("q", q)
    _require_at_least("d", d, 1)
    _require_at_least("m", m, 1)
    r = q ** (d + 1) + q - 1
    return (
        Fraction(q**d * (r ** (2 * m) - 1), (q - 1) * (q**d + 1)),
        _f(q**d * r ** (2 * m - 1)),
        _f(q**d * (q**d + 1) * (q - 1) * r ** (2 * m - 2)),
    )


def _ionin_16(ix: Indices) -> tuple[Fraction, Fraction, Fraction]:
    d, m = ix["d"], ix["m"]
    _require_at_least("d", d, 1)
    _require_at_least("m", m, 1)
    q = (3 ** (d + 1) + 1) // 2
    _require_prime_power("q", q)
    return (
        Fraction(2 * 3**d * (q ** (2 * m) - 1), 3**d + 1),
        _f(3**d * q ** (2 * m - 1)),
        Fraction(3**d * (3**d + 1) * q ** (2 * m - 2), 2),
    )


def _ionin_17(ix: Indices) -> tuple[Fraction, Fraction, Fraction]:
    d, m = ix["d"], ix["m"]
    _require_at_least("d", d, 1)
    _require_at_least("m", m, 1)
    q = 3 ** (d + 1) - 2
    _require_prime_power("q", q)
    return (
        Fraction(3**d * (q ** (2 * m) - 1), 2 * (3**d - 1)),
        _f(3**d * q ** (2 * m - 1)),
        _f(2 * 3**d * (3**d - 1) * q ** (2 * m - 2)),
    )


def _ionin_18(ix: Indices) -> tuple[Fraction, Fraction, Fraction]:
    d, m = ix["d"], ix["m"]
    _require_at_least("d", d, 1)
    _require_at_least("m", m, 1)
    q = (2 ** (2 * d + 3) + 1) // 3
    _require_prime_power("q", q)
    return (
        Fraction(2 ** (2 * d + 3) * (q ** (2 * m) - 1), q + 1),
        _f(2 ** (2 * d + 1) * q ** (2 * m - 1)),
        _f(2 ** (2 * d - 1) * (q + 1) * q ** (2 * m - 2)),
    )


def _ionin_19(ix: Indices) -> tuple[Fraction, Fraction, Fraction]:
    d, m = ix["d"], ix["m"]
    _require_at_least("d", d, 1)
    _require_at_least("m", m, 1)
    q = 2 ** (2 * d + 3) - 3
    _require_prime_power("q", q)
    return (
        Fraction(2 ** (2 * d + 3) * (q ** (2 * m) - 1), 3 * q - 3),
        _f(2 ** (2 * d + 1) * q ** (2 * m - 1)),
        _f(3 * 2 ** (2 * d - 1) * (q - 1) * q ** (2 * m - 2)),
    )


def _mersenne_d(ix: Indices) -> None:
    d, m = ix["d"], ix["m"]
    _require_at_least("d", d, 2)
    _require_at_least("m", m, 1)
    _require_prime("2^d - 1", 2**d - 1)


def _kharaghani_ionin(ix: Indices) -> tuple[Fraction, Fraction, Fraction]:
    t, m = ix["t"], ix["m"]
    _require_at_least("t", t, 2)
    _require_at_least("m", m, 1)
    q = (2 * t - 1) ** 2
    return (
        Fraction(4 * t * t * (q ** (m + 1) - 1), q - 1),
        _f((2 * t * t - t) * q**m),
        _f((t * t - t) * q**m),
    )


@dataclass(frozen=True)
class FamilyDef:
    """
    One family of symmetric designs.

    `primary` names the index swept by `screen_family`; the other indices
    take `defaults` unless overridden. A family with `auto_reject` excludes
    every member without arithmetic and has no `closed_form`; its
    `check_indices` still marks out-of-range indices as invalid.
    """

    family_id: int
    name: str
    index_names: tuple[str, ...]
    primary: str
    default_range: tuple[int, int]
    defaults: Mapping[str, int]
    closed_form: ClosedForm | None
    auto_reject: str | None = None
    check_indices: IndexCheck | None = None


def _family(
    family_id: int,
    name: str,
    index_names: tuple[str, ...],
    primary: str,
    default_range: tuple[int, int],
    closed_form: ClosedForm | None,
    defaults: Mapping[str, int] | None = None,
    auto_reject: str | None = None,
    check_indices: IndexCheck | None = None,
) -> FamilyDef:
    return FamilyDef(
        family_id,
        name,
        index_names,
        primary,
        default_range,
        MappingProxyType(dict(defaults or {})),
        closed_form,
        auto_reject,
        check_indices,
    )


_PRIME_V = "v is prime, and an LSSD with w > 2 needs composite v"

FAMILIES: Mapping[int, FamilyDef] = MappingProxyType(
    {
        f.family_id: f
        for f in (
            _family(1, "Point-hyperplane", ("q", "m"), "m", (2, 5), _point_hyperplane, {"q": 2}),
            _family(2, "Hadamard matrix designs", ("n",), "n", (2, 40), _hadamard_designs),
            _family(
                3, "Chowla", ("t",), "t", (1, 10), None, auto_reject=_PRIME_V, check_indices=_positive_t
            ),
            _family(
                4, "Lehmer", ("t",), "t", (1, 10), None, auto_reject=_PRIME_V, check_indices=_positive_t
            ),
            _family(5, "Whiteman", ("p",), "p", (3, 11), _whiteman),
            _family(6, "Menon", ("t",), "t", (2, 20), _menon),
            _family(7, "Wallis; McFarland", ("q", "m"), "m", (1, 3), _mcfarland, {"q": 2}),
            _family(8, "Wilson; Shrikhande and Singhi", ("m",), "m", (2, 10), _wilson_ss),
            _family(9, "Spence", ("m",), "m", (2, 4), _spence),
            _family(
                10,
                "Rajkundlia and Mitchell; Ionin",
                ("q", "d", "m"),
                "m",
                (1, 4),
                _rajkundlia,
                {"q": 2, "d": 2},
            ),
            _family(11, "Wilson; Brouwer", ("q", "m"), "m", (1, 4), _wilson_brouwer, {"q": 3}),
            _family(
                12,
                "Spence, Jungnickel and Pott, Ionin",
                ("q", "d", "m"),
                "m",
                (1, 4),
                _spence_jp_ionin,
                {"q": 2, "d": 1},
            ),
            _family(13, "Davis and Jedwab", ("d",), "d", (1, 3), _davis_jedwab),
            _family(14, "Chen", ("q", "d"), "d", (1, 2), _chen, {"q": 2}),
            _family(15, "Ionin", ("q", "d", "m"), "m", (1, 3), _ionin_15, {"q": 2, "d": 1}),
            _family(16, "Ionin", ("d", "m"), "m", (1, 3), _ionin_16, {"d": 1}),
            _family(17, "Ionin", ("d", "m"), "m", (1, 3), _ionin_17, {"d": 1}),
            _family(18, "Ionin", ("d", "m"), "m", (1, 3), _ionin_18, {"d": 1}),
            _family(19, "Ionin", ("d", "m"), "m", (1, 3), _ionin_19, {"d": 1}),
            _family(
                20,
                "Ionin",
                ("d", "m"),
                "d",
                (2, 5),
                None,
                {"m": 1},
                auto_reject="the order 2^(2dm-d-1)(2^d-1) is never a square",
                check_indices=_mersenne_d,
            ),
            _family(21, "Kharaghani and Ionin", ("t", "m"), "t", (2, 6), _kharaghani_ionin, {"m": 1}),
        )
    }
)


def family_def(family_id: int) -> FamilyDef:
    try:
        return FAMILIES[family_id]
    except KeyError as e:
        raise NoSuchFamilyError(f"no design family {family_id}; families are 1..21") from e


@dataclass(frozen=True)
class FamilySpec:
    family_id: int
    indices: Mapping[str, int]

    def __post_init__(self) -> None:
        fam = family_def(self.family_id)
        merged = {**fam.defaults, **self.indices}
        unknown = sorted(set(merged) - set(fam.index_names))
        if unknown:
            raise InvalidParametersError(
                f"family {self.family_id} has no index {unknown[0]!r}; "
                + f"its indices are {', '.join(fam.index_names)}",
                "index names",
            )
        missing = [n for n in fam.index_names if n not in merged]
        if missing:
            raise InvalidParametersError(
                f"family {self.family_id} needs index {missing[0]!r}", "index names"
            )
        object.__setattr__(
            self, "indices", MappingProxyType({n: merged[n] for n in fam.index_names})
        )

    @classmethod
    def create(cls, family_id: int, **indices: int) -> Self:
        return cls(family_id, indices)

    @override
    def __str__(self) -> str:
        ix = ", ".join(f"{n}={x}" for n, x in self.indices.items())
        return f"family {self.family_id} ({ix})"


@dataclass(frozen=True)
class Rejection:
    """A family member excluded by a family-level obstruction."""

    reason: str


def family_params(spec: FamilySpec) -> DesignParams | Rejection:
    """
    Closed-form (v, k, lambda) for one member of a family.

    Raises InvalidParametersError when the index is outside the family's
    constraints, the closed form is not integral, or the triple is not a
    design triple.
    """
    fam = family_def(spec.family_id)
    if fam.check_indices is not None:
        fam.check_indices(spec.indices)
    if fam.auto_reject is not None or fam.closed_form is None:
        return Rejection(fam.auto_reject or "no closed form")
    values = fam.closed_form(spec.indices)
    if any(x.denominator != 1 for x in values):
        raise InvalidParametersError(
            f"{spec} gives non-integral parameters ({', '.join(str(x) for x in values)})",
            "integral parameters",
        )
    v, k, lam = (int(x) for x in values)
    return DesignParams(v, k, lam)


@dataclass(frozen=True)
class FamilyRow:
    spec: FamilySpec
    status: RowStatus
    params: DesignParams | None = None
    verdict: ScreenVerdict | None = None
    reason: str = ""

    @property
    def failed_conditions(self) -> tuple[str, ...]:
        return self.verdict.notes if self.verdict is not None else ()


@dataclass(frozen=True)
class FamilyScreen:
    family_id: int
    primary: str
    rows: tuple[FamilyRow, ...] = field(default=())

    @property
    def verdict(self) -> FamilyVerdict:
        valid = [r for r in self.rows if r.status != "invalid"]
        if not valid:
            return "no-valid-index"
        passing = [r for r in valid if r.status == "pass"]
        if len(passing) == len(valid):
            return "always-pass"
        if not passing:
            return "never-pass"
        if self.primary == "m" and all(
            (r.status == "pass") == (r.spec.indices["m"] == 1) for r in valid
        ):
            return "pass-iff-m=1"
        return "mixed"


def _screen_row(spec: FamilySpec) -> FamilyRow:
    try:
        result = family_params(spec)
    except InvalidParametersError as e:
        return FamilyRow(spec, "invalid", reason=str(e))
    if isinstance(result, Rejection):
        return FamilyRow(spec, "rejected", reason=result.reason)
    if result.degenerate:
        return FamilyRow(spec, "invalid", params=result, reason="degenerate parameters")
    verdict = integrality_screen(*result.as_tuple())
    return FamilyRow(
        spec,
        "pass" if verdict.feasible else "fail",
        params=result,
        verdict=verdict,
        reason=", ".join(verdict.notes),
    )


def screen_family(
    family_id: int,
    index_range: Iterable[int] | None = None,
    fixed: Mapping[str, int] | None = None,
) -> FamilyScreen:
    """
    Screen a family over its primary index.

    `index_range` defaults to the family's registered range; `fixed`
    overrides the other indices. Rows come back in index order.
    """
    fam = family_def(family_id)
    if index_range is None:
        lo, hi = fam.default_range
        index_range = range(lo, hi + 1)
    base = dict(fixed or {})
    rows: list[FamilyRow] = []
    for x in sorted(set(index_range)):
        rows.append(_screen_row(FamilySpec(family_id, {**base, fam.primary: x})))
    screen = FamilyScreen(family_id, fam.primary, tuple(rows))
    log.debug("family %d screened over %d indices: %s", family_id, len(rows), screen.verdict)
    return screen
