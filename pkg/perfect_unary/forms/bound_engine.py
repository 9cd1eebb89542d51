"""Closed-form constants and class-count bounds for perfect unary forms.

Every function evaluates at ``BOUND_DPS`` decimal digits and returns an ``mpf``. Two conventions are carried side by
side wherever the literature disagrees:

* exponent variant ``stated`` uses e^sqrt(eta^2 + theta), ``proof`` uses e^(n sqrt(eta^2 + theta));
* eta variant ``abstract`` uses R_K^(1/(n-1)), ``theorem`` uses R_K^(1/n) for 2 <= n <= 11.
"""

import logging
from fractions import Fraction
from math import factorial
from typing import Annotated, Literal, Optional, Union

from mpmath import mp, mpf
from pydantic import BaseModel, Field

from .errors import DomainTooSmallError

logger = logging.getLogger(__name__)

BOUND_DPS = 40
SMALL_RANK_LIMIT = 11

ExponentVariant = Literal["stated", "proof"]
EtaVariant = Literal["abstract", "theorem"]
Reducibility = Union[Literal["unit", "derive"], Fraction, float, int, mpf]


def _real(value: Union[int, float, Fraction, mpf]) -> mpf:
    if isinstance(value, Fraction):
        return mpf(value.numerator) / value.denominator
    return mpf(value)


def gamma_blichfeldt(n: int) -> mpf:
    """Blichfeldt's upper bound (2/pi) * Gamma(2 + n/2)^(2/n) on Hermite's constant gamma_n."""
    if n < 1:
        raise DomainTooSmallError("rank must be positive")
    with mp.workdps(BOUND_DPS):
        return 2 / mp.pi * mp.gamma(2 + mpf(n) / 2) ** (mpf(2) / n)


def lambda1_lower(n: int) -> mpf:
    if n <= 2:
        raise DomainTooSmallError("log log n must be positive, so n >= 3")
    with mp.workdps(BOUND_DPS):
        return mp.sqrt(mpf(2) / n) / 1000 * (mp.log(mp.log(n)) / mp.log(n)) ** 3


def eta_case(n: int, unit_reducible: bool) -> str:
    if unit_reducible or n == 1:
        return "unit-reducible"
    return "small-n" if n <= SMALL_RANK_LIMIT else "large-n"


def eta_K(n: int, regulator: Union[float, mpf], unit_reducible: bool, variant: EtaVariant = "abstract") -> mpf:
    if unit_reducible:
        return mpf(0)
    if n < 2:
        raise DomainTooSmallError("eta_K needs n >= 2 unless the field is unit reducible")
    with mp.workdps(BOUND_DPS):
        regulator = _real(regulator)
        if n <= SMALL_RANK_LIMIT:
            exponent = mpf(1) / (n - 1) if variant == "abstract" else mpf(1) / n
            return mp.sqrt(n - 1) / 2 * regulator**exponent
        return (
            mp.sqrt(n - 1)
            / 2
            * (2 / mp.pi) ** (n - 1)
            * mp.gamma(2 + mpf(n - 1) / 2) ** 2
            * lambda1_lower(n) ** (2 - n)
            * regulator
        )


def theta_K(a_value: Union[float, Fraction, mpf], n: int) -> mpf:
    if n < 2:
        raise DomainTooSmallError("theta_K needs n >= 2")
    with mp.workdps(BOUND_DPS):
        a_value = _real(a_value)
        if a_value < 1:
            raise DomainTooSmallError("A-reducibility constants are at least 1")
        return 4 * mp.log(a_value) ** 2 / (n - 1)


def a_reducibility_bound(n: int, delta: int) -> mpf:
    """n^(-n/2) * sqrt|Delta| * (2/pi)^(n/2) * Gamma(2 + n/2)."""
    if n < 1 or delta == 0:
        raise DomainTooSmallError("need n >= 1 and a nonzero discriminant")
    with mp.workdps(BOUND_DPS):
        half = mpf(n) / 2
        return mpf(n) ** (-half) * mp.sqrt(abs(delta)) * (2 / mp.pi) ** half * mp.gamma(2 + half)


def rho_K(n: int, delta: int, unit_reducible: bool) -> mpf:
    if unit_reducible:
        return mpf(0)
    if n < 2:
        raise DomainTooSmallError("rho_K needs n >= 2 unless the field is unit reducible")
    return theta_K(max(a_reducibility_bound(n, delta), mpf(1)), n)


def _lem2_core(n: int, delta: int) -> mpf:
    return 4 / mp.pi**2 * mp.gamma(2 + mpf(n) / 2) ** (mpf(4) / n) * mpf(abs(delta)) ** (mpf(2) / n)


def lem2_product_bound(n: int, delta: int) -> mpf:
    """Upper bound on mu(a) * mu(a^-1)."""
    with mp.workdps(BOUND_DPS):
        return _lem2_core(n, delta)


def lem2_trace_bound(n: int, delta: int, eta: Union[float, mpf], theta: Union[float, mpf]) -> mpf:
    """Upper bound on Tr(x^2) for minimal vectors x of a unit-reduced form."""
    with mp.workdps(BOUND_DPS):
        return mp.exp(mp.sqrt(_real(eta) ** 2 + _real(theta))) * _lem2_core(n, delta)


def lem2_minimum_bound(n: int, delta: int, norm: Union[Fraction, mpf]) -> mpf:
    """gamma_n-bound * |Delta|^(1/n) * Nm(a)^(1/n), an upper bound on mu(a)."""
    gamma = gamma_blichfeldt(n)
    with mp.workdps(BOUND_DPS):
        return gamma * mpf(abs(delta)) ** (mpf(1) / n) * _real(norm) ** (mpf(1) / n)


def _resolve_theta(n: int, delta: int, reducibility: Reducibility, theorem: int) -> tuple[mpf, bool]:
    unit_reducible = n == 1 or (isinstance(reducibility, str) and reducibility == "unit")
    if unit_reducible:
        return mpf(0), True
    if theorem == 2 or (isinstance(reducibility, str) and reducibility == "derive"):
        return rho_K(n, delta, unit_reducible=False), False
    return theta_K(max(_real(reducibility), mpf(1)), n), False


def class_count_bound(
    n: int,
    delta: int,
    regulator: Union[float, mpf],
    reducibility: Reducibility = "derive",
    theorem: int = 1,
    exponent_variant: ExponentVariant = "proof",
    eta_variant: EtaVariant = "abstract",
) -> mpf:
    """Upper bound on the number of homothety classes of perfect unary forms.

    Args:
        n: the field degree.
        delta: the field discriminant.
        regulator: R_K.
        reducibility: "unit", "derive" (A from the discriminant bound) or an explicit A >= 1.
        theorem: 1 uses the supplied reducibility, 2 always derives A from the discriminant.
        exponent_variant: "stated" or "proof" exponent of e.
        eta_variant: "abstract" or "theorem" exponent of R_K inside eta_K.

    Returns:
        e^(k sqrt(eta^2 + theta)) * |Delta| * (2/pi)^(2n) * Gamma(2 + n/2)^4 with k = 1 or n.
    """
    if theorem not in (1, 2):
        raise ValueError(f"unknown theorem {theorem}")
    theta, unit_reducible = _resolve_theta(n, delta, reducibility, theorem)
    eta = eta_K(n, regulator, unit_reducible, eta_variant)
    with mp.workdps(BOUND_DPS):
        scale = n if exponent_variant == "proof" else 1
        return (
            mp.exp(scale * mp.sqrt(eta**2 + theta))
            * abs(delta)
            * (2 / mp.pi) ** (2 * n)
            * mp.gamma(2 + mpf(n) / 2) ** 4
        )


def gamma_half_integer(k: int) -> tuple[Fraction, int]:
    """Gamma(k/2) = coefficient * sqrt(pi)^power exactly, for k >= 1."""
    if k < 1:
        raise DomainTooSmallError("Gamma(k/2) is only tabulated for k >= 1")
    if k % 2 == 0:
        return Fraction(factorial(k // 2 - 1)), 0
    # Gamma(m + 1/2) = (2m)! / (4^m m!) sqrt(pi)
    m = (k - 1) // 2
    return Fraction(factorial(2 * m), 4**m * factorial(m)), 1


def gamma_half_integer_value(k: int) -> mpf:
    coefficient, power = gamma_half_integer(k)
    with mp.workdps(BOUND_DPS):
        return _real(coefficient) * mp.sqrt(mp.pi) ** power


def gamma_cross_check(max_k: int = 64) -> mpf:
    """Largest relative gap between mpmath's Gamma and the exact half-integer forms for k <= max_k."""
    with mp.workdps(BOUND_DPS):
        worst = mpf(0)
        for k in range(1, max_k + 1):
            exact = gamma_half_integer_value(k)
            worst = max(worst, abs(mp.gamma(mpf(k) / 2) - exact) / exact)
    return worst


def hermite_constants_known() -> dict[int, mpf]:
    """Exact Hermite constants gamma_n for n = 1..8."""
    with mp.workdps(BOUND_DPS):
        return {
            1: mpf(1),
            2: 2 / mp.sqrt(3),
            3: mpf(2) ** (mpf(1) / 3),
            4: mp.sqrt(2),
            5: mpf(8) ** (mpf(1) / 5),
            6: (mpf(64) / 3) ** (mpf(1) / 6),
            7: mpf(64) ** (mpf(1) / 7),
            8: mpf(2),
        }


def abstract_display(n: int, regulator: Union[float, mpf], delta: int) -> mpf:
    """f(n, R_K) = (sqrt(n-1)/2) R_K^(1/(n-1)) + (4/(n-1)) log(sqrt|Delta|)^2, for 2 <= n <= 11."""
    if not 2 <= n <= SMALL_RANK_LIMIT:
        raise DomainTooSmallError("the closed form f(n, R_K) covers 2 <= n <= 11")
    with mp.workdps(BOUND_DPS):
        return mp.sqrt(n - 1) / 2 * _real(regulator) ** (mpf(1) / (n - 1)) + 4 * mp.log(
            mp.sqrt(abs(delta))
        ) ** 2 / (n - 1)


class BoundReport(BaseModel):
    n: Annotated[int, Field(description="Field degree")]
    delta: Annotated[int, Field(description="|Delta_K|")]
    regulator: Annotated[float, Field(description="R_K")]
    gamma_upper: Annotated[float, Field(description="Blichfeldt bound on gamma_n")]
    eta: Annotated[float, Field(description="eta_K for the selected eta variant")]
    eta_abstract: float
    eta_theorem: float
    eta_case: Annotated[str, Field(description="unit-reducible, small-n or large-n")]
    theta: float
    a_used: Annotated[float, Field(description="The A value behind theta")]
    a_source: Annotated[str, Field(description="unit, empirical, derived or supplied")]
    rho: float
    a_bound: Annotated[float, Field(description="A-reducibility bound from the discriminant")]
    lambda1_lower: Optional[float] = None
    thm1_stated: float
    thm1_proof: float
    thm2_stated: float
    thm2_proof: float
    thm1: Annotated[float, Field(description="First class-count bound for the selected exponent variant")]
    thm2: Annotated[float, Field(description="Second class-count bound for the selected exponent variant")]
    lem2_trace_bound: float
    lem2_product_bound: float
    abstract_display: Optional[float] = None
    exponent_variant: ExponentVariant = "proof"
    eta_variant: EtaVariant = "abstract"


def build_bound_report(
    n: int,
    delta: int,
    regulator: Union[float, mpf],
    a_value: Optional[Union[float, Fraction, mpf]] = None,
    unit_reducible: bool = False,
    exponent_variant: ExponentVariant = "proof",
    eta_variant: EtaVariant = "abstract",
) -> BoundReport:
    """Assemble every bound for one field.

    The first bound uses ``a_value`` (usually the empirical A) when given, else the discriminant bound.
    The second always uses the discriminant bound. ``unit_reducible`` zeroes eta and theta everywhere.
    """
    unit_reducible = unit_reducible or n == 1
    a_bound = a_reducibility_bound(n, delta)
    if unit_reducible:
        reducibility: Reducibility = "unit"
        a_used, a_source = mpf(1), "unit"
    elif a_value is None:
        reducibility = "derive"
        a_used, a_source = max(a_bound, mpf(1)), "derived"
    else:
        a_used, a_source = max(_real(a_value), mpf(1)), "empirical"
        reducibility = a_used
    if a_source != "unit" and a_used == 1:
        logger.debug("A clamps to 1; theta vanishes")
    theta = mpf(0) if unit_reducible else theta_K(a_used, n)
    etas = {variant: eta_K(n, regulator, unit_reducible, variant) for variant in ("abstract", "theorem")}
    bounds = {
        (theorem, variant): class_count_bound(
            n, delta, regulator, reducibility, theorem, variant, eta_variant
        )
        for theorem in (1, 2)
        for variant in ("stated", "proof")
    }
    return BoundReport(
        n=n,
        delta=abs(delta),
        regulator=float(regulator),
        gamma_upper=float(gamma_blichfeldt(n)),
        eta=float(etas[eta_variant]),
        eta_abstract=float(etas["abstract"]),
        eta_theorem=float(etas["theorem"]),
        eta_case=eta_case(n, unit_reducible),
        theta=float(theta),
        a_used=float(a_used),
        a_source=a_source,
        rho=float(rho_K(n, delta, unit_reducible)),
        a_bound=float(a_bound),
        lambda1_lower=float(lambda1_lower(n)) if n >= 3 else None,
        thm1_stated=float(bounds[1, "stated"]),
        thm1_proof=float(bounds[1, "proof"]),
        thm2_stated=float(bounds[2, "stated"]),
        thm2_proof=float(bounds[2, "proof"]),
        thm1=float(bounds[1, exponent_variant]),
        thm2=float(bounds[2, exponent_variant]),
        lem2_trace_bound=float(lem2_trace_bound(n, delta, etas[eta_variant], theta)),
        lem2_product_bound=float(lem2_product_bound(n, delta)),
        abstract_display=float(abstract_display(n, regulator, delta)) if 2 <= n <= SMALL_RANK_LIMIT else None,
        exponent_variant=exponent_variant,
        eta_variant=eta_variant,
    )
