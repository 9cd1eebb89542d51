"""Exact arithmetic in a totally real number field given by a monic integer polynomial and an integral basis.

Elements are rational coordinate vectors over the integral basis omega_1 = 1, ..., omega_n. Products go through a
table of integer structure constants, traces and norms come from the multiplication-by-x matrix, and the real
embeddings are certified rational enclosures obtained from isolating intervals of the defining polynomial.
"""

import dataclasses
import json
import logging
from collections.abc import Sequence
from fractions import Fraction
from functools import cached_property, lru_cache
from math import isqrt
from pathlib import Path
from typing import Annotated, Optional, Union

from mpmath import mp, mpf
from pydantic import BaseModel, Field, ValidationError, field_validator
from sympy import Poly, Rational, Symbol, factorint
from tenacity import Retrying, retry_if_exception_type, stop_after_attempt

from . import linalg
from .errors import (
    BasisNotUnimodularError,
    EnclosureTooWideError,
    FieldInputError,
    IndeterminateSignError,
    InvalidPolynomialError,
    NotTotallyRealError,
    PrecisionExhaustedError,
    ReduciblePolynomialError,
    ZeroElementError,
)

logger = logging.getLogger(__name__)

DEFAULT_PRECISION_BITS = 128
MAX_PRECISION_BITS = 4096
PRECISION_GRAIN = 64

X = Symbol("x")

Scalar = Union[int, Fraction]
Interval = tuple[Fraction, Fraction]


def squarefree_part(d: int) -> tuple[int, int]:
    """Write d = f**2 * d0 with d0 squarefree; returns (d0, f)."""
    if d == 0:
        raise ValueError("0 has no squarefree part")
    core = -1 if d < 0 else 1
    for prime, exponent in factorint(abs(d)).items():
        if exponent % 2:
            core *= prime
    return core, isqrt(d // core)


def is_squarefree(d: int) -> bool:
    return d != 0 and all(exponent == 1 for exponent in factorint(abs(d)).values())


def to_mpf(value: Scalar) -> mpf:
    value = Fraction(value)
    return mpf(value.numerator) / value.denominator


def _interval_mul(a: Interval, b: Interval) -> Interval:
    products = (a[0] * b[0], a[0] * b[1], a[1] * b[0], a[1] * b[1])
    return min(products), max(products)


def _interval_horner(coefficients: Sequence[Fraction], point: Interval) -> Interval:
    """Enclosure of sum(coefficients[k] * t**k) for t in point."""
    acc = (coefficients[-1], coefficients[-1])
    for coefficient in reversed(coefficients[:-1]):
        low, high = _interval_mul(acc, point)
        acc = (low + coefficient, high + coefficient)
    return acc


@lru_cache(maxsize=4096)
def _refine_root(coefficients: tuple[int, ...], low: Fraction, high: Fraction, bits: int) -> Interval:
    if low == high:
        return low, high
    poly = Poly(list(reversed(coefficients)), X)
    s, t = poly.refine_root(
        Rational(low.numerator, low.denominator), Rational(high.numerator, high.denominator), eps=Rational(1, 2**bits)
    )
    return linalg.from_rational(s), linalg.from_rational(t)


@dataclasses.dataclass(frozen=True)
class FieldElement:
    """An element sum(coords[i] * omega_i) of a number field."""

    field: "NumberField" = dataclasses.field(compare=False, repr=False, hash=False)
    coords: tuple[Fraction, ...]

    def _coerce(self, other: Union["FieldElement", Scalar]) -> "FieldElement":
        if isinstance(other, FieldElement):
            return other
        return self.field.scalar(other)

    def __add__(self, other: Union["FieldElement", Scalar]) -> "FieldElement":
        other = self._coerce(other)
        return FieldElement(self.field, tuple(a + b for a, b in zip(self.coords, other.coords)))

    __radd__ = __add__

    def __neg__(self) -> "FieldElement":
        return FieldElement(self.field, tuple(-a for a in self.coords))

    def __sub__(self, other: Union["FieldElement", Scalar]) -> "FieldElement":
        return self + (-self._coerce(other))

    def __rsub__(self, other: Scalar) -> "FieldElement":
        return self._coerce(other) - self

    def __mul__(self, other: Union["FieldElement", Scalar]) -> "FieldElement":
        if isinstance(other, FieldElement):
            return self.field.multiply(self, other)
        scalar = Fraction(other)
        return FieldElement(self.field, tuple(a * scalar for a in self.coords))

    __rmul__ = __mul__

    def __truediv__(self, other: Union["FieldElement", Scalar]) -> "FieldElement":
        if isinstance(other, FieldElement):
            return self * other.inverse()
        scalar = Fraction(other)
        if scalar == 0:
            raise ZeroElementError("division by zero scalar")
        return FieldElement(self.field, tuple(a / scalar for a in self.coords))

    def __rtruediv__(self, other: Scalar) -> "FieldElement":
        return self._coerce(other) * self.inverse()

    def __pow__(self, exponent: int) -> "FieldElement":
        if exponent < 0:
            return self.inverse() ** (-exponent)
        result, base = self.field.one(), self
        while exponent:
            if exponent & 1:
                result = result * base
            base = base * base
            exponent >>= 1
        return result

    def inverse(self) -> "FieldElement":
        if self.is_zero():
            raise ZeroElementError("zero has no inverse")
        return FieldElement(self.field, linalg.solve(self.multiplication_matrix(), self.field.one().coords))

    def is_zero(self) -> bool:
        return not any(self.coords)

    def is_integral(self) -> bool:
        return all(c.denominator == 1 for c in self.coords)

    def multiplication_matrix(self) -> linalg.FractionMatrix:
        return self.field.multiplication_matrix(self)

    def trace(self) -> Fraction:
        return self.field.trace(self)

    def norm(self) -> Fraction:
        return self.field.norm(self)

    def __str__(self) -> str:
        return "(" + ", ".join(str(c) for c in self.coords) + ")"


class NumberField:
    """A totally real field K = Q[x]/(min_poly) with a fixed integral basis and ascending real embeddings."""

    def __init__(
        self,
        min_poly: Sequence[int],
        integral_basis: Sequence[Sequence[Scalar]],
        precision_bits: int = DEFAULT_PRECISION_BITS,
        max_precision_bits: int = MAX_PRECISION_BITS,
        order_discriminant_only: bool = False,
    ):
        self.min_poly = tuple(int(c) for c in min_poly)
        self.degree = len(self.min_poly) - 1
        self.integral_basis = tuple(tuple(Fraction(v) for v in row) for row in integral_basis)
        self.precision_bits = precision_bits
        self.max_precision_bits = max_precision_bits
        self.order_discriminant_only = order_discriminant_only
        n = self.degree
        if len(self.integral_basis) != n or any(len(row) != n for row in self.integral_basis):
            raise BasisNotUnimodularError(f"integral basis must be a {n}x{n} matrix")
        if self.integral_basis[0] != tuple(Fraction(int(k == 0)) for k in range(n)):
            raise BasisNotUnimodularError("the first basis element must be 1")
        if linalg.det(self.integral_basis) == 0:
            raise BasisNotUnimodularError("integral basis is linearly dependent")
        self._basis_inverse = linalg.inverse(self.integral_basis)
        self.multiplication_table = self._build_multiplication_table()
        self.basis_traces = tuple(sum(self.multiplication_table[i][j][j] for j in range(n)) for i in range(n))
        self.trace_matrix = tuple(
            tuple(
                sum(self.multiplication_table[i][j][k] * self.basis_traces[k] for k in range(n)) for j in range(n)
            )
            for i in range(n)
        )
        self.discriminant = int(linalg.det(self.trace_matrix))
        if self.discriminant == 0:
            raise BasisNotUnimodularError("trace form is degenerate")
        self._poly = Poly(list(reversed(self.min_poly)), X)
        self.root_intervals: tuple[Interval, ...] = tuple(
            (linalg.from_rational(s), linalg.from_rational(t)) for (s, t), _ in self._poly.intervals()
        )

    def _power_product(self, p: Sequence[Fraction], q: Sequence[Fraction]) -> list[Fraction]:
        n = self.degree
        product = [Fraction(0)] * (2 * n - 1)
        for i, a in enumerate(p):
            if a:
                for j, b in enumerate(q):
                    if b:
                        product[i + j] += a * b
        for k in range(2 * n - 2, n - 1, -1):
            top = product[k]
            if top:
                product[k] = Fraction(0)
                for i in range(n):
                    product[k - n + i] -= top * self.min_poly[i]
        return product[:n]

    def _build_multiplication_table(self) -> tuple[tuple[tuple[int, ...], ...], ...]:
        n = self.degree
        table = []
        for i in range(n):
            row = []
            for j in range(n):
                power = self._power_product(self.integral_basis[i], self.integral_basis[j])
                coords = linalg.vec_mat(power, self._basis_inverse)
                if any(c.denominator != 1 for c in coords):
                    raise BasisNotUnimodularError(f"omega_{i + 1} * omega_{j + 1} has non-integral coordinates")
                row.append(tuple(int(c) for c in coords))
            table.append(tuple(row))
        return tuple(table)

    @cached_property
    def trace_cube(self) -> tuple[tuple[tuple[int, ...], ...], ...]:
        """t[k][i][j] = Tr(omega_k * omega_i * omega_j); the Gram matrix of Tr(a x^2) is sum_k a_k t[k]."""
        n = self.degree
        table = self.multiplication_table
        return tuple(
            tuple(
                tuple(sum(table[i][j][m] * self.trace_matrix[k][m] for m in range(n)) for j in range(n))
                for i in range(n)
            )
            for k in range(n)
        )

    @cached_property
    def trace_matrix_inverse(self) -> linalg.FractionMatrix:
        return linalg.inverse(self.trace_matrix)

    def element(self, coords: Sequence[Scalar]) -> FieldElement:
        if len(coords) != self.degree:
            raise ValueError(f"expected {self.degree} coordinates, got {len(coords)}")
        return FieldElement(self, tuple(Fraction(c) for c in coords))

    def scalar(self, value: Scalar) -> FieldElement:
        return FieldElement(self, (Fraction(value),) + (Fraction(0),) * (self.degree - 1))

    def one(self) -> FieldElement:
        return self.scalar(1)

    def zero(self) -> FieldElement:
        return self.scalar(0)

    def basis_element(self, index: int) -> FieldElement:
        return self.element([int(k == index) for k in range(self.degree)])

    def power_coords(self, x: FieldElement) -> linalg.FractionRow:
        return linalg.vec_mat(x.coords, self.integral_basis)

    def from_power_coords(self, coords: Sequence[Scalar]) -> FieldElement:
        return FieldElement(self, linalg.vec_mat([Fraction(c) for c in coords], self._basis_inverse))

    def multiply(self, x: FieldElement, y: FieldElement) -> FieldElement:
        n = self.degree
        table = self.multiplication_table
        result = [Fraction(0)] * n
        for i, a in enumerate(x.coords):
            if not a:
                continue
            for j, b in enumerate(y.coords):
                if not b:
                    continue
                ab = a * b
                for k, t in enumerate(table[i][j]):
                    if t:
                        result[k] += ab * t
        return FieldElement(self, tuple(result))

    def multiplication_matrix(self, x: FieldElement) -> linalg.FractionMatrix:
        """Column j holds the coordinates of x * omega_j."""
        n = self.degree
        table = self.multiplication_table
        return tuple(
            tuple(sum((x.coords[i] * table[i][j][k] for i in range(n)), Fraction(0)) for j in range(n))
            for k in range(n)
        )

    def trace(self, x: FieldElement) -> Fraction:
        return sum((c * t for c, t in zip(x.coords, self.basis_traces)), Fraction(0))

    def norm(self, x: FieldElement) -> Fraction:
        return linalg.det(self.multiplication_matrix(x))

    def trace_pairing(self, x: Sequence[Scalar], y: Sequence[Scalar]) -> Fraction:
        """Tr(x * y) for coordinate vectors x, y."""
        return linalg.dot(x, linalg.mat_vec(self.trace_matrix, y))

    def charpoly(self, x: FieldElement) -> Poly:
        return Poly(linalg.to_matrix(self.multiplication_matrix(x)).charpoly(X).as_expr(), X)

    def root_interval(self, index: int, bits: int) -> Interval:
        low, high = self.root_intervals[index]
        return _refine_root(self.min_poly, low, high, bits)

    def embedding_intervals(self, x: FieldElement, bits: Optional[int] = None) -> tuple[Interval, ...]:
        """Certified rational enclosures of sigma_1(x), ..., sigma_n(x)."""
        bits = self.precision_bits if bits is None else bits
        coefficients = self.power_coords(x)
        return tuple(_interval_horner(coefficients, self.root_interval(i, bits)) for i in range(self.degree))

    def embeddings(self, x: FieldElement, bits: Optional[int] = None) -> tuple[mpf, ...]:
        bits = self.precision_bits if bits is None else bits
        with mp.workprec(bits):
            return tuple((to_mpf(low) + to_mpf(high)) / 2 for low, high in self.embedding_intervals(x, bits))

    def _signs_at(self, x: FieldElement, bits: int) -> tuple[int, ...]:
        signs = []
        for low, high in self.embedding_intervals(x, bits):
            if low > 0:
                signs.append(1)
            elif high < 0:
                signs.append(-1)
            else:
                raise IndeterminateSignError(f"embedding enclosure [{float(low)}, {float(high)}] contains 0")
        return tuple(signs)

    def embedding_signs(self, x: FieldElement) -> tuple[int, ...]:
        """Signs of the embeddings, doubling precision on indeterminate enclosures up to the cap."""
        if x.is_zero():
            raise ZeroElementError("the zero element has no embedding signs")
        attempts = max(1, (self.max_precision_bits // self.precision_bits).bit_length())
        try:
            for attempt in Retrying(
                stop=stop_after_attempt(attempts),
                retry=retry_if_exception_type(IndeterminateSignError),
                after=lambda state: logger.debug(f"escalating precision after attempt {state.attempt_number}"),
                reraise=True,
            ):
                with attempt:
                    return self._signs_at(x, self.precision_bits << (attempt.retry_state.attempt_number - 1))
        except IndeterminateSignError as err:
            raise PrecisionExhaustedError(f"embedding signs undecided at {self.max_precision_bits} bits") from err
        raise PrecisionExhaustedError("embedding signs undecided")

    def coordinate_height(self, x: FieldElement) -> int:
        """Bit size of the largest numerator or denominator among the coordinates of x."""
        return max((max(abs(c.numerator).bit_length(), c.denominator.bit_length()) for c in x.coords), default=0)

    def _logs_at(self, x: FieldElement, working: int, target: int) -> tuple[mpf, ...]:
        tolerance = Fraction(1, 1 << target)
        logs = []
        with mp.workprec(working):
            for low, high in self.embedding_intervals(x, working):
                if low <= 0 <= high:
                    raise IndeterminateSignError(f"embedding enclosure at {working} bits contains 0")
                if high - low > tolerance * min(abs(low), abs(high)):
                    raise EnclosureTooWideError(f"embedding enclosure at {working} bits is too wide")
                logs.append(mp.log(abs(to_mpf(low) + to_mpf(high)) / 2))
        return tuple(logs)

    def log_abs_embeddings(self, x: FieldElement, bits: Optional[int] = None) -> tuple[mpf, ...]:
        """log|sigma_i(x)| to ``bits`` relative bits.

        Elements with large coordinates have conjugates far below 1, so the starting precision grows with twice the
        coordinate height and is then doubled on demand like the sign computation.
        """
        if x.is_zero():
            raise ZeroElementError("log|sigma(0)| is undefined")
        target = self.precision_bits if bits is None else bits
        start = target + 2 * self.coordinate_height(x) + 16 * self.degree
        start = -(-start // PRECISION_GRAIN) * PRECISION_GRAIN
        attempts = max(1, (max(self.max_precision_bits, start) // start).bit_length())
        undecided = (IndeterminateSignError, EnclosureTooWideError)
        try:
            for attempt in Retrying(
                stop=stop_after_attempt(attempts),
                retry=retry_if_exception_type(undecided),
                after=lambda state: logger.debug(f"escalating log precision after attempt {state.attempt_number}"),
                reraise=True,
            ):
                with attempt:
                    return self._logs_at(x, start << (attempt.retry_state.attempt_number - 1), target)
        except undecided as err:
            raise PrecisionExhaustedError(f"log embeddings undecided beyond {start} bits") from err
        raise PrecisionExhaustedError("log embeddings undecided")

    def is_totally_positive(self, a: FieldElement) -> bool:
        if a.is_zero():
            raise ZeroElementError("zero is neither positive nor negative")
        try:
            return all(s > 0 for s in self.embedding_signs(a))
        except PrecisionExhaustedError:
            logger.info("interval signs exhausted; deciding total positivity with Sturm sequences")
            squarefree = self.charpoly(a).sqf_part()
            return squarefree.count_roots(0, None) == squarefree.degree()

    def describe(self) -> str:
        return str(self._poly.as_expr())

    def __repr__(self) -> str:
        return f"NumberField({self.describe()}, disc={self.discriminant})"


def _quadratic_basis(min_poly: Sequence[int]) -> tuple[tuple[Fraction, ...], ...]:
    c0, c1 = min_poly[0], min_poly[1]
    d0, f = squarefree_part(c1 * c1 - 4 * c0)
    # sqrt(d0) = (2*theta + c1) / f
    sqrt_d0 = (Fraction(c1, f), Fraction(2, f))
    if d0 % 4 == 1:
        return (Fraction(1), Fraction(0)), ((1 + sqrt_d0[0]) / 2, sqrt_d0[1] / 2)
    return (Fraction(1), Fraction(0)), sqrt_d0


def make_field(
    min_poly: Sequence[int],
    integral_basis: Optional[Sequence[Sequence[Scalar]]] = None,
    precision_bits: int = DEFAULT_PRECISION_BITS,
    max_precision_bits: int = MAX_PRECISION_BITS,
) -> NumberField:
    """Validate the polynomial and basis, synthesising the maximal order basis for quadratic fields."""
    if len(min_poly) < 2:
        raise InvalidPolynomialError("polynomial must have degree at least 1")
    if any(int(c) != c for c in min_poly):
        raise InvalidPolynomialError("polynomial coefficients must be integers")
    if min_poly[-1] != 1:
        raise InvalidPolynomialError("polynomial must be monic")
    n = len(min_poly) - 1
    poly = Poly(list(reversed([int(c) for c in min_poly])), X)
    if not poly.is_irreducible:
        raise ReduciblePolynomialError(f"{poly.as_expr()} is reducible over Q")
    if poly.count_roots() != n:
        raise NotTotallyRealError(f"{poly.as_expr()} has non-real roots")
    order_only = False
    if integral_basis is None:
        if n == 2:
            integral_basis = _quadratic_basis(min_poly)
        else:
            integral_basis = tuple(tuple(Fraction(int(i == j)) for j in range(n)) for i in range(n))
            order_only = n >= 3
            if order_only:
                logger.warning("no integral basis supplied; discriminant is that of the equation order")
    return NumberField(min_poly, integral_basis, precision_bits, max_precision_bits, order_only)


def quadratic_field(
    d: int, precision_bits: int = DEFAULT_PRECISION_BITS, max_precision_bits: int = MAX_PRECISION_BITS
) -> NumberField:
    return make_field([-d, 0, 1], precision_bits=precision_bits, max_precision_bits=max_precision_bits)


def trace(x: FieldElement) -> Fraction:
    return x.field.trace(x)


def norm(x: FieldElement) -> Fraction:
    return x.field.norm(x)


def is_totally_positive(a: FieldElement) -> bool:
    return a.field.is_totally_positive(a)


def parse_rational(value: Union[str, int]) -> Fraction:
    return Fraction(str(value).strip())


class FieldDescription(BaseModel):
    min_poly: Annotated[list[int], Field(description="Coefficients c_0, ..., c_n of a monic polynomial")]
    integral_basis: Annotated[
        Optional[list[list[str]]], Field(default=None, description="Rows omega_i over the power basis, 'p/q'")
    ]
    fundamental_units: Annotated[
        Optional[list[list[str]]], Field(default=None, description="Units over the integral basis, 'p/q'")
    ]

    @field_validator("integral_basis", "fundamental_units", mode="before")
    @classmethod
    def _stringify(cls, value: Optional[list[list[Union[str, int]]]]) -> Optional[list[list[str]]]:
        if value is None:
            return None
        return [[str(v) for v in row] for row in value]

    @field_validator("integral_basis", "fundamental_units")
    @classmethod
    def _check_rationals(cls, value: Optional[list[list[str]]]) -> Optional[list[list[str]]]:
        for row in value or []:
            for item in row:
                parse_rational(item)
        return value


def load_field_description(
    path: Union[str, Path],
    precision_bits: int = DEFAULT_PRECISION_BITS,
    max_precision_bits: int = MAX_PRECISION_BITS,
) -> tuple[NumberField, Optional[list[FieldElement]]]:
    """Read a field description file; returns the field and the supplied units (if any)."""
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as err:
        raise FieldInputError(f"cannot read field description {path}: {err}") from err
    try:
        payload = json.loads(text)
    except json.JSONDecodeError as err:
        raise FieldInputError(f"{path}: {err.msg}", line=err.lineno, column=err.colno) from err
    try:
        description = FieldDescription.model_validate(payload)
    except (ValidationError, ValueError) as err:
        raise FieldInputError(f"{path}: {err}") from err
    basis = None
    if description.integral_basis is not None:
        basis = [[parse_rational(v) for v in row] for row in description.integral_basis]
    field = make_field(description.min_poly, basis, precision_bits, max_precision_bits)
    units = None
    if description.fundamental_units is not None:
        try:
            units = [field.element([parse_rational(v) for v in row]) for row in description.fundamental_units]
        except ValueError as err:
            raise FieldInputError(f"{path}: fundamental_units: {err}") from err
    return field, units
