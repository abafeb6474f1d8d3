"""
Exact arithmetic in the Galois field GF(p^m).

Elements are integers in [0, q) whose base-p digits are polynomial-basis coordinates.
The `*_values` kernels work on raw integers and are what the linear algebra and the
simulator call in their inner loops; the element-level functions wrap them with field checks.
"""

from functools import lru_cache
from itertools import product
from typing import Iterator, Sequence

from .constant import BUILTIN_POLYNOMIALS, MAX_FIELD_ORDER
from .exceptions import (
    DivisionByZero,
    FieldError,
    FieldMismatch,
    NoBuiltinPolynomial,
    NonPrimeCharacteristic,
    ReduciblePolynomial,
)
from .types import FieldElement, FieldParams


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    i = 3
    while i * i <= n:
        if n % i == 0:
            return False
        i += 2
    return True


# Polynomials over F_p are lists of coefficients, constant term first.


def _poly_trim(a: list[int]) -> list[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def _poly_sub(a: list[int], b: list[int], p: int) -> list[int]:
    size = max(len(a), len(b))
    out = [
        ((a[i] if i < len(a) else 0) - (b[i] if i < len(b) else 0)) % p
        for i in range(size)
    ]
    return _poly_trim(out)


def _poly_mul(a: list[int], b: list[int], p: int) -> list[int]:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai == 0:
            continue
        for j, bj in enumerate(b):
            out[i + j] = (out[i + j] + ai * bj) % p
    return _poly_trim(out)


def _poly_divmod(a: list[int], b: list[int], p: int) -> tuple[list[int], list[int]]:
    """Quotient and remainder of a / b over F_p; b must be nonzero."""
    rem = _poly_trim(list(a))
    b = _poly_trim(list(b))
    lead_inv = pow(b[-1], p - 2, p)
    quot = [0] * max(len(rem) - len(b) + 1, 0)
    while len(rem) >= len(b):
        shift = len(rem) - len(b)
        coeff = rem[-1] * lead_inv % p
        quot[shift] = coeff
        for i, bi in enumerate(b):
            rem[shift + i] = (rem[shift + i] - coeff * bi) % p
        _poly_trim(rem)
    return _poly_trim(quot), rem


def is_irreducible(coeffs: Sequence[int], p: int) -> bool:
    """
    Check irreducibility of a monic polynomial over F_p by trial division.

    Every monic polynomial of degree 1..deg/2 is tried as a divisor, which is
    feasible for the small extension degrees this package targets.

    Parameters
    ----------
    coeffs: `Sequence[int]`
        Coefficients, constant term first
    p: `int`
        Prime characteristic

    Returns
    -------
    `bool`
        True if the polynomial has no factor of positive degree below its own
    """
    f = _poly_trim([c % p for c in coeffs])
    degree = len(f) - 1
    if degree < 1:
        return False
    for d in range(1, degree // 2 + 1):
        for low in product(range(p), repeat=d):
            divisor = list(low) + [1]
            _, rem = _poly_divmod(f, divisor, p)
            if not rem:
                return False
    return True


def check_field_params(p: int, m: int, poly: Sequence[int]) -> None:
    """
    Validate field parameters, raising the matching `FieldError` subclass.
    """
    if not is_prime(p):
        raise NonPrimeCharacteristic(f"Characteristic must be prime, got p={p}.")
    if m < 1:
        raise FieldError(f"Extension degree must be at least 1, got m={m}.")
    if p**m > MAX_FIELD_ORDER:
        raise FieldError(
            f"Field order {p}^{m} exceeds the supported ceiling {MAX_FIELD_ORDER}."
        )
    if len(poly) != m + 1 or poly[-1] != 1:
        raise ReduciblePolynomial(
            f"Modulus must be monic of degree {m} ({m + 1} coefficients, constant first), got {list(poly)}."
        )
    if any(not 0 <= c < p for c in poly):
        raise ReduciblePolynomial(
            f"Modulus coefficients must lie in [0, {p}), got {list(poly)}."
        )
    if not is_irreducible(poly, p):
        raise ReduciblePolynomial(f"Polynomial {list(poly)} is reducible over F_{p}.")


def field_new(
    p: int, m: int = 1, irreducible_poly: Sequence[int] | None = None
) -> FieldParams:
    """
    Build validated parameters for GF(p^m).

    Parameters
    ----------
    p: `int`
        Prime characteristic
    m: `int`, optional
        Extension degree, defaults to 1 (prime field)
    irreducible_poly: `Sequence[int]`, optional
        Modulus coefficients, constant term first. If absent, the built-in table is used

    Returns
    -------
    `FieldParams`
        Immutable field parameters

    Raises
    ------
    `NonPrimeCharacteristic`
        If `p` is not prime
    `ReduciblePolynomial`
        If the modulus is not monic of degree `m` or factors over F_p
    `NoBuiltinPolynomial`
        If `irreducible_poly` is absent and (p, m) is not in the built-in table
    """
    if not is_prime(p):
        raise NonPrimeCharacteristic(f"Characteristic must be prime, got p={p}.")
    if m < 1:
        raise FieldError(f"Extension degree must be at least 1, got m={m}.")
    if irreducible_poly is None:
        if (p, m) not in BUILTIN_POLYNOMIALS:
            raise NoBuiltinPolynomial(
                f"No built-in irreducible polynomial for GF({p}^{m}); pass one explicitly. "
                f"Built-in: {sorted(BUILTIN_POLYNOMIALS)}"
            )
        irreducible_poly = BUILTIN_POLYNOMIALS[(p, m)]
    return FieldParams(p=p, m=m, irreducible_poly=tuple(irreducible_poly))


def elements(params: FieldParams) -> Iterator[FieldElement]:
    return params.elements()


# ---- Raw integer kernels ------------------------------------------------


def to_digits(params: FieldParams, value: int) -> list[int]:
    """Polynomial-basis coordinates of `value`, coefficient of alpha^0 first."""
    digits = []
    for _ in range(params.m):
        value, digit = divmod(value, params.p)
        digits.append(digit)
    return digits


def from_digits(params: FieldParams, digits: Sequence[int]) -> int:
    value = 0
    for digit in reversed(digits):
        value = value * params.p + digit % params.p
    return value


def add_values(params: FieldParams, a: int, b: int) -> int:
    if params.m == 1:
        return (a + b) % params.p
    if params.p == 2:
        return a ^ b
    da, db = to_digits(params, a), to_digits(params, b)
    return from_digits(params, [x + y for x, y in zip(da, db)])


def neg_values(params: FieldParams, a: int) -> int:
    if params.m == 1:
        return -a % params.p
    if params.p == 2:
        return a
    return from_digits(params, [-x for x in to_digits(params, a)])


def sub_values(params: FieldParams, a: int, b: int) -> int:
    return add_values(params, a, neg_values(params, b))


@lru_cache(maxsize=1 << 16)
def mul_values(params: FieldParams, a: int, b: int) -> int:
    """Product of two raw elements: polynomial product reduced modulo the field polynomial."""
    if a == 0 or b == 0:
        return 0
    if params.m == 1:
        return a * b % params.p
    prod = _poly_mul(
        _poly_trim(to_digits(params, a)), _poly_trim(to_digits(params, b)), params.p
    )
    _, rem = _poly_divmod(prod, list(params.irreducible_poly), params.p)
    return from_digits(params, rem)


def power_values(params: FieldParams, a: int, exponent: int) -> int:
    if exponent < 0:
        return power_values(params, inv_values(params, a), -exponent)
    result, base = 1, a
    while exponent:
        if exponent & 1:
            result = mul_values(params, result, base)
        base = mul_values(params, base, base)
        exponent >>= 1
    return result


def inv_values(params: FieldParams, a: int) -> int:
    """Inverse by the extended Euclidean algorithm on polynomials over F_p."""
    if a == 0:
        raise DivisionByZero(f"Zero has no multiplicative inverse in {params}.")
    p = params.p
    if params.m == 1:
        return pow(a, p - 2, p)
    r0, r1 = list(params.irreducible_poly), _poly_trim(to_digits(params, a))
    s0, s1 = [], [1]
    while r1:
        quot, rem = _poly_divmod(r0, r1, p)
        r0, r1 = r1, rem
        s0, s1 = s1, _poly_sub(s0, _poly_mul(quot, s1, p), p)
    # r0 is a nonzero constant since the modulus is irreducible
    scale = pow(r0[0], p - 2, p)
    inverse = [c * scale % p for c in s0]
    _, inverse = _poly_divmod(inverse, list(params.irreducible_poly), p)
    return from_digits(params, inverse)


def inv_values_by_power(params: FieldParams, a: int) -> int:
    """Inverse as a^(q-2)."""
    if a == 0:
        raise DivisionByZero(f"Zero has no multiplicative inverse in {params}.")
    return power_values(params, a, params.q - 2)


@lru_cache(maxsize=1 << 16)
def trace_value(params: FieldParams, x: int) -> int:
    """
    Field trace tr(x) = x + x^p + ... + x^(p^(m-1)), returned as an integer mod p.
    """
    if params.m == 1:
        return x
    total, frob = 0, x
    for _ in range(params.m):
        total = add_values(params, total, frob)
        frob = power_values(params, frob, params.p)
    # the trace lies in the prime subfield
    assert total < params.p, f"trace of {x} left the prime subfield: {total}"
    return total


# ---- Element-level operations ------------------------------------------


def _same_field(a: FieldElement, b: FieldElement) -> FieldParams:
    if a.params != b.params:
        raise FieldMismatch(f"Cannot combine elements of {a.params} and {b.params}.")
    return a.params


def add(a: FieldElement, b: FieldElement) -> FieldElement:
    params = _same_field(a, b)
    return params.element(add_values(params, a.value, b.value))


def sub(a: FieldElement, b: FieldElement) -> FieldElement:
    params = _same_field(a, b)
    return params.element(sub_values(params, a.value, b.value))


def neg(a: FieldElement) -> FieldElement:
    return a.params.element(neg_values(a.params, a.value))


def mul(a: FieldElement, b: FieldElement) -> FieldElement:
    params = _same_field(a, b)
    return params.element(mul_values(params, a.value, b.value))


def inv(a: FieldElement) -> FieldElement:
    return a.params.element(inv_values(a.params, a.value))


def inv_by_power(a: FieldElement) -> FieldElement:
    return a.params.element(inv_values_by_power(a.params, a.value))


def div(a: FieldElement, b: FieldElement) -> FieldElement:
    params = _same_field(a, b)
    return params.element(mul_values(params, a.value, inv_values(params, b.value)))


def power(a: FieldElement, exponent: int) -> FieldElement:
    return a.params.element(power_values(a.params, a.value, exponent))


def trace(x: FieldElement) -> int:
    """
    Trace of `x` onto the prime subfield.

    Parameters
    ----------
    x: `FieldElement`
        Element of GF(p^m)

    Returns
    -------
    `int`
        tr(x) as an integer in [0, p)
    """
    return trace_value(x.params, x.value)
