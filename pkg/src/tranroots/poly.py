"""Dense univariate polynomials over exact integers and over complex doubles.

Coefficients are stored lowest power first; the zero polynomial is the empty
coefficient tuple and has degree -1.  Both polynomial types are immutable and
all operations return fresh objects, so values can be shared freely between
threads.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

FLOAT_EXACT_INT_BOUND = 2 ** 53  # integers below this convert to float exactly


class PolynomialError(Exception):
    """Base class for polynomial arithmetic errors."""


class DomainMismatchError(PolynomialError):
    """Mixing exact-integer and complex-float polynomials in one operation."""


class InvalidExponentError(PolynomialError):
    """Polynomial power with a negative exponent."""


class DegreeError(PolynomialError):
    """Operation requires degree >= 1 (got a constant or zero polynomial)."""


@dataclass(frozen=True)
class ToleranceConfig:
    """Numerical knobs shared by root finding and curve membership checks."""

    root_residual_tol: float = 1e-8
    curve_im_tol: float = 1e-6
    ab_exclusion_eps: float = 1e-9
    max_aberth_iters: int = 200

    def __post_init__(self) -> None:
        for name in ("root_residual_tol", "curve_im_tol", "ab_exclusion_eps"):
            if getattr(self, name) <= 0:
                raise ValueError(f"{name} must be strictly positive")
        if self.max_aberth_iters < 1:
            raise ValueError("max_aberth_iters must be >= 1")


DEFAULT_TOLERANCES = ToleranceConfig()


def _normalized(coeffs: Iterable) -> tuple:
    out = list(coeffs)
    while out and not out[-1]:
        out.pop()
    return tuple(out)


# ---------------------------------------------------------------------------
# Exact integer coefficient multiplication via Kronecker substitution.
#
# Packing a polynomial as its value at 2**shift turns one polynomial product
# into a single CPython big-integer multiply, which is far faster than a
# schoolbook loop once degrees reach the hundreds.  The balanced-digit unpack
# is exact provided every product coefficient is < 2**(shift-1) in magnitude.
# ---------------------------------------------------------------------------

def _pack_signed(coeffs: Sequence[int], nbytes: int) -> int:
    pos = bytearray(len(coeffs) * nbytes)
    neg = bytearray(len(coeffs) * nbytes)
    for i, c in enumerate(coeffs):
        if c >= 0:
            pos[i * nbytes:(i + 1) * nbytes] = c.to_bytes(nbytes, "little")
        else:
            neg[i * nbytes:(i + 1) * nbytes] = (-c).to_bytes(nbytes, "little")
    return int.from_bytes(pos, "little") - int.from_bytes(neg, "little")


def _unpack_balanced(value: int, nbytes: int, count: int) -> list[int]:
    # Balanced base-2**(8*nbytes) digits of |value|, then global sign flip.
    shift = 8 * nbytes
    base = 1 << shift
    half = base >> 1
    negative = value < 0
    if negative:
        value = -value
    raw = value.to_bytes(count * nbytes + nbytes, "little")
    digits: list[int] = []
    carry = 0
    for i in range(count):
        d = int.from_bytes(raw[i * nbytes:(i + 1) * nbytes], "little") + carry
        if d >= half:
            d -= base
            carry = 1
        else:
            carry = 0
        digits.append(d)
    tail = int.from_bytes(raw[count * nbytes:], "little")
    if tail != carry:
        raise AssertionError("Kronecker unpack overflow: digit bound violated")
    if negative:
        digits = [-d for d in digits]
    return digits


def _int_mul_kronecker(a: Sequence[int], b: Sequence[int]) -> list[int]:
    max_a = max(abs(c) for c in a)
    max_b = max(abs(c) for c in b)
    bound = max_a * max_b * min(len(a), len(b))
    nbytes = (bound.bit_length() + 2 + 7) // 8 + 1
    prod = _pack_signed(a, nbytes) * _pack_signed(b, nbytes)
    return _unpack_balanced(prod, nbytes, len(a) + len(b) - 1)


def _int_mul_schoolbook(a: Sequence[int], b: Sequence[int]) -> list[int]:
    out = [0] * (len(a) + len(b) - 1)
    for i, ca in enumerate(a):
        if not ca:
            continue
        for j, cb in enumerate(b):
            out[i + j] += ca * cb
    return out


class IntPoly:
    """Polynomial with arbitrary-precision integer coefficients."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable[int] = ()):
        normalized = _normalized(coeffs)
        for c in normalized:
            if not isinstance(c, int):
                raise DomainMismatchError(
                    f"IntPoly coefficients must be int, got {type(c).__name__}"
                )
        object.__setattr__(self, "coeffs", normalized)

    def __setattr__(self, name, value):  # immutable
        raise AttributeError("IntPoly is immutable")

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    def __eq__(self, other) -> bool:
        return isinstance(other, IntPoly) and self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash(("IntPoly", self.coeffs))

    def __repr__(self) -> str:
        return f"IntPoly({list(self.coeffs)!r})"

    def _check_same_domain(self, other) -> "IntPoly":
        if not isinstance(other, IntPoly):
            raise DomainMismatchError(
                "cannot combine IntPoly with " + type(other).__name__
            )
        return other

    def __add__(self, other: "IntPoly") -> "IntPoly":
        other = self._check_same_domain(other)
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] += c
        return IntPoly(out)

    def __sub__(self, other: "IntPoly") -> "IntPoly":
        other = self._check_same_domain(other)
        a, b = self.coeffs, other.coeffs
        out = list(a) + [0] * max(0, len(b) - len(a))
        for i, c in enumerate(b):
            out[i] -= c
        return IntPoly(out)

    def __neg__(self) -> "IntPoly":
        return IntPoly([-c for c in self.coeffs])

    def __mul__(self, other):
        if isinstance(other, int):
            return self.scale(other)
        other = self._check_same_domain(other)
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return IntPoly()
        if len(a) * len(b) <= 64:
            return IntPoly(_int_mul_schoolbook(a, b))
        return IntPoly(_int_mul_kronecker(a, b))

    __rmul__ = __mul__

    def scale(self, factor: int) -> "IntPoly":
        if not isinstance(factor, int):
            raise DomainMismatchError("IntPoly scale factor must be int")
        if factor == 0:
            return IntPoly()
        return IntPoly([c * factor for c in self.coeffs])

    def __pow__(self, exponent: int) -> "IntPoly":
        if not isinstance(exponent, int) or exponent < 0:
            raise InvalidExponentError("exponent must be a nonnegative integer")
        result = IntPoly([1])
        base = self
        e = exponent
        while e:
            if e & 1:
                result = result * base
            base = base * base if e > 1 else base
            e >>= 1
        return result

    def eval(self, x):
        """Horner evaluation; exact for int or Fraction arguments."""
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def derivative(self) -> "IntPoly":
        return IntPoly([i * c for i, c in enumerate(self.coeffs)][1:])

    def max_abs_coeff(self) -> int:
        return max((abs(c) for c in self.coeffs), default=0)

    def to_complex(self) -> tuple["ComplexPoly", float]:
        """Round to a ComplexPoly; also return the max relative rounding error.

        The error is 0.0 whenever every coefficient magnitude is below 2**53.
        """
        max_rel = 0.0
        out = []
        for c in self.coeffs:
            f = float(c)
            out.append(complex(f))
            if abs(c) >= FLOAT_EXACT_INT_BOUND:
                err = abs(Fraction(f) - c) / abs(c)
                max_rel = max(max_rel, float(err))
        return ComplexPoly(out), max_rel


class ComplexPoly:
    """Polynomial with complex double-precision coefficients."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable[complex] = ()):
        converted = []
        for c in coeffs:
            if isinstance(c, (int, float, complex)):
                converted.append(complex(c))
            else:
                raise DomainMismatchError(
                    f"ComplexPoly coefficients must be numeric, got {type(c).__name__}"
                )
        object.__setattr__(self, "coeffs", _normalized(converted))

    def __setattr__(self, name, value):  # immutable
        raise AttributeError("ComplexPoly is immutable")

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    def __eq__(self, other) -> bool:
        return isinstance(other, ComplexPoly) and self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash(("ComplexPoly", self.coeffs))

    def __repr__(self) -> str:
        return f"ComplexPoly({list(self.coeffs)!r})"

    def _check_same_domain(self, other) -> "ComplexPoly":
        if not isinstance(other, ComplexPoly):
            raise DomainMismatchError(
                "cannot combine ComplexPoly with " + type(other).__name__
            )
        return other

    def __add__(self, other: "ComplexPoly") -> "ComplexPoly":
        other = self._check_same_domain(other)
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] += c
        return ComplexPoly(out)

    def __sub__(self, other: "ComplexPoly") -> "ComplexPoly":
        other = self._check_same_domain(other)
        a, b = self.coeffs, other.coeffs
        out = list(a) + [0j] * max(0, len(b) - len(a))
        for i, c in enumerate(b):
            out[i] -= c
        return ComplexPoly(out)

    def __neg__(self) -> "ComplexPoly":
        return ComplexPoly([-c for c in self.coeffs])

    def __mul__(self, other):
        if isinstance(other, (int, float, complex)) and not isinstance(other, ComplexPoly):
            return self.scale(other)
        other = self._check_same_domain(other)
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return ComplexPoly()
        out = [0j] * (len(a) + len(b) - 1)
        for i, ca in enumerate(a):
            for j, cb in enumerate(b):
                out[i + j] += ca * cb
        return ComplexPoly(out)

    __rmul__ = __mul__

    def scale(self, factor) -> "ComplexPoly":
        factor = complex(factor)
        if factor == 0:
            return ComplexPoly()
        return ComplexPoly([c * factor for c in self.coeffs])

    def __pow__(self, exponent: int) -> "ComplexPoly":
        if not isinstance(exponent, int) or exponent < 0:
            raise InvalidExponentError("exponent must be a nonnegative integer")
        result = ComplexPoly([1])
        base = self
        e = exponent
        while e:
            if e & 1:
                result = result * base
            base = base * base if e > 1 else base
            e >>= 1
        return result

    def eval(self, z: complex) -> complex:
        acc = 0j
        for c in reversed(self.coeffs):
            acc = acc * z + c
        return acc

    def derivative(self) -> "ComplexPoly":
        return ComplexPoly([i * c for i, c in enumerate(self.coeffs)][1:])

    def max_abs_coeff(self) -> float:
        return max((abs(c) for c in self.coeffs), default=0.0)


def as_complex_poly(p: IntPoly | ComplexPoly) -> ComplexPoly:
    """Coerce either domain to ComplexPoly, discarding the rounding report."""
    if isinstance(p, ComplexPoly):
        return p
    return p.to_complex()[0]


def cauchy_root_bound(p: IntPoly | ComplexPoly) -> float:
    """Upper bound 1 + max|c_i|/|c_deg| on the magnitude of every root.

    Raises DegreeError for constant or zero polynomials.
    """
    if p.degree < 1:
        raise DegreeError("cauchy_root_bound requires degree >= 1")
    lead = abs(p.coeffs[-1])
    rest = max(abs(c) for c in p.coeffs[:-1])
    if not rest:
        return 1.0
    if isinstance(p, IntPoly):
        # Fraction division avoids float overflow for huge coefficients.
        try:
            return 1.0 + float(Fraction(rest, lead))
        except OverflowError:
            return math.inf
    return 1.0 + float(rest) / float(lead)
