"""Lattice-path generating polynomials and certified negative-rootedness.

For coprime (ell, k) and the lattice solutions (i_u, j_u) of i*ell + j*k = n
in increasing-i order, the generating polynomial has coefficient
C(i_u + j_u, i_u) on tau^(u-1): it counts north/east lattice paths from the
origin to each solution point.  These polynomials are expected to have only
negative real roots; this module certifies that claim numerically but
exactly, by integer sign evaluations at rational points.

Certification strategy: floating Aberth roots first propose separating
points; exact integer sign evaluation at those dyadic rationals then proves
degree-many sign changes in (-bound, 0), which pins every root as simple,
real and negative.  When the sign table fails (clustered or multiple roots)
an exact Sturm-sequence count over the rationals takes over, including a
square-free decomposition so multiplicities are counted honestly.
"""
from __future__ import annotations

import math
import warnings
from dataclasses import dataclass
from fractions import Fraction

from .poly import ComplexPoly, DegreeError, IntPoly, ToleranceConfig
from .recurrence import LatticeSolutionSet, lattice_solutions
from .rootfind import find_roots

# Exact isolation is abandoned above these sizes (floating fallback with
# certified=False); chosen to keep every n <= 200, k <= 7 case exact.
MAX_EXACT_DEGREE = 120
MAX_EXACT_COEFF_BITS = 4096

DEFAULT_ROOT_TOL = 1e-10


@dataclass(frozen=True)
class LatticePathPoly:
    """Generating polynomial in tau for one (ell, k, n) lattice."""

    ell: int
    k: int
    n: int
    coeffs: IntPoly
    lattice: LatticeSolutionSet

    @property
    def degree(self) -> int:
        return self.coeffs.degree


def lattice_path_poly(ell: int, k: int, n: int) -> LatticePathPoly:
    """Build the path-counting polynomial; zero polynomial for an empty lattice."""
    lattice = lattice_solutions(ell, k, n)
    coeffs = IntPoly([math.comb(i + j, i) for i, j in lattice])
    return LatticePathPoly(ell, k, n, coeffs, lattice)


def _dyadic_value(coeffs: tuple[int, ...], num: int, exp2: int) -> int:
    """Integer V with p(num / 2**exp2) = V / 2**(exp2 * degree)."""
    acc = coeffs[-1]
    shift = 0
    for c in coeffs[-2::-1]:
        shift += exp2
        acc = acc * num + (c << shift)
    return acc


def _sign_at_float(coeffs: tuple[int, ...], x: float) -> int:
    num, den = x.as_integer_ratio()
    acc = _dyadic_value(coeffs, num, den.bit_length() - 1)
    return (acc > 0) - (acc < 0)


def _float_ratio(a: int, b: int) -> float:
    """a / b as a double, safe for arbitrarily large integers."""
    if a == 0:
        return 0.0
    shift = 64 + max(0, b.bit_length() - a.bit_length())
    return math.ldexp(float((a << shift) // b), -shift)


def _integer_lower_bound(coeffs: tuple[int, ...]) -> int:
    """Integer L < 0 with every root magnitude strictly below |L|."""
    lead = abs(coeffs[-1])
    rest = max(abs(c) for c in coeffs[:-1])
    return -(2 + rest // lead)


def _refine_root(coeffs: tuple[int, ...], dcoeffs: tuple[int, ...], approx: float,
                 lo: float, hi: float, tol: float) -> float:
    """One simple root inside (lo, hi), to relative half-width tol/2.

    Newton steps use exact integer evaluation of p and p' at dyadic points,
    so the floating start point may be far off (the double-rounded
    coefficients shift ill-conditioned roots); an exact sign bracket verifies
    the result and a sign bisection covers the rare misses.
    """
    x = min(max(approx, lo), hi)
    for _ in range(10):
        num, den = x.as_integer_ratio()
        exp2 = den.bit_length() - 1
        g = _dyadic_value(coeffs, num, exp2)
        if g == 0:
            return x
        gp = _dyadic_value(dcoeffs, num, exp2)
        if gp == 0:
            break
        # p/p' = (g / gp) * 2**-exp2 given the per-degree scaling of both
        step = _float_ratio(g, gp) * math.ldexp(1.0, -exp2)
        x_new = x - step
        if not (lo < x_new < hi) or x_new == x:
            break
        x = x_new
        if abs(step) <= 0.25 * tol * abs(x):
            break
    delta = max(0.5 * tol * abs(x), 5e-324)
    left, right = x - delta, x + delta
    if lo < left and right < hi:
        s_left = _sign_at_float(coeffs, left)
        s_right = _sign_at_float(coeffs, right)
        if s_left and s_right and s_left != s_right:
            return x
        if s_left == 0:
            return left
        if s_right == 0:
            return right
    # exact bisection of the isolation interval
    s_lo = _sign_at_float(coeffs, lo)
    for _ in range(300):
        mid = 0.5 * (lo + hi)
        if mid <= lo or mid >= hi:
            return mid
        if hi - lo <= tol * max(abs(mid), 5e-324):
            return mid
        s_mid = _sign_at_float(coeffs, mid)
        if s_mid == 0:
            return mid
        if s_mid == s_lo:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


def _float_root_estimates(coeffs: tuple[int, ...], cfg: ToleranceConfig) -> list[float]:
    approx, _ = IntPoly(coeffs).to_complex()
    rs = find_roots(approx, cfg)
    return sorted(v.real for v in rs.values_with_multiplicity())


def _certify_by_sign_table(coeffs: tuple[int, ...], estimates: list[float],
                           tol: float) -> list[float] | None:
    """Prove deg-many simple negative roots via exact alternating signs.

    Returns refined roots on success, None when the table does not alternate
    (close or multiple roots); the caller then falls back to Sturm counting.
    """
    d = len(coeffs) - 1
    if len(estimates) != d or any(r >= 0 for r in estimates):
        return None
    lower = float(_integer_lower_bound(coeffs))
    points = [lower]
    for r0, r1 in zip(estimates, estimates[1:]):
        points.append(0.5 * (r0 + r1))
    points.append(0.0)
    if any(q <= p for p, q in zip(points, points[1:])):
        return None
    signs = [_sign_at_float(coeffs, x) for x in points]
    if any(s == 0 for s in signs):
        return None
    if any(s0 == s1 for s0, s1 in zip(signs, signs[1:])):
        return None
    dcoeffs = tuple(i * c for i, c in enumerate(coeffs))[1:]
    return [
        _refine_root(coeffs, dcoeffs, estimates[i], points[i], points[i + 1], tol)
        for i in range(d)
    ]


# ---------------------------------------------------------------------------
# Exact Sturm machinery over Fraction (fallback path)
# ---------------------------------------------------------------------------

def _frac_normalize(p: list[Fraction]) -> list[Fraction]:
    while p and p[-1] == 0:
        p.pop()
    return p


def _frac_derivative(p: list[Fraction]) -> list[Fraction]:
    return [i * c for i, c in enumerate(p)][1:]


def _frac_rem(num: list[Fraction], den: list[Fraction]) -> list[Fraction]:
    num = list(num)
    dd = len(den) - 1
    lead = den[-1]
    while len(num) - 1 >= dd and num:
        factor = num[-1] / lead
        offset = len(num) - 1 - dd
        for i, c in enumerate(den):
            num[offset + i] -= factor * c
        num.pop()
        _frac_normalize(num)
    return num


def _sturm_chain(p: list[Fraction]) -> list[list[Fraction]]:
    chain = [list(p), _frac_derivative(p)]
    while chain[-1]:
        rem = _frac_rem(chain[-2], chain[-1])
        if not rem:
            break
        chain.append([-c for c in rem])
    return [q for q in chain if q]


def _eval_frac(p: list[Fraction], x: Fraction) -> Fraction:
    acc = Fraction(0)
    for c in reversed(p):
        acc = acc * x + c
    return acc


def _sign_variations(chain: list[list[Fraction]], x: Fraction) -> int:
    signs = []
    for q in chain:
        v = _eval_frac(q, x)
        if v:
            signs.append(1 if v > 0 else -1)
    return sum(1 for a, b in zip(signs, signs[1:]) if a != b)


def _count_distinct_roots(chain, lo: Fraction, hi: Fraction) -> int:
    return _sign_variations(chain, lo) - _sign_variations(chain, hi)


def _frac_gcd(p: list[Fraction], q: list[Fraction]) -> list[Fraction]:
    p, q = list(p), list(q)
    while q:
        p, q = q, _frac_rem(p, q)
    if p:
        lead = p[-1]
        p = [c / lead for c in p]
    return p


def _frac_divexact(p: list[Fraction], q: list[Fraction]) -> list[Fraction]:
    out: list[Fraction] = []
    rem = list(p)
    dd = len(q) - 1
    lead = q[-1]
    while rem and len(rem) - 1 >= dd:
        factor = rem[-1] / lead
        offset = len(rem) - 1 - dd
        out.append(factor)
        for i, c in enumerate(q):
            rem[offset + i] -= factor * c
        rem.pop()
        _frac_normalize(rem)
    out.reverse()
    return out


def _squarefree_factors(coeffs: tuple[int, ...]) -> list[tuple[list[Fraction], int]]:
    """Yun decomposition: list of (square-free factor, multiplicity)."""
    p = [Fraction(c) for c in coeffs]
    dp = _frac_derivative(p)
    a = _frac_gcd(p, dp)
    if len(a) <= 1:
        return [(p, 1)]
    b = _frac_divexact(p, a)
    c = _frac_divexact(dp, a)
    d = [x - y for x, y in
         zip(c + [Fraction(0)] * len(b), _frac_derivative(b) + [Fraction(0)] * len(c))]
    d = _frac_normalize(d)
    factors = []
    mult = 1
    while len(b) > 1:
        g = _frac_gcd(b, d)
        if len(g) > 1:
            factors.append((g, mult))
        b_next = _frac_divexact(b, g)
        c_next = _frac_divexact(d, g)
        d = _frac_normalize([x - y for x, y in
                             zip(c_next + [Fraction(0)] * len(b_next),
                                 _frac_derivative(b_next) + [Fraction(0)] * len(c_next))])
        b = b_next
        mult += 1
    return factors


def _isolate_in_interval(chain, lo: Fraction, hi: Fraction, count: int
                         ) -> list[tuple[Fraction, Fraction]]:
    if count == 0:
        return []
    if count == 1:
        return [(lo, hi)]
    mid = (lo + hi) / 2
    left = _count_distinct_roots(chain, lo, mid)
    return (_isolate_in_interval(chain, lo, mid, left)
            + _isolate_in_interval(chain, mid, hi, count - left))


def _sturm_certify(coeffs: tuple[int, ...], tol: float) -> tuple[list[float], bool]:
    d = len(coeffs) - 1
    lower = Fraction(_integer_lower_bound(coeffs))
    factors = _squarefree_factors(coeffs)
    total_with_multiplicity = 0
    roots: list[float] = []
    for factor, mult in factors:
        chain = _sturm_chain(factor)
        count = _count_distinct_roots(chain, lower, Fraction(0))
        total_with_multiplicity += mult * count
        int_coeffs = _fraction_poly_to_int(factor)
        for lo, hi in _isolate_in_interval(chain, lower, Fraction(0), count):
            value = _bisect_fraction_interval(int_coeffs, lo, hi, tol)
            roots.extend([value] * mult)
    certified = total_with_multiplicity == d
    roots.sort()
    return roots, certified


def _fraction_poly_to_int(p: list[Fraction]) -> tuple[int, ...]:
    denom = math.lcm(*(c.denominator for c in p))
    return tuple(int(c * denom) for c in p)


def _bisect_fraction_interval(coeffs: tuple[int, ...], lo: Fraction, hi: Fraction,
                              tol: float) -> float:
    s_lo = _sign_at_fraction(coeffs, lo)
    for _ in range(300):
        mid = (lo + hi) / 2
        if float(hi - lo) <= tol * max(abs(float(mid)), 5e-324):
            return float(mid)
        s_mid = _sign_at_fraction(coeffs, mid)
        if s_mid == 0:
            return float(mid)
        if s_mid == s_lo:
            lo = mid
        else:
            hi = mid
    return float((lo + hi) / 2)


def _sign_at_fraction(coeffs: tuple[int, ...], x: Fraction) -> int:
    num, den = x.numerator, x.denominator
    acc = coeffs[-1]
    dpow = 1
    for c in coeffs[-2::-1]:
        dpow *= den
        acc = acc * num + c * dpow
    return (acc > 0) - (acc < 0)


def real_negative_roots(g: LatticePathPoly | IntPoly, tol: float = DEFAULT_ROOT_TOL,
                        cfg: ToleranceConfig | None = None) -> tuple[list[float], bool]:
    """All real roots on (-inf, 0), plus an all-roots-negative certificate.

    certified=True means the count of exactly isolated negative roots (with
    multiplicity) equals the degree.  Beyond MAX_EXACT_DEGREE or
    MAX_EXACT_COEFF_BITS the exact stage is skipped and certified is False.
    Raises DegreeError for constant or zero polynomials.
    """
    poly = g.coeffs if isinstance(g, LatticePathPoly) else g
    if poly.degree < 1:
        raise DegreeError("real_negative_roots requires degree >= 1")
    cfg = cfg or ToleranceConfig()
    coeffs = poly.coeffs

    if poly.degree > MAX_EXACT_DEGREE or poly.max_abs_coeff().bit_length() > MAX_EXACT_COEFF_BITS:
        warnings.warn(
            "polynomial too large for exact isolation; returning floating "
            "roots with certified=False",
            stacklevel=2,
        )
        rs = find_roots(IntPoly(coeffs).to_complex()[0], cfg)
        return sorted(
            v.real for v in rs.values_with_multiplicity()
            if v.real < 0 and abs(v.imag) <= 1e-8 * max(1.0, abs(v))
        ), False

    if coeffs[0] == 0:
        # a root at the origin can never certify "only negative roots"
        deflated = list(coeffs)
        while deflated and deflated[0] == 0:
            deflated.pop(0)
        roots = ([] if len(deflated) <= 1
                 else real_negative_roots(IntPoly(deflated), tol, cfg)[0])
        return roots, False

    estimates = _float_root_estimates(coeffs, cfg)
    refined = _certify_by_sign_table(coeffs, estimates, tol)
    if refined is not None:
        return refined, True
    return _sturm_certify(coeffs, tol)
