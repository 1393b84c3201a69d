"""Three-term polynomial recurrences P_n = -B*P_{n-ell} - A*P_{n-k}.

Sequences start from P_0 = 1 with the k-1 preceding terms identically zero.
Two independent generation routes are provided: plain iteration of the
recurrence, and the lattice closed form

    P_n = sum over {i,j >= 0 : i*ell + j*k = n} of (-1)^(i+j) C(i+j,i) A^j B^i,

which sums one exact big-integer term per lattice solution.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import islice
from typing import Iterator

from .poly import (
    ComplexPoly,
    DomainMismatchError,
    IntPoly,
    _pack_signed,
    _unpack_balanced,
)

Poly = IntPoly | ComplexPoly


class NonCoprimeError(ValueError):
    """ell and k share a factor; reduce the spec first (see reduce_spec)."""


@dataclass(frozen=True)
class RecurrenceSpec:
    """The tuple (A, B, ell, k): A multiplies P_{n-k}, B multiplies P_{n-ell}."""

    a: Poly
    b: Poly
    ell: int
    k: int

    def __post_init__(self) -> None:
        if not (1 <= self.ell < self.k):
            raise ValueError(f"need 1 <= ell < k, got ell={self.ell}, k={self.k}")
        if self.a.is_zero() and self.b.is_zero():
            raise ValueError("A and B must not both be the zero polynomial")
        if isinstance(self.a, IntPoly) != isinstance(self.b, IntPoly):
            raise DomainMismatchError("A and B must share one coefficient domain")

    @property
    def exact(self) -> bool:
        return isinstance(self.a, IntPoly)

    @property
    def coprime(self) -> bool:
        return math.gcd(self.ell, self.k) == 1

    def _one(self) -> Poly:
        return IntPoly([1]) if self.exact else ComplexPoly([1])

    def _zero(self) -> Poly:
        return IntPoly() if self.exact else ComplexPoly()


@dataclass(frozen=True)
class LatticeSolutionSet:
    """Nonnegative solutions of i*ell + j*k = n, ordered by increasing i."""

    n: int
    solutions: tuple[tuple[int, int], ...]

    @property
    def s(self) -> int:
        return len(self.solutions)

    def __iter__(self):
        return iter(self.solutions)

    def __len__(self) -> int:
        return len(self.solutions)


def _require_coprime(ell: int, k: int) -> None:
    if math.gcd(ell, k) != 1:
        raise NonCoprimeError(
            f"ell={ell} and k={k} are not coprime; apply reduce_spec first"
        )


def reduce_spec(a: Poly, b: Poly, ell: int, k: int) -> tuple[RecurrenceSpec, int]:
    """Divide ell and k by their gcd d.

    The original sequence Q satisfies Q_{d*n} = P_n for the reduced spec and
    Q_m = 0 whenever d does not divide m, so studying the reduced sequence
    loses nothing.
    """
    if not (1 <= ell < k):
        raise ValueError(f"need 1 <= ell < k, got ell={ell}, k={k}")
    d = math.gcd(ell, k)
    return RecurrenceSpec(a, b, ell // d, k // d), d


def lattice_solutions(ell: int, k: int, n: int) -> LatticeSolutionSet:
    """All nonnegative integer pairs (i, j) with i*ell + j*k = n.

    Consecutive solutions differ by (+k, -ell); the set may be empty.
    """
    _require_coprime(ell, k)
    if n < 0:
        raise ValueError("n must be nonnegative")
    # i must satisfy i*ell = n (mod k); smallest such i >= 0 starts the walk.
    i = (n * pow(ell, -1, k)) % k
    solutions = []
    while i * ell <= n:
        solutions.append((i, (n - i * ell) // k))
        i += k
    return LatticeSolutionSet(n, tuple(solutions))


def iter_recurrence(spec: RecurrenceSpec) -> Iterator[Poly]:
    """Yield P_0, P_1, ... keeping only the last k terms in memory."""
    zero = spec._zero()
    # window[m] holds P_{n-1-m}; seeded for n = 1 with P_0 and k-1 zeros.
    window = [spec._one()] + [zero] * (spec.k - 1)
    yield window[0]
    while True:
        term = -(spec.b * window[spec.ell - 1]) - (spec.a * window[spec.k - 1])
        yield term
        window.insert(0, term)
        window.pop()


def gen_recurrence(spec: RecurrenceSpec, n_max: int) -> list[Poly]:
    """P_0 .. P_{n_max} by direct iteration; exact in the integer domain."""
    if n_max < 0:
        raise ValueError("n_max must be nonnegative")
    return list(islice(iter_recurrence(spec), n_max + 1))


def recurrence_term(spec: RecurrenceSpec, n: int) -> Poly:
    """P_n alone, computed in constant memory."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    return next(islice(iter_recurrence(spec), n, None))


def _power_table(p: Poly, top: int) -> list[Poly]:
    powers = [IntPoly([1]) if isinstance(p, IntPoly) else ComplexPoly([1])]
    for _ in range(top):
        powers.append(powers[-1] * p)
    return powers


def closed_form(spec: RecurrenceSpec, n: int) -> Poly:
    """P_n summed over the lattice solution set (zero polynomial if empty)."""
    _require_coprime(spec.ell, spec.k)
    if n < 0:
        raise ValueError("n must be nonnegative")
    lattice = lattice_solutions(spec.ell, spec.k, n)
    if not lattice.solutions:
        return spec._zero()
    a_pows = _power_table(spec.a, lattice.solutions[0][1])
    b_pows = _power_table(spec.b, lattice.solutions[-1][0])
    total = spec._zero()
    for i, j in lattice:
        c = math.comb(i + j, i)
        factor = -c if (i + j) % 2 else c
        if not spec.exact:
            factor = complex(factor)  # exact binomial rounded once
        total = total + (a_pows[j] * b_pows[i]).scale(factor)
    return total


def closed_form_range(spec: RecurrenceSpec, n_max: int) -> list[Poly]:
    """Closed-form P_0 .. P_{n_max} in one pass.

    In the integer domain every term C(i+j,i) * A^j * B^i is accumulated in
    Kronecker-packed form (one big integer per n), which keeps the whole
    sweep near big-integer multiplication speed instead of doing a dense
    polynomial product per lattice point.
    """
    _require_coprime(spec.ell, spec.k)
    if n_max < 0:
        raise ValueError("n_max must be nonnegative")
    if not spec.exact:
        return [closed_form(spec, n) for n in range(n_max + 1)]

    ell, k = spec.ell, spec.k
    pairs_by_n: list[list[tuple[int, int]]] = [
        list(lattice_solutions(ell, k, n)) for n in range(n_max + 1)
    ]
    j_top = max((p[0][1] for p in pairs_by_n if p), default=0)
    i_top = max((p[-1][0] for p in pairs_by_n if p), default=0)
    a_pows = _power_table(spec.a, j_top)
    b_pows = _power_table(spec.b, i_top)

    # Digit width: every accumulated coefficient (and any partial sum of
    # absolute values) stays below sum C(i+j,i) * SA^j * SB^i over all pairs.
    sa = sum(abs(c) for c in spec.a.coeffs)
    sb = sum(abs(c) for c in spec.b.coeffs)
    bound = 0
    for pairs in pairs_by_n:
        for i, j in pairs:
            bound += math.comb(i + j, i) * sa**j * sb**i
    nbytes = (bound.bit_length() + 2 + 7) // 8 + 1

    packed_a = [_pack_signed(p.coeffs, nbytes) if p.coeffs else 0 for p in a_pows]
    packed_b = [_pack_signed(p.coeffs, nbytes) if p.coeffs else 0 for p in b_pows]

    out: list[Poly] = []
    for n, pairs in enumerate(pairs_by_n):
        acc = 0
        length = 0
        for i, j in pairs:
            c = math.comb(i + j, i)
            term = c * packed_a[j] * packed_b[i]
            acc = acc - term if (i + j) % 2 else acc + term
            length = max(length, len(a_pows[j].coeffs) + len(b_pows[i].coeffs) - 1)
        if acc == 0:
            out.append(IntPoly())
        else:
            out.append(IntPoly(_unpack_balanced(acc, nbytes, length)))
    return out
