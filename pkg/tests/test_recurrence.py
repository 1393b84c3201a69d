import math
import random

import pytest

from tranroots.parse import parse_poly
from tranroots.poly import ComplexPoly, DomainMismatchError, IntPoly
from tranroots.recurrence import (
    NonCoprimeError,
    RecurrenceSpec,
    closed_form,
    closed_form_range,
    gen_recurrence,
    lattice_solutions,
    recurrence_term,
    reduce_spec,
)

A_EXAMPLE = parse_poly("z^3 + z + 1")
B_EXAMPLE = parse_poly("z^2 - 2z + 7")

# 22 coefficients of P_21 for the example pair with ell=2, k=3, lowest first.
P21_COEFFS = (
    393672761, -646754633, 667797557, 98239806, -1206661925, 2171467228,
    -2529964192, 2246607369, -1625784860, 969712412, -486724329, 201422869,
    -68243275, 17375116, -2717833, -196756, 295748, -114667, 27963, -4619,
    492, -19,
)


def coprime_pairs(k_max):
    return [(l, k) for k in range(2, k_max + 1) for l in range(1, k)
            if math.gcd(l, k) == 1]


def random_int_poly(rng, max_degree=3, bound=9):
    p = IntPoly([rng.randint(-bound, bound) for _ in range(max_degree + 1)])
    return p


def random_spec(rng, k_max=7):
    ell, k = rng.choice(coprime_pairs(k_max))
    while True:
        a = random_int_poly(rng)
        b = random_int_poly(rng)
        if not (a.is_zero() and b.is_zero()):
            return RecurrenceSpec(a, b, ell, k)


def test_spec_validation():
    with pytest.raises(ValueError):
        RecurrenceSpec(A_EXAMPLE, B_EXAMPLE, 3, 3)
    with pytest.raises(ValueError):
        RecurrenceSpec(A_EXAMPLE, B_EXAMPLE, 3, 2)
    with pytest.raises(ValueError):
        RecurrenceSpec(IntPoly(), IntPoly(), 1, 2)
    with pytest.raises(DomainMismatchError):
        RecurrenceSpec(A_EXAMPLE, ComplexPoly([1.5]), 1, 2)


def test_reduce_spec_examples():
    spec, d = reduce_spec(A_EXAMPLE, B_EXAMPLE, 2, 3)
    assert (spec.ell, spec.k, d) == (2, 3, 1)
    spec, d = reduce_spec(A_EXAMPLE, B_EXAMPLE, 2, 4)
    assert (spec.ell, spec.k, d) == (1, 2, 2)
    spec, d = reduce_spec(A_EXAMPLE, B_EXAMPLE, 4, 6)
    assert (spec.ell, spec.k, d) == (2, 3, 2)
    with pytest.raises(ValueError):
        reduce_spec(A_EXAMPLE, B_EXAMPLE, 4, 2)


def test_lattice_solutions_examples():
    lat = lattice_solutions(2, 3, 21)
    assert lat.solutions == ((0, 7), (3, 5), (6, 3), (9, 1))
    assert lat.s == 4
    assert lattice_solutions(2, 3, 1).s == 0
    assert lattice_solutions(2, 3, 0).solutions == ((0, 0),)


def test_lattice_solution_structure():
    rng = random.Random(7)
    for _ in range(200):
        ell, k = rng.choice(coprime_pairs(9))
        n = rng.randint(0, 120)
        lat = lattice_solutions(ell, k, n)
        for i, j in lat:
            assert i >= 0 and j >= 0 and i * ell + j * k == n
        for (i0, j0), (i1, j1) in zip(lat.solutions, lat.solutions[1:]):
            assert (i1 - i0, j1 - j0) == (k, -ell)
        # brute-force enumeration as the oracle
        brute = [(i, (n - i * ell) // k) for i in range(n + 1)
                 if (n - i * ell) >= 0 and (n - i * ell) % k == 0]
        assert list(lat.solutions) == brute


def test_lattice_requires_coprime():
    with pytest.raises(NonCoprimeError):
        lattice_solutions(2, 4, 10)


def test_gen_recurrence_paper_polynomial():
    spec = RecurrenceSpec(A_EXAMPLE, B_EXAMPLE, 2, 3)
    seq = gen_recurrence(spec, 21)
    assert seq[0] == IntPoly([1])
    assert seq[1].is_zero()  # both back-references land before P_0
    assert seq[21].coeffs == P21_COEFFS


def test_gen_recurrence_errors():
    spec = RecurrenceSpec(A_EXAMPLE, B_EXAMPLE, 2, 3)
    with pytest.raises(ValueError):
        gen_recurrence(spec, -1)


def test_recurrence_term_matches_list():
    spec = RecurrenceSpec(A_EXAMPLE, B_EXAMPLE, 2, 3)
    seq = gen_recurrence(spec, 15)
    for n in (0, 1, 7, 15):
        assert recurrence_term(spec, n) == seq[n]


def test_closed_form_examples():
    spec = RecurrenceSpec(A_EXAMPLE, B_EXAMPLE, 2, 3)
    p21 = closed_form(spec, 21)
    assert p21.coeffs == P21_COEFFS
    assert p21.coeffs[5] == 2171467228
    assert closed_form(spec, 1).is_zero()  # empty lattice

    # constants A = B = 1 with ell=1, k=2: P_2 = 0 by brute iteration
    # (P_0 = 1, P_1 = -1, P_2 = -P_1 - P_0 = 0)
    const = RecurrenceSpec(IntPoly([1]), IntPoly([1]), 1, 2)
    assert closed_form(const, 2).is_zero()
    assert gen_recurrence(const, 2)[2].is_zero()


def test_closed_form_requires_coprime():
    spec = RecurrenceSpec(A_EXAMPLE, B_EXAMPLE, 2, 4)
    with pytest.raises(NonCoprimeError):
        closed_form(spec, 8)
    with pytest.raises(NonCoprimeError):
        closed_form_range(spec, 8)


def test_dual_generation_equivalence():
    rng = random.Random(20240813)
    for _ in range(40):
        spec = random_spec(rng)
        assert gen_recurrence(spec, 60) == closed_form_range(spec, 60)


def test_closed_form_single_matches_range():
    rng = random.Random(5)
    for _ in range(10):
        spec = random_spec(rng)
        sweep = closed_form_range(spec, 30)
        for n in (0, 1, 13, 30):
            assert closed_form(spec, n) == sweep[n]


def test_gcd_reduction_dilation():
    rng = random.Random(99)
    for d in (2, 3):
        for _ in range(10):
            reduced = random_spec(rng, k_max=4)
            original_ell, original_k = reduced.ell * d, reduced.k * d
            original = RecurrenceSpec(reduced.a, reduced.b, original_ell, original_k)
            n_red = 12
            seq_orig = gen_recurrence(original, d * n_red)
            seq_red = gen_recurrence(reduced, n_red)
            for n in range(n_red + 1):
                assert seq_orig[d * n] == seq_red[n]
            for m in range(d * n_red + 1):
                if m % d:
                    assert seq_orig[m].is_zero()


def test_factorization_identity():
    # P_n = (-1)^(i1+j1) B^i1 * sum_u C(i_u+j_u, i_u) (-1)^((u-1)(k-ell))
    #       * B^((u-1)k) * A^(j1-(u-1)ell), exactly.
    rng = random.Random(314)
    checked = 0
    while checked < 25:
        spec = random_spec(rng, k_max=6)
        n = rng.randint(0, 50)
        lat = lattice_solutions(spec.ell, spec.k, n)
        if lat.s == 0:
            continue
        p_n = recurrence_term(spec, n)
        i1, j1 = lat.solutions[0]
        total = IntPoly()
        for u, (i, j) in enumerate(lat.solutions):
            c = math.comb(i + j, i)
            sign = -1 if (u * (spec.k - spec.ell)) % 2 else 1
            total = total + (spec.b ** (u * spec.k) *
                             spec.a ** (j1 - u * spec.ell)).scale(sign * c)
        lead_sign = -1 if (i1 + j1) % 2 else 1
        rhs = (spec.b ** i1 * total).scale(lead_sign)
        assert p_n == rhs
        checked += 1


def test_generating_function_truncation():
    # (1 + B t^ell + A t^k) * sum P_n t^n must have zero coefficients for
    # t^1 .. t^(N-k) when the P_n come from the closed form.
    rng = random.Random(2718)
    for _ in range(10):
        spec = random_spec(rng, k_max=5)
        n_top = 24
        seq = closed_form_range(spec, n_top)
        zero = IntPoly()
        for m in range(1, n_top - spec.k + 1):
            acc = seq[m]
            if m >= spec.ell:
                acc = acc + spec.b * seq[m - spec.ell]
            if m >= spec.k:
                acc = acc + spec.a * seq[m - spec.k]
            assert acc == zero


def test_float_domain_generation():
    a = ComplexPoly([1, 0.5])
    b = ComplexPoly([2.0, -1.0])
    spec = RecurrenceSpec(a, b, 1, 2)
    seq = gen_recurrence(spec, 8)
    sweep = closed_form_range(spec, 8)
    for p, q in zip(seq, sweep):
        assert p.degree == q.degree
        for cp, cq in zip(p.coeffs, q.coeffs):
            assert abs(cp - cq) <= 1e-9 * max(1.0, abs(cp))
