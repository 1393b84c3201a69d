import math
import random

import pytest

from tranroots.gpoly import (
    LatticePathPoly,
    lattice_path_poly,
    real_negative_roots,
)
from tranroots.poly import DegreeError, IntPoly
from tranroots.recurrence import NonCoprimeError


def test_example_poly_2_3_21():
    g = lattice_path_poly(2, 3, 21)
    assert g.coeffs == IntPoly([1, 56, 84, 10])
    assert g.degree == 3
    assert g.lattice.solutions == ((0, 7), (3, 5), (6, 3), (9, 1))


def test_poly_n_zero_is_one():
    assert lattice_path_poly(2, 3, 0).coeffs == IntPoly([1])


def test_poly_1_2_4():
    # lattice of i + 2j = 4 is {(0,2), (2,1), (4,0)} -> C(2,0), C(3,2), C(4,4)
    g = lattice_path_poly(1, 2, 4)
    assert g.coeffs == IntPoly([1, 3, 1])


def test_empty_lattice_gives_zero_poly():
    g = lattice_path_poly(2, 3, 1)
    assert g.coeffs.is_zero()
    assert g.degree == -1


def test_requires_coprime():
    with pytest.raises(NonCoprimeError):
        lattice_path_poly(2, 4, 8)


def test_coefficients_are_path_counts():
    rng = random.Random(3)
    for _ in range(50):
        k = rng.randint(2, 7)
        ell = rng.choice([l for l in range(1, k) if math.gcd(l, k) == 1])
        n = rng.randint(0, 80)
        g = lattice_path_poly(ell, k, n)
        for power, (i, j) in enumerate(g.lattice):
            assert g.coeffs.coeffs[power] == math.comb(i + j, i) > 0


def test_roots_example_2_3_21():
    g = lattice_path_poly(2, 3, 21)
    roots, certified = real_negative_roots(g)
    assert certified
    expected = (-7.67175, -0.70989, -0.0183618)
    assert len(roots) == 3
    for got, want in zip(roots, expected):
        assert abs(got - want) <= 1e-4


def test_linear_case():
    g = lattice_path_poly(1, 2, 2)  # lattice {(0,1),(2,0)} -> 1 + tau
    assert g.coeffs == IntPoly([1, 1])
    roots, certified = real_negative_roots(g)
    assert certified
    assert abs(roots[0] + 1.0) < 1e-12


def test_quadratic_case():
    roots, certified = real_negative_roots(IntPoly([1, 3, 1]))
    assert certified
    expected = [(-3 - math.sqrt(5)) / 2, (-3 + math.sqrt(5)) / 2]
    for got, want in zip(roots, expected):
        assert abs(got - want) <= 1e-10


def test_constant_and_zero_rejected():
    with pytest.raises(DegreeError):
        real_negative_roots(IntPoly([5]))
    with pytest.raises(DegreeError):
        real_negative_roots(lattice_path_poly(2, 3, 1))  # zero polynomial


def test_multiple_root_goes_through_sturm():
    # (tau+1)^2 (tau+2) = tau^3 + 4 tau^2 + 5 tau + 2
    roots, certified = real_negative_roots(IntPoly([2, 5, 4, 1]))
    assert certified
    assert len(roots) == 3
    assert abs(roots[0] + 2) < 1e-9
    assert abs(roots[1] + 1) < 1e-9
    assert abs(roots[2] + 1) < 1e-9


def test_non_negative_rooted_is_not_certified():
    roots, certified = real_negative_roots(IntPoly([1, 0, 1]))  # tau^2 + 1
    assert not certified
    assert roots == []
    # positive roots: (tau-1)(tau-2)
    roots, certified = real_negative_roots(IntPoly([2, -3, 1]))
    assert not certified
    assert roots == []
    # root at the origin: tau(tau+1)
    roots, certified = real_negative_roots(IntPoly([0, 1, 1]))
    assert not certified
    assert len(roots) == 1 and abs(roots[0] + 1) < 1e-9


def test_mixed_real_roots_partial_negative():
    # (tau+3)(tau-1) = tau^2 + 2tau - 3: one negative root only
    roots, certified = real_negative_roots(IntPoly([-3, 2, 1]))
    assert not certified
    assert len(roots) == 1
    assert abs(roots[0] + 3) < 1e-9


def test_certification_sweep_small():
    rng = random.Random(17)
    for _ in range(60):
        k = rng.randint(2, 7)
        ell = rng.choice([l for l in range(1, k) if math.gcd(l, k) == 1])
        n = rng.randint(0, 120)
        g = lattice_path_poly(ell, k, n)
        if g.degree < 1:
            continue
        roots, certified = real_negative_roots(g)
        assert certified
        assert len(roots) == g.degree
        assert all(r < 0 for r in roots)


def test_positive_on_nonnegative_axis():
    rng = random.Random(23)
    for _ in range(30):
        k = rng.randint(2, 7)
        ell = rng.choice([l for l in range(1, k) if math.gcd(l, k) == 1])
        n = rng.randint(0, 100)
        g = lattice_path_poly(ell, k, n)
        if g.coeffs.is_zero():
            continue
        for _ in range(5):
            x = rng.uniform(0, 10)
            num, den = x.as_integer_ratio()
            # positivity of all coefficients forces positivity on x >= 0
            value = sum(c * Fraction(num, den) ** i
                        for i, c in enumerate(g.coeffs.coeffs))
            assert value > 0


from fractions import Fraction  # noqa: E402  (used in the sampled positivity check)


def test_root_product_matches_vieta():
    rng = random.Random(29)
    for _ in range(40):
        k = rng.randint(2, 6)
        ell = rng.choice([l for l in range(1, k) if math.gcd(l, k) == 1])
        n = rng.randint(5, 150)
        g = lattice_path_poly(ell, k, n)
        if g.degree < 1:
            continue
        roots, certified = real_negative_roots(g)
        assert certified
        product = 1.0
        for r in roots:
            product *= r
        expected = (-1) ** g.degree * g.coeffs.coeffs[0] / g.coeffs.coeffs[-1]
        assert abs(product - expected) <= 1e-8 * abs(expected)


def test_deep_lattice_poly_certified():
    # the largest acceptance-range case: ell=1, k=2, n=200 -> degree 100
    g = lattice_path_poly(1, 2, 200)
    assert g.degree == 100
    roots, certified = real_negative_roots(g)
    assert certified
    assert len(roots) == 100
    assert all(r < 0 for r in roots)
