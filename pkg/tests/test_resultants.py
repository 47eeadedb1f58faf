import random

import pytest

from cremona3.errors import (
    BadLeadingCoefficient,
    BothConstant,
    BothZero,
    CommonComponent,
    ZeroForm,
)
from cremona3.field import PrimeField
from cremona3.poly import BinaryForm, Poly, monomial_exponents
from cremona3.resultants import (
    binary_divide_exact,
    binary_gcd,
    binary_root_multiplicity,
    eliminant,
    newton_interpolate,
    resultant_univariate,
    sylvester_matrix,
    trivariate_gcd,
    x_coefficient_forms,
)

F = PrimeField()
P = F.p
P7 = PrimeField(7)


def _conv(f, g, p):
    out = [0] * (len(f) + len(g) - 1)
    for i, a in enumerate(f):
        for j, b in enumerate(g):
            out[i + j] = (out[i + j] + a * b) % p
    return out


def test_sylvester_shape():
    rows = sylvester_matrix([1, 2, 3], [4, 5])  # deg 2 and deg 1
    assert rows == [[1, 2, 3], [4, 5, 0], [0, 4, 5]]


def test_resultant_distinct_roots():
    # x - 1 and x - 2, ascending coefficients: prod of root differences = -1
    assert resultant_univariate([P - 1, 1], [P - 2, 1], P) == P - 1


def test_resultant_shared_root():
    assert resultant_univariate([P - 1, 0, 1], [P - 1, 1], P) == 0  # x^2-1 vs x-1


def test_resultant_input_validation():
    with pytest.raises(BothConstant):
        resultant_univariate([3], [5], P)
    with pytest.raises(BadLeadingCoefficient):
        resultant_univariate([1, 0], [1, 1], P)
    with pytest.raises(ZeroForm):
        resultant_univariate([], [1, 1], P)


def test_resultant_multiplicative(rng):
    for _ in range(20):
        f = [rng.randrange(P) for _ in range(4)]
        g = [rng.randrange(P) for _ in range(4)]
        h = [rng.randrange(P) for _ in range(4)]
        if 0 in (f[-1], g[-1], h[-1]):
            continue
        lhs = resultant_univariate(_conv(f, g, P), h, P)
        rhs = resultant_univariate(f, h, P) * resultant_univariate(g, h, P) % P
        assert lhs == rhs


def test_newton_interpolate_round_trip(rng):
    p = 101
    coeffs_desc = [3, 0, 7, 1]  # 3x^3 + 7x + 1
    xs = [0, 1, 2, 3]
    ys = [sum(c * pow(x, len(coeffs_desc) - 1 - k, p) for k, c in enumerate(coeffs_desc)) % p
          for x in xs]
    assert newton_interpolate(xs, ys, p) == coeffs_desc


def test_x_coefficient_forms():
    # F = x^2 + x*y + z^2: index k holds the coefficient of x^k
    f = Poly.from_terms(F, 3, 2, {(2, 0, 0): 1, (1, 1, 0): 1, (0, 0, 2): 1})
    forms = x_coefficient_forms(f)
    assert forms[2].coeffs == [1]
    assert forms[1].coeffs == [1, 0]
    assert forms[0].coeffs == [0, 0, 1]


def test_eliminant_conic_and_line():
    # x^2 - yz vs x - y eliminates to y(y - z) with roots (0:1) and (1:1)
    conic = Poly.from_terms(F, 3, 2, {(2, 0, 0): 1, (0, 1, 1): -1})
    line = Poly.from_terms(F, 3, 1, {(1, 0, 0): 1, (0, 1, 0): -1})
    r = eliminant(conic, line)
    assert r.coeffs == [1, P - 1, 0]
    assert binary_root_multiplicity(r, (0, 1)) == 1
    assert binary_root_multiplicity(r, (1, 1)) == 1
    assert binary_root_multiplicity(r, (2, 1)) == 0


def test_eliminant_detects_common_factor():
    # x(x+y) and x(x+z): valid leading coefficients, shared factor x
    f = Poly.from_terms(F, 3, 2, {(2, 0, 0): 1, (1, 1, 0): 1})
    g = Poly.from_terms(F, 3, 2, {(2, 0, 0): 1, (1, 0, 1): 1})
    with pytest.raises(CommonComponent):
        eliminant(f, g)


def test_eliminant_needs_leading_coefficient():
    no_x = Poly.from_terms(F, 3, 2, {(0, 1, 1): 1})
    conic = Poly.from_terms(F, 3, 2, {(2, 0, 0): 1, (0, 1, 1): 1})
    with pytest.raises(BadLeadingCoefficient):
        eliminant(no_x, conic)


def test_eliminant_rejects_tiny_prime():
    small = PrimeField(5)
    f = Poly.from_terms(small, 3, 2, {(2, 0, 0): 1, (0, 2, 0): 1})
    g = Poly.from_terms(small, 3, 3, {(3, 0, 0): 1, (0, 0, 3): 1})
    with pytest.raises(ValueError):
        eliminant(f, g)


def test_eliminant_degree_is_product(rng):
    for _ in range(20):
        a, b = rng.randrange(1, 4), rng.randrange(1, 4)
        f = Poly.from_terms(F, 3, a, {e: F.rand(rng) for e in monomial_exponents(3, a)})
        g = Poly.from_terms(F, 3, b, {e: F.rand(rng) for e in monomial_exponents(3, b)})
        if f.coeff((a, 0, 0)) == 0 or g.coeff((b, 0, 0)) == 0:
            continue
        assert eliminant(f, g).degree == a * b


def test_eliminant_against_brute_force():
    # over a small field, every rational common point projects to a root of
    # the eliminant; directions enumerated as (1 : z) plus (0 : 1)
    field = PrimeField(101)
    rng = random.Random(5)
    exps = list(monomial_exponents(3, 2))
    directions = [(1, z) for z in range(101)] + [(0, 1)]
    for _ in range(5):
        f = Poly.from_terms(field, 3, 2, {e: field.rand(rng) for e in exps})
        g = Poly.from_terms(field, 3, 2, {e: field.rand(rng) for e in exps})
        if f.coeff((2, 0, 0)) == 0 or g.coeff((2, 0, 0)) == 0:
            continue
        try:
            r = eliminant(f, g)
        except CommonComponent:
            continue
        for y, z in directions:
            hit = any(f.eval([x, y, z]) == 0 and g.eval([x, y, z]) == 0
                      for x in range(101))
            if hit:
                assert binary_root_multiplicity(r, (y, z)) >= 1


def test_binary_root_multiplicity_examples():
    # y^2 (y - z) = y^3 - y^2 z
    r = BinaryForm(F, [1, P - 1, 0, 0])
    assert binary_root_multiplicity(r, (0, 1)) == 2
    assert binary_root_multiplicity(r, (1, 1)) == 1
    assert binary_root_multiplicity(r, (1, 2)) == 0
    assert binary_root_multiplicity(r, (1, 0)) == 0
    with pytest.raises(ZeroForm):
        binary_root_multiplicity(BinaryForm.zero(F, 2), (1, 1))
    with pytest.raises(ValueError):
        binary_root_multiplicity(r, (0, 0))


def test_binary_root_multiplicity_at_z_direction():
    # z^2 (y + z): roots at (1:0) twice
    r = BinaryForm(F, [0, 0, 1, 1])
    assert binary_root_multiplicity(r, (1, 0)) == 2


def test_binary_gcd_examples():
    y2z = BinaryForm(F, [0, 1, 0, 0])
    yz2 = BinaryForm(F, [0, 0, 1, 0])
    assert binary_gcd(y2z, yz2).coeffs == [0, 1, 0]  # yz

    f = BinaryForm(P7, [1, 0, 1])   # y^2 + z^2, irreducible over F_7
    g = BinaryForm(P7, [1, 2])      # y + 2z
    assert binary_gcd(f, g).degree == 0

    h = BinaryForm(F, [2, 4])
    assert binary_gcd(h, BinaryForm.zero(F, 1)).coeffs == [1, 2]  # monic h

    with pytest.raises(BothZero):
        binary_gcd(BinaryForm.zero(F, 1), BinaryForm.zero(F, 2))


def test_binary_gcd_of_constructed_product(rng):
    for _ in range(20):
        h = BinaryForm.random(F, 2, rng)
        a = BinaryForm.random(F, 2, rng)
        b = BinaryForm.random(F, 2, rng)
        if h.is_zero() or a.is_zero() or b.is_zero():
            continue
        if binary_gcd(a, b).degree != 0:
            continue
        g = binary_gcd(a.mul(h), b.mul(h))
        lead = next(c for c in h.coeffs if c)
        assert g == h.scale(F.inv(lead))


def test_binary_divide_exact():
    a = BinaryForm(F, [1, 2]).mul(BinaryForm(F, [3, 4]))
    q = binary_divide_exact(a, BinaryForm(F, [1, 2]))
    assert q.coeffs == [3, 4]
    with pytest.raises(ValueError):
        binary_divide_exact(BinaryForm(F, [1, 1, 1]), BinaryForm(F, [1, 1]))


def test_trivariate_gcd_examples():
    y = Poly.from_terms(F, 3, 1, {(0, 1, 0): 1})
    xy = Poly.from_terms(F, 3, 2, {(1, 1, 0): 1})
    assert trivariate_gcd(y, xy) == y

    f = Poly.from_terms(F, 3, 2, {(1, 0, 1): 1, (0, 2, 0): 1})  # xz + y^2
    assert trivariate_gcd(f, y).degree == 0

    with pytest.raises(BothZero):
        trivariate_gcd(Poly.zero(F, 3, 1), Poly.zero(F, 3, 2))


def test_trivariate_gcd_zero_argument():
    f = Poly.from_terms(F, 3, 2, {(2, 0, 0): 3, (0, 2, 0): 3})
    assert trivariate_gcd(f, Poly.zero(F, 3, 2)) == f.scale(F.inv(3))


def test_trivariate_gcd_of_constructed_product(rng):
    exps2 = list(monomial_exponents(3, 2))
    exps1 = list(monomial_exponents(3, 1))
    found = 0
    while found < 10:
        h = Poly.from_terms(F, 3, 1, {e: F.rand(rng) for e in exps1})
        f = Poly.from_terms(F, 3, 2, {e: F.rand(rng) for e in exps2})
        g = Poly.from_terms(F, 3, 2, {e: F.rand(rng) for e in exps2})
        if h.is_zero() or f.is_zero() or g.is_zero():
            continue
        if trivariate_gcd(f, g).degree != 0:
            continue
        result = trivariate_gcd(f.mul(h), g.mul(h))
        lead = h.sorted_terms()[0][1]
        assert result == h.scale(F.inv(lead))
        found += 1
