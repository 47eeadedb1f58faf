import random

import pytest

from cremona3.errors import (
    CommonComponent,
    GenericityExhausted,
    UnusableChange,
    ZeroPolynomial,
)
from cremona3.field import PrimeField
from cremona3.oracle import (
    DeclaredBasePoint,
    check_against_expected,
    measure_with_change,
    replay_intersection,
    residual_intersection,
)
from cremona3.plane import curves_through
from cremona3.poly import LinearChange, Poly, ProjectivePoint, monomial_exponents

F = PrimeField()


def quadric_net_members(rng):
    """Two independent members of the net <yz, xz, xy>."""
    yz = Poly.from_terms(F, 3, 2, {(0, 1, 1): 1})
    xz = Poly.from_terms(F, 3, 2, {(1, 0, 1): 1})
    xy = Poly.from_terms(F, 3, 2, {(1, 1, 0): 1})
    while True:
        a = [F.rand(rng) for _ in range(3)]
        b = [F.rand(rng) for _ in range(3)]
        if (a[0] * b[1] - a[1] * b[0]) % F.p != 0:
            break
    first = yz.scale(a[0]).add(xz.scale(a[1])).add(xy.scale(a[2]))
    second = yz.scale(b[0]).add(xz.scale(b[1])).add(xy.scale(b[2]))
    return first, second


def coordinate_base():
    return [
        DeclaredBasePoint(ProjectivePoint(F, [1, 0, 0]), 1),
        DeclaredBasePoint(ProjectivePoint(F, [0, 1, 0]), 1),
        DeclaredBasePoint(ProjectivePoint(F, [0, 0, 1]), 1),
    ]


def test_standard_quadratic_net(rng):
    first, second = quadric_net_members(rng)
    base = coordinate_base()
    report = residual_intersection(first, second, base, rng)
    assert report.total_degree == 4
    assert [m for _, m in report.measured] == [1, 1, 1]
    assert report.residual == 1
    assert check_against_expected(report, base)


def test_random_conics_no_base(rng):
    exps = list(monomial_exponents(3, 2))
    f = Poly.from_terms(F, 3, 2, {e: F.rand(rng) for e in exps})
    g = Poly.from_terms(F, 3, 2, {e: F.rand(rng) for e in exps})
    report = residual_intersection(f, g, [], rng)
    assert report.total_degree == 4
    assert report.measured == []
    assert report.residual == 4


def test_common_component_propagates(rng):
    xy = Poly.from_terms(F, 3, 2, {(1, 1, 0): 1})
    xz = Poly.from_terms(F, 3, 2, {(1, 0, 1): 1})
    with pytest.raises(CommonComponent):
        residual_intersection(xy, xz, [], rng)


def test_query_validation(rng):
    f = Poly.from_terms(F, 3, 2, {(2, 0, 0): 1})
    with pytest.raises(ZeroPolynomial):
        residual_intersection(Poly.zero(F, 3, 2), f, [], rng)
    q = DeclaredBasePoint(ProjectivePoint(F, [1, 2, 3]), 1)
    with pytest.raises(ValueError):
        residual_intersection(f, f.scale(2), [q, q], rng)
    g4 = Poly.from_terms(F, 4, 2, {(2, 0, 0, 0): 1})
    with pytest.raises(ValueError):
        residual_intersection(g4, g4.scale(2), [], rng)


def test_negative_control(rng):
    # a declared point off both curves must measure 0
    exps = list(monomial_exponents(3, 2))
    f = Poly.from_terms(F, 3, 2, {e: F.rand(rng) for e in exps})
    g = Poly.from_terms(F, 3, 2, {e: F.rand(rng) for e in exps})
    q = ProjectivePoint(F, [1, 17, 29])
    assert f.eval(list(q.coords)) != 0
    base = [DeclaredBasePoint(q, 0)]
    report = residual_intersection(f, g, base, rng)
    assert report.measured[0][1] == 0
    assert report.residual == 4
    assert check_against_expected(report, base)


def test_declared_point_lowers_residual(rng):
    # cubics through one shared point: declaring it moves 1 from the residual
    q = ProjectivePoint(F, [1, 5, 9])
    basis = curves_through(F, 3, [(q, 1)])
    while True:
        f = sum_of(basis, rng)
        g = sum_of(basis, rng)
        if not f.is_zero() and not g.is_zero():
            break
    plain = residual_intersection(f, g, [], rng)
    declared = residual_intersection(f, g, [DeclaredBasePoint(q, 1)], rng)
    assert plain.residual == 9
    assert declared.measured[0][1] == 1
    assert declared.residual == 8


def sum_of(basis, rng):
    out = basis[0].scale(F.rand(rng))
    for b in basis[1:]:
        out = out.add(b.scale(F.rand(rng)))
    return out


def test_projection_independence(rng):
    first, second = quadric_net_members(rng)
    base = coordinate_base()
    r1 = residual_intersection(first, second, base, random.Random(11))
    r2 = residual_intersection(first, second, base, random.Random(222))
    assert [m for _, m in r1.measured] == [m for _, m in r2.measured]
    assert r1.residual == r2.residual


def test_conservation(rng):
    for _ in range(10):
        q = ProjectivePoint(F, [F.rand(rng), F.rand(rng), 1])
        a, b = rng.randrange(1, 4), rng.randrange(1, 4)
        f = sum_of(curves_through(F, a, [(q, 1)]), rng)
        g = sum_of(curves_through(F, b, [(q, 1)]), rng)
        if f.is_zero() or g.is_zero():
            continue
        try:
            report = residual_intersection(f, g, [DeclaredBasePoint(q, 1)], rng)
        except CommonComponent:
            continue
        assert report.residual + sum(m for _, m in report.measured) == a * b


def test_check_against_expected():
    base = coordinate_base()
    report = type("R", (), {})()
    report.measured = [(b.point, 1) for b in base]
    assert check_against_expected(report, base)
    report.measured = [(base[0].point, 2)] + [(b.point, 1) for b in base[1:]]
    assert not check_against_expected(report, base)
    assert check_against_expected(type("R", (), {"measured": []})(), [])


def test_replay_matches_original(rng):
    first, second = quadric_net_members(rng)
    base = coordinate_base()
    report = residual_intersection(first, second, base, rng)
    replay = replay_intersection(
        first, second, base, report.linear_change, report.confirm_change
    )
    assert replay.measured == report.measured
    assert replay.residual == report.residual
    assert replay.attempts == 1


def test_measure_rejects_unusable_changes():
    f = Poly.from_terms(F, 3, 2, {(2, 0, 0): 1, (0, 1, 1): 1})
    g = Poly.from_terms(F, 3, 2, {(2, 0, 0): 1, (0, 2, 0): 1})
    identity = LinearChange.identity(F, 3)
    center = [DeclaredBasePoint(ProjectivePoint(F, [1, 0, 0]), 1)]
    with pytest.raises(UnusableChange):
        measure_with_change(f, g, center, identity)
    shared_dir = [
        DeclaredBasePoint(ProjectivePoint(F, [1, 1, 1]), 1),
        DeclaredBasePoint(ProjectivePoint(F, [2, 1, 1]), 1),
    ]
    with pytest.raises(UnusableChange):
        measure_with_change(f, g, shared_dir, identity)


def test_retry_budget_exhaustion(rng):
    f = Poly.from_terms(F, 3, 2, {(2, 0, 0): 1, (0, 1, 1): 1})
    g = Poly.from_terms(F, 3, 2, {(2, 0, 0): 1, (0, 2, 0): 1})
    with pytest.raises(GenericityExhausted):
        residual_intersection(f, g, [], rng, retries=0)
