import random

import pytest

from cremona3.certificate import serialize_certificate
from cremona3.errors import (
    ForgeExhausted,
    IrreducibilityFailure,
    MultiplicityFailure,
    OutOfRange,
)
from cremona3.field import PrimeField
from cremona3.plane import (
    DeJonquieresWitness,
    PointConfiguration,
    build_de_jonquieres,
    build_random_plane_map,
    curves_through,
    forge_plane,
    forms_vanishing_at,
    plane_base_declaration,
    random_configuration,
    t1_shape_forms,
    verify_plane_homaloidal,
)
from cremona3.poly import Poly, ProjectivePoint, monomial_exponents, vanishing_order_at
from cremona3.resultants import binary_gcd

F = PrimeField()


def standard_config():
    return PointConfiguration(
        2,
        ProjectivePoint(F, [1, 0, 0]),
        [ProjectivePoint(F, [0, 1, 0]), ProjectivePoint(F, [0, 0, 1])],
    )


def test_configuration_validation():
    p0 = ProjectivePoint(F, [1, 0, 0])
    q = ProjectivePoint(F, [0, 1, 0])
    with pytest.raises(ValueError):
        PointConfiguration(1, p0, [])
    with pytest.raises(ValueError):
        PointConfiguration(2, p0, [q])  # needs 2r-2 = 2 points
    with pytest.raises(ValueError):
        PointConfiguration(2, p0, [q, q])  # duplicates
    with pytest.raises(ValueError):
        PointConfiguration(2, ProjectivePoint(F, [1, 0, 0, 0]), [q, q])


def test_conditions_layout():
    config = standard_config()
    conditions = config.conditions()
    assert conditions[0] == (config.p0, 1)
    assert [m for _, m in conditions] == [1, 1, 1]


def test_curves_through_two_points_is_one_line():
    basis = curves_through(F, 1, [(ProjectivePoint(F, [0, 1, 0]), 1),
                                  (ProjectivePoint(F, [0, 0, 1]), 1)])
    assert len(basis) == 1
    line = basis[0]
    scale = line.coeff((1, 0, 0))
    assert scale != 0
    assert line.scale(F.inv(scale)) == Poly.monomial(F, (1, 0, 0))


def test_conic_through_one_point_has_dim_five():
    basis = curves_through(F, 2, [(ProjectivePoint(F, [1, 0, 0]), 1)])
    assert len(basis) == 5


def test_conic_through_five_generic_points_is_unique(rng):
    points = set()
    while len(points) < 5:
        points.add(ProjectivePoint(F, [F.rand(rng), F.rand(rng), 1]))
    basis = curves_through(F, 2, [(q, 1) for q in points])
    assert len(basis) == 1


def test_double_point_conditions(rng):
    # conics with a double point at p0: 3 conditions, dimension 3
    basis = curves_through(F, 2, [(ProjectivePoint(F, [1, 0, 0]), 2)])
    assert len(basis) == 3
    for form in basis:
        assert vanishing_order_at(form, ProjectivePoint(F, [1, 0, 0])) >= 2


def test_forms_vanishing_at_validates_monomials():
    with pytest.raises(ValueError):
        forms_vanishing_at(F, [(1, 0, 0), (0, 2, 0)], [])


def test_r2_closed_form(rng):
    # unique f is the line through the two simple points: x
    config = standard_config()
    pmap = build_de_jonquieres(config, rng)
    f = pmap.witness.f
    scale = f.coeff((1, 0, 0))
    assert scale != 0
    assert f.scale(F.inv(scale)) == Poly.monomial(F, (1, 0, 0))
    # t1 = x*(a y + b z) + c yz with a, b, c all nonzero
    t1 = pmap.witness.t1
    u_top, u_bot = t1_shape_forms(t1)
    assert u_top.degree == 1 and not u_top.is_zero()
    assert u_bot.coeffs[0] == 0 and u_bot.coeffs[2] == 0 and u_bot.coeffs[1] != 0
    assert pmap.warnings == []


def test_components_vanish_at_base_points(rng):
    field = F
    config = random_configuration(field, 3, rng)
    pmap = build_de_jonquieres(config, rng)
    for t in pmap.components:
        for point, _ in config.conditions():
            assert t.eval(list(point.coords)) == 0


def test_witness_invariants_r3(rng):
    config = random_configuration(F, 3, rng)
    pmap = build_de_jonquieres(config, rng)
    norm = pmap.normalization
    p0n = norm.new_coords(config.p0)
    assert p0n == ProjectivePoint(F, [1, 0, 0])
    assert vanishing_order_at(pmap.witness.t1, p0n) == 2
    assert vanishing_order_at(pmap.witness.f, p0n) >= 1
    # t2 = y f and t3 = z f in normalized coordinates
    t2n = pmap.components[1].compose_linear(norm.rows)
    assert t2n == Poly.monomial(F, (0, 1, 0)).mul(pmap.witness.f)


def test_t1_shape_rejects_high_x_degree():
    t1 = Poly.from_terms(F, 3, 2, {(2, 0, 0): 1, (0, 1, 1): 1})
    with pytest.raises(MultiplicityFailure):
        t1_shape_forms(t1)


def test_override_with_reducible_t1_fails(rng):
    # t1 = y(x + y) contains the line y = 0 through p0
    config = standard_config()
    reducible = Poly.from_terms(F, 3, 2, {(1, 1, 0): 1, (0, 2, 0): 1})
    with pytest.raises(IrreducibilityFailure):
        build_de_jonquieres(config, rng, t1_override=reducible)


def test_override_with_wrong_multiplicity_fails(rng):
    # yz has a double point at p0, needs exactly r-1 = 1
    config = standard_config()
    yz = Poly.from_terms(F, 3, 2, {(0, 1, 1): 1})
    with pytest.raises(MultiplicityFailure):
        build_de_jonquieres(config, rng, t1_override=yz)


def test_line_factor_criterion_soundness(rng):
    # multiplying t1's shape forms by a line through p0 must break coprimality
    config = random_configuration(F, 3, rng)
    pmap = build_de_jonquieres(config, rng)
    u_top, u_bot = t1_shape_forms(pmap.witness.t1)
    assert binary_gcd(u_top, u_bot).degree == 0
    from cremona3.poly import BinaryForm
    line = BinaryForm(F, [1, 0])  # the line y = 0
    assert binary_gcd(u_top.mul(line), u_bot.mul(line)).degree >= 1


def test_homaloidal_check_r2(rng):
    config = standard_config()
    pmap = build_de_jonquieres(config, rng)
    check = verify_plane_homaloidal(pmap, rng)
    report = check.report
    assert report.total_degree == 4
    assert [m for _, m in report.measured] == [1, 1, 1]
    assert report.residual == 1


def test_homaloidal_check_r3(rng):
    config = random_configuration(F, 3, rng)
    pmap = build_de_jonquieres(config, rng)
    check = verify_plane_homaloidal(pmap, rng)
    report = check.report
    assert report.total_degree == 9
    assert [m for _, m in report.measured] == [4, 1, 1, 1, 1]
    assert report.residual == 1
    assert 4 + 4 == 3 * 3 - 1


def test_base_declaration_matches_homaloidal_identities(rng):
    for r in (2, 3, 4, 5):
        config = random_configuration(F, r, rng)
        assigned = [m for _, m in config.conditions()]
        assert sum(assigned) == 3 * (r - 1)
        assert sum(m * m for m in assigned) == r * r - 1
        # the intersection table declares m^2 at p0, so it totals r^2 - 1,
        # leaving exactly 1 of the r^2 Bezout count for the residual point
        declared = [b.expected for b in plane_base_declaration(config)]
        assert declared[0] == (r - 1) ** 2
        assert sum(declared) == r * r - 1


def test_random_configuration_shape(rng):
    config = random_configuration(F, 4, rng)
    assert len(config.simple_points) == 6
    assert len({config.p0, *config.simple_points}) == 7
    with pytest.raises(OutOfRange):
        random_configuration(F, 1, rng)


def test_build_random_plane_map(rng):
    pmap, check = build_random_plane_map(F, 3, rng)
    assert check.report.residual == 1
    assert pmap.config.r == 3


def test_build_is_deterministic():
    config = standard_config()
    a = build_de_jonquieres(config, random.Random(99))
    b = build_de_jonquieres(config, random.Random(99))
    assert a.components == b.components
    assert a.witness.t1 == b.witness.t1 and a.witness.f == b.witness.f


def test_forge_plane_deterministic_and_verified():
    one = forge_plane(3, seed=4)
    two = forge_plane(3, seed=4)
    assert serialize_certificate(one) == serialize_certificate(two)
    assert one.status == "verified"
    assert one.r == 3
    assert one.plane_check.report.residual == 1


def test_forge_plane_rejects_r1():
    with pytest.raises(OutOfRange):
        forge_plane(1, seed=0)


def test_forge_plane_exhaustion_collects_transcript():
    # a 7-element field is far too small for random degree-4 configurations
    with pytest.raises((ForgeExhausted, ValueError)) as info:
        forge_plane(4, seed=0, prime=7, retries=2)
    if isinstance(info.value, ForgeExhausted):
        assert info.value.transcript


def test_witness_validate_rejects_wrong_f_degree(rng):
    config = standard_config()
    pmap = build_de_jonquieres(config, rng)
    bad = DeJonquieresWitness(r=2, t1=pmap.witness.t1, f=pmap.witness.t1)
    p0n = ProjectivePoint(F, [1, 0, 0])
    simple_n = [pmap.normalization.new_coords(q) for q in config.simple_points]
    with pytest.raises(MultiplicityFailure):
        bad.validate(p0n, simple_n)
