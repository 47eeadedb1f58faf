"""Cremona transformations of projective 3-space with prescribed bidegree.

T = (g : t1 : t2 : t3) where g = w*A(x,y,z) + B(x,y,z) vanishes to order d-1
at o = (1:0:0:0) and (t1 : t2 : t3) is a degree-d plane de Jonquieres map.
Two sampling recipes cover every bidegree (d, e) with d <= e <= d*d:

  case A: A a product of d-1 distinct lines through (1:0:0) in the plane,
          B = x*B_{d-1}(y,z) + B_d(y,z); then e = 2d-1-m where m of the d-1
          residual points of A = B = 0 join the base configuration.
  case B: A and B fitted through sampled points with order exactly ell at
          p0; then e = d*d - ell*(d-1) - m.

The case B count: the difference of two general members is a member of the
net (t1 : t2 : t3) alone, which carries multiplicity d-1 at p0, while the
members themselves have order ell there. The line over p0 therefore absorbs
ell*(d-1) of the d*d intersection, and each of the m shared points absorbs 1
(the oracle confirms both numbers on every run). Case A is the ell = d-1
boundary of the same computation. The two parameter ranges still reach every
e with d <= e <= d*d: consecutive ell-bands of case B overlap because their
offset d-1 never exceeds their width 2d-2.
"""

import time
from dataclasses import dataclass

from . import modmat
from .errors import (
    BidegreeMismatch,
    CommonComponent,
    CriterionViolation,
    EmptyLinearSystem,
    ForgeExhausted,
    GenericityExhausted,
    GenericityFailure,
    MultiplicityFailure,
    OutOfRange,
)
from .field import DEFAULT_PRIME, PrimeField
from .oracle import DeclaredBasePoint, check_against_expected, residual_intersection
from .plane import (
    PointConfiguration,
    build_de_jonquieres,
    forms_vanishing_at,
    net_member,
    random_member,
    verify_plane_homaloidal,
)
from .poly import BinaryForm, LinearChange, Poly, ProjectivePoint, monomial_exponents, vanishing_order_at
from .resultants import binary_gcd, trivariate_gcd
from .seeds import make_rng

RETRY_BUDGET = 8


@dataclass(frozen=True)
class Recipe:
    """Sampling parameters realizing bidegree (d, e): case A gives
    e = 2d-1-m, case B gives e = d^2 - ell*(d-1) - m."""

    d: int
    e: int
    case: str  # "A" or "B"
    ell: object  # int for case B, None for case A
    m: int

    def __post_init__(self):
        d, e, m = self.d, self.e, self.m
        if d < 2:
            raise ValueError(f"need d >= 2, got {d}")
        if self.case == "A":
            if self.ell is not None:
                raise ValueError("case A has no ell parameter")
            if not 0 <= m <= d - 1:
                raise ValueError(f"case A needs 0 <= m <= {d - 1}, got {m}")
            if e != 2 * d - 1 - m:
                raise ValueError(f"case A with m={m} gives e={2 * d - 1 - m}, not {e}")
        elif self.case == "B":
            ell = self.ell
            if not 0 <= ell <= d - 2:
                raise ValueError(f"case B needs 0 <= ell <= {d - 2}, got {ell}")
            if not 0 <= m <= 2 * d - 2:
                raise ValueError(f"case B needs 0 <= m <= {2 * d - 2}, got {m}")
            expected_e = d * d - ell * (d - 1) - m
            if e != expected_e:
                raise ValueError(f"case B with ell={ell}, m={m} gives e={expected_e}, not {e}")
        else:
            raise ValueError(f"unknown case {self.case!r}")
        if not d <= e <= d * d:
            raise ValueError(f"bidegree ({d}, {e}) outside d <= e <= d^2")

    @property
    def tag(self):
        if self.case == "A":
            return f"A(m={self.m})"
        return f"B(ell={self.ell},m={self.m})"


def plan_bidegree(d, e):
    """Recipe for bidegree (d, e); every d <= e <= d^2 is reachable."""
    if d < 2:
        raise OutOfRange(f"need d >= 2, got d = {d}")
    if e > d * d:
        raise OutOfRange(
            f"no Cremona transformation of P^3 has bidegree ({d}, {e}): "
            f"the inverse degree satisfies sqrt(d) <= e <= d^2 = {d * d}"
        )
    if e < d:
        raise OutOfRange(
            f"bidegree ({d}, {e}) with e < d is the inverse of a map of bidegree "
            f"({e}, {d}) (the constraint is sqrt(d) <= e <= d^2); this tool only "
            f"constructs the range d <= e <= d^2, so request ({e}, {d}) instead"
        )
    m = 2 * d - 1 - e
    if 0 <= m <= d - 1:
        return Recipe(d=d, e=e, case="A", ell=None, m=m)
    for ell in range(0, d - 1):
        m = d * d - ell * (d - 1) - e
        if 0 <= m <= 2 * d - 2:
            return Recipe(d=d, e=e, case="B", ell=ell, m=m)
    raise OutOfRange(f"no recipe covers bidegree ({d}, {e})")  # unreachable for valid input


def lift_to_space(poly3, w_power=0):
    """View a trivariate form in (x,y,z) as a form in (w,x,y,z), times w^k."""
    terms = {(w_power,) + e: c for e, c in poly3.terms.items()}
    return Poly(poly3.field, 4, poly3.degree + w_power, terms)


@dataclass
class GShape:
    """g = w*A + B with deg A = d-1, deg B = d; order at o = (1:0:0:0) is d-1."""

    A: Poly
    B: Poly
    g: Poly
    a_factors: object = None  # case A: the d-1 linear forms whose product is A


def make_gshape(A, B, a_factors=None):
    g = lift_to_space(A, 1).add(lift_to_space(B, 0))
    return GShape(A=A, B=B, g=g, a_factors=a_factors)


def origin_point(field):
    return ProjectivePoint(field, [1, 0, 0, 0])


def _canonical_direction(field, lam, mu):
    if lam:
        return (1, mu * field.inv(lam) % field.p)
    return (0, 1)


def _sample_direction(field, rng, taken):
    for _ in range(64):
        lam, mu = field.rand(rng), field.rand(rng)
        if lam == 0 and mu == 0:
            continue
        direction = _canonical_direction(field, lam, mu)
        if direction not in taken:
            return direction
    raise GenericityExhausted("could not sample a fresh direction")


def sample_case_a(field, d, m, rng, retries=RETRY_BUDGET):
    """A = product of d-1 distinct lines through (1:0:0); B = x*B_{d-1} + B_d.

    The curves A = 0 and B = 0 meet off p0 in exactly d-1 points with the
    closed form (-B_d(lam,mu)/B_{d-1}(lam,mu) : lam : mu), one per line of A;
    the first m of them join the base configuration, the rest of the 2d-2
    simple points are taken on B = 0 away from A.
    """
    if not 0 <= m <= d - 1:
        raise ValueError(f"case A needs 0 <= m <= {d - 1}, got {m}")
    p0 = ProjectivePoint(field, [1, 0, 0])
    failure = None
    for _ in range(retries):
        taken = set()
        a_dirs = []
        try:
            for _ in range(d - 1):
                direction = _sample_direction(field, rng, taken)
                taken.add(direction)
                a_dirs.append(direction)

            a_factors = [BinaryForm(field, [mu, -lam % field.p]) for lam, mu in a_dirs]
            a_form = BinaryForm(field, [1])
            for factor in a_factors:
                a_form = a_form.mul(factor)

            b_top = None  # B_{d-1}, must not vanish on any line of A
            for _ in range(16):
                candidate = BinaryForm.random(field, d - 1, rng)
                if all(candidate.eval(lam, mu) != 0 for lam, mu in a_dirs):
                    b_top = candidate
                    break
            if b_top is None:
                raise GenericityExhausted("B_{d-1} keeps vanishing on a line of A")
            b_bot = BinaryForm.random(field, d, rng)
            if binary_gcd(b_top, b_bot).degree != 0:
                raise MultiplicityFailure("B would contain a line through p0")

            def residual_point(direction):
                lam, mu = direction
                x = -b_bot.eval(lam, mu) * field.inv(b_top.eval(lam, mu)) % field.p
                return ProjectivePoint(field, [x, lam, mu])

            points = [residual_point(direction) for direction in a_dirs[:m]]
            for _ in range(2 * d - 2 - m):
                direction = _sample_direction(field, rng, taken)
                if b_top.eval(*direction) == 0:
                    raise MultiplicityFailure("extra direction lands on a zero of B_{d-1}")
                taken.add(direction)
                points.append(residual_point(direction))

            A = a_form.lift(3, 1, 2)
            B = Poly.monomial(field, (1, 0, 0)).mul(b_top.lift(3, 1, 2)).add(b_bot.lift(3, 1, 2))
            if trivariate_gcd(A, B).degree != 0:
                raise MultiplicityFailure("A and B share a component")
            for i, q in enumerate(points):
                coords = list(q.coords)
                assert B.eval(coords) == 0
                assert (A.eval(coords) == 0) == (i < m)
            config = PointConfiguration(d, p0, points)
            shape = make_gshape(A, B, a_factors)
            assert vanishing_order_at(shape.g, origin_point(field)) == d - 1
            return shape, config
        except GenericityFailure as exc:
            failure = exc
            continue
    raise GenericityExhausted(f"case A sampling failed after {retries} attempts: {failure}")


def case_b_monomials(d, ell):
    """Structural spaces of case B: A in spans of x^{d-1-i} * (y,z)^i for
    ell <= i <= d-1, B likewise with ell <= j <= d."""
    a_monos = [
        (d - 1 - i, ey, ez)
        for i in range(ell, d)
        for ey, ez in monomial_exponents(2, i)
    ]
    b_monos = [
        (d - j, ey, ez)
        for j in range(ell, d + 1)
        for ey, ez in monomial_exponents(2, j)
    ]
    return a_monos, b_monos


def _sample_point_off_p0(field, rng, directions):
    """Random plane point on a fresh line through p0 = (1:0:0)."""
    p = field.p
    for _ in range(64):
        coords = [field.rand(rng) for _ in range(3)]
        if not any(coords):
            continue
        lam, mu = coords[1], coords[2]
        if lam == 0 and mu == 0:
            continue  # that would be p0 itself
        if any((lam * m2 - l2 * mu) % p == 0 for l2, m2 in directions):
            continue
        return ProjectivePoint(field, coords), (lam, mu)
    raise GenericityExhausted("could not sample a fresh point")


def sample_case_b(field, d, ell, m, rng, retries=RETRY_BUDGET):
    """Fit A and B with order exactly ell at p0 through sampled points.

    Choosing A and B first would leave the intersection points of A = 0 and
    B = 0 irrational once ell < d-1; sampling the points first and fitting
    A and B through them keeps every base point rational.
    """
    if not 0 <= ell <= d - 2:
        raise ValueError(f"case B needs 0 <= ell <= {d - 2}, got {ell}")
    if not 0 <= m <= 2 * d - 2:
        raise ValueError(f"case B needs 0 <= m <= {2 * d - 2}, got {m}")
    a_monos, b_monos = case_b_monomials(d, ell)
    p0 = ProjectivePoint(field, [1, 0, 0])
    failure = None
    for _ in range(retries):
        try:
            directions = []
            shared = []
            for _ in range(m):
                q, direction = _sample_point_off_p0(field, rng, directions)
                directions.append(direction)
                shared.append(q)

            basis_a = forms_vanishing_at(field, a_monos, [(q, 1) for q in shared])
            if not basis_a:
                raise EmptyLinearSystem(
                    f"no form of the case-B shape (d={d}, ell={ell}) fits {m} points"
                )
            A = random_member(basis_a, rng)
            if vanishing_order_at(A, p0) != ell:
                raise MultiplicityFailure(f"order of A at p0 is not exactly {ell}")

            points = list(shared)
            for _ in range(2 * d - 2 - m):
                q, direction = _sample_point_off_p0(field, rng, directions)
                if A.eval(list(q.coords)) == 0:
                    raise MultiplicityFailure("extra point accidentally lies on A = 0")
                directions.append(direction)
                points.append(q)

            basis_b = forms_vanishing_at(field, b_monos, [(q, 1) for q in points])
            if not basis_b:
                raise EmptyLinearSystem(
                    f"no form of the case-B shape (d={d}, ell={ell}) fits {len(points)} points"
                )
            B = random_member(basis_b, rng)
            if vanishing_order_at(B, p0) != ell:
                raise MultiplicityFailure(f"order of B at p0 is not exactly {ell}")
            if trivariate_gcd(A, B).degree != 0:
                raise MultiplicityFailure("A and B share a component")

            config = PointConfiguration(d, p0, points)
            shape = make_gshape(A, B, None)
            assert vanishing_order_at(shape.g, origin_point(field)) == d - 1
            return shape, config
        except GenericityFailure as exc:
            failure = exc
            continue
    raise GenericityExhausted(f"case B sampling failed after {retries} attempts: {failure}")


@dataclass
class SpaceCremonaMap:
    g: Poly  # 4 variables (w,x,y,z), degree d
    t: tuple  # three trivariate forms of degree d
    plane_map: object  # PlaneCremonaMap
    recipe: Recipe


def _require(condition, hypothesis):
    if not condition:
        raise CriterionViolation(hypothesis)


def assemble(shape, plane, recipe):
    """Combine g = w*A + B with the plane map into the space transformation,
    re-checking every hypothesis of the birationality criterion."""
    d = recipe.d
    field = shape.A.field
    _require(plane.config.r == d, f"plane map degree {plane.config.r} != d = {d}")
    identity = [[1 if i == j else 0 for j in range(3)] for i in range(3)]
    _require(
        plane.normalization.rows == identity,
        "plane map must be built in coordinates with p0 = (1:0:0)",
    )
    _require(shape.A.degree == d - 1 and shape.A.nvars == 3, "A must have degree d-1")
    _require(shape.B.degree == d and shape.B.nvars == 3, "B must have degree d")
    for i, t in enumerate(plane.components, start=1):
        _require(t.nvars == 3 and t.degree == d, f"t{i} must be trivariate of degree {d}")
    _require(
        shape.g == make_gshape(shape.A, shape.B).g,
        "g must equal w*A + B",
    )
    _require(
        vanishing_order_at(shape.g, origin_point(field)) == d - 1,
        f"g must vanish to order exactly {d - 1} at (1:0:0:0)",
    )
    _require(
        trivariate_gcd(shape.A, shape.B).degree == 0,
        "g is reducible: A and B share a component",
    )
    if recipe.case == "A":
        _require(
            plane.witness.t1 == shape.B,
            "case A requires the plane map to use t1 = B",
        )
    for i, q in enumerate(plane.config.simple_points):
        on_a = shape.A.eval(list(q.coords)) == 0
        on_b = shape.B.eval(list(q.coords)) == 0
        if i < recipe.m:
            _require(on_a and on_b, f"base point {i + 1} must lie on both A = 0 and B = 0")
        else:
            _require(not on_a, f"point {i + 1} must avoid A = 0 (only the first {recipe.m} share it)")
    return SpaceCremonaMap(g=shape.g, t=tuple(plane.components), plane_map=plane, recipe=recipe)


def space_base_declaration(recipe, config):
    """Slice-plane base points with the multiplicities the recipe predicts:
    the line over p0 carries (d-1)^2 (case A) or ell*(d-1) (case B; a negative
    control when ell = 0), the lines over the m shared points carry 1."""
    d = recipe.d
    expected0 = (d - 1) ** 2 if recipe.case == "A" else recipe.ell * (d - 1)
    return [DeclaredBasePoint(config.p0, expected0)] + [
        DeclaredBasePoint(q, 1) for q in config.simple_points[: recipe.m]
    ]


def slice_members(smap, member_coeffs, slice_coeffs):
    """The two member surfaces cut by the plane w = slice_form(x,y,z),
    as trivariate forms of degree d."""
    field = smap.g.field
    parts = smap.g.as_univariate_in(0)
    B3, A3 = parts[0], parts[1]
    slice_form = Poly.from_terms(
        field, 3, 1,
        {(1, 0, 0): slice_coeffs[0], (0, 1, 0): slice_coeffs[1], (0, 0, 1): slice_coeffs[2]},
    )
    g_slice = slice_form.mul(A3).add(B3)
    members = []
    for coeffs in member_coeffs:
        member = g_slice.scale(coeffs[0]).add(net_member(smap.t, coeffs[1:]))
        members.append(member)
    return members


@dataclass
class SpaceCheck:
    member_coeffs: tuple  # two coefficient 4-tuples
    slice_coeffs: list  # the plane w = c1*x + c2*y + c3*z
    report: object  # IntersectionReport


def verify_space_bidegree(smap, rng, retries=RETRY_BUDGET):
    """Measure, on a random plane slice, how two random members of the linear
    system meet: the multiplicity table must match the recipe and the
    residual degree must equal e."""
    field = smap.g.field
    recipe = smap.recipe
    base = space_base_declaration(recipe, smap.plane_map.config)
    failure = None
    for _ in range(retries):
        slice_coeffs = [field.rand(rng) for _ in range(3)]
        if not any(slice_coeffs):
            continue
        a = [field.rand(rng) for _ in range(4)]
        b = [field.rand(rng) for _ in range(4)]
        if modmat.matrix_rank([a, b], field.p) != 2:
            continue
        first, second = slice_members(smap, (a, b), slice_coeffs)
        if first.is_zero() or second.is_zero():
            continue
        try:
            report = residual_intersection(first, second, base, rng)
        except CommonComponent as exc:
            failure = BidegreeMismatch(f"member slices share a component: {exc}")
            continue
        if check_against_expected(report, base) and report.residual == recipe.e:
            return SpaceCheck(member_coeffs=(a, b), slice_coeffs=slice_coeffs, report=report)
        failure = BidegreeMismatch(
            f"measured {[mult for _, mult in report.measured]} residual {report.residual}, "
            f"expected {[p.expected for p in base]} residual {recipe.e}"
        )
    if failure is None:
        failure = BidegreeMismatch("no usable member pair")
    raise failure


@dataclass
class BidegreeCertificate:
    prime: int
    seed: int
    recipe: Recipe
    shape: GShape
    config: PointConfiguration
    plane_map: object  # PlaneCremonaMap
    plane_check: object  # HomaloidalCheck
    space_check: SpaceCheck
    status: str
    attempts: int

    @property
    def d(self):
        return self.recipe.d

    @property
    def e(self):
        return self.recipe.e


def forge(d, e, seed=0, prime=DEFAULT_PRIME, retries=RETRY_BUDGET):
    """Construct and certify a transformation of bidegree (d, e).

    Deterministic: the whole pipeline draws from a generator derived from
    (seed, d, e, attempt), so identical inputs give identical certificates.
    """
    return forge_with_recipe(plan_bidegree(d, e), seed=seed, prime=prime, retries=retries)


def forge_with_recipe(recipe, seed=0, prime=DEFAULT_PRIME, retries=RETRY_BUDGET):
    """Like `forge`, but with the sampling recipe chosen by the caller (any
    admissible (ell, m) for a given e, not just the planner's pick)."""
    d, e = recipe.d, recipe.e
    field = PrimeField(prime)
    transcript = []
    for attempt in range(1, retries + 1):
        rng = make_rng(seed, "forge", d, e, attempt)
        try:
            if recipe.case == "A":
                shape, config = sample_case_a(field, d, recipe.m, rng)
                plane = build_de_jonquieres(config, rng, t1_override=shape.B)
            else:
                shape, config = sample_case_b(field, d, recipe.ell, recipe.m, rng)
                plane = build_de_jonquieres(config, rng)
            smap = assemble(shape, plane, recipe)
            plane_check = verify_plane_homaloidal(plane, rng)
            space_check = verify_space_bidegree(smap, rng)
        except (GenericityFailure, CriterionViolation, CommonComponent) as exc:
            transcript.append(f"attempt {attempt}: {type(exc).__name__}: {exc}")
            continue
        return BidegreeCertificate(
            prime=prime,
            seed=seed,
            recipe=recipe,
            shape=shape,
            config=config,
            plane_map=plane,
            plane_check=plane_check,
            space_check=space_check,
            status="verified",
            attempts=attempt,
        )
    raise ForgeExhausted(
        f"could not forge bidegree ({d}, {e}) in {retries} attempts", transcript
    )


def timed_forge(d, e, seed=0, prime=DEFAULT_PRIME, retries=RETRY_BUDGET):
    start = time.perf_counter()
    cert = forge(d, e, seed=seed, prime=prime, retries=retries)
    return cert, time.perf_counter() - start
