"""Plane de Jonquieres transformations: a degree-r map (t1 : y*f : z*f) built
from a base configuration of one (r-1)-fold point and 2r-2 simple points."""

from dataclasses import dataclass, field as dc_field

from . import modmat
from .errors import (
    CommonComponent,
    EmptyLinearSystem,
    FixedComponent,
    ForgeExhausted,
    GenericityExhausted,
    GenericityFailure,
    HomaloidalFailure,
    IrreducibilityFailure,
    MultiplicityFailure,
    OutOfRange,
)
from .field import DEFAULT_PRIME, PrimeField
from .seeds import make_rng
from .oracle import (
    DeclaredBasePoint,
    check_against_expected,
    residual_intersection,
)
from .poly import (
    LinearChange,
    Poly,
    ProjectivePoint,
    monomial_exponents,
    vanishing_order_at,
)
from .resultants import binary_gcd, trivariate_gcd, x_coefficient_forms

RETRY_BUDGET = 8


class PointConfiguration:
    """Base points of a degree-r de Jonquieres map: p0 with multiplicity r-1
    plus 2r-2 simple points, all pairwise distinct."""

    __slots__ = ("r", "p0", "simple_points")

    def __init__(self, r, p0, simple_points):
        if r < 2:
            raise ValueError(f"need r >= 2, got {r}")
        if len(p0) != 3 or any(len(q) != 3 for q in simple_points):
            raise ValueError("configuration points live in the plane")
        if len(simple_points) != 2 * r - 2:
            raise ValueError(f"need {2 * r - 2} simple points, got {len(simple_points)}")
        everything = [p0, *simple_points]
        if len(set(everything)) != len(everything):
            raise ValueError("configuration points must be pairwise distinct")
        # homaloidal bookkeeping for the multiplicity vector (r-1, 1, ..., 1)
        assert (r - 1) + (2 * r - 2) == 3 * (r - 1)
        assert (r - 1) ** 2 + (2 * r - 2) == r * r - 1
        self.r = r
        self.p0 = p0
        self.simple_points = list(simple_points)

    def conditions(self):
        return [(self.p0, self.r - 1)] + [(q, 1) for q in self.simple_points]


def forms_vanishing_at(field, monomials, conditions):
    """Basis of the forms in the span of `monomials` vanishing to the given
    orders: order >= m at P means that, after a change sending P to the first
    coordinate point, every coefficient with first-variable exponent above
    degree - m vanishes."""
    monomials = list(monomials)
    nvars = len(monomials[0])
    degree = sum(monomials[0])
    if any(len(e) != nvars or sum(e) != degree for e in monomials):
        raise ValueError("monomials must share arity and degree")
    rows = []
    for point, mult in conditions:
        if mult <= 0:
            continue
        change = LinearChange.completion_to_first(field, point)
        moved = [Poly.monomial(field, e).compose_linear(change.rows) for e in monomials]
        for target in monomial_exponents(nvars, degree):
            if target[0] > degree - mult:
                rows.append([g.coeff(target) for g in moved])
    kernel = modmat.nullspace(rows, field.p, ncols=len(monomials))
    return [
        Poly.from_terms(field, nvars, degree, dict(zip(monomials, vec)))
        for vec in kernel
    ]


def curves_through(field, degree, conditions):
    """Basis of all degree-n trivariate forms with the prescribed multiplicities."""
    return forms_vanishing_at(field, monomial_exponents(3, degree), conditions)


def random_member(basis, rng):
    """Random nonzero combination of a basis of forms."""
    field = basis[0].field
    for _ in range(32):
        out = Poly.zero(field, basis[0].nvars, basis[0].degree)
        for b in basis:
            out = out.add(b.scale(field.rand(rng)))
        if not out.is_zero():
            return out
    raise GenericityExhausted("could not draw a nonzero member")


def t1_shape_forms(t1):
    """(u_{r-1}, u_r) with t1 = x*u_{r-1}(y,z) + u_r(y,z); requires x-degree <= 1."""
    coeffs = x_coefficient_forms(t1)
    if any(not c.is_zero() for c in coeffs[2:]):
        raise MultiplicityFailure("t1 has x-degree above 1, so its order at p0 is too low")
    return coeffs[1], coeffs[0]


def _validate_t1(t1, r, p0n, simple_n):
    if t1.is_zero() or t1.degree != r:
        raise MultiplicityFailure(f"t1 must be a nonzero form of degree {r}")
    u_top, u_bot = t1_shape_forms(t1)
    order = vanishing_order_at(t1, p0n)
    if order != r - 1:
        raise MultiplicityFailure(f"order of t1 at p0 is {order}, need exactly {r - 1}")
    if binary_gcd(u_top, u_bot).degree != 0:
        raise IrreducibilityFailure(
            "t1 contains a line through p0 (its two shape forms share a factor)"
        )
    for q in simple_n:
        if t1.eval(list(q.coords)) != 0:
            raise MultiplicityFailure(f"t1 does not vanish at the simple point {q}")


@dataclass
class DeJonquieresWitness:
    """The two curves behind a de Jonquieres map, in coordinates with p0 = (1:0:0)."""

    r: int
    t1: Poly
    f: Poly

    def validate(self, p0n, simple_n):
        r = self.r
        _validate_t1(self.t1, r, p0n, simple_n)
        if self.f.is_zero() or self.f.degree != r - 1:
            raise MultiplicityFailure(f"f must be a nonzero form of degree {r - 1}")
        if r > 2 and vanishing_order_at(self.f, p0n) < r - 2:
            raise MultiplicityFailure(f"order of f at p0 is below {r - 2}")
        for q in simple_n:
            if self.f.eval(list(q.coords)) != 0:
                raise MultiplicityFailure(f"f does not vanish at the simple point {q}")
        if trivariate_gcd(self.t1, self.f).degree != 0:
            raise FixedComponent("t1 and f share a component")


@dataclass
class PlaneCremonaMap:
    """Components are in the original coordinates; the witness lives in the
    normalized coordinates reached through `normalization`."""

    components: tuple  # (t1, t2, t3) with t2 = y*f, t3 = z*f after normalization
    witness: DeJonquieresWitness
    config: PointConfiguration
    normalization: LinearChange
    warnings: list = dc_field(default_factory=list)


def build_de_jonquieres(config, rng, t1_override=None):
    field = config.p0.field
    r = config.r
    norm = LinearChange.completion_to_first(field, config.p0)
    p0n = norm.new_coords(config.p0)
    simple_n = [norm.new_coords(q) for q in config.simple_points]
    warnings = []

    simple_conditions = [(q, 1) for q in simple_n]
    if t1_override is not None:
        t1 = norm.apply_to(t1_override)
        _validate_t1(t1, r, p0n, simple_n)
    else:
        basis = curves_through(field, r, [(p0n, r - 1)] + simple_conditions)
        if not basis:
            raise EmptyLinearSystem(f"no degree-{r} curve fits the configuration")
        failure = None
        t1 = None
        for _ in range(RETRY_BUDGET):
            candidate = random_member(basis, rng)
            try:
                _validate_t1(candidate, r, p0n, simple_n)
            except GenericityFailure as exc:
                failure = exc
                continue
            t1 = candidate
            break
        if t1 is None:
            raise failure

    f_basis = curves_through(field, r - 1, [(p0n, r - 2)] + simple_conditions)
    if not f_basis:
        raise EmptyLinearSystem(f"no degree-{r - 1} curve fits the configuration")
    if len(f_basis) == 1:
        f = f_basis[0]
    else:
        f = random_member(f_basis, rng)
        warnings.append(
            f"the linear system for f has dimension {len(f_basis)}, expected 1"
        )

    witness = DeJonquieresWitness(r=r, t1=t1, f=f)
    witness.validate(p0n, simple_n)

    t2 = Poly.monomial(field, (0, 1, 0)).mul(f)
    t3 = Poly.monomial(field, (0, 0, 1)).mul(f)
    back = norm.inverse_rows
    components = tuple(c.compose_linear(back) for c in (t1, t2, t3))
    return PlaneCremonaMap(components, witness, config, norm, warnings)


def net_member(components, coeffs):
    out = components[0].scale(coeffs[0])
    for c, a in zip(components[1:], coeffs[1:]):
        out = out.add(c.scale(a))
    return out


def plane_base_declaration(config):
    r = config.r
    return [DeclaredBasePoint(config.p0, (r - 1) ** 2)] + [
        DeclaredBasePoint(q, 1) for q in config.simple_points
    ]


@dataclass
class HomaloidalCheck:
    member_coeffs: tuple  # two coefficient triples
    report: object  # IntersectionReport


def verify_plane_homaloidal(pmap, rng, retries=RETRY_BUDGET):
    """Certify the net is homaloidal: two random members meet with multiplicity
    (r-1)^2 at p0, 1 at each simple point, and exactly 1 residual point."""
    field = pmap.config.p0.field
    base = plane_base_declaration(pmap.config)
    failure = None
    for _ in range(retries):
        a = [field.rand(rng) for _ in range(3)]
        b = [field.rand(rng) for _ in range(3)]
        if modmat.matrix_rank([a, b], field.p) != 2:
            continue
        first = net_member(pmap.components, a)
        second = net_member(pmap.components, b)
        try:
            report = residual_intersection(first, second, base, rng)
        except CommonComponent as exc:
            failure = HomaloidalFailure(f"members share a component: {exc}")
            continue
        if check_against_expected(report, base) and report.residual == 1:
            return HomaloidalCheck(member_coeffs=(a, b), report=report)
        failure = HomaloidalFailure(
            f"measured {[m for _, m in report.measured]} residual {report.residual}, "
            f"expected {[d.expected for d in base]} residual 1"
        )
    raise failure if failure is not None else HomaloidalFailure("no usable member pair")


def _random_point(field, rng, n=3):
    while True:
        coords = [field.rand(rng) for _ in range(n)]
        if any(coords):
            return ProjectivePoint(field, coords)


def random_configuration(field, r, rng):
    """A random configuration: any p0, simple points pairwise distinct and on
    pairwise distinct lines through p0 (a line through p0 meets a degree-r
    member in a single point off p0, so two simple points on it would be
    unreachable)."""
    if r < 2:
        raise OutOfRange(f"de Jonquieres maps need degree r >= 2, got {r}")
    p0 = _random_point(field, rng)
    norm = LinearChange.completion_to_first(field, p0)
    points = []
    directions = []
    attempts = 0
    while len(points) < 2 * r - 2:
        attempts += 1
        if attempts > 64 * (2 * r - 2):
            raise GenericityExhausted("could not sample a configuration")
        q = _random_point(field, rng)
        if q == p0 or q in points:
            continue
        moved = norm.new_coords(q)
        lam, mu = moved.coords[1], moved.coords[2]
        if any((lam * m - l * mu) % field.p == 0 for l, m in directions):
            continue
        points.append(q)
        directions.append((lam, mu))
    return PointConfiguration(r, p0, points)


def build_random_plane_map(field, r, rng, retries=RETRY_BUDGET):
    """Sample configurations until one builds and certifies; CLI entry point."""
    failure = None
    for _ in range(retries):
        try:
            config = random_configuration(field, r, rng)
            pmap = build_de_jonquieres(config, rng)
            check = verify_plane_homaloidal(pmap, rng)
            return pmap, check
        except GenericityFailure as exc:
            failure = exc
    raise GenericityExhausted(f"no valid degree-{r} map in {retries} attempts: {failure}")


@dataclass
class PlaneCertificate:
    prime: int
    seed: int
    r: int
    plane_map: PlaneCremonaMap
    plane_check: HomaloidalCheck
    status: str
    attempts: int


def forge_plane(r, seed=0, prime=DEFAULT_PRIME, retries=RETRY_BUDGET):
    """Construct and certify a random plane de Jonquieres map of degree r.

    Deterministic in (r, seed, prime), like the space pipeline.
    """
    if r < 2:
        raise OutOfRange(f"de Jonquieres maps need degree r >= 2, got {r}")
    field = PrimeField(prime)
    transcript = []
    for attempt in range(1, retries + 1):
        rng = make_rng(seed, "plane", r, attempt)
        try:
            config = random_configuration(field, r, rng)
            pmap = build_de_jonquieres(config, rng)
            check = verify_plane_homaloidal(pmap, rng)
        except (GenericityFailure, CommonComponent) as exc:
            transcript.append(f"attempt {attempt}: {type(exc).__name__}: {exc}")
            continue
        return PlaneCertificate(
            prime=prime,
            seed=seed,
            r=r,
            plane_map=pmap,
            plane_check=check,
            status="verified",
            attempts=attempt,
        )
    raise ForgeExhausted(
        f"could not build a degree-{r} plane map in {retries} attempts", transcript
    )
