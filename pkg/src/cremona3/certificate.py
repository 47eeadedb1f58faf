"""Certificate serialization and stand-alone verification.

A certificate is a canonical JSON document carrying the transformation, its
base configuration, and the raw data of both intersection measurements (the
member coefficients and the two coordinate changes of each). Verification
replays those measurements with the stored data only; it never samples, so
it needs no random source and accepts or rejects deterministically.

Numeric conventions: field elements, the prime, the seed, point coordinates,
and matrix entries are decimal strings (they can approach the prime in size);
structural counts (degrees, multiplicities, exponents, residuals) are JSON
integers.
"""

import json

from .errors import CremonaError, MalformedCertificate
from .field import PrimeField
from .oracle import DeclaredBasePoint, replay_intersection
from .plane import (
    DeJonquieresWitness,
    PlaneCertificate,
    PointConfiguration,
    net_member,
    plane_base_declaration,
)
from .poly import BinaryForm, LinearChange, Poly, ProjectivePoint, vanishing_order_at
from .resultants import trivariate_gcd
from .space import (
    BidegreeCertificate,
    Recipe,
    SpaceCremonaMap,
    make_gshape,
    origin_point,
    slice_members,
    space_base_declaration,
)

FORMAT_VERSION = 1

SPACE_KEYS = {
    "format_version", "kind", "prime", "seed", "d", "e", "attempts", "recipe",
    "points", "polynomials", "a_factors", "normalization_matrix", "warnings",
    "plane_report", "space_report", "status",
}
PLANE_KEYS = {
    "format_version", "kind", "prime", "seed", "r", "attempts", "points",
    "polynomials", "normalization_matrix", "warnings", "plane_report", "status",
}
REPORT_KEYS = {
    "member_coeffs", "table", "residual", "total_degree",
    "linear_change", "confirm_change", "attempts",
}


def canonical_json(data):
    return json.dumps(data, sort_keys=True, indent=2) + "\n"


def _poly_record(poly):
    return [{"exponents": list(e), "coeff": str(c)} for e, c in poly.sorted_terms()]


def _point_record(point):
    return [str(c) for c in point.coords]


def _matrix_record(rows):
    return [[str(v) for v in row] for row in rows]


def _report_record(check, base, slice_coeffs=None):
    rep = check.report
    record = {
        "member_coeffs": [[str(c) for c in coeffs] for coeffs in check.member_coeffs],
        "table": [
            {"point": _point_record(b.point), "expected": b.expected, "measured": m}
            for b, (_, m) in zip(base, rep.measured)
        ],
        "residual": rep.residual,
        "total_degree": rep.total_degree,
        "linear_change": _matrix_record(rep.linear_change.rows),
        "confirm_change": _matrix_record(rep.confirm_change.rows),
        "attempts": rep.attempts,
    }
    if slice_coeffs is not None:
        record["slice_form"] = [str(c) for c in slice_coeffs]
    return record


def certificate_to_data(cert):
    if isinstance(cert, PlaneCertificate):
        pmap = cert.plane_map
        config = pmap.config
        return {
            "format_version": FORMAT_VERSION,
            "kind": "plane",
            "prime": str(cert.prime),
            "seed": str(cert.seed),
            "r": cert.r,
            "attempts": cert.attempts,
            "points": [_point_record(config.p0)]
            + [_point_record(q) for q in config.simple_points],
            "polynomials": {
                "t1": _poly_record(pmap.components[0]),
                "t2": _poly_record(pmap.components[1]),
                "t3": _poly_record(pmap.components[2]),
                "f": _poly_record(pmap.witness.f),
            },
            "normalization_matrix": _matrix_record(pmap.normalization.rows),
            "warnings": list(pmap.warnings),
            "plane_report": _report_record(cert.plane_check, plane_base_declaration(config)),
            "status": cert.status,
        }
    if not isinstance(cert, BidegreeCertificate):
        raise TypeError(f"cannot serialize {type(cert).__name__}")
    recipe = cert.recipe
    pmap = cert.plane_map
    config = cert.config
    a_factors = None
    if cert.shape.a_factors is not None:
        a_factors = [[str(c) for c in form.coeffs] for form in cert.shape.a_factors]
    return {
        "format_version": FORMAT_VERSION,
        "kind": "space",
        "prime": str(cert.prime),
        "seed": str(cert.seed),
        "d": recipe.d,
        "e": recipe.e,
        "attempts": cert.attempts,
        "recipe": {"case": recipe.case, "ell": recipe.ell, "m": recipe.m},
        "points": [_point_record(config.p0)]
        + [_point_record(q) for q in config.simple_points],
        "polynomials": {
            "A": _poly_record(cert.shape.A),
            "B": _poly_record(cert.shape.B),
            "g": _poly_record(cert.shape.g),
            "t1": _poly_record(pmap.components[0]),
            "t2": _poly_record(pmap.components[1]),
            "t3": _poly_record(pmap.components[2]),
            "f": _poly_record(pmap.witness.f),
        },
        "a_factors": a_factors,
        "normalization_matrix": _matrix_record(pmap.normalization.rows),
        "warnings": list(pmap.warnings),
        "plane_report": _report_record(cert.plane_check, plane_base_declaration(config)),
        "space_report": _report_record(
            cert.space_check,
            space_base_declaration(recipe, config),
            slice_coeffs=cert.space_check.slice_coeffs,
        ),
        "status": cert.status,
    }


def serialize_certificate(cert):
    return canonical_json(certificate_to_data(cert))


# ---------------------------------------------------------------------------
# structural validation (shape and types only; anything else is semantic)

def _need(condition, message):
    if not condition:
        raise MalformedCertificate(message)


def _is_int(v):
    return isinstance(v, int) and not isinstance(v, bool)


def _need_decimal(v, where):
    _need(isinstance(v, str) and v.isdigit(), f"{where} must be a decimal string")


def _need_int(v, where):
    _need(_is_int(v), f"{where} must be an integer")


def _need_keys(obj, keys, where):
    _need(isinstance(obj, dict), f"{where} must be an object")
    _need(set(obj) == keys, f"{where} must have exactly the keys {sorted(keys)}")


def _validate_point(v, where):
    _need(isinstance(v, list) and len(v) in (3, 4), f"{where} must be a coordinate list")
    for c in v:
        _need_decimal(c, where)


def _validate_matrix(v, n, where):
    _need(isinstance(v, list) and len(v) == n, f"{where} must be a {n}x{n} matrix")
    for row in v:
        _need(isinstance(row, list) and len(row) == n, f"{where} must be a {n}x{n} matrix")
        for entry in row:
            _need_decimal(entry, where)


def _validate_poly_record(record, nvars, where):
    _need(isinstance(record, list) and record, f"{where} must be a nonempty term list")
    for entry in record:
        _need_keys(entry, {"exponents", "coeff"}, f"a term of {where}")
        exps = entry["exponents"]
        _need(
            isinstance(exps, list) and len(exps) == nvars,
            f"{where} needs exponent lists of length {nvars}",
        )
        for e in exps:
            _need(_is_int(e) and e >= 0, f"{where} exponents must be nonnegative integers")
        _need_decimal(entry["coeff"], f"a coefficient of {where}")


def _validate_report(report, ncoeffs, where, with_slice):
    keys = REPORT_KEYS | {"slice_form"} if with_slice else REPORT_KEYS
    _need_keys(report, keys, where)
    coeffs = report["member_coeffs"]
    _need(
        isinstance(coeffs, list) and len(coeffs) == 2,
        f"{where}.member_coeffs must list two members",
    )
    for member in coeffs:
        _need(
            isinstance(member, list) and len(member) == ncoeffs,
            f"{where}.member_coeffs entries must have {ncoeffs} coefficients",
        )
        for c in member:
            _need_decimal(c, f"{where}.member_coeffs")
    _need(isinstance(report["table"], list) and report["table"], f"{where}.table must be a nonempty list")
    for row in report["table"]:
        _need_keys(row, {"point", "expected", "measured"}, f"a row of {where}.table")
        _validate_point(row["point"], f"a point in {where}.table")
        _need(len(row["point"]) == 3, f"{where}.table points must be plane points")
        _need_int(row["expected"], f"{where}.table expected")
        _need_int(row["measured"], f"{where}.table measured")
    _need_int(report["residual"], f"{where}.residual")
    _need_int(report["total_degree"], f"{where}.total_degree")
    _validate_matrix(report["linear_change"], 3, f"{where}.linear_change")
    _validate_matrix(report["confirm_change"], 3, f"{where}.confirm_change")
    _need_int(report["attempts"], f"{where}.attempts")
    if with_slice:
        slice_form = report["slice_form"]
        _need(
            isinstance(slice_form, list) and len(slice_form) == 3,
            f"{where}.slice_form must have three coefficients",
        )
        for c in slice_form:
            _need_decimal(c, f"{where}.slice_form")


def load_certificate(text):
    """Parse and structurally validate certificate JSON.

    Raises MalformedCertificate on parse errors, missing or extra fields, and
    wrong types. Everything value-dependent (degrees, vanishing, replayed
    multiplicities) is left to `verification_failures`.
    """
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise MalformedCertificate(f"not valid JSON: {exc}") from None
    _need(isinstance(data, dict), "certificate must be a JSON object")
    kind = data.get("kind")
    _need(kind in ("space", "plane"), "kind must be 'space' or 'plane'")
    _need_keys(data, SPACE_KEYS if kind == "space" else PLANE_KEYS, "certificate")
    _need(data["format_version"] == FORMAT_VERSION,
          f"unsupported format_version {data['format_version']!r}")
    _need_decimal(data["prime"], "prime")
    _need_decimal(data["seed"], "seed")
    _need_int(data["attempts"], "attempts")
    _need(isinstance(data["status"], str), "status must be a string")
    _need(isinstance(data["warnings"], list), "warnings must be a list")
    for w in data["warnings"]:
        _need(isinstance(w, str), "warnings must be strings")
    _need(isinstance(data["points"], list) and data["points"], "points must be a nonempty list")
    for pt in data["points"]:
        _validate_point(pt, "a configuration point")
        _need(len(pt) == 3, "configuration points must be plane points")
    _validate_matrix(data["normalization_matrix"], 3, "normalization_matrix")

    polys = data["polynomials"]
    if kind == "space":
        _need_int(data["d"], "d")
        _need_int(data["e"], "e")
        _need_keys(data["recipe"], {"case", "ell", "m"}, "recipe")
        _need(isinstance(data["recipe"]["case"], str), "recipe.case must be a string")
        _need(data["recipe"]["ell"] is None or _is_int(data["recipe"]["ell"]),
              "recipe.ell must be an integer or null")
        _need_int(data["recipe"]["m"], "recipe.m")
        _need_keys(polys, {"A", "B", "g", "t1", "t2", "t3", "f"}, "polynomials")
        for name in ("A", "B", "t1", "t2", "t3", "f"):
            _validate_poly_record(polys[name], 3, f"polynomials.{name}")
        _validate_poly_record(polys["g"], 4, "polynomials.g")
        factors = data["a_factors"]
        if factors is not None:
            _need(isinstance(factors, list) and factors, "a_factors must be null or a nonempty list")
            for coeffs in factors:
                _need(isinstance(coeffs, list) and coeffs, "each a_factor is a coefficient list")
                for c in coeffs:
                    _need_decimal(c, "a_factors")
        _validate_report(data["plane_report"], 3, "plane_report", with_slice=False)
        _validate_report(data["space_report"], 4, "space_report", with_slice=True)
    else:
        _need_int(data["r"], "r")
        _need_keys(polys, {"t1", "t2", "t3", "f"}, "polynomials")
        for name in ("t1", "t2", "t3", "f"):
            _validate_poly_record(polys[name], 3, f"polynomials.{name}")
        _validate_report(data["plane_report"], 3, "plane_report", with_slice=False)
    return data


# ---------------------------------------------------------------------------
# semantic verification by replay

def _parse_poly(field, record, nvars, degree):
    terms = {}
    for entry in record:
        terms[tuple(entry["exponents"])] = int(entry["coeff"])
    return Poly.from_terms(field, nvars, degree, terms)


def _parse_points(field, records):
    return [ProjectivePoint(field, [int(c) for c in r]) for r in records]


def _parse_matrix(field, record):
    return [[int(v) for v in row] for row in record]


def _replay_report(field, report, members, base, failures, label, expected_residual):
    """Re-run one stored measurement; append mismatches to `failures`."""
    table = report["table"]
    if len(table) != len(base):
        failures.append(f"{label}.table has {len(table)} rows, expected {len(base)}")
        return
    for i, (row, b) in enumerate(zip(table, base)):
        point = ProjectivePoint(field, [int(c) for c in row["point"]])
        if point != b.point:
            failures.append(f"{label}.table row {i} lists the wrong point")
        if row["expected"] != b.expected:
            failures.append(
                f"{label}.table row {i} expects {row['expected']}, the recipe predicts {b.expected}"
            )
    first = LinearChange(field, _parse_matrix(field, report["linear_change"]))
    confirm = LinearChange(field, _parse_matrix(field, report["confirm_change"]))
    replay = replay_intersection(members[0], members[1], base, first, confirm)
    if replay.total_degree != report["total_degree"]:
        failures.append(
            f"{label}.total_degree is {report['total_degree']}, replay gives {replay.total_degree}"
        )
    for i, ((_, measured), row) in enumerate(zip(replay.measured, table)):
        if measured != row["measured"]:
            failures.append(
                f"{label}.table row {i} stores measured {row['measured']}, replay gives {measured}"
            )
        if measured != row["expected"]:
            failures.append(
                f"{label}.table row {i} measures {measured}, expected {row['expected']}"
            )
    if replay.residual != report["residual"]:
        failures.append(
            f"{label}.residual is {report['residual']}, replay gives {replay.residual}"
        )
    if replay.residual != expected_residual:
        failures.append(
            f"{label} residual degree is {replay.residual}, must be {expected_residual}"
        )


def _monomial(field, exps):
    return Poly.monomial(field, exps)


def _check_witness(field, data, r, components, f, config, failures):
    """Witness checks in the normalized coordinates (p0 at (1:0:0))."""
    norm = LinearChange(field, _parse_matrix(field, data["normalization_matrix"]))
    moved = [t.compose_linear(norm.rows) for t in components]
    p0n = norm.new_coords(config.p0)
    simple_n = [norm.new_coords(q) for q in config.simple_points]
    witness = DeJonquieresWitness(r=r, t1=moved[0], f=f)
    witness.validate(p0n, simple_n)
    y = _monomial(field, (0, 1, 0))
    z = _monomial(field, (0, 0, 1))
    if moved[1] != y.mul(f):
        failures.append("t2 is not y*f in the normalized coordinates")
    if moved[2] != z.mul(f):
        failures.append("t3 is not z*f in the normalized coordinates")
    return norm


def _space_failures(data, failures):
    field = PrimeField(int(data["prime"]))
    recipe = Recipe(
        d=data["d"],
        e=data["e"],
        case=data["recipe"]["case"],
        ell=data["recipe"]["ell"],
        m=data["recipe"]["m"],
    )
    d, m = recipe.d, recipe.m

    A = _parse_poly(field, data["polynomials"]["A"], 3, d - 1)
    B = _parse_poly(field, data["polynomials"]["B"], 3, d)
    g = _parse_poly(field, data["polynomials"]["g"], 4, d)
    components = tuple(
        _parse_poly(field, data["polynomials"][name], 3, d) for name in ("t1", "t2", "t3")
    )
    f = _parse_poly(field, data["polynomials"]["f"], 3, d - 1)

    points = _parse_points(field, data["points"])
    config = PointConfiguration(d, points[0], points[1:])

    identity = [[1 if i == j else 0 for j in range(3)] for i in range(3)]
    if _parse_matrix(field, data["normalization_matrix"]) != identity:
        failures.append("space certificates must be built with p0 = (1:0:0)")
        return

    if g != make_gshape(A, B).g:
        failures.append("g != w*A + B")
        return
    if vanishing_order_at(g, origin_point(field)) != d - 1:
        failures.append(f"g does not vanish to order exactly {d - 1} at (1:0:0:0)")
    if trivariate_gcd(A, B).degree != 0:
        failures.append("A and B share a component, so g is reducible")

    _check_witness(field, data, d, components, f, config, failures)

    if recipe.case == "A":
        factors = data["a_factors"]
        if factors is None:
            failures.append("case A certificates must list the linear factors of A")
        else:
            forms = [BinaryForm(field, [int(c) for c in coeffs]) for coeffs in factors]
            if any(form.degree != 1 for form in forms) or len(forms) != d - 1:
                failures.append(f"a_factors must be {d - 1} linear forms")
            else:
                product = BinaryForm(field, [1])
                for form in forms:
                    product = product.mul(form)
                if product.lift(3, 1, 2) != A:
                    failures.append("A is not the product of its listed linear factors")
        if any(e[0] > 1 for e in B.terms):
            failures.append("case A needs B = x*B_{d-1}(y,z) + B_d(y,z)")
        if components[0] != B:
            failures.append("case A requires t1 = B")
    else:
        ell = recipe.ell
        if data["a_factors"] is not None:
            failures.append("case B certificates carry no a_factors")
        if any(e[0] > d - 1 - ell for e in A.terms):
            failures.append(f"A has a term of x-degree above {d - 1 - ell}")
        if any(e[0] > d - ell for e in B.terms):
            failures.append(f"B has a term of x-degree above {d - ell}")
        if vanishing_order_at(A, config.p0) != ell:
            failures.append(f"A does not vanish to order exactly {ell} at p0")
        if vanishing_order_at(B, config.p0) != ell:
            failures.append(f"B does not vanish to order exactly {ell} at p0")

    for i, q in enumerate(config.simple_points):
        coords = list(q.coords)
        if B.eval(coords) != 0:
            failures.append(f"simple point {i + 1} does not lie on B = 0")
        on_a = A.eval(coords) == 0
        if i < m and not on_a:
            failures.append(f"simple point {i + 1} must lie on A = 0")
        if i >= m and on_a:
            failures.append(f"simple point {i + 1} must avoid A = 0")

    plane_report = data["plane_report"]
    plane_members = [
        net_member(components, [int(c) for c in coeffs])
        for coeffs in plane_report["member_coeffs"]
    ]
    _replay_report(
        field,
        plane_report,
        plane_members,
        plane_base_declaration(config),
        failures,
        "plane_report",
        expected_residual=1,
    )

    smap = SpaceCremonaMap(g=g, t=components, plane_map=None, recipe=recipe)
    report = data["space_report"]
    slice_coeffs = [int(c) for c in report["slice_form"]]
    member_coeffs = [[int(c) for c in coeffs] for coeffs in report["member_coeffs"]]
    _replay_report(
        field,
        report,
        slice_members(smap, member_coeffs, slice_coeffs),
        space_base_declaration(recipe, config),
        failures,
        "space_report",
        expected_residual=recipe.e,
    )


def _plane_failures(data, failures):
    field = PrimeField(int(data["prime"]))
    r = data["r"]
    if r < 2:
        failures.append(f"plane certificates need r >= 2, got {r}")
        return
    components = tuple(
        _parse_poly(field, data["polynomials"][name], 3, r) for name in ("t1", "t2", "t3")
    )
    f = _parse_poly(field, data["polynomials"]["f"], 3, r - 1)
    points = _parse_points(field, data["points"])
    config = PointConfiguration(r, points[0], points[1:])
    _check_witness(field, data, r, components, f, config, failures)
    plane_report = data["plane_report"]
    plane_members = [
        net_member(components, [int(c) for c in coeffs])
        for coeffs in plane_report["member_coeffs"]
    ]
    _replay_report(
        field,
        plane_report,
        plane_members,
        plane_base_declaration(config),
        failures,
        "plane_report",
        expected_residual=1,
    )


def verification_failures(data):
    """All reasons the certificate fails to verify (empty = verified)."""
    failures = []
    if data["status"] != "verified":
        failures.append(f"status is {data['status']!r}, not 'verified'")
    try:
        if data["kind"] == "space":
            _space_failures(data, failures)
        else:
            _plane_failures(data, failures)
    except (CremonaError, ValueError) as exc:
        failures.append(f"{type(exc).__name__}: {exc}")
    return failures


def verify_certificate(source):
    """True iff the certificate text (or pre-loaded data) replays cleanly."""
    data = load_certificate(source) if isinstance(source, str) else source
    return not verification_failures(data)
