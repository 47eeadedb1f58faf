"""Intersection oracle: measure how the intersection of two plane curves
distributes over declared base points, by exact eliminant computation.

The eliminant conflates intersection points that share a (y:z) projection,
so every measurement is run under two independent random coordinate changes
and must agree; disagreement triggers a retry with fresh changes.
"""

from dataclasses import dataclass

from .errors import (
    BadLeadingCoefficient,
    GenericityExhausted,
    MultiplicityFailure,
    UnusableChange,
    ZeroPolynomial,
)
from .poly import LinearChange, ProjectivePoint
from .resultants import binary_root_multiplicity, eliminant

RETRY_BUDGET = 8


@dataclass(frozen=True)
class DeclaredBasePoint:
    """A base point with the multiplicity the caller expects to measure.

    expected 0 is allowed and acts as a negative control: the point is
    declared absent and the oracle must find nothing there.
    """

    point: ProjectivePoint
    expected: int


@dataclass
class IntersectionReport:
    total_degree: int
    measured: list  # (ProjectivePoint, multiplicity), aligned with the query
    residual: int
    linear_change: LinearChange
    confirm_change: LinearChange
    attempts: int


def _check_query(F, G, base):
    if F.is_zero() or G.is_zero():
        raise ZeroPolynomial("intersection of a zero curve")
    if F.nvars != 3 or G.nvars != 3:
        raise ValueError("curves must be trivariate")
    points = [b.point for b in base]
    if len(set(points)) != len(points):
        raise ValueError("declared base points must be pairwise distinct")


def measure_with_change(F, G, base, change):
    """Measured multiplicities and residual under one specific coordinate change.

    Deterministic; raises UnusableChange when this particular change cannot
    separate the data (bad leading coefficient, a point at the projection
    center, or two points sharing a projection direction).
    """
    p = F.field.p
    directions = []
    for b in base:
        Q = change.new_coords(b.point)
        lam, mu = Q.coords[1], Q.coords[2]
        if lam == 0 and mu == 0:
            raise UnusableChange("a base point lands on the projection center")
        directions.append((lam, mu))
    for i in range(len(directions)):
        for j in range(i + 1, len(directions)):
            li, mi = directions[i]
            lj, mj = directions[j]
            if (li * mj - lj * mi) % p == 0:
                raise UnusableChange("two base points share a projection direction")
    try:
        R = eliminant(change.apply_to(F), change.apply_to(G))
    except BadLeadingCoefficient as exc:
        raise UnusableChange(str(exc)) from exc
    measured = [binary_root_multiplicity(R, direction) for direction in directions]
    residual = R.degree - sum(measured)
    return measured, residual


def residual_intersection(F, G, base, rng, retries=RETRY_BUDGET):
    """Measure multiplicities at the declared points and the residual degree.

    Runs the measurement under two independent random changes and requires
    agreement; retries with fresh changes on any genericity failure.
    CommonComponent propagates immediately (no change can cure it).
    """
    _check_query(F, G, base)
    field = F.field
    total = F.degree * G.degree
    for attempt in range(1, retries + 1):
        first = LinearChange.random(field, 3, rng)
        confirm = LinearChange.random(field, 3, rng)
        try:
            measured, residual = measure_with_change(F, G, base, first)
            check, _ = measure_with_change(F, G, base, confirm)
        except UnusableChange:
            continue
        if measured != check:
            continue
        return IntersectionReport(
            total_degree=total,
            measured=list(zip((b.point for b in base), measured)),
            residual=residual,
            linear_change=first,
            confirm_change=confirm,
            attempts=attempt,
        )
    raise GenericityExhausted(
        f"no usable coordinate change in {retries} attempts "
        f"(degrees {F.degree}x{G.degree}, {len(base)} base points)"
    )


def replay_intersection(F, G, base, first, confirm):
    """Recompute a measurement under two stored changes; fully deterministic."""
    _check_query(F, G, base)
    measured, residual = measure_with_change(F, G, base, first)
    check, _ = measure_with_change(F, G, base, confirm)
    if measured != check:
        raise MultiplicityFailure("stored coordinate changes disagree")
    return IntersectionReport(
        total_degree=F.degree * G.degree,
        measured=list(zip((b.point for b in base), measured)),
        residual=residual,
        linear_change=first,
        confirm_change=confirm,
        attempts=1,
    )


def check_against_expected(report, base):
    """True iff every measured multiplicity equals its declared expectation."""
    return all(m == b.expected for (_, m), b in zip(report.measured, base))
