"""Sparse homogeneous polynomials, projective points, and coordinate changes over F_p."""

from . import modmat
from .errors import (
    ArityMismatch,
    DegreeMismatch,
    SingularChange,
    ZeroForm,
    ZeroPolynomial,
)

VAR_NAMES = {2: ("y", "z"), 3: ("x", "y", "z"), 4: ("w", "x", "y", "z")}


def monomial_exponents(nvars, degree):
    """Yield all exponent tuples of the given total degree, lex descending."""
    if nvars == 1:
        yield (degree,)
        return
    for first in range(degree, -1, -1):
        for rest in monomial_exponents(nvars - 1, degree - first):
            yield (first,) + rest


class Poly:
    """Homogeneous polynomial, stored as a dict from exponent tuple to coefficient.

    Coefficients live in [0, p).  The degree is carried explicitly so the zero
    polynomial of a given degree is representable.
    """

    __slots__ = ("field", "nvars", "degree", "terms")

    def __init__(self, field, nvars, degree, terms):
        # internal constructor; terms must already be normalized
        self.field = field
        self.nvars = nvars
        self.degree = degree
        self.terms = terms

    @classmethod
    def zero(cls, field, nvars, degree):
        return cls(field, nvars, degree, {})

    @classmethod
    def from_terms(cls, field, nvars, degree, mapping):
        terms = {}
        for exps, c in mapping.items():
            exps = tuple(int(e) for e in exps)
            if len(exps) != nvars:
                raise ArityMismatch(f"exponent tuple {exps} has arity {len(exps)}, expected {nvars}")
            if any(e < 0 for e in exps) or sum(exps) != degree:
                raise DegreeMismatch(f"term {exps} is not homogeneous of degree {degree}")
            c = field.normalize(c)
            if c:
                terms[exps] = c
        return cls(field, nvars, degree, terms)

    @classmethod
    def monomial(cls, field, exps, coeff=1):
        exps = tuple(int(e) for e in exps)
        return cls.from_terms(field, len(exps), sum(exps), {exps: coeff})

    def is_zero(self):
        return not self.terms

    def coeff(self, exps):
        return self.terms.get(tuple(exps), 0)

    def sorted_terms(self):
        """Terms in graded-lex descending order (the canonical print order)."""
        return sorted(self.terms.items(), key=lambda t: t[0], reverse=True)

    def _check_like(self, other):
        if self.nvars != other.nvars:
            raise ArityMismatch(f"{self.nvars} variables vs {other.nvars}")
        if self.degree != other.degree:
            raise DegreeMismatch(f"degree {self.degree} vs {other.degree}")

    def add(self, other):
        self._check_like(other)
        p = self.field.p
        terms = dict(self.terms)
        for exps, c in other.terms.items():
            s = (terms.get(exps, 0) + c) % p
            if s:
                terms[exps] = s
            else:
                terms.pop(exps, None)
        return Poly(self.field, self.nvars, self.degree, terms)

    def neg(self):
        p = self.field.p
        return Poly(self.field, self.nvars, self.degree,
                    {e: -c % p for e, c in self.terms.items()})

    def sub(self, other):
        return self.add(other.neg())

    def scale(self, c):
        c = self.field.normalize(c)
        if c == 0:
            return Poly.zero(self.field, self.nvars, self.degree)
        p = self.field.p
        return Poly(self.field, self.nvars, self.degree,
                    {e: k * c % p for e, k in self.terms.items()})

    def mul(self, other):
        if self.nvars != other.nvars:
            raise ArityMismatch(f"{self.nvars} variables vs {other.nvars}")
        p = self.field.p
        terms = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                s = (terms.get(e, 0) + c1 * c2) % p
                if s:
                    terms[e] = s
                else:
                    terms.pop(e, None)
        return Poly(self.field, self.nvars, self.degree + other.degree, terms)

    def pow(self, k):
        out = Poly.monomial(self.field, (0,) * self.nvars)
        for _ in range(k):
            out = out.mul(self)
        return out

    def eval(self, coords):
        if len(coords) != self.nvars:
            raise ArityMismatch(f"point has {len(coords)} coordinates, expected {self.nvars}")
        p = self.field.p
        coords = [c % p for c in coords]
        total = 0
        for exps, c in self.terms.items():
            v = c
            for x, e in zip(coords, exps):
                if e:
                    v = v * pow(x, e, p) % p
            total = (total + v) % p
        return total

    def partial(self, var):
        """Partial derivative with respect to variable index `var`."""
        p = self.field.p
        terms = {}
        for exps, c in self.terms.items():
            e = exps[var]
            if e == 0:
                continue
            new = list(exps)
            new[var] = e - 1
            k = c * e % p
            if k:
                terms[tuple(new)] = k
        return Poly(self.field, self.nvars, self.degree - 1, terms)

    def compose_linear(self, rows):
        """Substitute x_i -> sum_j rows[i][j] * x_j."""
        if len(rows) != self.nvars:
            raise ArityMismatch(f"matrix has {len(rows)} rows, expected {self.nvars}")
        field = self.field
        lin = [Poly.from_terms(field, self.nvars, 1,
                               {tuple(1 if k == j else 0 for k in range(self.nvars)): rows[i][j]
                                for j in range(self.nvars)})
               for i in range(self.nvars)]
        one = Poly.monomial(field, (0,) * self.nvars)
        pow_cache = [[one] for _ in range(self.nvars)]
        out = Poly.zero(field, self.nvars, self.degree)
        for exps, c in self.terms.items():
            term = one.scale(c)
            for i, e in enumerate(exps):
                cache = pow_cache[i]
                while len(cache) <= e:
                    cache.append(cache[-1].mul(lin[i]))
                if e:
                    term = term.mul(cache[e])
            out = out.add(term)
        return out

    def as_univariate_in(self, var):
        """Coefficient list in variable `var`: entry k collects the terms with x_var^k.

        Each entry is a homogeneous Poly in the remaining variables.
        """
        field = self.field
        buckets = [dict() for _ in range(self.degree + 1)]
        for exps, c in self.terms.items():
            k = exps[var]
            rest = exps[:var] + exps[var + 1:]
            buckets[k][rest] = c
        return [Poly(field, self.nvars - 1, self.degree - k, buckets[k])
                for k in range(self.degree + 1)]

    def __eq__(self, other):
        if not isinstance(other, Poly):
            return NotImplemented
        return (self.field == other.field and self.nvars == other.nvars
                and self.degree == other.degree and self.terms == other.terms)

    def __hash__(self):
        return hash((self.field.p, self.nvars, self.degree,
                     tuple(self.sorted_terms())))

    def __str__(self):
        if not self.terms:
            return "0"
        names = VAR_NAMES[self.nvars]
        parts = []
        for exps, c in self.sorted_terms():
            factors = [] if c == 1 and any(exps) else [str(c)]
            for name, e in zip(names, exps):
                if e == 1:
                    factors.append(name)
                elif e > 1:
                    factors.append(f"{name}^{e}")
            parts.append("*".join(factors))
        return " + ".join(parts)

    def __repr__(self):
        return f"Poly({self})"


class BinaryForm:
    """Homogeneous form in (y, z); coeffs[k] multiplies y^(degree-k) * z^k."""

    __slots__ = ("field", "coeffs")

    def __init__(self, field, coeffs):
        coeffs = [field.normalize(c) for c in coeffs]
        if not coeffs:
            raise ZeroForm("a binary form needs at least one coefficient")
        self.field = field
        self.coeffs = coeffs

    @classmethod
    def zero(cls, field, degree):
        return cls(field, [0] * (degree + 1))

    @classmethod
    def from_roots(cls, field, directions):
        """Product of the linear forms mu*y - lam*z over directions (lam : mu)."""
        out = cls(field, [1])
        for lam, mu in directions:
            out = out.mul(cls(field, [mu, -lam % field.p]))
        return out

    @classmethod
    def random(cls, field, degree, rng):
        return cls(field, [field.rand(rng) for _ in range(degree + 1)])

    @property
    def degree(self):
        return len(self.coeffs) - 1

    def is_zero(self):
        return all(c == 0 for c in self.coeffs)

    def add(self, other):
        if self.degree != other.degree:
            raise DegreeMismatch(f"degree {self.degree} vs {other.degree}")
        p = self.field.p
        return BinaryForm(self.field, [(a + b) % p for a, b in zip(self.coeffs, other.coeffs)])

    def neg(self):
        p = self.field.p
        return BinaryForm(self.field, [-c % p for c in self.coeffs])

    def sub(self, other):
        return self.add(other.neg())

    def scale(self, c):
        c = self.field.normalize(c)
        p = self.field.p
        return BinaryForm(self.field, [a * c % p for a in self.coeffs])

    def mul(self, other):
        p = self.field.p
        out = [0] * (self.degree + other.degree + 1)
        for i, a in enumerate(self.coeffs):
            if a == 0:
                continue
            for j, b in enumerate(other.coeffs):
                out[i + j] = (out[i + j] + a * b) % p
        return BinaryForm(self.field, out)

    def times_y(self, k):
        return BinaryForm(self.field, self.coeffs + [0] * k) if k else self

    def times_z(self, k):
        return BinaryForm(self.field, [0] * k + self.coeffs) if k else self

    def eval(self, lam, mu):
        """Value at the direction (lam : mu), i.e. y = lam, z = mu."""
        p = self.field.p
        d = self.degree
        total = 0
        for k, c in enumerate(self.coeffs):
            if c:
                total = (total + c * pow(lam % p, d - k, p) * pow(mu % p, k, p)) % p
        return total

    def lift(self, nvars, ypos, zpos):
        """Embed as a Poly in nvars variables, y and z landing at the given slots."""
        mapping = {}
        d = self.degree
        for k, c in enumerate(self.coeffs):
            if c == 0:
                continue
            exps = [0] * nvars
            exps[ypos] = d - k
            exps[zpos] = k
            mapping[tuple(exps)] = c
        return Poly.from_terms(self.field, nvars, d, mapping)

    def __eq__(self, other):
        if not isinstance(other, BinaryForm):
            return NotImplemented
        return self.field == other.field and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.field.p, tuple(self.coeffs)))

    def __repr__(self):
        return f"BinaryForm({self.coeffs})"


def poly2_to_binary(poly):
    """Convert a homogeneous 2-variable Poly to a BinaryForm."""
    if poly.nvars != 2:
        raise ArityMismatch(f"{poly.nvars} variables, expected 2")
    coeffs = [0] * (poly.degree + 1)
    for (ey, ez), c in poly.terms.items():
        coeffs[ez] = c
    return BinaryForm(poly.field, coeffs)


class ProjectivePoint:
    """Point of projective space, normalized so the first nonzero coordinate is 1."""

    __slots__ = ("field", "coords")

    def __init__(self, field, coords):
        coords = [field.normalize(c) for c in coords]
        pivot = next((i for i, c in enumerate(coords) if c), None)
        if pivot is None:
            raise ValueError("a projective point needs a nonzero coordinate")
        inv = field.inv(coords[pivot])
        self.field = field
        self.coords = tuple(c * inv % field.p for c in coords)

    def __len__(self):
        return len(self.coords)

    def __eq__(self, other):
        if not isinstance(other, ProjectivePoint):
            return NotImplemented
        return self.field == other.field and self.coords == other.coords

    def __hash__(self):
        return hash((self.field.p, self.coords))

    def __repr__(self):
        return "(" + " : ".join(str(c) for c in self.coords) + ")"


class LinearChange:
    """Invertible change of homogeneous coordinates x -> M x.

    Polynomials transform by f -> f(M x); a point P of the new coordinates
    corresponds to M P of the old, so old points map to M^-1 P.
    """

    __slots__ = ("field", "rows", "inverse_rows")

    def __init__(self, field, rows):
        n = len(rows)
        rows = [[field.normalize(c) for c in row] for row in rows]
        if any(len(row) != n for row in rows):
            raise ArityMismatch("change matrix must be square")
        inv = modmat.matrix_inverse(rows, field.p)
        if inv is None:
            raise SingularChange(f"matrix {rows} is singular mod {field.p}")
        self.field = field
        self.rows = rows
        self.inverse_rows = inv

    @property
    def n(self):
        return len(self.rows)

    @classmethod
    def identity(cls, field, n):
        return cls(field, [[1 if i == j else 0 for j in range(n)] for i in range(n)])

    @classmethod
    def random(cls, field, n, rng):
        for _ in range(1000):
            rows = [[field.rand(rng) for _ in range(n)] for _ in range(n)]
            if modmat.det_mod(rows, field.p) != 0:
                return cls(field, rows)
        raise SingularChange("could not sample an invertible matrix")

    @classmethod
    def completion_to_first(cls, field, point):
        """Change sending the first coordinate point to `point`.

        The matrix has the (normalized) point as first column, padded with
        standard basis vectors away from the pivot coordinate.
        """
        if not isinstance(point, ProjectivePoint):
            point = ProjectivePoint(field, point)
        n = len(point)
        pivot = next(i for i, c in enumerate(point.coords) if c)
        cols = [list(point.coords)]
        for k in range(n):
            if k == pivot:
                continue
            cols.append([1 if r == k else 0 for r in range(n)])
        rows = [[cols[j][i] for j in range(n)] for i in range(n)]
        return cls(field, rows)

    def apply_to(self, f):
        return f.compose_linear(self.rows)

    def new_coords(self, point):
        """Coordinates of `point` after the change (applies the inverse matrix)."""
        return ProjectivePoint(self.field,
                               modmat.mat_vec(self.inverse_rows, list(point.coords), self.field.p))

    def __repr__(self):
        return f"LinearChange({self.rows})"


def vanishing_order_at(f, point):
    """Order of vanishing of the homogeneous polynomial f at a projective point."""
    if f.is_zero():
        raise ZeroPolynomial("the zero polynomial vanishes to every order")
    change = LinearChange.completion_to_first(f.field, point)
    g = change.apply_to(f)
    return f.degree - max(e[0] for e in g.terms)
