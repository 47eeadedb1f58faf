"""Resultants, eliminants, and gcds for forms over F_p.

The eliminant of two trivariate forms is computed by evaluating numeric
Sylvester determinants at enough points and interpolating; everything stays
in exact prime-field arithmetic.
"""

from . import modmat
from .errors import (
    BadLeadingCoefficient,
    BothConstant,
    BothZero,
    CommonComponent,
    ZeroForm,
)
from .poly import BinaryForm, Poly, poly2_to_binary


def sylvester_matrix(f_desc, g_desc):
    """Sylvester matrix with f-rows first; inputs are descending coefficient lists."""
    a = len(f_desc) - 1
    b = len(g_desc) - 1
    rows = []
    for i in range(b):
        rows.append([0] * i + f_desc + [0] * (b - 1 - i))
    for i in range(a):
        rows.append([0] * i + g_desc + [0] * (a - 1 - i))
    return rows


def resultant_univariate(f, g, p):
    """Resultant of two univariate polynomials given as ascending coefficient arrays."""
    if not f or not g:
        raise ZeroForm("empty coefficient array")
    a = len(f) - 1
    b = len(g) - 1
    if a == 0 and b == 0:
        raise BothConstant("resultant of two constants is not defined here")
    if f[-1] % p == 0 or g[-1] % p == 0:
        raise BadLeadingCoefficient("leading coefficient vanishes mod p")
    f_desc = [c % p for c in reversed(f)]
    g_desc = [c % p for c in reversed(g)]
    return modmat.det_mod(sylvester_matrix(f_desc, g_desc), p)


def newton_interpolate(xs, ys, p):
    """Coefficients (descending) of the polynomial through the points (xs[i], ys[i])."""
    n = len(xs)
    dd = [y % p for y in ys]
    for j in range(1, n):
        for i in range(n - 1, j - 1, -1):
            den = (xs[i] - xs[i - j]) % p
            dd[i] = (dd[i] - dd[i - 1]) * pow(den, p - 2, p) % p
    coeffs = [dd[n - 1]]
    for i in range(n - 2, -1, -1):
        xi = xs[i] % p
        coeffs.append(0)
        for k in range(len(coeffs) - 2, -1, -1):
            coeffs[k + 1] = (coeffs[k + 1] - xi * coeffs[k]) % p
        coeffs[-1] = (coeffs[-1] + dd[i]) % p
    return coeffs


def x_coefficient_forms(F):
    """Binary forms C_k(y,z) with F = sum_k x^k * C_k; index is the x power."""
    return [poly2_to_binary(c) for c in F.as_univariate_in(0)]


def eliminant(F, G):
    """Resultant of two trivariate forms with respect to x, as a binary form in (y,z).

    Degree is exactly deg F * deg G.  Vanishes at (lam : mu) iff the curves
    meet on the line through (1:0:0) in that direction; the root multiplicity
    adds up the local intersection multiplicities over the line.
    """
    field = F.field
    p = field.p
    a, b = F.degree, G.degree
    fc = x_coefficient_forms(F)
    gc = x_coefficient_forms(G)
    if fc[a].is_zero():
        raise BadLeadingCoefficient(f"coefficient of x^{a} in F is zero")
    if gc[b].is_zero():
        raise BadLeadingCoefficient(f"coefficient of x^{b} in G is zero")
    total = a * b
    if total >= p:
        raise ValueError(f"prime {p} too small to interpolate degree {total}")
    xs = list(range(total + 1))
    ys = []
    for t in xs:
        f_desc = [fc[k].eval(t, 1) for k in range(a, -1, -1)]
        g_desc = [gc[k].eval(t, 1) for k in range(b, -1, -1)]
        ys.append(modmat.det_mod(sylvester_matrix(f_desc, g_desc), p))
    if all(v == 0 for v in ys):
        # a nonzero form of degree total cannot vanish at total+1 points
        raise CommonComponent("the two curves share a component")
    return BinaryForm(field, newton_interpolate(xs, ys, p))


def binary_root_multiplicity(form, direction):
    """Largest k with (mu*y - lam*z)^k dividing the form, direction = (lam, mu)."""
    if form.is_zero():
        raise ZeroForm("the zero form has no well-defined root multiplicity")
    p = form.field.p
    lam, mu = direction[0] % p, direction[1] % p
    if lam == 0 and mu == 0:
        raise ValueError("direction (0, 0) is not projective")
    if mu == 0:
        # the direction (1:0) corresponds to the factor z
        k = 0
        while form.coeffs[k] == 0:
            k += 1
        return k
    t = lam * pow(mu, p - 2, p) % p
    u = list(form.coeffs)
    count = 0
    while len(u) > 1:
        q = [u[0]]
        for c in u[1:]:
            q.append((c + t * q[-1]) % p)
        if q.pop() != 0:
            break
        u = q
        count += 1
    return count


def _divmod_desc(a, b, p):
    """Quotient and remainder of descending coefficient lists; b[0] must be nonzero."""
    if len(a) < len(b):
        return [], list(a)
    a = list(a)
    inv = pow(b[0], p - 2, p)
    q = []
    for i in range(len(a) - len(b) + 1):
        c = a[i] * inv % p
        q.append(c)
        if c:
            for j, bj in enumerate(b):
                a[i + j] = (a[i + j] - c * bj) % p
    rem = a[len(q):]
    return q, rem


def _strip(form):
    """Split off the y- and z-power factors: returns (y_power, z_power, core coeffs)."""
    ks = [k for k, c in enumerate(form.coeffs) if c]
    z_pow = ks[0]
    y_pow = form.degree - ks[-1]
    return y_pow, z_pow, form.coeffs[ks[0]:ks[-1] + 1]


def _monic_first(form):
    k = next(i for i, c in enumerate(form.coeffs) if c)
    return form.scale(form.field.inv(form.coeffs[k]))


def binary_gcd(a, b):
    """Monic gcd of two binary forms, common y- and z-power factors included."""
    if a.is_zero() and b.is_zero():
        raise BothZero("gcd of two zero forms")
    if a.is_zero():
        return _monic_first(b)
    if b.is_zero():
        return _monic_first(a)
    field = a.field
    p = field.p
    ya, za, ua = _strip(a)
    yb, zb, ub = _strip(b)
    # cores have nonzero first and last coefficients; run Euclid on the
    # dehomogenizations (z = 1), whose descending coefficients are the cores
    while ub:
        _, r = _divmod_desc(ua, ub, p)
        while r and r[0] == 0:
            r = r[1:]
        ua, ub = ub, r
    inv = pow(ua[0], p - 2, p)
    h = BinaryForm(field, [c * inv % p for c in ua])
    return h.times_y(min(ya, yb)).times_z(min(za, zb))


def binary_divide_exact(a, b):
    """Exact quotient a / b of binary forms; raises if b does not divide a."""
    if b.is_zero():
        raise ZeroForm("division by the zero form")
    if a.is_zero():
        return BinaryForm.zero(a.field, a.degree - b.degree)
    p = a.field.p
    ya, za, ua = _strip(a)
    yb, zb, ub = _strip(b)
    if ya < yb or za < zb:
        raise ValueError("not divisible (monomial factor)")
    q, r = _divmod_desc(ua, ub, p)
    if any(r):
        raise ValueError("not divisible")
    out = BinaryForm(a.field, q).times_y(ya - yb).times_z(za - zb)
    if out.degree != a.degree - b.degree:
        raise ValueError("not divisible (degree drop)")
    return out


def _x_degree(P):
    return max(e[0] for e in P.terms)


def _x_coeff_poly(P, k):
    """Terms of P with x-exponent exactly k, returned x-free as a 3-variable Poly."""
    field = P.field
    terms = {}
    for exps, c in P.terms.items():
        if exps[0] == k:
            terms[(0, exps[1], exps[2])] = c
    return Poly(field, 3, P.degree - k, terms)


def _x_coeff_binary(P, k):
    coeffs = [0] * (P.degree - k + 1)
    for exps, c in P.terms.items():
        if exps[0] == k:
            coeffs[exps[2]] = c
    return BinaryForm(P.field, coeffs)


def _content(P):
    """Binary-form gcd of all x-coefficients of a trivariate form."""
    forms = [_x_coeff_binary(P, k) for k in range(_x_degree(P) + 1)]
    content = None
    for f in forms:
        if f.is_zero():
            continue
        content = f if content is None else binary_gcd(content, f)
    return _monic_first(content)


def _primitive_part(P):
    content = _content(P)
    if content.degree == 0:
        return P
    field = P.field
    terms = {}
    for k in range(_x_degree(P) + 1):
        f = _x_coeff_binary(P, k)
        if f.is_zero():
            continue
        q = binary_divide_exact(f, content)
        for j, c in enumerate(q.coeffs):
            if c:
                terms[(k, q.degree - j, j)] = c
    return Poly(field, 3, P.degree - content.degree, terms)


def _prem_x(F, G):
    """Pseudo-remainder of F by G with respect to x; both trivariate, G nonzero."""
    m = _x_degree(G)
    lcG = _x_coeff_poly(G, m)
    R = F
    while not R.is_zero() and _x_degree(R) >= m:
        n = _x_degree(R)
        lcR = _x_coeff_poly(R, n)
        shift = Poly.monomial(F.field, (n - m, 0, 0))
        R = R.mul(lcG).sub(G.mul(lcR).mul(shift))
    return R


def _monic_lead(P):
    lead = P.sorted_terms()[0][1]
    return P.scale(P.field.inv(lead))


def trivariate_gcd(F, G):
    """Gcd of two trivariate forms, normalized so the leading coefficient is 1."""
    if F.is_zero() and G.is_zero():
        raise BothZero("gcd of two zero polynomials")
    if F.is_zero():
        return _monic_lead(G)
    if G.is_zero():
        return _monic_lead(F)
    field = F.field
    cF = _content(F)
    cG = _content(G)
    c = binary_gcd(cF, cG)
    A = _primitive_part(F)
    B = _primitive_part(G)
    if _x_degree(A) < _x_degree(B):
        A, B = B, A
    while not B.is_zero():
        R = _prem_x(A, B)
        A = B
        B = _primitive_part(R) if not R.is_zero() else R
    result = A.mul(c.lift(3, 1, 2))
    return _monic_lead(result)
