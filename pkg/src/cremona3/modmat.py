"""Dense linear algebra mod p with a compiled core and a pure fallback.

The compiled backend (Cython) is picked at import time when available; set
CREMONA3_PURE=1 to force the pure-Python one.  Both implement the same
pivoting, so results are identical.  The compiled kernels assume p < 2**32;
larger primes route to the pure code automatically.
"""

import os

from . import _modmat_py

_COMPILED = None
if os.environ.get("CREMONA3_PURE") != "1":
    try:
        from . import _modmat_c as _COMPILED
    except ImportError:
        _COMPILED = None

BACKEND = "compiled" if _COMPILED is not None else "pure"

_COMPILED_LIMIT = 2**32


def _pick(p):
    if _COMPILED is not None and p < _COMPILED_LIMIT:
        return _COMPILED
    return _modmat_py


def det_mod(rows, p):
    """Determinant of a square matrix over F_p."""
    return _pick(p).det_mod(rows, p)


def rref_mod(rows, p):
    """Reduced row echelon form over F_p; returns (rows, pivot columns)."""
    return _pick(p).rref_mod(rows, p)


def nullspace(rows, p, ncols=None):
    """Basis of the right kernel of the matrix over F_p.

    One basis vector per free column: that column's entry is 1, other free
    columns are 0, pivot-column entries read off the reduced form.
    """
    if not rows:
        if ncols is None:
            return []
        return [[1 if i == j else 0 for i in range(ncols)] for j in range(ncols)]
    ncols = len(rows[0])
    red, pivots = rref_mod(rows, p)
    pivot_set = set(pivots)
    basis = []
    for free in range(ncols):
        if free in pivot_set:
            continue
        vec = [0] * ncols
        vec[free] = 1
        for r, c in enumerate(pivots):
            vec[c] = -red[r][free] % p
        basis.append(vec)
    return basis


def matrix_rank(rows, p):
    if not rows:
        return 0
    _, pivots = rref_mod(rows, p)
    return len(pivots)


def matrix_inverse(rows, p):
    """Inverse of a square matrix over F_p, or None if singular."""
    n = len(rows)
    aug = [list(rows[i]) + [1 if j == i else 0 for j in range(n)] for i in range(n)]
    red, pivots = rref_mod(aug, p)
    if pivots != list(range(n)):
        return None
    return [row[n:] for row in red]


def mat_vec(rows, vec, p):
    return [sum(a * b for a, b in zip(row, vec)) % p for row in rows]


def mat_mul(a, b, p):
    cols = list(zip(*b))
    return [[sum(x * y for x, y in zip(row, col)) % p for col in cols] for row in a]
