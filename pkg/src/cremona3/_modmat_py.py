"""Pure-Python backend for dense matrix kernels mod p.

Mirrors cremona3._modmat_c exactly: same pivoting (first nonzero entry in
column order, lowest row index), same outputs, so certificates are
byte-identical whichever backend runs.
"""


def det_mod(rows, p):
    n = len(rows)
    m = [list(r) for r in rows]
    det = 1
    neg = False
    for c in range(n):
        piv = -1
        for i in range(c, n):
            if m[i][c] != 0:
                piv = i
                break
        if piv < 0:
            return 0
        if piv != c:
            m[piv], m[c] = m[c], m[piv]
            neg = not neg
        pv = m[c][c]
        det = det * pv % p
        inv = pow(pv, p - 2, p)
        rowc = m[c]
        for i in range(c + 1, n):
            f = m[i][c]
            if f == 0:
                continue
            f = f * inv % p
            rowi = m[i]
            for j in range(c, n):
                rowi[j] = (rowi[j] - f * rowc[j]) % p
    if neg:
        det = -det % p
    return det


def rref_mod(rows, p):
    """Reduced row echelon form; returns (rows, pivot column indices)."""
    if not rows:
        return [], []
    m = [list(r) for r in rows]
    nrows = len(m)
    ncols = len(m[0])
    pivots = []
    r = 0
    for c in range(ncols):
        if r == nrows:
            break
        piv = -1
        for i in range(r, nrows):
            if m[i][c] != 0:
                piv = i
                break
        if piv < 0:
            continue
        if piv != r:
            m[piv], m[r] = m[r], m[piv]
        inv = pow(m[r][c], p - 2, p)
        rowr = m[r]
        for j in range(c, ncols):
            rowr[j] = rowr[j] * inv % p
        for i in range(nrows):
            if i == r:
                continue
            f = m[i][c]
            if f == 0:
                continue
            rowi = m[i]
            for j in range(c, ncols):
                rowi[j] = (rowi[j] - f * rowr[j]) % p
        pivots.append(c)
        r += 1
    return m, pivots
