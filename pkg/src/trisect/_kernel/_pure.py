"""Pure-Python kernels for exact integer matrix reduction.

These are the hot inner loops of the whole library: every homology,
monodromy and standardization computation bottoms out in `snf` and
`matmul` calls.  A compiled twin of this module lives in
``_speedups.pyx``; both implement the *identical* algorithm (same pivot
rule, same tie-breaking) so results are bit-for-bit interchangeable.

Entries are Python ints throughout -- arbitrary precision is mandatory,
since elimination can blow up intermediate entries well past 64 bits.
"""

BACKEND = "pure"


def matmul(a, b):
    """Exact product of two list-of-list integer matrices."""
    m = len(a)
    k = len(a[0]) if m else 0
    if k == 0:
        n = len(b[0]) if b else 0
        return [[0] * n for _ in range(m)]
    n = len(b[0]) if b else 0
    out = []
    for i in range(m):
        ai = a[i]
        row = [0] * n
        for t in range(k):
            x = ai[t]
            if x:
                bt = b[t]
                for j in range(n):
                    y = bt[j]
                    if y:
                        row[j] += x * y
        out.append(row)
    return out


def snf(a, want_u=True, want_v=True, want_uinv=False, want_vinv=False):
    """Reduce `a` (mutated in place) to Smith normal form.

    Returns (a, u, v, uinv, vinv) with u @ a_original @ v == a, where a
    ends up diagonal with nonnegative entries in a divisibility chain.
    Unrequested transforms come back as None.  Pivot rule: smallest
    nonzero magnitude in the trailing submatrix, first hit in row-major
    order on ties.
    """
    m = len(a)
    n = len(a[0]) if m else 0
    u = [[int(i == j) for j in range(m)] for i in range(m)] if want_u else None
    uinv = [[int(i == j) for j in range(m)] for i in range(m)] if want_uinv else None
    v = [[int(i == j) for j in range(n)] for i in range(n)] if want_v else None
    vinv = [[int(i == j) for j in range(n)] for i in range(n)] if want_vinv else None

    def swap_rows(i, j):
        a[i], a[j] = a[j], a[i]
        if u is not None:
            u[i], u[j] = u[j], u[i]
        if uinv is not None:
            for r in range(m):
                ur = uinv[r]
                ur[i], ur[j] = ur[j], ur[i]

    def swap_cols(i, j):
        for r in range(m):
            ar = a[r]
            ar[i], ar[j] = ar[j], ar[i]
        if v is not None:
            for r in range(n):
                vr = v[r]
                vr[i], vr[j] = vr[j], vr[i]
        if vinv is not None:
            vinv[i], vinv[j] = vinv[j], vinv[i]

    def row_sub(i, t, q):
        # row i -= q * row t
        ai, at = a[i], a[t]
        for c in range(n):
            x = at[c]
            if x:
                ai[c] -= q * x
        if u is not None:
            ui, ut = u[i], u[t]
            for c in range(m):
                x = ut[c]
                if x:
                    ui[c] -= q * x
        if uinv is not None:
            for r in range(m):
                ur = uinv[r]
                x = ur[i]
                if x:
                    ur[t] += q * x

    def col_sub(j, t, q):
        # col j -= q * col t
        for r in range(m):
            ar = a[r]
            x = ar[t]
            if x:
                ar[j] -= q * x
        if v is not None:
            for r in range(n):
                vr = v[r]
                x = vr[t]
                if x:
                    vr[j] -= q * x
        if vinv is not None:
            vt, vj = vinv[t], vinv[j]
            for c in range(n):
                x = vj[c]
                if x:
                    vt[c] += q * x

    def row_add(t, i):
        # row t += row i
        at, ai = a[t], a[i]
        for c in range(n):
            x = ai[c]
            if x:
                at[c] += x
        if u is not None:
            ut, ui = u[t], u[i]
            for c in range(m):
                x = ui[c]
                if x:
                    ut[c] += x
        if uinv is not None:
            for r in range(m):
                ur = uinv[r]
                x = ur[t]
                if x:
                    ur[i] -= x

    def negate_row(t):
        at = a[t]
        for c in range(n):
            at[c] = -at[c]
        if u is not None:
            ut = u[t]
            for c in range(m):
                ut[c] = -ut[c]
        if uinv is not None:
            for r in range(m):
                uinv[r][t] = -uinv[r][t]

    rmax = min(m, n)
    for t in range(rmax):
        while True:
            # locate smallest-magnitude nonzero pivot in trailing block
            bi = bj = -1
            best = 0
            for i in range(t, m):
                ai = a[i]
                for j in range(t, n):
                    x = ai[j]
                    if x:
                        if x < 0:
                            x = -x
                        if bi < 0 or x < best:
                            bi, bj, best = i, j, x
            if bi < 0:
                break
            if bi != t:
                swap_rows(t, bi)
            if bj != t:
                swap_cols(t, bj)
            p = a[t][t]
            dirty = False
            for i in range(t + 1, m):
                x = a[i][t]
                if x:
                    q = x // p
                    if q:
                        row_sub(i, t, q)
                    if a[i][t]:
                        dirty = True
            for j in range(t + 1, n):
                x = a[t][j]
                if x:
                    q = x // p
                    if q:
                        col_sub(j, t, q)
                    if a[t][j]:
                        dirty = True
            if dirty:
                continue
            # divisibility sweep: pull in the first offending row
            p = a[t][t]
            bad = -1
            for i in range(t + 1, m):
                ai = a[i]
                for j in range(t + 1, n):
                    if ai[j] % p:
                        bad = i
                        break
                if bad >= 0:
                    break
            if bad >= 0:
                row_add(t, bad)
                continue
            break
        if t < m and t < n and a[t][t] < 0:
            negate_row(t)
    return a, u, v, uinv, vinv
