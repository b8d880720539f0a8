# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled kernels for exact integer matrix reduction.

Twin of ``_pure.py``: same pivot rule, same tie-breaking, same output,
just with typed index arithmetic.  Matrix entries stay Python ints, so
arbitrary precision is preserved.
"""

BACKEND = "cython"


def matmul(list a, list b):
    """Exact product of two list-of-list integer matrices."""
    cdef Py_ssize_t m = len(a)
    cdef Py_ssize_t k = len(<list>a[0]) if m else 0
    cdef Py_ssize_t n = len(<list>b[0]) if len(b) else 0
    cdef Py_ssize_t i, j, t
    cdef list ai, bt, row, out
    out = []
    for i in range(m):
        ai = <list>a[i]
        row = [0] * n
        for t in range(k):
            x = ai[t]
            if x != 0:
                bt = <list>b[t]
                for j in range(n):
                    y = bt[j]
                    if y != 0:
                        row[j] = row[j] + x * y
        out.append(row)
    return out


cdef inline void _swap_list_items(list row, Py_ssize_t i, Py_ssize_t j):
    row[i], row[j] = row[j], row[i]


def snf(list a, bint want_u=True, bint want_v=True,
        bint want_uinv=False, bint want_vinv=False):
    """Reduce `a` (mutated in place) to Smith normal form.

    Returns (a, u, v, uinv, vinv); see the pure twin for the contract.
    """
    cdef Py_ssize_t m = len(a)
    cdef Py_ssize_t n = len(<list>a[0]) if m else 0
    cdef Py_ssize_t i, j, t, r, c, bi, bj, bad, rmax
    cdef bint dirty
    cdef list u = None, v = None, uinv = None, vinv = None
    cdef list ai, at, ar, ut, ui, ur, vr, vt, vj

    if want_u:
        u = [[1 if i == j else 0 for j in range(m)] for i in range(m)]
    if want_uinv:
        uinv = [[1 if i == j else 0 for j in range(m)] for i in range(m)]
    if want_v:
        v = [[1 if i == j else 0 for j in range(n)] for i in range(n)]
    if want_vinv:
        vinv = [[1 if i == j else 0 for j in range(n)] for i in range(n)]

    rmax = m if m < n else n
    for t in range(rmax):
        while True:
            bi = -1
            bj = -1
            best = 0
            for i in range(t, m):
                ai = <list>a[i]
                for j in range(t, n):
                    x = ai[j]
                    if x != 0:
                        if x < 0:
                            x = -x
                        if bi < 0 or x < best:
                            bi = i
                            bj = j
                            best = x
            if bi < 0:
                break
            if bi != t:
                a[t], a[bi] = a[bi], a[t]
                if u is not None:
                    u[t], u[bi] = u[bi], u[t]
                if uinv is not None:
                    for r in range(m):
                        _swap_list_items(<list>uinv[r], t, bi)
            if bj != t:
                for r in range(m):
                    _swap_list_items(<list>a[r], t, bj)
                if v is not None:
                    for r in range(n):
                        _swap_list_items(<list>v[r], t, bj)
                if vinv is not None:
                    vinv[t], vinv[bj] = vinv[bj], vinv[t]
            p = (<list>a[t])[t]
            dirty = False
            for i in range(t + 1, m):
                ai = <list>a[i]
                x = ai[t]
                if x != 0:
                    q = x // p
                    if q != 0:
                        at = <list>a[t]
                        for c in range(n):
                            y = at[c]
                            if y != 0:
                                ai[c] = ai[c] - q * y
                        if u is not None:
                            ui = <list>u[i]
                            ut = <list>u[t]
                            for c in range(m):
                                y = ut[c]
                                if y != 0:
                                    ui[c] = ui[c] - q * y
                        if uinv is not None:
                            for r in range(m):
                                ur = <list>uinv[r]
                                y = ur[i]
                                if y != 0:
                                    ur[t] = ur[t] + q * y
                    if ai[t] != 0:
                        dirty = True
            at = <list>a[t]
            for j in range(t + 1, n):
                x = at[j]
                if x != 0:
                    q = x // p
                    if q != 0:
                        for r in range(m):
                            ar = <list>a[r]
                            y = ar[t]
                            if y != 0:
                                ar[j] = ar[j] - q * y
                        if v is not None:
                            for r in range(n):
                                vr = <list>v[r]
                                y = vr[t]
                                if y != 0:
                                    vr[j] = vr[j] - q * y
                        if vinv is not None:
                            vt = <list>vinv[t]
                            vj = <list>vinv[j]
                            for c in range(n):
                                y = vj[c]
                                if y != 0:
                                    vt[c] = vt[c] + q * y
                    if at[j] != 0:
                        dirty = True
            if dirty:
                continue
            p = (<list>a[t])[t]
            bad = -1
            for i in range(t + 1, m):
                ai = <list>a[i]
                for j in range(t + 1, n):
                    if ai[j] % p != 0:
                        bad = i
                        break
                if bad >= 0:
                    break
            if bad >= 0:
                at = <list>a[t]
                ai = <list>a[bad]
                for c in range(n):
                    y = ai[c]
                    if y != 0:
                        at[c] = at[c] + y
                if u is not None:
                    ut = <list>u[t]
                    ui = <list>u[bad]
                    for c in range(m):
                        y = ui[c]
                        if y != 0:
                            ut[c] = ut[c] + y
                if uinv is not None:
                    for r in range(m):
                        ur = <list>uinv[r]
                        y = ur[t]
                        if y != 0:
                            ur[bad] = ur[bad] - y
                continue
            break
        if t < m and t < n and (<list>a[t])[t] < 0:
            at = <list>a[t]
            for c in range(n):
                at[c] = -at[c]
            if u is not None:
                ut = <list>u[t]
                for c in range(m):
                    ut[c] = -ut[c]
            if uinv is not None:
                for r in range(m):
                    ur = <list>uinv[r]
                    ur[t] = -ur[t]
    return a, u, v, uinv, vinv
