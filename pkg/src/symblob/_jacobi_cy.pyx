# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled cyclic Jacobi sweeps (hot kernel).

Statement-for-statement twin of ``_jacobi_py.jacobi_sweeps``; kept in exact
arithmetic lockstep so the two backends are interchangeable bit for bit.
"""

from libc.math cimport fabs, sqrt

BACKEND = "cython"


def jacobi_sweeps(double[:, ::1] a, double[:, ::1] v, int max_sweeps):
    """In-place cyclic Jacobi diagonalization; see the Python twin for docs."""
    cdef Py_ssize_t n = a.shape[0]
    cdef Py_ssize_t p, q, i
    cdef int sweep, sweeps_used
    cdef double off, thresh, apq, app, aqq, g, h, t, theta, c, s, tau, x, y

    if n < 2:
        return 0

    sweeps_used = -1
    for sweep in range(1, max_sweeps + 1):
        off = 0.0
        for p in range(n - 1):
            for q in range(p + 1, n):
                off += fabs(a[p, q])
        if off == 0.0:
            sweeps_used = sweep - 1
            break
        if sweep < 4:
            thresh = 0.2 * off / (n * n)
        else:
            thresh = 0.0
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p, q]
                g = 100.0 * fabs(apq)
                app = a[p, p]
                aqq = a[q, q]
                if sweep > 4 and fabs(app) + g == fabs(app) and fabs(aqq) + g == fabs(aqq):
                    a[p, q] = 0.0
                elif fabs(apq) > thresh:
                    h = aqq - app
                    if fabs(h) + g == fabs(h):
                        t = apq / h
                    else:
                        theta = 0.5 * h / apq
                        t = 1.0 / (fabs(theta) + sqrt(1.0 + theta * theta))
                        if theta < 0.0:
                            t = -t
                    c = 1.0 / sqrt(t * t + 1.0)
                    s = t * c
                    tau = s / (1.0 + c)
                    h = t * apq
                    a[p, p] = app - h
                    a[q, q] = aqq + h
                    a[p, q] = 0.0
                    for i in range(p):
                        x = a[i, p]
                        y = a[i, q]
                        a[i, p] = x - s * (y + tau * x)
                        a[i, q] = y + s * (x - tau * y)
                    for i in range(p + 1, q):
                        x = a[p, i]
                        y = a[i, q]
                        a[p, i] = x - s * (y + tau * x)
                        a[i, q] = y + s * (x - tau * y)
                    for i in range(q + 1, n):
                        x = a[p, i]
                        y = a[q, i]
                        a[p, i] = x - s * (y + tau * x)
                        a[q, i] = y + s * (x - tau * y)
                    for i in range(n):
                        x = v[i, p]
                        y = v[i, q]
                        v[i, p] = x - s * (y + tau * x)
                        v[i, q] = y + s * (x - tau * y)
    return sweeps_used
