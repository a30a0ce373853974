"""Pure-Python cyclic Jacobi sweeps (fallback backend).

Statement-for-statement twin of the compiled backend in ``_jacobi_cy.pyx``;
both run the same IEEE double operations in the same order, so their outputs
agree to the last bit on conforming platforms.
"""

from math import sqrt

BACKEND = "python"


def jacobi_sweeps(a, v, max_sweeps):
    """Diagonalize the symmetric matrix ``a`` in place by cyclic Jacobi rotations.

    ``a`` and ``v`` are C-contiguous float64 square arrays; ``v`` must start as
    the identity and accumulates the rotations (its columns end up as
    eigenvectors, ``a``'s diagonal as eigenvalues).  Only the upper triangle of
    ``a`` is referenced.  Returns the number of sweeps used, or -1 if the sweep
    cap was reached before the off-diagonal mass underflowed to zero.
    """
    n = a.shape[0]
    if n < 2:
        return 0
    A = [list(map(float, row)) for row in a]
    V = [list(map(float, row)) for row in v]

    sweeps_used = -1
    for sweep in range(1, max_sweeps + 1):
        off = 0.0
        for p in range(n - 1):
            rp = A[p]
            for q in range(p + 1, n):
                off += abs(rp[q])
        if off == 0.0:
            sweeps_used = sweep - 1
            break
        thresh = 0.2 * off / (n * n) if sweep < 4 else 0.0
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = A[p][q]
                g = 100.0 * abs(apq)
                app = A[p][p]
                aqq = A[q][q]
                if sweep > 4 and abs(app) + g == abs(app) and abs(aqq) + g == abs(aqq):
                    A[p][q] = 0.0
                elif abs(apq) > thresh:
                    h = aqq - app
                    if abs(h) + g == abs(h):
                        t = apq / h
                    else:
                        theta = 0.5 * h / apq
                        t = 1.0 / (abs(theta) + sqrt(1.0 + theta * theta))
                        if theta < 0.0:
                            t = -t
                    c = 1.0 / sqrt(t * t + 1.0)
                    s = t * c
                    tau = s / (1.0 + c)
                    h = t * apq
                    A[p][p] = app - h
                    A[q][q] = aqq + h
                    A[p][q] = 0.0
                    for i in range(p):
                        x = A[i][p]
                        y = A[i][q]
                        A[i][p] = x - s * (y + tau * x)
                        A[i][q] = y + s * (x - tau * y)
                    for i in range(p + 1, q):
                        x = A[p][i]
                        y = A[i][q]
                        A[p][i] = x - s * (y + tau * x)
                        A[i][q] = y + s * (x - tau * y)
                    for i in range(q + 1, n):
                        x = A[p][i]
                        y = A[q][i]
                        A[p][i] = x - s * (y + tau * x)
                        A[q][i] = y + s * (x - tau * y)
                    for i in range(n):
                        x = V[i][p]
                        y = V[i][q]
                        V[i][p] = x - s * (y + tau * x)
                        V[i][q] = y + s * (x - tau * y)

    for i in range(n):
        Ai = A[i]
        Vi = V[i]
        for j in range(n):
            a[i, j] = Ai[j]
            v[i, j] = Vi[j]
    return sweeps_used
