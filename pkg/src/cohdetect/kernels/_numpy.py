"""Pure-numpy versions of the hot kernels.

Same algorithms and stopping rules as the numba versions in ``_numba.py``;
row/column rotations are vectorised instead of looped.
"""

import math

import numpy as np


def jacobi_eigh(a, rel_tol, max_sweeps):
    """Cyclic complex Jacobi on a Hermitian matrix.

    Returns ``(w, v, sweeps, converged)`` with ``w`` unsorted.
    """
    a = np.array(a, dtype=np.complex128, copy=True)
    n = a.shape[0]
    v = np.eye(n, dtype=np.complex128)
    thresh_sq = rel_tol * rel_tol * float(np.sum(a.real**2 + a.imag**2))
    sweeps = 0
    converged = False
    while True:
        off = a - np.diag(np.diag(a))
        if float(np.sum(off.real**2 + off.imag**2)) <= thresh_sq:
            converged = True
            break
        if sweeps >= max_sweeps:
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p, q]
                mag = abs(apq)
                if mag == 0.0:
                    continue
                ph = apq / mag
                theta = (a[q, q].real - a[p, p].real) / (2.0 * mag)
                sgn = 1.0 if theta >= 0.0 else -1.0
                t = sgn / (abs(theta) + math.sqrt(theta * theta + 1.0))
                c = 1.0 / math.sqrt(t * t + 1.0)
                s = t * c
                phc = ph.conjugate()

                col_p = a[:, p].copy()
                col_q = a[:, q] * phc
                a[:, p] = c * col_p - s * col_q
                a[:, q] = s * col_p + c * col_q

                row_p = a[p, :].copy()
                row_q = a[q, :] * ph
                a[p, :] = c * row_p - s * row_q
                a[q, :] = s * row_p + c * row_q

                a[p, q] = 0.0
                a[q, p] = 0.0
                a[p, p] = a[p, p].real
                a[q, q] = a[q, q].real

                vp = v[:, p].copy()
                vq = v[:, q] * phc
                v[:, p] = c * vp - s * vq
                v[:, q] = s * vp + c * vq
        sweeps += 1
    return np.diag(a).real.copy(), v, sweeps, converged


def project_simplex(y):
    """Euclidean projection onto the probability simplex (sorted threshold)."""
    n = y.shape[0]
    u = np.sort(y)[::-1]
    css = np.cumsum(u)
    idx = np.arange(1, n + 1)
    cond = u - (css - 1.0) / idx > 0.0
    r = int(np.nonzero(cond)[0][-1])
    theta = (css[r] - 1.0) / (r + 1.0)
    return np.maximum(y - theta, 0.0)


def _sign_with_floor(w):
    floor = 1e-14 * max(1.0, float(np.max(np.abs(w))))
    out = np.sign(w)
    out[np.abs(w) <= floor] = 0.0
    return out


def trace_distance_descent(rho, start, max_iter, step, rel_tol, window,
                           eig_tol, max_sweeps):
    """Projected subgradient descent of 0.5*||rho - diag(sigma)||_1 over the simplex.

    Returns ``(best_sigma, best_val, best_lower, iterations, ok)``; ``ok`` is
    False if an inner eigendecomposition failed to converge.
    """
    n = rho.shape[0]
    sigma = np.array(start, dtype=np.float64, copy=True)
    best_sigma = sigma.copy()
    best_val = np.inf
    best_lower = -np.inf
    mark_val = np.inf
    iters = 0
    for t in range(1, max_iter + 1):
        iters = t
        diff = rho.copy()
        diff[np.diag_indices(n)] -= sigma
        w, v, _, ok = jacobi_eigh(diff, eig_tol, max_sweeps)
        if not ok:
            return best_sigma, best_val, best_lower, iters, False
        val = 0.5 * float(np.sum(np.abs(w)))
        sg = _sign_with_floor(w)
        ydiag = (np.abs(v) ** 2) @ sg
        # Tr(rho Y) = Tr((rho - sigma) Y) + sigma . diag(Y)
        tr_rho_y = float(np.sum(np.abs(w) * np.abs(sg))) + float(sigma @ ydiag)
        lower = 0.5 * (tr_rho_y - float(np.max(ydiag)))
        if val < best_val:
            best_val = val
            best_sigma = sigma.copy()
        if lower > best_lower:
            best_lower = lower
        if best_val - best_lower <= rel_tol * best_val:
            break
        if t % window == 0:
            if mark_val - best_val <= rel_tol * best_val:
                break
            mark_val = best_val
        sigma = project_simplex(sigma + (step / math.sqrt(t)) * 0.5 * ydiag)
    return best_sigma, best_val, best_lower, iters, True
