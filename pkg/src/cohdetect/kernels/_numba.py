"""numba-compiled hot kernels. Signatures mirror ``_numpy.py``."""

import math

import numpy as np
from numba import njit


@njit(cache=True)
def jacobi_eigh(a, rel_tol, max_sweeps):
    n = a.shape[0]
    a = a.copy()
    v = np.eye(n, dtype=np.complex128)
    norm_sq = 0.0
    for i in range(n):
        for j in range(n):
            x = a[i, j]
            norm_sq += x.real * x.real + x.imag * x.imag
    thresh_sq = rel_tol * rel_tol * norm_sq
    sweeps = 0
    converged = False
    while True:
        off = 0.0
        for i in range(n):
            for j in range(n):
                if i != j:
                    x = a[i, j]
                    off += x.real * x.real + x.imag * x.imag
        if off <= thresh_sq:
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
                phc = ph.conjugate()
                theta = (a[q, q].real - a[p, p].real) / (2.0 * mag)
                sgn = 1.0 if theta >= 0.0 else -1.0
                t = sgn / (abs(theta) + math.sqrt(theta * theta + 1.0))
                c = 1.0 / math.sqrt(t * t + 1.0)
                s = t * c
                for k in range(n):
                    xp = a[k, p]
                    xq = a[k, q] * phc
                    a[k, p] = c * xp - s * xq
                    a[k, q] = s * xp + c * xq
                for k in range(n):
                    xp = a[p, k]
                    xq = a[q, k] * ph
                    a[p, k] = c * xp - s * xq
                    a[q, k] = s * xp + c * xq
                a[p, q] = 0.0
                a[q, p] = 0.0
                a[p, p] = a[p, p].real
                a[q, q] = a[q, q].real
                for k in range(n):
                    xp = v[k, p]
                    xq = v[k, q] * phc
                    v[k, p] = c * xp - s * xq
                    v[k, q] = s * xp + c * xq
        sweeps += 1
    w = np.empty(n)
    for i in range(n):
        w[i] = a[i, i].real
    return w, v, sweeps, converged


@njit(cache=True)
def project_simplex(y):
    n = y.shape[0]
    u = np.sort(y)[::-1]
    css = 0.0
    theta = 0.0
    for j in range(n):
        css += u[j]
        cand = (css - 1.0) / (j + 1.0)
        if u[j] - cand > 0.0:
            theta = cand
    out = np.empty(n)
    for i in range(n):
        out[i] = max(y[i] - theta, 0.0)
    return out


@njit(cache=True)
def trace_distance_descent(rho, start, max_iter, step, rel_tol, window,
                           eig_tol, max_sweeps):
    n = rho.shape[0]
    sigma = start.copy()
    best_sigma = sigma.copy()
    best_val = np.inf
    best_lower = -np.inf
    mark_val = np.inf
    iters = 0
    ydiag = np.empty(n)
    sg = np.empty(n)
    for t in range(1, max_iter + 1):
        iters = t
        diff = rho.copy()
        for i in range(n):
            diff[i, i] -= sigma[i]
        w, v, _, ok = jacobi_eigh(diff, eig_tol, max_sweeps)
        if not ok:
            return best_sigma, best_val, best_lower, iters, False
        wmax = 1.0
        for k in range(n):
            if abs(w[k]) > wmax:
                wmax = abs(w[k])
        floor = 1e-14 * wmax
        val = 0.0
        tr_rho_y = 0.0
        for k in range(n):
            val += abs(w[k])
            if w[k] > floor:
                sg[k] = 1.0
            elif w[k] < -floor:
                sg[k] = -1.0
            else:
                sg[k] = 0.0
            tr_rho_y += abs(w[k]) * abs(sg[k])
        val *= 0.5
        ymax = -np.inf
        for i in range(n):
            acc = 0.0
            for k in range(n):
                z = v[i, k]
                acc += (z.real * z.real + z.imag * z.imag) * sg[k]
            ydiag[i] = acc
            tr_rho_y += sigma[i] * acc
            if acc > ymax:
                ymax = acc
        lower = 0.5 * (tr_rho_y - ymax)
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
