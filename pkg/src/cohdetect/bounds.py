"""Trace-distance coherence and witness-based lower bounds on the robustness of coherence.

Chain of bounds implemented here, for a state ``rho`` and witness ``W`` with
extreme eigenvalues ``l-`` and ``l+``::

    R(rho) >= E/(1-E) >= L/(1-L),     L = -Tr(rho W) / (l+ - l-)

where ``E`` is the trace distance from ``rho`` to the nearest incoherent
state. ``L1`` and ``L2`` are two older robustness bounds kept for comparison.
"""

import math
from dataclasses import dataclass, field
from typing import Callable, List, Optional, Sequence

import numpy as np

from . import kernels
from .errors import DegenerateSpectrum, DimMismatch, DimTooLarge, NoConvergence, NoSignChange
from .linalg import EIG_TOL, MAX_SWEEPS, trace_norm_hermitian
from .states import DensityMatrix, isotropic
from .witness import Witness, _spread, dephasing_witness, eig_extremes, expectation, normalize

MAX_DIM = 64


def _mat(x) -> np.ndarray:
    return x.mat if isinstance(x, DensityMatrix) else np.asarray(x, dtype=np.complex128)


def trace_distance(rho, sigma) -> float:
    """``0.5 * Tr|rho - sigma|``."""
    a, b = _mat(rho), _mat(sigma)
    if a.shape != b.shape:
        raise DimMismatch(f"shapes {a.shape} and {b.shape} differ")
    return 0.5 * trace_norm_hermitian(a - b)


@dataclass(frozen=True)
class TraceDistanceResult:
    E: float
    sigma_opt: DensityMatrix
    iterations: int
    certified_gap: float


def trace_distance_coherence(rho: DensityMatrix, max_iter: int = 5000, step: float = 0.5,
                             rel_tol: float = 1e-10, window: int = 500) -> TraceDistanceResult:
    """Minimise ``D(rho, sigma)`` over diagonal ``sigma`` by projected subgradient descent.

    Two deterministic starts (``diag(rho)`` and uniform), step ``step/sqrt(t)``.
    A run stops after ``max_iter`` iterations, when the best value has improved
    by less than ``rel_tol`` (relative) over the last ``window`` iterations, or
    when the dual certificate closes the gap. ``certified_gap`` is ``E`` minus
    the best dual lower bound ``0.5 * (Tr(rho Y) - max_i Y_ii)`` seen along the
    way (``Y`` ranges over the subgradient sign matrices), so the true minimum
    lies in ``[E - certified_gap, E]``.
    """
    if rho.dim > MAX_DIM:
        raise DimTooLarge(f"dimension {rho.dim} exceeds the supported {MAX_DIM}")
    m = np.ascontiguousarray(rho.mat, dtype=np.complex128)
    n = rho.dim
    starts = [np.clip(np.diag(m).real, 0.0, None), np.full(n, 1.0 / n)]
    starts[0] = starts[0] / starts[0].sum()
    best = None
    lower = -np.inf
    total_iters = 0
    for s0 in starts:
        sig, val, low, iters, ok = kernels.trace_distance_descent(
            m, s0, int(max_iter), float(step), float(rel_tol), int(window), EIG_TOL, MAX_SWEEPS)
        if not ok:
            raise NoConvergence("eigendecomposition inside the descent did not converge")
        total_iters += iters
        lower = max(lower, low)
        if best is None or val < best[1]:
            best = (sig, val)
    sigma = DensityMatrix(np.diag(best[0]), rho.dims)
    e = trace_distance(rho, sigma)
    return TraceDistanceResult(e, sigma, total_iters, max(0.0, e - lower))


def bound_L(w, rho) -> float:
    """``-Tr(rho W) / (l+ - l-)`` using the raw witness; may be <= 0 (vacuous)."""
    lam_minus, lam_plus = eig_extremes(w)
    return -expectation(w, rho) / _spread(lam_minus, lam_plus)


def bound_LR(L: float) -> Optional[float]:
    """``L / (1 - L)`` for ``0 <= L < 1``; ``None`` marks a vacuous input."""
    if not 0.0 <= L < 1.0:
        return None
    return L / (1.0 - L)


def bound_L1(w, rho) -> float:
    """``-Tr(rho W_N)`` with ``W_N`` the normalised witness; signed, negative means vacuous."""
    return -expectation(normalize(w).mat, rho)


def bound_L2(rho) -> float:
    """``min_sigma ||rho - sigma||_2^2`` over incoherent sigma = squared off-diagonal mass."""
    m = _mat(rho)
    off = m - np.diag(np.diag(m))
    return float(np.sum(off.real**2 + off.imag**2))


def l1_coherence(rho) -> float:
    m = _mat(rho)
    return float(np.sum(np.abs(m - np.diag(np.diag(m)))))


@dataclass
class BoundsReport:
    lambda_plus: Optional[float] = None
    lambda_minus: Optional[float] = None
    L_WN: Optional[float] = None
    L_R: Optional[float] = None
    L1: Optional[float] = None
    L2: Optional[float] = None
    E: Optional[float] = None
    E_ratio: Optional[float] = None
    certified_gap: Optional[float] = None
    flags: List[str] = field(default_factory=list)


def bounds_report(w: Witness, rho: DensityMatrix, with_E: bool = False) -> BoundsReport:
    """All bounds for one (state, witness) pair. Degeneracy and vacuity become flags."""
    rep = BoundsReport(L2=bound_L2(rho))
    lam_minus, lam_plus = eig_extremes(w)
    rep.lambda_plus, rep.lambda_minus = lam_plus, lam_minus
    try:
        rep.L_WN = bound_L(w, rho)
        rep.L1 = bound_L1(w, rho)
    except DegenerateSpectrum:
        rep.flags.append("degenerate")
    if rep.L_WN is not None:
        rep.L_R = bound_LR(rep.L_WN)
        if rep.L_R is None:
            rep.flags.append("vacuous_L")
    if rep.L1 is not None and rep.L1 < 0:
        rep.flags.append("vacuous_L1")
    if with_E:
        res = trace_distance_coherence(rho)
        rep.E = res.E
        rep.certified_gap = res.certified_gap
        rep.E_ratio = res.E / (1.0 - res.E) if res.E < 1.0 else math.inf
    return rep


def isotropic_row(v: float):
    """``(v, L1, L2, L_R, flag)`` for the dephasing witness on the qutrit isotropic state."""
    rho = isotropic(v)
    w = dephasing_witness(rho)
    l2 = bound_L2(rho)
    try:
        L = bound_L(w, rho)
        l1 = bound_L1(w, rho)
    except DegenerateSpectrum:
        return (float(v), math.nan, l2, math.nan, "degenerate")
    lr = bound_LR(L)
    flags = []
    if lr is None:
        flags.append("vacuous_L")
        lr = math.nan
    if l1 < 0:
        flags.append("vacuous_L1")
    return (float(v), l1, l2, lr, "|".join(flags))


def scan_isotropic(v_grid: Sequence[float]):
    return [isotropic_row(v) for v in v_grid]


def crossing(v_lo: float, v_hi: float, f: Callable[[float], float],
             g: Callable[[float], float], tol: float = 1e-6) -> float:
    """Bisection root of ``f - g`` on ``[v_lo, v_hi]``."""
    h_lo = f(v_lo) - g(v_lo)
    h_hi = f(v_hi) - g(v_hi)
    if h_lo == 0:
        return v_lo
    if h_hi == 0:
        return v_hi
    if np.sign(h_lo) == np.sign(h_hi):
        raise NoSignChange(f"f - g has the same sign at {v_lo} and {v_hi}")
    lo, hi = v_lo, v_hi
    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        h_mid = f(mid) - g(mid)
        if h_mid == 0:
            return mid
        if np.sign(h_mid) == np.sign(h_lo):
            lo, h_lo = mid, h_mid
        else:
            hi = mid
    return 0.5 * (lo + hi)
