"""Partial-transpose moments and the moment-comparison coherence test.

For an incoherent (diagonal) state the partial transpose is the identity map,
so ``Tr(rho^k) == Tr[(rho^{T_B})^k]`` for every ``k``. Any mismatch therefore
certifies coherence without reconstructing ``rho``. ``k = 1, 2`` always agree,
so the comparison starts at ``k = 3``.
"""

from dataclasses import dataclass, field
from typing import Optional, Sequence

import numpy as np

from .errors import DimMismatch
from .linalg import check_dims, partial_transpose, trace_powers
from .states import DensityMatrix, example1

MOMENT_TOL = 1e-10


@dataclass(frozen=True)
class Verdict:
    coherent: bool
    first_k: Optional[int] = None
    gap: Optional[float] = None

    @property
    def label(self) -> str:
        return "coherent" if self.coherent else "undetermined"


@dataclass(frozen=True)
class MomentReport:
    cut: tuple
    subsystem: int
    kmax: int
    state_moments: np.ndarray
    pt_moments: np.ndarray
    char_coeffs: np.ndarray
    verdict: Verdict
    gaps: np.ndarray = field(repr=False)


def _resolve_cut(rho: DensityMatrix, cut: Optional[Sequence[int]]) -> tuple:
    if cut is None:
        if rho.parties != 2:
            raise DimMismatch(f"state has {rho.parties} parties; pass an explicit "
                              f"bipartite cut (M, N)")
        cut = rho.dims
    cut = check_dims(cut, rho.dim)
    if len(cut) != 2:
        raise DimMismatch(f"cut must be bipartite, got {cut}")
    return cut


def pt_moments(rho: DensityMatrix, cut=None, kmax: Optional[int] = None,
               subsystem: int = 1) -> np.ndarray:
    """``T_k = Tr[(rho^{T})^k]`` for ``k = 1..kmax``, with ``T`` the partial
    transpose on ``subsystem`` of the bipartition ``cut``."""
    cut = _resolve_cut(rho, cut)
    kmax = rho.dim if kmax is None else int(kmax)
    if not 1 <= kmax <= rho.dim:
        raise DimMismatch(f"kmax={kmax} must lie in 1..{rho.dim}")
    return trace_powers(partial_transpose(rho.mat, cut, subsystem), kmax)


def char_coeffs(moments: Sequence[float]) -> np.ndarray:
    """Characteristic-polynomial coefficients from power sums (Newton's identities).

    ``xi_0 = 1`` and ``xi_{k+1} = 1/(k+1) * sum_{l=0}^{k} (-1)^l xi_{k-l} T_{l+1}``,
    so ``xi_k`` is the k-th elementary symmetric polynomial of the eigenvalues.
    """
    t = np.asarray(moments, dtype=float)
    xi = np.zeros(t.size + 1)
    xi[0] = 1.0
    for k in range(t.size):
        acc = 0.0
        for l in range(k + 1):
            acc += (-1) ** l * xi[k - l] * t[l]
        xi[k + 1] = acc / (k + 1)
    return xi


def moment_report(rho: DensityMatrix, cut=None, kmax: Optional[int] = None,
                  moment_tol: float = MOMENT_TOL, subsystem: int = 1) -> MomentReport:
    cut = _resolve_cut(rho, cut)
    kmax = rho.dim if kmax is None else int(kmax)
    if kmax < 3:
        raise ValueError("kmax must be >= 3; moments 1 and 2 never differ")
    pt = pt_moments(rho, cut, kmax, subsystem)
    st = trace_powers(rho.mat, kmax)
    gaps = st - pt
    verdict = Verdict(False)
    for k in range(3, kmax + 1):
        if abs(gaps[k - 1]) > moment_tol:
            verdict = Verdict(True, k, float(gaps[k - 1]))
            break
    return MomentReport(cut, subsystem, kmax, st, pt, char_coeffs(pt), verdict, gaps)


def criterion(rho: DensityMatrix, cut=None, kmax: Optional[int] = None,
              moment_tol: float = MOMENT_TOL) -> Verdict:
    """Scan ``k = 3..kmax`` and report the first moment mismatch.

    The test is one-sided: ``Verdict(coherent=False)`` means *undetermined*,
    never *incoherent* (X states with equal anti-diagonals are PT-invariant).
    """
    return moment_report(rho, cut, kmax, moment_tol).verdict


def scan_example1(grid_a: Sequence[float], grid_b: Sequence[float], k: int = 3):
    """Rows ``(a, b, Tr(sigma^k) - T_k)`` over the grid, ``a``-major."""
    rows = []
    for a in grid_a:
        for b in grid_b:
            s = example1(a, b)
            st = trace_powers(s.mat, k)[-1]
            pt = pt_moments(s, (3, 3), k)[-1]
            rows.append((float(a), float(b), float(st - pt)))
    return rows
