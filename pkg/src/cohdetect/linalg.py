"""Dense complex matrix helpers.

Subsystem ordering: the leftmost tensor factor is the most significant digit
of a flat index, i.e. ``index = sum_k i_k * prod_{j>k} d_j``. This matches
``np.kron`` and C-order reshapes, and every module in the package relies on it.
"""

from typing import NamedTuple, Optional, Sequence

import numpy as np

from . import kernels
from .errors import DimMismatch, InvalidPermutation, NoConvergence, NonHermitian

HERM_TOL = 1e-10
EIG_TOL = 1e-13
MAX_SWEEPS = 100


class Spectrum(NamedTuple):
    eigenvalues: np.ndarray
    eigenvectors: Optional[np.ndarray] = None


def as_matrix(a) -> np.ndarray:
    """Coerce to a finite 2-D complex128 array."""
    m = np.asarray(a, dtype=np.complex128)
    if m.ndim != 2 or m.shape[0] < 1 or m.shape[1] < 1:
        raise DimMismatch(f"expected a non-empty 2-D matrix, got shape {m.shape}")
    if not np.all(np.isfinite(m)):
        raise ValueError("matrix contains NaN or Inf entries")
    return m


def check_dims(dims: Sequence[int], order: Optional[int] = None) -> tuple:
    """Validate a subsystem-dimension signature, optionally against a matrix order."""
    dims = tuple(int(d) for d in dims)
    if not dims or any(d < 2 for d in dims):
        raise DimMismatch(f"subsystem dimensions must be >= 2, got {dims}")
    if order is not None and int(np.prod(dims)) != order:
        raise DimMismatch(f"dims {dims} multiply to {int(np.prod(dims))}, "
                          f"matrix order is {order}")
    return dims


def hermitian_part(a, herm_tol: float = HERM_TOL) -> np.ndarray:
    """Return ``(A + A^dagger)/2`` after checking A is Hermitian to ``herm_tol`` (relative)."""
    m = as_matrix(a)
    if m.shape[0] != m.shape[1]:
        raise DimMismatch(f"matrix is not square: {m.shape}")
    asym = np.linalg.norm(m - m.conj().T)
    scale = np.linalg.norm(m)
    if asym > herm_tol * scale:
        raise NonHermitian(f"||A - A^dagger||_F = {asym:.3e} exceeds "
                           f"{herm_tol:g} * ||A||_F = {herm_tol * scale:.3e}")
    return 0.5 * (m + m.conj().T)


def hermitian_eig(a, vectors: bool = True, herm_tol: float = HERM_TOL) -> Spectrum:
    """Eigendecomposition of a Hermitian matrix by cyclic complex Jacobi rotations.

    Eigenvalues come back ascending, with eigenvectors as the matching
    columns of a unitary matrix. Raises :class:`NonHermitian` if the input
    fails the symmetry gate and :class:`NoConvergence` if the off-diagonal
    mass is still above ``1e-13 * ||A||_F`` after 100 sweeps.
    """
    h = hermitian_part(a, herm_tol)
    w, v, sweeps, ok = kernels.jacobi_eigh(h, EIG_TOL, MAX_SWEEPS)
    if not ok:
        raise NoConvergence(f"Jacobi iteration did not converge in {sweeps} sweeps")
    order = np.argsort(w, kind="stable")
    return Spectrum(w[order], v[:, order] if vectors else None)


def eigvalsh(a) -> np.ndarray:
    return hermitian_eig(a, vectors=False).eigenvalues


def kron(a, b) -> np.ndarray:
    return np.kron(as_matrix(a), as_matrix(b))


def partial_transpose(a, dims: Sequence[int], subsystem: int = 1) -> np.ndarray:
    """Transpose the indices of one subsystem.

    For a bipartite ``dims=(M, N)`` and ``subsystem=1`` this is
    ``(A^{T_B})_{ij,kl} = A_{il,kj}``.
    """
    m = as_matrix(a)
    dims = check_dims(dims, m.shape[0])
    if m.shape[0] != m.shape[1]:
        raise DimMismatch(f"matrix is not square: {m.shape}")
    p = len(dims)
    if not 0 <= subsystem < p:
        raise DimMismatch(f"subsystem {subsystem} out of range for {p} parties")
    t = m.reshape(dims + dims)
    t = np.swapaxes(t, subsystem, p + subsystem)
    return t.reshape(m.shape).copy()


def permute_subsystems(a, dims: Sequence[int], perm: Sequence[int]) -> np.ndarray:
    """Reorder tensor factors: new factor ``i`` is old factor ``perm[i]``.

    Equivalent to ``P A P^T`` with ``P`` the basis-relabelling permutation
    matrix, so the spectrum is unchanged.
    """
    m = as_matrix(a)
    dims = check_dims(dims, m.shape[0])
    p = len(dims)
    perm = [int(x) for x in perm]
    if sorted(perm) != list(range(p)):
        raise InvalidPermutation(f"{perm} is not a permutation of 0..{p - 1}")
    t = m.reshape(dims + dims)
    t = t.transpose(perm + [p + x for x in perm])
    return t.reshape(m.shape).copy()


def trace_norm_hermitian(a) -> float:
    """Sum of absolute eigenvalues of a Hermitian matrix."""
    return float(np.sum(np.abs(eigvalsh(a))))


def frobenius_norm_sq(a) -> float:
    m = as_matrix(a)
    return float(np.sum(m.real**2 + m.imag**2))


def trace(a) -> complex:
    return complex(np.trace(as_matrix(a)))


def trace_powers(a, kmax: int) -> np.ndarray:
    """``[Tr(A^1), ..., Tr(A^kmax)]`` from the spectrum of Hermitian ``A``."""
    if kmax < 1:
        raise ValueError("kmax must be >= 1")
    w = eigvalsh(a)
    return np.array([np.sum(w**k) for k in range(1, kmax + 1)])


def mat_trace_power(a, k: int) -> float:
    return float(trace_powers(a, k)[-1])
