"""Density matrices, dephasing, and the state families used throughout the package."""

from dataclasses import dataclass, field
from typing import Optional, Sequence

import numpy as np

from .errors import InvalidState, OutOfRange
from .linalg import as_matrix, check_dims, eigvalsh, hermitian_part

PSD_TOL = 1e-10
TRACE_TOL = 1e-10


@dataclass(frozen=True, eq=False)
class DensityMatrix:
    """Hermitian, positive semidefinite, unit-trace matrix with subsystem dims.

    Construction validates; the stored array is read-only.
    """

    mat: np.ndarray
    dims: tuple
    name: Optional[str] = field(default=None, compare=False)

    def __post_init__(self):
        m = hermitian_part(self.mat)
        dims = check_dims(self.dims, m.shape[0])
        tr = np.trace(m).real
        if abs(tr - 1.0) > TRACE_TOL:
            raise InvalidState(f"trace is {tr!r}, expected 1")
        lam_min = eigvalsh(m)[0]
        if lam_min < -PSD_TOL:
            raise InvalidState(f"minimum eigenvalue {lam_min:.3e} < -{PSD_TOL:g}")
        m.setflags(write=False)
        object.__setattr__(self, "mat", m)
        object.__setattr__(self, "dims", dims)

    def __eq__(self, other):
        if not isinstance(other, DensityMatrix):
            return NotImplemented
        return self.dims == other.dims and np.array_equal(self.mat, other.mat)

    __hash__ = None

    @classmethod
    def from_array(cls, a, dims: Optional[Sequence[int]] = None,
                   renormalize: bool = False, name: Optional[str] = None):
        """Build from raw data; ``renormalize`` rescales the trace to 1 first
        (used for file input, where round-trips perturb at ~1e-16)."""
        m = as_matrix(a)
        if dims is None:
            dims = (m.shape[0],)
        if renormalize:
            m = hermitian_part(m)
            m = m / np.trace(m).real
        return cls(m, tuple(dims), name)

    @property
    def dim(self) -> int:
        return self.mat.shape[0]

    @property
    def parties(self) -> int:
        return len(self.dims)


def dephase(rho: DensityMatrix) -> DensityMatrix:
    """Zero every off-diagonal entry in the computational product basis."""
    return DensityMatrix(np.diag(np.diag(rho.mat)), rho.dims)


def is_incoherent(rho: DensityMatrix, tol: float = 1e-12) -> bool:
    """True iff the largest off-diagonal modulus is at most ``tol``."""
    m = np.asarray(rho.mat if isinstance(rho, DensityMatrix) else rho)
    off = m - np.diag(np.diag(m))
    return bool(np.max(np.abs(off), initial=0.0) <= tol)


def _in_range(name, x, lo, hi, lo_open=False):
    x = float(x)
    ok = (lo < x if lo_open else lo <= x) and x <= hi
    if not ok or not np.isfinite(x):
        bracket = "(" if lo_open else "["
        raise OutOfRange(f"{name}={x!r} outside {bracket}{lo}, {hi}]")
    return x


def example1(a: float, b: float) -> DensityMatrix:
    """Two-parameter two-qutrit family; incoherent only at ``a = b = 0``."""
    a = _in_range("a", a, 0.0, 1.0)
    b = _in_range("b", b, 0.0, 0.5)
    s = np.zeros((9, 9))
    s[0, 0] = s[8, 8] = 1.0
    s[0, 8] = s[8, 0] = a
    s[1, 1] = s[2, 2] = b
    s[1, 2] = s[2, 1] = b / 2
    s[4, 4] = s[6, 6] = 1.0 - b
    s[4, 6] = s[6, 4] = b
    return DensityMatrix(s / 4, (3, 3), "example1")


def x_state(alpha: float, beta: float) -> DensityMatrix:
    """Two-qubit X state with anti-diagonal entries alpha/4 (outer) and beta/4 (inner)."""
    alpha = _in_range("alpha", alpha, 0.0, 1.0)
    beta = _in_range("beta", beta, 0.0, 1.0)
    m = np.eye(4)
    m[0, 3] = m[3, 0] = alpha
    m[1, 2] = m[2, 1] = beta
    return DensityMatrix(m / 4, (2, 2), "x_state")


def ghz_vector(n: int = 3) -> np.ndarray:
    v = np.zeros(2**n)
    v[0] = v[-1] = 1 / np.sqrt(2)
    return v


def noisy_ghz(g: float) -> DensityMatrix:
    """Three-qubit GHZ state mixed with white noise: (1-g)/8 I + g |GHZ><GHZ|."""
    g = _in_range("g", g, 0.0, 1.0)
    v = ghz_vector(3)
    m = (1 - g) / 8 * np.eye(8) + g * np.outer(v, v)
    return DensityMatrix(m, (2, 2, 2), "noisy_ghz")


def rho_c(c: float) -> DensityMatrix:
    """Three-qubit state whose coherence is invisible to one and two copies of
    the |001><111| + h.c. witness but visible to three.

    ``c = 0`` is accepted as the incoherent limit.
    """
    c = _in_range("c", c, 0.0, 1.0)
    m = np.zeros((8, 8))
    m[0, 0] = m[7, 7] = m[0, 7] = m[7, 0] = c
    m[1, 1] = m[6, 6] = 1 - c
    return DensityMatrix(m / 2, (2, 2, 2), "rho_c")


def max_entangled_vector(d: int) -> np.ndarray:
    v = np.zeros(d * d)
    v[[i * d + i for i in range(d)]] = 1 / np.sqrt(d)
    return v


def max_entangled(d: int) -> DensityMatrix:
    """|psi+><psi+| with |psi+> = sum_i |ii> / sqrt(d)."""
    d = int(d)
    if d < 2:
        raise OutOfRange(f"d={d} must be >= 2")
    v = max_entangled_vector(d)
    return DensityMatrix(np.outer(v, v), (d, d), "max_entangled")


def isotropic(v: float, d: int = 3) -> DensityMatrix:
    """(1-v)/(d^2-1) (I - Phi) + v Phi on two qudits."""
    v = _in_range("v", v, 0.0, 1.0)
    d = int(d)
    if d < 2:
        raise OutOfRange(f"d={d} must be >= 2")
    phi = max_entangled_vector(d)
    proj = np.outer(phi, phi)
    m = (1 - v) / (d * d - 1) * (np.eye(d * d) - proj) + v * proj
    return DensityMatrix(m, (d, d), "isotropic")


def pure(vector, dims: Optional[Sequence[int]] = None) -> DensityMatrix:
    psi = np.asarray(vector, dtype=np.complex128).ravel()
    norm = np.linalg.norm(psi)
    if norm == 0:
        raise OutOfRange("zero state vector")
    psi = psi / norm
    return DensityMatrix(np.outer(psi, psi.conj()), tuple(dims or (psi.size,)), "pure")


# -- random states -----------------------------------------------------------
#
# Philox4x64 (counter-based) feeds uniform doubles; normals come from
# Box-Muller so the stream is reproducible from the seed alone.

def _generator(seed: int) -> np.random.Generator:
    return np.random.Generator(np.random.Philox(int(seed)))


def box_muller(rng: np.random.Generator, size: int) -> np.ndarray:
    m = (size + 1) // 2
    u1 = 1.0 - rng.random(m)  # (0, 1], keeps log finite
    u2 = rng.random(m)
    r = np.sqrt(-2.0 * np.log(u1))
    z = np.concatenate([r * np.cos(2 * np.pi * u2), r * np.sin(2 * np.pi * u2)])
    return z[:size]


def complex_normals(rng: np.random.Generator, shape) -> np.ndarray:
    n = int(np.prod(shape))
    z = box_muller(rng, 2 * n)
    return ((z[:n] + 1j * z[n:]) / np.sqrt(2)).reshape(shape)


def random_density(dim: int, seed: int,
                   dims: Optional[Sequence[int]] = None) -> DensityMatrix:
    """Ginibre state G G^dagger / Tr(G G^dagger), deterministic in ``seed``."""
    dim = int(dim)
    if dim < 2:
        raise OutOfRange(f"dim={dim} must be >= 2")
    g = complex_normals(_generator(seed), (dim, dim))
    m = g @ g.conj().T
    m = 0.5 * (m + m.conj().T)
    return DensityMatrix(m / np.trace(m).real, tuple(dims or (dim,)), "random")


def random_diagonal(dim: int, seed: int,
                    dims: Optional[Sequence[int]] = None) -> DensityMatrix:
    """Diagonal state with a uniform (flat Dirichlet) probability vector."""
    dim = int(dim)
    if dim < 2:
        raise OutOfRange(f"dim={dim} must be >= 2")
    rng = _generator(seed)
    e = -np.log(1.0 - rng.random(dim))
    return DensityMatrix(np.diag(e / e.sum()), tuple(dims or (dim,)), "random_diagonal")


def random_unitary(dim: int, seed: int) -> np.ndarray:
    """Haar unitary from the QR of a complex Ginibre matrix (phase-corrected)."""
    z = complex_normals(_generator(seed), (dim, dim))
    q, r = np.linalg.qr(z)
    ph = np.diag(r) / np.abs(np.diag(r))
    return q * ph


FAMILIES = {
    "example1": example1,
    "x_state": x_state,
    "noisy_ghz": noisy_ghz,
    "rho_c": rho_c,
    "isotropic": isotropic,
    "max_entangled": max_entangled,
    "pure": pure,
    "random": random_density,
    "random_diagonal": random_diagonal,
}


def make_state(family: str, **params) -> DensityMatrix:
    """Dispatch to a named family constructor, e.g. ``make_state("x_state", alpha=.5, beta=.5)``."""
    try:
        ctor = FAMILIES[family]
    except KeyError:
        raise OutOfRange(f"unknown state family {family!r}; "
                         f"choose from {sorted(FAMILIES)}") from None
    return ctor(**params)
