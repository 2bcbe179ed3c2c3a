"""Coherence witnesses: validation, expectation values, normalisation.

Two detection conventions are supported:

``"null"``
    ``Tr(W sigma) = 0`` for every incoherent ``sigma`` (equivalently, W has a
    zero diagonal); a nonzero expectation flags coherence.
``"nonneg"``
    ``Tr(W sigma) >= 0`` for every incoherent ``sigma`` (equivalently, the
    smallest diagonal entry is nonnegative); a negative expectation flags
    coherence.
"""

from dataclasses import dataclass, field
from typing import Optional, Sequence

import numpy as np

from .errors import (DegenerateSpectrum, DiagonalNotZero, DimMismatch,
                     NegativeOnIncoherent, NonRealTrace)
from .linalg import check_dims, hermitian_eig, hermitian_part
from .states import DensityMatrix, random_diagonal

DIAG_TOL = 1e-12
DEGENERACY_TOL = 1e-10
IMAG_TOL = 1e-12

NULL = "null"
NONNEG = "nonneg"
CONVENTIONS = (NULL, NONNEG)


def _check_convention(mat: np.ndarray, convention: str) -> None:
    d = np.diag(mat)
    if convention == NULL:
        i = int(np.argmax(np.abs(d)))
        if abs(d[i]) > DIAG_TOL:
            raise DiagonalNotZero(f"diagonal entry ({i},{i}) = {d[i]:.6g} is not zero; "
                                  f"a null-convention witness must vanish on incoherent states")
    elif convention == NONNEG:
        i = int(np.argmin(d.real))
        if d[i].real < -DIAG_TOL:
            raise NegativeOnIncoherent(f"Tr(W |{i}><{i}|) = {d[i].real:.6g} < 0")
    else:
        raise ValueError(f"convention must be one of {CONVENTIONS}, got {convention!r}")


@dataclass(frozen=True, eq=False)
class Witness:
    mat: np.ndarray
    dims: tuple
    convention: str = NULL
    name: Optional[str] = field(default=None, compare=False)

    def __post_init__(self):
        m = hermitian_part(self.mat)
        dims = check_dims(self.dims, m.shape[0])
        _check_convention(m, self.convention)
        m.setflags(write=False)
        object.__setattr__(self, "mat", m)
        object.__setattr__(self, "dims", dims)

    def __eq__(self, other):
        if not isinstance(other, Witness):
            return NotImplemented
        return (self.dims == other.dims and self.convention == other.convention
                and np.array_equal(self.mat, other.mat))

    __hash__ = None

    @property
    def dim(self) -> int:
        return self.mat.shape[0]

    @property
    def parties(self) -> int:
        return len(self.dims)


@dataclass(frozen=True)
class NormalizedWitness:
    mat: np.ndarray
    lambda_plus: float
    lambda_minus: float


@dataclass(frozen=True)
class ValidationReport:
    convention: str
    diag_extreme: float
    samples: int
    max_sample_abs: float


def validate(w: Witness, samples: int = 100, seed: int = 0) -> ValidationReport:
    """Re-check a witness and spot-check it on random incoherent states.

    Hermiticity and the diagonal condition are exact checks (already run at
    construction); for the null convention ``Tr(W sigma)`` is also sampled
    on ``samples`` random diagonal states. Raises on the first failure.
    """
    m = hermitian_part(w.mat)
    _check_convention(m, w.convention)
    d = np.diag(m).real
    worst = 0.0
    if w.convention == NULL:
        for s in range(samples):
            sigma = random_diagonal(w.dim, seed + s)
            val = expectation(w, sigma)
            worst = max(worst, abs(val))
            if abs(val) > DIAG_TOL:
                raise DiagonalNotZero(f"Tr(W sigma) = {val:.3e} on random diagonal "
                                      f"state seed={seed + s}")
        extreme = float(np.abs(d).max(initial=0.0))
    else:
        extreme = float(d.min())
    return ValidationReport(w.convention, extreme, samples if w.convention == NULL else 0,
                            worst)


def _matrix_of(x) -> np.ndarray:
    if isinstance(x, (Witness, DensityMatrix, NormalizedWitness)):
        return x.mat
    return np.asarray(x, dtype=np.complex128)


def expectation(w, rho) -> float:
    """``Re Tr(W rho)``; only the total dimension has to match."""
    wm, rm = _matrix_of(w), _matrix_of(rho)
    if wm.shape != rm.shape:
        raise DimMismatch(f"witness order {wm.shape[0]} != state order {rm.shape[0]}")
    val = complex(np.sum(wm * rm.T))
    if abs(val.imag) > IMAG_TOL * max(1.0, float(np.linalg.norm(wm))):
        raise NonRealTrace(f"Tr(W rho) has imaginary part {val.imag:.3e}")
    return val.real


def eig_extremes(w) -> tuple:
    """``(lambda_min, lambda_max)`` of a Hermitian witness."""
    ev = hermitian_eig(_matrix_of(w), vectors=False).eigenvalues
    return float(ev[0]), float(ev[-1])


def _spread(lam_minus: float, lam_plus: float) -> float:
    spread = lam_plus - lam_minus
    if spread <= DEGENERACY_TOL * max(1.0, abs(lam_plus)):
        raise DegenerateSpectrum(f"lambda_+ - lambda_- = {spread:.3e}; the witness "
                                 f"is a multiple of the identity")
    return spread


def normalize(w) -> NormalizedWitness:
    """Affine rescale ``(2W - (l+ + l-) I) / (l+ - l-)``; spectrum lands on [-1, 1]
    with both endpoints attained."""
    m = _matrix_of(w)
    lam_minus, lam_plus = eig_extremes(m)
    spread = _spread(lam_minus, lam_plus)
    n = m.shape[0]
    wn = (2 * m - (lam_plus + lam_minus) * np.eye(n)) / spread
    wn.setflags(write=False)
    return NormalizedWitness(wn, lam_plus, lam_minus)


# -- witnesses used in the worked examples -----------------------------------

def _flip(n_qubits: int, ket: str, bra: str) -> np.ndarray:
    m = np.zeros((2**n_qubits, 2**n_qubits))
    i, j = int(ket, 2), int(bra, 2)
    m[i, j] = m[j, i] = 1.0
    return m


def example2_witnesses() -> tuple:
    """``W = |00><10| + h.c.`` and ``V = |01><11| + h.c.``."""
    return (Witness(_flip(2, "00", "10"), (2, 2), NULL, "W"),
            Witness(_flip(2, "01", "11"), (2, 2), NULL, "V"))


def example3_witness() -> Witness:
    """``(X(x)X + Y(x)Y) / 2 = |01><10| + |10><01|``."""
    x = np.array([[0, 1], [1, 0]], dtype=complex)
    y = np.array([[0, -1j], [1j, 0]])
    return Witness((np.kron(x, x) + np.kron(y, y)) / 2, (2, 2), NULL, "W")


def example4_witness() -> Witness:
    """``|001><111| + h.c.`` on three qubits."""
    return Witness(_flip(3, "001", "111"), (2, 2, 2), NULL, "W")


def dephasing_witness(rho: DensityMatrix, dims: Optional[Sequence[int]] = None) -> Witness:
    """``Delta(rho) - rho``: zero diagonal, ``Tr(W rho) = -sum_{i!=j} |rho_ij|^2``."""
    m = np.diag(np.diag(rho.mat)) - rho.mat
    return Witness(m, tuple(dims or rho.dims), NULL, "dephasing")
