"""Nonlinear (multi-copy) witness evaluation.

A :class:`Wiring` places the tensor factors of a product witness onto the
``(copy, subsystem)`` slots of ``rho^{(x)k}``. Slots are ordered copy-major
internally: copy 0's subsystems first, then copy 1's, and so on. For a
zero-diagonal witness the expectation vanishes on every ``sigma^{(x)k}``
with ``sigma`` incoherent, so any nonzero value certifies coherence.

Text form of a wiring: ``W@A1,A2;V@B1,B2``. Letters name subsystems
(``A`` = 0), digits name copies (1-based).
"""

import re
from dataclasses import dataclass
from functools import reduce
from typing import List, NamedTuple, Optional, Sequence

import numpy as np

from .errors import NonRealTrace, ParseError, WiringInvalid
from .linalg import permute_subsystems
from .states import DensityMatrix
from .witness import NONNEG, NULL, IMAG_TOL, Witness, expectation

DETECT_TOL = 1e-9


class Slot(NamedTuple):
    copy: int
    subsystem: int

    def label(self) -> str:
        return f"{chr(ord('A') + self.subsystem)}{self.copy + 1}"


@dataclass(frozen=True)
class Factor:
    witness: Witness
    slots: tuple


@dataclass(frozen=True)
class Wiring:
    copies: int
    factors: tuple

    @classmethod
    def build(cls, copies: int, factors) -> "Wiring":
        """``factors`` is an iterable of ``(witness, [(copy, subsystem), ...])``."""
        return cls(int(copies), tuple(
            Factor(w, tuple(Slot(int(c), int(s)) for c, s in slots)) for w, slots in factors))

    @property
    def slot_sequence(self) -> List[Slot]:
        return [s for f in self.factors for s in f.slots]

    @property
    def convention(self) -> str:
        if any(f.witness.convention == NULL for f in self.factors):
            return NULL
        return NONNEG

    def validate(self, state_dims: Sequence[int]) -> None:
        parties = len(state_dims)
        if self.copies < 1:
            raise WiringInvalid(f"copies must be >= 1, got {self.copies}")
        seq = self.slot_sequence
        expected = {Slot(c, s) for c in range(self.copies) for s in range(parties)}
        if len(seq) != len(expected) or set(seq) != expected:
            missing = sorted(expected - set(seq))
            extra = [s for s in seq if s not in expected]
            dup = sorted({s for s in seq if seq.count(s) > 1})
            raise WiringInvalid(
                f"slots do not cover {self.copies} copies x {parties} subsystems exactly "
                f"once (missing {[s.label() for s in missing]}, "
                f"out of range {[s.label() for s in extra]}, "
                f"repeated {[s.label() for s in dup]})")
        for f in self.factors:
            w = f.witness
            if len(f.slots) != w.parties:
                raise WiringInvalid(f"witness {w.name or '?'} acts on {w.parties} "
                                    f"subsystems but was given {len(f.slots)} slots")
            for slot, d in zip(f.slots, w.dims):
                if state_dims[slot.subsystem] != d:
                    raise WiringInvalid(
                        f"slot {slot.label()} has dimension {state_dims[slot.subsystem]}, "
                        f"witness {w.name or '?'} expects {d}")

    def text(self) -> str:
        parts = []
        for i, f in enumerate(self.factors):
            name = f.witness.name or f"W{i}"
            parts.append(f"{name}@" + ",".join(s.label() for s in f.slots))
        return ";".join(parts)


_SLOT_RE = re.compile(r"^([A-Z])(\d+)$")


def parse_wiring(text: str, witnesses: dict, copies: Optional[int] = None) -> Wiring:
    """Parse ``name@A1,B2;name@...``; ``witnesses`` maps names to :class:`Witness`."""
    factors = []
    for chunk in filter(None, (c.strip() for c in text.split(";"))):
        if "@" not in chunk:
            raise ParseError(f"factor {chunk!r} lacks '@'")
        name, _, slot_text = chunk.partition("@")
        name = name.strip()
        if name not in witnesses:
            raise ParseError(f"unknown witness {name!r}; have {sorted(witnesses)}")
        slots = []
        for tok in slot_text.split(","):
            m = _SLOT_RE.match(tok.strip().upper())
            if not m or int(m.group(2)) < 1:
                raise ParseError(f"bad slot token {tok!r} (want e.g. A1)")
            slots.append((int(m.group(2)) - 1, ord(m.group(1)) - ord("A")))
        factors.append((witnesses[name], slots))
    if not factors:
        raise ParseError("empty wiring")
    k = max(c for _, sl in factors for c, _ in sl) + 1
    if copies is not None:
        if copies < k:
            raise WiringInvalid(f"wiring uses copy {k} but copies={copies}")
        k = copies
    return Wiring.build(k, factors)


def assemble(wiring: Wiring, state_dims: Sequence[int]) -> np.ndarray:
    """Dense operator on ``rho^{(x)k}`` in copy-major slot order."""
    state_dims = tuple(state_dims)
    wiring.validate(state_dims)
    parties = len(state_dims)
    seq = wiring.slot_sequence
    op = reduce(np.kron, [f.witness.mat for f in wiring.factors])
    canonical = [Slot(c, s) for c in range(wiring.copies) for s in range(parties)]
    perm = [seq.index(slot) for slot in canonical]
    dims_seq = [state_dims[s.subsystem] for s in seq]
    return permute_subsystems(op, dims_seq, perm)


def _check_real(val: complex, wiring: Wiring) -> float:
    scale = float(np.prod([np.linalg.norm(f.witness.mat) for f in wiring.factors]))
    if abs(val.imag) > IMAG_TOL * max(1.0, scale):
        raise NonRealTrace(f"multi-copy trace has imaginary part {val.imag:.3e}")
    return val.real


def nonlinear_expectation(wiring: Wiring, rho: DensityMatrix) -> float:
    """``Re Tr(O rho^{(x)k})`` contracted factor by factor (``rho^{(x)k}`` is never formed)."""
    dims = rho.dims
    wiring.validate(dims)
    parties = len(dims)
    nslots = wiring.copies * parties

    def pos(slot):
        return slot.copy * parties + slot.subsystem

    operands = []
    for f in wiring.factors:
        w = f.witness
        operands.append(w.mat.reshape(w.dims + w.dims))
        operands.append([pos(s) for s in f.slots] + [nslots + pos(s) for s in f.slots])
    r = rho.mat.reshape(dims + dims)
    for c in range(wiring.copies):
        operands.append(r)
        operands.append([nslots + c * parties + s for s in range(parties)]
                        + [c * parties + s for s in range(parties)])
    operands.append([])
    val = complex(np.einsum(*operands, optimize="greedy"))
    return _check_real(val, wiring)


def dense_expectation(wiring: Wiring, rho: DensityMatrix) -> float:
    """Same quantity via :func:`assemble` and an explicit ``rho^{(x)k}``; small cases only."""
    op = assemble(wiring, rho.dims)
    big = reduce(np.kron, [rho.mat] * wiring.copies)
    return _check_real(complex(np.sum(op * big.T)), wiring)


def is_detected(value: float, convention: str, tol: float = DETECT_TOL) -> bool:
    if convention == NULL:
        return abs(value) > tol
    return value < -tol


# -- cascade ------------------------------------------------------------------

def aligned_wiring(witnesses, copies: int, parties: int) -> Wiring:
    """Factor ``i`` covers subsystem ``i`` on every copy (``W_{A1A2} (x) V_{B1B2}``)."""
    return Wiring.build(copies, [
        (witnesses[i % len(witnesses)], [(j, i) for j in range(copies)])
        for i in range(parties)])


def cyclic_wiring(witnesses, copies: int, parties: int) -> Wiring:
    """Factor ``i`` slot ``j`` sits on subsystem ``(i + j) mod P`` of copy ``j``.

    Two copies give ``W_{A1B2} (x) V_{B1A2}``; three copies of a three-party
    state give ``W_{A1B2C3} (x) W_{B1C2A3} (x) W_{C1A2B3}``.
    """
    return Wiring.build(copies, [
        (witnesses[i % len(witnesses)], [(j, (i + j) % parties) for j in range(copies)])
        for i in range(parties)])


def staggered_wiring(witnesses, parties: int) -> Wiring:
    """Two copies, two full-width factors: ``W_{A1B2C2} (x) W_{B1C1A2}`` for three parties."""
    rest = list(range(1, parties))
    return Wiring.build(2, [
        (witnesses[0], [(0, 0)] + [(1, s) for s in rest]),
        (witnesses[1 % len(witnesses)], [(0, s) for s in rest] + [(1, 0)]),
    ])


@dataclass(frozen=True)
class CascadeStep:
    level: int
    pattern: str
    wiring: str
    value: float
    detected: bool


@dataclass(frozen=True)
class CascadeReport:
    steps: tuple

    @property
    def detected(self) -> bool:
        return any(s.detected for s in self.steps)

    @property
    def first(self) -> Optional[CascadeStep]:
        return next((s for s in self.steps if s.detected), None)


def _candidates(witnesses, k: int, dims):
    parties = len(dims)
    aligned = ("aligned", lambda: aligned_wiring(witnesses, k, parties))
    cyclic = ("cyclic", lambda: cyclic_wiring(witnesses, k, parties))
    if k == 2:
        menu = [aligned, cyclic]
        if parties >= 2:
            menu.append(("staggered", lambda: staggered_wiring(witnesses, parties)))
    else:
        menu = [cyclic, aligned]
    seen = set()
    for name, make in menu:
        w = make()
        try:
            w.validate(dims)
        except WiringInvalid:
            continue
        key = tuple((id(f.witness), f.slots) for f in w.factors)
        if key in seen:
            continue
        seen.add(key)
        yield name, w


def cascade(witnesses: Sequence[Witness], rho: DensityMatrix, max_copies: int = 3,
            detect_tol: float = DETECT_TOL,
            extra: Sequence[Wiring] = ()) -> CascadeReport:
    """Escalate from linear to multi-copy detection, stopping at the first hit.

    Level 1 evaluates each witness whose order matches ``rho``. Level 2 tries
    the aligned, cyclic and staggered wirings; level 3 the cyclic, then the
    aligned wiring. Patterns whose slot shapes do not fit the witnesses are
    skipped. ``extra`` wirings are evaluated at
    their own copy level after the built-in patterns.
    """
    if not 1 <= max_copies <= 3:
        raise ValueError("max_copies must be 1, 2 or 3")
    witnesses = list(witnesses)
    steps = []
    for k in range(1, max_copies + 1):
        if k == 1:
            for w in witnesses:
                if w.dim != rho.dim:
                    continue
                val = expectation(w, rho)
                hit = is_detected(val, w.convention, detect_tol)
                steps.append(CascadeStep(1, "linear", w.name or "W", val, hit))
                if hit:
                    return CascadeReport(tuple(steps))
            candidates = []
        else:
            candidates = list(_candidates(witnesses, k, rho.dims))
        candidates += [("user", w) for w in extra if w.copies == k]
        for name, wiring in candidates:
            val = nonlinear_expectation(wiring, rho)
            hit = is_detected(val, wiring.convention, detect_tol)
            steps.append(CascadeStep(k, name, wiring.text(), val, hit))
            if hit:
                return CascadeReport(tuple(steps))
    return CascadeReport(tuple(steps))
