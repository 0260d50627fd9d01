"""Spin density matrices of two dressed charged qubits.

The finite soft factor multiplies every amplitude by ``e^F``, so the dressed
density matrix is ``e^{2F}`` times the bare one.  Entropies are computed with
the natural logarithm; ``convention="trace_log"`` means ``Tr(rho log rho)``
(no minus sign) and ``"standard"`` the usual von Neumann ``-Tr(rho log rho)``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Literal

import numpy as np

from softdress.errors import ContractViolation, DomainError

HERMITIAN_TOL = 1e-12
PSD_TOL = 1e-10
TRACE_TOL = 1e-9

PRESETS = {
    "singlet": np.array([[0, 1], [-1, 0]]) / np.sqrt(2),
    "triplet0": np.array([[0, 1], [1, 0]]) / np.sqrt(2),
    "phi_plus": np.array([[1, 0], [0, 1]]) / np.sqrt(2),
    "product": np.array([[1, 0], [0, 0]]),
}


@dataclass(frozen=True)
class SpinAmplitude:
    """Grid ``phi[s1, s2]`` with index 0 = up, 1 = down, at a fixed (v, theta)."""

    phi: np.ndarray
    v: float = 0.0
    theta: float = 0.0

    def __post_init__(self):
        phi = np.asarray(self.phi, dtype=complex)
        if phi.shape != (2, 2):
            raise DomainError(f"spin amplitude must be 2x2, got {phi.shape}")
        if not np.all(np.isfinite(phi)):
            raise DomainError("spin amplitude has non-finite entries")
        object.__setattr__(self, "phi", phi)

    @classmethod
    def preset(cls, name: str, **kw) -> "SpinAmplitude":
        try:
            return cls(PRESETS[name], **kw)
        except KeyError:
            raise DomainError(f"unknown state preset {name!r}; choose from {sorted(PRESETS)}") from None

    @property
    def weight(self) -> float:
        return float(np.sum(np.abs(self.phi) ** 2))


@dataclass(frozen=True)
class DensityMatrix:
    entries: np.ndarray
    trace: float

    def __post_init__(self):
        m = np.asarray(self.entries, dtype=complex)
        if m.shape not in ((2, 2), (4, 4)):
            raise DomainError(f"density matrix must be 2x2 or 4x4, got {m.shape}")
        if np.max(np.abs(m - m.conj().T), initial=0.0) > HERMITIAN_TOL * max(1.0, np.abs(m).max()):
            raise ContractViolation("density matrix is not Hermitian")
        tr = float(np.real(np.trace(m)))
        if abs(tr - self.trace) > 1e-12 * max(1.0, abs(tr)):
            raise ContractViolation(f"recorded trace {self.trace!r} differs from Tr = {tr!r}")
        object.__setattr__(self, "entries", m)

    @classmethod
    def from_matrix(cls, m) -> "DensityMatrix":
        m = np.asarray(m, dtype=complex)
        return cls(m, float(np.real(np.trace(m))))

    @property
    def dim(self) -> int:
        return self.entries.shape[0]

    def eigenvalues(self) -> np.ndarray:
        return np.linalg.eigvalsh(self.entries)

    def check_psd(self, tol: float = PSD_TOL) -> None:
        lo = float(self.eigenvalues().min())
        if lo < -tol:
            raise ContractViolation(f"density matrix not positive semidefinite (min eigenvalue {lo:.3e})")

    def scaled(self, c: float) -> "DensityMatrix":
        return DensityMatrix(c * self.entries, c * self.trace)

    def normalized(self) -> "DensityMatrix":
        if not self.trace > 0:
            raise DomainError("cannot normalize a density matrix with zero trace")
        return DensityMatrix(self.entries / self.trace, 1.0)


def density_from_amplitude(a: SpinAmplitude, F: float = 0.0) -> DensityMatrix:
    """``rho^d = e^{2F} phi phi^dagger`` on the 4-dimensional spin space (index ``2*s1 + s2``)."""
    psi = a.phi.reshape(4)
    rho = np.exp(2 * F) * np.outer(psi, psi.conj())
    return DensityMatrix(rho, float(np.exp(2 * F) * a.weight))


def reduce_particle1(rho4: DensityMatrix) -> DensityMatrix:
    """Partial trace over the spin of particle 2."""
    if rho4.dim != 4:
        raise DomainError(f"reduce_particle1 needs a 4x4 matrix, got dim {rho4.dim}")
    r = np.einsum("ajbj->ab", rho4.entries.reshape(2, 2, 2, 2))
    return DensityMatrix(r, float(np.real(np.trace(r))))


def reduced_from_amplitude(a: SpinAmplitude) -> np.ndarray:
    """``sum_s phi[s1, s] conj(phi[s1', s])`` straight from the amplitude grid."""
    return a.phi @ a.phi.conj().T


def _xlogx(eig: np.ndarray) -> float:
    eig = np.clip(eig, 0.0, None)
    pos = eig[eig > 0]
    return float(np.sum(pos * np.log(pos)))


def entropy_trace(rho: DensityMatrix, convention: Literal["trace_log", "standard"] = "standard",
                  base: float | None = None) -> float:
    """``Tr(rho log rho)`` (trace_log) or ``-Tr(rho log rho)`` (standard); ``0 log 0 = 0``."""
    rho.check_psd()
    val = _xlogx(rho.eigenvalues())
    if base is not None:
        val /= np.log(base)
    if convention == "trace_log":
        return val
    if convention == "standard":
        return -val
    raise DomainError(f"unknown entropy convention {convention!r}")


def dressed_entropy_identity_check(rho: DensityMatrix, F: float) -> float:
    """``|T(e^{2F} rho) - e^{2F}(T(rho) + 2F Tr rho)|`` with ``T(x) = Tr(x log x)``."""
    c = np.exp(2 * F)
    lhs = entropy_trace(rho.scaled(c), "trace_log")
    rhs = c * (entropy_trace(rho, "trace_log") + 2 * F * rho.trace)
    return abs(lhs - rhs)


def dressed_entropy(S: float, F: float, trace_rho: float,
                    mode: Literal["bare_normalized", "dressed_normalized"]) -> float:
    """Dressed entropy under one of the two normalization readings.

    ``trace_rho`` is the trace of the bare reduced matrix: 1 for
    ``bare_normalized``, ``e^{-2F}`` for ``dressed_normalized``.
    """
    c = np.exp(2 * F)
    if mode == "bare_normalized":
        expected = 1.0
    elif mode == "dressed_normalized":
        expected = 1.0 / c
    else:
        raise DomainError(f"unknown normalization mode {mode!r}")
    if abs(trace_rho - expected) > TRACE_TOL:
        raise DomainError(f"Tr rho = {trace_rho!r} inconsistent with mode {mode!r} (expected {expected!r})")
    if mode == "bare_normalized":
        return c * (S + 2 * F)
    return c * S + 2 * F


def normalized_entanglement(rho4: DensityMatrix, F: float = 0.0) -> float:
    """Von Neumann entropy (standard sign) of particle 1 after normalizing the dressed state."""
    if not rho4.trace > 0:
        raise DomainError("state has zero trace")
    dressed = rho4.scaled(np.exp(2 * F))
    return entropy_trace(reduce_particle1(dressed).normalized(), "standard")
