"""Coherent soft-photon cloud carried by an asymptotic two-charge state.

Classical mode amplitudes ``f^mu(k)`` generate the cloud exponent; the
expected photon number uses two transverse polarizations in the frame
``eta = (1, 0)``.  A truncated multi-mode Fock simulator checks, at toy
scale, that displacement exponentials and their commutator phases behave as
the closed forms say.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import reduce
from typing import Sequence

import numpy as np
from scipy.linalg import expm

from softdress.errors import ContractViolation, DomainError
from softdress.kinematics import minkowski_dot
from softdress.quadrature import QuadratureSpec, sphere_nodes
from softdress.soft_integrals import Regulators

LEAKAGE_BOUND = 1e-10
MAX_MODES = 4
MAX_NMAX = 64
MAX_FOCK_DIM = 4096
NULL_RTOL = 1e-12


@dataclass(frozen=True)
class CloudSpec:
    particles: tuple
    e2: float
    t: float = 0.0

    def __post_init__(self):
        if len(self.particles) == 0:
            raise DomainError("cloud needs at least one particle")
        if not self.e2 > 0:
            raise DomainError(f"coupling e2 must be positive, got {self.e2!r}")
        object.__setattr__(self, "particles", tuple(self.particles))


def cloud_amplitude(spec: CloudSpec, k) -> np.ndarray:
    """Complex mode amplitude ``f^mu(k)`` of the cloud for a null ``k``.

    ``f = e / ((2 pi)^{3/2} sqrt(2 k0)) * sum_j eta_j p_j/(p_j.k) * exp(i k.p_j t / p_j0)``.
    """
    k = np.asarray(k, dtype=float)
    if k.shape != (4,):
        raise DomainError("photon momentum must be a four-vector")
    if not k[0] > 0:
        raise DomainError("photon energy must be positive")
    if abs(minkowski_dot(k, k)) > NULL_RTOL * k[0] ** 2:
        raise DomainError("photon momentum must be null")
    pref = np.sqrt(spec.e2) / ((2 * np.pi) ** 1.5 * np.sqrt(2 * k[0]))
    f = np.zeros(4, dtype=complex)
    for part in spec.particles:
        p = part.momentum.as_array()
        pk = minkowski_dot(p, k)
        f += part.charge_sign * p / pk * np.exp(1j * pk * spec.t / p[0])
    return pref * f


def transverse_polarizations(n) -> tuple[np.ndarray, np.ndarray]:
    """Two orthonormal spatial vectors perpendicular to each row of ``n``."""
    n = np.atleast_2d(np.asarray(n, dtype=float))
    ref = np.where(np.abs(n[:, 2:3]) < 0.9, [[0.0, 0.0, 1.0]], [[1.0, 0.0, 0.0]])
    e1 = np.cross(n, ref)
    e1 /= np.linalg.norm(e1, axis=1, keepdims=True)
    e2 = np.cross(n, e1)
    return e1, e2


def angular_number_density(spec: CloudSpec, n) -> np.ndarray:
    """``omega * d<N>/(d omega dOmega)`` at unit directions ``n`` (t = 0).

    Sums ``|eps . f|**2`` over explicit transverse polarizations of the
    amplitude at ``omega = 1``.  ``omega**3 |f|**2`` does not depend on
    ``omega``, so ``d<N> = density * (d omega / omega) * dOmega``.
    """
    n = np.atleast_2d(np.asarray(n, dtype=float))
    pref = np.sqrt(spec.e2) / ((2 * np.pi) ** 1.5 * np.sqrt(2.0))
    spatial = np.zeros_like(n)
    for part in spec.particles:
        v = part.v
        spatial += part.charge_sign * v[None, :] / (1.0 - n @ v)[:, None]
    e1, e2 = transverse_polarizations(n)
    amp1 = pref * np.einsum("ij,ij->i", e1, spatial)
    amp2 = pref * np.einsum("ij,ij->i", e2, spatial)
    return amp1**2 + amp2**2


def cloud_angular_coefficient(spec: CloudSpec, quad: QuadratureSpec = QuadratureSpec()) -> float:
    """Coefficient of ``ln(Delta/lambda)`` in the expected photon number."""
    n, w = sphere_nodes(quad)
    return float(np.dot(w, angular_number_density(spec, n)))


def expected_photon_number(spec: CloudSpec, reg: Regulators,
                           quad: QuadratureSpec = QuadratureSpec()) -> float:
    """``<N>`` of soft photons with ``lambda <= |k| <= Delta`` (evaluated at t = 0)."""
    return cloud_angular_coefficient(spec, quad) * reg.log_ratio


def vacuum_overlap(n_expected: float) -> float:
    """``|<0|cloud>| = exp(-<N>/2)`` for a coherent cloud."""
    if n_expected < 0:
        raise DomainError(f"expected photon number must be >= 0, got {n_expected!r}")
    return float(np.exp(-0.5 * n_expected))


# -- truncated Fock toy model -------------------------------------------------


@dataclass
class FockState:
    """Truncated product-basis state; one mutable vector per simulation."""

    n_max: tuple
    amplitudes: np.ndarray
    labels: tuple = field(default=())

    def __post_init__(self):
        self.n_max = tuple(int(n) for n in self.n_max)
        if not self.labels:
            self.labels = tuple(f"mode{i}" for i in range(len(self.n_max)))
        dims = tuple(n + 1 for n in self.n_max)
        self.amplitudes = np.asarray(self.amplitudes, dtype=complex).reshape(dims)

    @property
    def dims(self):
        return self.amplitudes.shape

    @property
    def norm(self) -> float:
        return float(np.linalg.norm(self.amplitudes))

    def normalize(self) -> "FockState":
        self.amplitudes = self.amplitudes / self.norm
        return self

    def vacuum_overlap(self) -> float:
        return float(abs(self.amplitudes.flat[0]) / self.norm)

    def occupation_probabilities(self, mode: int) -> np.ndarray:
        p = np.abs(self.amplitudes) ** 2
        axes = tuple(a for a in range(p.ndim) if a != mode)
        return np.sum(p, axis=axes) / self.norm**2

    def mean_occupation(self, mode: int) -> float:
        probs = self.occupation_probabilities(mode)
        return float(np.arange(probs.size) @ probs)

    def leakage(self) -> float:
        """Largest probability found on any truncation edge ``n = n_max``."""
        return max(float(self.occupation_probabilities(m)[-1]) for m in range(len(self.n_max)))


def annihilation(n_max: int) -> np.ndarray:
    return np.diag(np.sqrt(np.arange(1, n_max + 1, dtype=float)), k=1).astype(complex)


def _embed(op, mode, dims):
    mats = [op if i == mode else np.eye(d, dtype=complex) for i, d in enumerate(dims)]
    return reduce(np.kron, mats)


def displacement_generator(alphas: Sequence[complex], n_max: int) -> np.ndarray:
    """``sum_m (alpha_m a_m^dag - conj(alpha_m) a_m)`` on the truncated product space."""
    dims = [n_max + 1] * len(alphas)
    if int(np.prod(dims)) > MAX_FOCK_DIM:
        raise DomainError(f"Fock dimension {int(np.prod(dims))} exceeds {MAX_FOCK_DIM}")
    a = annihilation(n_max)
    gen = np.zeros((int(np.prod(dims)),) * 2, dtype=complex)
    for m, alpha in enumerate(alphas):
        gen += _embed(alpha * a.conj().T - np.conj(alpha) * a, m, dims)
    return gen


def _check_modes(alphas, n_max):
    if not 1 <= len(alphas) <= MAX_MODES:
        raise DomainError(f"need 1..{MAX_MODES} modes, got {len(alphas)}")
    if int(n_max) != n_max or not 1 <= n_max <= MAX_NMAX:
        raise DomainError(f"n_max must be an integer in [1, {MAX_NMAX}], got {n_max!r}")


def fock_displacement_sim(alphas: Sequence[complex], n_max: int,
                          leakage_bound: float = LEAKAGE_BOUND) -> FockState:
    """Coherent state ``exp(sum_m alpha_m a_m^dag - h.c.)|0>`` by truncated matrix exponentials.

    Modes commute, so each factor is exponentiated on its own
    ``(n_max+1)``-dimensional space and the state is their tensor product.
    """
    _check_modes(alphas, n_max)
    vac = np.zeros(n_max + 1, dtype=complex)
    vac[0] = 1.0
    factors = [expm(displacement_generator([alpha], n_max)) @ vac for alpha in alphas]
    state = FockState(n_max=(n_max,) * len(alphas), amplitudes=reduce(np.kron, factors))
    state.normalize()
    leak = state.leakage()
    if leak > leakage_bound:
        raise ContractViolation(f"truncation leakage {leak:.3e} exceeds bound {leakage_bound:.1e}")
    return state


def displacement_taylor(alphas: Sequence[complex], n_max: int, order: int) -> np.ndarray:
    """Order-by-order sum ``sum_{j<=order} A^j |0> / j!`` of the displacement exponential."""
    _check_modes(alphas, n_max)
    A = displacement_generator(alphas, n_max)
    term = np.zeros(A.shape[0], dtype=complex)
    term[0] = 1.0
    total = term.copy()
    for j in range(1, order + 1):
        term = A @ term / j
        total = total + term
    return total


def hadamard_phase_sim(alphas_a: Sequence[complex], alphas_b: Sequence[complex], n_max: int,
                       leakage_bound: float = LEAKAGE_BOUND) -> complex:
    """Scalar ``c`` with ``e^A e^B = e^{A+B} e^{c/2}``, read off the vacuum matrix element.

    ``A`` and ``B`` are displacement generators on the same list of modes
    (pad with zeros for modes an exponent does not touch).
    """
    if len(alphas_a) != len(alphas_b):
        raise DomainError("both exponents must be given on the same modes")
    _check_modes(alphas_a, n_max)
    A = displacement_generator(alphas_a, n_max)
    B = displacement_generator(alphas_b, n_max)
    vac = np.zeros(A.shape[0], dtype=complex)
    vac[0] = 1.0
    lhs = expm(A) @ (expm(B) @ vac)
    rhs = expm(A + B) @ vac
    for vec in (lhs, rhs):
        st = FockState(n_max=(n_max,) * len(alphas_a), amplitudes=vec)
        if st.leakage() > leakage_bound:
            raise ContractViolation(f"truncation leakage {st.leakage():.3e} exceeds bound")
    return complex(2.0 * np.log(lhs[0] / rhs[0]))


def commutator_scalar(alphas_a: Sequence[complex], alphas_b: Sequence[complex]) -> complex:
    """Closed form ``[A, B] = sum_m (alpha_m conj(beta_m) - conj(alpha_m) beta_m)``."""
    return complex(sum(a * np.conj(b) - np.conj(a) * b for a, b in zip(alphas_a, alphas_b)))
