"""C-number kernels of the Coulomb phase of a two-charge asymptotic state.

The normal-ordered double integral over charge densities is reduced to its
cross term for a two-particle state (self pairs ``p = q`` have a vanishing
denominator).  The logarithmic growth in time is kept as an explicit factor
returned by :func:`phase_log`; kernels never hide it.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from softdress.errors import DomainError
from softdress.kinematics import _common_mass_squared, minkowski_dot, relative_speed

U_FLOOR = 1e-6
SELF_PAIR_RTOL = 1e-12


@dataclass(frozen=True)
class PhaseRecord:
    kernel: float
    two_particle_coefficient: float
    log_factor: float
    zeta: float = 0.0
    kappa: float = 0.0

    @property
    def divergent_phase(self) -> float:
        """Coefficient of ``e**2`` in the Coulomb phase at the recorded time."""
        return self.two_particle_coefficient * self.log_factor


def phase_kernel(p, q) -> float:
    """Kernel ``p.q / (8 pi sqrt((p.q)**2 - m**4))`` per unit ``e**2`` and unit log factor."""
    m2 = _common_mass_squared(p, q)
    pq = minkowski_dot(p, q)
    if pq <= m2 * (1.0 + SELF_PAIR_RTOL):
        raise DomainError(f"p.q = {pq!r} is not above m**2 = {m2!r}; self pair is singular")
    return pq / (8.0 * np.pi * np.sqrt(pq * pq - m2 * m2))


def two_particle_phase_coefficient(p1, p2, *, u_floor: float = U_FLOOR, charge_signs=(1, 1),
                                   signed: bool = False) -> float:
    """``1/(4 pi u_r)`` for the pair; multiplied by ``eta1*eta2`` when ``signed`` is set.

    The unsigned default is the two-electron case.
    """
    u = relative_speed(p1, p2)
    if u < u_floor:
        raise DomainError(f"relative speed {u!r} below floor {u_floor!r}: Coulomb phase diverges")
    coeff = 1.0 / (4.0 * np.pi * u)
    if signed:
        coeff *= charge_signs[0] * charge_signs[1]
    return coeff


def phase_log(t: float, t_ref: float) -> float:
    """``sign(t) * ln(|t| / t_ref)``."""
    if t == 0:
        raise DomainError("t = 0 has no asymptotic log factor")
    if not t_ref > 0:
        raise DomainError(f"reference time must be positive, got {t_ref!r}")
    return float(np.sign(t) * np.log(abs(t) / t_ref))


def kernel_consistency_residual(p1, p2, *, u_floor: float = U_FLOOR) -> float:
    """Absolute mismatch between twice the kernel and the two-particle coefficient."""
    return abs(2.0 * phase_kernel(p1, p2) - two_particle_phase_coefficient(p1, p2, u_floor=u_floor))


def phase_record(p1, p2, t: float, t_ref: float, *, zeta: float = 0.0, kappa: float = 0.0,
                 u_floor: float = U_FLOOR, charge_signs=(1, 1), signed: bool = False) -> PhaseRecord:
    return PhaseRecord(
        kernel=phase_kernel(p1, p2),
        two_particle_coefficient=two_particle_phase_coefficient(
            p1, p2, u_floor=u_floor, charge_signs=charge_signs, signed=signed),
        log_factor=phase_log(t, t_ref),
        zeta=float(zeta),
        kappa=float(kappa),
    )
