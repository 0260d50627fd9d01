"""Minkowski kinematics in natural units with signature (+, -, -, -).

Every other module builds on these helpers.  Four-vectors are exchanged
either as :class:`FourVector` values or as numpy arrays whose last axis
has length 4 (``t, x, y, z``); :func:`minkowski_dot` accepts both.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from softdress.errors import DomainError

METRIC = np.diag([1.0, -1.0, -1.0, -1.0])

EQUAL_MASS_RTOL = 1e-9
RADICAND_CLAMP = 1e-12


@dataclass(frozen=True)
class FourVector:
    t: float
    x: float
    y: float
    z: float

    @classmethod
    def from_array(cls, a) -> "FourVector":
        a = np.asarray(a, dtype=float)
        if a.shape != (4,):
            raise DomainError(f"expected 4 components, got shape {a.shape}")
        return cls(*(float(c) for c in a))

    @property
    def spatial(self) -> np.ndarray:
        return np.array([self.x, self.y, self.z])

    def __array__(self, dtype=None, copy=None):
        return np.array([self.t, self.x, self.y, self.z], dtype=dtype)

    def as_array(self) -> np.ndarray:
        return np.array([self.t, self.x, self.y, self.z])

    def __add__(self, other):
        return FourVector.from_array(self.as_array() + np.asarray(other, dtype=float))

    def __sub__(self, other):
        return FourVector.from_array(self.as_array() - np.asarray(other, dtype=float))

    def __mul__(self, s):
        return FourVector.from_array(self.as_array() * float(s))

    __rmul__ = __mul__

    def invariant_mass(self) -> float:
        return float(np.sqrt(max(minkowski_dot(self, self), 0.0)))


def _as_components(a) -> np.ndarray:
    if isinstance(a, FourVector):
        return a.as_array()
    arr = np.asarray(a)
    if arr.shape[-1:] != (4,):
        raise DomainError(f"four-vector needs a trailing axis of length 4, got shape {arr.shape}")
    return arr


def minkowski_dot(a, b):
    """``a.t*b.t - a_vec . b_vec``; broadcasts over leading axes of array inputs."""
    a = _as_components(a)
    b = _as_components(b)
    out = a[..., 0] * b[..., 0] - a[..., 1] * b[..., 1] - a[..., 2] * b[..., 2] - a[..., 3] * b[..., 3]
    if np.ndim(out) == 0:
        return float(np.real_if_close(out)) if np.isrealobj(out) else complex(out)
    return out


def check_velocity(v) -> np.ndarray:
    v = np.asarray(v, dtype=float)
    if v.shape != (3,):
        raise DomainError(f"velocity must be a 3-vector, got shape {v.shape}")
    if not np.all(np.isfinite(v)):
        raise DomainError("velocity has non-finite components")
    speed = float(np.linalg.norm(v))
    if speed >= 1.0:
        raise DomainError(f"superluminal velocity |v| = {speed!r} (need |v| < 1)")
    return v


def lorentz_gamma(v) -> float:
    v = check_velocity(v)
    return 1.0 / np.sqrt(1.0 - float(v @ v))


def make_on_shell(m: float, v) -> FourVector:
    """Momentum ``m*gamma*(1, v)`` of a particle of mass ``m`` moving with velocity ``v``."""
    if not m > 0:
        raise DomainError(f"mass must be positive, got {m!r}")
    v = check_velocity(v)
    g = lorentz_gamma(v)
    return FourVector(m * g, *(m * g * v))


def velocity_of(p) -> np.ndarray:
    p = _as_components(p)
    return np.asarray(p[1:4] / p[0], dtype=float)


@dataclass(frozen=True)
class Particle:
    """A charged particle on mass shell.

    ``charge_sign`` is +1 for a particle and -1 for an antiparticle (the
    eigenvalue of the charge density it contributes).
    """

    mass: float
    velocity: tuple = (0.0, 0.0, 0.0)
    charge_sign: int = 1
    momentum: FourVector = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        if self.charge_sign not in (1, -1):
            raise DomainError(f"charge_sign must be +1 or -1, got {self.charge_sign!r}")
        v = check_velocity(self.velocity)
        object.__setattr__(self, "velocity", tuple(float(c) for c in v))
        object.__setattr__(self, "momentum", make_on_shell(self.mass, v))

    @property
    def v(self) -> np.ndarray:
        return np.array(self.velocity)

    @property
    def gamma(self) -> float:
        return lorentz_gamma(self.velocity)


def relative_speed(p, q) -> float:
    """Relative speed ``sqrt(1 - m**4 / (p.q)**2)`` of two equal-mass on-shell momenta."""
    m2 = _common_mass_squared(p, q)
    pq = minkowski_dot(p, q)
    radicand = 1.0 - m2 * m2 / (pq * pq)
    if radicand < 0.0:
        if radicand < -RADICAND_CLAMP:
            raise DomainError(f"negative radicand {radicand!r} in relative speed")
        radicand = 0.0
    return float(np.sqrt(radicand))


def _common_mass_squared(p, q) -> float:
    pp = minkowski_dot(p, p)
    qq = minkowski_dot(q, q)
    if not (pp > 0 and qq > 0):
        raise DomainError("momenta must be timelike (on shell with m > 0)")
    if _as_components(p)[0] <= 0 or _as_components(q)[0] <= 0:
        raise DomainError("momenta must have positive energy")
    if abs(pp - qq) > EQUAL_MASS_RTOL * max(pp, qq):
        raise DomainError(f"unequal masses: p.p = {pp!r}, q.q = {qq!r}")
    return 0.5 * (pp + qq)


def rotation_matrix(axis, angle: float) -> np.ndarray:
    """Rodrigues rotation about ``axis``; used by the invariance checks."""
    axis = np.asarray(axis, dtype=float)
    axis = axis / np.linalg.norm(axis)
    k = np.array([[0, -axis[2], axis[1]], [axis[2], 0, -axis[0]], [-axis[1], axis[0], 0]])
    return np.eye(3) + np.sin(angle) * k + (1 - np.cos(angle)) * (k @ k)
