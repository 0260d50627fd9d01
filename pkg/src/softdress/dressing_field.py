"""Spatial structure of the phase dressing.

* :func:`green_g` -- the boosted Coulomb kernel
  ``G(x) = -(1/4 pi) gamma / sqrt(x**2 + gamma**2 (v.x)**2)``;
* :func:`inverse_gdot_apply` -- its convolution with a sampled scalar field;
* :func:`worldline_integral` -- line integrals along ``x(s) = x + (s - x0)(1, v)``.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Callable

import numpy as np
from scipy.integrate import simpson

from softdress.errors import DomainError
from softdress.kinematics import check_velocity, lorentz_gamma

FOUR_PI = 4.0 * np.pi


@dataclass(frozen=True)
class ScalarFieldSample:
    """Values on the nodes ``origin + h * (i, j, k)`` of a regular lattice."""

    origin: tuple
    spacing: float
    values: np.ndarray

    def __post_init__(self):
        if not self.spacing > 0:
            raise DomainError(f"grid spacing must be positive, got {self.spacing!r}")
        values = np.asarray(self.values, dtype=float)
        if values.ndim != 3:
            raise DomainError(f"values must be a 3-D array, got ndim={values.ndim}")
        if not np.all(np.isfinite(values)):
            raise DomainError("field sample has non-finite values")
        object.__setattr__(self, "values", values)
        object.__setattr__(self, "origin", tuple(float(c) for c in self.origin))

    @property
    def shape(self):
        return self.values.shape

    def axes(self):
        return [self.origin[d] + self.spacing * np.arange(self.shape[d]) for d in range(3)]

    def node_positions(self) -> np.ndarray:
        gx, gy, gz = np.meshgrid(*self.axes(), indexing="ij")
        return np.stack([gx, gy, gz], axis=-1)

    def contains(self, x) -> bool:
        lo = np.asarray(self.origin)
        hi = lo + self.spacing * (np.asarray(self.shape) - 1)
        x = np.asarray(x, dtype=float)
        return bool(np.all(x >= lo - 1e-12 * self.spacing) and np.all(x <= hi + 1e-12 * self.spacing))

    @classmethod
    def from_function(cls, f, origin, spacing, shape):
        axes = [origin[d] + spacing * np.arange(shape[d]) for d in range(3)]
        gx, gy, gz = np.meshgrid(*axes, indexing="ij")
        return cls(tuple(origin), spacing, f(np.stack([gx, gy, gz], axis=-1)))


@dataclass(frozen=True)
class Worldline:
    base_point: tuple
    velocity: tuple
    t_start: float
    t_end: float

    def __post_init__(self):
        object.__setattr__(self, "velocity", tuple(float(c) for c in check_velocity(self.velocity)))
        if len(self.base_point) != 4:
            raise DomainError("base point must be a four-vector")
        object.__setattr__(self, "base_point", tuple(float(c) for c in self.base_point))

    def position(self, s):
        """``x(s)`` as an array of shape ``s.shape + (4,)``."""
        s = np.asarray(s, dtype=float)
        x = np.asarray(self.base_point)
        u = np.concatenate([[1.0], self.velocity])
        return x + (s - x[0])[..., None] * u


def _boosted_norm(x, v, gamma):
    x = np.asarray(x, dtype=float)
    vx = x @ v
    return np.sqrt(np.einsum("...i,...i->...", x, x) + gamma * gamma * vx * vx)


def green_g(x, v) -> float | np.ndarray:
    """Boosted Coulomb kernel; strictly negative, homogeneous of degree -1 in ``x``."""
    v = check_velocity(v)
    gamma = lorentz_gamma(v)
    r = _boosted_norm(x, v, gamma)
    if np.any(r == 0):
        raise DomainError("green_g is singular at x = 0")
    out = -gamma / (FOUR_PI * r)
    return float(out) if np.ndim(out) == 0 else out


@lru_cache(maxsize=64)
def _unit_cell_integral(v: tuple, n_nodes: int = 48) -> float:
    """``integral of G`` over the unit cube centred on the origin.

    The cube splits into six pyramids with apex at the origin; for a kernel
    homogeneous of degree -1 each pyramid integral is ``(1/4) * face integral``
    (apex-to-face distance 1/2).  The face integrands are smooth, so tensor
    Gauss-Legendre converges fast.
    """
    v = np.asarray(v)
    x, w = np.polynomial.legendre.leggauss(n_nodes)
    a, b = np.meshgrid(0.5 * x, 0.5 * x, indexing="ij")
    ww = np.outer(0.25 * w, w).ravel()
    a, b = a.ravel(), b.ravel()
    half = np.full_like(a, 0.5)
    total = 0.0
    for axis in range(3):
        for sign in (1.0, -1.0):
            pts = np.empty((a.size, 3))
            others = [d for d in range(3) if d != axis]
            pts[:, axis] = sign * half
            pts[:, others[0]] = a
            pts[:, others[1]] = b
            total += 0.25 * float(ww @ green_g(pts, v))
    return total


def singular_cell_average(h: float, v) -> float:
    """Average of ``G`` over a cube of side ``h`` centred on the singularity."""
    v = tuple(float(c) for c in check_velocity(v))
    return _unit_cell_integral(v) / h


def inverse_gdot_apply(f: ScalarFieldSample, v, x) -> float:
    """Riemann-sum convolution ``h**3 * sum_z G(x - z) f(z)``.

    A node coinciding with ``x`` uses the exact cell average of ``G``.
    """
    v = check_velocity(v)
    x = np.asarray(x, dtype=float)
    if not f.contains(x):
        raise DomainError(f"evaluation point {x.tolist()} lies outside the sample grid")
    h = f.spacing
    d = x - f.node_positions()
    gamma = lorentz_gamma(v)
    r = _boosted_norm(d, v, gamma)
    singular = r <= 1e-12 * h
    with np.errstate(divide="ignore"):
        kernel = np.where(singular, 0.0, -gamma / (FOUR_PI * np.where(singular, 1.0, r)))
    total = float(np.sum(kernel * f.values)) * h**3
    if np.any(singular):
        total += singular_cell_average(h, v) * float(np.sum(f.values[singular])) * h**3
    return total


def worldline_integral(field: Callable, w: Worldline, n_steps: int = 1000) -> float:
    """Composite Simpson integral of ``field(s, x_vec(s))`` over ``s`` in ``[t_start, t_end]``.

    ``field`` receives the worldline time and the 3-position arrays for all
    sample points at once.
    """
    if int(n_steps) != n_steps or n_steps < 2:
        raise DomainError(f"n_steps must be an integer >= 2, got {n_steps!r}")
    s = np.linspace(w.t_start, w.t_end, int(n_steps) + 1)
    xs = w.position(s)
    vals = np.broadcast_to(np.asarray(field(xs[:, 0], xs[:, 1:]), dtype=float), s.shape)
    return float(simpson(vals, x=s))
