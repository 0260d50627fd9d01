"""Product quadrature on the unit sphere.

Gauss-Legendre nodes in ``cos(theta)`` times a uniform periodic grid in
``phi``.  Both factors converge exponentially for integrands analytic on the
sphere, which the soft-photon angular densities are whenever ``|v| < 1``.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from softdress.errors import DomainError


@dataclass(frozen=True)
class QuadratureSpec:
    n_polar: int = 64
    n_azimuthal: int = 64

    def __post_init__(self):
        for name in ("n_polar", "n_azimuthal"):
            n = getattr(self, name)
            if int(n) != n or n < 4:
                raise DomainError(f"{name} must be an integer >= 4, got {n!r}")

    def refined(self, factor: int = 2) -> "QuadratureSpec":
        return QuadratureSpec(self.n_polar * factor, self.n_azimuthal * factor)


@lru_cache(maxsize=32)
def _nodes(n_polar: int, n_azimuthal: int):
    x, wx = np.polynomial.legendre.leggauss(n_polar)
    phi = 2.0 * np.pi * np.arange(n_azimuthal) / n_azimuthal
    wphi = np.full(n_azimuthal, 2.0 * np.pi / n_azimuthal)
    s = np.sqrt(1.0 - x * x)
    n = np.stack([
        np.outer(s, np.cos(phi)).ravel(),
        np.outer(s, np.sin(phi)).ravel(),
        np.repeat(x, n_azimuthal),
    ], axis=-1)
    w = np.outer(wx, wphi).ravel()
    n.setflags(write=False)
    w.setflags(write=False)
    return n, w


def sphere_nodes(quad: QuadratureSpec):
    """Unit directions of shape ``(N, 3)`` and weights summing to ``4 pi``."""
    return _nodes(int(quad.n_polar), int(quad.n_azimuthal))


def sphere_average(values, quad: QuadratureSpec) -> float:
    """``(1/4 pi) * integral dOmega`` of pre-sampled ``values`` (fixed summation order)."""
    _, w = sphere_nodes(quad)
    return float(np.dot(w, values) / (4.0 * np.pi))
