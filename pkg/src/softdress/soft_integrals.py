"""Virtual soft-photon exponents of a dressed two-charge amplitude.

With sharp cutoffs ``lambda <= |k| <= Delta`` every one-loop soft integral
factorizes into an angular coefficient times ``ln(Delta/lambda)``.  Vertices
enter through their degree-0 currents:

* eikonal (standard charged leg): ``w / (w.k)`` with ``w = (1, v)``;
* dressing (distortion vertex):   ``V / (V.k)`` with ``V = w (wbar.k) - k`` and
  ``wbar = (1, -v)``, where ``k = (1, n)`` is the unit null direction.

The angular coefficient of a pair is the sphere average of ``-g_{mu nu}``
contracted currents.  Conventions for the overall constant live in
:data:`KAPPA0`.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass
from typing import Literal, Sequence

import numpy as np

from softdress.errors import DomainError
from softdress.kinematics import Particle, check_velocity, minkowski_dot
from softdress.quadrature import QuadratureSpec, sphere_average, sphere_nodes

KAPPA0 = -1.0 / (16.0 * np.pi**2)
"""Exponent = e2 * KAPPA0 * coefficient * ln(Delta/lambda)."""


@dataclass(frozen=True)
class VertexKind:
    kind: Literal["eikonal", "dressing"]
    velocity: tuple

    def __post_init__(self):
        if self.kind not in ("eikonal", "dressing"):
            raise DomainError(f"unknown vertex kind {self.kind!r}")
        object.__setattr__(self, "velocity", tuple(float(c) for c in check_velocity(self.velocity)))

    def current(self, n) -> np.ndarray:
        if self.kind == "eikonal":
            return eikonal_factor(self.velocity, n)
        return dressing_vertex_factor(self.velocity, n)


@dataclass(frozen=True)
class Regulators:
    """Sharp cutoffs ``lam <= |k| <= delta``; ``lam == delta`` is the empty shell."""

    lam: float
    delta: float

    def __post_init__(self):
        if not (0 < self.lam <= self.delta):
            raise DomainError(f"need 0 < lambda <= Delta, got lambda={self.lam!r}, Delta={self.delta!r}")

    @property
    def log_ratio(self) -> float:
        return float(np.log(self.delta / self.lam))


@dataclass(frozen=True)
class SoftFactorBreakdown:
    """Coefficients of ``ln(Delta/lambda)`` for each factor of the dressed amplitude."""

    c_D: float
    c_C_cross: float
    c_C_self_1: float
    c_C_self_2: float
    c_G_1: float
    c_G_2: float
    c_F: float

    @staticmethod
    def assemble_F(c_D, c_C_cross, c_C_self_1, c_C_self_2, c_G_1, c_G_2) -> float:
        return c_D + c_C_cross + (c_C_self_1 + c_C_self_2) / 2 + c_G_1 + c_G_2

    @property
    def c_C(self) -> float:
        return self.c_C_cross + (self.c_C_self_1 + self.c_C_self_2) / 2

    def assembly_residual(self) -> float:
        return abs(self.c_F - self.assemble_F(self.c_D, self.c_C_cross, self.c_C_self_1,
                                              self.c_C_self_2, self.c_G_1, self.c_G_2))

    def as_dict(self) -> dict:
        return asdict(self)


@dataclass(frozen=True)
class Exponents:
    D: float
    C: float
    G1: float
    G2: float
    F: float


def _null_directions(n) -> np.ndarray:
    n = np.asarray(n, dtype=float)
    k = np.empty(n.shape[:-1] + (4,))
    k[..., 0] = 1.0
    k[..., 1:] = n
    return k


def eikonal_factor(v, n) -> np.ndarray:
    """``(1, v) / (1 - v.n)`` for a unit direction ``n`` (or an ``(N, 3)`` stack)."""
    v = check_velocity(v)
    n = np.asarray(n, dtype=float)
    w = np.concatenate([[1.0], v])
    return w / (1.0 - n @ v)[..., None]


def dressing_vertex_factor(v, n) -> np.ndarray:
    """``V / (V.k)`` with ``V = (1, v)(1 + v.n) - (1, n)``.

    Uses ``V.k = (1 - v.n)(1 + v.n)``, exact for null ``k``.
    """
    v = check_velocity(v)
    n = np.asarray(n, dtype=float)
    k = _null_directions(n)
    vn = n @ v
    w = np.concatenate([[1.0], v])
    wk = 1.0 - vn
    wbk = 1.0 + vn
    V = w * wbk[..., None] - k
    return V / (wk * wbk)[..., None]


def dressing_denominator_residual(v, n) -> np.ndarray:
    """``|V.k - (w.k)(wbar.k)|`` evaluated directly; zero up to rounding."""
    v = check_velocity(v)
    k = _null_directions(n)
    w = np.concatenate([[1.0], v])
    wb = np.concatenate([[1.0], -v])
    wk = minkowski_dot(k, w)
    wbk = minkowski_dot(k, wb)
    V = w * np.asarray(wbk)[..., None] - k
    return np.abs(minkowski_dot(V, k) - wk * wbk)


def pair_coefficient(a: VertexKind, b: VertexKind, quad: QuadratureSpec = QuadratureSpec()) -> float:
    """``(1/4 pi) * integral dOmega (-g_{mu nu}) A^mu B^nu``."""
    n, _ = sphere_nodes(quad)
    return sphere_average(-minkowski_dot(a.current(n), b.current(n)), quad)


def _velocities(p1: Particle, p2: Particle, dressing_v1, dressing_v2):
    dv1 = p1.v if dressing_v1 is None else check_velocity(dressing_v1)
    dv2 = p2.v if dressing_v2 is None else check_velocity(dressing_v2)
    return dv1, dv2


def soft_breakdown(p1: Particle, p2: Particle, dressing_v1=None, dressing_v2=None,
                   quad: QuadratureSpec = QuadratureSpec()) -> SoftFactorBreakdown:
    """Angular coefficients of D, C and G for two charges.

    Charge signs weight every pairing.  The double sum over legs carries an
    overall 1/2, so self pairs enter ``D`` with weight 1/2 and cross pairs once;
    for the dressing terms this puts the 1/2 on ``C_vv`` that the
    renormalization absorption requires.  ``G_j`` collects eikonal legs paired
    with the dressing vertex of particle ``j``.  Dressing velocities default to
    the particle velocities (mass shell).
    """
    dv1, dv2 = _velocities(p1, p2, dressing_v1, dressing_v2)
    eta1, eta2 = p1.charge_sign, p2.charge_sign
    E1, E2 = VertexKind("eikonal", p1.velocity), VertexKind("eikonal", p2.velocity)
    V1, V2 = VertexKind("dressing", tuple(dv1)), VertexKind("dressing", tuple(dv2))

    c = lambda a, b: pair_coefficient(a, b, quad)  # noqa: E731
    c_D = 0.5 * (c(E1, E1) + c(E2, E2)) + eta1 * eta2 * c(E1, E2)
    c_C_cross = eta1 * eta2 * c(V1, V2)
    c_C_self_1 = c(V1, V1)
    c_C_self_2 = c(V2, V2)
    c_G_1 = -(c(E1, V1) + eta1 * eta2 * c(E2, V1))
    c_G_2 = -(c(E2, V2) + eta1 * eta2 * c(E1, V2))
    c_F = SoftFactorBreakdown.assemble_F(c_D, c_C_cross, c_C_self_1, c_C_self_2, c_G_1, c_G_2)
    return SoftFactorBreakdown(c_D, c_C_cross, c_C_self_1, c_C_self_2, c_G_1, c_G_2, c_F)


def total_current(p1: Particle, p2: Particle, n, dressing_v1=None, dressing_v2=None) -> np.ndarray:
    """``sum_i eta_i (E_i - V_i)`` at directions ``n``; null-proportional on mass shell."""
    dv1, dv2 = _velocities(p1, p2, dressing_v1, dressing_v2)
    J = p1.charge_sign * (eikonal_factor(p1.v, n) - dressing_vertex_factor(dv1, n))
    J = J + p2.charge_sign * (eikonal_factor(p2.v, n) - dressing_vertex_factor(dv2, n))
    return J


def pointwise_null_residual(p1: Particle, p2: Particle, quad: QuadratureSpec = QuadratureSpec(),
                            dressing_v1=None, dressing_v2=None) -> float:
    """Max over quadrature nodes of ``|(-g) J_tot . J_tot|``."""
    n, _ = sphere_nodes(quad)
    J = total_current(p1, p2, n, dressing_v1, dressing_v2)
    return float(np.max(np.abs(minkowski_dot(J, J))))


def exponent_at(b: SoftFactorBreakdown, reg: Regulators, e2: float) -> Exponents:
    """Exponents ``e2 * KAPPA0 * c * ln(Delta/lambda)`` for D, C, G1, G2 and F."""
    scale = e2 * KAPPA0 * reg.log_ratio
    return Exponents(D=scale * b.c_D, C=scale * b.c_C, G1=scale * b.c_G_1, G2=scale * b.c_G_2,
                     F=scale * b.c_F)


SCAN_COLUMNS = ("lambda", "expD", "expC", "expF")


def regulator_scan(p1: Particle, p2: Particle, lambdas: Sequence[float], delta: float, e2: float,
                   quad: QuadratureSpec = QuadratureSpec(), dressing_v1=None, dressing_v2=None,
                   workers: int = 1) -> list[tuple[float, float, float, float]]:
    """Rows ``(lambda, e^D, e^C, e^F)`` in the order of ``lambdas``.

    The breakdown does not depend on lambda and is computed once; workers
    only parallelize the per-point exponentiation, and ``map`` keeps grid order.
    """
    if any(not 0 < lam < delta for lam in lambdas):
        raise DomainError("every lambda of a scan must lie strictly inside (0, Delta)")
    regs = [Regulators(float(lam), float(delta)) for lam in lambdas]
    b = soft_breakdown(p1, p2, dressing_v1, dressing_v2, quad)

    def row(reg):
        x = exponent_at(b, reg, e2)
        return (reg.lam, float(np.exp(x.D)), float(np.exp(x.C)), float(np.exp(x.F)))

    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            return list(pool.map(row, regs))
    return [row(r) for r in regs]


def dressed_amplitude_factor(F_exponent: float, zeta: float, e2: float) -> complex:
    """``exp(i e2 zeta) * exp(F)``: overall finite phase times the IR-finite modulus."""
    return complex(np.exp(1j * e2 * zeta) * np.exp(F_exponent))
