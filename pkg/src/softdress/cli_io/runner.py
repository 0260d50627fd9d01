"""Subcommands: each maps a validated :class:`RunConfig` to a :class:`ResultTable`."""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor

import numpy as np

from softdress import __version__
from softdress.asymptotic_phase import kernel_consistency_residual, phase_record
from softdress.cli_io.config import RunConfig
from softdress.cli_io.tables import ResultTable
from softdress.errors import DomainError
from softdress.kinematics import Particle, minkowski_dot, relative_speed
from softdress.photon_cloud import (
    CloudSpec,
    cloud_angular_coefficient,
    commutator_scalar,
    fock_displacement_sim,
    hadamard_phase_sim,
    vacuum_overlap,
)
from softdress.qubit_entanglement import (
    DensityMatrix,
    SpinAmplitude,
    density_from_amplitude,
    dressed_entropy,
    dressed_entropy_identity_check,
    entropy_trace,
    normalized_entanglement,
    reduce_particle1,
)
from softdress.quadrature import QuadratureSpec
from softdress.soft_integrals import (
    SCAN_COLUMNS,
    Regulators,
    exponent_at,
    pointwise_null_residual,
    regulator_scan,
    soft_breakdown,
)

SUBCOMMANDS = ("kin", "phase", "soft", "scan", "cancel", "cloud", "fock", "entangle")
CANCEL_STEPS = 5


def particles(cfg: RunConfig):
    return (Particle(cfg.m, cfg.v1, cfg.charges[0]), Particle(cfg.m, cfg.v2, cfg.charges[1]))


def quadrature(cfg: RunConfig) -> QuadratureSpec:
    return QuadratureSpec(cfg.n_polar, cfg.n_azimuthal)


def _kin(cfg):
    p1, p2 = particles(cfg)
    u = relative_speed(p1.momentum, p2.momentum)
    rows = []
    for i, p in enumerate((p1, p2), start=1):
        mom = p.momentum
        rows.append((i, p.mass, p.gamma, mom.t, mom.x, mom.y, mom.z,
                     minkowski_dot(mom, mom) - p.mass**2, u))
    return ("particle", "m", "gamma", "E", "px", "py", "pz", "mass_shell_residual", "u_rel"), rows


def _phase(cfg):
    p1, p2 = particles(cfg)
    rec = phase_record(p1.momentum, p2.momentum, cfg.t, cfg.t_ref, zeta=cfg.zeta, kappa=cfg.kappa,
                       u_floor=cfg.u_floor, charge_signs=cfg.charges, signed=cfg.signed)
    u = relative_speed(p1.momentum, p2.momentum)
    cols = ("u_rel", "kernel", "two_particle_coefficient", "kernel_residual", "log_factor",
            "coulomb_phase", "zeta", "kappa", "finite_phase")
    row = (u, rec.kernel, rec.two_particle_coefficient,
           kernel_consistency_residual(p1.momentum, p2.momentum, u_floor=cfg.u_floor),
           rec.log_factor, cfg.e2 * rec.divergent_phase, rec.zeta, rec.kappa, cfg.e2 * rec.zeta)
    return cols, [row]


def _breakdown(cfg, dressing_v1=None):
    p1, p2 = particles(cfg)
    dv1 = cfg.dressing_v1 if dressing_v1 is None else dressing_v1
    return soft_breakdown(p1, p2, dv1, cfg.dressing_v2, quadrature(cfg))


def _soft(cfg):
    b = _breakdown(cfg)
    coeffs = b.as_dict()
    cols = ("lambda", *coeffs, "D", "C", "G1", "G2", "F")
    rows = []
    for lam in cfg.lambda_list:
        x = exponent_at(b, Regulators(lam, cfg.delta), cfg.e2)
        rows.append((lam, *coeffs.values(), x.D, x.C, x.G1, x.G2, x.F))
    return cols, rows


def _scan(cfg):
    p1, p2 = particles(cfg)
    rows = regulator_scan(p1, p2, cfg.lambda_list, cfg.delta, cfg.e2, quadrature(cfg),
                          cfg.dressing_v1, cfg.dressing_v2, workers=cfg.workers)
    return SCAN_COLUMNS, rows


def perturbed_velocity(v, delta: float) -> tuple:
    """Shrink the speed of ``v`` by ``delta`` along its direction (``+z`` for ``v = 0``)."""
    v = np.asarray(v, dtype=float)
    speed = float(np.linalg.norm(v))
    if speed == 0.0:
        return (0.0, 0.0, float(delta))
    new = speed - delta
    if abs(new) >= 1.0:
        raise DomainError(f"perturbed dressing speed {new!r} is superluminal")
    return tuple(v / speed * new)


def _cancel(cfg):
    p1, p2 = particles(cfg)
    deltas = [0.0] + [cfg.offshell * 10.0 ** (-k) for k in range(CANCEL_STEPS)] if cfg.offshell > 0 else [0.0]
    quad = quadrature(cfg)

    def row(d):
        dv1 = perturbed_velocity(cfg.dressing_v1, d) if d > 0 else cfg.dressing_v1
        b = soft_breakdown(p1, p2, dv1, cfg.dressing_v2, quad)
        null = pointwise_null_residual(p1, p2, quad, dv1, cfg.dressing_v2)
        return (d, b.c_D, b.c_F, abs(b.c_F), null)

    return ("offshell", "c_D", "c_F", "abs_c_F", "null_residual"), _map(row, deltas, cfg.workers)


def _map(fn, items, workers):
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            return list(pool.map(fn, items))
    return [fn(x) for x in items]


def _cloud(cfg):
    spec = CloudSpec(particles(cfg), cfg.e2)
    coeff = cloud_angular_coefficient(spec, quadrature(cfg))
    rows = []
    for lam in cfg.lambda_list:
        log_ratio = Regulators(lam, cfg.delta).log_ratio
        n = coeff * log_ratio
        rows.append((lam, log_ratio, n, vacuum_overlap(n), coeff))
    return ("lambda", "log_ratio", "N", "vacuum_overlap", "angular_coefficient"), rows


def _fock(cfg):
    state = fock_displacement_sim(cfg.alphas, cfg.n_max)
    total = sum(state.mean_occupation(m) for m in range(len(cfg.alphas)))
    weight = sum(abs(a) ** 2 for a in cfg.alphas)
    cols = ["vacuum_overlap", "vacuum_overlap_exact", "mean_occupation", "mean_occupation_exact", "leakage"]
    row = [state.vacuum_overlap(), float(np.exp(-weight / 2)), total, weight, state.leakage()]
    if cfg.betas:
        c = hadamard_phase_sim(cfg.alphas, cfg.betas, cfg.n_max)
        exact = commutator_scalar(cfg.alphas, cfg.betas)
        cols += ["hadamard_re", "hadamard_im", "commutator_im"]
        row += [c.real, c.imag, exact.imag]
    return tuple(cols), [tuple(row)]


def spin_amplitude(cfg: RunConfig) -> SpinAmplitude:
    if cfg.amplitudes is not None:
        return SpinAmplitude(np.array(cfg.amplitudes).reshape(2, 2))
    return SpinAmplitude.preset(cfg.preset)


def _entangle(cfg):
    b = _breakdown(cfg)
    F = exponent_at(b, Regulators(cfg.lambda_list[0], cfg.delta), cfg.e2).F
    amp = spin_amplitude(cfg)
    bare4 = density_from_amplitude(amp, 0.0)
    if not bare4.trace > 0:
        raise DomainError("spin amplitude is identically zero")
    bare4 = bare4.normalized()
    rho = reduce_particle1(bare4)
    rho_d = reduce_particle1(density_from_amplitude(amp, F).scaled(1.0 / amp.weight))
    S = entropy_trace(rho, "trace_log")
    rho_low = DensityMatrix(rho.entries * np.exp(-2 * F), rho.trace * np.exp(-2 * F))
    cols = ("F", "S_trace_log", "S_standard", "Sd_trace_log", "identity_residual", "Sd_bare_normalized",
            "Sd_dressed_normalized", "S_normalized_bare", "S_normalized_dressed")
    row = (F, S, entropy_trace(rho, "standard"), entropy_trace(rho_d, "trace_log"),
           dressed_entropy_identity_check(rho, F),
           dressed_entropy(S, F, rho.trace, "bare_normalized"),
           dressed_entropy(entropy_trace(rho_low, "trace_log"), F, rho_low.trace, "dressed_normalized"),
           normalized_entanglement(bare4, 0.0), normalized_entanglement(bare4, F))
    return cols, [row]


_HANDLERS = {"kin": _kin, "phase": _phase, "soft": _soft, "scan": _scan, "cancel": _cancel,
             "cloud": _cloud, "fock": _fock, "entangle": _entangle}


def run(subcommand: str, cfg: RunConfig) -> ResultTable:
    """Execute one subcommand; the table's meta records version and config hash."""
    if subcommand not in _HANDLERS:
        raise DomainError(f"unknown subcommand {subcommand!r}; choose from {', '.join(SUBCOMMANDS)}")
    cols, rows = _HANDLERS[subcommand](cfg)
    meta = {"tool": "softdress", "version": __version__, "subcommand": subcommand,
            "config_hash": cfg.config_hash()}
    return ResultTable(cols, rows, meta)
