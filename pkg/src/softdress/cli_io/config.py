"""Sectioned key-value run configuration.

Example::

    [particles]
    m = 1.0
    v1 = 0, 0, 0.6
    v2 = 0, 0, -0.6
    charges = 1, 1

    [regulators]
    lambda_list = 0.1, 0.01, 0.001
    delta = 1.0

Every section and key is optional; unknown ones are rejected.  All
physical bounds are checked here so that a bad file fails before any
computation starts.
"""

from __future__ import annotations

import configparser
import hashlib
import json
from dataclasses import asdict, dataclass, field, replace

import numpy as np

from softdress.errors import BoundViolationError, ConfigSyntaxError, UnknownKeyError
from softdress.photon_cloud import MAX_MODES, MAX_NMAX
from softdress.qubit_entanglement import PRESETS

FINE_STRUCTURE_E2 = 4.0 * np.pi / 137.035999084


@dataclass(frozen=True)
class RunConfig:
    m: float = 1.0
    v1: tuple = (0.0, 0.0, 0.6)
    v2: tuple = (0.0, 0.0, -0.6)
    charges: tuple = (1, 1)
    dv1: tuple | None = None
    dv2: tuple | None = None
    offshell: float = 0.05
    lambda_list: tuple = (0.1, 0.01, 0.001)
    delta: float = 1.0
    n_polar: int = 64
    n_azimuthal: int = 64
    e2: float = FINE_STRUCTURE_E2
    zeta: float = 0.0
    kappa: float = 0.0
    t: float = 1.0e6
    t_ref: float = 1.0
    u_floor: float = 1e-6
    signed: bool = False
    preset: str | None = "singlet"
    amplitudes: tuple | None = None
    alphas: tuple = (1.0,)
    betas: tuple = ()
    n_max: int = 20
    workers: int = 1
    path: str | None = None
    format: str = "csv"
    extra: dict = field(default_factory=dict, compare=False, repr=False)

    @property
    def dressing_v1(self):
        return self.v1 if self.dv1 is None else self.dv1

    @property
    def dressing_v2(self):
        return self.v2 if self.dv2 is None else self.dv2

    def physics_dict(self) -> dict:
        d = asdict(self)
        for k in ("path", "format", "workers", "extra"):
            d.pop(k)
        d["amplitudes"] = None if self.amplitudes is None else [[z.real, z.imag] for z in self.amplitudes]
        d["alphas"] = [[complex(z).real, complex(z).imag] for z in self.alphas]
        d["betas"] = [[complex(z).real, complex(z).imag] for z in self.betas]
        return d

    def config_hash(self) -> str:
        blob = json.dumps(self.physics_dict(), sort_keys=True, separators=(",", ":"))
        return hashlib.sha256(blob.encode()).hexdigest()


def _floats(text):
    return tuple(float(s) for s in text.replace(";", ",").split(",") if s.strip())


def _complexes(text):
    return tuple(complex(s.strip().replace(" ", "")) for s in text.split(",") if s.strip())


def _bool(text):
    t = text.strip().lower()
    if t in ("1", "true", "yes", "on"):
        return True
    if t in ("0", "false", "no", "off"):
        return False
    raise ValueError(f"not a boolean: {text!r}")


def _vec3(text):
    v = _floats(text)
    if len(v) != 3:
        raise ValueError(f"expected 3 components, got {len(v)}")
    return v


def _charges(text):
    c = tuple(int(float(s)) for s in text.split(",") if s.strip())
    if len(c) != 2:
        raise ValueError("expected two charge signs")
    return c


def _optional_str(text):
    return text.strip() or None


SCHEMA = {
    "particles": {"m": float, "v1": _vec3, "v2": _vec3, "charges": _charges},
    "dressing": {"dv1": _vec3, "dv2": _vec3, "offshell": float},
    "regulators": {"lambda_list": _floats, "delta": float},
    "quadrature": {"n_polar": int, "n_azimuthal": int},
    "coupling": {"e2": float},
    "phase": {"zeta": float, "kappa": float, "t": float, "t_ref": float, "u_floor": float, "signed": _bool},
    "state": {"preset": _optional_str, "amplitudes": _complexes},
    "fock": {"alphas": _complexes, "betas": _complexes, "n_max": int},
    "run": {"workers": int},
    "output": {"path": _optional_str, "format": lambda s: s.strip().lower()},
}


def _key_lines(text: str) -> dict:
    """Map ``(section, key)`` to the 1-based line it is defined on."""
    lines = {}
    section = None
    for no, raw in enumerate(text.splitlines(), start=1):
        s = raw.strip()
        if s.startswith("[") and s.endswith("]"):
            section = s[1:-1].strip().lower()
        elif section and s and s[0] not in "#;" and ("=" in s or ":" in s):
            sep = min(i for i in (s.find("="), s.find(":")) if i >= 0)
            lines[(section, s[:sep].strip().lower())] = no
    return lines


def parse_config(text: str) -> RunConfig:
    """Parse and validate configuration text; defaults fill absent keys."""
    cp = configparser.ConfigParser(interpolation=None, default_section="__none__",
                                   inline_comment_prefixes=(";",))
    try:
        cp.read_string(text)
    except configparser.MissingSectionHeaderError as exc:
        raise ConfigSyntaxError(f"line {exc.lineno}: key outside any section", line=exc.lineno) from None
    except configparser.ParsingError as exc:
        line = exc.errors[0][0] if exc.errors else None
        raise ConfigSyntaxError(f"line {line}: malformed entry", line=line) from None
    except (configparser.DuplicateSectionError, configparser.DuplicateOptionError) as exc:
        raise ConfigSyntaxError(f"line {exc.lineno}: {exc.message}", line=exc.lineno) from None
    except configparser.Error as exc:
        raise ConfigSyntaxError(str(exc)) from None

    where = _key_lines(text)
    values = {}
    for section in cp.sections():
        sec = section.lower()
        if sec not in SCHEMA:
            raise UnknownKeyError(f"unknown section [{section}]", key=section)
        for key, raw in cp.items(section):
            line = where.get((sec, key))
            if key not in SCHEMA[sec]:
                raise UnknownKeyError(f"line {line}: unknown key {sec}.{key}", key=f"{sec}.{key}", line=line)
            try:
                values[key] = SCHEMA[sec][key](raw)
            except ValueError as exc:
                raise ConfigSyntaxError(f"line {line}: cannot parse {sec}.{key}: {exc}",
                                        key=f"{sec}.{key}", line=line) from None
    if "amplitudes" in values and "preset" not in values:
        values["preset"] = None
    cfg = RunConfig(**values)
    validate(cfg)
    return cfg


def _bound(ok, key, msg):
    if not ok:
        raise BoundViolationError(f"{key}: {msg}", key=key)


def validate(cfg: RunConfig) -> RunConfig:
    _bound(cfg.m > 0, "particles.m", "mass must be positive")
    for key, v in (("particles.v1", cfg.v1), ("particles.v2", cfg.v2),
                   ("dressing.dv1", cfg.dv1), ("dressing.dv2", cfg.dv2)):
        if v is not None:
            _bound(np.all(np.isfinite(v)) and float(np.linalg.norm(v)) < 1.0, key,
                   f"superluminal or non-finite velocity {v}")
    _bound(all(c in (1, -1) for c in cfg.charges), "particles.charges", "charge signs must be +1 or -1")
    _bound(0 <= cfg.offshell < 1, "dressing.offshell", "perturbation must lie in [0, 1)")
    _bound(cfg.delta > 0, "regulators.delta", "Delta must be positive")
    _bound(len(cfg.lambda_list) > 0, "regulators.lambda_list", "need at least one lambda")
    for lam in cfg.lambda_list:
        _bound(0 < lam < cfg.delta, "regulators.lambda_list", f"lambda = {lam} must satisfy 0 < lambda < delta")
    _bound(cfg.n_polar >= 4, "quadrature.n_polar", "need at least 4 nodes")
    _bound(cfg.n_azimuthal >= 4, "quadrature.n_azimuthal", "need at least 4 nodes")
    _bound(cfg.e2 > 0, "coupling.e2", "coupling must be positive")
    _bound(np.isfinite(cfg.zeta), "phase.zeta", "must be finite")
    _bound(cfg.t != 0, "phase.t", "t = 0 has no asymptotic phase")
    _bound(cfg.t_ref > 0, "phase.t_ref", "reference time must be positive")
    _bound(cfg.u_floor > 0, "phase.u_floor", "floor must be positive")
    if cfg.amplitudes is not None:
        _bound(len(cfg.amplitudes) == 4, "state.amplitudes", "need 4 amplitudes (uu, ud, du, dd)")
    else:
        _bound(cfg.preset in PRESETS, "state.preset", f"unknown preset {cfg.preset!r}; choose from {sorted(PRESETS)}")
    _bound(1 <= len(cfg.alphas) <= MAX_MODES, "fock.alphas", f"need 1..{MAX_MODES} modes")
    _bound(len(cfg.betas) in (0, len(cfg.alphas)), "fock.betas", "must match the number of alphas")
    _bound(1 <= cfg.n_max <= MAX_NMAX, "fock.n_max", f"must lie in [1, {MAX_NMAX}]")
    _bound(cfg.workers >= 1, "run.workers", "need at least one worker")
    _bound(cfg.format in ("csv", "json"), "output.format", "must be csv or json")
    return cfg


def with_overrides(cfg: RunConfig, **overrides) -> RunConfig:
    """Apply CLI overrides (``None`` means not given) and re-validate."""
    changes = {k: v for k, v in overrides.items() if v is not None}
    if "preset" in changes:
        changes["amplitudes"] = None
    return validate(replace(cfg, **changes))
