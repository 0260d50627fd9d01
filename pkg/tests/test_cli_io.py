import json

import numpy as np
import pytest

from softdress.cli_io import (
    ResultTable,
    parse_config,
    read_field_sample,
    read_output,
    run,
    write_field_sample,
    write_output,
)
from softdress.cli_io.cli import main
from softdress.cli_io.config import FINE_STRUCTURE_E2, RunConfig
from softdress.dressing_field import ScalarFieldSample
from softdress.errors import BoundViolationError, ConfigSyntaxError, UnknownKeyError

ON_SHELL = """
[particles]
m = 1.0
v1 = 0, 0, 0.6
v2 = 0, 0, -0.6
"""


@pytest.fixture
def config_file(tmp_path):
    p = tmp_path / "run.ini"
    p.write_text(ON_SHELL)
    return p


def test_minimal_config_defaults():
    cfg = parse_config(ON_SHELL)
    assert cfg.v1 == (0, 0, 0.6)
    assert cfg.dressing_v1 == cfg.v1
    assert cfg.e2 == FINE_STRUCTURE_E2
    assert (cfg.n_polar, cfg.n_azimuthal) == (64, 64)
    assert cfg.preset == "singlet"


def test_full_config():
    cfg = parse_config(ON_SHELL + """
[dressing]
dv1 = 0, 0, 0.55
[regulators]
lambda_list = 0.5, 0.05
delta = 2.0
[quadrature]
n_polar = 32
n_azimuthal = 16
[coupling]
e2 = 0.5
[phase]
zeta = 0.1
t = -5
t_ref = 2
signed = yes
[state]
amplitudes = 0, 0.7071067811865476, -0.7071067811865476j, 0
[fock]
alphas = 0.5+0.5j, 0.1
betas = 0.2, 0
n_max = 24
[run]
workers = 3
[output]
format = json
""")
    assert cfg.dressing_v1 == (0, 0, 0.55) and cfg.dressing_v2 == cfg.v2
    assert cfg.lambda_list == (0.5, 0.05)
    assert cfg.amplitudes[2] == -0.7071067811865476j and cfg.preset is None
    assert cfg.alphas == (0.5 + 0.5j, 0.1) and cfg.signed is True
    assert cfg.format == "json" and cfg.workers == 3


def test_lambda_above_delta_is_bound_violation():
    with pytest.raises(BoundViolationError) as exc:
        parse_config(ON_SHELL + "[regulators]\nlambda_list = 0.1, 2.0\ndelta = 1.0\n")
    assert exc.value.key == "regulators.lambda_list"
    assert exc.value.as_dict()["kind"] == "bound_violation"
    with pytest.raises(BoundViolationError):
        parse_config(ON_SHELL + "[regulators]\nlambda_list = 1.0\ndelta = 1.0\n")


def test_superluminal_rejected():
    with pytest.raises(BoundViolationError) as exc:
        parse_config("[particles]\nv1 = 1.0, 0, 0\n")
    assert exc.value.key == "particles.v1"


def test_unknown_key_and_section():
    with pytest.raises(UnknownKeyError) as exc:
        parse_config(ON_SHELL + "[coupling]\nalpha = 0.1\n")
    assert exc.value.key == "coupling.alpha"
    assert exc.value.line == 7
    with pytest.raises(UnknownKeyError):
        parse_config("[plots]\nwidth = 3\n")


def test_syntax_errors_carry_line():
    with pytest.raises(ConfigSyntaxError) as exc:
        parse_config("m = 1\n[particles]\n")
    assert exc.value.line == 1
    with pytest.raises(ConfigSyntaxError) as exc:
        parse_config("[particles]\nm = 1\nthis line is junk\n")
    assert exc.value.line == 3
    with pytest.raises(ConfigSyntaxError) as exc:
        parse_config("[particles]\nv1 = 0, 0\n")
    assert exc.value.key == "particles.v1" and exc.value.line == 2


def test_error_kinds_are_distinct():
    kinds = {ConfigSyntaxError.kind, UnknownKeyError.kind, BoundViolationError.kind}
    assert len(kinds) == 3


def test_csv_writer_format():
    t = ResultTable(("a", "b"), [(1.0, -2.5e-7)], {"config_hash": "x"})
    text = write_output(t, "csv").decode()
    assert text == "# config_hash=x\na,b\n1.00000000000e+00,-2.50000000000e-07\n"


def test_empty_table():
    t = ResultTable(("lambda", "expF"), [], {})
    assert write_output(t, "csv") == b"lambda,expF\n"
    assert json.loads(write_output(t, "json")) == {"columns": ["lambda", "expF"], "rows": [], "meta": {}}


def test_round_trip(rng):
    rows = [tuple(rng.normal(size=3) * 10.0 ** rng.integers(-8, 8)) for _ in range(10)]
    t = ResultTable(("x", "y", "z"), rows, {"k": "v"})
    back = read_output(write_output(t, "csv"), "csv")
    assert back.columns == t.columns and back.meta == {"k": "v"}
    for r, s in zip(t.rows, back.rows):
        np.testing.assert_allclose(s, r, rtol=1e-11)
    assert read_output(write_output(t, "json"), "json").rows == t.rows


def test_rectangular():
    with pytest.raises(ValueError):
        ResultTable(("a", "b"), [(1.0,)])


def test_field_sample_round_trip(rng):
    f = ScalarFieldSample((-1.0, 0.5, 2.0), 0.25, rng.normal(size=(3, 4, 2)))
    g = read_field_sample(write_field_sample(f))
    assert g.origin == f.origin and g.spacing == f.spacing
    np.testing.assert_array_equal(g.values, f.values)
    assert write_field_sample(f).decode().splitlines()[3] == "i,j,k,value"


@pytest.mark.parametrize("sub", ["kin", "phase", "soft", "scan", "cancel", "cloud", "fock", "entangle"])
def test_every_subcommand_runs(sub):
    t = run(sub, parse_config(ON_SHELL))
    assert t.rows and t.meta["subcommand"] == sub
    assert len(t.meta["config_hash"]) == 64


def test_scan_contract():
    t = run("scan", parse_config(ON_SHELL))
    assert t.columns == ("lambda", "expD", "expC", "expF")
    expF = np.array(t.column("expF"))
    assert np.ptp(expF) / expF.mean() < 1e-8


def test_cancel_reports_off_shell_remainder():
    cfg = parse_config(ON_SHELL + "[dressing]\noffshell = 0.05\n")
    t = run("cancel", cfg)
    d = dict(zip(t.column("offshell"), t.column("abs_c_F")))
    assert d[0.0] < 1e-10 and d[0.05] > 1e-4


def test_entangle_composes_soft_factor():
    cfg = parse_config(ON_SHELL + "[dressing]\ndv1 = 0, 0, 0.55\n[coupling]\ne2 = 1.0\n")
    soft = run("soft", cfg)
    ent = run("entangle", cfg)
    F = ent.column("F")[0]
    assert F == soft.column("F")[0] and abs(F) > 1e-6
    row = dict(zip(ent.columns, ent.rows[0]))
    assert row["S_trace_log"] == pytest.approx(-np.log(2))
    assert row["Sd_trace_log"] == pytest.approx(np.exp(2 * F) * (row["S_trace_log"] + 2 * F), abs=1e-12)
    assert row["Sd_bare_normalized"] == pytest.approx(row["Sd_trace_log"], abs=1e-12)
    assert row["S_normalized_dressed"] == pytest.approx(np.log(2), abs=1e-12)


def test_fock_with_hadamard():
    cfg = parse_config(ON_SHELL + "[fock]\nalphas = 0.6+0.3j\nbetas = -0.2+0.7j\nn_max = 32\n")
    row = dict(zip(*((t := run("fock", cfg)).columns, t.rows[0])))
    assert row["hadamard_im"] == pytest.approx(row["commutator_im"], abs=1e-8)


def test_hash_tracks_physics_only():
    a = parse_config(ON_SHELL)
    b = parse_config(ON_SHELL + "[output]\nformat = json\n")
    c = parse_config(ON_SHELL + "[coupling]\ne2 = 0.2\n")
    assert a.config_hash() == b.config_hash() != c.config_hash()


def test_cli_writes_file(config_file, tmp_path):
    out = tmp_path / "scan.csv"
    assert main(["scan", "--config", str(config_file), "--out", str(out)]) == 0
    t = read_output(out.read_bytes())
    assert t.columns == ("lambda", "expD", "expC", "expF")


def test_cli_json_and_overrides(config_file, tmp_path):
    out = tmp_path / "scan.json"
    assert main(["scan", "--config", str(config_file), "--out", str(out), "--format", "json",
                 "--lambda", "0.3,0.03"]) == 0
    doc = json.loads(out.read_text())
    assert [r[0] for r in doc["rows"]] == [0.3, 0.03]
    assert set(doc) == {"columns", "rows", "meta"}


def test_cli_offshell_override(config_file, tmp_path, capsys):
    assert main(["cancel", "--config", str(config_file), "--offshell", "0.05"]) == 0
    t = read_output(capsys.readouterr().out.encode())
    assert max(t.column("abs_c_F")) > 1e-4


def test_cli_preset_override(config_file, capsys):
    assert main(["entangle", "--config", str(config_file), "--preset", "product"]) == 0
    t = read_output(capsys.readouterr().out.encode())
    assert t.column("S_standard")[0] == pytest.approx(0.0, abs=1e-12)


def test_cli_exit_codes(tmp_path, config_file):
    bad = tmp_path / "bad.ini"
    bad.write_text("[particles]\nv1 = 1.0, 0, 0\n")
    assert main(["kin", "--config", str(bad)]) == 2
    assert main(["kin", "--config", str(tmp_path / "missing.ini")]) == 4
    assert main(["bogus", "--config", str(config_file)]) == 2
    comoving = tmp_path / "comoving.ini"
    comoving.write_text("[particles]\nv1 = 0, 0, 0.5\nv2 = 0, 0, 0.5\n")
    assert main(["phase", "--config", str(comoving)]) == 3
    assert main(["kin", "--config", str(config_file), "--out", str(tmp_path / "no" / "dir.csv")]) == 4


def test_cli_contract_violation_exit(tmp_path):
    cfg = tmp_path / "leak.ini"
    cfg.write_text("[fock]\nalphas = 3.0\nn_max = 8\n")
    assert main(["fock", "--config", str(cfg)]) == 3


def test_cli_deterministic_bytes(config_file, tmp_path):
    blobs = []
    for i, workers in enumerate(["1", "1", "1", "4"]):
        out = tmp_path / f"s{i}.csv"
        assert main(["scan", "--config", str(config_file), "--out", str(out), "--workers", workers,
                     "--lambda", ",".join(str(10.0**-k) for k in range(1, 9))]) == 0
        blobs.append(out.read_bytes())
    assert all(b == blobs[0] for b in blobs)


def test_run_config_is_hashable_value():
    assert RunConfig() == RunConfig()


def test_inline_semicolon_comments():
    cfg = parse_config("[coupling]\ne2 = 0.5   ; toy coupling\n[state]\npreset = product ; no entanglement\n")
    assert cfg.e2 == 0.5 and cfg.preset == "product"
