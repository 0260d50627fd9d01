import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import pair_with_relative_speed
from softdress.asymptotic_phase import (
    kernel_consistency_residual,
    phase_kernel,
    phase_log,
    phase_record,
    two_particle_phase_coefficient,
)
from softdress.errors import DomainError
from softdress.kinematics import make_on_shell, minkowski_dot


@pytest.fixture
def half_pair():
    return make_on_shell(1, [0, 0, 0.5]), make_on_shell(1, [0, 0, -0.5])


def test_kernel_closed_form(half_pair):
    # p.q = 5/3, sqrt((5/3)^2 - 1) = 4/3
    assert phase_kernel(*half_pair) == pytest.approx(5 / (32 * np.pi), rel=1e-14)


def test_kernel_mass_independent():
    a = phase_kernel(make_on_shell(1, [0, 0.3, 0]), make_on_shell(1, [0.2, 0, -0.4]))
    b = phase_kernel(make_on_shell(2, [0, 0.3, 0]), make_on_shell(2, [0.2, 0, -0.4]))
    assert a == pytest.approx(b, rel=1e-13)


def test_kernel_symmetric(half_pair):
    p, q = half_pair
    assert phase_kernel(p, q) == phase_kernel(q, p)


def test_kernel_rejects_self_pair():
    p = make_on_shell(1, [0, 0, 0.4])
    with pytest.raises(DomainError):
        phase_kernel(p, p)


def test_two_particle_coefficient(half_pair):
    assert two_particle_phase_coefficient(*half_pair) == pytest.approx(1 / (3.2 * np.pi), rel=1e-14)
    assert 1 / (3.2 * np.pi) == pytest.approx(0.0994718, abs=1e-7)


def test_two_particle_ultrarelativistic_limit():
    p, q = make_on_shell(1, [0, 0, 0.999999]), make_on_shell(1, [0, 0, -0.999999])
    assert two_particle_phase_coefficient(p, q) == pytest.approx(1 / (4 * np.pi), rel=1e-9)


def test_floor_rejects_comoving():
    p, q = make_on_shell(1, [0, 0, 0.5]), make_on_shell(1, [0, 0, 0.5 + 1e-9])
    with pytest.raises(DomainError):
        two_particle_phase_coefficient(p, q)


def test_sign_option(half_pair):
    plain = two_particle_phase_coefficient(*half_pair)
    assert two_particle_phase_coefficient(*half_pair, charge_signs=(1, -1), signed=True) == -plain
    assert two_particle_phase_coefficient(*half_pair, charge_signs=(1, -1)) == plain


def test_phase_log_values():
    assert phase_log(3.0, 3.0) == 0.0
    assert phase_log(np.e * 2.0, 2.0) == pytest.approx(1.0, abs=1e-15)
    assert phase_log(-np.e * 2.0, 2.0) == pytest.approx(-1.0, abs=1e-15)
    for bad in [(0.0, 1.0), (1.0, 0.0), (1.0, -1.0)]:
        with pytest.raises(DomainError):
            phase_log(*bad)


@given(st.floats(1e-6, 1e6), st.floats(1e-3, 1e3), st.floats(1e-3, 1e3))
def test_phase_log_antisymmetric_and_additive(t, t_ref, c):
    assert phase_log(-t, t_ref) == pytest.approx(-phase_log(t, t_ref), abs=1e-12)
    assert phase_log(c * t, t_ref) == pytest.approx(phase_log(t, t_ref) + np.log(c), abs=1e-9)


def test_identity_on_random_pairs(rng):
    for u in rng.uniform(0.1, 0.95, 100):
        p, q = pair_with_relative_speed(rng, u)
        m2 = minkowski_dot(p, p)
        pq = minkowski_dot(p, q)
        assert 1 / u == pytest.approx(pq / np.sqrt(pq**2 - m2**2), rel=1e-9)
        assert kernel_consistency_residual(p, q) <= 1e-12 * two_particle_phase_coefficient(p, q)


def test_residual_spot(half_pair):
    assert kernel_consistency_residual(*half_pair) < 1e-14


def test_both_sides_diverge_together(rng):
    for u in [1e-2, 1e-3, 1e-4, 1e-5]:
        p, q = pair_with_relative_speed(rng, u)
        ratio = 2 * phase_kernel(p, q) / two_particle_phase_coefficient(p, q)
        assert ratio == pytest.approx(1.0, rel=1e-6)


def test_phase_record(half_pair):
    rec = phase_record(*half_pair, t=np.e**2, t_ref=1.0, zeta=0.25)
    assert rec.log_factor == pytest.approx(2.0)
    assert rec.divergent_phase == pytest.approx(2 * 5 / (16 * np.pi))
    assert rec.zeta == 0.25 and rec.kappa == 0.0
