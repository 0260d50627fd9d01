import numpy as np
import pytest

from softdress.kinematics import make_on_shell


@pytest.fixture
def rng():
    return np.random.default_rng(20090120)


def random_velocity(rng, vmax=0.95, vmin=0.0):
    d = rng.normal(size=3)
    d /= np.linalg.norm(d)
    return d * rng.uniform(vmin, vmax)


def random_rotation(rng):
    q, r = np.linalg.qr(rng.normal(size=(3, 3)))
    q = q * np.sign(np.diag(r))
    if np.linalg.det(q) < 0:
        q[:, 0] *= -1
    return q


def pair_with_relative_speed(rng, u, m=1.0):
    """Equal-mass on-shell pair with prescribed relative speed, randomly boosted and oriented."""
    # particle 1 at rest, particle 2 at speed u, then a common boost via velocity addition
    v2 = random_velocity(rng, 1.0, 1.0) * u
    p1 = make_on_shell(m, np.zeros(3)).as_array()
    p2 = make_on_shell(m, v2).as_array()
    b = random_velocity(rng, 0.8)
    g = 1 / np.sqrt(1 - b @ b)
    bb = b @ b

    def boost(p):
        e, x = p[0], p[1:]
        bx = b @ x
        e2 = g * (e + bx)
        x2 = x + ((g - 1) * bx / bb + g * e) * b
        return np.concatenate([[e2], x2])

    return boost(p1), boost(p2)


ACCEPTANCE_LINES = []


@pytest.fixture
def criterion():
    """Record one acceptance line; the assertion still decides pass/fail."""

    def record(number, title, ok, detail):
        ACCEPTANCE_LINES.append(f"[{'PASS' if ok else 'FAIL'}] AC{number:02d} {title}: {detail}")
        assert ok, f"AC{number} {title}: {detail}"

    return record


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES):
            terminalreporter.write_line(line)
