import numpy as np
import pytest

from softdress.errors import DomainError
from softdress.quadrature import QuadratureSpec, sphere_average, sphere_nodes


@pytest.mark.parametrize("n", [(4, 4), (16, 8), (64, 64), (7, 33)])
def test_weights_sum_to_4pi(n):
    nodes, w = sphere_nodes(QuadratureSpec(*n))
    assert w.sum() == pytest.approx(4 * np.pi, rel=1e-12)
    np.testing.assert_allclose(np.linalg.norm(nodes, axis=1), 1.0, atol=1e-15)


def test_low_moments():
    quad = QuadratureSpec(16, 16)
    n, _ = sphere_nodes(quad)
    assert sphere_average(n[:, 2] ** 2, quad) == pytest.approx(1 / 3, abs=1e-14)
    assert sphere_average(n[:, 0] * n[:, 1], quad) == pytest.approx(0, abs=1e-15)
    assert sphere_average(n[:, 0] ** 4, quad) == pytest.approx(1 / 5, abs=1e-14)


@pytest.mark.parametrize("bad", [(3, 8), (8, 2), (4.5, 8)])
def test_rejects_small_orders(bad):
    with pytest.raises(DomainError):
        QuadratureSpec(*bad)
