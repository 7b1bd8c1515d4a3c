import math

import numpy as np
import pytest

from cohpure.linalg import DomainError, stream
from cohpure.simplex import (
    MENU,
    OneMinusFidelityDistance,
    PetzAlphaDivergence,
    SandwichedAlphaDivergence,
    SchattenDistance,
    get_distance,
    grid_minimize,
    minimize_diag,
)
from cohpure.states import from_bloch, maximally_mixed, pure, random_density

ALL_FAMILIES = [
    get_distance("rel_entropy"),
    SchattenDistance(1.0),
    SchattenDistance(2.0),
    SchattenDistance(3.0),
    OneMinusFidelityDistance(),
    PetzAlphaDivergence(0.5),
    PetzAlphaDivergence(2.0),
    SandwichedAlphaDivergence(0.5),
    SandwichedAlphaDivergence(2.0),
]


def _fd_grad(value, q, h=1e-6):
    g = np.zeros_like(q)
    for i in range(q.size):
        up, dn = q.copy(), q.copy()
        up[i] += h
        dn[i] -= h
        g[i] = (value(up[None, :])[0] - value(dn[None, :])[0]) / (2 * h)
    return g


class TestDiagObjectives:
    @pytest.mark.parametrize("dist", ALL_FAMILIES, ids=lambda d: d.name)
    def test_gradients_match_finite_differences(self, dist):
        rng = stream(3)
        for _ in range(4):
            d = int(rng.integers(2, 5))
            rho = random_density(d, d, rng)
            value, value_and_grad = dist.diag_objective(rho.mat)
            q = rng.dirichlet(np.ones(d)) * 0.9 + 0.1 / d  # interior point
            q = q / q.sum()
            v, g = value_and_grad(q[None, :])
            assert abs(v[0] - value(q[None, :])[0]) <= 1e-12
            fd = _fd_grad(value, q)
            scale = max(1.0, float(np.max(np.abs(fd))))
            assert np.max(np.abs(g[0] - fd)) / scale <= 1e-4

    @pytest.mark.parametrize("dist", ALL_FAMILIES, ids=lambda d: d.name)
    def test_diag_objective_matches_two_state_evaluator(self, dist):
        rng = stream(4)
        for _ in range(4):
            d = int(rng.integers(2, 5))
            rho = random_density(d, d, rng)
            q = rng.dirichlet(np.ones(d)) * 0.9 + 0.1 / d
            q = q / q.sum()
            value, _ = dist.diag_objective(rho.mat)
            direct = dist.between(rho.mat, np.diag(q).astype(complex))
            assert abs(value(q[None, :])[0] - direct) <= 1e-9


class TestMinimizeDiag:
    def test_rel_entropy_uses_dephased_minimizer(self):
        rho = from_bloch((0.6, 0.2, 0.3))
        res = minimize_diag(rho.mat, "rel_entropy")
        assert res.iterations == 0
        assert np.allclose(res.q, np.real(np.diagonal(rho.mat)), atol=1e-12)

    def test_frobenius_optimum_is_dephased_state(self):
        rng = stream(5)
        rho = random_density(4, 4, rng)
        res = minimize_diag(rho.mat, "schatten_2")
        off = rho.mat - np.diag(np.diagonal(rho.mat))
        assert abs(res.value - math.sqrt(float(np.sum(np.abs(off) ** 2)))) <= 1e-9

    @pytest.mark.parametrize("name", [n for n in MENU if n != "rel_entropy"])
    def test_agrees_with_grid_oracle_qubit(self, name):
        rng = stream(6)
        for _ in range(6):
            rho = random_density(2, int(rng.integers(1, 3)), rng)
            opt = minimize_diag(rho.mat, name).value
            grid, _ = grid_minimize(rho.mat, name, resolution=1e-4)
            assert opt <= grid + 1e-7
            assert opt >= grid - 1e-3

    @pytest.mark.parametrize(
        "dist", [SchattenDistance(1.0), OneMinusFidelityDistance(), PetzAlphaDivergence(0.5),
                 SandwichedAlphaDivergence(2.0)],
        ids=lambda d: d.name,
    )
    def test_agrees_with_grid_oracle_qutrit(self, dist):
        rng = stream(7)
        rho = random_density(3, 3, rng)
        opt = minimize_diag(rho.mat, dist).value
        grid, _ = grid_minimize(rho.mat, dist, resolution=1e-3)
        assert opt <= grid + 1e-7
        assert opt >= grid - 1e-2

    @pytest.mark.parametrize("name", MENU)
    def test_never_exceeds_uniform_start(self, name):
        rng = stream(8)
        for _ in range(10):
            d = int(rng.integers(2, 6))
            rho = random_density(d, int(rng.integers(1, d + 1)), rng)
            dist = get_distance(name)
            ceiling = dist.between(rho.mat, np.eye(d, dtype=complex) / d)
            assert minimize_diag(rho.mat, dist).value <= ceiling + 1e-12

    def test_deterministic(self):
        rho = random_density(3, 3, stream(9))
        a = minimize_diag(rho.mat, "trace_norm")
        b = minimize_diag(rho.mat, "trace_norm")
        assert a.value == b.value and np.array_equal(a.q, b.q)

    def test_flat_objective_pure_plus(self):
        # fidelity of |+><+| with any diagonal state is 1/2
        res = minimize_diag(pure([1, 1]).mat, OneMinusFidelityDistance())
        assert abs(res.value - 0.5) <= 1e-12

    def test_maximally_mixed_is_fixed_point(self):
        for name in MENU:
            assert minimize_diag(maximally_mixed(3).mat, name).value <= 1e-9


class TestGridOracle:
    def test_rejects_large_dimension(self):
        with pytest.raises(DomainError):
            grid_minimize(maximally_mixed(4).mat, "trace_norm")

    def test_trace_norm_qubit_closed_form(self):
        # min over diagonal states of ||rho - diag(q)||_1 for a Bloch-x
        # state equals the off-diagonal mass
        val, q = grid_minimize(from_bloch((0.8, 0, 0)).mat, "trace_norm", resolution=1e-4)
        assert abs(val - 0.8) <= 1e-6
        assert abs(q[0] - 0.5) <= 1e-3

    def test_unknown_distance_name(self):
        with pytest.raises(DomainError):
            get_distance("hellinger")
