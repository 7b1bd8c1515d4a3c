import math

import numpy as np
import pytest

from cohpure.coherence import c_l1, c_rel_entropy, optimal_unitary
from cohpure.correlations import (
    Budget,
    c_N,
    cnot_activation,
    discord_upper,
    hierarchy_report,
    i_max_check,
    max_hierarchy_check,
    negativity,
    negativity_purity_bound,
    unitary_maximize,
)
from cohpure.linalg import DomainError, ValidationError, haar_unitary, kron, stream
from cohpure.purity import p_distance
from cohpure.simplex import MENU, SimplexOptConfig
from cohpure.states import (
    diagonal,
    from_bloch,
    maximally_mixed,
    mutual_information,
    pure,
    random_density,
    validate,
)

BELL = pure([1, 0, 0, 1])
FAST = SimplexOptConfig(restarts=4, max_iter=800)
LIGHT = SimplexOptConfig(restarts=0, max_iter=300, polish=False)


def binary_entropy(p):
    return -p * math.log2(p) - (1 - p) * math.log2(1 - p)


class TestUnitaryMaximize:
    def test_attains_known_coherence_ceiling(self):
        rho = diagonal([0.9, 0.1])
        ceiling = 1.0 - binary_entropy(0.9)
        res = unitary_maximize(c_rel_entropy, rho, budget=Budget(64, 200), rng=stream(1))
        assert res.best_value >= ceiling - 1e-3
        assert res.best_value <= ceiling + 1e-9

    def test_maximally_mixed_is_flat(self):
        res = unitary_maximize(c_rel_entropy, maximally_mixed(3), budget=Budget(8, 4), rng=stream(2))
        assert abs(res.best_value) <= 1e-9

    def test_bell_mutual_information_at_identity(self):
        res = unitary_maximize(
            lambda s: mutual_information(s, (2, 2)), BELL, budget=Budget(4, 2), rng=stream(3)
        )
        assert res.best_value >= 2.0 - 1e-12

    def test_result_invariants(self):
        rho = random_density(3, 2, stream(4))
        res = unitary_maximize(c_rel_entropy, rho, budget=Budget(6, 3), rng=stream(5))
        u = res.best_unitary
        conj = validate(u @ rho.mat @ u.conj().T)
        assert abs(c_rel_entropy(conj) - res.best_value) <= 1e-10
        assert res.best_value >= c_rel_entropy(rho) - 1e-12  # identity included
        assert res.evals >= 7

    def test_injected_candidate_attains_ceiling(self):
        rho = random_density(4, 3, stream(6))
        ceiling = p_distance(rho, "rel_entropy")
        res = unitary_maximize(
            c_rel_entropy,
            rho,
            budget=Budget(2, 0),
            rng=stream(7),
            extra_candidates=[optimal_unitary(rho)],
        )
        assert abs(res.best_value - ceiling) <= 1e-9

    def test_never_exceeds_closed_ceiling(self):
        rng = stream(8)
        for _ in range(10):
            d = int(rng.integers(2, 5))
            rho = random_density(d, int(rng.integers(1, d + 1)), rng)
            ceiling = p_distance(rho, "rel_entropy")
            res = unitary_maximize(c_rel_entropy, rho, budget=Budget(4, 2), rng=rng)
            assert res.best_value <= ceiling + 1e-9

    def test_product_structure_stays_product(self):
        rho = random_density(4, 2, stream(9))
        res = unitary_maximize(
            lambda s: mutual_information(s, (2, 2)),
            rho,
            budget=Budget(4, 2),
            rng=stream(10),
            structure="product",
            dims=(2, 2),
        )
        # mutual information is invariant under product unitaries
        assert abs(res.best_value - mutual_information(rho, (2, 2))) <= 1e-9

    def test_zero_budget_rejected(self):
        with pytest.raises(DomainError):
            unitary_maximize(c_rel_entropy, maximally_mixed(2), budget=Budget(0, 0), rng=stream(0))

    def test_thread_cap_does_not_change_results(self, monkeypatch):
        rho = random_density(3, 2, stream(30))
        sequential = unitary_maximize(c_rel_entropy, rho, budget=Budget(8, 2), rng=stream(31))
        monkeypatch.setenv("COHPURE_THREADS", "4")
        threaded = unitary_maximize(c_rel_entropy, rho, budget=Budget(8, 2), rng=stream(31))
        assert threaded.best_value == sequential.best_value
        assert np.array_equal(threaded.best_unitary, sequential.best_unitary)


class TestNegativity:
    def test_bell(self):
        assert abs(negativity(BELL, (2, 2)) - 0.5) <= 1e-12

    def test_product_state(self):
        rho = validate(kron(diagonal([0.7, 0.3]).mat, from_bloch((0.5, 0, 0)).mat))
        assert negativity(rho, (2, 2)) <= 1e-12

    def test_maximally_mixed(self):
        assert negativity(maximally_mixed(4), (2, 2)) <= 1e-12

    def test_local_unitary_invariance(self):
        rng = stream(11)
        for _ in range(20):
            rho = random_density(4, int(rng.integers(1, 5)), rng)
            local = kron(haar_unitary(2, rng), haar_unitary(2, rng))
            rotated = validate(local @ rho.mat @ local.conj().T)
            assert abs(negativity(rho, (2, 2)) - negativity(rotated, (2, 2))) <= 1e-9


class TestCnotActivation:
    def test_plus_control_gives_bell(self):
        act = cnot_activation(pure([1, 1]))
        assert np.max(np.abs(act.rho_out.mat - BELL.mat)) <= 1e-12
        assert abs(act.negativity - 0.5) <= 1e-12

    def test_diagonal_control_stays_separable(self):
        act = cnot_activation(diagonal([0.3, 0.7]))
        assert act.negativity <= 1e-12

    def test_bloch_control(self):
        act = cnot_activation(from_bloch((0.6, 0, 0)))
        assert abs(act.negativity - 0.3) <= 1e-10

    def test_identity_negativity_equals_half_l1(self):
        rng = stream(12)
        for _ in range(25):
            rho = random_density(2, int(rng.integers(1, 3)), rng)
            act = cnot_activation(rho)
            assert abs(act.negativity - act.half_c_l1) <= 1e-10

    def test_rejects_non_qubit(self):
        with pytest.raises(ValidationError):
            cnot_activation(maximally_mixed(3))


class TestNegativityPurityBound:
    def test_plus_minus_mixture(self):
        rho = validate(0.9 * pure([1, 1]).mat + 0.1 * pure([1, -1]).mat)
        nb = negativity_purity_bound(rho)
        assert abs(nb.negativity - 0.4) <= 1e-10
        assert abs(nb.bound - 0.8) <= 1e-10
        assert abs(nb.c_l1 - 0.8) <= 1e-10
        assert nb.holds

    def test_maximally_mixed(self):
        nb = negativity_purity_bound(maximally_mixed(2))
        assert nb.negativity <= 1e-12 and nb.bound <= 1e-6 and nb.holds

    def test_pure_plus(self):
        nb = negativity_purity_bound(pure([1, 1]))
        assert abs(nb.negativity - 0.5) <= 1e-10
        assert abs(nb.bound - 1.0) <= 1e-9
        assert abs(nb.c_l1 - 1.0) <= 1e-12

    def test_holds_on_seeded_qubits(self):
        rng = stream(13)
        for _ in range(50):
            rho = random_density(2, int(rng.integers(1, 3)), rng)
            assert negativity_purity_bound(rho).holds


class TestCompositeCoherence:
    def test_bell_rel_entropy(self):
        assert abs(c_N(BELL, (2, 2), "rel_entropy") - 1.0) <= 1e-9

    def test_product_of_diagonals(self):
        rho = validate(kron(diagonal([0.6, 0.4]).mat, diagonal([0.2, 0.8]).mat))
        for name in MENU:
            assert c_N(rho, (2, 2), name, FAST) <= 1e-9

    def test_maximally_mixed(self):
        assert c_N(maximally_mixed(4), (2, 2), "rel_entropy") <= 1e-12

    def test_dims_must_match(self):
        with pytest.raises(ValidationError):
            c_N(BELL, (2, 3), "rel_entropy")


class TestDiscordUpper:
    def test_product_of_diagonals_is_free(self):
        rho = validate(kron(diagonal([0.6, 0.4]).mat, diagonal([0.2, 0.8]).mat))
        assert discord_upper(rho, (2, 2), "rel_entropy", Budget(2, 1), stream(14)) <= 1e-12

    def test_classically_correlated_state(self):
        rho = validate(0.5 * pure([1, 0, 0, 0]).mat + 0.5 * pure([0, 0, 0, 1]).mat)
        assert discord_upper(rho, (2, 2), "rel_entropy", Budget(2, 1), stream(15)) <= 1e-12

    def test_bell_discord_is_one(self):
        val = discord_upper(BELL, (2, 2), "rel_entropy", Budget(8, 6), stream(16))
        assert val >= 1.0 - 1e-6
        assert val <= 1.0 + 1e-12

    def test_never_exceeds_composite_coherence(self):
        rng = stream(17)
        for _ in range(5):
            rho = random_density(4, int(rng.integers(1, 5)), rng)
            cn = c_N(rho, (2, 2), "rel_entropy")
            assert discord_upper(rho, (2, 2), "rel_entropy", Budget(2, 1), rng) <= cn + 1e-12


class TestIMaxCheck:
    def test_bell(self):
        chk = i_max_check(BELL, (2, 2), Budget(2, 1), stream(18))
        assert abs(chk.i_max_lower - 2.0) <= 1e-9
        assert abs(chk.p_r - 2.0) <= 1e-12
        assert abs(chk.gap) <= 1e-9

    def test_maximally_mixed(self):
        chk = i_max_check(maximally_mixed(4), (2, 2), Budget(2, 1), stream(19))
        assert chk.i_max_lower <= 1e-9 and chk.p_r <= 1e-12

    def test_rank_two_gap_closes(self):
        rng = stream(20)
        for _ in range(3):
            rho = random_density(4, 2, rng)
            chk = i_max_check(rho, (2, 2), Budget(128, 300), rng)
            assert chk.i_max_lower <= chk.p_r + 1e-9
            assert chk.gap <= 5e-3

    def test_requires_equal_subsystems(self):
        rho = random_density(6, 2, stream(21))
        with pytest.raises(ValidationError):
            i_max_check(rho, (2, 3), Budget(2, 1), stream(22))


class TestHierarchy:
    def test_bell_rel_entropy_values(self):
        rep = hierarchy_report(BELL, (2, 2), "rel_entropy", Budget(4, 2), stream(23))
        assert abs(rep.purity - 2.0) <= 1e-9
        assert abs(rep.coherence_n - 1.0) <= 1e-9
        assert abs(rep.discord_upper - 1.0) <= 1e-6
        assert rep.chain_ok

    def test_maximally_mixed_all_zero(self):
        rep = hierarchy_report(maximally_mixed(4), (2, 2), "rel_entropy", Budget(2, 1), stream(24))
        assert rep.purity <= 1e-12 and rep.coherence_n <= 1e-12 and rep.discord_upper <= 1e-12
        assert rep.chain_ok

    @pytest.mark.parametrize("name", MENU)
    def test_chain_on_seeded_states(self, name):
        rng = stream(25)
        for _ in range(5):
            rho = random_density(4, int(rng.integers(1, 5)), rng)
            rep = hierarchy_report(rho, (2, 2), name, Budget(2, 1), rng, opt=LIGHT)
            assert rep.chain_ok

    def test_witnesses_recorded(self):
        rep = hierarchy_report(BELL, (2, 2), "rel_entropy", Budget(2, 1), stream(26))
        assert rep.witness_q.shape == (4,)
        assert rep.witness_product_unitary.shape == (4, 4)


class TestMaxHierarchy:
    def test_maximally_mixed_all_zero(self):
        rep = max_hierarchy_check(maximally_mixed(4), (2, 2), "rel_entropy", Budget(2, 1), stream(27))
        assert rep.purity <= 1e-12
        assert rep.c_max_lower <= 1e-9
        assert rep.d_max_lower <= 1e-9
        assert rep.ok

    def test_bell_coherence_reaches_purity(self):
        rep = max_hierarchy_check(
            BELL, (2, 2), "rel_entropy", Budget(24, 80), stream(28), inner_budget=Budget(2, 1)
        )
        assert abs(rep.purity - 2.0) <= 1e-9
        assert rep.c_max_lower >= 2.0 - 1e-3
        assert rep.ok

    @pytest.mark.parametrize("name", MENU)
    def test_bounded_by_purity_on_seeded_states(self, name):
        rng = stream(29)
        for _ in range(3):
            rho = random_density(4, 3, rng)
            rep = max_hierarchy_check(
                rho, (2, 2), name, Budget(2, 0), rng, inner_budget=Budget(1, 0), opt=LIGHT
            )
            assert rep.ok
            assert rep.optimizer_gap >= -1e-9
