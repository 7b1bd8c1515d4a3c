import numpy as np
import pytest

from cohpure.linalg import ValidationError, stream
from cohpure.majorization import (
    brute_force_cost,
    brute_force_distill,
    convertible_unital,
    cost_feasible_scan,
    distill_feasible_scan,
    distillable_purity_1shot,
    majorizes,
    purity_cost_1shot,
)
from cohpure.states import diagonal, maximally_mixed, pure, random_density


class TestMajorizes:
    def test_uniform_is_majorized_by_everything(self):
        assert majorizes([0.5, 0.5, 0.0], [1 / 3, 1 / 3, 1 / 3])

    def test_first_prefix_failure(self):
        assert not majorizes([0.6, 0.4], [0.7, 0.3])

    def test_reflexivity(self):
        p = stream(0).dirichlet(np.ones(4))
        assert majorizes(p, p)

    def test_zero_padding(self):
        assert majorizes([0.5, 0.5], [0.5, 0.25, 0.25])
        assert not majorizes([0.4, 0.3, 0.3], [0.5, 0.5])

    def test_rejects_invalid_distributions(self):
        with pytest.raises(ValidationError):
            majorizes([0.5, 0.4], [0.5, 0.5])
        with pytest.raises(ValidationError):
            majorizes([1.2, -0.2], [0.5, 0.5])

    def test_transitivity_on_seeded_triples(self):
        rng = stream(1)
        checked = 0
        while checked < 500:
            d = int(rng.integers(2, 8))
            p = np.sort(rng.dirichlet(np.ones(d)))[::-1]
            q = _permutation_mix(p, rng)
            r = _permutation_mix(q, rng)
            assert majorizes(p, q) and majorizes(q, r)
            assert majorizes(p, r)
            checked += 1


def _permutation_mix(p, rng):
    w = rng.dirichlet(np.ones(int(rng.integers(2, 5))))
    return np.sort(sum(wi * rng.permutation(p) for wi in w))[::-1]


class TestConvertibleUnital:
    def test_pure_converts_to_anything(self):
        rng = stream(2)
        psi = pure(rng.standard_normal(4) + 1j * rng.standard_normal(4))
        target = random_density(4, 3, rng)
        assert convertible_unital(psi, target)

    def test_mixed_converts_to_nothing_else(self):
        target = diagonal([0.5, 0.3, 0.2])
        assert not convertible_unital(maximally_mixed(3), target)

    def test_prefix_sum_example(self):
        assert convertible_unital(diagonal([0.5, 0.3, 0.2]), diagonal([0.4, 0.35, 0.25]))

    def test_dimension_mismatch(self):
        with pytest.raises(ValidationError):
            convertible_unital(maximally_mixed(2), maximally_mixed(3))


class TestSingleShotFormulas:
    def test_distill_pure_eight(self):
        psi = pure(np.ones(8))
        assert distillable_purity_1shot(psi) == 3
        assert brute_force_distill(psi, 3).feasible
        assert not brute_force_distill(psi, 4).feasible

    def test_distill_rank3_dim4(self):
        rho = diagonal([0.5, 0.3, 0.2, 0.0])
        assert rho.spectrum.rank == 3
        assert distillable_purity_1shot(rho) == 0
        assert not brute_force_distill(rho, 1).feasible

    def test_distill_maximally_mixed(self):
        assert distillable_purity_1shot(maximally_mixed(4)) == 0

    def test_cost_maximally_mixed(self):
        assert purity_cost_1shot(maximally_mixed(8)) == 0

    def test_cost_binary(self):
        rho = diagonal([0.9, 0.1])
        assert purity_cost_1shot(rho) == 1  # ceil(log2(1.8))
        assert brute_force_cost(rho, 1).feasible
        assert not brute_force_cost(rho, 0).feasible

    def test_cost_pure_eight(self):
        assert purity_cost_1shot(pure(np.ones(8))) == 3


class TestBruteForceOracles:
    def test_distill_pure_qubit_one_step(self):
        cert = brute_force_distill(pure([1, 0]), 1)
        assert cert.feasible and (cert.d1, cert.d2) == (2, 2)

    def test_distill_rank_condition_blocks(self):
        assert not brute_force_distill(diagonal([0.9, 0.1]), 1).feasible

    def test_m_zero_is_identity_conversion(self):
        rng = stream(3)
        for _ in range(5):
            d = int(rng.integers(2, 6))
            rho = random_density(d, int(rng.integers(1, d + 1)), rng)
            assert brute_force_distill(rho, 0).feasible
            # cost at m=0 only for spectra below uniform ceiling
            assert brute_force_cost(maximally_mixed(d), 0).feasible

    def test_certificate_invariants(self):
        rho = diagonal([0.6, 0.25, 0.1, 0.05])
        for m in range(3):
            cert = brute_force_distill(rho, m)
            assert rho.dim * cert.d2 == (1 << m) * cert.d1
            if cert.feasible:
                assert all(lhs >= rhs - 1e-12 for _, lhs, rhs in cert.checked_prefix_sums)

    def test_cost_certificate_majorization_agrees(self):
        rng = stream(4)
        for _ in range(10):
            d = int(rng.integers(2, 7))
            rho = random_density(d, int(rng.integers(1, d + 1)), rng)
            for m in range(4):
                cert = brute_force_cost(rho, m)
                prefix_ok = all(lhs >= rhs - 1e-12 for _, lhs, rhs in cert.checked_prefix_sums)
                assert cert.feasible == prefix_ok


class TestFormulaOracleAgreement:
    def test_exact_agreement_small_dims(self):
        rng = stream(5)
        for _ in range(30):
            d = int(rng.integers(2, 17))
            rho = random_density(d, int(rng.integers(1, d + 1)), rng)
            m_d = distillable_purity_1shot(rho)
            feas = [m for m in range(m_d + 3) if brute_force_distill(rho, m).feasible]
            assert max(feas) == m_d
            m_c = purity_cost_1shot(rho)
            feas_c = [m for m in range(m_c + 3) if brute_force_cost(rho, m).feasible]
            assert min(feas_c) == m_c

    def test_scan_matches_fixed_dimensions(self):
        rng = stream(6)
        for _ in range(6):
            d = int(rng.integers(2, 9))
            rho = random_density(d, int(rng.integers(1, d + 1)), rng)
            for m in range(4):
                assert distill_feasible_scan(rho, m, cap=1 << 14) == brute_force_distill(rho, m).feasible
                assert cost_feasible_scan(rho, m, cap=1 << 14) == brute_force_cost(rho, m).feasible

    def test_unital_outputs_are_majorized(self):
        # mixtures of unitaries may only move down the majorization order
        from cohpure.coherence import apply_channel
        from cohpure.purity import random_unital

        rng = stream(7)
        for _ in range(30):
            d = int(rng.integers(2, 6))
            rho = random_density(d, int(rng.integers(1, d + 1)), rng)
            out = apply_channel(random_unital(d, int(rng.integers(1, 6)), rng), rho)
            assert majorizes(rho.spectrum.values, out.spectrum.values)
