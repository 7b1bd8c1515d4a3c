import pytest

from cohpure import verify
from cohpure.linalg import DomainError


class TestSuites:
    def test_theorem1_small(self):
        rep = verify.run_theorem1(seed=3, trials=6)
        assert rep.passed, [c for c in rep.checks if not c.passed]

    def test_theorem2_small(self):
        rep = verify.run_theorem2(seed=3, trials=6)
        assert rep.passed, [c for c in rep.checks if not c.passed]

    def test_axioms_small(self):
        rep = verify.run_axioms(seed=3, trials=15)
        assert rep.passed, [c for c in rep.checks if not c.passed]
        negatives = [c for c in rep.checks if c.known_negative]
        assert negatives

    def test_majorization_small(self):
        rep = verify.run_majorization(seed=3, trials=6)
        assert rep.passed

    def test_appendix_g_small(self):
        rep = verify.run_appendix_g(seed=3, trials=20)
        assert rep.passed

    def test_reports_serialize(self):
        rep = verify.run_majorization(seed=1, trials=3)
        doc = rep.to_dict()
        assert doc["suite"] == "majorization"
        assert isinstance(doc["checks"], list) and doc["checks"]

    def test_run_suite_dispatch(self):
        rep = verify.run_suite("majorization", seed=2, trials=3)
        assert rep.suite == "majorization"
        with pytest.raises(DomainError):
            verify.run_suite("theorem3")

    def test_determinism(self):
        a = verify.run_appendix_g(seed=5, trials=10).to_dict()
        b = verify.run_appendix_g(seed=5, trials=10).to_dict()
        assert a == b
