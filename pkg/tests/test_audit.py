import pytest

from modfactor.audit import THEOREMS, AuditInstance, audit_seeds, theorem_audit
from modfactor.errors import InputError
from modfactor.graph import Multigraph, ResidueMap


def test_examples():
    G = Multigraph.complete_bipartite(3, 3, 3)
    rep = theorem_audit(AuditInstance(G, ResidueMap(3, [0] * 6), 3), "cor:bipartite:factor")
    assert rep.passed
    rep = theorem_audit(AuditInstance(Multigraph.cycle(4), ResidueMap(2, [1, 0, 0, 0]), 2), "cor:bipartite:factor")
    assert rep.status == "hypothesis-fail" and rep.clause == "compatibility"
    rep = theorem_audit(AuditInstance(Multigraph.complete(4), None, 2, {"m": 1}), "thm:bipartite:factor")
    assert rep.passed


def test_unknown_theorem():
    with pytest.raises(InputError):
        audit_seeds("no-such-theorem", 1)


@pytest.mark.parametrize("theorem", sorted(THEOREMS))
def test_every_theorem_passes_generated_seeds(theorem):
    reports = audit_seeds(theorem, 6)
    assert all(r.passed for r in reports), [r.to_dict() for r in reports if not r.passed]


def test_report_dict():
    rep = audit_seeds("cor:Eulerian:1/2", 1)[0]
    d = rep.to_dict()
    assert d["theorem"] == "cor:Eulerian:1/2" and d["status"] == "pass"
