import json

import pytest

from fusionforge.groups import parse_group, rank, subgroups
from fusionforge.pipeline import (UnsupportedShapeError, VerificationReport, bigcenter_blueprint,
                                  blueprint_report, cyclic_decomposition, family_shape,
                                  plan_report, rank_reduction_plan, run_example)

import oracles


@pytest.mark.parametrize("desc,orders", [("C2^2", [2, 2]), ("C4xC2", [4, 2]), ("C8xC4xC2", [8, 4, 2]),
                                         ("C3^2", [3, 3]), ("C9xC3", [9, 3]), ("C16", [16])])
def test_cyclic_decomposition(desc, orders):
    G = parse_group(desc)
    basis = cyclic_decomposition(G.whole)
    assert [G.order_of(a) for a in basis] == orders
    span = {0}
    for a in basis:
        span = {G.mul(x, G.power(a, k)) for x in span for k in range(G.order_of(a))}
    assert len(span) == G.order


def test_blueprint_examples():
    bp = bigcenter_blueprint(parse_group("Q8"))
    assert bp.k == 1 and bp.spheres[0].degree == 4 and bp.is_free()
    bp = bigcenter_blueprint(parse_group("ES(27,exp_p)"))
    assert bp.k == 1 and bp.spheres[0].degree == 9
    assert all(rank(H) <= 1 for H in bp.isotropy_family)
    assert bp.sphere_dimensions == [17]
    bp = bigcenter_blueprint(parse_group("C2^2"))
    assert bp.k == 2 and [t.degree for t in bp.spheres] == [1, 1] and bp.is_free()


@pytest.mark.parametrize("desc", ["D8", "Q16", "ES(27,exp_p2)", "D8xC2", "ES(32,-)", "C4xC2"])
def test_blueprint_family_matches_center_oracle(desc):
    # dim theta_j^H > 0 for all j exactly when H meets the center trivially
    G = parse_group(desc)
    bp = bigcenter_blueprint(G)
    Z = oracles.brute_center(G)
    expected = {H for H in oracles.all_subgroups(G) if H & Z == {0}}
    assert {H.members for H in bp.isotropy_family} == expected
    assert all(c.passed for c in bp.claims())


def test_blueprint_rejects_non_p_group():
    with pytest.raises(ValueError):
        bigcenter_blueprint(parse_group("Sym3"))


@pytest.mark.parametrize("kind,p,N", [("cyclic", 2, 2), ("cyclic", 3, 1), ("quaternion", 2, 3),
                                      ("elem_abelian", 2, 2)])
def test_run_example(kind, p, N):
    rep = run_example(kind, p, N)
    assert rep.passed, [c.id for c in rep.claims if not c.passed]
    ids = [c.id for c in rep.claims]
    assert {"left-stable", "fusion-containment", "mackey", "freeness"} <= set(ids)


@pytest.mark.parametrize("args", [("cyclic", 4, 2), ("quaternion", 2, 2), ("quaternion", 3, 3),
                                  ("elem_abelian", 2, 0), ("dihedral", 2, 3)])
def test_run_example_rejects(args):
    with pytest.raises(ValueError):
        run_example(*args)


def test_elem_abelian_identity_uses_aut_count():
    rep = run_example("elem_abelian", 2, 2)
    w = rep.claim("elem-identity").witness
    assert w == {"n": 6, "aut_order": 6}
    assert set(rep.claim("freeness").witness["fixed_dims"].values()) == {0}


def test_family_shapes():
    G = parse_group("Q16xC2")
    subs = subgroups(G)
    cyc = [H for H in subs if H.order <= 4 and all(G.order_of(x) <= 4 for x in H) and
           any(G.order_of(x) == H.order for x in H)]
    assert family_shape(cyc) == ("cyclic", 2, 2)
    Q = parse_group("Q16")
    rank_one = [H for H in subgroups(Q)]
    assert family_shape(rank_one) == ("quaternion", 2, 4)
    E = parse_group("C2^3")
    assert family_shape(subgroups(E)) == ("elem_abelian", 2, 3)
    with pytest.raises(UnsupportedShapeError):
        family_shape(subgroups(parse_group("C4xC2")))


def test_plan_examples():
    plan = rank_reduction_plan(parse_group("Q8"))
    assert plan.stages == [] and plan.free
    plan = rank_reduction_plan(parse_group("ES(27,exp_p)"))
    assert len(plan.stages) == 1 and plan.free
    st = plan.stages[0]
    assert st.package.kind == "cyclic" and st.package.S.order == 3
    assert st.compatible.verify() == []
    assert [H.order for H in st.residual] == [1]
    for H, chi in st.characters.items():
        for h in H.elements[1:]:
            assert oracles_fixed_zero(chi, h)
    plan = rank_reduction_plan(parse_group("C4xC2"))
    assert plan.stages == [] and plan.free


def oracles_fixed_zero(chi, h):
    from fusionforge.repcalc import fixed_dim
    return fixed_dim(chi, h) == 0


def test_plan_certificate_is_exact():
    G = parse_group("D8")
    plan = rank_reduction_plan(G)
    assert plan.free and len(plan.certificate) == G.order - 1
    assert any(v.startswith("stage 2") for v in plan.certificate.values())


def test_reports_serialize_deterministically():
    a = json.dumps(plan_report(parse_group("ES(27,exp_p)")).to_json(), sort_keys=True)
    b = json.dumps(plan_report(parse_group("ES(27,exp_p)")).to_json(), sort_keys=True)
    assert a == b
    data = json.loads(a)
    assert set(data) == {"scenario", "inputs", "claims", "elapsed_ms"}
    assert data["elapsed_ms"] == 0
    for c in data["claims"]:
        assert set(c) == {"id", "paper_ref", "verdict", "witness"}
        assert c["verdict"] in ("pass", "fail") and c["witness"] is not None


def test_timing_is_opt_in():
    rep = blueprint_report(parse_group("Q8"))
    assert rep.to_json()["elapsed_ms"] == 0
    assert rep.to_json(timing=True)["elapsed_ms"] >= 0


def test_failed_claim_fails_report():
    rep = VerificationReport("x", {})
    rep.add("ok", "a", True, {})
    rep.add("bad", "b", False, {"where": 1})
    assert not rep.passed
    assert rep.to_json()["claims"][1]["verdict"] == "fail"
