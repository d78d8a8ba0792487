from fractions import Fraction
import json

import pytest

import shatter


def test_set_system_basics():
    s = shatter.SetSystem(3, [[0], [1], [1], [0, 2]])
    assert s.duplicates_dropped == 1
    assert len(s) == 3
    assert shatter.vc_dim(shatter.SetSystem.powerset(4)) == (4, [0, 1, 2, 3])
    u = shatter.k_fold_union(s, 2)
    assert [0, 1, 2] in u.sets
    lhs = shatter.complement_system(shatter.k_fold_intersection(s, 2))
    assert lhs == shatter.k_fold_union(shatter.complement_system(s), 2)
    assert shatter.growth_function(shatter.SetSystem.powerset(3), 2) == 4
    assert shatter.project(s, [0, 2]).sets == [[], [0], [0, 1]]
    with pytest.raises(ValueError):
        shatter.SetSystem(2, [[3]])


def test_halfspaces_in_the_plane():
    tri = [[0, 0], [1, 0], [0, 1]]
    assert shatter.vc_dim(shatter.realizable_halfspace_subsets(tri))[0] == 3
    pts = [[Fraction(1, 2), 0], ["3/2", 1], [0, 2], [2, 2]]
    assert shatter.vc_dim(shatter.realizable_halfspace_subsets(pts))[0] == 3


def test_duality_signs_agree():
    for tau in ["1", "3", "9/2", "5"]:
        a, b = shatter.duality_signs([1, 2, 3], [1, 2, 3], tau)
        assert a == b


def test_bundled_pipeline():
    g = shatter.bundled_gadget()
    assert g.verified and g.box_count == 5
    assert shatter.verify_gadget(g)["ok"]
    inst = shatter.bundled_instance()
    assert inst.point_count == 5
    r1 = shatter.verify_theorem1(inst, vcdim=True)
    assert r1["shattered"] and r1["subsets_checked"] == 32 and r1["vc_dim"] >= 5
    inst2 = shatter.build_theorem2(inst)
    r2 = shatter.verify_theorem2(inst2)
    assert r2["shattered"] and r2["zero_sign_evaluations"] == 0
    w = shatter.union_witness(inst, [0, 3])
    assert w["subset"] == [0, 3]
    assert all(isinstance(t["tau"], Fraction) for t in w["halfspaces"])
    assert len(shatter.simplex_witness(inst2, [1])["simplex"]["vertices"]) <= 3


def test_json_round_trip_and_sampling():
    inst = shatter.bundled_instance()
    again = shatter.Theorem1Instance.from_json(inst.to_json())
    assert json.loads(again.to_json()) == json.loads(inst.to_json())
    a = shatter.verify_theorem1(inst, mode="sample", count=10, seed=4)
    assert a == shatter.verify_theorem1(inst, mode="sample", count=10, seed=4)
    with pytest.raises(ValueError):
        shatter.verify_theorem1(inst, mode="sample")


def test_search_and_errors():
    g = shatter.search_gadget(2, 2, seed=3, budget=5000)
    assert g is not None and g.verified
    with pytest.raises(ValueError):
        shatter.build_theorem1(5, 2, g)
    with pytest.raises(shatter.SchemaError):
        shatter.BoxGadget.from_json('{"n": 2}')
