"""End-to-end smoke tests for the Python bindings."""

from fractions import Fraction

import pytest

import maxmin_alloc as ma


def frac(s):
    return Fraction(s)


def test_gap_instance_numbers():
    inst = ma.gen_gap_instance()
    assert inst.n == 6
    assert inst.m == 3
    assert inst.evaluate(["j1", "j2"]) == "4"
    assert inst.evaluate(["j1", "k2"]) == "3"
    assert inst.marginal("k2", ["j1"]) == "1"

    assert ma.opt_maxmin(inst)["opt"] == "3"
    assert ma.lp_opt(inst) == "4"
    assert ma.integrality_gap(inst) == "4/3"


def test_gap_certificate_verifies():
    inst = ma.gen_gap_instance()
    cert = ma.build_dual_certificate(inst)
    assert cert["verified"]
    assert cert["threshold"] == "9"
    assert frac(cert["sum_y"]) < 3


def test_lp_verdicts():
    inst = ma.gen_gap_instance()
    assert ma.decide_configuration_lp(inst, "4")["feasible"]
    verdict = ma.decide_configuration_lp(inst, "5")
    assert not verdict["feasible"]
    assert frac(verdict["certificate"]["sum_y"]) < 3


def test_greedy_search_guarantee():
    for seed in range(5):
        inst = ma.gen_random("coverage", 6, 2, seed)
        res = ma.solve_approx(inst, "2/5")
        opt = ma.opt_maxmin(inst)["opt"]
        assert frac(res["achieved_min"]) >= Fraction(2, 5) * frac(opt)


def test_instance_roundtrip():
    inst = ma.gen_random("additive", 5, 2, 11)
    again = ma.Instance.from_json(inst.to_json())
    assert again.to_json() == inst.to_json()


def test_check_submodular():
    inst = ma.gen_random("coverage", 6, 2, 3)
    report = inst.check_submodular_monotone()
    assert report["submodular"] and report["monotone"]


def test_sylvester_family():
    fam = ma.gen_sylvester(3)
    assert fam["delta"] == "1/27"
    assert fam["partial_min"] == "80/27"
    inst = fam["instance"]
    res = ma.greedy(inst, fam["threshold"])
    assert res["achieved_min"] == fam["greedy_min"]
    assert res["allocation"]["unallocated"] == []


def test_sylvester_lift_caps_the_extra_player():
    fam = ma.gen_sylvester_lift(1)
    assert fam["special_cap"] == "15/7"
    assert fam["ratio"] == "3/7"
    inst = fam["instance"]
    res = ma.greedy(inst, fam["threshold"], player_order=fam["player_order"])
    assert res["achieved_min"] == fam["special_cap"]
    assert res["allocation"]["unallocated"] == []


def test_errors_surface_as_python_exceptions():
    inst = ma.gen_gap_instance()
    with pytest.raises(ma.MaxminError):
        ma.solve_approx(inst, "0")
    with pytest.raises(ma.MaxminError):
        inst.evaluate(["nope"])
