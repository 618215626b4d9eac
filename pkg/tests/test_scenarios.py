import json

import pytest

from hodgeloci.scenarios import (SCENARIOS, Budget, ScenarioConfig, fermat_kernel_elements,
                                 check_fermat_kernel_elements, run_scenario, run_scenarios)

FAST = ScenarioConfig(check_smoothness=False)


@pytest.fixture(scope="module")
def example_a():
    return run_scenario("example-a")


def test_scenario_names_are_stable():
    assert set(SCENARIOS) == {"example-a", "example-b", "example-c", "fermat", "lift",
                              "quartic-family", "plucker-family", "tsp-corollary"}


def test_example_a_pairing(example_a):
    assert example_a.passed, example_a.failures()
    pr = example_a.pairing_result
    assert (pr["rows"], pr["rank"], pr["left_kernel_dim"]) == (18, 18, 0)
    assert pr["det"] != 0
    assert example_a.smooth_ok is True


def test_example_a_pencil(example_a):
    pen = example_a.pencil_result
    assert pen["nonzero_drop_count"] <= pen["bound"] == 1
    assert pen["det_poly"] is not None


def test_example_a_structured_output_is_json_and_has_anchors(example_a):
    doc = example_a.as_dict()
    text = json.dumps(doc)
    assert "elapsed" not in text
    assert doc["anchors"] and all(isinstance(a, str) for a in doc["anchors"])


@pytest.mark.parametrize("name", ["fermat", "quartic-family", "plucker-family", "example-b"])
def test_scenarios_pass(name):
    rep = run_scenario(name, FAST)
    assert rep.passed, rep.failures()


def test_structured_output_is_reproducible():
    a = json.dumps(run_scenario("example-b", FAST).as_dict(), sort_keys=True)
    b = json.dumps(run_scenario("example-b", FAST).as_dict(), sort_keys=True)
    assert a == b


@pytest.mark.parametrize("d, c, k", [(3, 3, 5), (3, 2, 4), (4, 2, 3)])
def test_fermat_scenario_parameters(d, c, k):
    rep = run_scenario("fermat", FAST, d=d, c=c, k=k)
    assert rep.passed, rep.failures()


def test_fermat_kernel_elements_are_kernel_vectors():
    assert all(check_fermat_kernel_elements(3, 3, 5).values())
    assert fermat_kernel_elements(3, 3, 5)


def test_lift_budget_is_reported_not_raised():
    rep = run_scenario("lift", ScenarioConfig(budget=Budget(max_lift_steps=1)), steps=2)
    assert rep.status == "budget exceeded"
    assert not rep.passed


def test_active_variable_budget():
    rep = run_scenario("example-a", ScenarioConfig(budget=Budget(max_active_vars=6)))
    assert rep.status == "budget exceeded"


def test_two_step_lift():
    rep = run_scenario("lift", FAST, base="fermat:3,2,4", steps=2)
    assert rep.passed, rep.failures()


def test_run_scenarios_keeps_order():
    names = ["quartic-family", "fermat"]
    reps = run_scenarios(names, FAST, workers=2)
    assert [r.name for r in reps] == names


def test_unknown_scenario():
    with pytest.raises(KeyError):
        run_scenario("example-z")
