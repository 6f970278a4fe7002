import json

import pytest

from amalgam.presentation import parse_params
from amalgam.verify import LEVELS, SUITES, parameter_grid, quotients_for, verify_all

from oracles import valid_triples


@pytest.mark.parametrize("triple", [(4, 6, 2), (2, 3, 1)])
def test_quick_level_passes(triple):
    report = verify_all(parse_params(*triple), "quick")
    failed = [e["name"] for e in report["results"] if not e["passed"]]
    assert failed == []
    assert {e["suite"] for e in report["results"]} == set(SUITES)
    assert report["schema"] == "amalgam.verify/1"


def test_free_product_runs_degenerate_checks():
    report = verify_all(parse_params(2, 3, 1), "quick")
    assert any(e["name"] == "d = 1 reproduces [1] - [p] - [q]" for e in report["results"])


def test_report_is_deterministic():
    p = parse_params(6, 9, 3)
    a, b = verify_all(p, "quick", seed=5), verify_all(p, "quick", seed=5)
    a.pop("elapsed_seconds"), b.pop("elapsed_seconds")
    assert json.dumps(a) == json.dumps(b)


def test_suite_selection_and_bad_level():
    report = verify_all(parse_params(4, 6, 2), "quick", suites=("betti",))
    assert {e["suite"] for e in report["results"]} == {"betti"}
    with pytest.raises(ValueError):
        verify_all(parse_params(4, 6, 2), "thorough")


def test_levels_differ():
    assert LEVELS["full"]["trace_pairs"] >= 1000 > LEVELS["quick"]["trace_pairs"]


def test_parameter_grid_is_every_valid_triple():
    expected = sorted(t for t, ok in valid_triples(12) if ok)
    assert sorted(p.as_tuple() for p in parameter_grid(12)) == expected


def test_headline_quotients_included():
    names = [q.name for q in quotients_for(parse_params(4, 6, 2), 120, 1)]
    assert {"sl2_z_mod2", "sl2_z_mod5"} <= set(names)
    names = [q.name for q in quotients_for(parse_params(4, 6, 2), 24, 1)]
    assert "sl2_z_mod4" not in names
