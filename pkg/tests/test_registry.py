import json

import pytest

from pairops.registry import (
    GATING,
    REGISTRY,
    ExampleReport,
    UnknownExample,
    golden_path,
    golden_text,
    run_example,
)

IDS = ["ex-lirverstrict", "ex-jbf-strict", "ex-residualversionsdisagree", "ex-bfcore-t2t3", "ex-absineqex",
       "prop-abs-rel-nsgr", "gorenstein-identities", "dvr-ehu-li", "rr-example", "duality-suite"]


def test_registry_ids():
    assert list(REGISTRY) == IDS


@pytest.fixture(scope="module")
def reports():
    return {i: run_example(i) for i in IDS}


@pytest.mark.parametrize("example_id", IDS)
def test_example_passes_and_matches_golden(reports, example_id):
    rep = reports[example_id]
    assert rep.ok and rep.all_passed, rep.to_text()
    assert golden_text(rep) == golden_path(example_id).read_text()


def test_every_assertion_is_tagged(reports):
    for rep in reports.values():
        assert all(a.kind in ("stated", "computed", "definitional") for a in rep.assertions)


def test_two_five_example_has_four_assertions(reports):
    rep = reports["ex-absineqex"]
    assert len(rep.assertions) == 4 and rep.ok


def test_bfcore_values(reports):
    d = {a.name: a.computed for a in reports["ex-bfcore-t2t3"].assertions}
    assert d["F_2: bf-core of m in m"] == "(t^4, t^5)"
    assert d["F_3: residual bf-core of m in m"] == "(t^2, t^3)"


def test_rr_example_logs_search(reports):
    log = reports["rr-example"].log
    assert len(log) == 1 and log[0].startswith("restrictability counterexample")


def test_unknown_example_lists_registry():
    with pytest.raises(UnknownExample) as exc:
        run_example("nope")
    assert "ex-absineqex" in exc.value.args[0]


def test_gating_rule():
    r = ExampleReport("t", "t")
    r.check("computed miss", 1, 2, "computed")
    assert r.ok and not r.all_passed
    r.check("stated miss", 1, 2, "stated")
    assert not r.ok
    assert set(GATING) == {"stated", "definitional"}
    with pytest.raises(ValueError):
        r.check("bad tag", 1, 1, "anecdotal")


def test_reports_are_deterministic():
    a = json.dumps(run_example("prop-abs-rel-nsgr").to_dict(), sort_keys=True)
    b = json.dumps(run_example("prop-abs-rel-nsgr").to_dict(), sort_keys=True)
    assert a == b
