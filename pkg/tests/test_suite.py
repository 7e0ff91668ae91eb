import json

import pytest

from jetfiber.jets import Surface
from jetfiber.oracle import SuiteReport
from jetfiber.suite import CHECK_IDS, expected_ids, run_suite


@pytest.fixture(scope="module")
def reports():
    return {"d40": run_suite("d40", 5), "d41": run_suite("d41", 6)}


@pytest.mark.parametrize("surface", ["d40", "d41"])
def test_suite_passes(surface, reports):
    rep = reports[surface]
    assert rep.ok, [c.to_dict() for c in rep.failed]
    assert all(c.status == "pass" for c in rep.checks)


@pytest.mark.parametrize("surface", ["d40", "d41"])
def test_manifest_covers_every_check(surface, reports):
    ids = [c.check_id for c in reports[surface].checks]
    assert len(ids) == len(set(ids))
    assert set(ids) == expected_ids(surface)
    assert set(ids) <= set(CHECK_IDS)


def test_manifest_is_covered_by_both_surfaces():
    assert expected_ids(Surface.D40) | expected_ids(Surface.D41) == set(CHECK_IDS)


def test_every_check_has_a_claim_and_tier(reports):
    for rep in reports.values():
        for c in rep.checks:
            assert c.claim and c.tier in ("symbolic", "identity", "oracle")


def test_report_serialises(reports):
    doc = reports["d41"].to_dict()
    text = json.dumps(doc, sort_keys=True)
    assert "\n" not in text and json.loads(text)["ok"]


def test_precondition():
    with pytest.raises(ValueError):
        run_suite("d40", 4)


def test_skips_are_not_failures():
    rep = SuiteReport("t")
    rep.add("a", "claim a", True, "symbolic")
    rep.skip("b", "claim b", "oracle", "too large")
    assert rep.ok and not rep.complete
    rep.add("c", "claim c", False, "identity")
    assert not rep.ok and [c.check_id for c in rep.failed] == ["c"]
