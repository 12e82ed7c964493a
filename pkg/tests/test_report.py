"""Report assembly: check selection, skip semantics, worker-count
independence, and the serialized document shape."""
import dataclasses
import json
from fractions import Fraction

import pytest

from tdpair import (CHECK_IDS, KrawtchoukParams, MalformedInputError, QQ,
                    analyze_pair, compute_relation_parameters,
                    construct_krawtchouk, kronecker_sum_candidate,
                    run_all_checks)


@pytest.fixture(scope="module")
def kraw3():
    system, _ = construct_krawtchouk(
        KrawtchoukParams(field=QQ, d=3, p=Fraction(1, 2)))
    return system


@pytest.fixture(scope="module")
def multiplicity_system():
    s1, _ = construct_krawtchouk(
        KrawtchoukParams(field=QQ, d=1, p=Fraction(1, 2)))
    s2, _ = construct_krawtchouk(
        KrawtchoukParams(field=QQ, d=1, p=Fraction(1, 3)))
    outcome = kronecker_sum_candidate(s1, s2, run_checks=False)
    want = tuple(QQ.from_int(v) for v in (2, 0, -2))
    for system in outcome.systems:
        if system.theta == want and system.thetastar == want:
            return system
    raise AssertionError("no ordering realizes the arithmetic sequences")


def test_full_suite_passes_in_order(kraw3):
    report = run_all_checks(kraw3)
    assert report.ok
    assert [r.check_id for r in report.results] == list(CHECK_IDS)
    assert all(r.status == "pass" for r in report.results)
    assert all(r.failing_indices() == [] for r in report.results)
    assert report.result_for("master").passed
    assert report.result_for("nonsense") is None


def test_unknown_check_id_rejected(kraw3):
    with pytest.raises(MalformedInputError):
        run_all_checks(kraw3, checks=("master", "sectionX"))


def test_subset_runs_in_canonical_order(kraw3):
    report = run_all_checks(kraw3, checks=("master", "section5", "master"))
    assert [r.check_id for r in report.results] == ["section5", "master"]
    assert report.ok


def test_multiplicity_skips_scalar_suite(multiplicity_system):
    report = run_all_checks(multiplicity_system)
    r11 = report.result_for("section11")
    assert r11.status == "skipped"
    assert r11.skip_reason == "an eigenspace has dimension above one"
    assert r11.passed
    assert report.result_for("section12").status == "pass"
    assert report.ok


def test_other_eigenvalues_skip_family_suite():
    base, _ = construct_krawtchouk(
        KrawtchoukParams(field=QQ, d=2, p=Fraction(1, 2)))
    scaled = analyze_pair(base.A.scale(QQ.from_int(2)), base.Astar).systems[0]
    report = run_all_checks(scaled)
    r12 = report.result_for("section12")
    assert r12.status == "skipped"
    assert r12.skip_reason == \
        "eigenvalue sequences are not the arithmetic family d - 2i"
    assert report.result_for("section11").status == "pass"
    assert report.ok


def test_wrong_parameters_fail_report(kraw3):
    good = compute_relation_parameters(kraw3)
    bad = dataclasses.replace(good, gamma=good.gamma + QQ.one)
    report = run_all_checks(kraw3, params=bad, checks=("section10",))
    assert not report.ok
    assert any(not r.is_zero for r in report.relation_residuals)


def test_worker_count_does_not_change_output(multiplicity_system):
    doc1 = run_all_checks(multiplicity_system, max_workers=1).to_json()
    doc4 = run_all_checks(multiplicity_system, max_workers=4).to_json()
    assert json.dumps(doc1, sort_keys=True) == json.dumps(doc4, sort_keys=True)


def test_thread_env_var(kraw3, monkeypatch):
    base = run_all_checks(kraw3).to_json()
    monkeypatch.setenv("TDPAIR_THREADS", "3")
    assert run_all_checks(kraw3).to_json() == base
    monkeypatch.setenv("TDPAIR_THREADS", "not a number")
    assert run_all_checks(kraw3).to_json() == base


def test_document_shape(kraw3):
    report = run_all_checks(kraw3, checks=("section10",))
    doc = report.to_json()
    assert set(doc) == {"system", "shape", "parameters", "relations",
                        "split-summands", "checks", "ok"}
    assert doc["shape"] == [1, 1, 1, 1]
    assert doc["parameters"] == {"beta": "2", "gamma": "0", "gammastar": "0",
                                 "rho": "4", "rhostar": "4"}
    assert len(doc["split-summands"]) == 4
    entry = doc["checks"][0]
    assert set(entry) == {"check-id", "status", "residuals", "tables",
                          "failing"}
    timed = report.to_json(include_timings=True)["checks"][0]
    assert isinstance(timed["seconds"], float)


def test_skipped_entry_carries_reason(multiplicity_system):
    report = run_all_checks(multiplicity_system, checks=("section11",))
    entry = report.to_json()["checks"][0]
    assert entry["status"] == "skipped"
    assert entry["skip-reason"] == "an eigenspace has dimension above one"
