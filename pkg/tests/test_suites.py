import json

import pytest

from ruminalg.forms import ContactModel
from ruminalg.parser import eval_text
from ruminalg.suites import (
    SUITES,
    corrupted_rumin_morphism,
    corrupted_rumin_ops,
    format_report,
    report_json,
    run_all,
    run_suite,
    suite_morphism,
    suite_stasheff,
)

FAST = dict(n=1, trials=8, seed=3, max_poly_degree=2)


@pytest.fixture(scope="module")
def all_reports():
    return run_all(n=1, trials=3, seed=5)


def test_every_suite_passes_small():
    for name in SUITES:
        if name == "ce-cohomology":
            # exhaustive depth 5 is covered by the all_reports fixture; keep
            # the smoke loop at depth 3
            report = run_suite(name, **FAST, max_relation=3)
        else:
            report = run_suite(name, **FAST)
        assert report.passed, f"{name}: {report.failures[:2]}"
        assert report.checks > 0


def test_reports_deterministic():
    for name in ("dsa-lemma", "gamma-props", "stasheff"):
        a = run_suite(name, n=1, trials=10, seed=11)
        b = run_suite(name, n=1, trials=10, seed=11)
        da, db = a.to_json_dict(), b.to_json_dict()
        da.pop("wallTimeSeconds")
        db.pop("wallTimeSeconds")
        assert da == db


def test_different_seeds_differ_somewhere():
    # The generated inputs differ even though both runs pass.
    from ruminalg.forms import random_form
    from ruminalg.prng import stream

    m = ContactModel(1)
    a = random_form(m, stream(0, 0), 2, 2)
    b = random_form(m, stream(1, 0), 2, 2)
    assert a != b


def test_run_all_covers_everything(all_reports):
    assert [r.suite for r in all_reports] == list(SUITES)
    assert all(r.passed for r in all_reports)


def test_format_report_mentions_status():
    report = run_suite("lefschetz-iso", n=2, trials=1, seed=0)
    text = format_report(report)
    assert "PASS" in text and "suite=lefschetz-iso" in text


def test_report_json_array_for_all(all_reports, tmp_path):
    path = tmp_path / "all.json"
    report_json(all_reports, str(path))
    data = json.loads(path.read_text())
    assert isinstance(data, list) and len(data) == len(SUITES)
    assert all(set(d) >= {"suite", "passed", "failures", "version"} for d in data)


def test_corrupted_m3_fails_stasheff_with_witness():
    model = ContactModel(1)
    rec = suite_stasheff(1, 30, 0, 2, mset=corrupted_rumin_ops(model), max_relation=3)
    assert rec.failures
    witness = rec.failures[0]
    assert witness.inputs and witness.residual not in ("", "0")


def test_corrupted_f2_fails_morphism_with_witness():
    model = ContactModel(1)
    rec = suite_morphism(1, 30, 0, 2, fset=corrupted_rumin_morphism(model), max_relation=2)
    assert rec.failures
    assert rec.failures[0].residual not in ("", "0")


def test_witnesses_refeed_to_eval():
    model = ContactModel(1)
    rec = suite_stasheff(1, 30, 0, 2, mset=corrupted_rumin_ops(model), max_relation=3)
    mor = suite_morphism(1, 30, 0, 2, fset=corrupted_rumin_morphism(model), max_relation=2)
    for witness in [rec.failures[0], mor.failures[0]]:
        for text in witness.inputs:
            assert eval_text(text, model) is not None
        assert eval_text(witness.residual, model) is not None
