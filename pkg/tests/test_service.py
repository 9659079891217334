import json

from fastapi.testclient import TestClient

from ospyang.service.app import app
from ospyang.service.models import CHECK_NAMES, Report, SuiteConfig
from ospyang.service.runner import run_suite

client = TestClient(app)


def test_health():
    r = client.get("/health")
    assert r.status_code == 200 and r.json() == {"status": "ok"}


def test_checks_listing():
    r = client.get("/checks")
    assert r.status_code == 200
    assert r.json()["checks"] == list(CHECK_NAMES)


def test_run_endpoint_small():
    r = client.post("/run", json={"checks": ["graded"], "samples": 2})
    assert r.status_code == 200
    report = Report.model_validate(r.json())
    assert report.verdict == "pass"
    assert report.records[0].name == "graded"


def test_run_endpoint_validates():
    r = client.post("/run", json={"checks": ["bogus"]})
    assert r.status_code == 422
    assert "bogus" in json.dumps(r.json())


def test_runner_determinism():
    cfg = SuiteConfig(checks=["ybe"], samples=6, seed=7)
    a = run_suite(cfg)
    b = run_suite(cfg)

    def canonical(rep):
        payload = rep.model_dump()
        for rec in payload["records"]:
            rec.pop("elapsed_ms")
        return json.dumps(payload, sort_keys=True, default=str)

    assert canonical(a) == canonical(b)
    c = run_suite(SuiteConfig(checks=["ybe"], samples=6, seed=8))
    assert canonical(a) != canonical(c)


def test_runner_jobs_parallel_same_records():
    cfg1 = SuiteConfig(checks=["ybe", "graded"], samples=3, seed=7, jobs=1)
    cfg2 = SuiteConfig(checks=["ybe", "graded"], samples=3, seed=7, jobs=3)
    a = run_suite(cfg1)
    b = run_suite(cfg2)
    assert [r.name for r in a.records] == [r.name for r in b.records]
    assert [r.status for r in a.records] == [r.status for r in b.records]


def test_dual_basis_config_error():
    import pytest

    cfg = SuiteConfig(checks=["dual-basis"], trunc_d=0)
    with pytest.raises(ValueError):
        run_suite(cfg)
