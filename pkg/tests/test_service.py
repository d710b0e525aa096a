import json

import pytest
from fastapi.testclient import TestClient

from polycond.service import create_app


@pytest.fixture(scope="module")
def client():
    return TestClient(create_app())


class TestBasics:
    def test_health(self, client):
        r = client.get("/health")
        assert r.status_code == 200
        assert r.json()["status"] == "ok"

    def test_polys_listing(self, client):
        names = client.get("/v1/polys").json()["named"]
        assert any(n.startswith("wilkinson") for n in names)


class TestScenarios:
    def test_wilkinson_json(self, client):
        r = client.post("/v1/scenarios/wilkinson", json={"n": 20})
        assert r.status_code == 200
        doc = r.json()
        assert doc["polycond_schema"] == 1
        assert doc["name"] == "wilkinson"
        assert doc["summary"]["argmax_root"] == 15
        assert 15.9 < doc["summary"]["max_log10_A"] < 16.2
        assert {c["label"] for c in doc["curves"]} == {
            "B-monomial",
            "root-A-mixed",
            "root-shift-absolute",
            "root-shift-relative",
        }

    def test_runge_cheb_csv_stays_small(self, client):
        r = client.post(
            "/v1/scenarios/runge-cheb",
            json={"degrees": [5]},
            params={"format": "csv"},
        )
        assert r.status_code == 200
        assert r.headers["content-type"].startswith("text/csv")
        rows = [ln for ln in r.text.splitlines()[1:] if ln]
        mx = max(float(ln.split(",")[2]) for ln in rows)
        assert 10**mx <= 2.5

    def test_scaled_symmetric(self, client):
        r = client.post(
            "/v1/scenarios/wilkinson-scaled",
            json={"n": 8, "target": "symmetric", "samples": 101},
        )
        assert r.status_code == 200
        assert r.json()["summary"]["zero_coeffs"] == 4

    def test_second_without_fields(self, client):
        r = client.post(
            "/v1/scenarios/second",
            json={"samples": 201, "include_fields": False},
        )
        doc = r.json()
        assert doc["summary"]["c20_monomial_argmax_x"] == 1.0
        assert doc["fields"] == []

    def test_runge_equi_svg(self, client):
        r = client.post(
            "/v1/scenarios/runge-equi",
            json={"degrees": [5], "samples": 101},
            params={"format": "svg"},
        )
        assert r.headers["content-type"].startswith("image/svg+xml")
        assert r.text.startswith("<svg")


class TestPseudozeros:
    def test_field_and_masks(self, client):
        r = client.post(
            "/v1/pseudozeros",
            json={
                "poly": "s20",
                "region": [0.0, 2.0, -1.0, 1.0],
                "grid": [16, 16],
                "levels": [1e-2, 1e-6],
            },
        )
        assert r.status_code == 200
        doc = r.json()
        fld = doc["fields"][0]
        assert fld["resolution"] == [16, 16]
        assert doc["summary"]["mask_count_0.01"] >= doc["summary"]["mask_count_1e-06"]

    def test_precision_conflict_is_409(self, client):
        r = client.post(
            "/v1/pseudozeros",
            json={
                "poly": "wilkinson20",
                "grid": [16, 16],
                "levels": [1e-80],
                "precision": 60,
            },
        )
        assert r.status_code == 409
        assert r.json()["detail"]["kind"] == "precision"


class TestCondition:
    def test_monomial_curve(self, client):
        r = client.post(
            "/v1/condition",
            json={"poly": "wilkinson20", "interval": [0, 20], "samples": 101},
        )
        doc = r.json()
        assert doc["summary"]["max_log10"] > 29
        assert doc["summary"]["argmax_x"] == 20.0

    def test_lagrange_relative_curve(self, client):
        r = client.post(
            "/v1/condition",
            json={
                "poly": "c20",
                "interval": [0, 1],
                "samples": 201,
                "basis": "lagrange",
                "relative": True,
            },
        )
        assert r.status_code == 200
        assert r.json()["summary"]["max_log10"] > 35

    def test_exact_rational_interval(self, client):
        r = client.post(
            "/v1/condition",
            json={"poly": "roots:1/3,2/3", "interval": ["0", "1"], "samples": 11},
        )
        assert r.status_code == 200


class TestWitness:
    def test_root_gives_zero_perturbation(self, client):
        r = client.post("/v1/witness", json={"poly": "wilkinson20", "z_re": 7})
        doc = r.json()
        assert doc["indicator"] == 0.0
        assert doc["residual_abs"] == 0.0
        assert all(d == [0.0, 0.0] for d in doc["deltas"])

    def test_generic_point(self, client):
        r = client.post(
            "/v1/witness",
            json={"poly": "wilkinson20", "z_re": 10.5, "z_im": 1.0},
        )
        doc = r.json()
        assert doc["polycond_schema"] == 1
        assert doc["residual_abs"] < 1e-30
        assert doc["max_rel_delta"] == pytest.approx(doc["indicator"], rel=1e-9)

    def test_custom_weights(self, client):
        r = client.post(
            "/v1/witness",
            json={"poly": "roots:1,2", "z_re": "3/2", "weights": ["1", "0", "1"]},
        )
        doc = r.json()
        assert doc["deltas"][1] == [0.0, 0.0]


class TestErrors:
    def test_unknown_poly_is_400(self, client):
        r = client.post("/v1/condition", json={"poly": "zorp"})
        assert r.status_code == 400
        assert r.json()["detail"]["kind"] == "argument"

    def test_validation_error_is_422(self, client):
        r = client.post("/v1/scenarios/wilkinson", json={"n": "twenty"})
        assert r.status_code == 422
        r = client.post("/v1/scenarios/wilkinson", json={"n": 20, "bogus": 1})
        assert r.status_code == 422

    def test_bad_format_rejected(self, client):
        r = client.post(
            "/v1/scenarios/wilkinson", json={"n": 5}, params={"format": "bmp"}
        )
        assert r.status_code == 422

    def test_degenerate_weights_400(self, client):
        r = client.post(
            "/v1/witness",
            json={"poly": "roots:1,2", "z_re": 0, "weights": ["0", "0", "0"]},
        )
        assert r.status_code == 400
        assert r.json()["detail"]["kind"] == "degenerate"
