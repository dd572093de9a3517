from __future__ import annotations

import pytest
from fastapi.testclient import TestClient

from oddpcf.formats import render_rotation
from oddpcf.generator import GeneratorSpec, generate
from oddpcf.service.app import app


@pytest.fixture(scope="module")
def client():
    return TestClient(app)


@pytest.fixture(scope="module")
def rot_text():
    return render_rotation(generate(GeneratorSpec(skeleton=6, girth=10,
                                                  policy="even", seed=1)))


def graph_payload(rot_text):
    return {"data": rot_text, "format": "rot"}


class TestEndpoints:
    def test_health(self, client):
        r = client.get("/health")
        assert r.status_code == 200 and r.json()["schema"] == 1

    def test_generate(self, client):
        r = client.post("/generate", json={"skeleton": 5, "girth": 10, "seed": 3})
        assert r.status_code == 200
        body = r.json()
        assert body["schema"] == 1
        assert body["girth"] >= 10
        assert body["rotation"].count("\n") == body["vertices"]

    def test_faces(self, client, rot_text):
        r = client.post("/faces", json=graph_payload(rot_text))
        assert r.status_code == 200
        faces = r.json()["faces"]
        assert faces and all(f["face_class"] in ("poor", "rich", None)
                             for f in faces)

    def test_analyze(self, client, rot_text):
        r = client.post("/analyze", json=graph_payload(rot_text))
        assert r.status_code == 200
        body = r.json()
        assert body["vertices"]
        hub = next(v for v in body["vertices"] if v["forb"] >= 0)
        assert set(hub) == {"vertex", "types", "scores", "forb", "flex"}

    def test_detect(self, client, rot_text):
        r = client.post("/detect", json={"graph": graph_payload(rot_text),
                                         "theorem": "odd10"})
        assert r.status_code == 200
        assert isinstance(r.json()["hits"], list)

    def test_discharge(self, client, rot_text):
        r = client.post("/discharge", json={"graph": graph_payload(rot_text),
                                            "theorem": "odd10"})
        assert r.status_code == 200
        body = r.json()
        assert body["applicable"]
        assert body["totals"] == {"mu": "-12/1", "mu_prime": "-12/1",
                                  "mu_double_prime": "-12/1"}

    def test_solve(self, client, rot_text):
        r = client.post("/solve", json={"graph": graph_payload(rot_text),
                                        "mode": "odd"})
        assert r.status_code == 200
        assert r.json()["chromatic"] <= 4

    def test_color(self, client, rot_text):
        r = client.post("/color", json={"graph": graph_payload(rot_text),
                                        "theorem": "odd10"})
        assert r.status_code == 200
        body = r.json()
        assert body["coloring"] and set(map(int, body["coloring"].values())) <= {1, 2, 3, 4}

    def test_malformed_graph_rejected(self, client):
        r = client.post("/faces", json={"data": "not a rotation", "format": "rot"})
        assert r.status_code == 422
        assert r.json()["detail"]["error"] == "MalformedRotation"

    def test_girth_precondition_rejected(self, client):
        rot = "0: 4 1\n1: 0 2\n2: 1 3\n3: 2 4\n4: 3 0\n"
        r = client.post("/discharge", json={"graph": {"data": rot, "format": "rot"},
                                            "theorem": "odd10"})
        assert r.status_code == 422
