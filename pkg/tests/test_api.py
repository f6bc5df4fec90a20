import pytest
from fastapi.testclient import TestClient

from app.main import create_app

YB_YA = "[b(I,I) | id | a(I,I)]"


@pytest.fixture(scope="module")
def client():
    return TestClient(create_app())


def test_health(client):
    assert client.get("/health").json() == {"status": "ok"}


def test_multiply_and_identity(client):
    r = client.post("/elements/multiply", json={"n": 3, "elements": [YB_YA, "[a(I,I)|id|b(I,I)]"]})
    assert r.status_code == 200
    product = r.json()["element"]
    r = client.post("/elements/identity", json={"n": 3, "elements": [product]})
    assert r.json()["result"] is True
    r = client.post("/elements/identity", json={"n": 3, "elements": [YB_YA]})
    assert r.json()["result"] is False
    assert r.json()["witness"]


def test_invariants(client):
    body = {"n": 3, "elements": [YB_YA]}
    assert client.post("/elements/abelianise", json=body).json()["value"] == 1
    assert client.post("/elements/cbar", json=body).json()["minus"] == "1"
    assert client.post("/elements/inverse", json=body).json()["element"] == "[a(I,I) | id | b(I,I)]"


def test_equal_needs_two(client):
    r = client.post("/elements/equal", json={"n": 3, "elements": [YB_YA]})
    assert r.status_code == 400


def test_eval(client):
    r = client.post("/points/eval", json={"n": 3, "element": YB_YA, "point": "110(0)"})
    assert r.status_code == 200
    assert r.json()["image"] == "11(0)"
    assert r.json()["circle"] == ["3/4", "3/4"]


def test_germs(client):
    r = client.post("/points/germ", json={"n": 3, "element": YB_YA, "point": "0"})
    assert r.json()["germs"] == [{"point": "(1)", "value": "z^-1·b·a"}, {"point": "(0)", "value": "1"}]
    r = client.post("/points/germ", json={"n": 3, "element": YB_YA, "point": "1(0)"})
    assert r.status_code == 400
    r = client.post("/points/germ", json={"n": 3, "element": YB_YA, "point": "half"})
    assert r.status_code == 400


def test_classify(client):
    assert client.get("/points/classify", params={"at": "2/3"}).json()["germ"] == "Z"
    assert client.get("/points/classify", params={"at": "01(1)"}).json()["germ"] == "Γ⁺×Γ⁻"
    assert client.get("/points/classify", params={"at": "x"}).status_code == 400


def test_graph_pieces(client):
    r = client.get("/graphs/pieces", params={"n": 3, "element": YB_YA, "depth": 6})
    body = r.json()
    assert body["pieces"][0] == {"x0": "0/1", "x1": "1/2", "y0": "0/1", "y1": "1/4", "slope_log2": -1}
    assert body["singular"] == [["31/32", "63/64"], ["63/64", "1/1"]]
    csv_text = client.get("/graphs/csv", params={"n": 3, "element": YB_YA, "depth": 6}).text
    assert csv_text.startswith("x0,x1,y0,y1,slope_log2")


def test_library_errors_become_400(client):
    r = client.post("/elements/identity", json={"n": 3, "elements": ["[a(I,x)|id|a(I,I)]"]})
    assert r.status_code == 400
    assert r.json()["detail"].startswith("ParseError")
    r = client.get("/graphs/svg", params={"n": 3, "element": "[a(I,I)|rot(1)|a(I,I)]"})
    assert r.status_code == 200
    r = client.post("/elements/abelianise", json={"n": 3, "elements": [YB_YA], "type": "V"})
    assert r.status_code == 400
    assert client.post("/elements/identity", json={"n": 2, "elements": [YB_YA]}).status_code == 422
