import json
import time
from pathlib import Path

import pytest
from fastapi.testclient import TestClient

from aflens.service import ServiceConfig, create_app

GOLDENS = Path(__file__).parent / "goldens"

MUTUAL = "arg(m). arg(o). att(m,o). att(o,m).\n"
CHAIN = "arg(a). arg(b). arg(c). att(a,b). att(b,c).\n"


@pytest.fixture
def client():
    return TestClient(create_app())


@pytest.fixture
def mutual_id(client):
    return client.post("/frameworks", content=MUTUAL).json()["id"]


def api_error(response, status, code):
    assert response.status_code == status
    body = response.json()
    assert body["status"] == status
    assert body["code"] == code
    assert isinstance(body["message"], str) and body["message"]


# --- upload ------------------------------------------------------------


def test_upload_apx(client):
    response = client.post("/frameworks", content=MUTUAL)
    assert response.status_code == 201
    assert set(response.json()) == {"id"}


def test_upload_json_by_content_type(client):
    body = json.dumps({"arguments": [{"id": "a"}], "attacks": []})
    response = client.post(
        "/frameworks", content=body, headers={"content-type": "application/json"}
    )
    assert response.status_code == 201


def test_upload_json_by_sniffing(client):
    body = json.dumps({"arguments": [{"id": "a"}], "attacks": []})
    assert client.post("/frameworks", content=body).status_code == 201


def test_upload_tgf_with_format_param(client):
    response = client.post("/frameworks?format=tgf", content="a\nb\n#\na b\n")
    assert response.status_code == 201
    sid = response.json()["id"]
    labels = client.get(f"/frameworks/{sid}/grounded").json()["labels"]
    assert labels == {"a": "in", "b": "out"}


def test_upload_tgf_by_sniffing(client):
    response = client.post("/frameworks", content="n1 with a label\n#\n")
    assert response.status_code == 201


def test_upload_parse_error_reports_line(client):
    response = client.post("/frameworks", content="arg(a).\narg(a).")
    api_error(response, 400, "parse_error")
    assert "line 2" in response.json()["message"]


def test_upload_unknown_format_param(client):
    api_error(client.post("/frameworks?format=xml", content="x"), 400, "bad_format")


def test_upload_not_utf8(client):
    api_error(
        client.post("/frameworks", content=b"arg(\xff)."), 400, "bad_encoding"
    )


def test_upload_oversized_body():
    app = create_app(ServiceConfig(max_body_bytes=64))
    client = TestClient(app)
    api_error(
        client.post("/frameworks", content="arg(a). " * 64), 413, "too_large"
    )


def test_upload_too_many_arguments(client):
    text = "".join(f"arg(x{i})." for i in range(10_001))
    api_error(client.post("/frameworks", content=text), 413, "too_large")


# --- session lifecycle -------------------------------------------------


def test_unknown_id_404(client):
    api_error(client.get("/frameworks/nope/grounded"), 404, "no_such_framework")


def test_lru_eviction_gives_410():
    client = TestClient(create_app(ServiceConfig(max_sessions=1)))
    first = client.post("/frameworks", content=MUTUAL).json()["id"]
    client.post("/frameworks", content=CHAIN).json()["id"]
    api_error(client.get(f"/frameworks/{first}/grounded"), 410, "gone")


def test_ttl_expiry_gives_410():
    client = TestClient(create_app(ServiceConfig(session_ttl=0.01)))
    sid = client.post("/frameworks", content=MUTUAL).json()["id"]
    time.sleep(0.05)
    api_error(client.get(f"/frameworks/{sid}/grounded"), 410, "gone")


def test_session_isolation(client):
    a = client.post("/frameworks", content=MUTUAL).json()["id"]
    b = client.post("/frameworks", content=CHAIN).json()["id"]
    assert client.get(f"/frameworks/{a}/grounded").json()["labels"] == {
        "m": "undec",
        "o": "undec",
    }
    assert client.get(f"/frameworks/{b}/grounded").json()["labels"] == {
        "a": "in",
        "b": "out",
        "c": "in",
    }


def test_healthz(client):
    response = client.get("/healthz")
    assert response.status_code == 200
    assert response.text == "ok"


# --- grounded / solutions / explanation --------------------------------


def test_grounded_endpoint(client, mutual_id):
    assert client.get(f"/frameworks/{mutual_id}/grounded").json() == {
        "labels": {"m": "undec", "o": "undec"},
        "lengths": {"m": "inf", "o": "inf"},
    }


def test_solutions_default_stable(client, mutual_id):
    doc = client.get(f"/frameworks/{mutual_id}/solutions").json()
    assert doc["semantics"] == "stable"
    assert doc["count"] == 2


def test_solutions_other_semantics(client, mutual_id):
    doc = client.get(
        f"/frameworks/{mutual_id}/solutions", params={"semantics": "complete"}
    ).json()
    assert doc["count"] == 3


def test_solutions_bad_semantics(client, mutual_id):
    api_error(
        client.get(f"/frameworks/{mutual_id}/solutions", params={"semantics": "best"}),
        400,
        "bad_semantics",
    )


def test_explanation_first_delta(client, mutual_id):
    doc = client.get(f"/frameworks/{mutual_id}/solutions/0/explanation").json()
    assert doc["critical_sets"] == [
        {"edges": [["o", "m"]], "resolution_labels": {"m": "in", "o": "out"}}
    ]
    assert doc["overlay"] == {"resolved": ["m", "o"], "labels": {"m": "in", "o": "out"}}


def test_explanation_solution_out_of_range(client, mutual_id):
    api_error(
        client.get(f"/frameworks/{mutual_id}/solutions/5/explanation"),
        404,
        "no_such_solution",
    )


def test_explanation_truncated_flag(client, mutual_id):
    doc = client.get(
        f"/frameworks/{mutual_id}/solutions/0/explanation", params={"maxDelta": 0}
    ).json()
    assert doc["truncated"] is True
    assert doc["critical_sets"] == []


def test_explanation_bad_candidates(client, mutual_id):
    api_error(
        client.get(
            f"/frameworks/{mutual_id}/solutions/0/explanation",
            params={"candidates": "everything"},
        ),
        400,
        "bad_request",
    )


def test_explanation_bad_bounds(client, mutual_id):
    api_error(
        client.get(
            f"/frameworks/{mutual_id}/solutions/0/explanation",
            params={"maxTests": 0},
        ),
        400,
        "bad_request",
    )
    api_error(
        client.get(
            f"/frameworks/{mutual_id}/solutions/0/explanation",
            params={"maxDelta": "many"},
        ),
        400,
        "bad_request",
    )


# --- layout and what-if ------------------------------------------------


def test_layout_base(client, mutual_id):
    doc = client.get(f"/frameworks/{mutual_id}/layout").json()
    assert doc["band"] == ["m", "o"]
    assert doc["resolved"] == []
    assert all(not e["suspended"] for e in doc["edges"])


def test_layout_overlay(client, mutual_id):
    doc = client.get(
        f"/frameworks/{mutual_id}/layout", params={"solution": 0}
    ).json()
    assert doc["resolved"] == ["m", "o"]
    assert doc["labels"] == {"m": "in", "o": "out"}
    assert all(not e["suspended"] for e in doc["edges"])


def test_layout_with_delta_marks_suspension(client, mutual_id):
    doc = client.get(
        f"/frameworks/{mutual_id}/layout", params={"solution": 0, "delta": 0}
    ).json()
    suspended = [(e["source"], e["target"]) for e in doc["edges"] if e["suspended"]]
    assert suspended == [("o", "m")]


def test_layout_delta_requires_solution(client, mutual_id):
    api_error(
        client.get(f"/frameworks/{mutual_id}/layout", params={"delta": 0}),
        400,
        "bad_request",
    )


def test_layout_delta_out_of_range(client, mutual_id):
    api_error(
        client.get(
            f"/frameworks/{mutual_id}/layout", params={"solution": 0, "delta": 3}
        ),
        404,
        "no_such_delta",
    )


def test_what_if_resolves(client, mutual_id):
    doc = client.post(
        f"/frameworks/{mutual_id}/what-if", json={"suspend": [["o", "m"]]}
    ).json()
    assert doc["labels"] == {"m": "in", "o": "out"}
    assert doc["resolved"] == ["m", "o"]


def test_what_if_empty_equals_base_layout(client, mutual_id):
    whatif = client.post(f"/frameworks/{mutual_id}/what-if", json={"suspend": []})
    base = client.get(f"/frameworks/{mutual_id}/layout")
    assert whatif.content == base.content


def test_what_if_equals_delta_layout(client, mutual_id):
    whatif = client.post(
        f"/frameworks/{mutual_id}/what-if", json={"suspend": [["o", "m"]]}
    )
    delta = client.get(
        f"/frameworks/{mutual_id}/layout", params={"solution": 0, "delta": 0}
    )
    assert whatif.content == delta.content


def test_what_if_unknown_edge(client, mutual_id):
    api_error(
        client.post(f"/frameworks/{mutual_id}/what-if", json={"suspend": [["m", "m"]]}),
        400,
        "unknown_attack",
    )


@pytest.mark.parametrize(
    "body",
    ["not json", '{"suspend": "all"}', '{"suspend": [["a"]]}', '{"other": []}'],
)
def test_what_if_malformed_bodies(client, mutual_id, body):
    response = client.post(
        f"/frameworks/{mutual_id}/what-if",
        content=body,
        headers={"content-type": "application/json"},
    )
    assert response.status_code == 400
    assert response.json()["status"] == 400


# --- export ------------------------------------------------------------


def test_export_apx_round_trips(client, mutual_id):
    response = client.get(f"/frameworks/{mutual_id}/export", params={"format": "apx"})
    assert response.status_code == 200
    assert response.text == "arg(m).\narg(o).\natt(m,o).\natt(o,m).\n"


def test_export_json_reimports(client, mutual_id):
    text = client.get(f"/frameworks/{mutual_id}/export", params={"format": "json"}).text
    sid = client.post(
        "/frameworks", content=text, headers={"content-type": "application/json"}
    ).json()["id"]
    again = client.get(f"/frameworks/{sid}/export", params={"format": "json"}).text
    assert again == text


def test_export_dot_with_delta_matches_golden(client, mutual_id):
    response = client.get(
        f"/frameworks/{mutual_id}/export",
        params={"format": "dot", "solution": 0, "delta": 0},
    )
    assert response.headers["content-type"].startswith("text/vnd.graphviz")
    assert response.text == (GOLDENS / "mutual_s1.dot").read_text()


def test_export_bad_format(client, mutual_id):
    api_error(
        client.get(f"/frameworks/{mutual_id}/export", params={"format": "bmp"}),
        400,
        "bad_format",
    )


# --- response stability ------------------------------------------------


def test_get_responses_are_byte_identical(client, mutual_id):
    paths = [
        f"/frameworks/{mutual_id}/grounded",
        f"/frameworks/{mutual_id}/solutions",
        f"/frameworks/{mutual_id}/solutions/0/explanation",
        f"/frameworks/{mutual_id}/layout",
        f"/frameworks/{mutual_id}/layout?solution=0",
        f"/frameworks/{mutual_id}/layout?solution=0&delta=0",
        f"/frameworks/{mutual_id}/export?format=dot",
        f"/frameworks/{mutual_id}/export?format=apx",
    ]
    for path in paths:
        first = client.get(path)
        second = client.get(path)
        assert first.status_code == 200
        assert first.content == second.content, path


def test_cache_transparency(mutual_id):
    cached = TestClient(create_app())
    uncached = TestClient(create_app(ServiceConfig(cache_enabled=False)))
    paths = [
        "grounded",
        "solutions",
        "solutions/0/explanation",
        "layout",
        "layout?solution=0&delta=0",
    ]
    a = cached.post("/frameworks", content=MUTUAL).json()["id"]
    b = uncached.post("/frameworks", content=MUTUAL).json()["id"]
    for path in paths:
        with_cache = cached.get(f"/frameworks/{a}/{path}")
        without = uncached.get(f"/frameworks/{b}/{path}")
        assert with_cache.content == without.content, path
