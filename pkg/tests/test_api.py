import pytest
from fastapi.testclient import TestClient

from mmds import __version__
from mmds.main import app

P3 = "p mmds 3 2\ne 1 2\ne 2 3\n"
C4 = "p mmds 4 4\ne 1 2\ne 2 3\ne 3 4\ne 1 4\n"


@pytest.fixture
def client():
    return TestClient(app)


def test_health(client):
    for path in ("/health", "/api/health"):
        response = client.get(path)
        assert response.status_code == 200
        assert response.json()["version"] == __version__


@pytest.mark.parametrize("algo", ["brute", "twdp", "vcfpt"])
def test_feasible(client, algo):
    response = client.post("/api/solve/feasible", json={"graph": P3, "k": 1, "algo": algo})
    assert response.status_code == 200
    assert response.json() == {"feasible": True, "algo": algo, "members": [2]}

    response = client.post("/api/solve/feasible", json={"graph": C4, "k": 1, "algo": algo})
    assert response.json()["feasible"] is False


def test_feasible_with_supplied_decomposition(client):
    td = "s td 2 2 3\nb 1 1 2\nb 2 2 3\n1 2\n"
    response = client.post("/api/solve/feasible", json={"graph": P3, "k": 1, "algo": "twdp", "td": td})
    assert response.json()["members"] == [2]


def test_invalid_decomposition_is_422(client):
    td = "s td 2 2 3\nb 1 1 2\nb 2 3\n1 2\n"
    response = client.post("/api/solve/feasible", json={"graph": P3, "k": 1, "algo": "twdp", "td": td})
    assert response.status_code == 422
    assert "UNCOVERED_EDGE" in response.json()["detail"]


def test_decomposition_of_another_graph_is_422(client):
    td = "s td 2 2 4\nb 1 1 2\nb 2 2 3\n1 2\n"
    response = client.post("/api/solve/feasible", json={"graph": P3, "k": 1, "algo": "twdp", "td": td})
    assert response.status_code == 422
    assert "VERTEX_COUNT_MISMATCH 4 3" in response.json()["detail"]


def test_decomposition_with_brute_is_400(client):
    td = "s td 2 2 3\nb 1 1 2\nb 2 2 3\n1 2\n"
    response = client.post("/api/solve/feasible", json={"graph": P3, "k": 1, "algo": "brute", "td": td})
    assert response.status_code == 400


def test_parse_error_is_400(client):
    response = client.post("/api/solve/feasible", json={"graph": "p mmds 2 1\ne 1 1\n", "k": 1})
    assert response.status_code == 400


def test_budget_is_413(client):
    path = "p mmds 30 29\n" + "".join(f"e {i} {i + 1}\n" for i in range(1, 30))
    response = client.post("/api/solve/feasible", json={"graph": path, "k": 1})
    assert response.status_code == 413


def test_k_must_be_positive(client):
    response = client.post("/api/solve/feasible", json={"graph": P3, "k": 0})
    assert response.status_code == 422


def test_minimize(client):
    response = client.post("/api/solve/minimize", json={"graph": C4})
    assert response.json() == {"k_star": 2, "members": [1, 2]}


def test_verify(client):
    response = client.post("/api/solve/verify", json={"graph": C4, "k": 1, "members": [1, 3]})
    assert response.json() == {"feasible": False, "verdict": "MembershipExceeded 2 2"}

    response = client.post("/api/solve/verify", json={"graph": C4, "k": 1, "members": [1, 1]})
    assert response.status_code == 400


def test_interval_greedy(client):
    text = "i 10 0 3\ni 20 2 5\ni 30 4 8\n"
    response = client.post("/api/solve/interval-greedy", json={"intervals": text})
    assert response.json() == {"vertices": [1, 2, 3], "interval_ids": [10, 20, 30], "max_membership": 3}


def test_check_td(client):
    td = "s td 2 2 3\nb 1 1 2\nb 2 2 3\n1 2\n"
    response = client.post("/api/solve/check-td", json={"graph": P3, "td": td, "path_only": True})
    assert response.json() == {"valid": True, "verdict": "VALID width 1", "width": 1}


def test_generate_mcc_with_clique(client, samples):
    body = {"source": (samples / "k2_n2.cgr").read_text(), "clique": [1, 4], "emit_td": True}
    response = client.post("/api/generate/mcc", json=body)
    assert response.status_code == 200
    data = response.json()
    assert data["k"] == 3
    assert data["instance"].startswith("p mmds 205 ")
    assert data["td"].startswith("s td ")
    assert len(data["witness"]) > 0

    check = client.post("/api/solve/verify", json={"graph": data["instance"], "k": 3, "members": data["witness"]})
    assert check.json()["feasible"] is True


def test_generate_sat3_reports_cover(client, samples):
    body = {"source": (samples / "two_vars.cnf").read_text(), "assignment": "11"}
    data = client.post("/api/generate/sat3", json=body).json()
    assert data["k"] == 2
    assert len(data["vertex_cover"]) == 9
    assert data["witness"] is not None


def test_generate_rejects_bad_witness(client, samples):
    body = {"source": (samples / "k2_n2.cgr").read_text(), "clique": [2, 3]}
    response = client.post("/api/generate/mcc", json=body)
    assert response.status_code == 400


def test_unknown_generator(client):
    response = client.post("/api/generate/vertex-cover", json={"source": ""})
    assert response.status_code == 422
