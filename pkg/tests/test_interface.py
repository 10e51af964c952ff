import json
from pathlib import Path

import pytest
from click.testing import CliRunner
from fastapi.testclient import TestClient

from semcausal import ops
from semcausal.cli import main
from semcausal.fixtures import (
    build_invasion_map,
    build_measurement_unit,
    confounded_scm,
    copy_scm,
)
from semcausal.ids import IdMinter
from semcausal.quad_store import QuadStore
from semcausal.service import create_app
from semcausal.workspace import Workspace, WorkspaceConfig


@pytest.fixture()
def rig(tmp_path):
    """Store file with the invasion fixture plus the SCM files on disk."""
    store = QuadStore()
    minter = IdMinter(deterministic=True)
    invasion_fix = build_invasion_map(store, minter)
    build_measurement_unit(store, minter)
    store_path = tmp_path / "ws.nq"
    store.save(store_path)
    (tmp_path / "confounded.json").write_text(json.dumps(confounded_scm()))
    (tmp_path / "copy.json").write_text(json.dumps(copy_scm()))
    return {
        "tmp": tmp_path,
        "store_path": store_path,
        "map_id": invasion_fix["network"].id.value,
        "invasion_fix": invasion_fix,
    }


def make_ws(rig):
    return Workspace(WorkspaceConfig(store_path=rig["store_path"], deterministic_ids=True))


def cli(rig, *args, expect_exit=0):
    runner = CliRunner()
    result = runner.invoke(
        main, ["--store", str(rig["store_path"]), "--deterministic", *args]
    )
    assert result.exit_code == expect_exit, result.output + str(result.exception)
    return result


class TestWorkspace:
    def test_config_validation(self):
        with pytest.raises(ValueError):
            WorkspaceConfig(max_adjustment_size=-1)

    def test_resolve_node_by_iri_local_and_label(self, rig):
        ws = make_ws(rig)
        net = ops._load_map(ws, rig["map_id"])
        by_iri = ws.resolve_node(net, "urn:eco:competitiveSuppression")
        by_local = ws.resolve_node(net, "competitiveSuppression")
        by_label = ws.resolve_node(
            net, "competitive suppression of resident species on non-native species"
        )
        assert by_iri == by_local == by_label

    def test_resolve_unknown_node(self, rig):
        from semcausal.errors import UnknownVariable

        ws = make_ws(rig)
        net = ops._load_map(ws, rig["map_id"])
        with pytest.raises(UnknownVariable):
            ws.resolve_node(net, "noSuchVariable")

    def test_shapes_dir_loading(self, rig, tmp_path):
        shape_file = {
            "shape_id": "urn:eco:shape:custom",
            "subject_kind": "Instance",
            "predicate_whitelist": ["http://purl.obolibrary.org/obo/RO_0000086"],
            "object_kind": "Literal",
            "label": {"pattern": "{subject} measured as {object}"},
        }
        shapes_dir = tmp_path / "shapes"
        shapes_dir.mkdir()
        (shapes_dir / "custom.json").write_text(json.dumps(shape_file))
        ws = Workspace(
            WorkspaceConfig(
                store_path=rig["store_path"], deterministic_ids=True, shapes_dir=shapes_dir
            )
        )
        from semcausal.quad_store import Iri

        shape, template = ws.shapes[Iri("urn:eco:shape:custom")]
        assert shape.object_kind is None  # literal objects
        assert template.pattern == "{subject} measured as {object}"


class TestCli:
    def test_unknown_subcommand_exits_2(self, rig):
        cli(rig, "frobnicate", expect_exit=2)

    def test_corrupt_store_surfaces_load_error(self, tmp_path):
        from semcausal.errors import StoreLoadError

        bad = tmp_path / "broken.nq"
        bad.write_text("<urn:a> <urn:p> not-a-term\n")
        with pytest.raises(StoreLoadError):
            Workspace(WorkspaceConfig(store_path=bad))

    def test_domain_error_exits_1_with_code(self, rig):
        result = cli(
            rig, "dsep", "--map", rig["map_id"], "--x", "nope", "--y", "habitatFit",
            expect_exit=1,
        )
        error = json.loads(result.stderr or result.output)
        assert error["error"]["code"] == "UNKNOWN_VARIABLE"

    def test_ingest_then_junctions_flow(self, rig, tmp_path):
        fresh = tmp_path / "fresh.nq"
        runner = CliRunner()
        base = ["--store", str(fresh), "--deterministic"]
        r = runner.invoke(main, base + ["ingest", str(rig["store_path"])])
        assert r.exit_code == 0
        r = runner.invoke(main, base + ["junctions", "--map", rig["map_id"]])
        assert r.exit_code == 0
        payload = json.loads(r.output)
        kinds = sorted(j["kind"] for j in payload["junctions"])
        assert kinds == ["Chain", "Chain", "Collider", "Fork"]
        assert any(
            j["kind"] == "Collider" and j["v2"] == "urn:eco:invasionSuccess"
            for j in payload["junctions"]
        )

    def test_text_format(self, rig):
        result = CliRunner().invoke(
            main,
            ["--store", str(rig["store_path"]), "--deterministic", "--format", "text",
             "dsep", "--map", rig["map_id"], "--x", "competitiveSuppression",
             "--y", "habitatFit", "--given", "nicheDifferentiation"],
        )
        assert result.exit_code == 0
        assert result.output.strip() == "d-separated: True"

    def test_validate_all(self, rig):
        result = cli(rig, "validate", "--all")
        payload = json.loads(result.output)
        assert payload["failing"] == 0
        assert payload["passing"] >= 5  # four causal units plus the measurement

    def test_compose_then_map_build(self, tmp_path):
        spec = {
            "statements": [
                {
                    "source_class": "urn:eco:nutrientPulse",
                    "predicate": "urn:su:v:causallyInfluencesPositiveEffect",
                    "target_class": "urn:eco:algalBloom",
                },
                {
                    "source_class": "urn:eco:algalBloom",
                    "predicate": "http://purl.obolibrary.org/obo/RO_0019002",
                    "target_class": "urn:eco:oxygenLevel",
                },
            ]
        }
        spec_path = tmp_path / "statements.json"
        spec_path.write_text(json.dumps(spec))
        runner = CliRunner()
        base = ["--store", str(tmp_path / "w.nq"), "--deterministic"]
        r = runner.invoke(main, base + ["compose", "--from", str(spec_path)])
        assert r.exit_code == 0, r.output
        assert len(json.loads(r.output)["units"]) == 2
        r = runner.invoke(main, base + ["map", "build"])
        assert r.exit_code == 0, r.output
        payload = json.loads(r.output)
        assert len(payload["nodes"]) == 3
        assert len(payload["edges"]) == 2
        assert payload["junction_count"] == 1

    def test_export_nanopub_writes_bundle_and_index(self, rig, tmp_path):
        out = tmp_path / "bundle.nq"
        cli(rig, "export-nanopub", rig["map_id"], "--out", str(out))
        assert out.exists()
        index = json.loads(out.with_suffix(".index.json").read_text())
        assert len(index["nanopubs"]) == 5


class TestService:
    def test_maps_listing_and_adjacency(self, rig):
        client = TestClient(create_app(make_ws(rig)))
        maps = client.get("/maps").json()["maps"]
        assert rig["map_id"] in maps
        adjacency = client.get(f"/maps/{rig['map_id']}").json()
        assert len(adjacency["nodes"]) == 4
        assert len(adjacency["edges"]) == 4
        assert adjacency["acyclic"] is True

    def test_unknown_unit_is_404(self, rig):
        client = TestClient(create_app(make_ws(rig)))
        response = client.get("/units/urn:su:doesNotExist")
        assert response.status_code == 404
        assert response.json()["error"]["code"] == "UNKNOWN_UNIT"

    def test_unit_and_label_endpoints(self, rig):
        client = TestClient(create_app(make_ws(rig)))
        unit_id = rig["invasion_fix"]["units"]["suppression"].id.value
        unit = client.get(f"/units/{unit_id}").json()
        assert unit["kind"] == "statement"
        assert unit["category"] == "Universal"
        label = client.get(f"/units/{unit_id}/label").json()["label"]
        assert label.startswith("every competitive suppression")

    def test_zero_probability_evidence_code(self, rig):
        client = TestClient(create_app(make_ws(rig)))
        response = client.post(
            "/whatif",
            json={
                "scm": copy_scm(),
                "observe": {"X": "1", "Y": "0"},
                "do": {"X": "0"},
                "query": "Y",
            },
        )
        assert response.status_code == 400
        assert response.json()["error"]["code"] == "ZERO_PROBABILITY_EVIDENCE"

    def test_ingest_endpoint_persists(self, rig, tmp_path):
        fresh_path = tmp_path / "service.nq"
        ws = Workspace(WorkspaceConfig(store_path=fresh_path, deterministic_ids=True))
        client = TestClient(create_app(ws))
        text = Path(rig["store_path"]).read_text()
        response = client.post("/ingest", json={"nquads": text})
        assert response.status_code == 200
        assert rig["map_id"] in response.json()["maps"]
        assert fresh_path.exists()

    def test_get_never_writes_store(self, rig):
        ws = make_ws(rig)
        client = TestClient(create_app(ws))
        before = Path(rig["store_path"]).read_bytes()
        client.get("/maps")
        client.get(f"/maps/{rig['map_id']}/junctions")
        client.get(f"/maps/{rig['map_id']}")
        client.get(f"/nanopub/{rig['invasion_fix']['units']['fit'].id.value}")
        assert Path(rig["store_path"]).read_bytes() == before
        assert len(ws.store) == len(QuadStore.from_nquads(before.decode()))

    def test_restart_reproduces_answers(self, rig):
        body = {
            "map": rig["map_id"],
            "x": "competitiveSuppression",
            "y": "habitatFit",
            "given": ["nicheDifferentiation"],
        }
        first = TestClient(create_app(make_ws(rig))).post("/dsep", json=body)
        second = TestClient(create_app(make_ws(rig))).post("/dsep", json=body)
        assert first.content == second.content

    def test_perspective_endpoint_mints_unit(self, rig):
        ws = make_ws(rig)
        client = TestClient(create_app(ws))
        response = client.post(
            f"/maps/{rig['map_id']}/perspective",
            json={"cause": "nicheDifferentiation", "effect": "invasionSuccess"},
        )
        payload = response.json()
        assert len(payload["members"]) == 4
        assert client.get(f"/units/{payload['perspective']}").json()["kind"] == "compound"

    def test_identify_persists_backdoor_perspective(self, rig):
        ws = make_ws(rig)
        client = TestClient(create_app(ws))
        response = client.post(
            "/identify",
            json={
                "map": rig["map_id"],
                "cause": "competitiveSuppression",
                "effect": "invasionSuccess",
            },
        )
        payload = response.json()
        assert payload["strategy"] == "backdoor"
        assert payload["adjustment_sets_display"] == [["habitatFit"], ["nicheDifferentiation"]]
        unit = client.get(f"/units/{payload['perspective']}").json()
        assert "urn:su:v:BackDoorCausalPerspectiveUnit" in unit["classes"]


class TestEstimateRouting:
    def test_estimate_auto_selects_adjustment_set(self, rig):
        ws = make_ws(rig)
        payload = ops.estimate(ws, "backdoor", confounded_scm(), "X", "Y")
        assert payload["given"] == ["Z"]
        assert set(payload["distributions"]) == {"0", "1"}
        assert payload["estimand"] == "sum_{Z} P(Y|X,Z) * P(Z)"

    def test_estimate_frontdoor_auto_selects_mediators(self, rig):
        from semcausal.fixtures import frontdoor_scm

        ws = make_ws(rig)
        payload = ops.estimate(ws, "frontdoor", frontdoor_scm(), "X", "Y")
        assert payload["mediators"] == ["M"]

    def test_unknown_method_rejected(self, rig):
        from semcausal.errors import UnknownVariable

        ws = make_ws(rig)
        with pytest.raises(UnknownVariable):
            ops.estimate(ws, "magic", confounded_scm(), "X", "Y")
