#!/usr/bin/env python3
"""Record API responses consumed by the frontend test suite.

Exact response bodies (bytes, as served) are captured against the
deterministic invasion workspace, so the UI tests replay genuine
contract data rather than hand-written approximations.
"""

import json
import sys
import tempfile
from pathlib import Path

ROOT = Path(__file__).resolve().parent.parent
sys.path.insert(0, str(ROOT / "src"))

from fastapi.testclient import TestClient  # noqa: E402

from semcausal.fixtures import build_invasion_map, copy_scm  # noqa: E402
from semcausal.ids import IdMinter  # noqa: E402
from semcausal.quad_store import QuadStore  # noqa: E402
from semcausal.service import create_app  # noqa: E402
from semcausal.workspace import Workspace, WorkspaceConfig  # noqa: E402


def main() -> None:
    tmp = Path(tempfile.mkdtemp(prefix="semcausal-ui-"))
    store = QuadStore()
    invasion_fix = build_invasion_map(store, IdMinter(deterministic=True))
    store.save(tmp / "ws.nq")
    ws = Workspace(WorkspaceConfig(store_path=tmp / "ws.nq", deterministic_ids=True))
    client = TestClient(create_app(ws))
    map_id = invasion_fix["network"].id.value

    recorded: dict[str, dict] = {}

    def record(key: str, method: str, path: str, body=None):
        if method == "GET":
            response = client.get(path)
        else:
            response = client.post(path, json=body)
        recorded[key] = {
            "method": method,
            "path": path,
            "body": body,
            "status": response.status_code,
            "text": response.content.decode("utf-8"),
        }

    record("maps", "GET", "/maps")
    record("map", "GET", f"/maps/{map_id}")
    record("junctions", "GET", f"/maps/{map_id}/junctions")
    for node in (
        "urn:eco:nicheDifferentiation",
        "urn:eco:competitiveSuppression",
        "urn:eco:habitatFit",
        "urn:eco:invasionSuccess",
    ):
        record(f"label:{node}", "GET", f"/units/{node}/label")
    # the explorer always sends full node IRIs
    record(
        "perspective",
        "POST",
        f"/maps/{map_id}/perspective",
        {"cause": "urn:eco:competitiveSuppression", "effect": "urn:eco:invasionSuccess"},
    )
    record(
        "identify",
        "POST",
        "/identify",
        {
            "map": map_id,
            "cause": "urn:eco:competitiveSuppression",
            "effect": "urn:eco:invasionSuccess",
        },
    )
    record(
        "whatif",
        "POST",
        "/whatif",
        {"scm": copy_scm(), "observe": {"X": "1", "Y": "1"}, "do": {"X": "0"}, "query": "Y"},
    )
    record(
        "dsep",
        "POST",
        "/dsep",
        {
            "map": map_id,
            "x": "competitiveSuppression",
            "y": "habitatFit",
            "given": ["nicheDifferentiation"],
        },
    )

    out_dir = ROOT / "frontend" / "tests" / "fixtures"
    out_dir.mkdir(parents=True, exist_ok=True)
    (out_dir / "recorded.json").write_text(
        json.dumps({"map_id": map_id, "calls": recorded}, indent=2, sort_keys=True) + "\n",
        encoding="utf-8",
    )
    (out_dir / "copy_scm.json").write_text(
        json.dumps(copy_scm(), indent=2, sort_keys=True) + "\n", encoding="utf-8"
    )
    print(f"recorded {len(recorded)} calls to {out_dir}")


if __name__ == "__main__":
    main()
