#!/usr/bin/env python3
"""Regenerate the committed fixtures/ directory.

Deterministic by construction: re-running produces byte-identical files.
"""

import json
import sys
from pathlib import Path

ROOT = Path(__file__).resolve().parent.parent
sys.path.insert(0, str(ROOT / "src"))

from semcausal import ops  # noqa: E402
from semcausal.fixtures import (  # noqa: E402
    build_assertional_causal_unit,
    build_invasion_map,
    build_measurement_unit,
    build_soil_compound,
    build_wetland_units,
    confounded_scm,
    copy_scm,
    frontdoor_scm,
    invasion_scm,
    mediation_scm,
)
from semcausal.ids import IdMinter  # noqa: E402
from semcausal.quad_store import QuadStore  # noqa: E402
from semcausal.shapes import BUILTIN_SHAPES  # noqa: E402


def main() -> None:
    fixtures = ROOT / "fixtures"
    (fixtures / "scm").mkdir(parents=True, exist_ok=True)
    (fixtures / "shapes").mkdir(parents=True, exist_ok=True)

    # invasion causal map: four universal causal statement units, the network
    # unit, and the persisted junction units
    store = QuadStore()
    minter = IdMinter(deterministic=True)
    invasion_fix = build_invasion_map(store, minter)
    store.save(fixtures / "invasion_map.nq")
    (fixtures / "invasion_map.json").write_text(
        ops.render_json(
            {
                "map": invasion_fix["network"].id.value,
                "statements": {k: u.id.value for k, u in invasion_fix["units"].items()},
                "variables": {k: v.value for k, v in invasion_fix["variables"].items()},
            }
        )
        + "\n",
        encoding="utf-8",
    )

    # wetland statement categories, soil measurements, and the observed
    # suppression event; one file so the golden corpus is self-contained
    corpus = QuadStore()
    corpus_minter = IdMinter(deterministic=True)
    build_wetland_units(corpus, corpus_minter)
    build_measurement_unit(corpus, corpus_minter)
    build_soil_compound(corpus, corpus_minter)
    build_assertional_causal_unit(corpus, corpus_minter)
    corpus.save(fixtures / "wetland_soil.nq")

    scms = {
        "copy.json": copy_scm(),
        "confounded.json": confounded_scm(),
        "frontdoor.json": frontdoor_scm(),
        "mediation.json": mediation_scm(),
        "invasion.json": invasion_scm(
            {
                "nicheDiff": "urn:eco:nicheDifferentiation",
                "suppression": "urn:eco:competitiveSuppression",
                "habitatFit": "urn:eco:habitatFit",
                "invasion": "urn:eco:invasionSuccess",
            }
        ),
    }
    for name, data in scms.items():
        (fixtures / "scm" / name).write_text(
            json.dumps(data, indent=2, sort_keys=True) + "\n", encoding="utf-8"
        )

    for shape_id, (shape, template) in sorted(
        BUILTIN_SHAPES.items(), key=lambda kv: kv[0].value
    ):
        data = shape.to_dict()
        if template is not None:
            data["label"] = {
                "pattern": template.pattern,
                "paths": {
                    name: [p.value for p in steps] for name, steps in template.paths.items()
                },
            }
        from semcausal.quad_store import local_name

        (fixtures / "shapes" / f"{local_name(shape_id)}.json").write_text(
            json.dumps(data, indent=2, sort_keys=True) + "\n", encoding="utf-8"
        )

    print(f"fixtures written to {fixtures}")
    print(f"invasion map id: {invasion_fix['network'].id.value}")


if __name__ == "__main__":
    main()
