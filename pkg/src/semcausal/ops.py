"""Payload layer shared by the CLI and the HTTP service.

Every operation takes a Workspace and plain JSON-compatible arguments and
returns a JSON-compatible dict; both transports serialize those payloads
with render_json, which is what makes their outputs byte-identical.
"""

from __future__ import annotations

import json
from typing import Iterable, Optional

from . import vocab
from .causal_inference import backdoor_sets, d_separated, identify_effect
from .causal_model import (
    CausalNetwork,
    ContextFilter,
    PerspectiveKind,
    adjacency_json,
    check_acyclic,
    classify_junctions,
    extract_perspective,
    load_causal_network,
    mint_identification_perspective,
    statement_from_unit,
    to_dag,
)
from .errors import DomainError, UnknownUnit, UnknownVariable
from .fdo_io import ExportConfig, export_nanopub, export_nested, import_nanopub, nanopub_nquads
from .quad_store import Iri, Literal, Quad, local_name, parse_nquads, write_nquads
from .scm_engine import (
    CounterfactualQuery,
    DiscreteSCM,
    InvalidScm,
    counterfactual,
    estimate_backdoor,
    estimate_frontdoor,
    frontdoor_check_for,
    is_canonical,
    mediation_effects,
    to_canonical_form,
)
from .semantic_units import (
    CompoundUnit,
    StatementUnit,
    best_label,
    load_unit,
    render_dynamic_label,
    validate_shape,
)
from .statement_logic import StatementCategory, categorize
from .workspace import Workspace


def render_json(payload: dict) -> str:
    return json.dumps(payload, indent=2, sort_keys=True, ensure_ascii=False)


def _scm(scm_data: dict) -> DiscreteSCM:
    try:
        return DiscreteSCM.from_dict(scm_data)
    except InvalidScm:
        raise
    except (KeyError, TypeError, ValueError) as exc:
        raise InvalidScm(f"malformed SCM description: {exc}") from exc


def _load_map(ws: Workspace, map_id: str) -> CausalNetwork:
    return load_causal_network(ws.store, Iri(map_id))


def list_units(ws: Workspace) -> list[Iri]:
    units = {
        q.s
        for q in ws.store.match(p=vocab.RDF_TYPE)
        if isinstance(q.s, Iri) and q.g.value == q.s.value + "#meta"
    }
    return sorted(units, key=lambda i: i.value)


def ingest(ws: Workspace, text: str) -> dict:
    quads = parse_nquads(text)
    before = len(ws.store)
    ws.store.add_all(quads)
    ws.save()
    return {
        "ingested": len(ws.store) - before,
        "parsed": len(quads),
        "quads": len(ws.store),
        "maps": [i.value for i in _map_ids(ws)],
    }


def _map_ids(ws: Workspace) -> list[Iri]:
    found = {
        q.s for q in ws.store.match(p=vocab.RDF_TYPE, o=vocab.CAUSAL_NETWORK_COMPOUND_UNIT)
    }
    return sorted(found, key=lambda i: i.value)


def list_maps(ws: Workspace) -> dict:
    return {"maps": [i.value for i in _map_ids(ws)]}


def get_map(ws: Workspace, map_id: str) -> dict:
    net = _load_map(ws, map_id)
    payload = adjacency_json(net)
    payload["acyclic"] = check_acyclic(net)["acyclic"]
    return payload


def get_unit(ws: Workspace, unit_id: str) -> dict:
    unit = load_unit(ws.store, Iri(unit_id))
    payload = {
        "id": unit.id.value,
        "classes": [c.value for c in unit.unit_classes],
        "meta": write_nquads(unit.meta),
    }
    if isinstance(unit, StatementUnit):
        payload["kind"] = "statement"
        payload["content"] = write_nquads(unit.content)
        try:
            payload["category"] = categorize(unit).value
        except DomainError:
            payload["category"] = None
    else:
        payload["kind"] = "compound"
        payload["members"] = [m.value for m in unit.members]
    return payload


def get_label(ws: Workspace, unit_id: str) -> dict:
    iri = Iri(unit_id)
    label: Optional[str] = None
    try:
        unit = load_unit(ws.store, iri)
    except UnknownUnit:
        unit = None
    if isinstance(unit, StatementUnit):
        resolved = ws.shape_for(unit)
        if resolved is not None and resolved[1] is not None:
            try:
                label = render_dynamic_label(unit, resolved[1], ws.store)
            except DomainError:
                label = None
    if label is None:
        label = best_label(ws.store, iri)
    return {"id": unit_id, "label": label}


def validate(ws: Workspace, unit_id: Optional[str] = None, shape_id: Optional[str] = None) -> dict:
    if unit_id is not None:
        targets = [Iri(unit_id)]
    else:
        targets = list_units(ws)
    reports = []
    for target in targets:
        unit = load_unit(ws.store, target)
        if not isinstance(unit, StatementUnit):
            continue
        if shape_id is not None:
            resolved = ws.shapes.get(Iri(shape_id))
            if resolved is None:
                raise UnknownUnit(f"no shape with id {shape_id}")
        else:
            resolved = ws.shape_for(unit)
        if resolved is None:
            reports.append({"unit": target.value, "shape": None, "conformant": None, "violations": []})
            continue
        reports.append(validate_shape(unit, resolved[0]).to_dict())
    conforming = [r for r in reports if r["conformant"] is True]
    failing = [r for r in reports if r["conformant"] is False]
    return {"reports": reports, "checked": len(reports), "failing": len(failing), "passing": len(conforming)}


def compose(ws: Workspace, spec: dict) -> dict:
    """Mint universal correlation/causal statement units from a compose file."""
    from .causal_model import CausalStrength, mint_universal_causal_statement

    minted = []
    for entry in spec.get("statements", []):
        strength = CausalStrength(entry["strength"]) if entry.get("strength") else None
        unit = mint_universal_causal_statement(
            ws.store,
            ws.minter,
            Iri(entry["source_class"]),
            Iri(entry["predicate"]),
            Iri(entry["target_class"]),
            strength=strength,
            correlative=bool(entry.get("correlative", False)),
        )
        label = entry.get("source_label")
        if label:
            ws.store.add(
                Quad(Iri(entry["source_class"]), vocab.RDFS_LABEL, Literal(label), Iri("urn:eco:terms"))
            )
        minted.append(unit.id.value)
    ws.save()
    return {"units": minted}


def map_build(ws: Workspace) -> dict:
    statements = []
    for unit_id in list_units(ws):
        unit = load_unit(ws.store, unit_id)
        if not isinstance(unit, StatementUnit):
            continue
        if (
            vocab.UNIVERSAL_CAUSAL_STATEMENT_UNIT not in unit.unit_classes
            and vocab.CORRELATION_STATEMENT_UNIT not in unit.unit_classes
        ):
            continue
        try:
            statement = statement_from_unit(ws.store, unit)
        except DomainError:
            continue
        if statement.category is StatementCategory.UNIVERSAL:
            statements.append(statement)
    if not statements:
        raise UnknownUnit("store holds no universal correlation or causal statement units")
    from .causal_model import build_causal_map

    net = build_causal_map(ws.store, ws.minter, statements)
    junctions = classify_junctions(net, store=ws.store, minter=ws.minter)
    ws.save()
    payload = adjacency_json(net)
    payload["acyclic"] = check_acyclic(net)["acyclic"]
    payload["junction_count"] = len(junctions)
    return payload


def junctions(ws: Workspace, map_id: str) -> dict:
    net = _load_map(ws, map_id)
    found = classify_junctions(net)
    return {
        "map": net.id.value,
        "junctions": [
            {
                "kind": j.kind.value,
                "v1": j.v1.value,
                "v2": j.v2.value,
                "v3": j.v3.value,
                "units": [u.value for u in j.member_edges],
            }
            for j in found
        ],
    }


def _parse_context(ws: Workspace, context: Optional[dict]) -> Optional[ContextFilter]:
    if not context:
        return None
    required = tuple(
        (Iri(predicate), Literal(str(value)) if not str(value).startswith("urn:") and not str(value).startswith("http") else Iri(str(value)))
        for predicate, value in sorted(context.items())
    )
    return ContextFilter(required=required)


def perspective(
    ws: Workspace, map_id: str, cause: str, effect: str, context: Optional[dict] = None
) -> dict:
    net = _load_map(ws, map_id)
    cause_iri = ws.resolve_node(net, cause)
    effect_iri = ws.resolve_node(net, effect)
    view = extract_perspective(
        ws.store, ws.minter, net, cause_iri, effect_iri, context=_parse_context(ws, context)
    )
    ws.save()
    return {
        "map": net.id.value,
        "perspective": view.id.value,
        "kind": view.kind.value,
        "cause": cause_iri.value,
        "effect": effect_iri.value,
        "members": [m.value for m in view.member_statements],
        "paths": [
            {
                "nodes": [n.value for n in p.nodes],
                "units": [u.value for u in p.unit_ids],
                "causal": p.causal,
            }
            for p in view.paths
        ],
    }


def dsep(ws: Workspace, map_id: str, x: str, y: str, given: Iterable[str] = ()) -> dict:
    net = _load_map(ws, map_id)
    x_iri = ws.resolve_node(net, x)
    y_iri = ws.resolve_node(net, y)
    given_iris = sorted((ws.resolve_node(net, g) for g in given), key=lambda i: i.value)
    dag = to_dag(net)
    return {
        "map": net.id.value,
        "x": x_iri.value,
        "y": y_iri.value,
        "given": [g.value for g in given_iris],
        "d_separated": d_separated(dag, x_iri, y_iri, set(given_iris)),
    }


def identify(ws: Workspace, map_id: str, cause: str, effect: str) -> dict:
    net = _load_map(ws, map_id)
    cause_iri = ws.resolve_node(net, cause)
    effect_iri = ws.resolve_node(net, effect)
    dag = to_dag(net)
    estimand = identify_effect(dag, cause_iri, effect_iri, max_size=ws.config.max_adjustment_size)
    sets = backdoor_sets(dag, cause_iri, effect_iri, max_size=ws.config.max_adjustment_size)

    perspective_kind = {
        "backdoor": PerspectiveKind.BACKDOOR,
        "frontdoor": PerspectiveKind.FRONTDOOR,
        "iv": PerspectiveKind.INSTRUMENTAL_VARIABLE,
    }.get(estimand.strategy)
    perspective_id = None
    if perspective_kind is not None:
        annotations: list[tuple[Iri, object]] = [
            (vocab.ESTIMAND_TEXT, Literal(estimand.render(local_name))),
            (vocab.DERIVED_BY_DO_CALCULUS_FROM, net.id),
        ]
        for adjustment in sets:
            annotations.append(
                (vocab.ADJUSTMENT_SET, Literal(json.dumps(sorted(v.value for v in adjustment.variables))))
            )
        for mediator in sorted(estimand.mediators, key=lambda i: i.value):
            annotations.append((vocab.MEDIATOR_SET, mediator))
        for instrument in estimand.instruments:
            annotations.append((vocab.INSTRUMENT, instrument))
        perspective_id = mint_identification_perspective(
            ws.store, ws.minter, net, cause_iri, effect_iri, perspective_kind, annotations
        )
        ws.save()

    payload = estimand.to_json(local_name)
    payload.update(
        {
            "map": net.id.value,
            "cause": cause_iri.value,
            "effect": effect_iri.value,
            "adjustment_sets": [sorted(v.value for v in s.variables) for s in sets],
            "adjustment_sets_display": [sorted(local_name(v) for v in s.variables) for s in sets],
            "perspective": None if perspective_id is None else perspective_id.value,
        }
    )
    return payload


def estimate(
    ws: Workspace,
    method: str,
    scm_data: dict,
    cause: str,
    effect: str,
    given: Optional[Iterable[str]] = None,
    mediators: Optional[Iterable[str]] = None,
) -> dict:
    scm = _scm(scm_data)
    if method == "backdoor":
        if given is None:
            sets = backdoor_sets(scm.dag, cause, effect, max_size=ws.config.max_adjustment_size)
            if not sets:
                raise UnknownVariable(f"no back-door adjustment set found for {cause} -> {effect}")
            chosen = sorted(sets[0].variables)
        else:
            chosen = sorted(given)
        result = estimate_backdoor(scm, cause, effect, chosen)
        extra = {"given": list(chosen)}
    elif method == "frontdoor":
        if mediators is None:
            found = frontdoor_check_for(scm, cause, effect)
            if found is None:
                raise UnknownVariable(f"no front-door mediator set found for {cause} -> {effect}")
            chosen = sorted(found)
        else:
            chosen = sorted(mediators)
        result = estimate_frontdoor(scm, cause, effect, chosen)
        extra = {"mediators": list(chosen)}
    else:
        raise UnknownVariable(f"unknown estimation method {method!r}")
    from .causal_inference import backdoor_expression, frontdoor_expression

    expression = (
        backdoor_expression(cause, effect, chosen)
        if method == "backdoor"
        else frontdoor_expression(cause, effect, chosen)
    )
    return {
        "method": method,
        "cause": cause,
        "effect": effect,
        **extra,
        "estimand": expression.render(str),
        "distributions": {
            value: dist.to_json_map() for value, dist in result.items()
        },
    }


def mediate(
    ws: Workspace,
    scm_data: dict,
    cause: str,
    mediator: str,
    effect: str,
    baseline: str = "0",
    treated: str = "1",
) -> dict:
    scm = _scm(scm_data)
    result = mediation_effects(scm, cause, mediator, effect, baseline, treated)
    return {
        "cause": cause,
        "mediator": mediator,
        "effect": effect,
        "baseline": baseline,
        "treated": treated,
        **result.to_dict(),
    }


def whatif(
    ws: Workspace, scm_data: dict, observe: dict, do: dict, query: str
) -> dict:
    scm = _scm(scm_data)
    if not is_canonical(scm):
        scm = to_canonical_form(scm)
    observe = {str(k): str(v) for k, v in observe.items()}
    do = {str(k): str(v) for k, v in do.items()}
    dist = counterfactual(scm, CounterfactualQuery(observe, do, query))
    return {
        "observe": observe,
        "do": do,
        "query": query,
        "distribution": dist.to_json_map(),
    }


def export_unit_nanopub(ws: Workspace, unit_id: str, doi_prefix: Optional[str] = None) -> dict:
    unit = load_unit(ws.store, Iri(unit_id))
    config = ExportConfig(
        deterministic=ws.config.deterministic_ids,
        doi_prefix=doi_prefix or "urn:np:",
    )
    if isinstance(unit, CompoundUnit):
        bundle = export_nested(ws.store, unit, config)
    else:
        bundle = [export_nanopub(ws.store, unit, config)]
    return {
        "unit": unit.id.value,
        "nanopubs": [np.id.value for np in bundle],
        "nquads": nanopub_nquads(bundle),
    }


def import_nanopub_text(ws: Workspace, text: str) -> dict:
    units = import_nanopub(parse_nquads(text))
    for unit in units:
        if isinstance(unit, StatementUnit):
            ws.store.add_all(unit.content)
        ws.store.add_all(unit.meta)
    ws.save()
    return {"imported": [u.id.value for u in units]}
