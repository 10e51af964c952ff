"""Nanopublication-style FAIR Digital Object serialization.

A statement unit exports to four named graphs: a head graph listing the
other three, an assertion graph carrying the content, a provenance graph
carrying the unit's meta quads plus a derivation link back to the unit,
and a publication-info graph (timestamp, exporter version, license).
Compound units export as nested bundles: one nanopub per member plus a
nanopub with an empty assertion graph whose head additionally lists the
member nanopubs in order.
"""

from __future__ import annotations

import datetime as _dt
from dataclasses import dataclass

from . import vocab
from .errors import CyclicComposition, MalformedHead
from .quad_store import Iri, Literal, Quad, local_name, write_nquads
from .quad_store import QuadStore
from .semantic_units import (
    CompoundUnit,
    SemanticUnit,
    StatementUnit,
    load_unit,
    meta_graph_iri,
)

EXPORTER_VERSION = "semcausal/0.1.0"
_EPOCH = "1970-01-01T00:00:00+00:00"

__all__ = ["Nanopub", "ExportConfig", "export_nanopub", "export_nested", "import_nanopub", "nanopub_nquads"]


@dataclass(frozen=True)
class Nanopub:
    id: Iri
    head: frozenset[Quad]
    assertion: frozenset[Quad]
    provenance: frozenset[Quad]
    pubinfo: frozenset[Quad]

    def quads(self) -> list[Quad]:
        return [*self.head, *self.assertion, *self.provenance, *self.pubinfo]

    @property
    def assertion_graph(self) -> Iri:
        return Iri(self.id.value + "#Assertion")

    @property
    def provenance_graph(self) -> Iri:
        return Iri(self.id.value + "#Provenance")

    @property
    def pubinfo_graph(self) -> Iri:
        return Iri(self.id.value + "#Pubinfo")


@dataclass(frozen=True)
class ExportConfig:
    deterministic: bool = False
    doi_prefix: str = "urn:np:"
    license: Iri = vocab.DEFAULT_LICENSE

    def timestamp(self) -> str:
        if self.deterministic:
            return _EPOCH
        return _dt.datetime.now(_dt.timezone.utc).isoformat()


def _nanopub_id(unit_id: Iri, config: ExportConfig) -> Iri:
    return Iri(config.doi_prefix + local_name(unit_id))


def _head(np_id: Iri, members: list[Iri] = ()) -> set[Quad]:  # type: ignore[assignment]
    head_g = Iri(np_id.value + "#Head")
    quads = {
        Quad(np_id, vocab.RDF_TYPE, vocab.NP_NANOPUBLICATION, head_g),
        Quad(np_id, vocab.NP_HAS_ASSERTION, Iri(np_id.value + "#Assertion"), head_g),
        Quad(np_id, vocab.NP_HAS_PROVENANCE, Iri(np_id.value + "#Provenance"), head_g),
        Quad(np_id, vocab.NP_HAS_PUBINFO, Iri(np_id.value + "#Pubinfo"), head_g),
    }
    for index, member in enumerate(members, start=1):
        quads.add(Quad(np_id, vocab.rdf_member(index), member, head_g))
    return quads


def _pubinfo(np_id: Iri, config: ExportConfig) -> set[Quad]:
    g = Iri(np_id.value + "#Pubinfo")
    return {
        Quad(np_id, vocab.DCT_CREATED, Literal(config.timestamp(), datatype=vocab.XSD_DATETIME), g),
        Quad(np_id, vocab.EXPORTED_WITH, Literal(EXPORTER_VERSION), g),
        Quad(np_id, vocab.DCT_LICENSE, config.license, g),
    }


def _provenance(np_id: Iri, unit: SemanticUnit) -> set[Quad]:
    g = Iri(np_id.value + "#Provenance")
    quads = {Quad(Iri(np_id.value + "#Assertion"), vocab.PROV_WAS_DERIVED_FROM, unit.id, g)}
    for quad in unit.meta:
        quads.add(Quad(quad.s, quad.p, quad.o, g))
    return quads


def export_nanopub(
    store: QuadStore, unit: SemanticUnit, config: ExportConfig = ExportConfig()
) -> Nanopub:
    """Serialize one unit as a nanopublication. Compound units get an empty
    assertion graph and member nanopub references in the head."""
    np_id = _nanopub_id(unit.id, config)
    if isinstance(unit, StatementUnit):
        assertion_g = Iri(np_id.value + "#Assertion")
        assertion = {Quad(q.s, q.p, q.o, assertion_g) for q in unit.content}
        members: list[Iri] = []
    else:
        assertion = set()
        members = [_nanopub_id(m, config) for m in unit.members]
    return Nanopub(
        id=np_id,
        head=frozenset(_head(np_id, members)),
        assertion=frozenset(assertion),
        provenance=frozenset(_provenance(np_id, unit)),
        pubinfo=frozenset(_pubinfo(np_id, config)),
    )


def export_nested(
    store: QuadStore, compound: CompoundUnit, config: ExportConfig = ExportConfig()
) -> list[Nanopub]:
    """Depth-first export of a compound unit: member nanopubs first
    (recursively, deduplicated), the nested nanopub last."""
    out: list[Nanopub] = []
    exported: set[Iri] = set()

    def walk(unit: SemanticUnit, active: frozenset[Iri]) -> None:
        if unit.id in active:
            raise CyclicComposition(f"{unit.id} transitively contains itself")
        if unit.id in exported:
            return
        if isinstance(unit, CompoundUnit):
            for member in unit.members:
                walk(load_unit(store, member), active | {unit.id})
        exported.add(unit.id)
        out.append(export_nanopub(store, unit, config))

    walk(compound, frozenset())
    return out


def nanopub_nquads(nanopubs: list[Nanopub] | Nanopub) -> str:
    if isinstance(nanopubs, Nanopub):
        nanopubs = [nanopubs]
    quads: list[Quad] = []
    for np in nanopubs:
        quads.extend(np.quads())
    return write_nquads(quads)


def import_nanopub(quads: list[Quad]) -> list[SemanticUnit]:
    """Reconstruct semantic units from nanopub quads.

    The inverse of export: unit identity comes from the derivation quad in
    the provenance graph, content from the assertion graph, classes and
    member order from the re-graphed provenance quads."""
    by_graph: dict[Iri, list[Quad]] = {}
    for quad in quads:
        by_graph.setdefault(quad.g, []).append(quad)

    heads = [
        g for g in sorted(by_graph, key=lambda i: i.value)
        if any(q.p == vocab.NP_HAS_ASSERTION for q in by_graph[g])
    ]
    if not heads:
        raise MalformedHead("no head graph found in the supplied quads")

    store = QuadStore()
    unit_ids: list[Iri] = []
    for head_g in heads:
        head_quads = by_graph[head_g]
        np_ids = {q.s for q in head_quads if q.p == vocab.NP_HAS_ASSERTION}
        if len(np_ids) != 1:
            raise MalformedHead(f"head graph {head_g} must describe exactly one nanopublication")
        np_id = next(iter(np_ids))

        refs: dict[Iri, Iri] = {}
        member_nps: list[tuple[int, Iri]] = []
        for quad in head_quads:
            if quad.p in (vocab.NP_HAS_ASSERTION, vocab.NP_HAS_PROVENANCE, vocab.NP_HAS_PUBINFO):
                if not isinstance(quad.o, Iri):
                    raise MalformedHead(f"graph reference in {head_g} must be an IRI")
                refs[quad.p] = quad.o
            index = vocab.rdf_member_index(quad.p)
            if index is not None and isinstance(quad.o, Iri):
                member_nps.append((index, quad.o))
        for required in (vocab.NP_HAS_ASSERTION, vocab.NP_HAS_PROVENANCE, vocab.NP_HAS_PUBINFO):
            if required not in refs:
                raise MalformedHead(f"head graph {head_g} lacks {required}")

        provenance = by_graph.get(refs[vocab.NP_HAS_PROVENANCE], [])
        if not provenance:
            raise MalformedHead(f"provenance graph of {np_id} is missing")
        derived = [
            q.o
            for q in provenance
            if q.p == vocab.PROV_WAS_DERIVED_FROM and q.s == refs[vocab.NP_HAS_ASSERTION]
        ]
        if len(derived) != 1 or not isinstance(derived[0], Iri):
            raise MalformedHead(f"provenance graph of {np_id} lacks the unit derivation link")
        unit_id = derived[0]

        assertion = by_graph.get(refs[vocab.NP_HAS_ASSERTION], [])
        if not assertion and not member_nps:
            raise MalformedHead(
                f"nanopublication {np_id} has an empty assertion graph but lists no members"
            )
        meta_g = meta_graph_iri(unit_id)
        for quad in assertion:
            store.add(Quad(quad.s, quad.p, quad.o, unit_id))
        for quad in provenance:
            if quad.p == vocab.PROV_WAS_DERIVED_FROM and quad.s == refs[vocab.NP_HAS_ASSERTION]:
                continue
            store.add(Quad(quad.s, quad.p, quad.o, meta_g))
        unit_ids.append(unit_id)

    return [load_unit(store, unit_id) for unit_id in unit_ids]
