"""Minting, loading, validating, and rendering semantic units.

A statement unit owns a content-graph (named by the unit id itself) and
a meta-graph (``{id}#meta``) holding its classes and annotations. A
compound unit owns no content of its own; it references member units
from its meta-graph and obtains content by merging theirs.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from enum import Enum
from typing import Iterable, Optional, Sequence, Union

from . import vocab
from .errors import (
    CyclicComposition,
    DanglingMember,
    EmptyContent,
    EmptyMembers,
    ShapeMismatch,
    UnboundHole,
    UnknownUnit,
    UnknownUnitClass,
)
from .ids import IdMinter
from .quad_store import Iri, Literal, Quad, QuadStore, Term, Triple, local_name, serialize_term

__all__ = [
    "ResourceKind",
    "StatementUnit",
    "CompoundUnit",
    "SemanticUnit",
    "Shape",
    "LabelTemplate",
    "Violation",
    "ValidationReport",
    "meta_graph_iri",
    "mint_statement_unit",
    "mint_compound_unit",
    "quantified_resource",
    "load_unit",
    "unit_exists",
    "assemble_content",
    "resource_kind",
    "target_classes",
    "primary_triple",
    "validate_shape",
    "render_dynamic_label",
    "set_dual_type",
    "annotate_method",
    "best_label",
]


class ResourceKind(Enum):
    ONTOLOGY_CLASS = "OntologyClass"
    INSTANCE = "Instance"
    SOME_INSTANCE = "SomeInstance"
    EVERY_INSTANCE = "EveryInstance"
    MOST_INSTANCES = "MostInstances"


QUANTIFIER_KIND_CLASS = {
    ResourceKind.SOME_INSTANCE: vocab.SOME_INSTANCE_RESOURCE,
    ResourceKind.EVERY_INSTANCE: vocab.EVERY_INSTANCE_RESOURCE,
    ResourceKind.MOST_INSTANCES: vocab.MOST_INSTANCES_RESOURCE,
}
_CLASS_TO_KIND = {cls: kind for kind, cls in QUANTIFIER_KIND_CLASS.items()}


@dataclass(frozen=True)
class StatementUnit:
    id: Iri
    content: frozenset[Quad]
    meta: frozenset[Quad]
    unit_classes: tuple[Iri, ...]

    @property
    def meta_graph(self) -> Iri:
        return meta_graph_iri(self.id)

    @property
    def content_type(self) -> Optional[Iri]:
        """Most specific non-category unit class (measurement, causal, ...)."""
        skip = vocab.CATEGORY_UNIT_CLASSES | {vocab.STATEMENT_UNIT}
        for cls in self.unit_classes:
            if vocab.unit_class_kind(cls) == "statement" and cls not in skip:
                return cls
        return None


@dataclass(frozen=True)
class CompoundUnit:
    id: Iri
    members: tuple[Iri, ...]
    meta: frozenset[Quad]
    unit_classes: tuple[Iri, ...]

    @property
    def meta_graph(self) -> Iri:
        return meta_graph_iri(self.id)


SemanticUnit = Union[StatementUnit, CompoundUnit]


def meta_graph_iri(unit_id: Iri) -> Iri:
    return Iri(unit_id.value + "#meta")


def canonical_triples(triples: Iterable[Triple]) -> str:
    lines = sorted(
        f"{serialize_term(t.s)} {serialize_term(t.p)} {serialize_term(t.o)}" for t in triples
    )
    return "\n".join(lines)


def _check_classes(unit_classes: Sequence[Iri], expected_kind: str) -> None:
    if not unit_classes:
        raise UnknownUnitClass("at least one unit class is required")
    for cls in unit_classes:
        kind = vocab.unit_class_kind(cls)
        if kind is None:
            raise UnknownUnitClass(f"{cls} is not a built-in or declared unit class")
        if kind != expected_kind:
            raise UnknownUnitClass(f"{cls} is a {kind}-unit class, expected {expected_kind}")


def _canonical_payload(body: str, unit_classes: Sequence[Iri]) -> str:
    classes = ",".join(sorted(c.value for c in unit_classes))
    return f"{body}\nclasses:{classes}"


def mint_statement_unit(
    store: QuadStore,
    minter: IdMinter,
    content: Iterable[Triple],
    unit_classes: Sequence[Iri],
    meta_pairs: Iterable[tuple[Iri, Term]] = (),
) -> StatementUnit:
    """Mint a statement unit: rewrite ``content`` into a fresh content-graph
    and assert the unit's classes plus ``meta_pairs`` in its meta-graph.
    """
    triples = list(content)
    if not triples:
        raise EmptyContent("statement unit content must be non-empty")
    _check_classes(unit_classes, "statement")

    unit_id = minter.unit_id(_canonical_payload(canonical_triples(triples), unit_classes))
    meta_g = meta_graph_iri(unit_id)

    for t in triples:
        store.add(Quad(t.s, t.p, t.o, unit_id))
    pairs = list(meta_pairs)
    for cls in unit_classes:
        store.add(Quad(unit_id, vocab.RDF_TYPE, cls, meta_g))
    for pred, term in pairs:
        store.add(Quad(unit_id, pred, term, meta_g))
    if not any(pred == vocab.LOGICAL_FRAMEWORK for pred, _ in pairs):
        store.add(Quad(unit_id, vocab.LOGICAL_FRAMEWORK, vocab.DESCRIPTION_LOGICS, meta_g))
    return load_unit(store, unit_id)  # type: ignore[return-value]


def mint_compound_unit(
    store: QuadStore,
    minter: IdMinter,
    members: Sequence[Iri],
    unit_classes: Sequence[Iri],
    meta_pairs: Iterable[tuple[Iri, Term]] = (),
) -> CompoundUnit:
    """Mint a compound unit whose meta-graph references ``members`` in order."""
    if not members:
        raise EmptyMembers("compound unit needs at least one member")
    _check_classes(unit_classes, "compound")
    for member in members:
        if not unit_exists(store, member):
            raise DanglingMember(f"member {member} does not resolve to a unit")

    body = "members:" + ",".join(m.value for m in members)
    unit_id = minter.unit_id(_canonical_payload(body, unit_classes))
    meta_g = meta_graph_iri(unit_id)

    for cls in unit_classes:
        store.add(Quad(unit_id, vocab.RDF_TYPE, cls, meta_g))
    for index, member in enumerate(members, start=1):
        store.add(Quad(unit_id, vocab.HAS_ASSOCIATED_UNIT, member, meta_g))
        store.add(Quad(unit_id, vocab.rdf_member(index), member, meta_g))
    for pred, term in meta_pairs:
        store.add(Quad(unit_id, pred, term, meta_g))
    return load_unit(store, unit_id)  # type: ignore[return-value]


def quantified_resource(
    minter: IdMinter, kind: ResourceKind, target_class: Iri
) -> tuple[Iri, list[Triple]]:
    """An ID resource reading 'some/every/most instance(s) of target_class',
    with the two typing triples that make the quantifier explicit.
    """
    if kind not in QUANTIFIER_KIND_CLASS:
        raise ValueError(f"{kind} is not a quantifier kind")
    resource = minter.instance_id(QUANTIFIER_KIND_CLASS[kind], target_class)
    triples = [
        Triple(resource, vocab.RDF_TYPE, target_class),
        Triple(resource, vocab.RDF_TYPE, QUANTIFIER_KIND_CLASS[kind]),
    ]
    return resource, triples


def unit_exists(store: QuadStore, unit_id: Iri) -> bool:
    return bool(store.match(g=meta_graph_iri(unit_id))) or bool(store.match(g=unit_id))


def load_unit(store: QuadStore, unit_id: Iri) -> SemanticUnit:
    """Reconstruct a unit view from its content-graph and meta-graph."""
    content = store.match(g=unit_id)
    meta = store.match(g=meta_graph_iri(unit_id))
    if not content and not meta:
        raise UnknownUnit(f"no unit with id {unit_id}")

    classes = tuple(
        sorted(
            {q.o for q in meta if q.p == vocab.RDF_TYPE and isinstance(q.o, Iri)},
            key=lambda i: i.value,
        )
    )
    if content:
        return StatementUnit(
            id=unit_id,
            content=frozenset(content),
            meta=frozenset(meta),
            unit_classes=classes,
        )

    indexed: list[tuple[int, Iri]] = []
    plain: set[Iri] = set()
    for quad in meta:
        if not isinstance(quad.o, Iri):
            continue
        index = vocab.rdf_member_index(quad.p)
        if index is not None:
            indexed.append((index, quad.o))
        elif quad.p == vocab.HAS_ASSOCIATED_UNIT:
            plain.add(quad.o)
    indexed.sort()
    members = [m for _, m in indexed]
    members.extend(sorted(plain - set(members), key=lambda i: i.value))
    return CompoundUnit(
        id=unit_id, members=tuple(members), meta=frozenset(meta), unit_classes=classes
    )


def assemble_content(store: QuadStore, unit_id: Iri, _active: frozenset[Iri] = frozenset()) -> frozenset[Quad]:
    """Semantic content of a unit: its own content-graph for a statement
    unit, or the merged contents of all members (transitively) for a
    compound unit. Raises CyclicComposition when a compound transitively
    contains itself.
    """
    if unit_id in _active:
        raise CyclicComposition(f"{unit_id} transitively contains itself")
    unit = load_unit(store, unit_id)
    if isinstance(unit, StatementUnit):
        return unit.content
    merged: set[Quad] = set()
    active = _active | {unit_id}
    for member in unit.members:
        if not unit_exists(store, member):
            raise DanglingMember(f"member {member} of {unit_id} does not resolve")
        merged |= assemble_content(store, member, active)
    return frozenset(merged)


def resource_kind(quads: Iterable[Quad], resource: Iri) -> ResourceKind:
    """Classify an ID resource from the rdf:type triples in ``quads``."""
    types = {q.o for q in quads if q.s == resource and q.p == vocab.RDF_TYPE and isinstance(q.o, Iri)}
    for cls, kind in _CLASS_TO_KIND.items():
        if cls in types:
            return kind
    if types - {vocab.OWL_NAMED_INDIVIDUAL}:
        return ResourceKind.INSTANCE
    if vocab.OWL_NAMED_INDIVIDUAL in types:
        return ResourceKind.INSTANCE
    # No typing information: treat resources that only ever classify others
    # as ontology classes, anything else as an untyped instance.
    for q in quads:
        if q.p == vocab.RDF_TYPE and q.o == resource:
            return ResourceKind.ONTOLOGY_CLASS
    return ResourceKind.INSTANCE


def target_classes(quads: Iterable[Quad], resource: Iri) -> list[Iri]:
    """Ontology classes a resource instantiates, quantifier machinery excluded."""
    skip = set(_CLASS_TO_KIND) | {vocab.OWL_NAMED_INDIVIDUAL}
    found = {
        q.o
        for q in quads
        if q.s == resource and q.p == vocab.RDF_TYPE and isinstance(q.o, Iri) and q.o not in skip
    }
    return sorted(found, key=lambda i: i.value)


_STRUCTURAL_PREDICATES = frozenset({vocab.RDF_TYPE, vocab.RDFS_LABEL})


def primary_triple(unit: StatementUnit, shape: Optional["Shape"] = None) -> Optional[Triple]:
    """The unit's distinguished primary triple.

    Candidates are the non-typing, non-label content triples (narrowed to
    the shape's predicate whitelist when a shape is given); among those,
    triples whose subject is a root of the content graph win. Deterministic.
    """
    candidates = [q.triple() for q in unit.content if q.p not in _STRUCTURAL_PREDICATES]
    if shape is not None:
        narrowed = [t for t in candidates if t.p in shape.predicate_whitelist]
        if narrowed:
            candidates = narrowed
    if not candidates:
        return None
    objects = {t.o for t in candidates if isinstance(t.o, Iri)}
    roots = [t for t in candidates if t.s not in objects]
    pool = roots or candidates
    pool.sort(key=lambda t: (serialize_term(t.s), serialize_term(t.p), serialize_term(t.o)))
    return pool[0]


# --- Shapes -----------------------------------------------------------------


@dataclass(frozen=True)
class Shape:
    """Compact structural template a statement unit's content must match.

    ``object_kind`` is a ResourceKind for resource objects or None for a
    literal object.
    """

    shape_id: Iri
    subject_kind: ResourceKind
    predicate_whitelist: frozenset[Iri]
    object_kind: Optional[ResourceKind]
    subject_class: Optional[Iri] = None
    object_class: Optional[Iri] = None
    required_meta_keys: frozenset[Iri] = frozenset()

    def __post_init__(self) -> None:
        if not self.predicate_whitelist:
            raise ValueError("predicate whitelist must be non-empty")

    def to_dict(self) -> dict:
        return {
            "shape_id": self.shape_id.value,
            "subject_kind": self.subject_kind.value,
            "subject_class": self.subject_class.value if self.subject_class else None,
            "predicate_whitelist": sorted(p.value for p in self.predicate_whitelist),
            "object_kind": self.object_kind.value if self.object_kind else "Literal",
            "object_class": self.object_class.value if self.object_class else None,
            "required_meta_keys": sorted(k.value for k in self.required_meta_keys),
        }

    @classmethod
    def from_dict(cls, data: dict) -> "Shape":
        object_kind = data.get("object_kind", "Literal")
        return cls(
            shape_id=Iri(data["shape_id"]),
            subject_kind=ResourceKind(data["subject_kind"]),
            subject_class=Iri(data["subject_class"]) if data.get("subject_class") else None,
            predicate_whitelist=frozenset(Iri(p) for p in data["predicate_whitelist"]),
            object_kind=None if object_kind == "Literal" else ResourceKind(object_kind),
            object_class=Iri(data["object_class"]) if data.get("object_class") else None,
            required_meta_keys=frozenset(Iri(k) for k in data.get("required_meta_keys", [])),
        )


@dataclass(frozen=True)
class Violation:
    constraint: str
    detail: str
    quad: Optional[Quad] = None

    def to_dict(self) -> dict:
        return {
            "constraint": self.constraint,
            "detail": self.detail,
            "quad": None
            if self.quad is None
            else f"{serialize_term(self.quad.s)} {serialize_term(self.quad.p)} "
            f"{serialize_term(self.quad.o)} {serialize_term(self.quad.g)} .",
        }


@dataclass(frozen=True)
class ValidationReport:
    unit_id: Iri
    shape_id: Iri
    violations: tuple[Violation, ...]

    @property
    def conformant(self) -> bool:
        return not self.violations

    def to_dict(self) -> dict:
        return {
            "unit": self.unit_id.value,
            "shape": self.shape_id.value,
            "conformant": self.conformant,
            "violations": [v.to_dict() for v in self.violations],
        }


def validate_shape(unit: StatementUnit, shape: Shape) -> ValidationReport:
    """Check a statement unit against a shape; violations are data, not errors."""
    violations: list[Violation] = []
    primary = primary_triple(unit, shape)
    if primary is None or primary.p not in shape.predicate_whitelist:
        violations.append(
            Violation("predicate", "no content triple uses a whitelisted predicate")
        )
        return ValidationReport(unit.id, shape.shape_id, tuple(violations))

    quad = Quad(primary.s, primary.p, primary.o, unit.id)
    subject_kind = resource_kind(unit.content, primary.s)
    if subject_kind is not shape.subject_kind:
        violations.append(
            Violation(
                "subject_kind",
                f"subject is {subject_kind.value}, expected {shape.subject_kind.value}",
                quad,
            )
        )
    if shape.subject_class is not None and shape.subject_class not in target_classes(
        unit.content, primary.s
    ):
        violations.append(
            Violation("subject_class", f"subject does not instantiate {shape.subject_class}", quad)
        )

    if shape.object_kind is None:
        if not isinstance(primary.o, Literal):
            violations.append(Violation("object_kind", "expected a literal object", quad))
    else:
        if not isinstance(primary.o, Iri):
            violations.append(
                Violation("object_kind", f"expected a {shape.object_kind.value} resource", quad)
            )
        else:
            object_kind = resource_kind(unit.content, primary.o)
            if object_kind is not shape.object_kind:
                violations.append(
                    Violation(
                        "object_kind",
                        f"object is {object_kind.value}, expected {shape.object_kind.value}",
                        quad,
                    )
                )
            if shape.object_class is not None and shape.object_class not in target_classes(
                unit.content, primary.o
            ):
                violations.append(
                    Violation(
                        "object_class", f"object does not instantiate {shape.object_class}", quad
                    )
                )

    present = {q.p for q in unit.meta}
    for key in sorted(shape.required_meta_keys, key=lambda i: i.value):
        if key not in present:
            violations.append(Violation("required_meta", f"meta-graph lacks {key}"))
    return ValidationReport(unit.id, shape.shape_id, tuple(violations))


# --- Dynamic labels ---------------------------------------------------------


@dataclass(frozen=True)
class LabelTemplate:
    """Human-readable pattern with ``{subject}``/``{predicate}``/``{object}``
    holes plus named holes bound through declared predicate paths walked
    from the primary triple's subject.
    """

    shape_id: Iri
    pattern: str
    paths: dict[str, tuple[Iri, ...]] = field(default_factory=dict)

    @classmethod
    def from_dict(cls, data: dict) -> "LabelTemplate":
        return cls(
            shape_id=Iri(data["shape_id"]),
            pattern=data["pattern"],
            paths={
                name: tuple(Iri(p) for p in steps)
                for name, steps in data.get("paths", {}).items()
            },
        )


def lookup_label(store: QuadStore, resource: Iri, extra: Iterable[Quad] = ()) -> Optional[str]:
    labels = [
        q.o.lexical
        for q in store.match(s=resource, p=vocab.RDFS_LABEL)
        if isinstance(q.o, Literal)
    ]
    labels += [
        q.o.lexical
        for q in extra
        if q.s == resource and q.p == vocab.RDFS_LABEL and isinstance(q.o, Literal)
    ]
    return min(labels) if labels else None


def best_label(store: QuadStore, resource: Iri, extra: Iterable[Quad] = ()) -> str:
    """rdfs:label of a resource, falling back to the IRI's local name."""
    return lookup_label(store, resource, extra) or local_name(resource)


def _display(store: QuadStore, unit: StatementUnit, term: Term) -> str:
    if isinstance(term, Literal):
        return term.lexical
    label = lookup_label(store, term, extra=unit.content)
    if label is not None:
        return label
    # Quantifier ID resources rarely carry labels of their own; fall back to
    # the target class they quantify over before resorting to the local name.
    for cls in target_classes(unit.content, term):
        class_label = lookup_label(store, cls)
        if class_label is not None:
            return class_label
    return local_name(term)


def _walk_path(unit: StatementUnit, start: Iri, steps: tuple[Iri, ...], hole: str) -> Term:
    current: Term = start
    for step in steps:
        if not isinstance(current, Iri):
            raise UnboundHole(f"path for {{{hole}}} hits a literal before its last step")
        values = sorted(
            (q.o for q in unit.content if q.s == current and q.p == step),
            key=serialize_term,
        )
        if not values:
            raise UnboundHole(f"path for {{{hole}}} is absent from the unit content")
        current = values[0]
    return current


def render_dynamic_label(unit: StatementUnit, template: LabelTemplate, store: QuadStore) -> str:
    """Fill the template holes from the unit's primary triple and declared paths."""
    primary = primary_triple(unit)
    if primary is None:
        raise UnboundHole("unit content has no primary triple to bind from")
    values: dict[str, str] = {}
    for hole in re.findall(r"\{([^{}]+)\}", template.pattern):
        if hole == "subject":
            values[hole] = _display(store, unit, primary.s)
        elif hole == "predicate":
            values[hole] = _display(store, unit, primary.p)
        elif hole == "object":
            values[hole] = _display(store, unit, primary.o)
        elif hole in template.paths:
            values[hole] = _display(store, unit, _walk_path(unit, primary.s, template.paths[hole], hole))
        else:
            raise UnboundHole(f"template hole {{{hole}}} has no declared path")
    out = template.pattern
    for hole, value in values.items():
        out = out.replace("{" + hole + "}", value)
    return out


# --- Meta-graph annotations ---------------------------------------------------


def set_dual_type(
    store: QuadStore, unit_id: Iri, extra_class: Iri, represents: Optional[Iri] = None
) -> None:
    """Layer an additional class onto a unit; optionally record the
    representation-referent link to the entity the unit stands in for.
    """
    if not unit_exists(store, unit_id):
        raise UnknownUnit(f"no unit with id {unit_id}")
    meta_g = meta_graph_iri(unit_id)
    store.add(Quad(unit_id, vocab.RDF_TYPE, extra_class, meta_g))
    if represents is not None:
        store.add(Quad(unit_id, vocab.IS_ABOUT, represents, meta_g))


def annotate_method(store: QuadStore, unit_id: Iri, method: Iri) -> None:
    """Record which method produced the measurement or estimate in the unit."""
    if not unit_exists(store, unit_id):
        raise UnknownUnit(f"no unit with id {unit_id}")
    store.add(Quad(unit_id, vocab.APPLIED_METHOD, method, meta_graph_iri(unit_id)))
