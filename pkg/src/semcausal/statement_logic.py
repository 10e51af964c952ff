"""Statement-category algebra over statement units.

Categories are read off the quantifier kinds of the primary triple's
resources. Weaker statements are derivable along the order
Universal > Prototypical > Contingent, with Assertional entailing
Contingent; deriving is purely syntactic (no statistics for
most-instances statements).
"""

from __future__ import annotations

from enum import Enum
from typing import Optional

from . import vocab
from .errors import MixedQuantifiers, SatisfactionFails, ShapeMismatch, UnclassedInstance
from .ids import IdMinter
from .quad_store import Iri, Literal, Quad, QuadStore, Term, Triple
from .semantic_units import (
    ResourceKind,
    StatementUnit,
    load_unit,
    meta_graph_iri,
    mint_statement_unit,
    primary_triple,
    quantified_resource,
    resource_kind,
    target_classes,
)

__all__ = [
    "StatementCategory",
    "categorize",
    "derive_entailed",
    "check_satisfies",
    "link_satisfies",
    "evidence_for",
]


class StatementCategory(Enum):
    ASSERTIONAL = "Assertional"
    CONTINGENT = "Contingent"
    PROTOTYPICAL = "Prototypical"
    UNIVERSAL = "Universal"


CATEGORY_CLASS = {
    StatementCategory.ASSERTIONAL: vocab.ASSERTIONAL_STATEMENT_UNIT,
    StatementCategory.CONTINGENT: vocab.CONTINGENT_STATEMENT_UNIT,
    StatementCategory.PROTOTYPICAL: vocab.PROTOTYPICAL_STATEMENT_UNIT,
    StatementCategory.UNIVERSAL: vocab.UNIVERSAL_STATEMENT_UNIT,
}
_CATEGORY_CLASSES = frozenset(CATEGORY_CLASS.values())

# Strictly decreasing quantifier strength along the entailment chain.
# Assertional statements sit outside the chain: they entail contingent
# statements but are token-level, not quantified.
CATEGORY_ORDER = {
    StatementCategory.UNIVERSAL: 3,
    StatementCategory.PROTOTYPICAL: 2,
    StatementCategory.CONTINGENT: 1,
}


def categorize(unit: StatementUnit) -> StatementCategory:
    """Statement category from the quantifier kinds on the primary triple."""
    primary = primary_triple(unit)
    if primary is None:
        raise MixedQuantifiers(f"unit {unit.id} has no primary triple to categorize")
    subject_kind = resource_kind(unit.content, primary.s)
    object_kind: Optional[ResourceKind] = (
        resource_kind(unit.content, primary.o) if isinstance(primary.o, Iri) else None
    )

    if subject_kind is ResourceKind.SOME_INSTANCE:
        return StatementCategory.CONTINGENT
    if subject_kind is ResourceKind.EVERY_INSTANCE:
        if object_kind is ResourceKind.SOME_INSTANCE:
            return StatementCategory.UNIVERSAL
        raise MixedQuantifiers(
            f"every-instance subject of {unit.id} requires a some-instance object"
        )
    if subject_kind is ResourceKind.MOST_INSTANCES:
        if object_kind is ResourceKind.SOME_INSTANCE:
            return StatementCategory.PROTOTYPICAL
        raise MixedQuantifiers(
            f"most-instances subject of {unit.id} requires a some-instance object"
        )
    if subject_kind is ResourceKind.INSTANCE:
        if object_kind in (None, ResourceKind.INSTANCE, ResourceKind.ONTOLOGY_CLASS):
            return StatementCategory.ASSERTIONAL
        raise MixedQuantifiers(
            f"instance subject of {unit.id} combined with a quantified object"
        )
    raise MixedQuantifiers(f"subject kind {subject_kind.value} matches no category")


def _swap_category_class(classes: tuple[Iri, ...], new_category: StatementCategory) -> list[Iri]:
    kept = [c for c in classes if c not in _CATEGORY_CLASSES]
    return [CATEGORY_CLASS[new_category]] + kept


def _replace_resource(triples: list[Triple], old: Iri, new: Iri) -> list[Triple]:
    def swap(term: Term) -> Term:
        return new if term == old else term

    return [
        Triple(swap(t.s), t.p, swap(t.o))  # type: ignore[arg-type]
        for t in triples
    ]


def _requantify(
    unit: StatementUnit,
    minter: IdMinter,
    replacements: dict[Iri, ResourceKind],
) -> list[Triple]:
    """Content of a quantifier twin: each resource in ``replacements`` is
    swapped for a fresh resource of the given quantifier kind over the same
    target class. Labels of replaced resources are dropped (they name the
    concrete entity, not the quantified one).
    """
    triples = [q.triple() for q in unit.content]
    for old, kind in replacements.items():
        classes = target_classes(unit.content, old)
        if not classes:
            raise UnclassedInstance(
                f"resource {old} in {unit.id} lacks a target-class assertion"
            )
        target = classes[0]
        fresh, typing = quantified_resource(minter, kind, target)
        kept: list[Triple] = []
        for t in triples:
            if t.s == old and t.p == vocab.RDF_TYPE:
                continue  # re-typed below
            if t.s == old and t.p == vocab.RDFS_LABEL:
                continue
            kept.append(t)
        triples = _replace_resource(kept, old, fresh) + typing
    return triples


def derive_entailed(
    store: QuadStore, unit: StatementUnit, minter: IdMinter
) -> list[StatementUnit]:
    """Mint the strictly weaker twins a statement entails.

    Assertional and prototypical statements yield their contingent twin;
    universal statements yield a prototypical and a contingent twin;
    contingent statements are the bottom of the chain and yield nothing.
    Each twin's meta-graph records the rule applied and the source unit.
    """
    category = categorize(unit)
    primary = primary_triple(unit)
    assert primary is not None  # categorize already guaranteed this

    plans: list[tuple[StatementCategory, dict[Iri, ResourceKind], Iri]] = []
    if category is StatementCategory.ASSERTIONAL:
        replacements = {primary.s: ResourceKind.SOME_INSTANCE}
        if isinstance(primary.o, Iri) and resource_kind(unit.content, primary.o) is ResourceKind.INSTANCE:
            replacements[primary.o] = ResourceKind.SOME_INSTANCE
        plans.append(
            (StatementCategory.CONTINGENT, replacements, vocab.RULE_ASSERTIONAL_IMPLIES_CONTINGENT)
        )
    elif category is StatementCategory.PROTOTYPICAL:
        plans.append(
            (
                StatementCategory.CONTINGENT,
                {primary.s: ResourceKind.SOME_INSTANCE},
                vocab.RULE_PROTOTYPICAL_IMPLIES_CONTINGENT,
            )
        )
    elif category is StatementCategory.UNIVERSAL:
        plans.append(
            (
                StatementCategory.PROTOTYPICAL,
                {primary.s: ResourceKind.MOST_INSTANCES},
                vocab.RULE_UNIVERSAL_IMPLIES_WEAKER,
            )
        )
        plans.append(
            (
                StatementCategory.CONTINGENT,
                {primary.s: ResourceKind.SOME_INSTANCE},
                vocab.RULE_UNIVERSAL_IMPLIES_WEAKER,
            )
        )

    derived: list[StatementUnit] = []
    for new_category, replacements, rule in plans:
        twin = mint_statement_unit(
            store,
            minter,
            _requantify(unit, minter, replacements),
            _swap_category_class(unit.unit_classes, new_category),
            meta_pairs=[(vocab.DERIVED_BY_RULE, rule), (vocab.DERIVED_FROM, unit.id)],
        )
        derived.append(twin)
    return derived


def _declared_shape(unit: StatementUnit) -> Optional[Iri]:
    for quad in unit.meta:
        if quad.p == vocab.HAS_SHAPE and isinstance(quad.o, Iri):
            return quad.o
    return None


def check_satisfies(assertional: StatementUnit, universal: StatementUnit) -> bool:
    """True iff the assertional statement instantiates the universal one:
    equal predicate, and each assertional endpoint instantiates the target
    class quantified over in the universal statement.
    """
    shape_a, shape_u = _declared_shape(assertional), _declared_shape(universal)
    if shape_a is not None and shape_u is not None and shape_a != shape_u:
        raise ShapeMismatch(f"{assertional.id} and {universal.id} follow different shapes")
    fact = primary_triple(assertional)
    rule = primary_triple(universal)
    if fact is None or rule is None:
        raise ShapeMismatch("both units need a primary triple to compare")

    if fact.p != rule.p:
        return False

    subject_classes = target_classes(universal.content, rule.s)
    if not subject_classes:
        return False
    if not set(subject_classes) & set(target_classes(assertional.content, fact.s)):
        return False

    if isinstance(rule.o, Literal):
        return isinstance(fact.o, Literal) and fact.o.datatype == rule.o.datatype
    object_classes = target_classes(universal.content, rule.o)
    if not object_classes:
        return False
    if not isinstance(fact.o, Iri):
        return False
    return bool(set(object_classes) & set(target_classes(assertional.content, fact.o)))


def link_satisfies(store: QuadStore, assertional_id: Iri, universal_id: Iri) -> None:
    """Record that an assertional unit satisfies a universal one; refuses
    the link when check_satisfies does not hold.
    """
    assertional = load_unit(store, assertional_id)
    universal = load_unit(store, universal_id)
    if not isinstance(assertional, StatementUnit) or not isinstance(universal, StatementUnit):
        raise SatisfactionFails("satisfies links connect statement units")
    if not check_satisfies(assertional, universal):
        raise SatisfactionFails(f"{assertional_id} does not satisfy {universal_id}")
    store.add(Quad(assertional_id, vocab.SATISFIES, universal_id, meta_graph_iri(assertional_id)))


def evidence_for(store: QuadStore, universal_id: Iri) -> dict[str, list[Iri]]:
    """Units linked to a universal statement as supporting or contradicting
    evidence (via satisfies and contradicts annotations respectively).
    """
    supporting = sorted(
        {q.s for q in store.match(p=vocab.SATISFIES, o=universal_id)}, key=lambda i: i.value
    )
    contradicting = sorted(
        {q.s for q in store.match(p=vocab.CONTRADICTS, o=universal_id)}, key=lambda i: i.value
    )
    return {"supporting": supporting, "contradicting": contradicting}
