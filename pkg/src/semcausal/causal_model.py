"""Correlation and causal statement units, composition into causal maps,
junction classification, and focus-pair perspective extraction.

Network nodes are variable classes (exact IRI identity, no subclass
inference). Polarity is metadata carried per edge and never multiplied
along chains. Causal maps accept cyclic input; interpretation as a DAG
is gated behind check_acyclic.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from enum import Enum
from typing import Iterable, Optional, Sequence

from . import vocab
from .causal_inference import Dag
from .errors import NotComposable, UnknownUnit, UnknownVariable
from .ids import IdMinter
from .quad_store import Iri, Literal, Quad, QuadStore, Term, Triple, local_name
from .semantic_units import (
    CompoundUnit,
    ResourceKind,
    StatementUnit,
    load_unit,
    meta_graph_iri,
    mint_compound_unit,
    mint_statement_unit,
    primary_triple,
    quantified_resource,
    resource_kind,
    target_classes,
    unit_exists,
)
from .statement_logic import StatementCategory, categorize

__all__ = [
    "Polarity",
    "CausalMode",
    "CausalStrength",
    "JunctionKind",
    "PerspectiveKind",
    "CausalVariableRef",
    "CausalStatement",
    "CausalEdge",
    "CausalNetwork",
    "JunctionUnit",
    "PerspectiveUnit",
    "ContextFilter",
    "polarity_of",
    "statement_from_unit",
    "mint_universal_causal_statement",
    "composable",
    "compose_chain",
    "build_causal_map",
    "load_causal_network",
    "check_acyclic",
    "classify_junctions",
    "extract_perspective",
    "pin_annotation",
    "to_dag",
    "adjacency_json",
    "mint_identification_perspective",
]


class Polarity(Enum):
    POSITIVE = "Positive"
    NEGATIVE = "Negative"
    UNSIGNED = "Unsigned"


class CausalMode(Enum):
    CORRELATIVE = "Correlative"
    CAUSAL = "Causal"


class CausalStrength(Enum):
    NECESSARY = "Necessary"
    SUFFICIENT = "Sufficient"
    NECESSARY_AND_SUFFICIENT = "NecessaryAndSufficient"


class JunctionKind(Enum):
    CHAIN = "Chain"
    FORK = "Fork"
    COLLIDER = "Collider"


class PerspectiveKind(Enum):
    CAUSAL = "Causal"
    CONTEXTUAL = "Contextual"
    BACKDOOR = "BackDoor"
    FRONTDOOR = "FrontDoor"
    INSTRUMENTAL_VARIABLE = "InstrumentalVariable"


def polarity_of(predicate: Iri) -> Polarity:
    """Fixed predicate table; unknown predicates are unsigned."""
    if predicate in vocab.NEGATIVE_PREDICATES:
        return Polarity.NEGATIVE
    if predicate in vocab.POSITIVE_PREDICATES:
        return Polarity.POSITIVE
    return Polarity.UNSIGNED


@dataclass(frozen=True)
class CausalVariableRef:
    kind: ResourceKind
    variable_class: Iri
    unit_proxy: Optional[Iri] = None


@dataclass(frozen=True)
class CausalStatement:
    unit_id: Iri
    source: CausalVariableRef
    predicate: Iri
    target: CausalVariableRef
    mode: CausalMode
    category: StatementCategory
    strength: Optional[CausalStrength] = None

    @property
    def polarity(self) -> Polarity:
        return polarity_of(self.predicate)


@dataclass(frozen=True)
class CausalEdge:
    source: Iri
    target: Iri
    unit_id: Iri
    polarity: Polarity


@dataclass(frozen=True)
class CausalNetwork:
    id: Iri
    statements: tuple[CausalStatement, ...]
    variables: frozenset[Iri]
    edges: tuple[CausalEdge, ...]  # causal-mode statements, directed
    correlation_edges: tuple[CausalEdge, ...] = ()

    def edge_for_unit(self, unit_id: Iri) -> Optional[CausalEdge]:
        for edge in self.edges + self.correlation_edges:
            if edge.unit_id == unit_id:
                return edge
        return None


@dataclass(frozen=True)
class JunctionUnit:
    kind: JunctionKind
    v1: Iri
    v2: Iri
    v3: Iri
    member_edges: tuple[Iri, Iri]
    id: Optional[Iri] = None


@dataclass(frozen=True)
class ContextFilter:
    """Keep only statements whose meta-graph carries every required
    (predicate, value) annotation; taxon, ecosystem, or evidence-source
    predicates are typical keys."""

    required: tuple[tuple[Iri, Term], ...]

    def admits(self, store: QuadStore, unit_id: Iri) -> bool:
        meta_g = meta_graph_iri(unit_id)
        return all(
            bool(store.match(s=unit_id, p=predicate, o=value, g=meta_g))
            for predicate, value in self.required
        )


@dataclass(frozen=True)
class PathView:
    nodes: tuple[Iri, ...]
    unit_ids: tuple[Iri, ...]
    causal: bool


@dataclass(frozen=True)
class PerspectiveUnit:
    id: Iri
    kind: PerspectiveKind
    focus_cause: Iri
    focus_effect: Iri
    member_statements: tuple[Iri, ...]
    paths: tuple[PathView, ...]
    annotations: frozenset[Quad] = frozenset()


# --- Statement construction and extraction -------------------------------------


def _variable_ref(store: QuadStore, content: Iterable[Quad], resource: Iri) -> CausalVariableRef:
    kind = resource_kind(content, resource)
    classes = target_classes(content, resource)
    if not classes:
        raise UnknownVariable(f"causal endpoint {resource} instantiates no variable class")
    variable_class = classes[0]
    proxy: Optional[Iri] = None
    # A dual-typed compound unit may stand in for the variable class.
    if unit_exists(store, variable_class):
        proxy_meta = store.match(g=meta_graph_iri(variable_class))
        domain = [
            q.o
            for q in proxy_meta
            if q.p == vocab.RDF_TYPE
            and isinstance(q.o, Iri)
            and vocab.unit_class_kind(q.o) is None
            and q.o not in vocab.QUANTIFIER_CLASSES
        ]
        if domain:
            proxy = variable_class
            variable_class = sorted(domain, key=lambda i: i.value)[0]
    return CausalVariableRef(kind=kind, variable_class=variable_class, unit_proxy=proxy)


def statement_from_unit(store: QuadStore, unit: StatementUnit) -> CausalStatement:
    """Read a correlation/causal statement off a statement unit's primary triple."""
    primary = primary_triple(unit)
    if primary is None or not isinstance(primary.o, Iri):
        raise UnknownVariable(f"unit {unit.id} has no resource-to-resource primary triple")
    if primary.p in vocab.CAUSAL_PREDICATES:
        mode = CausalMode.CAUSAL
    elif primary.p in vocab.CORRELATIVE_PREDICATES:
        mode = CausalMode.CORRELATIVE
    elif vocab.UNIVERSAL_CAUSAL_STATEMENT_UNIT in unit.unit_classes or (
        vocab.ASSERTIONAL_CAUSAL_STATEMENT_UNIT in unit.unit_classes
    ):
        mode = CausalMode.CAUSAL
    elif vocab.CORRELATION_STATEMENT_UNIT in unit.unit_classes:
        mode = CausalMode.CORRELATIVE
    else:
        raise UnknownVariable(f"unit {unit.id} is neither causal nor correlative")
    strength = None
    for cls, name in vocab.STRENGTH_CLASSES.items():
        if cls in unit.unit_classes:
            strength = CausalStrength(name)
            break
    return CausalStatement(
        unit_id=unit.id,
        source=_variable_ref(store, unit.content, primary.s),
        predicate=primary.p,
        target=_variable_ref(store, unit.content, primary.o),
        mode=mode,
        category=categorize(unit),
        strength=strength,
    )


def mint_universal_causal_statement(
    store: QuadStore,
    minter: IdMinter,
    source_class: Iri,
    predicate: Iri,
    target_class: Iri,
    strength: Optional[CausalStrength] = None,
    correlative: bool = False,
    meta_pairs: Iterable[tuple[Iri, Term]] = (),
) -> StatementUnit:
    """Mint 'every instance of source_class <predicate> some instance of
    target_class' as a universal correlation or causal statement unit."""
    source, source_typing = quantified_resource(minter, ResourceKind.EVERY_INSTANCE, source_class)
    target, target_typing = quantified_resource(minter, ResourceKind.SOME_INSTANCE, target_class)
    from .shapes import CORRELATION_SHAPE, UNIVERSAL_CAUSAL_SHAPE

    content = source_typing + target_typing + [Triple(source, predicate, target)]
    classes = [vocab.UNIVERSAL_STATEMENT_UNIT]
    if correlative:
        classes.append(vocab.CORRELATION_STATEMENT_UNIT)
        shape_id = CORRELATION_SHAPE.shape_id
    else:
        classes.append(vocab.UNIVERSAL_CAUSAL_STATEMENT_UNIT)
        shape_id = UNIVERSAL_CAUSAL_SHAPE.shape_id
    if strength is not None:
        strength_class = {
            CausalStrength.NECESSARY: vocab.NECESSARY_CAUSAL_STATEMENT_UNIT,
            CausalStrength.SUFFICIENT: vocab.SUFFICIENT_CAUSAL_STATEMENT_UNIT,
            CausalStrength.NECESSARY_AND_SUFFICIENT: vocab.NECESSARY_AND_SUFFICIENT_CAUSAL_STATEMENT_UNIT,
        }[strength]
        classes.append(strength_class)
    pairs = [(vocab.HAS_SHAPE, shape_id)] + list(meta_pairs)
    return mint_statement_unit(store, minter, content, classes, meta_pairs=pairs)


# --- Composition -----------------------------------------------------------------


def composable(first: CausalStatement, second: CausalStatement) -> bool:
    """Whether ``second`` can be chained after ``first``: both universal,
    same mode, the connecting variable classes identical, and a
    some-instance target only composes with an every-instance source."""
    if first.category is not StatementCategory.UNIVERSAL:
        return False
    if second.category is not StatementCategory.UNIVERSAL:
        return False
    if first.mode is not second.mode:
        return False
    first_class = first.target.unit_proxy or first.target.variable_class
    second_class = second.source.unit_proxy or second.source.variable_class
    if first_class != second_class and first.target.variable_class != second.source.variable_class:
        return False
    if first.target.kind is ResourceKind.SOME_INSTANCE:
        return second.source.kind is ResourceKind.EVERY_INSTANCE
    return True


def _edges_of(statements: Iterable[CausalStatement], mode: CausalMode) -> tuple[CausalEdge, ...]:
    edges = [
        CausalEdge(
            source=s.source.variable_class,
            target=s.target.variable_class,
            unit_id=s.unit_id,
            polarity=s.polarity,
        )
        for s in statements
        if s.mode is mode
    ]
    edges.sort(key=lambda e: (e.source.value, e.target.value, e.unit_id.value))
    return tuple(edges)


def _mint_network(
    store: QuadStore,
    minter: IdMinter,
    statements: Sequence[CausalStatement],
    meta_pairs: Iterable[tuple[Iri, Term]] = (),
) -> CausalNetwork:
    unit = mint_compound_unit(
        store,
        minter,
        [s.unit_id for s in statements],
        [vocab.CAUSAL_NETWORK_COMPOUND_UNIT],
        meta_pairs=meta_pairs,
    )
    variables = frozenset(
        v for s in statements for v in (s.source.variable_class, s.target.variable_class)
    )
    return CausalNetwork(
        id=unit.id,
        statements=tuple(statements),
        variables=variables,
        edges=_edges_of(statements, CausalMode.CAUSAL),
        correlation_edges=_edges_of(statements, CausalMode.CORRELATIVE),
    )


def compose_chain(
    store: QuadStore, minter: IdMinter, first: CausalStatement, second: CausalStatement
) -> CausalNetwork:
    """Chain two universal statements into a three-node network; the shared
    middle node carries over the some-instance resource of the first
    statement's target."""
    if not composable(first, second):
        raise NotComposable(
            f"{first.unit_id} and {second.unit_id} do not satisfy the combination rules"
        )
    meta_pairs: list[tuple[Iri, Term]] = [
        (vocab.SHARED_VARIABLE, first.target.variable_class)
    ]
    if unit_exists(store, first.unit_id):
        unit = load_unit(store, first.unit_id)
        if isinstance(unit, StatementUnit):
            primary = primary_triple(unit)
            if primary is not None and isinstance(primary.o, Iri):
                meta_pairs.append((vocab.SHARED_INSTANCE, primary.o))
    return _mint_network(store, minter, [first, second], meta_pairs=meta_pairs)


def build_causal_map(
    store: QuadStore, minter: IdMinter, statements: Sequence[CausalStatement]
) -> CausalNetwork:
    """Merge universal statements into one network, nodes keyed by variable
    class. Correlative statements ride along as a parallel layer; when a
    causal statement refines a correlation over the same ordered class
    pair, the refinement link is recorded in the causal unit's meta-graph.
    """
    unique: list[CausalStatement] = []
    seen: set[Iri] = set()
    for statement in statements:
        if statement.unit_id in seen:
            continue
        seen.add(statement.unit_id)
        unique.append(statement)
    network = _mint_network(store, minter, unique)
    correlations = {
        (s.source.variable_class, s.target.variable_class): s.unit_id
        for s in unique
        if s.mode is CausalMode.CORRELATIVE
    }
    for statement in unique:
        if statement.mode is not CausalMode.CAUSAL:
            continue
        match = correlations.get(
            (statement.source.variable_class, statement.target.variable_class)
        )
        if match is not None:
            store.add(
                Quad(
                    statement.unit_id,
                    vocab.CAUSAL_INTERPRETATION_OF,
                    match,
                    meta_graph_iri(statement.unit_id),
                )
            )
    return network


def load_causal_network(store: QuadStore, map_id: Iri) -> CausalNetwork:
    """Rebuild the in-memory network view from a persisted network unit."""
    unit = load_unit(store, map_id)
    if not isinstance(unit, CompoundUnit) or vocab.CAUSAL_NETWORK_COMPOUND_UNIT not in unit.unit_classes:
        raise UnknownUnit(f"{map_id} is not a causal network unit")
    statements = []
    for member in unit.members:
        member_unit = load_unit(store, member)
        if isinstance(member_unit, StatementUnit):
            statements.append(statement_from_unit(store, member_unit))
    variables = frozenset(
        v for s in statements for v in (s.source.variable_class, s.target.variable_class)
    )
    return CausalNetwork(
        id=map_id,
        statements=tuple(statements),
        variables=variables,
        edges=_edges_of(statements, CausalMode.CAUSAL),
        correlation_edges=_edges_of(statements, CausalMode.CORRELATIVE),
    )


# --- Graph structure ----------------------------------------------------------------


def check_acyclic(net: CausalNetwork) -> dict:
    """Cycle detection over the directed causal edges; returns a witness
    cycle (as a closed node list) when one exists."""
    children: dict[Iri, list[Iri]] = {}
    for edge in net.edges:
        children.setdefault(edge.source, []).append(edge.target)
    for targets in children.values():
        targets.sort(key=lambda i: i.value)

    state: dict[Iri, int] = {}
    stack_trail: list[Iri] = []

    def visit(node: Iri) -> Optional[list[Iri]]:
        state[node] = 1
        stack_trail.append(node)
        for child in children.get(node, ()):  # noqa: B007
            mark = state.get(child)
            if mark == 1:
                cycle = stack_trail[stack_trail.index(child) :] + [child]
                return cycle
            if mark is None:
                found = visit(child)
                if found is not None:
                    return found
        stack_trail.pop()
        state[node] = 2
        return None

    for node in sorted(net.variables, key=lambda i: i.value):
        if node not in state:
            witness = visit(node)
            if witness is not None:
                return {"acyclic": False, "cycle": witness}
    return {"acyclic": True, "cycle": None}


def to_dag(net: CausalNetwork, latent: Iterable[Iri] = ()) -> Dag:
    """Directed acyclic view over variable classes (causal edges only)."""
    return Dag.from_edges(
        [(e.source, e.target) for e in net.edges], nodes=net.variables, latent=latent
    )


def classify_junctions(
    net: CausalNetwork, store: Optional[QuadStore] = None, minter: Optional[IdMinter] = None
) -> list[JunctionUnit]:
    """One junction per unordered pair of causal edges sharing exactly one
    variable: chain, fork, or collider by arrow orientation at the shared
    node. When a store and minter are given, each junction is persisted as
    a compound unit over its two member statements."""
    junctions: list[JunctionUnit] = []
    edges = net.edges
    for i in range(len(edges)):
        for j in range(i + 1, len(edges)):
            a, b = edges[i], edges[j]
            shared = {a.source, a.target} & {b.source, b.target}
            if len(shared) != 1:
                continue
            middle = next(iter(shared))
            if a.target == middle and b.source == middle:
                kind, v1, v3 = JunctionKind.CHAIN, a.source, b.target
            elif b.target == middle and a.source == middle:
                kind, v1, v3 = JunctionKind.CHAIN, b.source, a.target
            elif a.source == middle and b.source == middle:
                kind = JunctionKind.FORK
                v1, v3 = sorted((a.target, b.target), key=lambda x: x.value)
            else:
                kind = JunctionKind.COLLIDER
                v1, v3 = sorted((a.source, b.source), key=lambda x: x.value)
            members = tuple(sorted((a.unit_id, b.unit_id), key=lambda x: x.value))
            junctions.append(JunctionUnit(kind=kind, v1=v1, v2=middle, v3=v3, member_edges=members))
    junctions.sort(key=lambda j: (j.kind.value, j.v1.value, j.v2.value, j.v3.value))

    if store is not None and minter is not None:
        junction_class = {
            JunctionKind.CHAIN: vocab.CHAIN_JUNCTION_UNIT,
            JunctionKind.FORK: vocab.FORK_JUNCTION_UNIT,
            JunctionKind.COLLIDER: vocab.COLLIDER_JUNCTION_UNIT,
        }
        persisted = []
        for junction in junctions:
            unit = mint_compound_unit(
                store,
                minter,
                list(junction.member_edges),
                [junction_class[junction.kind]],
                meta_pairs=[(vocab.SHARED_VARIABLE, junction.v2)],
            )
            persisted.append(
                JunctionUnit(
                    kind=junction.kind,
                    v1=junction.v1,
                    v2=junction.v2,
                    v3=junction.v3,
                    member_edges=junction.member_edges,
                    id=unit.id,
                )
            )
        return persisted
    return junctions


# --- Perspectives -----------------------------------------------------------------


def _connecting_paths(net: CausalNetwork, cause: Iri, effect: Iri) -> list[PathView]:
    adjacency: dict[Iri, list[tuple[Iri, CausalEdge, bool]]] = {}
    for edge in net.edges:
        adjacency.setdefault(edge.source, []).append((edge.target, edge, True))
        adjacency.setdefault(edge.target, []).append((edge.source, edge, False))
    for steps in adjacency.values():
        steps.sort(key=lambda s: (s[0].value, s[1].unit_id.value, s[2]))

    paths: list[PathView] = []

    def walk(node: Iri, trail: list[Iri], units: list[Iri], forward: list[bool]) -> None:
        for nxt, edge, fwd in adjacency.get(node, ()):  # noqa: B007
            if nxt in trail:
                continue
            if nxt == effect:
                paths.append(
                    PathView(
                        nodes=tuple(trail + [nxt]),
                        unit_ids=tuple(units + [edge.unit_id]),
                        causal=all(forward + [fwd]),
                    )
                )
                continue
            trail.append(nxt)
            units.append(edge.unit_id)
            forward.append(fwd)
            walk(nxt, trail, units, forward)
            trail.pop()
            units.pop()
            forward.pop()

    walk(cause, [cause], [], [])
    paths.sort(key=lambda p: tuple(n.value for n in p.nodes))
    return paths


def extract_perspective(
    store: QuadStore,
    minter: IdMinter,
    net: CausalNetwork,
    cause: Iri,
    effect: Iri,
    context: Optional[ContextFilter] = None,
) -> PerspectiveUnit:
    """Focus-pair subnetwork: every statement on any simple path between
    cause and effect, each path tagged causal (all edges forward) or
    biasing. A context filter drops statements lacking the required
    annotations and retags the perspective as contextual."""
    if cause not in net.variables:
        raise UnknownVariable(f"{cause} is not a variable of this map")
    if effect not in net.variables:
        raise UnknownVariable(f"{effect} is not a variable of this map")
    paths = _connecting_paths(net, cause, effect)
    kind = PerspectiveKind.CAUSAL
    if context is not None:
        kind = PerspectiveKind.CONTEXTUAL
        kept_paths = []
        for path in paths:
            units = [u for u in path.unit_ids if context.admits(store, u)]
            if len(units) == len(path.unit_ids):
                kept_paths.append(path)
        paths = kept_paths
    members = tuple(sorted({u for p in paths for u in p.unit_ids}, key=lambda i: i.value))

    unit_class = (
        vocab.CONTEXTUAL_CAUSAL_PERSPECTIVE_UNIT
        if kind is PerspectiveKind.CONTEXTUAL
        else vocab.CAUSAL_PERSPECTIVE_UNIT
    )
    meta_pairs: list[tuple[Iri, Term]] = [
        (vocab.FOCUS_CAUSE, cause),
        (vocab.FOCUS_EFFECT, effect),
    ]
    for path in paths:
        payload = json.dumps([n.value for n in path.nodes])
        meta_pairs.append((vocab.CAUSAL_PATH if path.causal else vocab.BIASING_PATH, Literal(payload)))
    if members:
        unit = mint_compound_unit(store, minter, list(members), [unit_class], meta_pairs=meta_pairs)
        unit_id = unit.id
        annotations = unit.meta
    else:
        # Degenerate perspective with no connecting statements: nothing to
        # reference, so the view is returned without a persisted unit.
        unit_id = minter.unit_id(f"perspective:{cause.value}|{effect.value}:empty")
        annotations = frozenset()
    return PerspectiveUnit(
        id=unit_id,
        kind=kind,
        focus_cause=cause,
        focus_effect=effect,
        member_statements=members,
        paths=tuple(paths),
        annotations=annotations,
    )


def mint_identification_perspective(
    store: QuadStore,
    minter: IdMinter,
    net: CausalNetwork,
    cause: Iri,
    effect: Iri,
    kind: PerspectiveKind,
    annotations: Iterable[tuple[Iri, Term]] = (),
) -> Optional[Iri]:
    """Persist a back-door / front-door / instrumental-variable perspective
    unit over the focus pair, annotated with the identification artifacts
    (adjustment sets, mediators, instruments, estimand text)."""
    base = extract_perspective(store, minter, net, cause, effect)
    if not base.member_statements:
        return None
    unit_class = {
        PerspectiveKind.BACKDOOR: vocab.BACKDOOR_CAUSAL_PERSPECTIVE_UNIT,
        PerspectiveKind.FRONTDOOR: vocab.FRONTDOOR_CAUSAL_PERSPECTIVE_UNIT,
        PerspectiveKind.INSTRUMENTAL_VARIABLE: vocab.INSTRUMENTAL_VARIABLE_PERSPECTIVE_UNIT,
        PerspectiveKind.CAUSAL: vocab.CAUSAL_PERSPECTIVE_UNIT,
        PerspectiveKind.CONTEXTUAL: vocab.CONTEXTUAL_CAUSAL_PERSPECTIVE_UNIT,
    }[kind]
    meta_pairs: list[tuple[Iri, Term]] = [
        (vocab.FOCUS_CAUSE, cause),
        (vocab.FOCUS_EFFECT, effect),
    ]
    meta_pairs.extend(annotations)
    unit = mint_compound_unit(
        store, minter, list(base.member_statements), [unit_class], meta_pairs=meta_pairs
    )
    return unit.id


def pin_annotation(store: QuadStore, unit_id: Iri, predicate: Iri, value: Term) -> None:
    """Attach an annotation quad (evidence link, DOI, qualifier) to a unit's
    meta-graph; idempotent under set semantics."""
    if not unit_exists(store, unit_id):
        raise UnknownUnit(f"no unit with id {unit_id}")
    store.add(Quad(unit_id, predicate, value, meta_graph_iri(unit_id)))


def adjacency_json(net: CausalNetwork) -> dict:
    """Adjacency export consumed by the UI and the SCM binding."""
    return {
        "id": net.id.value,
        "nodes": sorted(v.value for v in net.variables),
        "edges": [
            {
                "src": e.source.value,
                "dst": e.target.value,
                "unit": e.unit_id.value,
                "polarity": e.polarity.value,
            }
            for e in net.edges
        ],
        "correlations": [
            {
                "src": e.source.value,
                "dst": e.target.value,
                "unit": e.unit_id.value,
                "polarity": e.polarity.value,
            }
            for e in net.correlation_edges
        ],
    }
