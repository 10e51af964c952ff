"""Built-in vocabulary: published IRIs plus locally minted terms.

Published terms (RDF/RDFS/OWL, OBO relations, nanopublication schema,
Dublin Core, PROV) keep their canonical IRIs. Properties and unit
classes that have no published identifier are minted under ``urn:su:v:``
so their local names stay human-readable.
"""

from __future__ import annotations

from .quad_store import Iri

# --- W3C core -------------------------------------------------------------

RDF_NS = "http://www.w3.org/1999/02/22-rdf-syntax-ns#"
RDF_TYPE = Iri(RDF_NS + "type")
RDFS_LABEL = Iri("http://www.w3.org/2000/01/rdf-schema#label")
RDFS_SUBCLASS_OF = Iri("http://www.w3.org/2000/01/rdf-schema#subClassOf")
OWL_NAMED_INDIVIDUAL = Iri("http://www.w3.org/2002/07/owl#NamedIndividual")
XSD_DECIMAL = Iri("http://www.w3.org/2001/XMLSchema#decimal")
XSD_DATETIME = Iri("http://www.w3.org/2001/XMLSchema#dateTime")


def rdf_member(index: int) -> Iri:
    """RDF container membership property rdf:_1, rdf:_2, ... (1-based)."""
    return Iri(f"{RDF_NS}_{index}")


def rdf_member_index(iri: Iri) -> int | None:
    if iri.value.startswith(RDF_NS + "_"):
        try:
            return int(iri.value[len(RDF_NS) + 1 :])
        except ValueError:
            return None
    return None


# --- OBO relations and annotation properties ------------------------------

_OBO = "http://purl.obolibrary.org/obo/"
CORRELATED_WITH = Iri(_OBO + "RO_0002610")
NEGATIVELY_CORRELATED_WITH = Iri(_OBO + "RO_0017004")
NEGATIVELY_REGULATES_CHARACTERISTIC = Iri(_OBO + "RO_0019002")
CAUSALLY_UPSTREAM_NEGATIVE = Iri(_OBO + "RO_0004046")
OVERLAPS = Iri(_OBO + "RO_0002131")
HAS_DISPOSITION = Iri(_OBO + "RO_0000091")
HAS_QUALITY = Iri(_OBO + "RO_0000086")
HAS_PART = Iri(_OBO + "BFO_0000051")
IS_ABOUT = Iri(_OBO + "IAO_0000136")
HAS_MEASUREMENT_VALUE = Iri(_OBO + "IAO_0000004")

# --- Nanopublication / provenance / publication metadata -------------------

NP_NANOPUBLICATION = Iri("http://www.nanopub.org/nschema#Nanopublication")
NP_HAS_ASSERTION = Iri("http://www.nanopub.org/nschema#hasAssertion")
NP_HAS_PROVENANCE = Iri("http://www.nanopub.org/nschema#hasProvenance")
NP_HAS_PUBINFO = Iri("http://www.nanopub.org/nschema#hasPublicationInfo")
PROV_WAS_DERIVED_FROM = Iri("http://www.w3.org/ns/prov#wasDerivedFrom")
DCT_CREATED = Iri("http://purl.org/dc/terms/created")
DCT_LICENSE = Iri("http://purl.org/dc/terms/license")
DEFAULT_LICENSE = Iri("https://creativecommons.org/licenses/by/4.0/")

# --- Locally minted vocabulary ---------------------------------------------

SU = "urn:su:v:"


def _su(name: str) -> Iri:
    return Iri(SU + name)


# Quantifier-kind classes for ID resources.
SOME_INSTANCE_RESOURCE = _su("SomeInstanceResource")
EVERY_INSTANCE_RESOURCE = _su("EveryInstanceResource")
MOST_INSTANCES_RESOURCE = _su("MostInstancesResource")

QUANTIFIER_CLASSES = frozenset(
    {SOME_INSTANCE_RESOURCE, EVERY_INSTANCE_RESOURCE, MOST_INSTANCES_RESOURCE}
)

# Statement unit classes.
STATEMENT_UNIT = _su("StatementUnit")
ASSERTIONAL_STATEMENT_UNIT = _su("AssertionalStatementUnit")
CONTINGENT_STATEMENT_UNIT = _su("ContingentStatementUnit")
PROTOTYPICAL_STATEMENT_UNIT = _su("PrototypicalStatementUnit")
UNIVERSAL_STATEMENT_UNIT = _su("UniversalStatementUnit")
MEASUREMENT_STATEMENT_UNIT = _su("MeasurementStatementUnit")
CLASS_AXIOM_UNIT = _su("ClassAxiomUnit")
CORRELATION_STATEMENT_UNIT = _su("CorrelationStatementUnit")
UNIVERSAL_CAUSAL_STATEMENT_UNIT = _su("UniversalCausalStatementUnit")
ASSERTIONAL_CAUSAL_STATEMENT_UNIT = _su("AssertionalCausalStatementUnit")
COUNTERFACTUAL_STATEMENT_UNIT = _su("CounterfactualStatementUnit")
NECESSARY_CAUSAL_STATEMENT_UNIT = _su("NecessaryUniversalCausalStatementUnit")
SUFFICIENT_CAUSAL_STATEMENT_UNIT = _su("SufficientUniversalCausalStatementUnit")
NECESSARY_AND_SUFFICIENT_CAUSAL_STATEMENT_UNIT = _su(
    "NecessaryAndSufficientUniversalCausalStatementUnit"
)

# Compound unit classes.
COMPOUND_UNIT = _su("CompoundUnit")
MATERIAL_ENTITY_ITEM_UNIT = _su("MaterialEntityItemUnit")
ORGANISM_DESCRIPTION_COMPOUND_UNIT = _su("OrganismDescriptionCompoundUnit")
CAUSAL_VARIABLE_COMPOUND_UNIT = _su("CausalVariableCompoundUnit")
CAUSAL_NETWORK_COMPOUND_UNIT = _su("CausalNetworkCompoundUnit")
CHAIN_JUNCTION_UNIT = _su("ChainJunctionUnit")
FORK_JUNCTION_UNIT = _su("ForkJunctionUnit")
COLLIDER_JUNCTION_UNIT = _su("ColliderJunctionUnit")
CAUSAL_PERSPECTIVE_UNIT = _su("CausalPerspectiveUnit")
CONTEXTUAL_CAUSAL_PERSPECTIVE_UNIT = _su("ContextualCausalPerspectiveUnit")
BACKDOOR_CAUSAL_PERSPECTIVE_UNIT = _su("BackDoorCausalPerspectiveUnit")
FRONTDOOR_CAUSAL_PERSPECTIVE_UNIT = _su("FrontDoorCausalPerspectiveUnit")
INSTRUMENTAL_VARIABLE_PERSPECTIVE_UNIT = _su("InstrumentalVariableCausalPerspectiveUnit")
POTENTIAL_OUTCOME_COMPOUND_UNIT = _su("PotentialOutcomeCompoundUnit")

# Properties.
HAS_ASSOCIATED_UNIT = _su("hasAssociatedUnit")
SATISFIES = _su("satisfies")
CONTRADICTS = _su("contradicts")
CLASS_AXIOM_OF = _su("classAxiomOf")
CAUSAL_INTERPRETATION_OF = _su("causalInterpretationOf")
HAS_ASSOCIATED_MEASUREMENT = _su("hasAssociatedMeasurement")
APPLIED_METHOD = _su("measuredEstimatedApplyingMethod")
DERIVED_BY_DO_CALCULUS_FROM = _su("derivedByDoCalculusFrom")
DERIVED_BY_RULE = _su("derivedByRule")
DERIVED_FROM = _su("derivedFrom")
ALTERNATIVE_TO = _su("alternativeTo")
LOGICAL_FRAMEWORK = _su("hasLogicalFramework")
HAS_SHAPE = _su("conformsToShape")
FOCUS_CAUSE = _su("focusCause")
FOCUS_EFFECT = _su("focusEffect")
CAUSAL_PATH = _su("causalPath")
BIASING_PATH = _su("biasingPath")
ADJUSTMENT_SET = _su("adjustmentSet")
MEDIATOR_SET = _su("mediatorSet")
INSTRUMENT = _su("instrument")
ESTIMAND_TEXT = _su("estimandText")
SHARED_VARIABLE = _su("sharedVariable")
SHARED_INSTANCE = _su("sharedInstanceResource")
APPLIED_INTERVENTION = _su("appliedIntervention")
EXPORTED_WITH = _su("exportedWith")
HAS_CONFIDENCE = _su("hasConfidence")
HAS_PREDICTED_DISTRIBUTION = _su("hasPredictedDistribution")
HAS_UNIT_LABEL = _su("hasMeasurementUnitLabel")

# Causal predicate minted for statements whose relation has no published IRI.
CAUSALLY_INFLUENCES_POSITIVE = _su("causallyInfluencesPositiveEffect")

# Logical-framework individuals.
DESCRIPTION_LOGICS = _su("DescriptionLogics")
FIRST_ORDER_LOGIC = _su("FirstOrderLogic")

# Entailment rule identifiers.
RULE_ASSERTIONAL_IMPLIES_CONTINGENT = _su("ruleAssertionalImpliesContingent")
RULE_PROTOTYPICAL_IMPLIES_CONTINGENT = _su("rulePrototypicalImpliesContingent")
RULE_UNIVERSAL_IMPLIES_WEAKER = _su("ruleUniversalImpliesWeaker")

# --- Registries -------------------------------------------------------------

# Kind of unit each built-in unit class may be attached to.
UNIT_CLASS_KINDS: dict[Iri, str] = {
    STATEMENT_UNIT: "statement",
    ASSERTIONAL_STATEMENT_UNIT: "statement",
    CONTINGENT_STATEMENT_UNIT: "statement",
    PROTOTYPICAL_STATEMENT_UNIT: "statement",
    UNIVERSAL_STATEMENT_UNIT: "statement",
    MEASUREMENT_STATEMENT_UNIT: "statement",
    CLASS_AXIOM_UNIT: "statement",
    CORRELATION_STATEMENT_UNIT: "statement",
    UNIVERSAL_CAUSAL_STATEMENT_UNIT: "statement",
    ASSERTIONAL_CAUSAL_STATEMENT_UNIT: "statement",
    COUNTERFACTUAL_STATEMENT_UNIT: "statement",
    NECESSARY_CAUSAL_STATEMENT_UNIT: "statement",
    SUFFICIENT_CAUSAL_STATEMENT_UNIT: "statement",
    NECESSARY_AND_SUFFICIENT_CAUSAL_STATEMENT_UNIT: "statement",
    COMPOUND_UNIT: "compound",
    MATERIAL_ENTITY_ITEM_UNIT: "compound",
    ORGANISM_DESCRIPTION_COMPOUND_UNIT: "compound",
    CAUSAL_VARIABLE_COMPOUND_UNIT: "compound",
    CAUSAL_NETWORK_COMPOUND_UNIT: "compound",
    CHAIN_JUNCTION_UNIT: "compound",
    FORK_JUNCTION_UNIT: "compound",
    COLLIDER_JUNCTION_UNIT: "compound",
    CAUSAL_PERSPECTIVE_UNIT: "compound",
    CONTEXTUAL_CAUSAL_PERSPECTIVE_UNIT: "compound",
    BACKDOOR_CAUSAL_PERSPECTIVE_UNIT: "compound",
    FRONTDOOR_CAUSAL_PERSPECTIVE_UNIT: "compound",
    INSTRUMENTAL_VARIABLE_PERSPECTIVE_UNIT: "compound",
    POTENTIAL_OUTCOME_COMPOUND_UNIT: "compound",
}

_declared_unit_classes: dict[Iri, str] = {}


def declare_unit_class(iri: Iri, kind: str) -> None:
    """Register a project-specific unit class ('statement' or 'compound')."""
    if kind not in ("statement", "compound"):
        raise ValueError(f"unknown unit-class kind {kind!r}")
    _declared_unit_classes[iri] = kind


def unit_class_kind(iri: Iri) -> str | None:
    return UNIT_CLASS_KINDS.get(iri) or _declared_unit_classes.get(iri)


# Polarity lookup for correlation/causal predicates; anything else is unsigned.
NEGATIVE_PREDICATES = frozenset(
    {
        NEGATIVELY_REGULATES_CHARACTERISTIC,
        NEGATIVELY_CORRELATED_WITH,
        CAUSALLY_UPSTREAM_NEGATIVE,
    }
)
POSITIVE_PREDICATES = frozenset({CAUSALLY_INFLUENCES_POSITIVE})

CAUSAL_PREDICATES = frozenset(
    {
        NEGATIVELY_REGULATES_CHARACTERISTIC,
        CAUSALLY_UPSTREAM_NEGATIVE,
        CAUSALLY_INFLUENCES_POSITIVE,
    }
)
CORRELATIVE_PREDICATES = frozenset({CORRELATED_WITH, NEGATIVELY_CORRELATED_WITH})

# Statement-category classes; whatever else a unit instantiates is its
# content type (measurement, correlation, causal, class-axiom, ...).
CATEGORY_UNIT_CLASSES = frozenset(
    {
        ASSERTIONAL_STATEMENT_UNIT,
        CONTINGENT_STATEMENT_UNIT,
        PROTOTYPICAL_STATEMENT_UNIT,
        UNIVERSAL_STATEMENT_UNIT,
    }
)

STRENGTH_CLASSES = {
    NECESSARY_CAUSAL_STATEMENT_UNIT: "Necessary",
    SUFFICIENT_CAUSAL_STATEMENT_UNIT: "Sufficient",
    NECESSARY_AND_SUFFICIENT_CAUSAL_STATEMENT_UNIT: "NecessaryAndSufficient",
}
