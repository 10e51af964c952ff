"""Worked invasion-ecology fixture content.

Builders for the demo knowledge graph used by tests, the CLI fixtures,
and the explorer UI: four universal causal statements over invasion
variables composed into a causal map, wetland-overlap statement units in
every category, a soil-density measurement unit with compound grouping,
and a handful of small SCM definitions.
"""

from __future__ import annotations

from . import vocab
from .causal_model import (
    CausalStrength,
    build_causal_map,
    classify_junctions,
    mint_universal_causal_statement,
    statement_from_unit,
)
from .ids import IdMinter
from .quad_store import Iri, Literal, Quad, QuadStore, Triple
from .semantic_units import (
    ResourceKind,
    mint_compound_unit,
    mint_statement_unit,
    quantified_resource,
)
from .shapes import (
    BUILTIN_SHAPES,
    CAUSAL_TEMPLATE,
    CORRELATION_SHAPE,
    MEASUREMENT_SHAPE,
    MEASUREMENT_TEMPLATE,
    UNIVERSAL_CAUSAL_SHAPE,
)

# Domain vocabulary for the invasion scenario.
ECO = "urn:eco:"
NICHE_DIFFERENTIATION = Iri(ECO + "nicheDifferentiation")
COMPETITIVE_SUPPRESSION = Iri(ECO + "competitiveSuppression")
HABITAT_FIT = Iri(ECO + "habitatFit")
INVASION_SUCCESS = Iri(ECO + "invasionSuccess")

WETLAND_AREA = Iri("http://purl.obolibrary.org/obo/ENVO_00000043")
WETLAND_ECOSYSTEM = Iri("http://purl.obolibrary.org/obo/ENVO_01001209")
TEMPERATE_ECOSYSTEM = Iri("http://purl.obolibrary.org/obo/ENVO_01001931")
SOIL_SAMPLE = Iri(ECO + "soilSample")
MASS_DENSITY = Iri("http://purl.obolibrary.org/obo/PATO_0001019")
PIONEER_SPECIES = Iri(ECO + "pioneerSpecies")
FAST_GROWTH_RATE = Iri(ECO + "fastGrowthRate")
PH_VALUE = Iri(ECO + "phValue")
ORGANIC_CARBON = Iri(ECO + "organicCarbonContent")

AWMPD_METHOD = Iri(ECO + "abundanceWeightedMeanPhylogeneticDistance")
NTD_METHOD = Iri(ECO + "nearestTaxonDistance")

TERMS_GRAPH = Iri(ECO + "terms")

_LABELS = {
    NICHE_DIFFERENTIATION: "niche differentiation between non-native and native species",
    COMPETITIVE_SUPPRESSION: "competitive suppression of resident species on non-native species",
    HABITAT_FIT: "non-native species fit to the habitat",
    INVASION_SUCCESS: "invasion success",
    WETLAND_AREA: "wetland area",
    WETLAND_ECOSYSTEM: "wetland ecosystem",
    TEMPERATE_ECOSYSTEM: "temperate ecosystem",
    SOIL_SAMPLE: "soil sample",
    MASS_DENSITY: "mass density",
    PIONEER_SPECIES: "pioneer species",
    FAST_GROWTH_RATE: "fast growth rate",
    vocab.NEGATIVELY_REGULATES_CHARACTERISTIC: "negatively regulates characteristic",
    vocab.CAUSALLY_UPSTREAM_NEGATIVE: "causally upstream of or within, negative effect",
    vocab.CAUSALLY_INFLUENCES_POSITIVE: "causally influences, positive effect",
    vocab.CORRELATED_WITH: "correlated with",
    vocab.NEGATIVELY_CORRELATED_WITH: "negatively correlated with",
    vocab.OVERLAPS: "overlaps",
    vocab.HAS_DISPOSITION: "has disposition",
}


def add_term_labels(store: QuadStore) -> None:
    for iri, label in _LABELS.items():
        store.add(Quad(iri, vocab.RDFS_LABEL, Literal(label), TERMS_GRAPH))


def build_invasion_map(store: QuadStore, minter: IdMinter) -> dict:
    """Four universal causal statements composed into the demo causal map:

    upstream      niche differentiation -> competitive suppression (negative)
    suppression   competitive suppression -> invasion success (negative)
    fit           habitat fit -> invasion success (positive)
    downstream    niche differentiation -> habitat fit (negative)

    Junction units are classified and persisted alongside the network unit.
    """
    add_term_labels(store)
    suppression = mint_universal_causal_statement(
        store, minter, COMPETITIVE_SUPPRESSION, vocab.NEGATIVELY_REGULATES_CHARACTERISTIC, INVASION_SUCCESS
    )
    upstream = mint_universal_causal_statement(
        store, minter, NICHE_DIFFERENTIATION, vocab.CAUSALLY_UPSTREAM_NEGATIVE, COMPETITIVE_SUPPRESSION
    )
    fit = mint_universal_causal_statement(
        store, minter, HABITAT_FIT, vocab.CAUSALLY_INFLUENCES_POSITIVE, INVASION_SUCCESS
    )
    downstream = mint_universal_causal_statement(
        store, minter, NICHE_DIFFERENTIATION, vocab.NEGATIVELY_REGULATES_CHARACTERISTIC, HABITAT_FIT
    )
    units = {
        "suppression": suppression,
        "upstream": upstream,
        "fit": fit,
        "downstream": downstream,
    }
    statements = {k: statement_from_unit(store, u) for k, u in units.items()}
    network = build_causal_map(
        store, minter, [statements[k] for k in ("suppression", "upstream", "fit", "downstream")]
    )
    junctions = classify_junctions(network, store=store, minter=minter)
    return {
        "units": units,
        "statements": statements,
        "network": network,
        "junctions": junctions,
        "variables": {
            "nicheDifferentiation": NICHE_DIFFERENTIATION,
            "competitiveSuppression": COMPETITIVE_SUPPRESSION,
            "habitatFit": HABITAT_FIT,
            "invasionSuccess": INVASION_SUCCESS,
        },
    }


def build_wetland_units(store: QuadStore, minter: IdMinter) -> dict:
    """Wetland-overlap statements in all four categories plus the universal
    correlation over the invasion focus pair."""
    add_term_labels(store)

    every_wa, every_wa_typing = quantified_resource(minter, ResourceKind.EVERY_INSTANCE, WETLAND_AREA)
    some_we, some_we_typing = quantified_resource(minter, ResourceKind.SOME_INSTANCE, WETLAND_ECOSYSTEM)
    universal = mint_statement_unit(
        store,
        minter,
        every_wa_typing + some_we_typing + [Triple(every_wa, vocab.OVERLAPS, some_we)],
        [vocab.UNIVERSAL_STATEMENT_UNIT, vocab.CLASS_AXIOM_UNIT],
        meta_pairs=[(vocab.CLASS_AXIOM_OF, WETLAND_AREA)],
    )

    wa_123 = Iri(ECO + "wetlandArea_123")
    we_456 = Iri(ECO + "wetlandEcosystem_456")
    assertional = mint_statement_unit(
        store,
        minter,
        [
            Triple(wa_123, vocab.RDF_TYPE, WETLAND_AREA),
            Triple(we_456, vocab.RDF_TYPE, WETLAND_ECOSYSTEM),
            Triple(wa_123, vocab.OVERLAPS, we_456),
        ],
        [vocab.ASSERTIONAL_STATEMENT_UNIT],
    )

    some_wa, some_wa_typing = quantified_resource(minter, ResourceKind.SOME_INSTANCE, WETLAND_AREA)
    some_te, some_te_typing = quantified_resource(minter, ResourceKind.SOME_INSTANCE, TEMPERATE_ECOSYSTEM)
    contingent = mint_statement_unit(
        store,
        minter,
        some_wa_typing + some_te_typing + [Triple(some_wa, vocab.OVERLAPS, some_te)],
        [vocab.CONTINGENT_STATEMENT_UNIT],
    )

    most_ps, most_ps_typing = quantified_resource(minter, ResourceKind.MOST_INSTANCES, PIONEER_SPECIES)
    some_g, some_g_typing = quantified_resource(minter, ResourceKind.SOME_INSTANCE, FAST_GROWTH_RATE)
    prototypical = mint_statement_unit(
        store,
        minter,
        most_ps_typing + some_g_typing + [Triple(most_ps, vocab.HAS_DISPOSITION, some_g)],
        [vocab.PROTOTYPICAL_STATEMENT_UNIT],
    )

    correlation = mint_universal_causal_statement(
        store,
        minter,
        COMPETITIVE_SUPPRESSION,
        vocab.NEGATIVELY_CORRELATED_WITH,
        INVASION_SUCCESS,
        correlative=True,
    )
    return {
        "universal": universal,
        "assertional": assertional,
        "contingent": contingent,
        "prototypical": prototypical,
        "correlation": correlation,
    }


def build_assertional_causal_unit(store: QuadStore, minter: IdMinter) -> dict:
    """A concrete observation satisfying the suppression hypothesis: one
    observed suppression process negatively regulating one observed
    invasion success."""
    process = Iri(ECO + "suppressionProcess_42")
    outcome = Iri(ECO + "invasionSuccess_42")
    unit = mint_statement_unit(
        store,
        minter,
        [
            Triple(process, vocab.RDF_TYPE, COMPETITIVE_SUPPRESSION),
            Triple(outcome, vocab.RDF_TYPE, INVASION_SUCCESS),
            Triple(process, vocab.NEGATIVELY_REGULATES_CHARACTERISTIC, outcome),
        ],
        [vocab.ASSERTIONAL_STATEMENT_UNIT, vocab.ASSERTIONAL_CAUSAL_STATEMENT_UNIT],
    )
    return {"unit": unit, "process": process, "outcome": outcome}


SOIL_SAMPLE_X = Iri(ECO + "soilSample_X")


def build_measurement_unit(store: QuadStore, minter: IdMinter, sample: Iri = SOIL_SAMPLE_X, value: str = "0.57") -> dict:
    """Soil density measurement as a five-quad statement unit."""
    density = Iri(sample.value + "_massDensity")
    unit = mint_statement_unit(
        store,
        minter,
        [
            Triple(sample, vocab.RDF_TYPE, SOIL_SAMPLE),
            Triple(sample, vocab.HAS_QUALITY, density),
            Triple(density, vocab.RDF_TYPE, MASS_DENSITY),
            Triple(density, vocab.HAS_MEASUREMENT_VALUE, Literal(value, datatype=vocab.XSD_DECIMAL)),
            Triple(density, vocab.HAS_UNIT_LABEL, Literal("g/cm³")),
        ],
        [vocab.MEASUREMENT_STATEMENT_UNIT, vocab.ASSERTIONAL_STATEMENT_UNIT],
        meta_pairs=[(vocab.HAS_SHAPE, MEASUREMENT_SHAPE.shape_id)],
    )
    store.add(Quad(sample, vocab.RDFS_LABEL, Literal("soil sample X"), TERMS_GRAPH))
    return {"unit": unit, "sample": sample, "density": density}


def build_soil_compound(store: QuadStore, minter: IdMinter) -> dict:
    """Three measurement units about the same soil sample grouped into a
    material-entity item unit."""
    density = build_measurement_unit(store, minter)
    sample = density["sample"]

    ph = Iri(sample.value + "_ph")
    ph_unit = mint_statement_unit(
        store,
        minter,
        [
            Triple(sample, vocab.RDF_TYPE, SOIL_SAMPLE),
            Triple(sample, vocab.HAS_QUALITY, ph),
            Triple(ph, vocab.RDF_TYPE, PH_VALUE),
            Triple(ph, vocab.HAS_MEASUREMENT_VALUE, Literal("6.8", datatype=vocab.XSD_DECIMAL)),
        ],
        [vocab.MEASUREMENT_STATEMENT_UNIT, vocab.ASSERTIONAL_STATEMENT_UNIT],
    )
    carbon = Iri(sample.value + "_organicCarbon")
    carbon_unit = mint_statement_unit(
        store,
        minter,
        [
            Triple(sample, vocab.RDF_TYPE, SOIL_SAMPLE),
            Triple(sample, vocab.HAS_QUALITY, carbon),
            Triple(carbon, vocab.RDF_TYPE, ORGANIC_CARBON),
            Triple(carbon, vocab.HAS_MEASUREMENT_VALUE, Literal("2.1", datatype=vocab.XSD_DECIMAL)),
        ],
        [vocab.MEASUREMENT_STATEMENT_UNIT, vocab.ASSERTIONAL_STATEMENT_UNIT],
    )
    compound = mint_compound_unit(
        store,
        minter,
        [density["unit"].id, ph_unit.id, carbon_unit.id],
        [vocab.MATERIAL_ENTITY_ITEM_UNIT],
    )
    return {
        "compound": compound,
        "members": [density["unit"], ph_unit, carbon_unit],
        "sample": sample,
    }


# Built-in shapes re-exported for fixture users.
ALL_SHAPES = BUILTIN_SHAPES


# --- SCM fixtures -----------------------------------------------------------------


def copy_scm() -> dict:
    """X is a fair coin, Y copies X deterministically; canonical form."""
    return {
        "variables": [
            {"name": "X", "domain": ["0", "1"], "parents": [], "table": {"": [0.5, 0.5]}},
            {
                "name": "Y",
                "domain": ["0", "1"],
                "parents": ["X"],
                "table": {"0": [1.0, 0.0], "1": [0.0, 1.0]},
            },
        ],
        "latent": [],
        "binding": {},
    }


def confounded_scm() -> dict:
    """Z confounds X -> Y strongly enough that P(Y|do(X)) != P(Y|X)."""
    return {
        "variables": [
            {"name": "Z", "domain": ["0", "1"], "parents": [], "table": {"": [0.75, 0.25]}},
            {
                "name": "X",
                "domain": ["0", "1"],
                "parents": ["Z"],
                "table": {"0": [0.875, 0.125], "1": [0.125, 0.875]},
            },
            {
                "name": "Y",
                "domain": ["0", "1"],
                "parents": ["Z", "X"],
                "table": {
                    "0,0": [0.875, 0.125],
                    "0,1": [0.75, 0.25],
                    "1,0": [0.25, 0.75],
                    "1,1": [0.125, 0.875],
                },
            },
        ],
        "latent": [],
        "binding": {},
    }


def frontdoor_scm() -> dict:
    """X -> M -> Y with a latent confounder U over X and Y."""
    return {
        "variables": [
            {"name": "U", "domain": ["0", "1"], "parents": [], "table": {"": [0.625, 0.375]}},
            {
                "name": "X",
                "domain": ["0", "1"],
                "parents": ["U"],
                "table": {"0": [0.75, 0.25], "1": [0.25, 0.75]},
            },
            {
                "name": "M",
                "domain": ["0", "1"],
                "parents": ["X"],
                "table": {"0": [0.875, 0.125], "1": [0.25, 0.75]},
            },
            {
                "name": "Y",
                "domain": ["0", "1"],
                "parents": ["U", "M"],
                "table": {
                    "0,0": [0.875, 0.125],
                    "0,1": [0.375, 0.625],
                    "1,0": [0.625, 0.375],
                    "1,1": [0.125, 0.875],
                },
            },
        ],
        "latent": ["U"],
        "binding": {},
    }


def mediation_scm() -> dict:
    """C -> M -> Y chain with a direct C -> Y edge; dyadic probabilities and
    no cause-by-mediator interaction in the outcome table."""
    return {
        "variables": [
            {"name": "C", "domain": ["0", "1"], "parents": [], "table": {"": [0.5, 0.5]}},
            {
                "name": "M",
                "domain": ["0", "1"],
                "parents": ["C"],
                "table": {"0": [0.75, 0.25], "1": [0.25, 0.75]},
            },
            {
                "name": "Y",
                "domain": ["0", "1"],
                "parents": ["C", "M"],
                # P(Y=1) = 0.125 + 0.25*C + 0.5*M: additive, no interaction.
                "table": {
                    "0,0": [0.875, 0.125],
                    "0,1": [0.375, 0.625],
                    "1,0": [0.625, 0.375],
                    "1,1": [0.125, 0.875],
                },
            },
        ],
        "latent": [],
        "binding": {},
    }


def invasion_scm(network_binding: dict[str, str]) -> dict:
    """Binary SCM bound to the invasion map nodes; dyadic tables."""
    return {
        "variables": [
            {"name": "nicheDiff", "domain": ["0", "1"], "parents": [], "table": {"": [0.5, 0.5]}},
            {
                "name": "suppression",
                "domain": ["0", "1"],
                "parents": ["nicheDiff"],
                "table": {"0": [0.25, 0.75], "1": [0.75, 0.25]},
            },
            {
                "name": "habitatFit",
                "domain": ["0", "1"],
                "parents": ["nicheDiff"],
                "table": {"0": [0.25, 0.75], "1": [0.625, 0.375]},
            },
            {
                "name": "invasion",
                "domain": ["0", "1"],
                "parents": ["suppression", "habitatFit"],
                "table": {
                    "0,0": [0.75, 0.25],
                    "0,1": [0.25, 0.75],
                    "1,0": [0.875, 0.125],
                    "1,1": [0.5, 0.5],
                },
            },
        ],
        "latent": [],
        "binding": network_binding,
    }
