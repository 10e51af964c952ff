"""Built-in shapes and label templates for the core statement kinds."""

from __future__ import annotations

from . import vocab
from .quad_store import Iri
from .semantic_units import LabelTemplate, ResourceKind, Shape

MEASUREMENT_SHAPE = Shape(
    shape_id=Iri("urn:su:shape:measurement"),
    subject_kind=ResourceKind.INSTANCE,
    predicate_whitelist=frozenset({vocab.HAS_QUALITY}),
    object_kind=ResourceKind.INSTANCE,
)

MEASUREMENT_TEMPLATE = LabelTemplate(
    shape_id=MEASUREMENT_SHAPE.shape_id,
    pattern="{subject} has a density of {value} {unit}",
    paths={
        "value": (vocab.HAS_QUALITY, vocab.HAS_MEASUREMENT_VALUE),
        "unit": (vocab.HAS_QUALITY, vocab.HAS_UNIT_LABEL),
    },
)

UNIVERSAL_CAUSAL_SHAPE = Shape(
    shape_id=Iri("urn:su:shape:universalCausal"),
    subject_kind=ResourceKind.EVERY_INSTANCE,
    predicate_whitelist=frozenset(vocab.CAUSAL_PREDICATES),
    object_kind=ResourceKind.SOME_INSTANCE,
)

CORRELATION_SHAPE = Shape(
    shape_id=Iri("urn:su:shape:universalCorrelation"),
    subject_kind=ResourceKind.EVERY_INSTANCE,
    predicate_whitelist=frozenset(vocab.CORRELATIVE_PREDICATES),
    object_kind=ResourceKind.SOME_INSTANCE,
)

CAUSAL_TEMPLATE = LabelTemplate(
    shape_id=UNIVERSAL_CAUSAL_SHAPE.shape_id,
    pattern="every {subject} {predicate} some {object}",
)

CORRELATION_TEMPLATE = LabelTemplate(
    shape_id=CORRELATION_SHAPE.shape_id,
    pattern="every {subject} {predicate} some {object}",
)

BUILTIN_SHAPES = {
    MEASUREMENT_SHAPE.shape_id: (MEASUREMENT_SHAPE, MEASUREMENT_TEMPLATE),
    UNIVERSAL_CAUSAL_SHAPE.shape_id: (UNIVERSAL_CAUSAL_SHAPE, CAUSAL_TEMPLATE),
    CORRELATION_SHAPE.shape_id: (CORRELATION_SHAPE, CORRELATION_TEMPLATE),
}
