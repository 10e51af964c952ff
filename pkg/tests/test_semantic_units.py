import pytest

from semcausal import vocab
from semcausal.errors import (
    CyclicComposition,
    DanglingMember,
    EmptyContent,
    EmptyMembers,
    UnboundHole,
    UnknownUnit,
    UnknownUnitClass,
)
from semcausal.fixtures import (
    COMPETITIVE_SUPPRESSION,
    INVASION_SUCCESS,
    AWMPD_METHOD,
    NTD_METHOD,
    build_invasion_map,
    build_measurement_unit,
    build_soil_compound,
    build_wetland_units,
)
from semcausal.ids import IdMinter
from semcausal.quad_store import Iri, Literal, Quad, QuadStore, Triple
from semcausal.semantic_units import (
    CompoundUnit,
    LabelTemplate,
    ResourceKind,
    Shape,
    StatementUnit,
    assemble_content,
    load_unit,
    meta_graph_iri,
    mint_compound_unit,
    mint_statement_unit,
    primary_triple,
    quantified_resource,
    render_dynamic_label,
    resource_kind,
    set_dual_type,
    annotate_method,
    validate_shape,
)
from semcausal.shapes import (
    CORRELATION_SHAPE,
    MEASUREMENT_TEMPLATE,
    UNIVERSAL_CAUSAL_SHAPE,
)


class TestMintStatementUnit:
    def test_measurement_unit_asserts_both_classes(self, store, minter):
        built = build_measurement_unit(store, minter)
        unit = built["unit"]
        types = {q.o for q in unit.meta if q.p == vocab.RDF_TYPE}
        assert vocab.MEASUREMENT_STATEMENT_UNIT in types
        assert vocab.ASSERTIONAL_STATEMENT_UNIT in types

    def test_empty_content_rejected(self, store, minter):
        with pytest.raises(EmptyContent):
            mint_statement_unit(store, minter, [], [vocab.STATEMENT_UNIT])

    def test_unknown_class_rejected(self, store, minter):
        triple = Triple(Iri("urn:x:a"), Iri("urn:x:p"), Iri("urn:x:b"))
        with pytest.raises(UnknownUnitClass):
            mint_statement_unit(store, minter, [triple], [Iri("urn:x:NoSuchClass")])
        with pytest.raises(UnknownUnitClass):
            mint_statement_unit(store, minter, [triple], [])
        with pytest.raises(UnknownUnitClass):
            # compound-kind class on a statement unit
            mint_statement_unit(store, minter, [triple], [vocab.COMPOUND_UNIT])

    def test_universal_unit_carries_both_types(self, store, minter):
        units = build_wetland_units(store, minter)
        types = {q.o for q in units["universal"].meta if q.p == vocab.RDF_TYPE}
        assert vocab.UNIVERSAL_STATEMENT_UNIT in types
        assert vocab.CLASS_AXIOM_UNIT in types

    def test_content_graph_identity(self, store, minter):
        unit = build_measurement_unit(store, minter)["unit"]
        assert all(q.g == unit.id for q in unit.content)
        assert all(q.g == meta_graph_iri(unit.id) for q in unit.meta)

    def test_deterministic_minting_dedupes(self, store, minter):
        first = build_measurement_unit(store, minter)["unit"]
        again = build_measurement_unit(store, minter)["unit"]
        assert first.id == again.id

    def test_content_type_is_most_specific_class(self, store, minter):
        unit = build_measurement_unit(store, minter)["unit"]
        assert unit.content_type == vocab.MEASUREMENT_STATEMENT_UNIT
        invasion_fix = build_invasion_map(store, minter)
        assert invasion_fix["units"]["fit"].content_type == vocab.UNIVERSAL_CAUSAL_STATEMENT_UNIT

    def test_logical_framework_default(self, store, minter):
        unit = build_measurement_unit(store, minter)["unit"]
        frameworks = [q.o for q in unit.meta if q.p == vocab.LOGICAL_FRAMEWORK]
        assert frameworks == [vocab.DESCRIPTION_LOGICS]


class TestCompoundUnits:
    def test_soil_compound_groups_three_units(self, store, minter):
        built = build_soil_compound(store, minter)
        compound = built["compound"]
        assert vocab.MATERIAL_ENTITY_ITEM_UNIT in compound.unit_classes
        assert len(compound.members) == 3
        assert compound.members == tuple(u.id for u in built["members"])

    def test_empty_members_rejected(self, store, minter):
        with pytest.raises(EmptyMembers):
            mint_compound_unit(store, minter, [], [vocab.COMPOUND_UNIT])

    def test_dangling_member_rejected(self, store, minter):
        with pytest.raises(DanglingMember):
            mint_compound_unit(store, minter, [Iri("urn:su:missing")], [vocab.COMPOUND_UNIT])

    def test_compound_owns_no_content(self, store, minter):
        compound = build_soil_compound(store, minter)["compound"]
        assert store.match(g=compound.id) == []

    def test_load_unit_round_trips_member_order(self, store, minter):
        built = build_soil_compound(store, minter)
        loaded = load_unit(store, built["compound"].id)
        assert isinstance(loaded, CompoundUnit)
        assert loaded.members == built["compound"].members


class TestAssembleContent:
    def test_statement_unit_is_identity(self, store, minter):
        unit = build_measurement_unit(store, minter)["unit"]
        assert assemble_content(store, unit.id) == unit.content

    def test_compound_merges_member_contents(self, store, minter):
        built = build_soil_compound(store, minter)
        merged = assemble_content(store, built["compound"].id)
        expected = set()
        for member in built["members"]:
            expected |= set(member.content)
        assert merged == frozenset(expected)

    def test_nested_compound_matches_manual_walk(self, store, minter):
        built = build_soil_compound(store, minter)
        outer = mint_compound_unit(
            store, minter, [built["compound"].id, built["members"][0].id], [vocab.COMPOUND_UNIT]
        )

        def manual_walk(unit_id):
            unit = load_unit(store, unit_id)
            if isinstance(unit, StatementUnit):
                return set(unit.content)
            quads = set()
            for member in unit.members:
                quads |= manual_walk(member)
            return quads

        assert assemble_content(store, outer.id) == frozenset(manual_walk(outer.id))

    def test_monotone_under_member_addition(self, store, minter):
        built = build_soil_compound(store, minter)
        small = mint_compound_unit(store, minter, [built["members"][0].id], [vocab.COMPOUND_UNIT])
        grown = mint_compound_unit(
            store, minter, [built["members"][0].id, built["members"][1].id], [vocab.COMPOUND_UNIT]
        )
        assert assemble_content(store, small.id) <= assemble_content(store, grown.id)

    def test_cycle_detected(self, store, minter):
        unit = build_measurement_unit(store, minter)["unit"]
        compound = mint_compound_unit(store, minter, [unit.id], [vocab.COMPOUND_UNIT])
        # forge a self-reference
        store.add(
            Quad(compound.id, vocab.HAS_ASSOCIATED_UNIT, compound.id, meta_graph_iri(compound.id))
        )
        with pytest.raises(CyclicComposition):
            assemble_content(store, compound.id)


class TestResourceKind:
    def test_quantifier_kinds(self, store, minter):
        resource, typing = quantified_resource(minter, ResourceKind.EVERY_INSTANCE, Iri("urn:x:C"))
        quads = [Quad(t.s, t.p, t.o, Iri("urn:x:g")) for t in typing]
        assert resource_kind(quads, resource) is ResourceKind.EVERY_INSTANCE

    def test_instance_and_class(self):
        g = Iri("urn:x:g")
        quads = [Quad(Iri("urn:x:a"), vocab.RDF_TYPE, Iri("urn:x:C"), g)]
        assert resource_kind(quads, Iri("urn:x:a")) is ResourceKind.INSTANCE
        assert resource_kind(quads, Iri("urn:x:C")) is ResourceKind.ONTOLOGY_CLASS


class TestValidateShape:
    def test_universal_causal_statement_conforms(self, store, minter):
        invasion_fix = build_invasion_map(store, minter)
        report = validate_shape(invasion_fix["units"]["suppression"], UNIVERSAL_CAUSAL_SHAPE)
        assert report.conformant

    def test_plain_instance_subject_violates_subject_kind(self, store, minter):
        source = Iri("urn:eco:someProcess")
        target, target_typing = quantified_resource(
            minter, ResourceKind.SOME_INSTANCE, INVASION_SUCCESS
        )
        unit = mint_statement_unit(
            store,
            minter,
            [
                Triple(source, vocab.RDF_TYPE, COMPETITIVE_SUPPRESSION),
                *target_typing,
                Triple(source, vocab.NEGATIVELY_REGULATES_CHARACTERISTIC, target),
            ],
            [vocab.STATEMENT_UNIT],
        )
        report = validate_shape(unit, UNIVERSAL_CAUSAL_SHAPE)
        assert not report.conformant
        assert any(v.constraint == "subject_kind" for v in report.violations)

    def test_correlation_unit_conforms_to_correlation_shape(self, store, minter):
        units = build_wetland_units(store, minter)
        report = validate_shape(units["correlation"], CORRELATION_SHAPE)
        assert report.conformant

    def test_required_meta_keys(self, store, minter):
        unit = build_measurement_unit(store, minter)["unit"]
        shape = Shape(
            shape_id=Iri("urn:x:shape"),
            subject_kind=ResourceKind.INSTANCE,
            predicate_whitelist=frozenset({vocab.HAS_QUALITY}),
            object_kind=ResourceKind.INSTANCE,
            required_meta_keys=frozenset({vocab.APPLIED_METHOD}),
        )
        report = validate_shape(unit, shape)
        assert any(v.constraint == "required_meta" for v in report.violations)
        annotate_method(store, unit.id, AWMPD_METHOD)
        report = validate_shape(load_unit(store, unit.id), shape)
        assert report.conformant


class TestDynamicLabels:
    def test_measurement_label(self, store, minter):
        unit = build_measurement_unit(store, minter)["unit"]
        text = render_dynamic_label(unit, MEASUREMENT_TEMPLATE, store)
        assert text == "soil sample X has a density of 0.57 g/cm³"

    def test_local_name_fallback_without_label(self, store, minter):
        built = build_measurement_unit(store, minter)
        # remove the label quad: rendering falls back to the local name
        for quad in store.match(s=built["sample"], p=vocab.RDFS_LABEL):
            store.discard(quad)
        text = render_dynamic_label(load_unit(store, built["unit"].id), MEASUREMENT_TEMPLATE, store)
        assert text.startswith("soilSample_X has a density")
        assert "<" not in text

    def test_absent_path_raises_unbound_hole(self, store, minter):
        unit = build_measurement_unit(store, minter)["unit"]
        template = LabelTemplate(
            shape_id=MEASUREMENT_TEMPLATE.shape_id,
            pattern="{subject} sampled on {date}",
            paths={"date": (Iri("urn:x:noSuchPath"),)},
        )
        with pytest.raises(UnboundHole):
            render_dynamic_label(unit, template, store)

    def test_undeclared_hole_raises(self, store, minter):
        unit = build_measurement_unit(store, minter)["unit"]
        template = LabelTemplate(shape_id=MEASUREMENT_TEMPLATE.shape_id, pattern="{mystery}")
        with pytest.raises(UnboundHole):
            render_dynamic_label(unit, template, store)

    def test_never_emits_angle_brackets_when_label_exists(self, store, minter):
        unit = build_measurement_unit(store, minter)["unit"]
        assert "<" not in render_dynamic_label(unit, MEASUREMENT_TEMPLATE, store)


class TestDualTypingAndMethods:
    def test_dual_type_adds_both_types(self, store, minter):
        built = build_soil_compound(store, minter)
        organism = Iri("urn:eco:organismClass")
        set_dual_type(store, built["compound"].id, organism, represents=built["sample"])
        loaded = load_unit(store, built["compound"].id)
        assert organism in loaded.unit_classes
        assert vocab.MATERIAL_ENTITY_ITEM_UNIT in loaded.unit_classes
        about = [q for q in loaded.meta if q.p == vocab.IS_ABOUT]
        assert [q.o for q in about] == [built["sample"]]

    def test_dual_type_idempotent(self, store, minter):
        built = build_soil_compound(store, minter)
        before = len(store)
        set_dual_type(store, built["compound"].id, Iri("urn:eco:organismClass"))
        after_once = len(store)
        set_dual_type(store, built["compound"].id, Iri("urn:eco:organismClass"))
        assert len(store) == after_once > before

    def test_dual_type_unknown_unit(self, store):
        with pytest.raises(UnknownUnit):
            set_dual_type(store, Iri("urn:su:nope"), Iri("urn:x:C"))

    def test_annotate_method_variants_and_idempotence(self, store, minter):
        unit = build_measurement_unit(store, minter)["unit"]
        annotate_method(store, unit.id, AWMPD_METHOD)
        annotate_method(store, unit.id, NTD_METHOD)
        annotate_method(store, unit.id, NTD_METHOD)
        methods = {q.o for q in store.match(s=unit.id, p=vocab.APPLIED_METHOD)}
        assert methods == {AWMPD_METHOD, NTD_METHOD}


class TestPrimaryTriple:
    def test_root_subject_wins(self, store, minter):
        unit = build_measurement_unit(store, minter)["unit"]
        primary = primary_triple(unit)
        assert primary.p == vocab.HAS_QUALITY

    def test_no_candidates_returns_none(self, store, minter):
        unit = mint_statement_unit(
            store,
            minter,
            [Triple(Iri("urn:x:a"), vocab.RDF_TYPE, Iri("urn:x:C"))],
            [vocab.STATEMENT_UNIT],
        )
        assert primary_triple(unit) is None
