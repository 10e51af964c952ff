import pytest

from semcausal import vocab
from semcausal.errors import CyclicComposition, MalformedHead
from semcausal.fdo_io import (
    ExportConfig,
    export_nanopub,
    export_nested,
    import_nanopub,
    nanopub_nquads,
)
from semcausal.fixtures import (
    build_invasion_map,
    build_measurement_unit,
    build_soil_compound,
)
from semcausal.quad_store import Iri, Quad, parse_nquads
from semcausal.semantic_units import (
    CompoundUnit,
    StatementUnit,
    load_unit,
    meta_graph_iri,
)

DET = ExportConfig(deterministic=True)

GRAPH_REFS = (vocab.NP_HAS_ASSERTION, vocab.NP_HAS_PROVENANCE, vocab.NP_HAS_PUBINFO)


class TestExport:
    def test_measurement_unit_exports_five_assertion_quads(self, store, minter):
        unit = build_measurement_unit(store, minter)["unit"]
        np = export_nanopub(store, unit, DET)
        assert len(np.assertion) == 5
        refs = [q for q in np.head if q.p in GRAPH_REFS]
        assert len(refs) == 3

    def test_head_lists_exactly_the_three_graphs(self, store, minter):
        unit = build_measurement_unit(store, minter)["unit"]
        np = export_nanopub(store, unit, DET)
        targets = {q.p: q.o for q in np.head if q.p in GRAPH_REFS}
        assert targets[vocab.NP_HAS_ASSERTION] == np.assertion_graph
        assert targets[vocab.NP_HAS_PROVENANCE] == np.provenance_graph
        assert targets[vocab.NP_HAS_PUBINFO] == np.pubinfo_graph

    def test_empty_meta_unit_gets_only_derivation_quad(self, store, minter):
        unit = build_measurement_unit(store, minter)["unit"]
        bare = StatementUnit(
            id=unit.id, content=unit.content, meta=frozenset(), unit_classes=()
        )
        np = export_nanopub(store, bare, DET)
        assert len(np.provenance) == 1
        (quad,) = np.provenance
        assert quad.p == vocab.PROV_WAS_DERIVED_FROM
        assert quad.o == unit.id

    def test_deterministic_double_export_is_byte_identical(self, store, minter):
        unit = build_measurement_unit(store, minter)["unit"]
        first = nanopub_nquads(export_nanopub(store, unit, DET))
        second = nanopub_nquads(export_nanopub(store, unit, DET))
        assert first == second

    def test_nondeterministic_timestamps_differ_from_epoch(self, store, minter):
        unit = build_measurement_unit(store, minter)["unit"]
        np = export_nanopub(store, unit, ExportConfig(deterministic=False))
        stamps = [q.o.lexical for q in np.pubinfo if q.p == vocab.DCT_CREATED]
        assert stamps and not stamps[0].startswith("1970")

    def test_doi_prefix_namespacing(self, store, minter):
        unit = build_measurement_unit(store, minter)["unit"]
        np = export_nanopub(store, unit, ExportConfig(deterministic=True, doi_prefix="https://doi.example/"))
        assert np.id.value.startswith("https://doi.example/")

    def test_export_does_not_mutate_store(self, store, minter):
        unit = build_measurement_unit(store, minter)["unit"]
        before = store.quads()
        export_nanopub(store, unit, DET)
        assert store.quads() == before


class TestNested:
    def test_soil_compound_exports_four_nanopubs(self, store, minter):
        built = build_soil_compound(store, minter)
        bundle = export_nested(store, built["compound"], DET)
        assert len(bundle) == 4
        nested = bundle[-1]
        assert nested.assertion == frozenset()
        member_refs = [q for q in nested.head if vocab.rdf_member_index(q.p) is not None]
        assert len(member_refs) == 3

    def test_invasion_map_exports_five_nanopubs(self, store, minter):
        invasion_fix = build_invasion_map(store, minter)
        compound = load_unit(store, invasion_fix["network"].id)
        bundle = export_nested(store, compound, DET)
        assert len(bundle) == 5

    def test_cycle_rejected(self, store, minter):
        built = build_soil_compound(store, minter)
        compound = built["compound"]
        store.add(
            Quad(compound.id, vocab.HAS_ASSOCIATED_UNIT, compound.id, meta_graph_iri(compound.id))
        )
        with pytest.raises(CyclicComposition):
            export_nested(store, load_unit(store, compound.id), DET)


class TestImport:
    def round_trip(self, store, unit):
        bundle = (
            export_nested(store, unit, DET)
            if isinstance(unit, CompoundUnit)
            else [export_nanopub(store, unit, DET)]
        )
        return import_nanopub(parse_nquads(nanopub_nquads(bundle)))

    def test_statement_round_trip(self, store, minter):
        unit = build_measurement_unit(store, minter)["unit"]
        (back,) = self.round_trip(store, unit)
        assert back.id == unit.id
        assert back.content == unit.content
        assert back.unit_classes == unit.unit_classes

    def test_nested_round_trip_preserves_member_order(self, store, minter):
        built = build_soil_compound(store, minter)
        units = self.round_trip(store, built["compound"])
        compounds = [u for u in units if isinstance(u, CompoundUnit)]
        assert len(units) == 4 and len(compounds) == 1
        assert compounds[0].members == built["compound"].members

    def test_missing_assertion_graph_rejected(self, store, minter):
        unit = build_measurement_unit(store, minter)["unit"]
        np = export_nanopub(store, unit, DET)
        quads = [q for q in np.quads() if q.g != np.assertion_graph]
        with pytest.raises(MalformedHead):
            import_nanopub(quads)

    def test_missing_graph_reference_rejected(self, store, minter):
        unit = build_measurement_unit(store, minter)["unit"]
        np = export_nanopub(store, unit, DET)
        quads = [q for q in np.quads() if q.p != vocab.NP_HAS_PUBINFO]
        with pytest.raises(MalformedHead):
            import_nanopub(quads)

    def test_no_head_rejected(self, store, minter):
        unit = build_measurement_unit(store, minter)["unit"]
        with pytest.raises(MalformedHead):
            import_nanopub(sorted(unit.content, key=lambda q: q.s.value))
