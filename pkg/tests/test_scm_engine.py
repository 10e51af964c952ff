import math
import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from oracles import random_binary_scm_dict, random_dag, twin_network_counterfactual
from semcausal import vocab
from semcausal.causal_inference import Var, identify_effect
from semcausal.errors import (
    DanglingMember,
    DomainTooLarge,
    InvalidAdjustmentSet,
    InvalidMediatorSet,
    NonNumericOutcome,
    NotAChain,
    NotDeterministicForm,
    UnknownVariable,
    ZeroProbabilityEvidence,
)
from semcausal.fixtures import (
    build_assertional_causal_unit,
    build_invasion_map,
    confounded_scm,
    copy_scm,
    frontdoor_scm,
    mediation_scm,
)
from semcausal.ids import IdMinter
from semcausal.quad_store import QuadStore, Iri
from semcausal.scm_engine import (
    CounterfactualQuery,
    DiscreteSCM,
    Distribution,
    InvalidScm,
    build_potential_outcome_unit,
    conditional,
    counterfactual,
    estimate_backdoor,
    estimate_frontdoor,
    evaluate_estimand,
    intervene,
    interventional_distribution,
    is_canonical,
    joint,
    mediation_effects,
    to_canonical_form,
)
from semcausal.statement_logic import StatementCategory, categorize


def scm_of(data):
    return DiscreteSCM.from_dict(data)


def max_diff(a: Distribution, b: Distribution) -> float:
    keys = set(a.mass) | set(b.mass)
    return max(abs(a.mass.get(k, 0.0) - b.mass.get(k, 0.0)) for k in keys)


class TestJoint:
    def test_single_fair_coin(self):
        scm = scm_of(
            {"variables": [{"name": "X", "domain": ["0", "1"], "parents": [], "table": {"": [0.5, 0.5]}}]}
        )
        assert joint(scm).mass == {("0",): 0.5, ("1",): 0.5}

    def test_deterministic_copy(self):
        scm = scm_of(
            {
                "variables": [
                    {"name": "X", "domain": ["0", "1"], "parents": [], "table": {"": [0.7, 0.3]}},
                    {
                        "name": "Y",
                        "domain": ["0", "1"],
                        "parents": ["X"],
                        "table": {"0": [1.0, 0.0], "1": [0.0, 1.0]},
                    },
                ]
            }
        )
        assert joint(scm).mass[("1", "1")] == pytest.approx(0.3, abs=1e-15)

    def test_confounded_fixture_matches_hand_product(self):
        # golden values computed by hand from the dyadic tables:
        # P(Z=1)=0.25, P(X=1|Z)={0:0.125,1:0.875}, P(Y=1|Z,X) per table
        scm = scm_of(confounded_scm())
        dist = joint(scm)
        assert dist.mass[("0", "0", "0")] == 0.75 * 0.875 * 0.875  # z=0,x=0,y=0
        assert dist.mass[("1", "1", "1")] == 0.25 * 0.875 * 0.875  # z=1,x=1,y=1
        assert dist.mass[("0", "1", "0")] == 0.75 * 0.125 * 0.75
        assert dist.total() == pytest.approx(1.0, abs=1e-12)

    def test_domain_too_large(self):
        variables = [
            {"name": f"v{i}", "domain": [str(j) for j in range(8)], "parents": [], "table": {"": [0.125] * 8}}
            for i in range(8)
        ]
        with pytest.raises(DomainTooLarge):
            joint(scm_of({"variables": variables}))

    def test_invalid_tables_rejected(self):
        with pytest.raises(InvalidScm):
            scm_of(
                {"variables": [{"name": "X", "domain": ["0", "1"], "parents": [], "table": {"": [0.9, 0.9]}}]}
            )
        with pytest.raises(InvalidScm):
            scm_of(
                {
                    "variables": [
                        {"name": "X", "domain": ["0", "1"], "parents": ["W"], "table": {"0": [1, 0], "1": [0, 1]}}
                    ]
                }
            )


class TestConditional:
    def test_condition_on_nothing_is_marginal(self):
        dist = joint(scm_of(confounded_scm()))
        assert max_diff(conditional(dist, ("Y",), {}), dist.marginal(("Y",))) == 0.0

    def test_impossible_evidence(self):
        dist = joint(scm_of(copy_scm()))
        with pytest.raises(ZeroProbabilityEvidence):
            conditional(dist, ("Y",), {"X": "1", "Y": "0"})

    def test_matches_direct_enumeration(self):
        scm = scm_of(confounded_scm())
        dist = joint(scm)
        got = conditional(dist, ("Y",), {"X": "1"})
        # direct sum over the full table
        num = {y: 0.0 for y in scm.domains["Y"]}
        den = 0.0
        for (z, x, y), p in dist.mass.items():
            if x == "1":
                num[y] += p
                den += p
        for y, p in num.items():
            assert got.mass[(y,)] == pytest.approx(p / den, abs=1e-15)


class TestIntervene:
    def test_do_on_copy_model(self):
        scm = scm_of(copy_scm())
        dist = interventional_distribution(scm, {"X": "1"}, ("Y",))
        assert dist.mass == {("0",): 0.0, ("1",): 1.0}

    def test_do_on_childless_variable_leaves_others_alone(self):
        scm = scm_of(confounded_scm())
        before = joint(scm).marginal(("Z", "X"))
        after = joint(intervene(scm, {"Y": "1"})).marginal(("Z", "X"))
        assert max_diff(before, after) == 0.0

    def test_confounding_gap(self):
        scm = scm_of(confounded_scm())
        surgical = interventional_distribution(scm, {"X": "1"}, ("Y",))
        observational = conditional(joint(scm), ("Y",), {"X": "1"})
        assert abs(surgical.mass[("1",)] - observational.mass[("1",)]) > 0.05

    def test_unknown_variable_or_value(self):
        scm = scm_of(copy_scm())
        with pytest.raises(UnknownVariable):
            intervene(scm, {"Q": "1"})
        with pytest.raises(UnknownVariable):
            intervene(scm, {"X": "7"})


class TestEstimateBackdoor:
    def test_matches_surgery_oracle(self):
        scm = scm_of(confounded_scm())
        estimated = estimate_backdoor(scm, "X", "Y", {"Z"})
        for value in scm.domains["X"]:
            oracle = interventional_distribution(scm, {"X": value}, ("Y",))
            assert max_diff(estimated[value], oracle) <= 1e-12

    def test_empty_set_collapses_to_conditional(self):
        scm = scm_of(copy_scm())
        estimated = estimate_backdoor(scm, "X", "Y", set())
        expected = conditional(joint(scm), ("Y",), {"X": "1"})
        assert max_diff(estimated["1"], expected) <= 1e-15

    def test_descendant_in_set_rejected(self):
        scm = scm_of(confounded_scm())
        with pytest.raises(InvalidAdjustmentSet):
            estimate_backdoor(scm, "Z", "Y", {"X"})  # X descends from Z

    def test_invalid_set_rejected(self):
        scm = scm_of(confounded_scm())
        with pytest.raises(InvalidAdjustmentSet):
            estimate_backdoor(scm, "X", "Y", set())


class TestEstimateFrontdoor:
    def test_matches_surgery_oracle_with_hidden_latent(self):
        scm = scm_of(frontdoor_scm())
        estimated = estimate_frontdoor(scm, "X", "Y", {"M"})
        for value in scm.domains["X"]:
            oracle = interventional_distribution(scm, {"X": value}, ("Y",))
            assert max_diff(estimated[value], oracle) <= 1e-12

    def test_unconfounded_chain_agrees_with_backdoor(self):
        chain = scm_of(
            {
                "variables": [
                    {"name": "X", "domain": ["0", "1"], "parents": [], "table": {"": [0.375, 0.625]}},
                    {
                        "name": "M",
                        "domain": ["0", "1"],
                        "parents": ["X"],
                        "table": {"0": [0.75, 0.25], "1": [0.125, 0.875]},
                    },
                    {
                        "name": "Y",
                        "domain": ["0", "1"],
                        "parents": ["M"],
                        "table": {"0": [0.875, 0.125], "1": [0.25, 0.75]},
                    },
                ]
            }
        )
        front = estimate_frontdoor(chain, "X", "Y", {"M"})
        back = estimate_backdoor(chain, "X", "Y", set())
        for value in chain.domains["X"]:
            assert max_diff(front[value], back[value]) <= 1e-12
            oracle = interventional_distribution(chain, {"X": value}, ("Y",))
            assert max_diff(front[value], oracle) <= 1e-12

    def test_invalid_mediators_rejected(self):
        scm = scm_of(frontdoor_scm())
        with pytest.raises(InvalidMediatorSet):
            estimate_frontdoor(scm, "X", "Y", set())
        with pytest.raises(InvalidMediatorSet):
            estimate_frontdoor(scm, "M", "Y", {"X"})


class TestMediation:
    def test_cause_independent_mediator_gives_zero_nie(self):
        data = mediation_scm()
        data["variables"][1]["table"] = {"0": [0.625, 0.375], "1": [0.625, 0.375]}
        result = mediation_effects(scm_of(data), "C", "M", "Y", "0", "1")
        assert result.nie == 0.0

    def test_cause_independent_outcome_gives_zero_nde(self):
        data = mediation_scm()
        data["variables"][2]["table"] = {
            "0,0": [0.875, 0.125],
            "0,1": [0.375, 0.625],
            "1,0": [0.875, 0.125],
            "1,1": [0.375, 0.625],
        }
        result = mediation_effects(scm_of(data), "C", "M", "Y", "0", "1")
        assert result.nde == 0.0

    def test_no_interaction_decomposition_and_surgery_te(self):
        scm = scm_of(mediation_scm())
        result = mediation_effects(scm, "C", "M", "Y", "0", "1")
        assert abs(result.te - (result.nde + result.nie)) <= 1e-9
        surgery_te = interventional_distribution(scm, {"C": "1"}, ("Y",)).mass[("1",)] - (
            interventional_distribution(scm, {"C": "0"}, ("Y",)).mass[("1",)]
        )
        assert result.te == pytest.approx(surgery_te, abs=1e-15)

    def test_custom_baseline_treated(self):
        scm = scm_of(mediation_scm())
        forward = mediation_effects(scm, "C", "M", "Y", "0", "1")
        backward = mediation_effects(scm, "C", "M", "Y", "1", "0")
        assert backward.te == pytest.approx(-forward.te, abs=1e-12)

    def test_not_a_chain(self):
        scm = scm_of(confounded_scm())
        with pytest.raises(NotAChain):
            mediation_effects(scm, "X", "Z", "Y", "0", "1")

    def test_non_numeric_outcome(self):
        data = mediation_scm()
        data["variables"][2]["domain"] = ["low", "high"]
        with pytest.raises(NonNumericOutcome):
            mediation_effects(scm_of(data), "C", "M", "Y", "0", "1")

    def test_assumption_flags_detect_latent_confounding(self):
        data = mediation_scm()
        data["variables"].append(
            {"name": "U", "domain": ["0", "1"], "parents": [], "table": {"": [0.5, 0.5]}}
        )
        data["variables"][1]["parents"] = ["C", "U"]
        data["variables"][1]["table"] = {
            "0,0": [0.75, 0.25],
            "0,1": [0.5, 0.5],
            "1,0": [0.25, 0.75],
            "1,1": [0.125, 0.875],
        }
        data["variables"][2]["parents"] = ["C", "M", "U"]
        data["variables"][2]["table"] = {
            f"{c},{m},{u}": [0.75, 0.25] for c in "01" for m in "01" for u in "01"
        }
        data["latent"] = ["U"]
        result = mediation_effects(scm_of(data), "C", "M", "Y", "0", "1")
        assert result.assumptions_checked[1] is False  # latent mediator-outcome confounder


class TestCounterfactual:
    def test_copy_fixture_point_mass(self):
        scm = scm_of(copy_scm())
        dist = counterfactual(scm, CounterfactualQuery({"X": "1", "Y": "1"}, {"X": "0"}, "Y"))
        assert dist.mass == {("0",): 1.0, ("1",): 0.0}

    def test_no_evidence_equals_intervention(self):
        scm = to_canonical_form(scm_of(confounded_scm()))
        cf = counterfactual(scm, CounterfactualQuery({}, {"X": "1"}, "Y"))
        oracle = interventional_distribution(scm, {"X": "1"}, ("Y",))
        assert max_diff(cf, oracle) <= 1e-12

    def test_noisy_or_fixture_matches_twin_network(self):
        data = {
            "variables": [
                {"name": "A", "domain": ["0", "1"], "parents": [], "table": {"": [0.5, 0.5]}},
                {"name": "B", "domain": ["0", "1"], "parents": [], "table": {"": [0.75, 0.25]}},
                {
                    "name": "Y",
                    "domain": ["0", "1"],
                    # noisy OR with dyadic leak probabilities
                    "parents": ["A", "B"],
                    "table": {
                        "0,0": [0.875, 0.125],
                        "0,1": [0.25, 0.75],
                        "1,0": [0.25, 0.75],
                        "1,1": [0.0625, 0.9375],
                    },
                },
            ]
        }
        scm = to_canonical_form(scm_of(data))
        query = CounterfactualQuery({"A": "1", "Y": "1"}, {"A": "0"}, "Y")
        ours = counterfactual(scm, query)
        oracle = twin_network_counterfactual(scm, query.evidence, query.intervention, "Y")
        for value, p in oracle.items():
            assert ours.mass[(value,)] == pytest.approx(p, abs=1e-12)

    def test_consistency_when_intervention_matches_evidence(self):
        scm = scm_of(copy_scm())
        dist = counterfactual(scm, CounterfactualQuery({"X": "1", "Y": "1"}, {"X": "1"}, "Y"))
        assert dist.mass[("1",)] == 1.0

    def test_zero_probability_evidence(self):
        scm = scm_of(copy_scm())
        with pytest.raises(ZeroProbabilityEvidence):
            counterfactual(scm, CounterfactualQuery({"X": "1", "Y": "0"}, {}, "Y"))

    def test_non_canonical_rejected(self):
        scm = scm_of(confounded_scm())
        with pytest.raises(NotDeterministicForm):
            counterfactual(scm, CounterfactualQuery({}, {"X": "1"}, "Y"))


class TestCanonicalForm:
    def test_preserves_observational_law(self):
        scm = scm_of(confounded_scm())
        canon = to_canonical_form(scm)
        assert is_canonical(canon)
        original = joint(scm).marginal(scm.variables)
        lifted = joint(canon).marginal(scm.variables)
        assert max_diff(original, lifted) <= 1e-12

    def test_preserves_interventional_law(self):
        scm = scm_of(confounded_scm())
        canon = to_canonical_form(scm)
        for value in ("0", "1"):
            a = interventional_distribution(scm, {"X": value}, ("Y",))
            b = interventional_distribution(canon, {"X": value}, ("Y",))
            assert max_diff(a, b) <= 1e-12

    def test_noise_domain_guard(self):
        variables = [
            {"name": f"p{i}", "domain": ["0", "1", "2"], "parents": [], "table": {"": [0.25, 0.25, 0.5]}}
            for i in range(4)
        ]
        rows = {}
        import itertools as it

        for combo in it.product("012", repeat=4):
            rows[",".join(combo)] = [0.5, 0.25, 0.25]
        variables.append(
            {"name": "Y", "domain": ["0", "1", "2"], "parents": [f"p{i}" for i in range(4)], "table": rows}
        )
        with pytest.raises(DomainTooLarge):
            to_canonical_form(scm_of({"variables": variables}))


class TestEvaluateEstimand:
    def test_matches_surgery_on_random_scms(self):
        rng = random.Random(31)
        checked = 0
        while checked < 25:
            nodes, edges = random_dag(rng, rng.randint(3, 5))
            scm = scm_of(random_binary_scm_dict(rng, nodes, edges))
            cause, effect = rng.sample(nodes, 2)
            estimand = identify_effect(scm.dag, cause, effect)
            if not estimand.identified:
                continue
            checked += 1
            obs = joint(scm).marginal(scm.observed)
            for cause_value in scm.domains[cause]:
                oracle = interventional_distribution(scm, {cause: cause_value}, (effect,))
                for effect_value in scm.domains[effect]:
                    got = evaluate_estimand(
                        estimand, obs, {Var(cause): cause_value, Var(effect): effect_value}
                    )
                    assert got == pytest.approx(oracle.mass[(effect_value,)], abs=1e-9)


class TestPotentialOutcomeUnit:
    def test_three_member_compound(self, store, minter):
        invasion_fix = build_invasion_map(store, minter)
        observed = build_assertional_causal_unit(store, minter)["unit"]
        scm = scm_of(copy_scm())
        result = counterfactual(scm, CounterfactualQuery({"X": "1", "Y": "1"}, {"X": "0"}, "Y"))
        compound = build_potential_outcome_unit(
            store,
            minter,
            observed.id,
            result,
            invasion_fix["units"]["suppression"].id,
            {"X": "0"},
            Iri("urn:eco:abductionActionPrediction"),
        )
        assert vocab.POTENTIAL_OUTCOME_COMPOUND_UNIT in compound.unit_classes
        assert len(compound.members) == 3
        assert compound.members[0] == observed.id
        assert compound.members[2] == invasion_fix["units"]["suppression"].id
        from semcausal.semantic_units import load_unit

        cf_unit = load_unit(store, compound.members[1])
        assert vocab.COUNTERFACTUAL_STATEMENT_UNIT in cf_unit.unit_classes
        assert categorize(cf_unit) is StatementCategory.CONTINGENT
        texts = [q.o.lexical for q in cf_unit.meta if q.p == vocab.APPLIED_INTERVENTION]
        assert texts == ["do(X = 0)"]

    def test_missing_universal_rejected(self, store, minter):
        observed = build_assertional_causal_unit(store, minter)["unit"]
        scm = scm_of(copy_scm())
        result = counterfactual(scm, CounterfactualQuery({}, {"X": "0"}, "Y"))
        with pytest.raises(DanglingMember):
            build_potential_outcome_unit(
                store, minter, observed.id, result, Iri("urn:su:ghost"), {"X": "0"},
                Iri("urn:eco:method"),
            )


@given(st.integers(min_value=0, max_value=10_000))
def test_distribution_outputs_normalized(seed):
    rng = random.Random(seed)
    nodes, edges = random_dag(rng, rng.randint(2, 4))
    scm = scm_of(random_binary_scm_dict(rng, nodes, edges))
    dist = joint(scm)
    assert abs(dist.total() - 1.0) <= 1e-9
    target = rng.choice(nodes)
    assert abs(dist.marginal((target,)).total() - 1.0) <= 1e-9
