"""Discrete structural causal models with exact enumeration.

Variables have finite string-labelled domains and conditional probability
tables. Everything is computed by full enumeration in float64: joints,
conditionals, interventions by graph surgery (the ground-truth oracle for
every estimation routine), back-door and front-door estimation, mediation
effects, and abduction-action-prediction counterfactuals over SCMs in
canonical deterministic-with-noise form.
"""

from __future__ import annotations

import itertools
import json
import math
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Mapping, Optional, Sequence

from . import vocab
from .causal_inference import (
    Dag,
    Estimand,
    Prob,
    Product,
    SumOver,
    Difference,
    Var,
    is_valid_backdoor_set,
    is_valid_frontdoor_set,
    latent_confounders,
)
from .errors import (
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
from .ids import IdMinter
from .quad_store import Iri, Literal, QuadStore, Triple
from .semantic_units import (
    CompoundUnit,
    ResourceKind,
    StatementUnit,
    load_unit,
    mint_compound_unit,
    mint_statement_unit,
    primary_triple,
    quantified_resource,
    target_classes,
    unit_exists,
)

MAX_ASSIGNMENTS = 2**20

__all__ = [
    "Cpt",
    "DiscreteSCM",
    "Distribution",
    "MediationResult",
    "CounterfactualQuery",
    "InvalidScm",
    "joint",
    "conditional",
    "intervene",
    "interventional_distribution",
    "estimate_backdoor",
    "estimate_frontdoor",
    "frontdoor_check_for",
    "mediation_effects",
    "counterfactual",
    "to_canonical_form",
    "is_canonical",
    "evaluate_estimand",
    "build_potential_outcome_unit",
    "do_text",
]


class InvalidScm(ValueError):
    """Structurally malformed SCM description."""


@dataclass(frozen=True)
class Cpt:
    variable: str
    parents: tuple[str, ...]
    table: dict[tuple[str, ...], tuple[float, ...]]


@dataclass(frozen=True)
class DiscreteSCM:
    variables: tuple[str, ...]
    domains: dict[str, tuple[str, ...]]
    cpts: dict[str, Cpt]
    latent: frozenset[str] = frozenset()
    binding: dict[str, str] = field(default_factory=dict)

    def __post_init__(self) -> None:
        for var in self.variables:
            if var not in self.domains or not self.domains[var]:
                raise InvalidScm(f"variable {var} has no domain")
            if any("," in value for value in self.domains[var]):
                raise InvalidScm(f"domain values of {var} must not contain commas")
            cpt = self.cpts.get(var)
            if cpt is None:
                raise InvalidScm(f"variable {var} has no probability table")
            for parent in cpt.parents:
                if parent not in self.domains:
                    raise InvalidScm(f"{var} references unknown parent {parent}")
            rows = list(itertools.product(*(self.domains[p] for p in cpt.parents)))
            if set(cpt.table) != set(rows):
                raise InvalidScm(f"table of {var} does not cover its parent assignments")
            for row, probs in cpt.table.items():
                if len(probs) != len(self.domains[var]):
                    raise InvalidScm(f"row {row} of {var} has the wrong arity")
                if any(p < 0 or p > 1 for p in probs):
                    raise InvalidScm(f"row {row} of {var} has probabilities outside [0, 1]")
                if abs(sum(probs) - 1.0) > 1e-9:
                    raise InvalidScm(f"row {row} of {var} does not sum to 1")
        if not self.latent <= set(self.variables):
            raise InvalidScm("latent set references unknown variables")

    @property
    def dag(self) -> Dag:
        edges = [(p, v) for v in self.variables for p in self.cpts[v].parents]
        return Dag.from_edges(edges, nodes=self.variables, latent=self.latent)

    @property
    def observed(self) -> tuple[str, ...]:
        return tuple(v for v in self.variables if v not in self.latent)

    def topological(self) -> list[str]:
        remaining = {v: set(self.cpts[v].parents) for v in self.variables}
        order: list[str] = []
        while remaining:
            ready = sorted(v for v, parents in remaining.items() if not parents)
            if not ready:
                raise InvalidScm("parent structure is cyclic")
            for v in ready:
                order.append(v)
                del remaining[v]
            for parents in remaining.values():
                parents.difference_update(ready)
        return order

    def require(self, *names: str) -> None:
        for name in names:
            if name not in self.domains:
                raise UnknownVariable(f"{name} is not a variable of this model")

    def require_value(self, var: str, value: str) -> None:
        self.require(var)
        if value not in self.domains[var]:
            raise UnknownVariable(f"{value!r} is not in the domain of {var}")

    def to_dict(self) -> dict:
        return {
            "variables": [
                {
                    "name": v,
                    "domain": list(self.domains[v]),
                    "parents": list(self.cpts[v].parents),
                    "table": {
                        ",".join(row): list(probs) for row, probs in self.cpts[v].table.items()
                    },
                }
                for v in self.variables
            ],
            "latent": sorted(self.latent),
            "binding": dict(sorted(self.binding.items())),
        }

    @classmethod
    def from_dict(cls, data: dict) -> "DiscreteSCM":
        variables: list[str] = []
        domains: dict[str, tuple[str, ...]] = {}
        cpts: dict[str, Cpt] = {}
        for spec in data.get("variables", []):
            name = spec["name"]
            variables.append(name)
            domains[name] = tuple(str(v) for v in spec["domain"])
            parents = tuple(spec.get("parents", []))
            table = {
                tuple(key.split(",")) if key else (): tuple(float(p) for p in probs)
                for key, probs in spec["table"].items()
            }
            cpts[name] = Cpt(name, parents, table)
        return cls(
            variables=tuple(variables),
            domains=domains,
            cpts=cpts,
            latent=frozenset(data.get("latent", [])),
            binding=dict(data.get("binding", {})),
        )

    @classmethod
    def load(cls, path: str | Path) -> "DiscreteSCM":
        return cls.from_dict(json.loads(Path(path).read_text(encoding="utf-8")))


@dataclass(frozen=True)
class Distribution:
    variables: tuple[str, ...]
    mass: dict[tuple[str, ...], float]

    def total(self) -> float:
        return math.fsum(self.mass.values())

    def prob_of(self, partial: Mapping[str, str]) -> float:
        idx = {v: i for i, v in enumerate(self.variables)}
        for var in partial:
            if var not in idx:
                raise UnknownVariable(f"{var} is not covered by this distribution")
        return math.fsum(
            p
            for assignment, p in self.mass.items()
            if all(assignment[idx[v]] == val for v, val in partial.items())
        )

    def marginal(self, variables: Sequence[str]) -> "Distribution":
        variables = tuple(variables)
        idx = {v: i for i, v in enumerate(self.variables)}
        for var in variables:
            if var not in idx:
                raise UnknownVariable(f"{var} is not covered by this distribution")
        sums: dict[tuple[str, ...], list[float]] = {}
        for assignment, p in self.mass.items():
            key = tuple(assignment[idx[v]] for v in variables)
            sums.setdefault(key, []).append(p)
        return Distribution(variables, {k: math.fsum(v) for k, v in sorted(sums.items())})

    def to_json_map(self) -> dict[str, float]:
        return {",".join(assignment): p for assignment, p in sorted(self.mass.items())}


def joint(scm: DiscreteSCM) -> Distribution:
    """Exact joint by the chain rule over all variables (latents included)."""
    count = 1
    for var in scm.variables:
        count *= len(scm.domains[var])
        if count > MAX_ASSIGNMENTS:
            raise DomainTooLarge(f"joint would enumerate more than {MAX_ASSIGNMENTS} assignments")
    index = {v: i for i, v in enumerate(scm.variables)}
    mass: dict[tuple[str, ...], float] = {}
    for assignment in itertools.product(*(scm.domains[v] for v in scm.variables)):
        p = 1.0
        for var in scm.variables:
            cpt = scm.cpts[var]
            row = tuple(assignment[index[parent]] for parent in cpt.parents)
            p *= cpt.table[row][scm.domains[var].index(assignment[index[var]])]
            if p == 0.0:
                break
        mass[assignment] = p
    return Distribution(scm.variables, mass)


def conditional(
    dist: Distribution, targets: Sequence[str], given: Mapping[str, str]
) -> Distribution:
    """Renormalized restriction of a distribution to the evidence."""
    base = dist.prob_of(given)
    if base <= 0.0:
        raise ZeroProbabilityEvidence(f"evidence {dict(given)} has probability zero")
    idx = {v: i for i, v in enumerate(dist.variables)}
    targets = tuple(targets)
    sums: dict[tuple[str, ...], list[float]] = {}
    for assignment, p in dist.mass.items():
        if all(assignment[idx[v]] == val for v, val in given.items()):
            key = tuple(assignment[idx[v]] for v in targets)
            sums.setdefault(key, []).append(p)
    return Distribution(targets, {k: math.fsum(v) / base for k, v in sorted(sums.items())})


def intervene(scm: DiscreteSCM, do: Mapping[str, str]) -> DiscreteSCM:
    """Graph surgery: intervened variables lose parents and table, pinned
    to a point mass on the forced value."""
    for var, value in do.items():
        scm.require_value(var, value)
    cpts = dict(scm.cpts)
    for var, value in do.items():
        point = tuple(1.0 if v == value else 0.0 for v in scm.domains[var])
        cpts[var] = Cpt(var, (), {(): point})
    return DiscreteSCM(
        variables=scm.variables,
        domains=scm.domains,
        cpts=cpts,
        latent=scm.latent,
        binding=scm.binding,
    )


def interventional_distribution(
    scm: DiscreteSCM, do: Mapping[str, str], targets: Sequence[str]
) -> Distribution:
    """P(targets | do(...)) by surgery plus exact marginalization."""
    return joint(intervene(scm, do)).marginal(targets)


def _observational(scm: DiscreteSCM) -> Distribution:
    return joint(scm).marginal(scm.observed)


def frontdoor_check_for(scm: DiscreteSCM, cause: str, effect: str) -> Optional[frozenset]:
    """Smallest front-door mediator set on the model's graph, if any."""
    from .causal_inference import frontdoor_check

    scm.require(cause, effect)
    return frontdoor_check(scm.dag, cause, effect)


def estimate_backdoor(
    scm: DiscreteSCM, cause: str, effect: str, z: Iterable[str]
) -> dict[str, Distribution]:
    """Back-door adjustment, evaluated from the observational joint only:
    for each cause value c, sum_z P(effect | c, z) P(z). Returns one
    distribution over the effect per cause value."""
    z = frozenset(z)
    scm.require(cause, effect, *z)
    if not is_valid_backdoor_set(scm.dag, cause, effect, z) or not z <= set(scm.observed):
        raise InvalidAdjustmentSet(f"{sorted(z)} fails the back-door criterion for {cause} -> {effect}")
    obs = _observational(scm)
    z_vars = sorted(z)
    out: dict[str, Distribution] = {}
    for c in scm.domains[cause]:
        mass: dict[tuple[str, ...], float] = {}
        for e in scm.domains[effect]:
            terms = []
            for z_values in itertools.product(*(scm.domains[v] for v in z_vars)):
                z_assign = dict(zip(z_vars, z_values))
                pz = obs.prob_of(z_assign)
                if pz == 0.0:
                    continue
                base = obs.prob_of({cause: c, **z_assign})
                if base == 0.0:
                    continue
                terms.append(obs.prob_of({effect: e, cause: c, **z_assign}) / base * pz)
            mass[(e,)] = math.fsum(terms)
        out[c] = Distribution((effect,), mass)
    return out


def estimate_frontdoor(
    scm: DiscreteSCM, cause: str, effect: str, mediators: Iterable[str]
) -> dict[str, Distribution]:
    """Front-door adjustment from the observational joint restricted to
    observed variables: sum_m P(m | c) sum_c' P(effect | m, c') P(c')."""
    mediators = frozenset(mediators)
    scm.require(cause, effect, *mediators)
    if not is_valid_frontdoor_set(scm.dag, cause, effect, mediators):
        raise InvalidMediatorSet(
            f"{sorted(mediators)} fails the front-door conditions for {cause} -> {effect}"
        )
    obs = _observational(scm)
    m_vars = sorted(mediators)
    out: dict[str, Distribution] = {}
    for c in scm.domains[cause]:
        mass: dict[tuple[str, ...], float] = {}
        for e in scm.domains[effect]:
            terms = []
            for m_values in itertools.product(*(scm.domains[v] for v in m_vars)):
                m_assign = dict(zip(m_vars, m_values))
                base_c = obs.prob_of({cause: c})
                if base_c == 0.0:
                    continue
                p_m_given_c = obs.prob_of({cause: c, **m_assign}) / base_c
                if p_m_given_c == 0.0:
                    continue
                inner = []
                for c_prime in scm.domains[cause]:
                    base = obs.prob_of({cause: c_prime, **m_assign})
                    if base == 0.0:
                        continue
                    inner.append(
                        obs.prob_of({effect: e, cause: c_prime, **m_assign})
                        / base
                        * obs.prob_of({cause: c_prime})
                    )
                terms.append(p_m_given_c * math.fsum(inner))
            mass[(e,)] = math.fsum(terms)
        out[c] = Distribution((effect,), mass)
    return out


# --- Mediation ----------------------------------------------------------------


@dataclass(frozen=True)
class MediationResult:
    te: float
    nde: float
    nie: float
    assumptions_checked: tuple[bool, bool, bool]

    def to_dict(self) -> dict:
        return {
            "te": self.te,
            "nde": self.nde,
            "nie": self.nie,
            "assumptions_checked": list(self.assumptions_checked),
        }


def _has_directed_path(dag: Dag, source, target, avoiding: frozenset = frozenset()) -> bool:
    if source == target:
        return True
    frontier = [source]
    seen = {source}
    while frontier:
        node = frontier.pop()
        for child in dag.children_of(node):
            if child == target:
                return True
            if child in avoiding or child in seen:
                continue
            seen.add(child)
            frontier.append(child)
    return False


def _mediation_assumptions(dag: Dag, cause: str, mediator: str, effect: str) -> tuple[bool, bool, bool]:
    """Structural screen of the three identification assumptions: no latent
    cause-effect confounder, no latent mediator-effect confounder (given the
    cause), and no mediator-outcome confounder that is itself affected by
    the cause."""
    no_ce_confounder = not latent_confounders(dag, cause, effect)
    no_me_confounder = True
    for u in sorted(dag.latent - {cause, mediator, effect}, key=str):
        to_mediator = _has_directed_path(dag, u, mediator, frozenset({cause}))
        to_effect = _has_directed_path(dag, u, effect, frozenset({cause, mediator}))
        if to_mediator and to_effect:
            no_me_confounder = False
            break
    no_affected_confounder = True
    for w in sorted(dag.nodes - {cause, mediator, effect}, key=str):
        affected = _has_directed_path(dag, cause, w)
        confounds = _has_directed_path(dag, w, mediator, frozenset({cause})) and _has_directed_path(
            dag, w, effect, frozenset({cause, mediator})
        )
        if affected and confounds:
            no_affected_confounder = False
            break
    return (no_ce_confounder, no_me_confounder, no_affected_confounder)


def mediation_effects(
    scm: DiscreteSCM,
    cause: str,
    mediator: str,
    effect: str,
    baseline: str,
    treated: str,
) -> MediationResult:
    """Natural direct and indirect effects through a single mediator.

    NDE = sum_m [E(Y | c=treated, m) - E(Y | c=baseline, m)] P(m | c=baseline)
    NIE = sum_m E(Y | c=baseline, m) [P(m | c=treated) - P(m | c=baseline)]

    The total effect is computed independently by graph surgery as
    E[Y | do(treated)] - E[Y | do(baseline)].
    """
    scm.require_value(cause, baseline)
    scm.require_value(cause, treated)
    scm.require(mediator, effect)
    dag = scm.dag
    if mediator not in dag.children_of(cause) or effect not in dag.children_of(mediator):
        raise NotAChain(f"no chain {cause} -> {mediator} -> {effect} in the model")
    try:
        coding = {value: float(value) for value in scm.domains[effect]}
    except ValueError:
        raise NonNumericOutcome(
            f"domain of {effect} is not numerically coded: {list(scm.domains[effect])}"
        ) from None

    obs = _observational(scm)

    def mean_effect(given: dict[str, str]) -> float:
        base = obs.prob_of(given)
        if base == 0.0:
            return 0.0
        return math.fsum(
            coding[e] * obs.prob_of({effect: e, **given}) / base for e in scm.domains[effect]
        )

    def p_mediator(m: str, c: str) -> float:
        base = obs.prob_of({cause: c})
        if base == 0.0:
            return 0.0
        return obs.prob_of({mediator: m, cause: c}) / base

    nde = math.fsum(
        (mean_effect({cause: treated, mediator: m}) - mean_effect({cause: baseline, mediator: m}))
        * p_mediator(m, baseline)
        for m in scm.domains[mediator]
    )
    nie = math.fsum(
        mean_effect({cause: baseline, mediator: m})
        * (p_mediator(m, treated) - p_mediator(m, baseline))
        for m in scm.domains[mediator]
    )

    def surgery_mean(value: str) -> float:
        dist = interventional_distribution(scm, {cause: value}, (effect,))
        return math.fsum(coding[e] * p for (e,), p in dist.mass.items())

    te = surgery_mean(treated) - surgery_mean(baseline)
    return MediationResult(
        te=te, nde=nde, nie=nie, assumptions_checked=_mediation_assumptions(dag, cause, mediator, effect)
    )


# --- Counterfactuals ------------------------------------------------------------


@dataclass(frozen=True)
class CounterfactualQuery:
    evidence: dict[str, str]
    intervention: dict[str, str]
    query_var: str


def _deterministic_row(probs: Sequence[float]) -> Optional[int]:
    hits = [i for i, p in enumerate(probs) if p == 1.0]
    if len(hits) == 1 and all(p in (0.0, 1.0) for p in probs):
        return hits[0]
    return None


def is_canonical(scm: DiscreteSCM) -> bool:
    """Canonical deterministic-with-noise form: every variable with parents
    has a fully deterministic table; roots carry all randomness."""
    for var in scm.variables:
        cpt = scm.cpts[var]
        if not cpt.parents:
            continue
        if any(_deterministic_row(row) is None for row in cpt.table.values()):
            return False
    return True


def to_canonical_form(scm: DiscreteSCM, max_noise_domain: int = 4096) -> DiscreteSCM:
    """Rewrite each stochastic non-root variable as a deterministic function
    of its parents plus one fresh latent noise variable whose domain indexes
    response functions (one value choice per parent assignment); the noise
    prior is the row-wise product of the original conditional probabilities.
    """
    variables: list[str] = []
    domains: dict[str, tuple[str, ...]] = {}
    cpts: dict[str, Cpt] = {}
    latent = set(scm.latent)

    for var in scm.variables:
        cpt = scm.cpts[var]
        deterministic = not cpt.parents or all(
            _deterministic_row(row) is not None for row in cpt.table.values()
        )
        if deterministic:
            variables.append(var)
            domains[var] = scm.domains[var]
            cpts[var] = cpt
            continue

        rows = list(itertools.product(*(scm.domains[p] for p in cpt.parents)))
        k = len(scm.domains[var])
        if k ** len(rows) > max_noise_domain:
            raise DomainTooLarge(
                f"canonical noise domain for {var} would have {k ** len(rows)} values"
            )
        noise = f"u_{var}"
        while noise in scm.domains or noise in domains:
            noise += "_"
        responses = list(itertools.product(range(k), repeat=len(rows)))
        prior = []
        for response in responses:
            p = 1.0
            for row_index, row in enumerate(rows):
                p *= cpt.table[row][response[row_index]]
            prior.append(p)
        noise_domain = tuple(str(i) for i in range(len(responses)))
        variables.append(noise)
        domains[noise] = noise_domain
        cpts[noise] = Cpt(noise, (), {(): tuple(prior)})
        latent.add(noise)

        new_parents = cpt.parents + (noise,)
        table: dict[tuple[str, ...], tuple[float, ...]] = {}
        for row_index, row in enumerate(rows):
            for response_index, response in enumerate(responses):
                value_index = response[row_index]
                table[row + (str(response_index),)] = tuple(
                    1.0 if i == value_index else 0.0 for i in range(k)
                )
        variables.append(var)
        domains[var] = scm.domains[var]
        cpts[var] = Cpt(var, new_parents, table)

    return DiscreteSCM(
        variables=tuple(variables),
        domains=domains,
        cpts=cpts,
        latent=frozenset(latent),
        binding=scm.binding,
    )


def _propagate(
    scm: DiscreteSCM,
    order: Sequence[str],
    roots: Mapping[str, str],
    intervention: Mapping[str, str],
) -> dict[str, str]:
    values: dict[str, str] = {}
    for var in order:
        if var in intervention:
            values[var] = intervention[var]
            continue
        cpt = scm.cpts[var]
        if not cpt.parents:
            values[var] = roots[var]
            continue
        row = cpt.table[tuple(values[p] for p in cpt.parents)]
        index = _deterministic_row(row)
        assert index is not None  # guarded by the canonical-form check
        values[var] = scm.domains[var][index]
    return values


def counterfactual(scm: DiscreteSCM, query: CounterfactualQuery) -> Distribution:
    """Abduction-action-prediction, exact by enumeration over root noise.

    The SCM must be in canonical deterministic-with-noise form. The root
    posterior given the evidence is pushed through the intervened model.
    """
    if not is_canonical(scm):
        raise NotDeterministicForm(
            "counterfactuals need the canonical deterministic-with-noise form"
        )
    for var, value in {**query.evidence, **query.intervention}.items():
        scm.require_value(var, value)
    scm.require(query.query_var)

    order = scm.topological()
    roots = [v for v in order if not scm.cpts[v].parents]
    count = 1
    for var in roots:
        count *= len(scm.domains[var])
        if count > MAX_ASSIGNMENTS:
            raise DomainTooLarge("too many root noise assignments to enumerate")

    weights: dict[str, float] = {value: 0.0 for value in scm.domains[query.query_var]}
    total = 0.0
    for root_values in itertools.product(*(scm.domains[v] for v in roots)):
        assignment = dict(zip(roots, root_values))
        prior = 1.0
        for var in roots:
            cpt = scm.cpts[var]
            prior *= cpt.table[()][scm.domains[var].index(assignment[var])]
        if prior == 0.0:
            continue
        factual = _propagate(scm, order, assignment, {})
        if any(factual[var] != value for var, value in query.evidence.items()):
            continue
        total += prior
        twin = _propagate(scm, order, assignment, query.intervention)
        weights[twin[query.query_var]] += prior
    if total <= 0.0:
        raise ZeroProbabilityEvidence(f"evidence {query.evidence} has probability zero")
    mass = {(value,): weight / total for value, weight in sorted(weights.items())}
    return Distribution((query.query_var,), mass)


# --- Estimand evaluation ----------------------------------------------------------


def _domains_of(dist: Distribution) -> dict[str, list[str]]:
    out: dict[str, set[str]] = {v: set() for v in dist.variables}
    for assignment in dist.mass:
        for var, value in zip(dist.variables, assignment):
            out[var].add(value)
    return {v: sorted(values) for v, values in out.items()}


def evaluate_estimand(estimand: Estimand, dist: Distribution, env: Mapping[Var, str]) -> float:
    """Numeric value of an identified estimand against an observational
    distribution; ``env`` binds the free cause/effect occurrences to values."""
    if estimand.expression is None:
        raise ValueError("cannot evaluate an estimand without an expression")
    domains = _domains_of(dist)

    def assignment_of(variables: Sequence[Var], bound: Mapping[Var, str]) -> dict[str, str]:
        out: dict[str, str] = {}
        for var in variables:
            if var not in bound:
                raise ValueError(f"unbound estimand variable {var}")
            out[str(var.node)] = bound[var]
        return out

    def walk(expr, bound: Mapping[Var, str]) -> float:
        if isinstance(expr, Prob):
            target = assignment_of(expr.target, bound)
            if not expr.given:
                return dist.prob_of(target)
            given = assignment_of(expr.given, bound)
            base = dist.prob_of(given)
            if base == 0.0:
                return 0.0
            return dist.prob_of({**target, **given}) / base
        if isinstance(expr, SumOver):
            total = 0.0
            combos = itertools.product(*(domains[str(v.node)] for v in expr.variables))
            for values in combos:
                inner = dict(bound)
                inner.update(dict(zip(expr.variables, values)))
                total += walk(expr.body, inner)
            return total
        if isinstance(expr, Product):
            out = 1.0
            for factor in expr.factors:
                out *= walk(factor, bound)
            return out
        if isinstance(expr, Difference):
            return walk(expr.left, bound) - walk(expr.right, bound)
        raise TypeError(f"unknown expression node {type(expr).__name__}")

    return walk(estimand.expression, dict(env))


# --- Potential-outcome units ---------------------------------------------------


def do_text(intervention: Mapping[str, str]) -> str:
    inner = ", ".join(f"{var} = {value}" for var, value in sorted(intervention.items()))
    return f"do({inner})"


def build_potential_outcome_unit(
    store: QuadStore,
    minter: IdMinter,
    observed_unit: Iri,
    counterfactual_result: Distribution,
    universal_unit: Iri,
    intervention: Mapping[str, str],
    method: Iri,
) -> CompoundUnit:
    """Package an observed outcome, a freshly minted counterfactual
    statement unit, and the universal causal statement behind the reasoning
    into a potential-outcome compound unit."""
    for unit_id in (observed_unit, universal_unit):
        if not unit_exists(store, unit_id):
            raise DanglingMember(f"referenced unit {unit_id} does not exist")

    universal = load_unit(store, universal_unit)
    outcome_class: Optional[Iri] = None
    if isinstance(universal, StatementUnit):
        primary = primary_triple(universal)
        if primary is not None and isinstance(primary.o, Iri):
            classes = target_classes(universal.content, primary.o)
            if classes:
                outcome_class = classes[0]

    if outcome_class is not None:
        outcome_res, typing = quantified_resource(minter, ResourceKind.SOME_INSTANCE, outcome_class)
    else:
        outcome_res = minter.fresh_instance()
        typing = [Triple(outcome_res, vocab.RDF_TYPE, vocab.SOME_INSTANCE_RESOURCE)]

    distribution_json = json.dumps(counterfactual_result.to_json_map(), sort_keys=True)
    confidence = max(counterfactual_result.mass.values(), default=0.0)
    content = typing + [
        Triple(outcome_res, vocab.HAS_PREDICTED_DISTRIBUTION, Literal(distribution_json))
    ]
    cf_unit = mint_statement_unit(
        store,
        minter,
        content,
        [vocab.COUNTERFACTUAL_STATEMENT_UNIT, vocab.CONTINGENT_STATEMENT_UNIT],
        meta_pairs=[
            (vocab.APPLIED_INTERVENTION, Literal(do_text(intervention))),
            (vocab.APPLIED_METHOD, method),
            (vocab.HAS_CONFIDENCE, Literal(repr(confidence))),
            (vocab.DERIVED_FROM, universal_unit),
        ],
    )
    return mint_compound_unit(
        store,
        minter,
        [observed_unit, cf_unit.id, universal_unit],
        [vocab.POTENTIAL_OUTCOME_COMPOUND_UNIT],
        meta_pairs=[(vocab.APPLIED_INTERVENTION, Literal(do_text(intervention)))],
    )
