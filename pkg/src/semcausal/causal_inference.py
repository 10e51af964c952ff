"""Identification machinery over directed acyclic graphs.

Path enumeration and blocking, d-separation, back-door and front-door
criteria, instrumental variables, and the three do-calculus rules, all
pure functions over an immutable Dag. Unobserved variables are explicit
nodes flagged latent; criteria quantify over observed nodes only.

d-separation is implemented as a reachability sweep over (node,
direction) states; path enumeration plus local blocking rules exists
alongside it as the user-facing path API.

Node labels are opaque orderable hashables (IRIs for causal-map graphs,
plain strings for SCM variables).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Hashable, Iterable, Mapping, Optional, Sequence

from .errors import CyclicGraph, OverlappingSets, UnknownVariable

Node = Hashable

__all__ = [
    "Dag",
    "Path",
    "AdjustmentSet",
    "Estimand",
    "Var",
    "Prob",
    "SumOver",
    "Product",
    "Difference",
    "enumerate_paths",
    "path_blocked",
    "d_separated",
    "d_separated_sets",
    "backdoor_sets",
    "is_valid_backdoor_set",
    "frontdoor_check",
    "is_valid_frontdoor_set",
    "find_instruments",
    "latent_confounders",
    "do_rule_applicable",
    "identify_effect",
]


def _label(node: Node) -> str:
    return getattr(node, "value", None) or str(node)


@dataclass(frozen=True)
class Dag:
    """Immutable DAG given by a parent map; ``latent`` marks unobserved nodes."""

    nodes: frozenset
    parents: Mapping[Node, frozenset]
    latent: frozenset = frozenset()

    def __post_init__(self) -> None:
        if not self.latent <= self.nodes:
            raise UnknownVariable("latent set references unknown nodes")
        order: dict[Node, int] = {}
        state: dict[Node, int] = {}

        def visit(node: Node) -> None:
            stack = [(node, iter(sorted(self.parents.get(node, ()), key=_label)))]
            state[node] = 1
            while stack:
                current, parents_iter = stack[-1]
                advanced = False
                for parent in parents_iter:
                    mark = state.get(parent)
                    if mark == 1:
                        raise CyclicGraph(f"cycle through {_label(parent)}")
                    if mark is None:
                        state[parent] = 1
                        stack.append(
                            (parent, iter(sorted(self.parents.get(parent, ()), key=_label)))
                        )
                        advanced = True
                        break
                if not advanced:
                    state[current] = 2
                    order[current] = len(order)
                    stack.pop()

        for node in sorted(self.nodes, key=_label):
            if node not in state:
                visit(node)

    @classmethod
    def from_edges(
        cls,
        edges: Iterable[tuple[Node, Node]],
        nodes: Iterable[Node] = (),
        latent: Iterable[Node] = (),
    ) -> "Dag":
        parents: dict[Node, set] = {}
        all_nodes = set(nodes)
        for src, dst in edges:
            all_nodes.add(src)
            all_nodes.add(dst)
            parents.setdefault(dst, set()).add(src)
        all_nodes.update(latent)
        return cls(
            nodes=frozenset(all_nodes),
            parents={n: frozenset(parents.get(n, ())) for n in all_nodes},
            latent=frozenset(latent),
        )

    @property
    def observed(self) -> frozenset:
        return self.nodes - self.latent

    def parents_of(self, node: Node) -> frozenset:
        return self.parents.get(node, frozenset())

    def children_of(self, node: Node) -> frozenset:
        return frozenset(c for c in self.nodes if node in self.parents.get(c, ()))

    def edges(self) -> list[tuple[Node, Node]]:
        return sorted(
            ((p, c) for c in self.nodes for p in self.parents.get(c, ())),
            key=lambda e: (_label(e[0]), _label(e[1])),
        )

    def descendants(self, node: Node) -> frozenset:
        out: set = set()
        frontier = [node]
        while frontier:
            current = frontier.pop()
            for child in self.children_of(current):
                if child not in out:
                    out.add(child)
                    frontier.append(child)
        return frozenset(out)

    def ancestors(self, nodes: Iterable[Node]) -> frozenset:
        out: set = set()
        frontier = list(nodes)
        while frontier:
            current = frontier.pop()
            for parent in self.parents.get(current, ()):
                if parent not in out:
                    out.add(parent)
                    frontier.append(parent)
        return frozenset(out)

    def remove_edges_into(self, targets: Iterable[Node]) -> "Dag":
        targets = set(targets)
        return Dag(
            nodes=self.nodes,
            parents={
                n: (frozenset() if n in targets else self.parents.get(n, frozenset()))
                for n in self.nodes
            },
            latent=self.latent,
        )

    def remove_edges_out_of(self, sources: Iterable[Node]) -> "Dag":
        sources = set(sources)
        return Dag(
            nodes=self.nodes,
            parents={
                n: frozenset(p for p in self.parents.get(n, ()) if p not in sources)
                for n in self.nodes
            },
            latent=self.latent,
        )

    def require(self, *nodes: Node) -> None:
        for node in nodes:
            if node not in self.nodes:
                raise UnknownVariable(f"{_label(node)} is not a node of this graph")


@dataclass(frozen=True)
class Path:
    """Simple path ignoring edge direction; ``forward[i]`` is True when the
    edge between nodes[i] and nodes[i+1] points forward along the walk."""

    nodes: tuple
    forward: tuple[bool, ...]

    def __len__(self) -> int:
        return len(self.forward)


def enumerate_paths(dag: Dag, x: Node, y: Node) -> list[Path]:
    """All simple paths between x and y, ignoring edge direction."""
    dag.require(x, y)
    if x == y:
        raise UnknownVariable("path endpoints must differ")
    paths: list[Path] = []

    def neighbors(node: Node) -> list[tuple[Node, bool]]:
        out = [(c, True) for c in dag.children_of(node)]
        out += [(p, False) for p in dag.parents_of(node)]
        out.sort(key=lambda step: (_label(step[0]), step[1]))
        return out

    def walk(node: Node, trail: list, dirs: list[bool]) -> None:
        for nxt, fwd in neighbors(node):
            if nxt in trail:
                continue
            if nxt == y:
                paths.append(Path(tuple(trail + [nxt]), tuple(dirs + [fwd])))
                continue
            trail.append(nxt)
            dirs.append(fwd)
            walk(nxt, trail, dirs)
            trail.pop()
            dirs.pop()

    walk(x, [x], [])
    return paths


def path_blocked(path: Path, z: Iterable[Node], dag: Dag) -> bool:
    """Local blocking rules: a chain or fork node blocks when conditioned
    on; a collider blocks unless itself or one of its descendants is
    conditioned on."""
    z = set(z)
    for i in range(1, len(path.nodes) - 1):
        node = path.nodes[i]
        into_left = path.forward[i - 1]
        into_right = not path.forward[i]
        if into_left and into_right:  # collider at node
            if not ({node} | set(dag.descendants(node))) & z:
                return True
        else:  # chain or fork at node
            if node in z:
                return True
    return False


def d_separated_sets(dag: Dag, xs: Iterable[Node], ys: Iterable[Node], z: Iterable[Node]) -> bool:
    """Set-level d-separation via reachability over (node, direction) states."""
    xs, ys, z = set(xs), set(ys), set(z)
    for node in xs | ys | z:
        dag.require(node)
    if xs & z or ys & z:
        raise OverlappingSets("endpoint sets must be disjoint from the conditioning set")
    if xs & ys:
        return False

    conditioned_ancestors = z | set(dag.ancestors(z))
    visited: set[tuple[Node, str]] = set()
    frontier: list[tuple[Node, str]] = [(x, "up") for x in xs]
    while frontier:
        node, direction = frontier.pop()
        if (node, direction) in visited:
            continue
        visited.add((node, direction))
        if node not in z and node in ys:
            return False
        if direction == "up" and node not in z:
            for parent in dag.parents_of(node):
                frontier.append((parent, "up"))
            for child in dag.children_of(node):
                frontier.append((child, "down"))
        elif direction == "down":
            if node not in z:
                for child in dag.children_of(node):
                    frontier.append((child, "down"))
            if node in conditioned_ancestors:
                for parent in dag.parents_of(node):
                    frontier.append((parent, "up"))
    return True


def d_separated(dag: Dag, x: Node, y: Node, z: Iterable[Node] = ()) -> bool:
    """True iff every path between x and y is blocked given z."""
    return d_separated_sets(dag, {x}, {y}, z)


def _backdoor_paths(dag: Dag, cause: Node, effect: Node) -> list[Path]:
    return [p for p in enumerate_paths(dag, cause, effect) if not p.forward[0]]


def is_valid_backdoor_set(dag: Dag, cause: Node, effect: Node, z: Iterable[Node]) -> bool:
    """Back-door criterion: z contains no descendant of the cause and
    blocks every path entering the cause through an arrowhead."""
    z = set(z)
    dag.require(cause, effect, *z)
    if z & ({cause, effect} | set(dag.descendants(cause))):
        return False
    return all(path_blocked(p, z, dag) for p in _backdoor_paths(dag, cause, effect))


@dataclass(frozen=True)
class AdjustmentSet:
    variables: frozenset
    minimal: bool = True

    def sorted(self) -> list:
        return sorted(self.variables, key=_label)


def backdoor_sets(dag: Dag, cause: Node, effect: Node, max_size: int = 4) -> list[AdjustmentSet]:
    """All minimal back-door adjustment sets of size <= max_size over the
    observed non-descendants of the cause, in lexicographic order."""
    dag.require(cause, effect)
    if cause == effect:
        raise UnknownVariable("cause and effect must differ")
    candidates = sorted(
        dag.observed - {cause, effect} - set(dag.descendants(cause)), key=_label
    )
    backdoor = _backdoor_paths(dag, cause, effect)
    valid: list[frozenset] = []
    for size in range(0, max_size + 1):
        for combo in itertools.combinations(candidates, size):
            z = frozenset(combo)
            if any(z > smaller for smaller in valid):
                continue
            if all(path_blocked(p, z, dag) for p in backdoor):
                valid.append(z)
    minimal = [z for z in valid if not any(other < z for other in valid)]
    minimal.sort(key=lambda z: tuple(sorted(_label(v) for v in z)))
    return [AdjustmentSet(z, minimal=True) for z in minimal]


def _directed_paths(dag: Dag, x: Node, y: Node) -> list[tuple]:
    """All directed simple paths x -> ... -> y as node tuples."""
    out: list[tuple] = []

    def walk(node: Node, trail: list) -> None:
        for child in sorted(dag.children_of(node), key=_label):
            if child in trail:
                continue
            if child == y:
                out.append(tuple(trail + [child]))
                continue
            trail.append(child)
            walk(child, trail)
            trail.pop()

    walk(x, [x])
    return out


def is_valid_frontdoor_set(
    dag: Dag, cause: Node, effect: Node, mediators: Iterable[Node]
) -> bool:
    """Front-door conditions for a non-empty observed mediator set: it
    intercepts every directed path from cause to effect, no back-door path
    from the cause reaches any mediator unblocked, and each mediator's
    back-door paths to the effect are blocked by the cause plus the other
    mediators."""
    mediators = frozenset(mediators)
    dag.require(cause, effect, *mediators)
    if not mediators or not mediators <= dag.observed - {cause, effect}:
        return False
    directed = _directed_paths(dag, cause, effect)
    if not directed:
        return False
    for path in directed:
        if not set(path[1:-1]) & mediators:
            return False
    for m in sorted(mediators, key=_label):
        for path in _backdoor_paths(dag, cause, m):
            if not path_blocked(path, frozenset(), dag):
                return False
        blockers = {cause} | (mediators - {m})
        for path in _backdoor_paths(dag, m, effect):
            if not path_blocked(path, blockers, dag):
                return False
    return True


def frontdoor_check(
    dag: Dag, cause: Node, effect: Node, max_size: int = 4
) -> Optional[frozenset]:
    """Smallest observed mediator set satisfying the front-door conditions,
    or None when no such set exists within the size bound."""
    dag.require(cause, effect)
    candidates = sorted(dag.observed - {cause, effect}, key=_label)
    for size in range(1, max_size + 1):
        for combo in itertools.combinations(candidates, size):
            mediators = frozenset(combo)
            if is_valid_frontdoor_set(dag, cause, effect, mediators):
                return mediators
    return None


def latent_confounders(dag: Dag, cause: Node, effect: Node) -> list:
    """Latent nodes with a directed path into the cause and one into the
    effect that avoids the cause."""
    out = []
    for u in sorted(dag.latent - {cause, effect}, key=_label):
        to_cause = any(True for _ in _directed_paths(dag, u, cause))
        to_effect = any(not ({cause} & set(p[1:-1])) for p in _directed_paths(dag, u, effect))
        if to_cause and to_effect:
            out.append(u)
    return out


def find_instruments(dag: Dag, cause: Node, effect: Node) -> list:
    """Observed nodes that influence the cause, reach the effect only
    through the cause, and are independent of the latent confounders of
    the cause-effect pair."""
    dag.require(cause, effect)
    confounders = latent_confounders(dag, cause, effect)
    instruments = []
    for z in sorted(dag.observed - {cause, effect}, key=_label):
        if not _directed_paths(dag, z, cause):
            continue
        to_effect = _directed_paths(dag, z, effect)
        if any(cause not in p for p in to_effect):
            continue
        if any(not d_separated(dag, z, u) for u in confounders):
            continue
        instruments.append(z)
    return instruments


def do_rule_applicable(
    dag: Dag,
    rule: int,
    y: Iterable[Node],
    x: Iterable[Node],
    z: Iterable[Node],
    w: Iterable[Node],
) -> bool:
    """Graphical applicability of do-calculus rules 1-3 for the expression
    P(y | do(x), [do(]z[)], w), checked by d-separation in the mutilated graph:

    rule 1 (drop the observation z):   y indep z | x,w  in G with edges into x removed
    rule 2 (exchange do(z) for z):     y indep z | x,w  in G minus edges into x and out of z
    rule 3 (drop the intervention z):  y indep z | x,w  in G minus edges into x and into
                                       z', where z' excludes ancestors of w in G-minus-into-x
    """
    y, x, z, w = frozenset(y), frozenset(x), frozenset(z), frozenset(w)
    for a, b in itertools.combinations((y, x, z, w), 2):
        if a & b:
            raise OverlappingSets("y, x, z, w must be pairwise disjoint")
    if not z:
        return True
    g_bar_x = dag.remove_edges_into(x)
    if rule == 1:
        g = g_bar_x
    elif rule == 2:
        g = g_bar_x.remove_edges_out_of(z)
    elif rule == 3:
        z_prime = z - set(g_bar_x.ancestors(w)) if w else z
        g = g_bar_x.remove_edges_into(z_prime)
    else:
        raise ValueError(f"rule must be 1, 2, or 3, got {rule}")
    return d_separated_sets(g, y, z, x | w)


# --- Estimands ---------------------------------------------------------------


@dataclass(frozen=True)
class Var:
    """A variable occurrence; ``primes`` distinguishes bound duplicates
    (e.g. the re-summed cause in the front-door formula)."""

    node: Node
    primes: int = 0

    def name(self, name_of) -> str:
        return name_of(self.node) + "'" * self.primes


@dataclass(frozen=True)
class Prob:
    target: tuple[Var, ...]
    given: tuple[Var, ...] = ()

    def render(self, name_of) -> str:
        target = ",".join(v.name(name_of) for v in self.target)
        if not self.given:
            return f"P({target})"
        return f"P({target}|{','.join(v.name(name_of) for v in self.given)})"

    def to_json(self, name_of) -> dict:
        return {
            "type": "prob",
            "target": [v.name(name_of) for v in self.target],
            "given": [v.name(name_of) for v in self.given],
        }


@dataclass(frozen=True)
class SumOver:
    variables: tuple[Var, ...]
    body: "Expression"

    def render(self, name_of) -> str:
        bound = ",".join(v.name(name_of) for v in self.variables)
        return f"sum_{{{bound}}} {self.body.render(name_of)}"

    def to_json(self, name_of) -> dict:
        return {
            "type": "sum",
            "variables": [v.name(name_of) for v in self.variables],
            "body": self.body.to_json(name_of),
        }


@dataclass(frozen=True)
class Product:
    factors: tuple["Expression", ...]

    def render(self, name_of) -> str:
        return " * ".join(f.render(name_of) for f in self.factors)

    def to_json(self, name_of) -> dict:
        return {"type": "product", "factors": [f.to_json(name_of) for f in self.factors]}


@dataclass(frozen=True)
class Difference:
    left: "Expression"
    right: "Expression"

    def render(self, name_of) -> str:
        return f"({self.left.render(name_of)} - {self.right.render(name_of)})"

    def to_json(self, name_of) -> dict:
        return {
            "type": "difference",
            "left": self.left.to_json(name_of),
            "right": self.right.to_json(name_of),
        }


# Expression nodes: Prob | SumOver | Product | Difference (duck-typed via
# render/to_json); no common base class needed.


@dataclass(frozen=True)
class Estimand:
    """Result of identification: a strategy tag plus, when identified, a
    do-free expression over observational factors."""

    strategy: str  # backdoor | frontdoor | iv | do-calculus | unidentified
    cause: Node
    effect: Node
    expression: Optional[object] = None
    adjustment: frozenset = frozenset()
    mediators: frozenset = frozenset()
    instruments: tuple = ()
    derivation: tuple[str, ...] = ()

    @property
    def identified(self) -> bool:
        return self.expression is not None

    def render(self, name_of=None) -> str:
        name_of = name_of or _label
        if self.expression is None:
            if self.strategy == "iv":
                names = ",".join(name_of(i) for i in self.instruments)
                return f"IV[{names}] for P({name_of(self.effect)}|do({name_of(self.cause)}))"
            return f"UNIDENTIFIED P({name_of(self.effect)}|do({name_of(self.cause)}))"
        return self.expression.render(name_of)

    def to_json(self, name_of=None) -> dict:
        name_of = name_of or _label
        return {
            "strategy": self.strategy,
            "cause": name_of(self.cause),
            "effect": name_of(self.effect),
            "identified": self.identified,
            "estimand": self.render(name_of),
            "expression": None if self.expression is None else self.expression.to_json(name_of),
            "adjustment": sorted(name_of(v) for v in self.adjustment),
            "mediators": sorted(name_of(v) for v in self.mediators),
            "instruments": [name_of(v) for v in self.instruments],
            "derivation": list(self.derivation),
        }


def backdoor_expression(cause: Node, effect: Node, z: Iterable[Node]) -> object:
    z_vars = tuple(Var(v) for v in sorted(z, key=_label))
    y, x = Var(effect), Var(cause)
    if not z_vars:
        return Prob((y,), (x,))
    return SumOver(z_vars, Product((Prob((y,), (x,) + z_vars), Prob(z_vars))))


def frontdoor_expression(cause: Node, effect: Node, mediators: Iterable[Node]) -> object:
    m_vars = tuple(Var(v) for v in sorted(mediators, key=_label))
    y, x = Var(effect), Var(cause)
    x_resummed = Var(cause, primes=1)
    inner = SumOver(
        (x_resummed,), Product((Prob((y,), m_vars + (x_resummed,)), Prob((x_resummed,))))
    )
    return SumOver(m_vars, Product((Prob(m_vars, (x,)), inner)))


def _do_calculus_search(
    dag: Dag, cause: Node, effect: Node, depth: int
) -> Optional[tuple[frozenset, tuple[str, ...]]]:
    """Breadth-first rewrite of P(effect | do(D), O) states, starting from
    do({cause}); returns the observation set and rule trace of the first
    intervention-free state reached."""
    y = frozenset({effect})
    start = (frozenset({cause}), frozenset())
    seen = {start}
    queue: list[tuple[frozenset, frozenset, tuple[str, ...]]] = [(start[0], start[1], ())]
    observed = sorted(dag.observed - {effect}, key=_label)

    for _ in range(depth):
        next_queue: list[tuple[frozenset, frozenset, tuple[str, ...]]] = []
        for do_set, obs_set, trace in queue:
            if not do_set:
                return obs_set, trace
            moves: list[tuple[frozenset, frozenset, str]] = []
            for size in range(1, len(do_set) + 1):
                for zc in itertools.combinations(sorted(do_set, key=_label), size):
                    z = frozenset(zc)
                    rest = do_set - z
                    names = ",".join(_label(v) for v in sorted(z, key=_label))
                    if do_rule_applicable(dag, 2, y, rest, z, obs_set):
                        moves.append((rest, obs_set | z, f"rule2:do({names})->obs"))
                    if do_rule_applicable(dag, 3, y, rest, z, obs_set):
                        moves.append((rest, obs_set, f"rule3:drop do({names})"))
            for v in observed:
                if v in do_set or v in obs_set:
                    continue
                if do_rule_applicable(dag, 1, y, do_set, frozenset({v}), obs_set):
                    moves.append((do_set, obs_set | {v}, f"rule1:insert obs({_label(v)})"))
            for wc in sorted(obs_set, key=_label):
                z = frozenset({wc})
                if do_rule_applicable(dag, 1, y, do_set, z, obs_set - z):
                    moves.append((do_set, obs_set - z, f"rule1:drop obs({_label(wc)})"))
            for new_do, new_obs, step in moves:
                state = (new_do, new_obs)
                if state in seen:
                    continue
                seen.add(state)
                next_queue.append((new_do, new_obs, trace + (step,)))
        queue = next_queue
        for do_set, obs_set, trace in queue:
            if not do_set:
                return obs_set, trace
    return None


def identify_effect(
    dag: Dag, cause: Node, effect: Node, max_size: int = 4, search_depth: int = 6
) -> Estimand:
    """Identify P(effect | do(cause)) as an observational expression.

    Tries the back-door criterion (smallest minimal set, lexicographic
    tie-break), then front-door, then instrumental variables (tagged, no
    nonparametric closed form), then a depth-limited do-calculus rewrite
    search. Returns an unidentified estimand when everything fails."""
    dag.require(cause, effect)

    sets = backdoor_sets(dag, cause, effect, max_size=max_size)
    if sets:
        best = min(sets, key=lambda s: (len(s.variables), tuple(sorted(map(_label, s.variables)))))
        return Estimand(
            strategy="backdoor",
            cause=cause,
            effect=effect,
            expression=backdoor_expression(cause, effect, best.variables),
            adjustment=best.variables,
        )

    mediators = frontdoor_check(dag, cause, effect, max_size=max_size)
    if mediators is not None:
        return Estimand(
            strategy="frontdoor",
            cause=cause,
            effect=effect,
            expression=frontdoor_expression(cause, effect, mediators),
            mediators=mediators,
        )

    instruments = find_instruments(dag, cause, effect)
    if instruments:
        return Estimand(
            strategy="iv", cause=cause, effect=effect, instruments=tuple(instruments)
        )

    found = _do_calculus_search(dag, cause, effect, depth=search_depth)
    if found is not None:
        obs, trace = found
        given = tuple(Var(v) for v in sorted(obs, key=_label))
        if cause in obs:
            given = (Var(cause),) + tuple(v for v in given if v.node != cause)
        return Estimand(
            strategy="do-calculus",
            cause=cause,
            effect=effect,
            expression=Prob((Var(effect),), given),
            derivation=trace,
        )

    return Estimand(strategy="unidentified", cause=cause, effect=effect)
