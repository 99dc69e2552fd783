"""Symptom mapping, winner decision, prior biasing and hierarchical routing.

A hierarchy is a tree of concept-map nodes. Classification starts at the
root, maps the named symptoms onto that node's input concepts, iterates to
steady state, picks the winning output concept, and follows that label's
route to either a child node or a leaf diagnosis string.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from typing import Mapping, NamedTuple

from .engine import InferenceResult, InferenceStatus, StateVector, run
from .model import ConceptKind, FcmModel
from .rules import RuleConfig, UpdateRule

SymptomMap = Mapping[str, float]

TIE_THRESHOLD = 1e-9


class FillPolicy(str, Enum):
    ZERO = "zero"
    NEUTRAL = "neutral"


class PathStatus(str, Enum):
    COMPLETE = "complete"
    NON_CONVERGENT = "non-convergent"


class MappedSymptoms(NamedTuple):
    state: StateVector
    unmatched: tuple[str, ...]


@dataclass(frozen=True)
class WinnerDecision:
    label: str
    value: float
    runner_up_label: str
    runner_up_value: float
    margin: float
    ambiguous: bool


@dataclass(frozen=True)
class Route:
    """Where a winning output label leads: a child node id or a leaf diagnosis."""

    node: str | None = None
    leaf: str | None = None

    def __post_init__(self) -> None:
        if (self.node is None) == (self.leaf is None):
            raise ValueError("route must set exactly one of node/leaf")


@dataclass(frozen=True)
class HierarchyNode:
    node_id: str
    model: FcmModel
    routes: Mapping[str, Route]
    rule_config: RuleConfig
    model_ref: str = ""
    rule_overrides: Mapping[str, object] = field(default_factory=dict)


@dataclass(frozen=True)
class HierarchySpec:
    root: str
    nodes: Mapping[str, HierarchyNode]


@dataclass(frozen=True)
class PathStep:
    node_id: str
    winner: str
    value: float
    runner_up_value: float
    margin: float
    ambiguous: bool


@dataclass(frozen=True)
class DiagnosisPath:
    steps: tuple[PathStep, ...]
    results: tuple[InferenceResult, ...]
    diagnosis: str
    status: PathStatus
    failed_node: str | None = None


def default_fill(rule: UpdateRule) -> FillPolicy:
    # Under the rescaled rule 0.5 is the inactive value, so neutral fill
    # leaves missing symptoms without influence; the other rules treat 0 that way.
    return FillPolicy.NEUTRAL if rule is UpdateRule.RESCALED else FillPolicy.ZERO


def default_initial_output(rule: UpdateRule) -> float:
    return 0.5 if rule is UpdateRule.RESCALED else 0.0


def map_symptoms(
    symptoms: SymptomMap,
    model: FcmModel,
    fill_policy: FillPolicy | None = None,
    initial_output: float | None = None,
) -> MappedSymptoms:
    """Place named severities onto the model's input concepts.

    Missing inputs take the fill value (0 or 0.5); output concepts take the
    initial output value; symptom labels the model does not know are
    returned as warnings rather than dropped silently. Defaults for both
    policies follow the model's configured update rule.
    """
    rule = model.default_rule_config.rule
    if fill_policy is None:
        fill_policy = default_fill(rule)
    if initial_output is None:
        initial_output = default_initial_output(rule)
    if not (0.0 <= initial_output <= 1.0):
        raise ValueError(f"initial output value {initial_output} outside [0, 1]")

    for label, severity in symptoms.items():
        if not label:
            raise ValueError("symptom labels must be nonempty")
        if not (0.0 <= severity <= 1.0):
            raise ValueError(f"severity for {label!r} is {severity}, outside [0, 1]")

    fill = 0.0 if fill_policy is FillPolicy.ZERO else 0.5
    values = []
    used = set()
    for concept in model.concepts:
        if concept.kind is ConceptKind.OUTPUT:
            values.append(float(initial_output))
        elif concept.label in symptoms:
            values.append(float(symptoms[concept.label]))
            used.add(concept.label)
        else:
            values.append(fill)
    unmatched = tuple(lab for lab in symptoms if lab not in used)
    return MappedSymptoms(tuple(values), unmatched)


def decide_winner(result: InferenceResult, model: FcmModel) -> WinnerDecision:
    """Pick the output concept with the largest final value.

    Values within ``TIE_THRESHOLD`` of the maximum count as tied; the lowest
    concept index wins and the decision is flagged ambiguous. The margin to
    the runner-up never goes below zero.
    """
    outputs = model.output_indices
    if len(outputs) < 2:
        raise ValueError(f"winner decision needs >= 2 output concepts, model has {len(outputs)}")
    final = result.final
    best = max(final[i] for i in outputs)
    tied = [i for i in outputs if best - final[i] < TIE_THRESHOLD]
    winner = tied[0]
    rest = [i for i in outputs if i != winner]
    runner = max(rest, key=lambda i: (final[i], -i))
    margin = max(0.0, final[winner] - final[runner])
    return WinnerDecision(
        label=model.concepts[winner].label,
        value=final[winner],
        runner_up_label=model.concepts[runner].label,
        runner_up_value=final[runner],
        margin=margin,
        ambiguous=len(tied) > 1,
    )


def apply_prior_bias(
    state: StateVector, biases: Mapping[str, float], model: FcmModel
) -> StateVector:
    """Overwrite named output concepts' initial values (risk-factor priors)."""
    values = list(state)
    for label, value in biases.items():
        idx = model.index_of(label)
        if model.concepts[idx].kind is not ConceptKind.OUTPUT:
            raise ValueError(f"bias target {label!r} is not an output concept")
        if not (0.0 <= value <= 1.0):
            raise ValueError(f"bias for {label!r} is {value}, outside [0, 1]")
        values[idx] = float(value)
    return tuple(values)


def validate_hierarchy(spec: HierarchySpec) -> list[str]:
    """Return every structural violation; empty list means a well-formed tree."""
    report: list[str] = []
    if spec.root not in spec.nodes:
        report.append(f"root {spec.root!r} is not a node")
        return report

    referenced: dict[str, str] = {}
    for node_id, node in spec.nodes.items():
        if node.node_id != node_id:
            report.append(f"node keyed {node_id!r} carries id {node.node_id!r}")
        labels = set(node.model.output_labels)
        routed = set(node.routes)
        for missing in sorted(labels - routed):
            report.append(f"node {node_id!r} has no route for output {missing!r}")
        for extra in sorted(routed - labels):
            report.append(f"node {node_id!r} routes unknown output {extra!r}")
        for label, route in node.routes.items():
            if route.node is not None:
                if route.node not in spec.nodes:
                    report.append(
                        f"node {node_id!r} routes {label!r} to missing node {route.node!r}"
                    )
                elif route.node in referenced:
                    report.append(
                        f"node {route.node!r} has two parents: {referenced[route.node]!r} and {node_id!r}"
                    )
                else:
                    referenced[route.node] = node_id
            elif not route.leaf:
                report.append(f"node {node_id!r} route {label!r} has an empty leaf diagnosis")

    if spec.root in referenced:
        report.append(f"root {spec.root!r} is referenced by node {referenced[spec.root]!r}")

    # tree reachability: every node must be reachable from the root
    seen = set()
    stack = [spec.root]
    while stack:
        cur = stack.pop()
        if cur in seen or cur not in spec.nodes:
            continue
        seen.add(cur)
        for route in spec.nodes[cur].routes.values():
            if route.node is not None:
                stack.append(route.node)
    for orphan in sorted(set(spec.nodes) - seen):
        report.append(f"node {orphan!r} is unreachable from the root")
    return report


def classify(
    hierarchy: HierarchySpec,
    symptoms: SymptomMap,
    biases: Mapping[str, float] | None = None,
) -> DiagnosisPath:
    """Route a symptom map through the hierarchy to a leaf diagnosis.

    Each node maps the symptoms independently (labels unused at one level
    may match another), applies any biases naming its own output concepts,
    runs to steady state and follows the winner's route. A node that fails
    to converge terminates the path with an empty diagnosis.
    """
    if biases:
        known = {lab for node in hierarchy.nodes.values() for lab in node.model.output_labels}
        unknown = sorted(set(biases) - known)
        if unknown:
            raise ValueError(f"bias target(s) {unknown} are not output concepts of any node")

    steps: list[PathStep] = []
    results: list[InferenceResult] = []
    current = hierarchy.root
    visited = set()
    while True:
        if current in visited:
            raise ValueError(f"hierarchy routing revisits node {current!r}; not a tree")
        visited.add(current)
        node = hierarchy.nodes[current]
        cfg = node.rule_config
        state, _ = map_symptoms(symptoms, node.model, default_fill(cfg.rule),
                                default_initial_output(cfg.rule))
        if biases:
            own = {k: v for k, v in biases.items() if k in node.model.output_labels}
            if own:
                state = apply_prior_bias(state, own, node.model)
        result = run(node.model, state, cfg)
        results.append(result)
        if result.status is not InferenceStatus.CONVERGED:
            return DiagnosisPath(
                tuple(steps), tuple(results), "", PathStatus.NON_CONVERGENT, current
            )
        decision = decide_winner(result, node.model)
        steps.append(
            PathStep(
                node_id=current,
                winner=decision.label,
                value=decision.value,
                runner_up_value=decision.runner_up_value,
                margin=decision.margin,
                ambiguous=decision.ambiguous,
            )
        )
        route = node.routes[decision.label]
        if route.leaf is not None:
            return DiagnosisPath(tuple(steps), tuple(results), route.leaf, PathStatus.COMPLETE)
        current = route.node
