"""File formats: model and hierarchy JSON, dataset and trace CSV.

All formats round-trip exactly: floats are serialized at full precision
(shortest repr that parses back to the same double). Model documents carry
a format version; parse errors name the offending field.

Model schema::

    {"version": 1, "name": ..., "concepts": [{"label", "kind"}, ...],
     "weights": [[...], ...],
     "rule": {"variant", "lambda", "epsilon", "max_iterations",
              "scope", "clamp", "include_diagonal"},
     "notes": [...]}

Hierarchy schema::

    {"root": id, "nodes": {id: {"model_path", "rule_overrides",
                                "routes": {label: {"node": id} | {"leaf": str}}}}}

Dataset CSV: header = symptom labels plus a final ``label`` column, one case
per row; an empty cell means the symptom is absent from that case. Trace
CSV: header ``iteration,<label>,...``, one row per recorded state.
"""

from __future__ import annotations

import csv
import io
import json
import os
from typing import Callable, Sequence

from .classifier import HierarchyNode, HierarchySpec, Route, validate_hierarchy
from .engine import InferenceResult, StateVector
from .errors import PersistenceError, ValidationError
from .evaluation import LabeledCase
from .model import ConceptKind, FcmModel, make_concepts, require_valid
from .rules import ClampPolicy, ConvergenceScope, RuleConfig, UpdateRule

FORMAT_VERSION = 1

_RULE_KEYS = ("variant", "lambda", "epsilon", "max_iterations", "scope", "clamp", "include_diagonal")


def _rule_to_dict(cfg: RuleConfig) -> dict:
    return {
        "variant": cfg.rule.value,
        "lambda": cfg.steepness,
        "epsilon": cfg.epsilon,
        "max_iterations": cfg.max_iterations,
        "scope": cfg.convergence_scope.value,
        "clamp": cfg.clamp_policy.value,
        "include_diagonal": cfg.include_diagonal,
    }


def _rule_from_dict(data: dict, context: str) -> RuleConfig:
    for key in data:
        if key not in _RULE_KEYS:
            raise PersistenceError(f"{context}: unknown rule field {key!r}")
    try:
        return RuleConfig(
            rule=UpdateRule(data.get("variant", UpdateRule.SOURCE_SUM.value)),
            steepness=float(data.get("lambda", 1.0)),
            epsilon=float(data.get("epsilon", 0.001)),
            max_iterations=int(data.get("max_iterations", 1000)),
            convergence_scope=ConvergenceScope(data.get("scope", ConvergenceScope.ALL_CONCEPTS.value)),
            clamp_policy=ClampPolicy(data.get("clamp", ClampPolicy.NONE.value)),
            include_diagonal=bool(data.get("include_diagonal", False)),
        )
    except ValueError as exc:
        raise PersistenceError(f"{context}: {exc}") from exc


def save_model(model: FcmModel) -> str:
    doc = {
        "version": FORMAT_VERSION,
        "name": model.name,
        "concepts": [{"label": c.label, "kind": c.kind.value} for c in model.concepts],
        "weights": [list(row) for row in model.weights],
        "rule": _rule_to_dict(model.default_rule_config),
        "notes": list(model.notes),
    }
    return json.dumps(doc, indent=2) + "\n"


def load_model(text: str) -> FcmModel:
    """Parse and validate a model document; invalid models are rejected."""
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise PersistenceError(f"model document: invalid JSON at line {exc.lineno}: {exc.msg}") from exc
    if not isinstance(doc, dict):
        raise PersistenceError("model document: top level must be an object")
    version = doc.get("version")
    if version != FORMAT_VERSION:
        raise PersistenceError(f"model document: unsupported format version {version!r}")

    try:
        name = str(doc["name"])
        concept_entries = doc["concepts"]
        weight_entries = doc["weights"]
    except KeyError as exc:
        raise PersistenceError(f"model document: missing field {exc.args[0]!r}") from exc

    labels = []
    outputs = []
    for pos, entry in enumerate(concept_entries):
        try:
            label = str(entry["label"])
            kind = ConceptKind(entry["kind"])
        except KeyError as exc:
            raise PersistenceError(f"concepts[{pos}]: missing field {exc.args[0]!r}") from exc
        except ValueError as exc:
            raise PersistenceError(f"concepts[{pos}]: {exc}") from exc
        labels.append(label)
        if kind is ConceptKind.OUTPUT:
            outputs.append(label)

    try:
        weights = tuple(tuple(float(w) for w in row) for row in weight_entries)
    except (TypeError, ValueError) as exc:
        raise PersistenceError(f"weights: {exc}") from exc

    rule = _rule_from_dict(doc.get("rule", {}), "rule")
    notes = tuple(str(n) for n in doc.get("notes", []))
    model = FcmModel(
        name=name,
        concepts=make_concepts(labels, outputs),
        weights=weights,
        default_rule_config=rule,
        notes=notes,
    )
    return require_valid(model)


ModelResolver = Callable[[str], FcmModel]


def _default_resolver(base_dir: str | None) -> ModelResolver:
    def resolve(ref: str) -> FcmModel:
        if ref.startswith("fixture:"):
            from . import fixtures

            return fixtures.model(ref[len("fixture:"):])
        path = ref if base_dir is None else os.path.join(base_dir, ref)
        try:
            with open(path, encoding="utf-8") as fh:
                return load_model(fh.read())
        except OSError as exc:
            raise PersistenceError(f"cannot read model {ref!r}: {exc}") from exc

    return resolve


def load_hierarchy(
    text: str,
    base_dir: str | None = None,
    resolver: ModelResolver | None = None,
) -> HierarchySpec:
    """Parse a hierarchy document, resolving each node's model reference.

    ``model_path`` values of the form ``fixture:<name>`` load built-in
    fixtures; anything else is a filesystem path relative to ``base_dir``.
    """
    resolve = resolver or _default_resolver(base_dir)
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise PersistenceError(f"hierarchy document: invalid JSON at line {exc.lineno}: {exc.msg}") from exc
    try:
        root = str(doc["root"])
        node_entries = doc["nodes"]
    except (KeyError, TypeError) as exc:
        raise PersistenceError(f"hierarchy document: missing field {exc.args[0]!r}") from exc

    nodes = {}
    for node_id, entry in node_entries.items():
        try:
            model_ref = str(entry["model_path"])
            route_entries = entry["routes"]
        except KeyError as exc:
            raise PersistenceError(f"nodes[{node_id!r}]: missing field {exc.args[0]!r}") from exc
        model = resolve(model_ref)
        overrides = dict(entry.get("rule_overrides", {}))
        if overrides:
            merged = dict(_rule_to_dict(model.default_rule_config))
            for key in overrides:
                if key not in _RULE_KEYS:
                    raise PersistenceError(f"nodes[{node_id!r}]: unknown rule override {key!r}")
            merged.update(overrides)
            cfg = _rule_from_dict(merged, f"nodes[{node_id!r}].rule_overrides")
        else:
            cfg = model.default_rule_config

        routes = {}
        for label, target in route_entries.items():
            if not isinstance(target, dict) or len(target) != 1 or not {"node", "leaf"} & set(target):
                raise PersistenceError(
                    f"nodes[{node_id!r}].routes[{label!r}]: expected {{\"node\": id}} or {{\"leaf\": diagnosis}}"
                )
            if "node" in target:
                routes[label] = Route(node=str(target["node"]))
            else:
                routes[label] = Route(leaf=str(target["leaf"]))
        nodes[node_id] = HierarchyNode(
            node_id=node_id,
            model=model,
            routes=routes,
            rule_config=cfg,
            model_ref=model_ref,
            rule_overrides=overrides,
        )

    spec = HierarchySpec(root=root, nodes=nodes)
    report = validate_hierarchy(spec)
    if report:
        raise ValidationError(
            f"hierarchy has {len(report)} violation(s): " + "; ".join(report), report
        )
    return spec


def save_hierarchy(spec: HierarchySpec) -> str:
    nodes = {}
    for node_id in spec.nodes:
        node = spec.nodes[node_id]
        if not node.model_ref:
            raise PersistenceError(f"node {node_id!r} has no model_path reference to serialize")
        routes = {
            label: ({"node": r.node} if r.node is not None else {"leaf": r.leaf})
            for label, r in node.routes.items()
        }
        nodes[node_id] = {
            "model_path": node.model_ref,
            "rule_overrides": dict(node.rule_overrides),
            "routes": routes,
        }
    return json.dumps({"root": spec.root, "nodes": nodes}, indent=2) + "\n"


def load_dataset(text: str) -> list[LabeledCase]:
    """Parse labeled cases from CSV; empty cells mean the symptom is absent."""
    reader = csv.reader(io.StringIO(text))
    try:
        header = next(reader)
    except StopIteration:
        raise PersistenceError("dataset: empty file") from None
    if not header or header[-1] != "label":
        raise PersistenceError('dataset: final header column must be "label"')
    symptom_labels = header[:-1]

    cases = []
    for lineno, row in enumerate(reader, start=2):
        if not row:
            continue
        if len(row) != len(header):
            raise PersistenceError(
                f"dataset line {lineno}: {len(row)} cells for {len(header)} columns"
            )
        symptoms = {}
        for label, cell in zip(symptom_labels, row[:-1]):
            if cell == "":
                continue
            try:
                value = float(cell)
            except ValueError:
                raise PersistenceError(
                    f"dataset line {lineno}: bad severity {cell!r} for {label!r}"
                ) from None
            if not (0.0 <= value <= 1.0):
                raise PersistenceError(
                    f"dataset line {lineno}: severity {value} for {label!r} outside [0, 1]"
                )
            symptoms[label] = value
        label = row[-1]
        if not label:
            raise PersistenceError(f"dataset line {lineno}: empty label")
        cases.append(LabeledCase(symptoms, label))
    return cases


def save_dataset(cases: Sequence[LabeledCase], symptom_labels: Sequence[str] | None = None) -> str:
    """Serialize cases to CSV; columns default to symptoms in first-seen order."""
    if symptom_labels is None:
        seen: list[str] = []
        for case in cases:
            for label in case.symptoms:
                if label not in seen:
                    seen.append(label)
        symptom_labels = seen
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(list(symptom_labels) + ["label"])
    for case in cases:
        row = [repr(case.symptoms[s]) if s in case.symptoms else "" for s in symptom_labels]
        writer.writerow(row + [case.label])
    return buf.getvalue()


def write_trace(result: InferenceResult, concept_labels: Sequence[str]) -> str:
    """CSV of the full iteration trace: one row per state, full precision."""
    if result.trace and len(concept_labels) != len(result.trace[0]):
        raise ValueError(
            f"{len(concept_labels)} labels for states of length {len(result.trace[0])}"
        )
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["iteration"] + list(concept_labels))
    for k, state in enumerate(result.trace):
        writer.writerow([k] + [repr(v) for v in state])
    return buf.getvalue()


def read_trace(text: str) -> tuple[tuple[str, ...], tuple[StateVector, ...]]:
    """Inverse of write_trace: (concept labels, recorded states)."""
    reader = csv.reader(io.StringIO(text))
    try:
        header = next(reader)
    except StopIteration:
        raise PersistenceError("trace: empty file") from None
    if not header or header[0] != "iteration":
        raise PersistenceError('trace: first header column must be "iteration"')
    labels = tuple(header[1:])
    rows = []
    for lineno, row in enumerate(reader, start=2):
        if not row:
            continue
        if len(row) != len(header):
            raise PersistenceError(f"trace line {lineno}: {len(row)} cells for {len(header)} columns")
        try:
            rows.append(tuple(float(v) for v in row[1:]))
        except ValueError as exc:
            raise PersistenceError(f"trace line {lineno}: {exc}") from None
    return labels, tuple(rows)
