"""Batch evaluation over labeled cases: confusion matrices and accuracy.

Rows index the actual label, columns the predicted label. Cases whose
inference fails to converge land in a separate unclassified column: they
never count toward the accuracy numerator but stay in the denominator.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping, Sequence

from .classifier import HierarchySpec, PathStatus, classify, decide_winner, map_symptoms
from .engine import InferenceStatus, run
from .errors import MetricError
from .model import FcmModel
from .rules import RuleConfig

UNCLASSIFIED = "unclassified"


@dataclass(frozen=True)
class LabeledCase:
    symptoms: Mapping[str, float]
    label: str

    def __post_init__(self) -> None:
        if not self.label:
            raise ValueError("case label must be nonempty")


@dataclass(frozen=True)
class ConfusionMatrix:
    """Counts[actual][predicted] over an ordered label list.

    ``unclassified`` holds per-actual-label counts of non-convergent cases;
    an empty tuple means none.
    """

    labels: tuple[str, ...]
    counts: tuple[tuple[int, ...], ...]
    unclassified: tuple[int, ...] = ()

    def __post_init__(self) -> None:
        k = len(self.labels)
        if len(self.counts) != k or any(len(row) != k for row in self.counts):
            raise ValueError(f"counts must be {k}x{k} for labels {self.labels}")
        if self.unclassified and len(self.unclassified) != k:
            raise ValueError("unclassified column length must match the label count")

    @property
    def total(self) -> int:
        return sum(sum(row) for row in self.counts) + sum(self.unclassified)

    @property
    def correct(self) -> int:
        return sum(self.counts[i][i] for i in range(len(self.labels)))

    def count(self, actual: str, predicted: str) -> int:
        i = self.labels.index(actual)
        if predicted == UNCLASSIFIED:
            return self.unclassified[i] if self.unclassified else 0
        return self.counts[i][self.labels.index(predicted)]


def accuracy(cm: ConfusionMatrix) -> tuple[float, float]:
    """(accuracy, error) = (diagonal/total, 1 - accuracy); total must be > 0."""
    total = cm.total
    if total == 0:
        raise MetricError("accuracy is undefined for an empty confusion matrix")
    acc = cm.correct / total
    return acc, 1.0 - acc


def _classify_case(
    target: FcmModel | HierarchySpec, case: LabeledCase, cfg: RuleConfig | None
) -> str:
    if isinstance(target, HierarchySpec):
        path = classify(target, case.symptoms)
        return path.diagnosis if path.status is PathStatus.COMPLETE else UNCLASSIFIED
    state, _ = map_symptoms(case.symptoms, target)
    result = run(target, state, cfg)
    if result.status is not InferenceStatus.CONVERGED:
        return UNCLASSIFIED
    return decide_winner(result, target).label


def target_labels(target: FcmModel | HierarchySpec) -> tuple[str, ...]:
    """The label set an evaluated unit can produce: outputs, or leaf diagnoses."""
    if isinstance(target, HierarchySpec):
        leaves: list[str] = []
        for node_id in sorted(target.nodes):
            for route in target.nodes[node_id].routes.values():
                if route.leaf is not None and route.leaf not in leaves:
                    leaves.append(route.leaf)
        return tuple(leaves)
    return target.output_labels


def evaluate(
    target: FcmModel | HierarchySpec,
    dataset: Sequence[LabeledCase],
    cfg: RuleConfig | None = None,
) -> ConfusionMatrix:
    """Classify every case and tally counts[actual][predicted].

    ``target`` is a single model (predictions are output labels) or a
    hierarchy (predictions are leaf diagnoses). ``cfg`` overrides a single
    model's rule configuration and is ignored for hierarchies, whose nodes
    carry their own.
    """
    labels = target_labels(target)
    index = {lab: i for i, lab in enumerate(labels)}
    k = len(labels)
    counts = [[0] * k for _ in range(k)]
    unclassified = [0] * k

    for pos, case in enumerate(dataset):
        if case.label not in index:
            raise ValueError(
                f"case {pos} has label {case.label!r}, not one of {list(labels)}"
            )
        predicted = _classify_case(target, case, cfg)
        if predicted == UNCLASSIFIED:
            unclassified[index[case.label]] += 1
        else:
            counts[index[case.label]][index[predicted]] += 1

    return ConfusionMatrix(
        labels,
        tuple(tuple(row) for row in counts),
        tuple(unclassified) if any(unclassified) else (),
    )


def format_accuracy_line(cm: ConfusionMatrix) -> str:
    """Render ``Accuracy =a/b= p %`` in the tables' layout."""
    acc, _ = accuracy(cm)
    return f"Accuracy ={cm.correct}/{cm.total}= {100.0 * acc:.4f} %"


def format_error_line(cm: ConfusionMatrix) -> str:
    total = cm.total
    wrong = total - cm.correct
    _, err = accuracy(cm)
    return f"Error ={wrong}/{total}= {100.0 * err:.4f} %"


def format_matrix(cm: ConfusionMatrix) -> str:
    """Plain-text matrix, actual labels on rows, predicted on columns."""
    cols = list(cm.labels) + ([UNCLASSIFIED] if cm.unclassified else [])
    width = max(len(lab) for lab in cols + list(cm.labels)) + 2
    lines = ["".rjust(width) + "".join(lab.rjust(width) for lab in cols)]
    for i, actual in enumerate(cm.labels):
        row = list(cm.counts[i]) + ([cm.unclassified[i]] if cm.unclassified else [])
        lines.append(actual.rjust(width) + "".join(str(v).rjust(width) for v in row))
    return "\n".join(lines)
