"""Concept-map domain model: concepts, weight matrices, validation and repair.

Weight orientation is row = source concept, column = target concept, so the
influence of concept j on concept i is ``weights[j][i]``. All model types are
immutable values; operations return new models rather than mutating.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field, replace
from enum import Enum
from typing import Iterable, Sequence

from .errors import RepairError, ValidationError
from .rules import RuleConfig

WEIGHT_MIN = -1.0
WEIGHT_MAX = 1.0


class ConceptKind(str, Enum):
    INPUT = "input"
    OUTPUT = "output"


class FuzzyWeightLabel(Enum):
    """Linguistic weight labels with fixed defuzzified centers.

    The centers are symmetric mid-region centroids; used only when authoring
    a model from expert labels, never by the shipped fixtures.
    """

    NEGATIVELY_STRONG = -0.75
    NEGATIVELY_WEAK = -0.25
    NEUTRAL = 0.0
    POSITIVELY_WEAK = 0.25
    POSITIVELY_STRONG = 0.75

    @property
    def weight(self) -> float:
        return float(self.value)


@dataclass(frozen=True)
class Concept:
    id: int
    label: str
    kind: ConceptKind


@dataclass(frozen=True)
class FcmModel:
    """A concept map: concepts plus a square source-by-target weight matrix."""

    name: str
    concepts: tuple[Concept, ...]
    weights: tuple[tuple[float, ...], ...]
    default_rule_config: RuleConfig = field(default_factory=RuleConfig)
    notes: tuple[str, ...] = ()

    @property
    def n(self) -> int:
        return len(self.concepts)

    @property
    def labels(self) -> tuple[str, ...]:
        return tuple(c.label for c in self.concepts)

    @property
    def output_indices(self) -> tuple[int, ...]:
        return tuple(i for i, c in enumerate(self.concepts) if c.kind is ConceptKind.OUTPUT)

    @property
    def input_indices(self) -> tuple[int, ...]:
        return tuple(i for i, c in enumerate(self.concepts) if c.kind is ConceptKind.INPUT)

    @property
    def output_labels(self) -> tuple[str, ...]:
        return tuple(self.concepts[i].label for i in self.output_indices)

    def index_of(self, label: str) -> int:
        for i, c in enumerate(self.concepts):
            if c.label == label:
                return i
        raise KeyError(f"no concept labelled {label!r} in model {self.name!r}")


def make_concepts(labels: Sequence[str], output_labels: Iterable[str]) -> tuple[Concept, ...]:
    """Build a concept tuple from labels, marking ``output_labels`` as outputs."""
    outputs = set(output_labels)
    unknown = outputs - set(labels)
    if unknown:
        raise ValueError(f"output labels not in concept list: {sorted(unknown)}")
    return tuple(
        Concept(i, lab, ConceptKind.OUTPUT if lab in outputs else ConceptKind.INPUT)
        for i, lab in enumerate(labels)
    )


def weight_rows(rows: Iterable[Iterable[float | FuzzyWeightLabel]]) -> tuple[tuple[float, ...], ...]:
    """Normalize nested weight data to an immutable tuple-of-tuples of floats.

    Entries may be numbers or FuzzyWeightLabel values (defuzzified in place),
    so expert-elicited label matrices can be turned into a model directly.
    """
    out = []
    for row in rows:
        out.append(tuple(e.weight if isinstance(e, FuzzyWeightLabel) else float(e) for e in row))
    return tuple(out)


def validate_model(model: FcmModel) -> list[str]:
    """Return every invariant violation in the model; an empty list means valid."""
    report: list[str] = []
    n = model.n
    if n == 0:
        report.append("model has no concepts")
        return report

    seen: dict[str, int] = {}
    for i, c in enumerate(model.concepts):
        if c.id != i:
            report.append(f"concept ids must be contiguous from 0: position {i} has id {c.id}")
        if not c.label:
            report.append(f"concept {i} has an empty label")
        elif c.label in seen:
            report.append(f"duplicate concept label {c.label!r} at positions {seen[c.label]} and {i}")
        else:
            seen[c.label] = i

    if not model.output_indices:
        report.append("model has no output concept")

    if len(model.weights) != n:
        report.append(f"weight matrix has {len(model.weights)} rows for {n} concepts")
    for j, row in enumerate(model.weights):
        if len(row) != n:
            report.append(f"weight row {j} has {len(row)} entries for {n} concepts")
            continue
        for i, w in enumerate(row):
            if not math.isfinite(w):
                report.append(f"weight ({j},{i}) is not finite: {w!r}")
            elif not (WEIGHT_MIN <= w <= WEIGHT_MAX):
                report.append(f"weight ({j},{i}) = {w} outside [{WEIGHT_MIN}, {WEIGHT_MAX}]")
    return report


def require_valid(model: FcmModel) -> FcmModel:
    """Raise ValidationError unless the model passes validate_model."""
    report = validate_model(model)
    if report:
        raise ValidationError(
            f"model {model.name!r} has {len(report)} violation(s): " + "; ".join(report),
            report,
        )
    return model


def wire_competition(model: FcmModel, inhibition: float) -> FcmModel:
    """Connect every ordered pair of distinct output concepts with ``inhibition``.

    The mutual negative links make the output concepts suppress one another so
    a single winner dominates. Idempotent for a fixed inhibition value.
    """
    if not (WEIGHT_MIN <= inhibition < 0.0):
        raise ValueError(f"inhibition must lie in [-1, 0), got {inhibition}")
    outputs = model.output_indices
    if len(outputs) < 2:
        raise ValidationError(
            f"wire_competition needs at least 2 output concepts, model {model.name!r} has {len(outputs)}"
        )
    out_set = set(outputs)
    new_rows = tuple(
        tuple(
            inhibition if (j in out_set and i in out_set and j != i) else w
            for i, w in enumerate(row)
        )
        for j, row in enumerate(model.weights)
    )
    return replace(model, weights=new_rows)


def repair_printed_row(
    printed_row: Sequence[float], reference_sparsity: Sequence[bool]
) -> list[float]:
    """Reconcile a printed matrix row with the nonzero pattern it must have.

    Printed trained matrices occasionally carry one spurious zero entry,
    making a row one longer than the model. Learning never creates new
    nonzero positions, so the true row must have exactly the reference's
    nonzero pattern; deleting the unique zero that restores that pattern
    recovers it. Rows already matching are returned unchanged.

    Raises RepairError when no single-zero deletion works, or when distinct
    deletions produce different candidate rows.
    """
    ref = [bool(b) for b in reference_sparsity]
    row = [float(v) for v in printed_row]
    n = len(ref)

    def matches(candidate: list[float]) -> bool:
        return all((v != 0.0) == b for v, b in zip(candidate, ref))

    if len(row) == n:
        if matches(row):
            return row
        got = [i for i, v in enumerate(row) if v != 0.0]
        want = [i for i, b in enumerate(ref) if b]
        raise RepairError(
            f"row nonzero positions {got} do not match reference {want} and row is not over-length"
        )

    if len(row) != n + 1:
        raise RepairError(
            f"row has {len(row)} entries; repair handles exactly {n} or {n + 1} (reference length {n})"
        )

    candidates: dict[tuple[float, ...], list[int]] = {}
    for k, v in enumerate(row):
        if v != 0.0:
            continue
        trimmed = row[:k] + row[k + 1 :]
        if matches(trimmed):
            candidates.setdefault(tuple(trimmed), []).append(k)

    if not candidates:
        raise RepairError(
            f"no single-zero deletion reconciles row {row} with reference nonzeros "
            f"{[i for i, b in enumerate(ref) if b]}"
        )
    if len(candidates) > 1:
        raise RepairError(
            f"ambiguous repair: deletions at {sorted(ks[0] for ks in candidates.values())} "
            f"produce {len(candidates)} different rows"
        )
    return list(next(iter(candidates)))
