"""fcmkit: fuzzy cognitive map engine, Hebbian trainer and cascade classifier.

The numeric kernels run on a compiled extension when available and fall back
to a pure-Python implementation otherwise; ``fcmkit.kernel_backend()`` tells
you which one is active.
"""

from ._kernels import BACKEND as _KERNEL_BACKEND
from .classifier import (
    DiagnosisPath,
    FillPolicy,
    HierarchyNode,
    HierarchySpec,
    MappedSymptoms,
    PathStatus,
    PathStep,
    Route,
    WinnerDecision,
    apply_prior_bias,
    classify,
    decide_winner,
    map_symptoms,
    validate_hierarchy,
)
from .engine import (
    InferenceResult,
    InferenceStatus,
    StateVector,
    activation,
    clamp_indices,
    has_converged,
    run,
    step_additive,
    step_rescaled,
    step_source_sum,
)
from .errors import (
    FcmKitError,
    MetricError,
    NumericError,
    PersistenceError,
    RepairError,
    ValidationError,
)
from .evaluation import (
    ConfusionMatrix,
    LabeledCase,
    accuracy,
    evaluate,
    format_accuracy_line,
    format_error_line,
    format_matrix,
)
from .model import (
    Concept,
    ConceptKind,
    FcmModel,
    FuzzyWeightLabel,
    make_concepts,
    repair_printed_row,
    validate_model,
    weight_rows,
    wire_competition,
)
from .persistence import (
    load_dataset,
    load_hierarchy,
    load_model,
    read_trace,
    save_dataset,
    save_hierarchy,
    save_model,
    write_trace,
)
from .rules import ClampPolicy, ConvergenceScope, RuleConfig, UpdateRule
from .training import NhlParams, TrainingOutcome, nhl_weight_update, train_competitive, train_region

__version__ = "0.1.0"


def kernel_backend() -> str:
    """Name of the active numeric backend: "compiled" or "pure"."""
    return _KERNEL_BACKEND
