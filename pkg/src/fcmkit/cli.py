"""Command-line surface: infer, classify, train, evaluate, fixtures.

Exit codes: 0 success, 1 usage or data error, 2 non-convergence. Values are
printed at 5 decimals to match the precision of the source tables; ``--json``
switches the result to machine-readable output.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import replace

from . import fixtures, persistence
from .classifier import (
    FillPolicy,
    PathStatus,
    classify,
    decide_winner,
    default_fill,
    default_initial_output,
    map_symptoms,
)
from .engine import InferenceStatus, run
from .errors import FcmKitError
from .evaluation import evaluate, format_accuracy_line, format_error_line, format_matrix
from .model import FcmModel
from .rules import ClampPolicy, ConvergenceScope, RuleConfig, UpdateRule
from .training import NhlParams, train_competitive

EXIT_OK = 0
EXIT_ERROR = 1
EXIT_NONCONVERGENT = 2


class _Parser(argparse.ArgumentParser):
    # usage errors are exit code 1; code 2 is reserved for non-convergence
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(EXIT_ERROR)


def _add_rule_flags(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--rule", choices=[r.value for r in UpdateRule], help="update rule override")
    parser.add_argument("--lambda", dest="steepness", type=float, help="sigmoid steepness override")
    parser.add_argument("--epsilon", type=float, help="convergence tolerance override")
    parser.add_argument("--max-iters", dest="max_iters", type=int, help="iteration budget override")
    parser.add_argument(
        "--scope", choices=[s.value for s in ConvergenceScope], help="convergence scope override"
    )
    parser.add_argument(
        "--clamp", choices=[c.value for c in ClampPolicy], help="clamp policy override"
    )
    parser.add_argument(
        "--include-diagonal",
        choices=["true", "false"],
        help="let self-weights participate in the sum",
    )


def _rule_config(base: RuleConfig, args: argparse.Namespace) -> RuleConfig:
    updates = {}
    if args.rule is not None:
        updates["rule"] = UpdateRule(args.rule)
    if args.steepness is not None:
        updates["steepness"] = args.steepness
    if args.epsilon is not None:
        updates["epsilon"] = args.epsilon
    if args.max_iters is not None:
        updates["max_iterations"] = args.max_iters
    if args.scope is not None:
        updates["convergence_scope"] = ConvergenceScope(args.scope)
    if args.clamp is not None:
        updates["clamp_policy"] = ClampPolicy(args.clamp)
    if args.include_diagonal is not None:
        updates["include_diagonal"] = args.include_diagonal == "true"
    return replace(base, **updates) if updates else base


def _read_source(source: str) -> str:
    if source == "-":
        return sys.stdin.read()
    with open(source, encoding="utf-8") as fh:
        return fh.read()


def _load_model_ref(ref: str) -> FcmModel:
    import os

    if os.path.exists(ref):
        return persistence.load_model(_read_source(ref))
    if ref in fixtures.MODEL_NAMES:
        return fixtures.model(ref)
    raise FcmKitError(f"no model file or fixture named {ref!r}")


def _load_hierarchy_ref(ref: str):
    import os

    if os.path.exists(ref):
        return persistence.load_hierarchy(_read_source(ref), base_dir=os.path.dirname(ref) or ".")
    if ref in fixtures.HIERARCHY_NAMES:
        return fixtures.hierarchy(ref)
    raise FcmKitError(f"no hierarchy file or fixture named {ref!r}")


def _load_symptoms(source: str) -> dict[str, float]:
    """Severity map from a JSON/CSV file, a fixture name, or stdin (``-``)."""
    import os

    if source != "-" and not os.path.exists(source) and source in fixtures.SYMPTOM_SETS:
        return fixtures.symptom_set(source)
    text = _read_source(source)
    stripped = text.lstrip()
    if stripped.startswith("{"):
        data = json.loads(text)
        return {str(k): float(v) for k, v in data.items()}
    symptoms: dict[str, float] = {}
    import csv
    import io

    reader = csv.reader(io.StringIO(text))
    header = next(reader, None)
    if header is None or [h.strip().lower() for h in header[:2]] != ["symptom", "severity"]:
        raise FcmKitError('symptom CSV must start with a "symptom,severity" header')
    for row in reader:
        if not row:
            continue
        symptoms[row[0]] = float(row[1])
    return symptoms


def _parse_assignments(pairs: list[str], what: str) -> dict[str, str]:
    out: dict[str, str] = {}
    for pair in pairs:
        label, sep, value = pair.partition("=")
        if not sep or not label or not value:
            raise FcmKitError(f"{what} must look like LABEL=VALUE, got {pair!r}")
        out[label] = value
    return out


def _cmd_infer(args: argparse.Namespace) -> int:
    model = _load_model_ref(args.model)
    cfg = _rule_config(model.default_rule_config, args)
    warnings: tuple[str, ...] = ()
    if args.input is not None:
        try:
            state = tuple(float(v) for v in args.input.split(","))
        except ValueError:
            raise FcmKitError(f"--input must be comma-separated numbers, got {args.input!r}")
    else:
        symptoms = _load_symptoms(args.symptoms)
        fill = FillPolicy(args.fill) if args.fill else default_fill(cfg.rule)
        mapped = map_symptoms(symptoms, model, fill, default_initial_output(cfg.rule))
        state, warnings = mapped.state, mapped.unmatched

    result = run(model, state, cfg)
    decision = decide_winner(result, model) if len(model.output_indices) >= 2 else None

    if args.trace:
        with open(args.trace, "w", encoding="utf-8") as fh:
            fh.write(persistence.write_trace(result, model.labels))

    if args.json:
        payload = {
            "model": model.name,
            "status": result.status.value,
            "iterations": result.iterations_used,
            "final": {lab: v for lab, v in zip(model.labels, result.final)},
            "warnings": list(warnings),
        }
        if decision is not None:
            payload["winner"] = {
                "label": decision.label,
                "value": decision.value,
                "margin": decision.margin,
                "ambiguous": decision.ambiguous,
            }
        print(json.dumps(payload, indent=2))
    else:
        for warning in warnings:
            print(f"warning: symptom {warning!r} not used by this model", file=sys.stderr)
        width = max(len(lab) for lab in model.labels) + 2
        for lab, value in zip(model.labels, result.final):
            print(f"{lab.ljust(width)}{value:.5f}")
        if decision is not None:
            flag = "  [ambiguous]" if decision.ambiguous else ""
            print(
                f"Winner: {decision.label} ({decision.value:.5f}, margin {decision.margin:.5f}"
                f" over {decision.runner_up_label}){flag}"
            )
        print(f"Iterations: {result.iterations_used} ({result.status.value})")

    return EXIT_OK if result.status is InferenceStatus.CONVERGED else EXIT_NONCONVERGENT


def _cmd_classify(args: argparse.Namespace) -> int:
    hierarchy = _load_hierarchy_ref(args.hierarchy)
    symptoms = _load_symptoms(args.symptoms)
    biases = None
    if args.bias:
        biases = {k: float(v) for k, v in _parse_assignments(args.bias, "--bias").items()}
    path = classify(hierarchy, symptoms, biases)

    if args.json:
        payload = {
            "status": path.status.value,
            "diagnosis": path.diagnosis,
            "failed_node": path.failed_node,
            "steps": [
                {
                    "node": s.node_id,
                    "winner": s.winner,
                    "value": s.value,
                    "runner_up_value": s.runner_up_value,
                    "margin": s.margin,
                    "ambiguous": s.ambiguous,
                }
                for s in path.steps
            ],
        }
        print(json.dumps(payload, indent=2))
    else:
        for s in path.steps:
            flag = "  [ambiguous]" if s.ambiguous else ""
            print(f"{s.node_id}: winner {s.winner} ({s.value:.5f}, margin {s.margin:.5f}){flag}")
        if path.status is PathStatus.COMPLETE:
            print(f"Diagnosis: {path.diagnosis}")
        else:
            print(f"No diagnosis: node {path.failed_node} did not converge")

    return EXIT_OK if path.status is PathStatus.COMPLETE else EXIT_NONCONVERGENT


def _cmd_train(args: argparse.Namespace) -> int:
    model = _load_model_ref(args.model)
    rule_cfg = _rule_config(NhlParams().rule_config, args)
    params = NhlParams(
        eta=args.eta,
        gamma=args.gamma,
        epsilon=args.train_epsilon,
        max_epochs=args.epochs,
        rule_config=rule_cfg,
    )
    exemplar_sources = _parse_assignments(args.exemplar, "--exemplar")
    exemplars = {}
    for label, source in exemplar_sources.items():
        symptoms = _load_symptoms(source)
        exemplars[label] = map_symptoms(
            symptoms, model, default_fill(rule_cfg.rule), default_initial_output(rule_cfg.rule)
        ).state
    trained = train_competitive(model, exemplars, params, args.inhibition)
    trained = replace(trained, name=args.name or f"{model.name}_trained", default_rule_config=rule_cfg)
    text = persistence.save_model(trained)
    with open(args.output, "w", encoding="utf-8") as fh:
        fh.write(text)
    print(f"Trained on {len(exemplars)} exemplar region(s); wrote {args.output}")
    return EXIT_OK


def _cmd_evaluate(args: argparse.Namespace) -> int:
    import os

    target = None
    if os.path.exists(args.target):
        text = _read_source(args.target)
        doc = json.loads(text)
        if isinstance(doc, dict) and "nodes" in doc:
            target = persistence.load_hierarchy(text, base_dir=os.path.dirname(args.target) or ".")
        else:
            target = persistence.load_model(text)
    elif args.target in fixtures.MODEL_NAMES:
        target = fixtures.model(args.target)
    elif args.target in fixtures.HIERARCHY_NAMES:
        target = fixtures.hierarchy(args.target)
    else:
        raise FcmKitError(f"no model/hierarchy file or fixture named {args.target!r}")

    dataset = persistence.load_dataset(_read_source(args.dataset))
    cfg = None
    if isinstance(target, FcmModel):
        cfg = _rule_config(target.default_rule_config, args)
    cm = evaluate(target, dataset, cfg)

    if args.json:
        payload = {
            "labels": list(cm.labels),
            "counts": [list(row) for row in cm.counts],
            "unclassified": list(cm.unclassified),
            "total": cm.total,
            "correct": cm.correct,
        }
        print(json.dumps(payload, indent=2))
    else:
        print(format_matrix(cm))
        print(format_accuracy_line(cm))
        print(format_error_line(cm))
    return EXIT_OK


def _cmd_fixtures(args: argparse.Namespace) -> int:
    if args.fixtures_command == "export":
        written = fixtures.export_fixtures(args.directory)
        for path in written:
            print(path)
        return EXIT_OK
    print("models:")
    for name in fixtures.MODEL_NAMES:
        m = fixtures.model(name)
        print(f"  {name}  ({m.n} concepts, outputs: {', '.join(m.output_labels)})")
    print("hierarchies:")
    for name in fixtures.HIERARCHY_NAMES:
        print(f"  {name}")
    print("symptom sets:")
    for name in sorted(fixtures.SYMPTOM_SETS):
        print(f"  {name}")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="fcmkit", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    p_infer = sub.add_parser("infer", help="iterate one model to steady state")
    p_infer.add_argument("model", help="model file or fixture name")
    src = p_infer.add_mutually_exclusive_group(required=True)
    src.add_argument("--input", help="comma-separated initial state, one value per concept")
    src.add_argument("--symptoms", help="symptom file (JSON/CSV), fixture name, or - for stdin")
    p_infer.add_argument("--fill", choices=["zero", "neutral"], help="fill for missing symptoms")
    _add_rule_flags(p_infer)
    p_infer.add_argument("--trace", help="write the iteration trace CSV here")
    p_infer.add_argument("--json", action="store_true", help="machine-readable output")
    p_infer.set_defaults(func=_cmd_infer)

    p_classify = sub.add_parser("classify", help="route symptoms through a hierarchy")
    p_classify.add_argument("hierarchy", help="hierarchy file or fixture name")
    p_classify.add_argument(
        "--symptoms", required=True, help="symptom file (JSON/CSV), fixture name, or - for stdin"
    )
    p_classify.add_argument(
        "--bias", action="append", default=[], metavar="LABEL=VALUE",
        help="initial-value prior for an output concept (repeatable)",
    )
    p_classify.add_argument("--json", action="store_true", help="machine-readable output")
    p_classify.set_defaults(func=_cmd_classify)

    p_train = sub.add_parser("train", help="competitive Hebbian training per output class")
    p_train.add_argument("model", help="base model file or fixture name")
    p_train.add_argument(
        "--exemplar", action="append", required=True, metavar="LABEL=SOURCE",
        help="ideal symptom source for one output class (repeatable)",
    )
    p_train.add_argument("--eta", type=float, default=0.01, help="learning rate")
    p_train.add_argument("--gamma", type=float, default=0.98, help="weight decay coefficient")
    p_train.add_argument("--epochs", type=int, default=500, help="epoch budget per region")
    p_train.add_argument(
        "--train-epsilon", type=float, default=0.001, help="output stability tolerance"
    )
    p_train.add_argument("--inhibition", type=float, default=-1.0, help="output-output link weight")
    p_train.add_argument("--name", help="name for the trained model")
    _add_rule_flags(p_train)
    p_train.add_argument("-o", "--output", required=True, help="trained model output path")
    p_train.set_defaults(func=_cmd_train)

    p_eval = sub.add_parser("evaluate", help="confusion matrix over a labeled dataset")
    p_eval.add_argument("target", help="model/hierarchy file or fixture name")
    p_eval.add_argument("--dataset", required=True, help="labeled-case CSV")
    _add_rule_flags(p_eval)
    p_eval.add_argument("--json", action="store_true", help="machine-readable output")
    p_eval.set_defaults(func=_cmd_evaluate)

    p_fix = sub.add_parser("fixtures", help="list or export the built-in fixtures")
    fix_sub = p_fix.add_subparsers(dest="fixtures_command", required=True)
    fix_sub.add_parser("list", help="print fixture names")
    p_export = fix_sub.add_parser("export", help="write fixtures as files")
    p_export.add_argument("directory")
    p_fix.set_defaults(func=_cmd_fixtures)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except FcmKitError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR
    except (OSError, json.JSONDecodeError, KeyError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    raise SystemExit(main())
