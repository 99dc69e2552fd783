"""Confusion matrices and accuracy arithmetic."""

from __future__ import annotations

import random
from dataclasses import replace

import pytest

from fcmkit import fixtures
from fcmkit.classifier import HierarchySpec
from fcmkit.errors import MetricError
from fcmkit.evaluation import (
    ConfusionMatrix,
    LabeledCase,
    accuracy,
    evaluate,
    format_accuracy_line,
    format_error_line,
)

FCM1_RESULTS = ConfusionMatrix(("Diabetes", "Thyroid"), ((10, 1), (3, 8)))
FCM2_RESULTS = ConfusionMatrix(("Type 1", "Type 2"), ((9, 0), (3, 6)))
FCM3_RESULTS = ConfusionMatrix(("Hyperthyroidism", "Hypothyroidism"), ((9, 2), (8, 5)))


class TestAccuracyArithmetic:
    def test_diabetes_thyroid_matrix(self):
        acc, err = accuracy(FCM1_RESULTS)
        assert acc == pytest.approx(18 / 22, abs=1e-6)
        assert acc == pytest.approx(0.818182, abs=1e-6)
        assert err == pytest.approx(0.181818, abs=1e-6)

    def test_diabetes_subtype_matrix(self):
        acc, _ = accuracy(FCM2_RESULTS)
        assert acc == pytest.approx(15 / 18, abs=1e-6)
        assert acc == pytest.approx(0.833333, abs=1e-6)

    def test_thyroid_subtype_matrix(self):
        # the printed caption claims 15/18 for this matrix, which contradicts
        # its own counts: trace 14, total 24, and 14/24 matches the printed
        # 58.3333 % figure
        acc, _ = accuracy(FCM3_RESULTS)
        assert FCM3_RESULTS.correct == 14
        assert FCM3_RESULTS.total == 24
        assert acc == pytest.approx(14 / 24, abs=1e-6)
        assert acc == pytest.approx(0.583333, abs=1e-6)

    def test_accuracy_plus_error_is_exactly_one(self):
        for cm in (FCM1_RESULTS, FCM2_RESULTS, FCM3_RESULTS):
            acc, err = accuracy(cm)
            assert acc + err == 1.0

    def test_diagonal_matrix_is_perfect(self):
        cm = ConfusionMatrix(("A", "B"), ((4, 0), (0, 7)))
        assert accuracy(cm)[0] == 1.0

    def test_empty_matrix_undefined(self):
        cm = ConfusionMatrix(("A", "B"), ((0, 0), (0, 0)))
        with pytest.raises(MetricError):
            accuracy(cm)

    def test_unclassified_in_denominator_only(self):
        cm = ConfusionMatrix(("A", "B"), ((3, 0), (0, 3)), unclassified=(1, 1))
        acc, _ = accuracy(cm)
        assert cm.total == 8
        assert acc == pytest.approx(6 / 8)

    def test_formatting(self):
        assert format_accuracy_line(FCM1_RESULTS) == "Accuracy =18/22= 81.8182 %"
        assert format_error_line(FCM1_RESULTS) == "Error =4/22= 18.1818 %"
        assert format_accuracy_line(FCM3_RESULTS) == "Accuracy =14/24= 58.3333 %"


def _ideal_cases():
    return [
        LabeledCase(fixtures.symptom_set("diabetes_ideal"), "Diabetes"),
        LabeledCase(fixtures.symptom_set("thyroid_ideal"), "Thyroid"),
    ]


class TestEvaluate:
    def test_ideal_exemplars_on_trained_model_are_diagonal(self, fcm1_trained):
        cm = evaluate(fcm1_trained, _ideal_cases())
        assert cm.labels == ("Diabetes", "Thyroid")
        assert cm.counts == ((1, 0), (0, 1))
        assert cm.unclassified == ()

    def test_empty_dataset(self, fcm1_trained):
        cm = evaluate(fcm1_trained, [])
        assert cm.counts == ((0, 0), (0, 0))
        assert cm.total == 0

    def test_single_misclassified_case_off_diagonal(self, fcm1_trained):
        cm = evaluate(fcm1_trained, [LabeledCase(fixtures.symptom_set("thyroid_ideal"), "Diabetes")])
        assert cm.counts == ((0, 1), (0, 0))

    def test_case_order_does_not_matter(self, fcm1_trained):
        cases = fixtures.demo_dataset(per_class=6, seed=13)
        shuffled = list(cases)
        random.Random(99).shuffle(shuffled)
        assert evaluate(fcm1_trained, cases) == evaluate(fcm1_trained, shuffled)

    def test_total_counts_every_case(self, fcm1_trained):
        cases = fixtures.demo_dataset(per_class=9, seed=21)
        cm = evaluate(fcm1_trained, cases)
        assert cm.total == len(cases)

    def test_unknown_true_label_names_the_case(self, fcm1_trained):
        cases = _ideal_cases() + [LabeledCase({"Fatigue": 0.5}, "Lupus")]
        with pytest.raises(ValueError, match="case 2.*Lupus"):
            evaluate(fcm1_trained, cases)

    def test_nonconvergent_cases_land_in_unclassified(self, fcm1_trained):
        cfg = replace(fcm1_trained.default_rule_config, max_iterations=1)
        cm = evaluate(fcm1_trained, _ideal_cases(), cfg)
        assert cm.unclassified == (1, 1)
        assert cm.total == 2
        assert accuracy(cm)[0] == 0.0

    def test_hierarchy_evaluation_uses_leaf_labels(self, cascade):
        cases = [
            LabeledCase(
                {**fixtures.symptom_set("diabetes_ideal"), **fixtures.symptom_set("type1_ideal")},
                "Type 1 Diabetes",
            ),
            LabeledCase(
                {**fixtures.symptom_set("thyroid_ideal"), **fixtures.symptom_set("hyperthyroid_ideal")},
                "Hyperthyroidism",
            ),
        ]
        cm = evaluate(cascade, cases)
        assert set(cm.labels) == {
            "Type 1 Diabetes",
            "Type 2 Diabetes",
            "Hyperthyroidism",
            "Hypothyroidism",
        }
        assert cm.count("Type 1 Diabetes", "Type 1 Diabetes") == 1
        assert cm.count("Hyperthyroidism", "Hyperthyroidism") == 1

    def test_hierarchy_nonconvergence_unclassified(self, cascade):
        root = cascade.nodes["fcm1"]
        starved = replace(root, rule_config=replace(root.rule_config, max_iterations=1))
        broken = HierarchySpec("fcm1", {**cascade.nodes, "fcm1": starved})
        cases = [
            LabeledCase(fixtures.symptom_set("diabetes_ideal"), "Type 1 Diabetes"),
        ]
        cm = evaluate(broken, cases)
        assert sum(cm.unclassified) == 1
        assert cm.total == 1


def test_confusion_matrix_shape_checked():
    with pytest.raises(ValueError):
        ConfusionMatrix(("A", "B"), ((1, 2, 3), (0, 0, 0)))


def test_labeled_case_requires_label():
    with pytest.raises(ValueError):
        LabeledCase({"Fatigue": 0.5}, "")
