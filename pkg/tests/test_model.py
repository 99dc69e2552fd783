"""Model validation, competitive wiring, and printed-row repair."""

from __future__ import annotations

from dataclasses import replace

import pytest

from fcmkit import fixtures
from fcmkit.errors import RepairError, ValidationError
from fcmkit.model import (
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


def test_all_fixture_models_valid():
    for name in fixtures.MODEL_NAMES:
        assert validate_model(fixtures.model(name)) == []


def test_fixture_concept_counts():
    assert fixtures.model("fcm1_initial").n == 9
    assert fixtures.model("fcm2_initial").n == 8
    assert fixtures.model("fcm3_initial").n == 10
    assert fixtures.model("fcm1_initial").output_labels == ("Diabetes", "Thyroid")


def test_matrix_orientation_row_is_source(fcm1_table2):
    # Fatigue (row 3) -> Diabetes (column 1) carries 0.6 in the printed table.
    assert fcm1_table2.weights[2][0] == 0.6


def test_out_of_range_weight_reported(fcm1_table2):
    rows = [list(r) for r in fcm1_table2.weights]
    rows[3][1] = 1.5
    bad = replace(fcm1_table2, weights=tuple(tuple(r) for r in rows))
    report = validate_model(bad)
    assert len(report) == 1
    assert "(3,1)" in report[0] and "1.5" in report[0]


def test_shape_violation_reported(fcm1_table2):
    bad = replace(fcm1_table2, weights=tuple(row[:8] for row in fcm1_table2.weights[:8]))
    report = validate_model(bad)
    assert any("8" in line and "9" in line for line in report)


def test_duplicate_and_empty_labels_reported():
    concepts = (
        Concept(0, "A", ConceptKind.OUTPUT),
        Concept(1, "A", ConceptKind.OUTPUT),
        Concept(2, "", ConceptKind.INPUT),
    )
    model = FcmModel("bad", concepts, ((0.0,) * 3,) * 3)
    report = validate_model(model)
    assert any("duplicate" in line for line in report)
    assert any("empty label" in line for line in report)


def test_no_output_concept_reported():
    model = FcmModel("bad", make_concepts(["A", "B"], []), ((0.0, 0.0), (0.0, 0.0)))
    assert any("no output concept" in line for line in validate_model(model))


def test_noncontiguous_ids_reported():
    concepts = (Concept(0, "A", ConceptKind.OUTPUT), Concept(5, "B", ConceptKind.OUTPUT))
    model = FcmModel("bad", concepts, ((0.0, 0.0), (0.0, 0.0)))
    assert any("contiguous" in line for line in validate_model(model))


class TestWireCompetition:
    def test_sets_both_links(self, fcm1_initial):
        wired = wire_competition(fcm1_initial, -1.0)
        assert wired.weights[0][1] == -1.0
        assert wired.weights[1][0] == -1.0

    def test_leaves_everything_else_unchanged(self, fcm1_initial):
        wired = wire_competition(fcm1_initial, -1.0)
        for j in range(fcm1_initial.n):
            for i in range(fcm1_initial.n):
                if {j, i} != {0, 1}:
                    assert wired.weights[j][i] == fcm1_initial.weights[j][i]

    def test_idempotent(self, fcm1_initial):
        once = wire_competition(fcm1_initial, -0.5)
        twice = wire_competition(once, -0.5)
        assert once == twice

    def test_three_outputs_set_six_links(self):
        model = FcmModel(
            "three", make_concepts(["A", "B", "C", "x"], ["A", "B", "C"]), ((0.0,) * 4,) * 4
        )
        wired = wire_competition(model, -1.0)
        changed = [
            (j, i)
            for j in range(4)
            for i in range(4)
            if wired.weights[j][i] != model.weights[j][i]
        ]
        assert len(changed) == 6

    def test_positive_inhibition_rejected(self, fcm1_initial):
        with pytest.raises(ValueError):
            wire_competition(fcm1_initial, 0.5)

    def test_single_output_rejected(self):
        model = FcmModel("one", make_concepts(["A", "x"], ["A"]), ((0.0, 0.0), (0.0, 0.0)))
        with pytest.raises(ValidationError):
            wire_competition(model, -1.0)


class TestRepairPrintedRow:
    # Trained thyroid-subtype row 4 as printed: 11 entries for a 10-column matrix.
    ROW4 = (0.76999, 0.4461, 0.0, 1.0, 0.0, 0.0, 0.0, 0.5306, 0.52982, 0.0, 0.75725)
    ROW4_REF = tuple(w != 0.0 for w in fixtures.FCM3_INITIAL_ROWS[3])

    def test_overlength_row_repaired(self):
        repaired = repair_printed_row(self.ROW4, self.ROW4_REF)
        assert repaired == [0.76999, 0.4461, 0.0, 1.0, 0.0, 0.0, 0.5306, 0.52982, 0.0, 0.75725]

    def test_consistent_row_unchanged(self):
        row3 = fixtures.FCM3_TRAINED_PRINTED_ROWS[2]
        ref = tuple(w != 0.0 for w in fixtures.FCM3_INITIAL_ROWS[2])
        assert repair_printed_row(row3, ref) == list(row3)

    def test_output_pattern_always_matches_reference(self):
        for row, ref in zip(fixtures.FCM3_TRAINED_PRINTED_ROWS, fixtures.fcm3_repair_references()):
            repaired = repair_printed_row(row, ref)
            assert len(repaired) == len(ref)
            assert tuple(v != 0.0 for v in repaired) == ref

    def test_two_entries_too_long_rejected(self):
        with pytest.raises(RepairError):
            repair_printed_row((1.0, 0.0, 0.0, 2.0, 0.0), (True, False, True))

    def test_equal_length_pattern_mismatch_rejected(self):
        with pytest.raises(RepairError):
            repair_printed_row((1.0, 2.0, 0.0), (True, False, True))

    def test_no_reconciling_deletion_rejected(self):
        # the only zero sits before the nonzero, so deletion cannot align {1} to {0}
        with pytest.raises(RepairError):
            repair_printed_row((0.0, 3.0, 4.0), (True, True, False))

    def test_several_deletions_agreeing_on_values_are_fine(self):
        # a run of zeros: deleting any of them yields the same row
        out = repair_printed_row((7.0, 0.0, 0.0, 0.0, 8.0), (True, False, False, True))
        assert out == [7.0, 0.0, 0.0, 8.0]


def test_fuzzy_labels_strictly_ordered():
    ordered = [
        FuzzyWeightLabel.NEGATIVELY_STRONG,
        FuzzyWeightLabel.NEGATIVELY_WEAK,
        FuzzyWeightLabel.NEUTRAL,
        FuzzyWeightLabel.POSITIVELY_WEAK,
        FuzzyWeightLabel.POSITIVELY_STRONG,
    ]
    values = [lab.weight for lab in ordered]
    assert values == sorted(values)
    assert len(set(values)) == len(values)
    assert FuzzyWeightLabel.NEUTRAL.weight == 0.0
    assert all(-1.0 <= v <= 1.0 for v in values)


def test_weight_rows_accepts_labels_and_numbers():
    rows = weight_rows(
        [
            [FuzzyWeightLabel.POSITIVELY_STRONG, 0.1],
            [FuzzyWeightLabel.NEGATIVELY_WEAK, FuzzyWeightLabel.NEUTRAL],
        ]
    )
    assert rows == ((0.75, 0.1), (-0.25, 0.0))
