import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from regtrack.evaluation import (
    ActionabilityReport,
    ApplicabilityReport,
    ClassMetrics,
    accuracy,
    class_prf,
    confusion,
    evaluate_actionability,
    evaluate_applicability,
    load_report,
    macro_average,
    prf,
    relevant_metrics,
    report_from_json_dict,
    save_report,
)
from regtrack.labels import ActionabilityLabel, ApplicabilityLabel

AR = ActionabilityLabel.ACTION_REQUIRED
IO = ActionabilityLabel.INFORMATION_ONLY
IRR = ActionabilityLabel.IRRELEVANT


def expand_confusion(rows):
    """rows[gold] = {pred: count} -> (gold list, pred list)."""
    gold, pred = [], []
    for g, cells in rows.items():
        for p, n in cells.items():
            gold.extend([g] * n)
            pred.extend([p] * n)
    return gold, pred


# A 130-item confusion fixture with hand-checked per-class cells:
# AR .60/.60/.60, IO .50/.43/.46, Irr .79/.84/.81, Relevant .65/.58/.61,
# accuracy 71%. Frozen here; the tests assert each cell independently.
LR_ROW_CONFUSION = {
    AR: {AR: 6, IO: 1, IRR: 3},
    IO: {AR: 4, IO: 15, IRR: 16},
    IRR: {AR: 0, IO: 14, IRR: 71},
}


class TestConfusion:
    def test_hand_tally(self):
        cm = confusion(["A", "A", "B"], ["A", "B", "B"], ["A", "B"])
        assert cm.counts == ((1, 1), (0, 1))

    def test_identity_is_diagonal(self):
        cm = confusion(["A", "B", "B"], ["A", "B", "B"], ["A", "B"])
        assert cm.counts == ((1, 0), (0, 2))

    def test_empty_rejected(self):
        with pytest.raises(ValueError):
            confusion([], [], ["A"])

    def test_length_mismatch_rejected(self):
        with pytest.raises(ValueError):
            confusion(["A"], ["A", "B"], ["A", "B"])

    def test_unknown_label_rejected(self):
        with pytest.raises(ValueError):
            confusion(["A"], ["C"], ["A", "B"])

    def test_row_and_column_sums(self):
        gold, pred = expand_confusion(LR_ROW_CONFUSION)
        cm = confusion(gold, pred, list(ActionabilityLabel))
        for label in ActionabilityLabel:
            assert cm.gold_count(label) == sum(LR_ROW_CONFUSION[label].values())
        assert cm.predicted_count(AR) == 10
        assert cm.predicted_count(IO) == 30
        assert cm.predicted_count(IRR) == 90


class TestClassPrf:
    def test_sixty_sixty_sixty(self):
        metrics = prf(tp=6, fp=4, fn=4)
        assert metrics.rounded() == (0.60, 0.60, 0.60)

    def test_zero_division_convention(self):
        metrics = prf(tp=0, fp=0, fn=10)
        assert (metrics.precision, metrics.recall, metrics.f1) == (0.0, 0.0, 0.0)

    def test_perfect_class(self):
        metrics = prf(tp=5, fp=0, fn=0)
        assert (metrics.precision, metrics.recall, metrics.f1) == (1.0, 1.0, 1.0)

    def test_from_confusion(self):
        gold, pred = expand_confusion(LR_ROW_CONFUSION)
        cm = confusion(gold, pred, list(ActionabilityLabel))
        assert class_prf(cm, AR).rounded() == (0.60, 0.60, 0.60)
        assert class_prf(cm, IO).rounded() == (0.50, 0.43, 0.46)
        assert class_prf(cm, IRR).rounded() == (0.79, 0.84, 0.81)


class TestAccuracy:
    def test_diagonal_is_one(self):
        cm = confusion(["A", "B"], ["A", "B"], ["A", "B"])
        assert accuracy(cm) == 1.0

    def test_half(self):
        cm = confusion(["A", "A"], ["A", "B"], ["A", "B"])
        assert accuracy(cm) == 0.5

    def test_92_of_130_reports_71_percent(self):
        gold, pred = expand_confusion(LR_ROW_CONFUSION)
        cm = confusion(gold, pred, list(ActionabilityLabel))
        assert cm.total() == 130
        assert accuracy(cm) == pytest.approx(92 / 130)
        report = evaluate_actionability(gold, pred)
        assert report.accuracy_percent() == 71


class TestRelevantMetrics:
    def test_ar_predicted_io_is_relevant_tp(self):
        metrics = relevant_metrics([AR], [IO])
        assert metrics.recall == 1.0
        assert metrics.precision == 1.0

    def test_ar_predicted_irr_is_relevant_fn(self):
        metrics = relevant_metrics([AR], [IRR])
        assert metrics.recall == 0.0

    def test_hand_tally(self):
        metrics = relevant_metrics([AR, IO, IRR], [IO, IRR, IRR])
        assert metrics.precision == 1.0
        assert metrics.recall == 0.5
        assert metrics.f1 == pytest.approx(2 / 3)

    def test_lr_row_relevant_cell(self):
        gold, pred = expand_confusion(LR_ROW_CONFUSION)
        assert relevant_metrics(gold, pred).rounded() == (0.65, 0.58, 0.61)


class TestMacroAverage:
    def test_three_class_lr_row(self):
        avg = macro_average(
            [
                ClassMetrics(0.60, 0.60, 0.60),
                ClassMetrics(0.50, 0.43, 0.46),
                ClassMetrics(0.79, 0.84, 0.81),
            ]
        )
        assert avg.rounded() == (0.63, 0.62, 0.62)

    def test_hierarchical_lr_row(self):
        avg = macro_average(
            [
                ClassMetrics(0.50, 0.70, 0.58),
                ClassMetrics(0.50, 0.51, 0.50),
                ClassMetrics(0.84, 0.79, 0.81),
            ]
        )
        assert avg.rounded() == (0.61, 0.67, 0.63)

    def test_six_class_precision_average(self):
        values = [0.87, 1.0, 0.0, 0.65, 0.61, 0.51]
        avg = macro_average([ClassMetrics(v, 0.0, 0.0) for v in values])
        assert round(avg.precision, 2) == 0.61

    def test_mean_of_equals(self):
        m = ClassMetrics(0.4, 0.5, 0.44)
        avg = macro_average([m, m, m])
        assert avg.precision == pytest.approx(m.precision)
        assert avg.recall == pytest.approx(m.recall)
        assert avg.f1 == pytest.approx(m.f1)

    @settings(max_examples=30)
    @given(st.permutations(range(3)))
    def test_permutation_invariant(self, order):
        metrics = [
            ClassMetrics(0.1, 0.2, 0.13),
            ClassMetrics(0.5, 0.6, 0.55),
            ClassMetrics(0.9, 0.8, 0.85),
        ]
        shuffled = [metrics[i] for i in order]
        assert macro_average(shuffled) == macro_average(metrics)


class TestEvaluateActionability:
    def test_perfect_predictions(self):
        gold = [AR, IO, IRR, AR, IO, IRR]
        report = evaluate_actionability(gold, gold)
        assert report.accuracy == 1.0
        for label in ActionabilityLabel:
            assert report.per_class(label) == ClassMetrics(1.0, 1.0, 1.0)
        assert report.relevant == ClassMetrics(1.0, 1.0, 1.0)
        assert report.average == ClassMetrics(1.0, 1.0, 1.0)

    def test_gated_ar_doc_is_double_false_negative(self):
        gold = [AR, IO, IRR]
        pred = [IRR, IO, IRR]  # step 1 gated the AR doc
        report = evaluate_actionability(gold, pred)
        assert report.action_required.recall == 0.0
        assert report.relevant.recall == 0.5

    def test_lr_row_average(self):
        gold, pred = expand_confusion(LR_ROW_CONFUSION)
        report = evaluate_actionability(gold, pred)
        assert report.average.rounded() == (0.63, 0.62, 0.62)

    def test_average_excludes_relevant(self):
        gold, pred = expand_confusion(LR_ROW_CONFUSION)
        report = evaluate_actionability(gold, pred)
        by_hand = macro_average(
            [report.action_required, report.information_only, report.irrelevant]
        )
        assert report.average == by_hand

    def test_render_table_columns(self):
        gold, pred = expand_confusion(LR_ROW_CONFUSION)
        table = evaluate_actionability(gold, pred).render_table()
        header = table.splitlines()[0]
        for column in (
            "Accuracy",
            "ActionRequired",
            "InformationOnly",
            "Relevant",
            "Irrelevant",
            "Average",
        ):
            assert column in header
        assert "71%" in table
        assert "0.60/0.60/0.60" in table


class TestEvaluateApplicability:
    def test_zero_class_contributes_to_average(self):
        labels = list(ApplicabilityLabel)
        gold = [labels[0]] * 3 + [labels[4]] * 3
        pred = [labels[0]] * 3 + [labels[4]] * 3
        report = evaluate_applicability(gold, pred)
        # four classes are 0/0/0 and still count in the macro mean
        assert report.average.precision == pytest.approx(2 / 6)

    def test_single_class_perfect(self):
        gold = [ApplicabilityLabel.PAYROLL] * 4 + [ApplicabilityLabel.HR]
        report = evaluate_applicability(gold, gold)
        assert report.per_class[ApplicabilityLabel.PAYROLL] == ClassMetrics(1.0, 1.0, 1.0)

    def test_render_includes_all_six(self):
        gold = [ApplicabilityLabel.PAYROLL, ApplicabilityLabel.HR]
        table = evaluate_applicability(gold, gold).render_table()
        for label in ApplicabilityLabel:
            assert label.value in table


class TestReportSerialization:
    def test_actionability_round_trip(self, tmp_path):
        gold, pred = expand_confusion(LR_ROW_CONFUSION)
        report = evaluate_actionability(gold, pred)
        save_report(report, tmp_path / "r.json")
        loaded = load_report(tmp_path / "r.json")
        assert isinstance(loaded, ActionabilityReport)
        assert loaded == report

    def test_applicability_round_trip(self):
        gold = [ApplicabilityLabel.PAYROLL, ApplicabilityLabel.HR]
        report = evaluate_applicability(gold, gold)
        loaded = report_from_json_dict(report.to_json_dict())
        assert isinstance(loaded, ApplicabilityReport)
        assert loaded == report
