from dataclasses import replace

import pytest

from corpus.enumerate import build_corpus, SOURCE_EXTERNAL
from experiments import verify
from experiments.report import REPORT_SCHEMA, VerificationReport
from experiments.verify import (
    probe_open_question, profile_graph, run_experiment, verify_color_cover,
    verify_harary, verify_hierarchy, verify_little_theorem, verify_main_theorem,
    verify_nash_williams,
)
from graphs.canon import canonical_form
from graphs.formats import emit_graph6
from graphs.named import named_graph
from models.errors import CorpusError, GraphDomainError, IntegrityError
from models.types import ALGORITHM_VERSION, Experiment, Verdict
from utils.helpers import default_jobs


RECORD_KEYS = {
    "schema", "version", "experiment", "order", "corpus_size", "corpus_source",
    "in_scope", "verdict", "class_counts", "pair_counts", "violations", "findings",
    "multi_member_classes", "notes", "runtime_seconds",
}


@pytest.mark.parametrize("n", [3, 4, 5, 6])
def test_main_theorem(corpus_of, n):
    report = verify_main_theorem(n, corpus=corpus_of(n))
    assert report.verdict is Verdict.PASS
    assert report.in_scope
    assert report.violations == []
    counts = report.class_counts
    assert counts["iso"] == len(corpus_of(n))
    assert counts["iso"] >= counts["wl2"] >= counts["cr"]
    assert counts["iso"] >= counts["exact_deck"]
    assert counts["iso"] >= counts["dcr"]


def test_main_theorem_sees_the_cycle_example(corpus_of):
    report = verify_main_theorem(6, corpus=corpus_of(6))
    assert report.pair_counts["cr_pairs_split_by_dcr"] >= 1
    assert report.pair_counts["cr_pairs_mixed_connectedness"] >= 1


def test_main_theorem_below_order_three(corpus_of):
    report = verify_main_theorem(2, corpus=corpus_of(2))
    assert not report.in_scope
    assert report.verdict is Verdict.PASS
    assert report.multi_member_classes == [sorted(["A_", "A?"])]
    assert not report.requires_attention
    assert not verify_main_theorem(1, corpus=corpus_of(1)).in_scope


@pytest.mark.slow
def test_main_theorem_order_seven(corpus_of):
    report = verify_main_theorem(7, jobs=default_jobs(), corpus=corpus_of(7))
    assert report.corpus_size == 1044
    assert report.verdict is Verdict.PASS
    assert report.class_counts["iso"] >= report.class_counts["dcr"]


@pytest.mark.slow
def test_harary_order_seven(corpus_of):
    report = verify_harary(7, jobs=default_jobs(), corpus=corpus_of(7))
    assert report.verdict is Verdict.PASS
    assert report.class_counts["exact_deck"] == 1044


@pytest.mark.slow
def test_hierarchy_order_seven(corpus_of):
    report = verify_hierarchy(7, jobs=default_jobs(), corpus=corpus_of(7))
    assert report.verdict is Verdict.PASS
    assert report.pair_counts["wl2_pairs"] == 0
    assert report.pair_counts["cr_pairs"] == 22


@pytest.mark.slow
def test_little_theorem_order_seven(corpus_of):
    assert verify_little_theorem(7, jobs=default_jobs(), corpus=corpus_of(7)).verdict is Verdict.PASS


@pytest.mark.slow
def test_nash_williams_order_seven(corpus_of):
    report = verify_nash_williams(7, jobs=default_jobs(), corpus=corpus_of(7))
    assert report.verdict is Verdict.PASS
    assert report.pair_counts["vertex_pairs_checked"] >= 7 * 1044


@pytest.mark.slow
def test_open_question_order_seven(corpus_of):
    report = probe_open_question(7, jobs=default_jobs(), corpus=corpus_of(7))
    assert report.verdict is Verdict.PASS
    assert report.in_scope
    assert report.pair_counts["dcr_pairs_cr_differs"] == len(report.findings)
    assert len(set(report.findings)) == len(report.findings)


@pytest.mark.parametrize("n", [3, 4, 5, 6])
def test_harary(corpus_of, n):
    report = verify_harary(n, corpus=corpus_of(n))
    assert report.verdict is Verdict.PASS
    assert report.class_counts["exact_deck"] == report.class_counts["iso"]


def test_harary_needs_order_three(corpus_of):
    with pytest.raises(GraphDomainError):
        verify_harary(2, corpus=corpus_of(2))


@pytest.mark.parametrize("n", [3, 4, 5, 6])
def test_hierarchy(corpus_of, n):
    report = verify_hierarchy(n, corpus=corpus_of(n))
    assert report.verdict is Verdict.PASS
    assert set(report.pair_counts) == {"wl2_pairs", "cr_pairs", "dcr_pairs"}
    assert report.pair_counts["wl2_pairs"] <= report.pair_counts["cr_pairs"]


@pytest.mark.parametrize("n", [3, 4, 5, 6])
def test_little_theorem(corpus_of, n):
    assert verify_little_theorem(n, corpus=corpus_of(n)).verdict is Verdict.PASS


def test_little_theorem_needs_order_three(corpus_of):
    with pytest.raises(GraphDomainError):
        verify_little_theorem(2, corpus=corpus_of(2))


def test_nash_williams(corpus_of):
    for n in range(2, 7):
        report = verify_nash_williams(n, corpus=corpus_of(n))
        assert report.verdict is Verdict.PASS
        assert report.pair_counts["vertex_pairs_checked"] >= n * len(corpus_of(n))


def test_color_cover(corpus_of):
    for n in range(1, 6):
        report = verify_color_cover(n, n, corpus=corpus_of(n))
        assert report.verdict is Verdict.PASS
        assert report.class_counts["colors_r0"] == 1
        assert report.pair_counts["vertices"] == n * len(corpus_of(n))


@pytest.mark.slow
def test_color_cover_order_six(corpus_of):
    assert verify_color_cover(6, 6, corpus=corpus_of(6)).verdict is Verdict.PASS


def test_open_question_is_deterministic(corpus_of):
    first = probe_open_question(6, corpus=corpus_of(6))
    second = probe_open_question(6, corpus=corpus_of(6))
    assert first.verdict is Verdict.PASS
    assert first.findings == second.findings
    assert first.pair_counts["dcr_pairs_cr_differs"] == len(first.findings)


def test_open_question_below_order_three(corpus_of):
    report = probe_open_question(2, corpus=corpus_of(2))
    assert not report.in_scope
    assert report.findings == ["A? A_"]
    assert not report.requires_attention
    with pytest.raises(GraphDomainError):
        probe_open_question(1, corpus=corpus_of(1))


def test_profile_of_c6():
    profile = profile_graph(emit_graph6(named_graph("C6")))
    other = profile_graph(emit_graph6(named_graph("2C3")))
    assert profile.connected and not other.connected
    assert profile.cr == other.cr
    assert profile.dcr != other.dcr
    assert profile.wl2 != other.wl2
    assert len(profile.exact_deck) == 6
    assert len(set(profile.exact_deck)) == 1


def test_run_experiment_dispatch(corpus_of):
    report = run_experiment(Experiment.COVER, 4, depth=2, corpus=corpus_of(4))
    assert report.experiment == "cover"
    assert set(report.class_counts) == {"colors_r0", "colors_r1", "colors_r2"}
    assert run_experiment(Experiment.OPEN_QUESTION, 4, corpus=corpus_of(4)).experiment == "probe-openq"


def test_external_corpus_is_noted():
    graphs = {canonical_form(named_graph(name)).code for name in ("C4", "P4", "S4")}
    corpus = build_corpus(4, graphs, SOURCE_EXTERNAL, "external")
    report = verify_main_theorem(4, corpus=corpus)
    assert report.corpus_source == SOURCE_EXTERNAL
    assert any("external" in note for note in report.notes)
    with pytest.raises(CorpusError):
        verify_main_theorem(5, corpus=corpus)


def test_report_record_and_text(corpus_of):
    report = verify_little_theorem(4, corpus=corpus_of(4))
    record = report.to_record()
    assert set(record) == RECORD_KEYS
    assert record["schema"] == REPORT_SCHEMA
    assert record["version"] == ALGORITHM_VERSION
    assert record["verdict"] == "PASS"
    assert record["corpus_size"] == 11
    assert "verdict      PASS" in report.to_text()


def test_report_verdicts():
    report = VerificationReport(experiment="main", order=5)
    assert report.verdict is Verdict.PASS
    report.findings.append("B? Bw")
    assert report.requires_attention
    report.violations.extend(["b", "a"])
    report.finalize()
    assert report.verdict is Verdict.FAIL
    assert report.violations == ["a", "b"]


def _collapse(monkeypatch, **fields):
    """Make every profile share the given digests so exact re-checks must disagree."""
    real = verify.profile_graph
    monkeypatch.setattr(verify, "profile_graph", lambda graph6: replace(real(graph6), **fields))


def test_main_theorem_rechecks_deck_classes_exactly(corpus_of, monkeypatch):
    _collapse(monkeypatch, dcr=b"shared")
    with pytest.raises(IntegrityError, match="exact decks differ"):
        verify_main_theorem(4, corpus=corpus_of(4))


def test_hierarchy_rechecks_wl2_classes_exactly(corpus_of, monkeypatch):
    _collapse(monkeypatch, wl2=b"shared")
    with pytest.raises(IntegrityError, match="exact colors differ"):
        verify_hierarchy(4, corpus=corpus_of(4))


def test_open_question_rechecks_candidates_exactly(corpus_of, monkeypatch):
    _collapse(monkeypatch, dcr=b"shared")
    with pytest.raises(IntegrityError, match="disagree"):
        probe_open_question(4, corpus=corpus_of(4))


def test_open_question_rejects_candidates_with_equal_exact_colors(corpus_of, monkeypatch):
    _collapse(monkeypatch, dcr=b"shared")
    monkeypatch.setattr(verify, "dcr_equivalent", lambda g, h, mode=None: True)
    monkeypatch.setattr(verify, "cr_equivalent", lambda g, h, mode=None: True)
    with pytest.raises(IntegrityError, match="disagree"):
        probe_open_question(4, corpus=corpus_of(4))
