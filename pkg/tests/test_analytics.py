import pytest

from logictutor.analytics import (
    IncompletePhase,
    PretestProfile,
    ZeroVariance,
    analyze_cohort,
    compute_hint_metrics,
    effort_metrics,
    pearson_corr,
    performance_metrics,
    proficiency_split,
    student_metrics,
)

from .crafted import EXPECTED, crafted_log


@pytest.fixture(scope="module")
def log():
    return crafted_log()


def test_hint_tallies(log):
    usage = compute_hint_metrics(log)
    assert usage.total_given == EXPECTED["hints_given"]
    assert usage.total_justified == EXPECTED["hints_justified"]
    assert usage.total_needed == EXPECTED["hints_needed"]
    assert usage.hjr == EXPECTED["hjr"]
    assert usage.hnr == EXPECTED["hnr"]
    assert usage.unsolicited_given == EXPECTED["unsolicited_given"]
    assert usage.unsolicited_hjr == EXPECTED["unsolicited_hjr"]
    assert usage.unsolicited_hnr == EXPECTED["unsolicited_hnr"]


def test_hint_rate_identity(log):
    usage = compute_hint_metrics(log)
    assert usage.hjr * usage.total_given == usage.total_justified
    assert usage.total_needed <= usage.total_justified <= usage.total_given


def test_simple_rate_example():
    """10 given, 9 justified, 8 needed reads as HJR 0.9 and HNR 0.8."""
    from tests.crafted import _e

    events = [
        _e(0, "intro", "", 0, "SessionStarted", student="x", condition="assertions", seed=0)
    ]
    t = 10
    for i in range(1, 11):
        events.append(
            _e(t, "training", "P", 1, "HintGiven",
               hint=i, hint_kind="assertion", statement=f"S{i}", node=100 + i)
        )
        t += 1
    needed_nodes = []
    for i in range(1, 10):  # justify hints 1..9
        events.append(
            _e(t, "training", "P", 1, "StepValid",
               rule="Simp", sources=[1], derived=f"S{i}", node=100 + i,
               number=i, color="", completed=False)
        )
        events.append(_e(t, "training", "P", 1, "HintJustified", hint=i, node=100 + i))
        if i <= 8:
            needed_nodes.append(100 + i)
        t += 1
    events.append(
        _e(t, "training", "P", 1, "StepValid",
           rule="Conj", sources=needed_nodes, derived="GOAL", node=200, number=10,
           color="", completed=True)
    )
    events.append(_e(t, "training", "P", 1, "ProblemComplete", length=10))
    usage = compute_hint_metrics(events)
    assert (usage.total_given, usage.total_justified, usage.total_needed) == (10, 9, 8)
    assert usage.hjr == 0.9 and usage.hnr == 0.8


def test_zero_hints_leaves_rates_undefined():
    usage = compute_hint_metrics(crafted_log()[:3])
    assert usage.total_given == 0
    assert usage.hjr is None and usage.hnr is None


def test_pretest_performance(log):
    perf = performance_metrics(log, "pretest")
    assert perf.total_time_minutes == pytest.approx(EXPECTED["pretest_time_minutes"])
    assert perf.avg_solution_length == EXPECTED["pretest_avg_length"]
    assert perf.accuracy == EXPECTED["pretest_accuracy"]


def test_posttest_performance(log):
    perf = performance_metrics(log, "posttest")
    assert perf.total_time_minutes == pytest.approx(EXPECTED["posttest_time_minutes"])
    assert perf.avg_solution_length == EXPECTED["posttest_avg_length"]
    assert perf.accuracy == EXPECTED["posttest_accuracy"]


def test_cap_applies_to_each_gap(log):
    # without the cap, the pretest would include the full 700 s gap
    uncapped = sum(
        b.ts - a.ts
        for a, b in zip(log, log[1:])
        if b.phase == "pretest"
    )
    assert uncapped / 60.0 > performance_metrics(log, "pretest").total_time_minutes


def test_incomplete_phase(log):
    truncated = [e for e in log if not (e.phase == "posttest" and e.problem == "po4")]
    with pytest.raises(IncompletePhase):
        performance_metrics(truncated, "posttest")


def test_effort(log):
    effort = effort_metrics(log)
    assert effort.unsolved_time_minutes == pytest.approx(EXPECTED["unsolved_time_minutes"])
    assert effort.restarts == EXPECTED["restarts_on_solved"]


def test_effort_empty():
    effort = effort_metrics(crafted_log()[:3])
    assert (effort.unsolved_time_minutes, effort.restarts) == (0.0, 0)


def test_student_metrics_assembly(log):
    m = student_metrics(log)
    assert m.student == "crafted" and m.condition == "assertions"
    assert m.pretest_steps == EXPECTED["pretest_steps"]
    assert m.interactions == len(log)


# --- prior proficiency ---------------------------------------------------------


def test_proficiency_dominating_pair():
    profiles = [PretestProfile(5, 1.0, 0.9), PretestProfile(9, 2.0, 0.4)]
    results = proficiency_split(profiles)
    assert [r.score for r in results] == [1.0, 0.0]
    assert [r.label for r in results] == ["High", "Low"]


def test_proficiency_identical_students_all_low():
    profiles = [PretestProfile(5, 1.0, 0.9)] * 3
    results = proficiency_split(profiles)
    assert all(r.score == 0.5 for r in results)
    assert all(not r.high for r in results)  # 0.5 is not > 0.5


def test_proficiency_five_student_oracle():
    profiles = [
        PretestProfile(10, 2.0, 0.5),
        PretestProfile(20, 1.0, 0.9),
        PretestProfile(15, 3.0, 0.7),
        PretestProfile(10, 1.0, 0.9),
        PretestProfile(30, 5.0, 0.1),
    ]
    results = proficiency_split(profiles)
    expected = [0.75, 5.0 / 6.0, 2.0 / 3.0, 1.0, 0.0]
    for got, want in zip(results, expected):
        assert got.score == pytest.approx(want, abs=1e-12)
    assert [r.high for r in results] == [True, True, True, True, False]


def test_proficiency_affine_invariance():
    base = [
        PretestProfile(10, 2.0, 0.5),
        PretestProfile(20, 1.0, 0.9),
        PretestProfile(15, 3.0, 0.7),
    ]
    scaled = [
        PretestProfile(p.steps, 7.0 * p.time_per_step_minutes + 3.0, p.accuracy)
        for p in base
    ]
    a = [r.score for r in proficiency_split(base)]
    b = [r.score for r in proficiency_split(scaled)]
    assert a == pytest.approx(b, abs=1e-12)


def test_proficiency_needs_cohort():
    with pytest.raises(ValueError):
        proficiency_split([PretestProfile(5, 1.0, 0.9)])


def test_cohort_analysis_fills_proficiency(log):
    other = crafted_log()
    for e in other:
        e.session = "crafted2"
        e.ts *= 1.5  # slower student
        if e.kind == "SessionStarted":
            e.data = dict(e.data, student="crafted2", condition="messages")
    cohort = analyze_cohort([log, other])
    assert cohort[0].proficiency.high and not cohort[1].proficiency.high


# --- correlation ----------------------------------------------------------------


def test_pearson_examples():
    x = [1.0, 2.0, 3.0, 4.0]
    assert pearson_corr(x, [2 * v + 1 for v in x]) == pytest.approx(1.0)
    assert pearson_corr(x, [-v for v in x]) == pytest.approx(-1.0)


def test_pearson_six_point_sample_matches_computational_formula():
    xs = [1.0, 2.0, 4.0, 5.0, 7.0, 9.0]
    ys = [2.0, 4.0, 4.0, 5.0, 8.0, 9.0]
    n = len(xs)
    sx, sy = sum(xs), sum(ys)
    sxy = sum(a * b for a, b in zip(xs, ys))
    sxx = sum(a * a for a in xs)
    syy = sum(b * b for b in ys)
    expected = (n * sxy - sx * sy) / ((n * sxx - sx**2) * (n * syy - sy**2)) ** 0.5
    assert pearson_corr(xs, ys) == pytest.approx(expected, abs=1e-12)


def test_pearson_errors():
    with pytest.raises(ZeroVariance):
        pearson_corr([1.0, 1.0, 1.0], [1.0, 2.0, 3.0])
    with pytest.raises(ValueError):
        pearson_corr([1.0, 2.0], [1.0, 2.0])
    with pytest.raises(ValueError):
        pearson_corr([1.0, 2.0, 3.0], [1.0, 2.0])
