"""A hand-written session log with hand-tallied expected metrics.

The timeline covers: a 700 s pretest gap (capped to 300 s), an error step, a
hint justified in a restarted attempt (justified but voided from the final
solution), a message justified and needed, hints on skipped problems, a
restart on a solved problem and another on an unsolved one, and a
justified-but-not-needed assertion.
"""

from logictutor.events import InteractionEvent

EXPECTED = {
    "hints_given": 5,
    "hints_justified": 3,
    "hints_needed": 1,
    "hjr": 0.6,
    "hnr": 0.2,
    "unsolicited_given": 4,
    "unsolicited_hjr": 0.75,
    "unsolicited_hnr": 0.25,
    "pretest_time_minutes": 8.0,  # includes the 700 s gap capped at 300 s
    "pretest_avg_length": 1.5,
    "pretest_accuracy": 0.75,
    "pretest_steps": 3,
    "posttest_time_minutes": 610.0 / 60.0,
    "posttest_avg_length": 2.0,
    "posttest_accuracy": 0.8,
    "unsolved_time_minutes": 9.5,
    "restarts_on_solved": 1,
}


def _e(ts, phase, problem, attempt, kind, **data):
    return InteractionEvent(
        ts=float(ts), session="crafted", phase=phase, level=0,
        problem=problem, attempt=attempt, kind=kind, data=data,
    )


def crafted_log() -> list[InteractionEvent]:
    return [
        _e(0, "intro", "", 0, "SessionStarted",
           student="crafted", condition="assertions", seed=0),
        _e(100, "intro", "i1", 1, "Advance", rule="MP", statement="B", node=6),
        # pretest problem 1: two steps, the second after a 700 s pause
        _e(160, "pretest", "pre1", 1, "StepValid",
           rule="MP", sources=[1], derived="B", node=11, number=5, color="",
           completed=False),
        _e(860, "pretest", "pre1", 1, "StepValid",
           rule="MP", sources=[11], derived="C", node=12, number=6, color="",
           completed=True),
        _e(860, "pretest", "pre1", 1, "ProblemComplete", length=2),
        # pretest problem 2: one error, then done
        _e(920, "pretest", "pre2", 1, "StepError",
           rule="MP", sources=[2], derived="X", feedback="MP needs ..."),
        _e(980, "pretest", "pre2", 1, "StepValid",
           rule="Simp", sources=[2], derived="D", node=13, number=5, color="",
           completed=True),
        _e(980, "pretest", "pre2", 1, "ProblemComplete", length=1),
        # training problem T1: assertion justified, then a restart voids it;
        # a message in attempt 2 is justified and needed
        _e(1000, "training", "T1", 1, "HintGiven",
           hint=1, hint_kind="assertion", statement="X", node=50),
        _e(1010, "training", "T1", 1, "StepValid",
           rule="Simp", sources=[1], derived="X", node=50, number=5, color="gray",
           completed=False),
        _e(1010, "training", "T1", 1, "HintJustified", hint=1, node=50),
        _e(1030, "training", "T1", 2, "Restart", restarts=1),
        _e(1040, "training", "T1", 2, "HintGiven",
           hint=2, hint_kind="message", statement="Y", node=0),
        _e(1050, "training", "T1", 2, "StepValid",
           rule="Simp", sources=[2], derived="Y", node=52, number=5, color="green",
           completed=False),
        _e(1050, "training", "T1", 2, "HintJustified", hint=2, node=52),
        _e(1070, "training", "T1", 2, "StepValid",
           rule="MP", sources=[52], derived="Z", node=53, number=6, color="green",
           completed=True),
        _e(1070, "training", "T1", 2, "ProblemComplete", length=2),
        # training problem T2: two hints, never solved (skipped)
        _e(1100, "training", "T2", 1, "HintGiven",
           hint=3, hint_kind="ondemand", statement="Z", node=0),
        _e(1220, "training", "T2", 1, "HintGiven",
           hint=4, hint_kind="message", statement="W", node=0),
        _e(1340, "training", "T2", 1, "Skip", skips_used=1),
        # training problem T3: restart on a problem that ends unsolved
        _e(1400, "training", "T3", 1, "StepValid",
           rule="Simp", sources=[1], derived="P", node=60, number=5, color="gray",
           completed=False),
        _e(1520, "training", "T3", 2, "Restart", restarts=1),
        _e(1640, "training", "T3", 2, "Skip", skips_used=2),
        # training problem T4: assertion justified but not needed
        _e(1700, "training", "T4", 1, "HintGiven",
           hint=5, hint_kind="assertion", statement="Q", node=70),
        _e(1760, "training", "T4", 1, "StepValid",
           rule="Simp", sources=[1], derived="Q", node=70, number=5, color="yellow",
           completed=False),
        _e(1760, "training", "T4", 1, "HintJustified", hint=5, node=70),
        _e(1790, "training", "T4", 1, "StepValid",
           rule="MP", sources=[2], derived="R", node=71, number=6, color="green",
           completed=True),
        _e(1790, "training", "T4", 1, "ProblemComplete", length=2),
        # posttest: four problems, one error
        _e(2000, "posttest", "po1", 1, "StepValid",
           rule="MP", sources=[1], derived="A", node=80, number=5, color="",
           completed=True),
        _e(2000, "posttest", "po1", 1, "ProblemComplete", length=1),
        _e(2060, "posttest", "po2", 1, "StepValid",
           rule="MP", sources=[1], derived="B", node=81, number=5, color="",
           completed=True),
        _e(2060, "posttest", "po2", 1, "ProblemComplete", length=3),
        _e(2120, "posttest", "po3", 1, "StepError",
           rule="MT", sources=[1, 2], derived="C", feedback="MT needs ..."),
        _e(2150, "posttest", "po3", 1, "StepValid",
           rule="MP", sources=[2], derived="C", node=82, number=5, color="",
           completed=True),
        _e(2150, "posttest", "po3", 1, "ProblemComplete", length=2),
        _e(2400, "posttest", "po4", 1, "StepValid",
           rule="MP", sources=[1], derived="D", node=83, number=5, color="",
           completed=True),
        _e(2400, "posttest", "po4", 1, "ProblemComplete", length=2),
    ]
