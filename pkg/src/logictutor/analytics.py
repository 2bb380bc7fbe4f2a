"""Everything measured from event logs: hint usage, test performance, prior
proficiency, and effort.

A hint is *justified* when its statement was later derived within the same
problem attempt, and *needed* when the justifying node additionally sits in
the backward justification closure of the final complete solution. All
interaction times are capped at five minutes per gap before summing.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional, Sequence

from . import events as ev
from .events import InteractionEvent
from .policy import HintKind

CAP_SECONDS = 300.0
REQUIRED_SOLVES = {"pretest": 2, "posttest": 4}

UNSOLICITED_KINDS = (HintKind.MESSAGE.value, HintKind.ASSERTION.value)
ALL_KINDS = (HintKind.ON_DEMAND.value,) + UNSOLICITED_KINDS


class IncompletePhase(Exception):
    pass


class ZeroVariance(ValueError):
    pass


def _rate(numerator: int, denominator: int) -> Optional[float]:
    if denominator == 0:
        return None
    return numerator / denominator


@dataclass
class HintUsage:
    given: dict[str, int] = field(default_factory=lambda: {k: 0 for k in ALL_KINDS})
    justified: dict[str, int] = field(default_factory=lambda: {k: 0 for k in ALL_KINDS})
    needed: dict[str, int] = field(default_factory=lambda: {k: 0 for k in ALL_KINDS})

    @property
    def total_given(self) -> int:
        return sum(self.given.values())

    @property
    def total_justified(self) -> int:
        return sum(self.justified.values())

    @property
    def total_needed(self) -> int:
        return sum(self.needed.values())

    @property
    def hjr(self) -> Optional[float]:
        return _rate(self.total_justified, self.total_given)

    @property
    def hnr(self) -> Optional[float]:
        return _rate(self.total_needed, self.total_given)

    def _unsolicited(self, table: dict[str, int]) -> int:
        return sum(table[k] for k in UNSOLICITED_KINDS)

    @property
    def unsolicited_given(self) -> int:
        return self._unsolicited(self.given)

    @property
    def unsolicited_hjr(self) -> Optional[float]:
        return _rate(self._unsolicited(self.justified), self.unsolicited_given)

    @property
    def unsolicited_hnr(self) -> Optional[float]:
        return _rate(self._unsolicited(self.needed), self.unsolicited_given)


def _needed_nodes(steps: list[InteractionEvent]) -> set[int]:
    """Backward justification closure from the completing step of one attempt."""
    sources = {e.data["node"]: e.data["sources"] for e in steps}
    completing = [e.data["node"] for e in steps if e.data.get("completed")]
    if not completing:
        return set()
    needed: set[int] = set()
    stack = [completing[-1]]
    while stack:
        nid = stack.pop()
        if nid in needed:
            continue
        needed.add(nid)
        stack.extend(sources.get(nid, []))
    return needed


def compute_hint_metrics(events: Sequence[InteractionEvent]) -> HintUsage:
    """Per-kind hint counts over training, with justification and needed analysis.

    Hints given on problems that were never solved stay in the denominator but
    can never be needed. The invariant needed <= justified <= given holds per
    kind by construction.
    """
    usage = HintUsage()
    hints: dict[int, InteractionEvent] = {}
    justified: dict[int, InteractionEvent] = {}
    final_attempt: dict[str, int] = {}
    for e in events:
        if e.phase != "training":
            continue
        if e.kind == ev.HINT_GIVEN:
            hints[e.data["hint"]] = e
            usage.given[e.data["hint_kind"]] += 1
        elif e.kind == ev.HINT_JUSTIFIED and e.data["hint"] in hints:
            justified[e.data["hint"]] = e
            usage.justified[hints[e.data["hint"]].data["hint_kind"]] += 1
        elif e.kind == ev.PROBLEM_COMPLETE:
            final_attempt[e.problem] = e.attempt
    needed_cache: dict[str, set[int]] = {}
    for pid, attempt in final_attempt.items():
        steps = [
            e
            for e in events
            if e.kind == ev.STEP_VALID and e.problem == pid and e.attempt == attempt
        ]
        needed_cache[pid] = _needed_nodes(steps)
    for hint_id, je in justified.items():
        pid = je.problem
        if final_attempt.get(pid) != je.attempt:
            continue  # justified in an attempt that was later restarted or never solved
        if je.data["node"] in needed_cache.get(pid, set()):
            usage.needed[hints[hint_id].data["hint_kind"]] += 1
    return usage


@dataclass
class PhasePerformance:
    solved: int
    avg_solution_length: float
    total_time_minutes: float
    accuracy: float


def _capped_gaps(
    events: Sequence[InteractionEvent], belongs
) -> float:
    """Sum of inter-event gaps (seconds, capped) attributed to the later event."""
    total = 0.0
    for prev, cur in zip(events, events[1:]):
        if belongs(cur):
            total += min(cur.ts - prev.ts, CAP_SECONDS)
    return total


def performance_metrics(
    events: Sequence[InteractionEvent], phase: str, required: Optional[int] = None
) -> PhasePerformance:
    """Average solution length, capped total time (minutes) and rule accuracy
    for a test phase."""
    if required is None:
        required = REQUIRED_SOLVES[phase]
    lengths = [
        e.data["length"]
        for e in events
        if e.kind == ev.PROBLEM_COMPLETE and e.phase == phase
    ]
    if len(lengths) < required:
        raise IncompletePhase(f"{phase}: {len(lengths)} of {required} problems solved")
    seconds = _capped_gaps(events, lambda e: e.phase == phase)
    valid = sum(1 for e in events if e.kind == ev.STEP_VALID and e.phase == phase)
    errors = sum(1 for e in events if e.kind == ev.STEP_ERROR and e.phase == phase)
    return PhasePerformance(
        solved=len(lengths),
        avg_solution_length=sum(lengths) / len(lengths),
        total_time_minutes=seconds / 60.0,
        accuracy=valid / (valid + errors),
    )


@dataclass
class EffortMetrics:
    unsolved_time_minutes: float
    restarts: int


def effort_metrics(events: Sequence[InteractionEvent]) -> EffortMetrics:
    """Time on training problems that ended unsolved, plus restarts on training
    problems that were eventually solved."""
    attempted = {e.problem for e in events if e.phase == "training" and e.problem}
    solved = {
        e.problem
        for e in events
        if e.kind == ev.PROBLEM_COMPLETE and e.phase == "training"
    }
    unsolved = attempted - solved
    seconds = _capped_gaps(
        events, lambda e: e.phase == "training" and e.problem in unsolved
    )
    restarts = sum(
        1
        for e in events
        if e.kind == ev.RESTART and e.phase == "training" and e.problem in solved
    )
    return EffortMetrics(seconds / 60.0, restarts)


# --- prior proficiency -----------------------------------------------------------


@dataclass
class PretestProfile:
    steps: int
    time_per_step_minutes: float
    accuracy: float


@dataclass
class Proficiency:
    score: float
    high: bool

    @property
    def label(self) -> str:
        return "High" if self.high else "Low"


def _minmax(values: list[float], invert: bool) -> list[float]:
    lo, hi = min(values), max(values)
    if hi == lo:
        # a constant feature cannot rank anyone; it contributes the midpoint
        return [0.5] * len(values)
    if invert:
        return [(hi - v) / (hi - lo) for v in values]
    return [(v - lo) / (hi - lo) for v in values]


def proficiency_split(profiles: Sequence[PretestProfile]) -> list[Proficiency]:
    """Min-max normalize (steps and time-per-step inverted, accuracy direct),
    average equally, renormalize, and split High/Low at 0.5 (strictly greater
    is High)."""
    if len(profiles) < 2:
        raise ValueError("proficiency split needs a cohort of at least 2")
    steps = _minmax([float(p.steps) for p in profiles], invert=True)
    times = _minmax([p.time_per_step_minutes for p in profiles], invert=True)
    accs = _minmax([p.accuracy for p in profiles], invert=False)
    combined = [(s + t + a) / 3.0 for s, t, a in zip(steps, times, accs)]
    scores = _minmax(combined, invert=False)
    return [Proficiency(s, s > 0.5) for s in scores]


def pearson_corr(x: Sequence[float], y: Sequence[float]) -> float:
    """Product-moment correlation coefficient."""
    if len(x) != len(y):
        raise ValueError("vectors differ in length")
    if len(x) < 3:
        raise ValueError("need at least 3 observations")
    n = len(x)
    mx = sum(x) / n
    my = sum(y) / n
    sxx = sum((a - mx) ** 2 for a in x)
    syy = sum((b - my) ** 2 for b in y)
    if sxx == 0.0 or syy == 0.0:
        raise ZeroVariance("a constant vector has no correlation")
    sxy = sum((a - mx) * (b - my) for a, b in zip(x, y))
    return sxy / (sxx * syy) ** 0.5


# --- per-student assembly ----------------------------------------------------------


@dataclass
class StudentMetrics:
    student: str
    condition: str
    interactions: int
    hints: HintUsage
    pretest: PhasePerformance
    posttest: PhasePerformance
    effort: EffortMetrics
    pretest_steps: int = 0
    proficiency: Optional[Proficiency] = None

    def pretest_profile(self) -> PretestProfile:
        steps = self.pretest_steps
        time_per_step = self.pretest.total_time_minutes / steps if steps else 0.0
        return PretestProfile(steps, time_per_step, self.pretest.accuracy)


def student_metrics(events: Sequence[InteractionEvent]) -> StudentMetrics:
    head = events[0]
    if head.kind != ev.SESSION_STARTED:
        raise ValueError("log does not begin with SessionStarted")
    metrics = StudentMetrics(
        student=head.data["student"],
        condition=head.data["condition"],
        interactions=len(events),
        hints=compute_hint_metrics(events),
        pretest=performance_metrics(events, "pretest"),
        posttest=performance_metrics(events, "posttest"),
        effort=effort_metrics(events),
    )
    metrics.pretest_steps = sum(
        1 for e in events if e.kind == ev.STEP_VALID and e.phase == "pretest"
    )
    return metrics


def analyze_cohort(logs: Sequence[Sequence[InteractionEvent]]) -> list[StudentMetrics]:
    """Per-student metrics, with the cohort-level proficiency split applied."""
    metrics = [student_metrics(log) for log in logs]
    if len(metrics) >= 2:
        split = proficiency_split([m.pretest_profile() for m in metrics])
        for m, p in zip(metrics, split):
            m.proficiency = p
    return metrics
