"""Append-only interaction events: the substrate of replay and analytics.

One line per event, JSON-encoded with a fixed key order (base fields first,
payload keys sorted), so identical runs produce byte-identical logs.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Iterable

SESSION_STARTED = "SessionStarted"
STEP_VALID = "StepValid"
STEP_ERROR = "StepError"
HINT_GIVEN = "HintGiven"
HINT_JUSTIFIED = "HintJustified"
SKIP = "Skip"
RESTART = "Restart"
PROBLEM_COMPLETE = "ProblemComplete"
ASSERTION_DELETED = "AssertionDeleted"
ADVANCE = "Advance"

_BASE_KEYS = ("ts", "session", "phase", "level", "problem", "attempt", "kind")


@dataclass
class InteractionEvent:
    ts: float
    session: str
    phase: str
    level: int
    problem: str
    attempt: int
    kind: str
    data: dict = field(default_factory=dict)

    def to_line(self) -> str:
        record = {
            "ts": self.ts,
            "session": self.session,
            "phase": self.phase,
            "level": self.level,
            "problem": self.problem,
            "attempt": self.attempt,
            "kind": self.kind,
        }
        for key in sorted(self.data):
            record[key] = self.data[key]
        return json.dumps(record, separators=(", ", ": "))


def parse_event_line(line: str) -> InteractionEvent:
    record = json.loads(line)
    data = {k: v for k, v in record.items() if k not in _BASE_KEYS}
    return InteractionEvent(
        ts=float(record["ts"]),
        session=record["session"],
        phase=record["phase"],
        level=int(record["level"]),
        problem=record["problem"],
        attempt=int(record["attempt"]),
        kind=record["kind"],
        data=data,
    )


def write_log(path, events: Iterable[InteractionEvent]) -> None:
    with open(path, "w", encoding="ascii") as fh:
        for ev in events:
            fh.write(ev.to_line() + "\n")


def read_log(path) -> list[InteractionEvent]:
    out = []
    with open(path, encoding="ascii") as fh:
        for line in fh:
            line = line.strip()
            if line:
                out.append(parse_event_line(line))
    return out
