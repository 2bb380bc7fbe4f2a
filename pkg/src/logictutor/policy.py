"""When hints are delivered: on-demand requests, inactivity messages, and
randomly scheduled subgoal assertions.

Assertions are offered after a verified training step with a fair coin, never
on more than two consecutive steps, and never while another unsolicited hint
is waiting. Messages fire after 60 seconds of inactivity under the same
one-at-a-time rule. Once issued, a hint's content is frozen; it resolves when
the student derives exactly that statement.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from enum import Enum
from typing import Optional

from .formulas import Formula
from .hintnet import HintContent


class Condition(Enum):
    ASSERTIONS = "assertions"
    MESSAGES = "messages"


class HintKind(Enum):
    ON_DEMAND = "ondemand"
    MESSAGE = "message"
    ASSERTION = "assertion"


UNSOLICITED = (HintKind.MESSAGE, HintKind.ASSERTION)

INACTIVITY_SECONDS = 60.0
ASSERTION_PROBABILITY = 0.5
MAX_CONSECUTIVE_ASSERTIONS = 2

ASSERTION_NOTE = "Try to justify the added goal"


def message_text(content: HintContent) -> str:
    return f"Try to derive {content.rendered}"


@dataclass
class HintEvent:
    hint_id: int
    kind: HintKind
    content: HintContent
    issued_at: float
    justified_at: Optional[float] = None
    needed: Optional[bool] = None
    node_id: Optional[int] = None        # workspace node, assertions only
    justified_node_id: Optional[int] = None

    @property
    def unsolicited(self) -> bool:
        return self.kind in UNSOLICITED


@dataclass
class PolicyState:
    condition: Condition
    rng: random.Random
    consecutive_run: int = 0
    pending: Optional[HintEvent] = None
    last_activity: float = 0.0


def schedule_assertion(
    ps: PolicyState, hint: HintContent, now: float, hint_id: int
) -> Optional[HintEvent]:
    """Decide whether a just-verified training step gets an assertion.

    Skips while a hint is pending or after two consecutive assertion steps;
    otherwise issues with probability 1/2 from the seeded generator. Issuing
    extends the consecutive run, any skip resets it.
    """
    if ps.pending is not None or ps.consecutive_run >= MAX_CONSECUTIVE_ASSERTIONS:
        ps.consecutive_run = 0
        return None
    if ps.rng.random() < ASSERTION_PROBABILITY:
        ps.consecutive_run += 1
        event = HintEvent(hint_id, HintKind.ASSERTION, hint, now)
        ps.pending = event
        return event
    ps.consecutive_run = 0
    return None


def check_inactivity(
    ps: PolicyState, now: float, hint: HintContent, hint_id: int
) -> Optional[HintEvent]:
    """Issue a message after a full minute without student activity, unless an
    unsolicited hint is already waiting. Content is frozen at issue time."""
    if ps.pending is not None:
        return None
    if now - ps.last_activity < INACTIVITY_SECONDS:
        return None
    event = HintEvent(hint_id, HintKind.MESSAGE, hint, now)
    ps.pending = event
    return event


def request_hint(
    ps: PolicyState, hint: HintContent, now: float, hint_id: int
) -> HintEvent:
    """An on-demand hint: always answered, never counts as unsolicited, and
    does not block or become the pending hint."""
    return HintEvent(hint_id, HintKind.ON_DEMAND, hint, now)


def resolve_justification(ps: PolicyState, statement: Formula) -> Optional[HintEvent]:
    """Clear the pending hint if the student just derived its statement."""
    if ps.pending is not None and ps.pending.content.statement == statement:
        event = ps.pending
        ps.pending = None
        return event
    return None
