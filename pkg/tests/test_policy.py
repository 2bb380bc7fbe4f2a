import random

from logictutor.formulas import parse
from logictutor.hintnet import HintContent, StateKey
from logictutor.policy import (
    ASSERTION_NOTE,
    Condition,
    HintKind,
    PolicyState,
    check_inactivity,
    message_text,
    request_hint,
    resolve_justification,
    schedule_assertion,
)


def content(text: str) -> HintContent:
    return HintContent(parse(text), StateKey(frozenset({text})))


def fresh(condition=Condition.ASSERTIONS, seed=0) -> PolicyState:
    return PolicyState(condition, random.Random(seed))


def test_message_template_exact():
    assert message_text(content("~C")) == "Try to derive ~C"
    assert message_text(content("A->E")) == "Try to derive A->E"
    assert ASSERTION_NOTE == "Try to justify the added goal"


def test_run_of_two_forces_skip():
    ps = fresh()
    ps.consecutive_run = 2
    assert schedule_assertion(ps, content("A"), 0.0, 1) is None
    assert ps.consecutive_run == 0  # forced skip resets the run


def test_pending_forces_skip():
    ps = fresh()
    first = schedule_assertion(ps, content("A"), 0.0, 1)
    # draw until one issues; with a pending hint nothing may issue
    t = 0.0
    while first is None:
        t += 1
        first = schedule_assertion(ps, content("A"), t, 1)
    run_after_issue = ps.consecutive_run
    assert ps.pending is first and run_after_issue >= 1
    assert schedule_assertion(ps, content("B"), t + 1, 2) is None
    assert ps.consecutive_run == 0


def test_coin_is_fair_and_seeded():
    issues = 0
    ps = fresh(seed=42)
    for i in range(10000):
        ev = schedule_assertion(ps, content("A"), float(i), i)
        if ev is not None:
            issues += 1
            ps.pending = None  # justified immediately
    assert 0.41 <= issues / 10000 <= 0.45
    repeat = 0
    ps2 = fresh(seed=42)
    for i in range(10000):
        if schedule_assertion(ps2, content("A"), float(i), i) is not None:
            repeat += 1
            ps2.pending = None
    assert repeat == issues  # bit-reproducible under the same seed


def test_never_more_than_two_consecutive():
    ps = fresh(seed=7)
    run = 0
    for i in range(5000):
        ev = schedule_assertion(ps, content("A"), float(i), i)
        if ev is not None:
            run += 1
            ps.pending = None
        else:
            run = 0
        assert run <= 2


def test_inactivity_thresholds():
    ps = fresh(Condition.MESSAGES)
    ps.last_activity = 0.0
    assert check_inactivity(ps, 59.0, content("~C"), 1) is None
    ev = check_inactivity(ps, 61.0, content("~C"), 1)
    assert ev is not None and ev.kind is HintKind.MESSAGE
    assert ps.pending is ev
    assert check_inactivity(ps, 120.0, content("~A"), 2) is None  # one at a time
    assert ps.pending.content.rendered == "~C"  # content frozen at issue


def test_boundary_at_exactly_sixty():
    ps = fresh(Condition.MESSAGES)
    ps.last_activity = 10.0
    assert check_inactivity(ps, 70.0, content("B"), 1) is not None


def test_on_demand_never_blocks_or_pends():
    ps = fresh()
    ev = request_hint(ps, content("~C"), 5.0, 1)
    assert ev.kind is HintKind.ON_DEMAND and not ev.unsolicited
    assert ps.pending is None
    again = request_hint(ps, content("~C"), 6.0, 2)
    assert again.content == ev.content  # same state, same content


def test_resolve_justification():
    ps = fresh()
    issued = schedule_assertion(ps, content("A->E"), 0.0, 1)
    while issued is None:
        issued = schedule_assertion(ps, content("A->E"), 0.0, 1)
    assert resolve_justification(ps, parse("C")) is None
    assert ps.pending is issued
    hit = resolve_justification(ps, parse("A->E"))
    assert hit is issued and ps.pending is None
