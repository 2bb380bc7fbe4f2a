"""One student's run through the study: intro, pretest, five training levels,
posttest.

Each session is a serialized command stream (steps, hint requests, skips,
restarts, clock ticks) over an injected clock. Every observable effect is
logged as an interaction event; replaying a log through a fresh session with
the same bank and seed reconstructs the identical event stream and final
state.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from enum import Enum
from typing import Optional, Sequence

from . import events as ev
from .bank import Bank, MAX_SKIPS, Problem, SOLVE_QUOTA, TRAINING_LEVELS
from .events import InteractionEvent
from .formulas import Formula, parse, render
from .hintnet import (
    HintContent,
    InteractionNetwork,
    NeedFrequency,
    SolutionTrace,
    StateKey,
    ValueIterationParams,
    build_network,
    canonical_state,
    hint_lookup,
    node_color,
    value_iterate,
)
from .policy import (
    ASSERTION_NOTE,
    Condition,
    HintEvent,
    HintKind,
    PolicyState,
    check_inactivity,
    message_text,
    request_hint,
    resolve_justification,
    schedule_assertion,
)
from .proofs import NodeKind, ProofGraph, solution_summary
from .rules import Outcome, Verdict, rule_from_name, verify_step


class Phase(Enum):
    INTRO = "intro"
    PRETEST = "pretest"
    TRAINING = "training"
    POSTTEST = "posttest"
    DONE = "done"


class WrongPhase(Exception):
    pass


class SkipLimitReached(Exception):
    pass


class UnknownNode(KeyError):
    pass


class UnusableSource(ValueError):
    pass


class MalformedDerivation(ValueError):
    pass


class TutorEngine:
    """Immutable per-bank artifacts shared by all sessions: one value-iterated
    hint network and one needed-frequency table per problem."""

    def __init__(
        self,
        bank: Bank,
        extra_traces: Optional[dict[str, list[SolutionTrace]]] = None,
        params: ValueIterationParams = ValueIterationParams(),
    ):
        bank.validate()
        self.bank = bank
        self.networks: dict[str, InteractionNetwork] = {}
        self.colors: dict[str, NeedFrequency] = {}
        extra = extra_traces or {}
        for p in bank.problems:
            traces = extra.get(p.problem_id, [])
            net = build_network(p.problem_id, p.premises, p.conclusion, traces, p.expert)
            value_iterate(net, params)
            self.networks[p.problem_id] = net
            self.colors[p.problem_id] = NeedFrequency.from_traces(
                p.premises, p.conclusion, [p.expert, *traces]
            )


@dataclass
class StepOutcome:
    verdict: Verdict
    node_id: Optional[int] = None
    completed: bool = False
    assertion: Optional[HintEvent] = None
    justified: list[HintEvent] = field(default_factory=list)


@dataclass
class _LevelState:
    problems: list[Problem]  # rank ascending
    attempted: set[str] = field(default_factory=set)
    solved_ids: set[str] = field(default_factory=set)
    solved: int = 0
    skips_used: int = 0


class Session:
    def __init__(
        self,
        student: str,
        condition: Condition,
        bank: Bank,
        engine: TutorEngine,
        seed: int,
        session_id: Optional[str] = None,
        start_time: float = 0.0,
    ):
        self.student = student
        self.condition = condition
        self.bank = bank
        self.engine = engine
        self.seed = seed
        self.session_id = session_id if session_id is not None else student
        self.clock = start_time
        self.policy = PolicyState(condition, random.Random(seed), last_activity=start_time)
        self.events: list[InteractionEvent] = []

        self.phase = Phase.INTRO
        self.level = 0
        self._intro_problems = bank.section("intro")[:2]
        self._pretest_problems = bank.section("pretest")[:2]
        self._posttest_problems = bank.section("posttest")[:4]
        self._intro_idx = 0
        self._intro_step = 0
        self._pretest_idx = 0
        self._posttest_idx = 0
        self._level_state: Optional[_LevelState] = None

        self.problem: Optional[Problem] = None
        self.graph: Optional[ProofGraph] = None
        self.attempt = 0
        self.history: list[StateKey] = []
        self.outstanding: list[HintEvent] = []
        self.restarts: dict[str, int] = {}
        self.note = ""
        self._hint_seq = 0

        self._emit(
            ev.SESSION_STARTED,
            {"student": student, "condition": condition.value, "seed": seed},
        )
        self._load_problem(self._intro_problems[0])

    # --- plumbing -------------------------------------------------------------

    @property
    def terminal(self) -> bool:
        return self.phase is Phase.DONE

    @property
    def can_skip(self) -> bool:
        return (
            self.phase is Phase.TRAINING
            and self._level_state is not None
            and self._level_state.skips_used < MAX_SKIPS
        )

    def _emit(self, kind: str, data: dict) -> None:
        self.events.append(
            InteractionEvent(
                ts=self.clock,
                session=self.session_id,
                phase=self.phase.value,
                level=self.level,
                problem=self.problem.problem_id if self.problem else "",
                attempt=self.attempt,
                kind=kind,
                data=data,
            )
        )

    def _activity(self) -> None:
        self.policy.last_activity = self.clock

    def _load_problem(self, problem: Problem) -> None:
        self.problem = problem
        self.graph = ProofGraph(problem.problem_id, problem.premises, problem.conclusion)
        self.attempt = 1
        self.history = [canonical_state(self.graph)]
        self.outstanding = []
        self.policy.pending = None
        self.note = ""
        self._intro_step = 0
        self._activity()

    def _network(self) -> InteractionNetwork:
        return self.engine.networks[self.problem.problem_id]

    def _current_hint(self) -> HintContent:
        return hint_lookup(self._network(), self.history)

    def peek_hint(self) -> HintContent:
        """Current hint content without requesting (no event, no pending)."""
        return self._current_hint()

    def _next_hint_id(self) -> int:
        self._hint_seq += 1
        return self._hint_seq

    # --- intro worked examples -------------------------------------------------

    def advance_example(self) -> None:
        """Play the current worked example forward one scripted step; once the
        example is fully shown, the next call moves on."""
        if self.phase is not Phase.INTRO:
            raise WrongPhase("worked examples only run in the introduction")
        self._activity()
        steps = self.problem.expert.steps
        if self._intro_step < len(steps):
            step = steps[self._intro_step]
            sources = tuple(self._node_for_statement(s).id for s in step.sources)
            node = self.graph.apply_step(parse(step.derived), step.rule, sources)
            self._intro_step += 1
            self._emit(
                ev.ADVANCE,
                {"rule": step.rule.value, "statement": step.derived, "node": node.id},
            )
            return
        self._emit(ev.ADVANCE, {"statement": "", "rule": "", "node": 0})
        self._intro_idx += 1
        if self._intro_idx < len(self._intro_problems):
            self._load_problem(self._intro_problems[self._intro_idx])
        else:
            self.phase = Phase.PRETEST
            self._load_problem(self._pretest_problems[0])

    def _node_for_statement(self, statement: str):
        target = render(parse(statement))
        for n in self.graph.source_nodes():
            if render(n.statement) == target:
                return n
        raise UnknownNode(f"no established node for {statement!r}")

    # --- problem solving --------------------------------------------------------

    def submit_step(
        self, source_ids: Sequence[int], rule_name: str, derived_text: str
    ) -> StepOutcome:
        """Verify one derivation attempt and apply all of its consequences."""
        if self.phase not in (Phase.PRETEST, Phase.TRAINING, Phase.POSTTEST):
            raise WrongPhase(f"cannot submit steps during {self.phase.value}")
        self._activity()
        rule = rule_from_name(rule_name)
        derived = parse(derived_text)
        statements = [self._source_statement(i) for i in source_ids]
        verdict = verify_step(rule, statements, derived)
        if verdict.outcome is Outcome.MALFORMED_DERIVATION:
            raise MalformedDerivation(verdict.message)
        if not verdict.is_valid:
            self.note = verdict.message
            self._emit(
                ev.STEP_ERROR,
                {
                    "rule": rule.value,
                    "sources": list(source_ids),
                    "derived": render(derived),
                    "feedback": verdict.message,
                },
            )
            return StepOutcome(verdict)

        color = None
        if self.phase is Phase.TRAINING:
            color = node_color(self.engine.colors[self.problem.problem_id], derived)
        node = self.graph.apply_step(derived, rule, tuple(source_ids), color)
        completed = self.graph.complete
        self._emit(
            ev.STEP_VALID,
            {
                "rule": rule.value,
                "sources": list(source_ids),
                "derived": render(derived),
                "node": node.id,
                "number": node.number if node.number is not None else 0,
                "color": node.color.value if node.color else "",
                "completed": completed,
            },
        )
        key = canonical_state(self.graph)
        if key != self.history[-1]:
            self.history.append(key)

        justified = self._resolve_hints(derived, node.id)
        assertion = None
        if completed:
            self.note = ""
            length = solution_summary(self.graph).length
            self._emit(ev.PROBLEM_COMPLETE, {"length": length})
            self._advance_after_solve()
        else:
            self.note = ""
            if self.phase is Phase.TRAINING and self.condition is Condition.ASSERTIONS:
                assertion = schedule_assertion(
                    self.policy, self._current_hint(), self.clock, self._hint_seq + 1
                )
                if assertion is not None:
                    self._hint_seq += 1
                    anode = self.graph.add_assertion(assertion.content.statement)
                    assertion.node_id = anode.id
                    self.outstanding.append(assertion)
                    self._emit(
                        ev.HINT_GIVEN,
                        {
                            "hint": assertion.hint_id,
                            "hint_kind": HintKind.ASSERTION.value,
                            "statement": assertion.content.rendered,
                            "node": anode.id,
                        },
                    )
                    self.note = ASSERTION_NOTE
        return StepOutcome(verdict, node.id, completed, assertion, justified)

    def _source_statement(self, node_id: int) -> Formula:
        try:
            node = self.graph.node(node_id)
        except KeyError:
            raise UnknownNode(f"no node {node_id}") from None
        if node.kind in (NodeKind.CONCLUSION, NodeKind.ASSERTION_PENDING):
            if node.justification is None:
                raise UnusableSource(f"node {node.label} is not justified yet")
        return node.statement

    def _resolve_hints(self, derived: Formula, node_id: int) -> list[HintEvent]:
        justified = []
        for hint in self.outstanding:
            if hint.justified_at is None and hint.content.statement == derived:
                hint.justified_at = self.clock
                hint.justified_node_id = node_id
                if self.policy.pending is hint:
                    resolve_justification(self.policy, derived)
                if (
                    hint.kind is HintKind.ASSERTION
                    and hint.node_id is not None
                    and hint.node_id != node_id
                ):
                    # the statement landed on the conclusion node; the subgoal
                    # node is now redundant
                    self.graph.remove_pending(hint.node_id)
                self._emit(ev.HINT_JUSTIFIED, {"hint": hint.hint_id, "node": node_id})
                justified.append(hint)
        return justified

    def request_on_demand(self) -> HintEvent:
        if self.phase is not Phase.TRAINING:
            raise WrongPhase("hints are only available during training")
        self._activity()
        hint = request_hint(
            self.policy, self._current_hint(), self.clock, self._next_hint_id()
        )
        self.outstanding.append(hint)
        self._emit(
            ev.HINT_GIVEN,
            {
                "hint": hint.hint_id,
                "hint_kind": HintKind.ON_DEMAND.value,
                "statement": hint.content.rendered,
                "node": 0,
            },
        )
        self.note = message_text(hint.content)
        return hint

    def tick(self, now: float) -> Optional[HintEvent]:
        """Deliver a clock tick; in the Messages condition this is what fires
        inactivity hints. Ticks are not student activity."""
        if now > self.clock:
            self.clock = now
        if (
            self.phase is Phase.TRAINING
            and self.condition is Condition.MESSAGES
            and self.problem is not None
            and self.policy.pending is None
        ):
            hint = None
            if self.clock - self.policy.last_activity >= 60.0:
                hint = check_inactivity(
                    self.policy, self.clock, self._current_hint(), self._hint_seq + 1
                )
            if hint is not None:
                self._hint_seq += 1
                self.outstanding.append(hint)
                self._emit(
                    ev.HINT_GIVEN,
                    {
                        "hint": hint.hint_id,
                        "hint_kind": HintKind.MESSAGE.value,
                        "statement": hint.content.rendered,
                        "node": 0,
                    },
                )
                self.note = message_text(hint.content)
                return hint
        return None

    def skip_problem(self) -> Problem:
        if self.phase is not Phase.TRAINING:
            raise WrongPhase("problems can only be skipped during training")
        ls = self._level_state
        if ls.skips_used >= MAX_SKIPS:
            raise SkipLimitReached(f"all {MAX_SKIPS} skips for this level are used")
        self._activity()
        ls.skips_used += 1
        ls.attempted.add(self.problem.problem_id)
        self._emit(ev.SKIP, {"skips_used": ls.skips_used})
        nxt = self._next_problem(after_skip=True)
        self._load_problem(nxt)
        return nxt

    def restart_problem(self) -> None:
        if self.phase not in (Phase.PRETEST, Phase.TRAINING, Phase.POSTTEST):
            raise WrongPhase(f"nothing to restart during {self.phase.value}")
        self._activity()
        self.graph.reset()
        self.attempt += 1
        self.history = [canonical_state(self.graph)]
        self.outstanding = []
        self.policy.pending = None
        self.note = ""
        pid = self.problem.problem_id
        self.restarts[pid] = self.restarts.get(pid, 0) + 1
        self._emit(ev.RESTART, {"restarts": self.restarts[pid]})

    def delete_assertion(self, node_id: int) -> None:
        target = None
        for hint in self.outstanding:
            if hint.kind is HintKind.ASSERTION and hint.node_id == node_id:
                if hint.justified_at is None:
                    target = hint
        if target is None:
            raise UnknownNode(f"no pending subgoal node {node_id}")
        self._activity()
        self.graph.remove_pending(node_id)
        if self.policy.pending is target:
            self.policy.pending = None
        self.note = ""
        self._emit(ev.ASSERTION_DELETED, {"node": node_id, "hint": target.hint_id})

    # --- sequencing ---------------------------------------------------------------

    def _advance_after_solve(self) -> None:
        if self.phase is Phase.PRETEST:
            self._pretest_idx += 1
            if self._pretest_idx < len(self._pretest_problems):
                self._load_problem(self._pretest_problems[self._pretest_idx])
            else:
                self._start_level(1)
        elif self.phase is Phase.TRAINING:
            ls = self._level_state
            ls.attempted.add(self.problem.problem_id)
            ls.solved_ids.add(self.problem.problem_id)
            ls.solved += 1
            if ls.solved >= SOLVE_QUOTA:
                if self.level < TRAINING_LEVELS:
                    self._start_level(self.level + 1)
                else:
                    self.phase = Phase.POSTTEST
                    self.level = 0
                    self._load_problem(self._posttest_problems[0])
            else:
                self._load_problem(self._next_problem(after_skip=False))
        elif self.phase is Phase.POSTTEST:
            self._posttest_idx += 1
            if self._posttest_idx < len(self._posttest_problems):
                self._load_problem(self._posttest_problems[self._posttest_idx])
            else:
                self.phase = Phase.DONE
                self.level = 0
                self.problem = None
                self.graph = None
                self.attempt = 0

    def _start_level(self, level: int) -> None:
        self.phase = Phase.TRAINING
        self.level = level
        problems = self.bank.section("training", level)
        self._level_state = _LevelState(problems)
        # enter mid-level so three strictly-easier problems remain for skips
        entry = min(MAX_SKIPS, len(problems) - SOLVE_QUOTA)
        self._load_problem(problems[max(entry, 0)])

    def _next_problem(self, after_skip: bool) -> Problem:
        ls = self._level_state
        current_rank = self.problem.rank
        unattempted = [p for p in ls.problems if p.problem_id not in ls.attempted]
        easier = [p for p in unattempted if p.rank < current_rank]
        harder = [p for p in unattempted if p.rank > current_rank]
        if after_skip:
            # skips move to easier problems; cycle upward only when none remain
            ordered = [max(easier, key=lambda p: p.rank)] if easier else []
            ordered += [min(harder, key=lambda p: p.rank)] if harder else []
        else:
            ordered = [min(harder, key=lambda p: p.rank)] if harder else []
            ordered += [max(easier, key=lambda p: p.rank)] if easier else []
        if ordered:
            return ordered[0]
        revisit = [
            p
            for p in ls.problems
            if p.problem_id not in ls.solved_ids and p.problem_id != self.problem.problem_id
        ]
        if not revisit:
            raise RuntimeError(f"training level {self.level} has no problem left to serve")
        return min(revisit, key=lambda p: p.rank)

    # --- projection ------------------------------------------------------------------

    def message_box(self) -> str:
        if self.note:
            return self.note
        pending = self.policy.pending
        if pending is not None and pending.kind is HintKind.MESSAGE:
            return message_text(pending.content)
        return ""

    def snapshot(self) -> dict:
        """Pure projection of the session for clients; holds no secrets and no
        engine logic."""
        workspace = []
        if self.graph is not None:
            for n in self.graph.nodes:
                just = n.justification
                workspace.append(
                    {
                        "id": n.id,
                        "label": n.label,
                        "number": n.number,
                        "statement": render(n.statement),
                        "kind": n.kind.value,
                        "color": n.color.value if n.color else None,
                        "rule": just.rule.value if just else None,
                        "sources": list(just.sources) if just else [],
                    }
                )
        pending = self.policy.pending
        problem = None
        if self.problem is not None:
            problem = {
                "id": self.problem.problem_id,
                "section": self.problem.section,
                "rank": self.problem.rank,
                "premises": [render(p) for p in self.problem.premises],
                "conclusion": render(self.problem.conclusion),
                "rules": [r.value for r in self.problem.intended_rules],
            }
        ls = self._level_state
        return {
            "session": self.session_id,
            "student": self.student,
            "condition": self.condition.value,
            "phase": self.phase.value,
            "level": self.level,
            "terminal": self.terminal,
            "problem": problem,
            "workspace": workspace,
            "pending_hint": None
            if pending is None
            else {
                "hint": pending.hint_id,
                "kind": pending.kind.value,
                "statement": pending.content.rendered,
                "node": pending.node_id,
            },
            "message_box": self.message_box(),
            "problem_complete": bool(self.graph.complete) if self.graph else False,
            "can_advance": self.phase is Phase.INTRO,
            "can_restart": self.phase
            in (Phase.PRETEST, Phase.TRAINING, Phase.POSTTEST),
            "can_skip": self.can_skip,
            "skips_used": ls.skips_used if ls is not None and self.phase is Phase.TRAINING else 0,
            "solved_in_level": ls.solved if ls is not None and self.phase is Phase.TRAINING else 0,
        }


def replay_log(
    bank: Bank, engine: TutorEngine, log: Sequence[InteractionEvent]
) -> Session:
    """Re-execute a session's commands from its event log.

    Engine-emitted events (assertions, justifications, completions) are
    skipped; they must re-emerge identically from the engine itself.
    """
    if not log or log[0].kind != ev.SESSION_STARTED:
        raise ValueError("log does not begin with SessionStarted")
    head = log[0]
    session = Session(
        student=head.data["student"],
        condition=Condition(head.data["condition"]),
        bank=bank,
        engine=engine,
        seed=int(head.data["seed"]),
        session_id=head.session,
        start_time=head.ts,
    )
    for record in log[1:]:
        session.tick(record.ts)
        kind = record.kind
        if kind in (ev.STEP_VALID, ev.STEP_ERROR):
            session.submit_step(
                record.data["sources"], record.data["rule"], record.data["derived"]
            )
        elif kind == ev.HINT_GIVEN and record.data["hint_kind"] == HintKind.ON_DEMAND.value:
            session.request_on_demand()
        elif kind == ev.SKIP:
            session.skip_problem()
        elif kind == ev.RESTART:
            session.restart_problem()
        elif kind == ev.ASSERTION_DELETED:
            session.delete_assertion(record.data["node"])
        elif kind == ev.ADVANCE:
            session.advance_example()
    return session
