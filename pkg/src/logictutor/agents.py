"""Simulated students: headless session drivers over a virtual clock.

Three behaviors: following every hint (justifies pending hints immediately),
ignoring hints (replays the expert solution), and wandering randomly with
occasional errors, skips, and a restart-to-expert bailout. The clock advances
in five-second sweep ticks between actions, which is what fires inactivity
messages. Everything is seeded, so a cohort run is bit-reproducible.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from pathlib import Path
from typing import Optional

from .bank import Bank
from .events import write_log
from .formulas import Atom, Formula, parse, render
from .policy import Condition
from .rules import PRODUCTIVE_RULES, Rule, productions, verify_step
from .session import Phase, Session, TutorEngine

TICK_SECONDS = 5.0


@dataclass
class AgentPolicy:
    kind: str = "follow"  # follow | ignore | random
    think_lo: float = 5.0
    think_hi: float = 60.0
    error_rate: float = 0.0
    skip_rate: float = 0.0
    restart_rate: float = 0.0
    ondemand_rate: float = 0.0
    max_wander: int = 12
    max_statement_chars: int = 48


def default_policy(kind: str) -> AgentPolicy:
    if kind == "follow":
        return AgentPolicy("follow", 5.0, 90.0, ondemand_rate=0.02)
    if kind == "ignore":
        return AgentPolicy("ignore", 5.0, 90.0, error_rate=0.05)
    if kind == "random":
        return AgentPolicy(
            "random",
            3.0,
            45.0,
            error_rate=0.15,
            skip_rate=0.04,
            restart_rate=0.05,
            ondemand_rate=0.02,
        )
    raise ValueError(f"unknown agent policy {kind!r}")


def find_derivation(session: Session, target: Formula) -> Optional[tuple[str, list[int]]]:
    """One rule application over established nodes that produces the target."""
    nodes = session.graph.source_nodes()
    for rule in PRODUCTIVE_RULES:
        if rule.arity == 1:
            for n in nodes:
                if target in productions(rule, [n.statement]):
                    return rule.value, [n.id]
        else:
            for i, a in enumerate(nodes):
                for b in nodes[i:]:
                    if target in productions(rule, [a.statement, b.statement]):
                        return rule.value, [a.id, b.id]
    return None


def legal_moves(
    session: Session, max_statement_chars: Optional[int] = None
) -> list[tuple[str, list[int], str]]:
    """Every (rule, source ids, derived) with a new statement, in a stable order.

    `max_statement_chars` bounds the derived statement's rendering, which keeps
    a long random walk from compounding ever-larger conjunctions.
    """
    nodes = session.graph.source_nodes()
    have = session.graph.statements()
    moves = []
    for rule in PRODUCTIVE_RULES:
        tuples = (
            [[n] for n in nodes]
            if rule.arity == 1
            else [[a, b] for i, a in enumerate(nodes) for b in nodes[i:]]
        )
        for srcs in tuples:
            for derived in sorted(
                render(d) for d in productions(rule, [n.statement for n in srcs])
            ):
                if derived in have:
                    continue
                if max_statement_chars and len(derived) > max_statement_chars:
                    continue
                moves.append((rule.value, [n.id for n in srcs], derived))
    return moves


class SessionDriver:
    def __init__(self, session: Session, policy: AgentPolicy, rng: random.Random):
        self.session = session
        self.policy = policy
        self.rng = rng
        self._wander_steps = 0
        self._bailout = False  # finish the current problem on the expert path

    def run(self, max_actions: int = 20000) -> Session:
        for _ in range(max_actions):
            if self.session.terminal:
                return self.session
            self._pass_time()
            self._act()
        raise RuntimeError(f"session {self.session.session_id} did not terminate")

    def _pass_time(self) -> None:
        think = self.rng.uniform(self.policy.think_lo, self.policy.think_hi)
        target = self.session.clock + think
        t = (int(self.session.clock / TICK_SECONDS) + 1) * TICK_SECONDS
        while t < target:
            self.session.tick(t)
            t += TICK_SECONDS
        self.session.tick(target)

    def _act(self) -> None:
        session = self.session
        if session.phase is Phase.INTRO:
            session.advance_example()
            return
        if session.phase in (Phase.PRETEST, Phase.POSTTEST):
            if self.policy.kind == "random":
                self._wander_action(allow_skip=False)
            else:
                self._scripted_step()
            return
        self._training_action()

    def _training_action(self) -> None:
        session, policy, rng = self.session, self.policy, self.rng
        if policy.ondemand_rate and rng.random() < policy.ondemand_rate:
            session.request_on_demand()
            return
        kind = policy.kind
        if kind == "follow":
            pending = session.policy.pending
            target = pending.content.statement if pending else session.peek_hint().statement
            if render(target) in session.graph.statements():
                self._scripted_step()
                return
            found = find_derivation(session, target)
            if found is None:
                self._scripted_step()
                return
            session.submit_step(found[1], found[0], render(target))
            return
        if kind == "ignore":
            if policy.error_rate and rng.random() < policy.error_rate:
                if self._error_step():
                    return
            self._scripted_step()
            return
        self._wander_action(allow_skip=True)

    def _wander_action(self, allow_skip: bool) -> None:
        """A random walk over legal derivations. Once the wander budget is
        spent the agent finishes the problem along the expert path, leaving any
        junk derivations in place (so solution lengths vary). Restarts and
        skips are their own random behaviors."""
        session, policy, rng = self.session, self.policy, self.rng
        if allow_skip and session.can_skip and rng.random() < policy.skip_rate:
            session.skip_problem()
            self._wander_steps = 0
            self._bailout = False
            return
        wandered = self._wander_steps > 0
        if wandered and not self._bailout and rng.random() < policy.restart_rate:
            session.restart_problem()
            self._wander_steps = 0
            return
        if self._bailout:
            self._scripted_step()
            return
        if self._wander_steps >= policy.max_wander:
            self._bailout = True
            self._scripted_step()
            return
        if policy.error_rate and rng.random() < policy.error_rate:
            if self._error_step():
                return
        moves = legal_moves(session, policy.max_statement_chars)
        if not moves:
            self._bailout = True
            self._scripted_step()
            return
        rule, sources, derived = rng.choice(moves)
        outcome = session.submit_step(sources, rule, derived)
        self._wander_steps += 1
        if outcome.completed:
            self._wander_steps = 0
            self._bailout = False

    def _scripted_step(self) -> None:
        """Submit the first expert step whose statement is not yet established."""
        session = self.session
        have = session.graph.statements()
        for step in session.problem.expert.steps:
            if render(parse(step.derived)) in have:
                continue
            sources = []
            for s in step.sources:
                node = session._node_for_statement(s)
                sources.append(node.id)
            outcome = session.submit_step(sources, step.rule.value, step.derived)
            if outcome.completed:
                self._wander_steps = 0
                self._bailout = False
            return
        raise RuntimeError(f"expert script exhausted on {session.problem.problem_id}")

    def _error_step(self) -> bool:
        """Submit a deliberately wrong rule application; returns False if no
        safely-wrong submission was found."""
        session, rng = self.session, self.rng
        nodes = session.graph.source_nodes()
        if len(nodes) < 2:
            return False
        a, b = rng.sample(nodes, 2)
        bogus: Formula = Atom("Z")
        if verify_step(Rule.MP, [a.statement, b.statement], bogus).is_valid:
            return False
        session.submit_step([a.id, b.id], Rule.MP.value, render(bogus))
        return True


def run_session(session: Session, policy: AgentPolicy, rng: random.Random) -> Session:
    return SessionDriver(session, policy, rng).run()


def simulate_cohort(
    bank: Bank,
    n: int,
    condition: str,
    policy: AgentPolicy | str,
    seed: int,
    out_dir,
    engine: Optional[TutorEngine] = None,
) -> list[Path]:
    """Run n full study sessions headlessly and write one event log per student.

    `condition` is "assertions", "messages", or "mixed" (alternating). The same
    (bank, n, condition, policy, seed) always produces byte-identical logs.
    """
    if isinstance(policy, str):
        policy = default_policy(policy)
    engine = engine or TutorEngine(bank)
    master = random.Random(seed)
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    paths = []
    for i in range(n):
        student = f"s{i:04d}"
        if condition == "mixed":
            cond = Condition.ASSERTIONS if i % 2 == 0 else Condition.MESSAGES
        else:
            cond = Condition(condition)
        session_seed = master.randrange(2**32)
        agent_rng = random.Random(master.randrange(2**32))
        session = Session(student, cond, bank, engine, session_seed)
        run_session(session, policy, agent_rng)
        path = out / f"{student}.jsonl"
        write_log(path, session.events)
        paths.append(path)
    return paths
