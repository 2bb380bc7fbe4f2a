"""Data-driven next-step hints: interaction networks scored by value iteration.

Prior solution traces for a problem are replayed into a graph of canonical
problem-solving states (the set of statements established so far). States are
scored with a Bellman backup; a hint query walks the student's own state
history backward until a known state with successors is found (rollback) and
returns the statement added by the best-valued outgoing edge. Seeding the
network with a complete expert solution guarantees the rollback always
terminates at the initial state, so a hint is always available.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Iterable, Optional, Sequence

from .formulas import Formula, parse, render
from .proofs import NodeColor, NodeKind, ProofGraph, needed_set
from .rules import Rule, rule_from_name, verify_step


class InvalidTrace(Exception):
    pass


class NoGoalState(Exception):
    pass


@dataclass(frozen=True)
class StateKey:
    """Order-independent snapshot of an attempt: established statements + done flag."""

    statements: frozenset[str]
    completed: bool = False

    def canonical(self) -> str:
        flag = "*" if self.completed else ""
        return flag + "{" + ", ".join(sorted(self.statements)) + "}"


def canonical_state(g: ProofGraph) -> StateKey:
    """State key of a proof graph; pending subgoals are goals, not knowledge,
    and stay out of the key."""
    return StateKey(frozenset(g.statements()), g.complete)


@dataclass(frozen=True)
class TraceStep:
    rule: Rule
    sources: tuple[str, ...]
    derived: str


@dataclass
class SolutionTrace:
    problem_id: str
    steps: list[TraceStep]


@dataclass(frozen=True)
class HintContent:
    """What to suggest: the newest derived statement of the chosen hint-source state."""

    statement: Formula
    source_state: StateKey

    @property
    def rendered(self) -> str:
        return render(self.statement)


@dataclass
class InteractionNetwork:
    problem_id: str
    initial: StateKey
    goal_statement: str
    edges: dict[StateKey, dict[StateKey, str]] = field(default_factory=dict)
    goals: set[StateKey] = field(default_factory=set)
    values: dict[StateKey, float] = field(default_factory=dict)
    sweep_deltas: list[float] = field(default_factory=list)

    @property
    def states(self) -> set[StateKey]:
        out = {self.initial}
        for src, dsts in self.edges.items():
            out.add(src)
            out.update(dsts)
        return out

    def successors(self, key: StateKey) -> dict[StateKey, str]:
        return self.edges.get(key, {})


@dataclass(frozen=True)
class ValueIterationParams:
    goal_reward: float = 100.0
    step_cost: float = 1.0
    discount: float = 0.9
    epsilon: float = 1e-6
    max_iters: int = 10000


def replay_trace(
    premises: Sequence[Formula], conclusion: Formula, trace: SolutionTrace
) -> list[tuple[StateKey, Optional[str]]]:
    """Replay a trace into its state sequence; each entry carries the statement
    that produced it (None for the initial state). Steps that re-derive an
    established statement do not change state."""
    have = {render(p) for p in premises}
    states: list[tuple[StateKey, Optional[str]]] = [(StateKey(frozenset(have)), None)]
    goal = render(conclusion)
    for i, step in enumerate(trace.steps):
        try:
            srcs = [parse(s) for s in step.sources]
            derived = parse(step.derived)
        except Exception as exc:
            raise InvalidTrace(f"{trace.problem_id} step {i + 1}: {exc}") from exc
        for s in step.sources:
            if render(parse(s)) not in have:
                raise InvalidTrace(
                    f"{trace.problem_id} step {i + 1}: source {s!r} not established"
                )
        verdict = verify_step(step.rule, srcs, derived)
        if not verdict.is_valid:
            raise InvalidTrace(
                f"{trace.problem_id} step {i + 1}: {step.rule.value} does not "
                f"derive {step.derived!r} ({verdict.message})"
            )
        rendered = render(derived)
        if rendered in have:
            continue
        have.add(rendered)
        states.append((StateKey(frozenset(have), rendered == goal), rendered))
    return states


def build_network(
    problem_id: str,
    premises: Sequence[Formula],
    conclusion: Formula,
    traces: Iterable[SolutionTrace],
    expert: SolutionTrace,
) -> InteractionNetwork:
    """Build the interaction network for a problem from prior solution traces.

    Every trace (the expert one included) must verify step-by-step and end
    with the conclusion derived; error steps never appear in traces because
    only verified steps change state.
    """
    goal = render(conclusion)
    initial = StateKey(frozenset(render(p) for p in premises))
    net = InteractionNetwork(problem_id, initial, goal)
    for trace in [expert, *traces]:
        states = replay_trace(premises, conclusion, trace)
        if not states[-1][0].completed:
            raise InvalidTrace(f"{trace.problem_id}: trace does not reach the conclusion")
        for (src, _), (dst, added) in zip(states, states[1:]):
            net.edges.setdefault(src, {})[dst] = added
            if dst.completed:
                net.goals.add(dst)
    if not net.goals:
        raise NoGoalState(f"network for {problem_id!r} has no completed state")
    return net


NEG_INF = float("-inf")


def value_iterate(
    net: InteractionNetwork, params: ValueIterationParams = ValueIterationParams()
) -> InteractionNetwork:
    """Score states by Bellman backup: V(goal) = goal reward, otherwise the best
    successor's discounted value minus the step cost. Dead-end non-goal states
    get -inf. Iterates until the largest per-sweep change drops below epsilon."""
    if not net.goals:
        raise NoGoalState(f"network for {net.problem_id!r} has no completed state")
    states = sorted(net.states, key=lambda k: k.canonical())
    values: dict[StateKey, float] = {}
    for s in states:
        if s in net.goals:
            values[s] = params.goal_reward
        elif not net.successors(s):
            values[s] = NEG_INF
        else:
            values[s] = 0.0
    net.sweep_deltas = []
    for _ in range(params.max_iters):
        delta = 0.0
        for s in states:
            if s in net.goals or not net.successors(s):
                continue
            best = max(
                -params.step_cost + params.discount * values[dst]
                for dst in net.successors(s)
            )
            if not math.isinf(best):
                delta = max(delta, abs(best - values[s]))
            values[s] = best
        net.sweep_deltas.append(delta)
        if delta < params.epsilon:
            break
    net.values = values
    return net


def hint_lookup(
    net: InteractionNetwork, history: Sequence[StateKey], current_index: Optional[int] = None
) -> HintContent:
    """Choose hint content for the student's current state.

    Scans backward through the student's own prior states; at the first one
    present in the network with at least one successor, returns the statement
    added by the highest-valued outgoing edge (ties broken by the
    lexicographically smallest statement rendering).
    """
    if not history:
        raise ValueError("state history is empty")
    idx = len(history) - 1 if current_index is None else current_index
    for i in range(idx, -1, -1):
        successors = net.successors(history[i])
        if not successors:
            continue
        best_dst, best_added = min(
            successors.items(), key=lambda kv: (-net.values.get(kv[0], NEG_INF), kv[1])
        )
        return HintContent(parse(best_added), best_dst)
    raise LookupError(
        f"no state in the student's history is known to the network for {net.problem_id!r}"
    )


# --- Node coloring from historical needed-set frequencies ---------------------

GREEN_THRESHOLD = 0.2


@dataclass
class NeedFrequency:
    """Per statement, the fraction of prior complete solutions that needed it."""

    fractions: dict[str, float] = field(default_factory=dict)

    @classmethod
    def from_traces(
        cls,
        premises: Sequence[Formula],
        conclusion: Formula,
        traces: Iterable[SolutionTrace],
    ) -> "NeedFrequency":
        counts: dict[str, int] = {}
        total = 0
        for trace in traces:
            g = ProofGraph(trace.problem_id, premises, conclusion)
            by_statement: dict[str, int] = {
                render(n.statement): n.id for n in g.nodes if n.kind is NodeKind.PREMISE
            }
            for step in trace.steps:
                srcs = tuple(by_statement[render(parse(s))] for s in step.sources)
                node = g.apply_step(parse(step.derived), step.rule, srcs)
                by_statement[render(node.statement)] = node.id
            total += 1
            needed_statements = {render(g.node(i).statement) for i in needed_set(g)}
            for s in needed_statements:
                counts[s] = counts.get(s, 0) + 1
        if total == 0:
            return cls({})
        return cls({s: c / total for s, c in counts.items()})


def node_color(stats: NeedFrequency, statement: Formula) -> NodeColor:
    """Green when historically needed often, yellow when rarely, gray when never."""
    fraction = stats.fractions.get(render(statement), 0.0)
    if fraction == 0.0:
        return NodeColor.GRAY
    if fraction >= GREEN_THRESHOLD:
        return NodeColor.GREEN
    return NodeColor.YELLOW


# --- Trace corpus files and network dumps -------------------------------------


def write_corpus(path, traces: Iterable[SolutionTrace]) -> None:
    """Line-delimited corpus: problem-id, ordinal, rule, sources, derived (tab
    separated, sources comma separated). Ordinal restarts at 1 per trace."""
    with open(path, "w", encoding="ascii") as fh:
        for trace in traces:
            for i, step in enumerate(trace.steps, start=1):
                fh.write(
                    "\t".join(
                        (
                            trace.problem_id,
                            str(i),
                            step.rule.value,
                            ",".join(step.sources),
                            step.derived,
                        )
                    )
                    + "\n"
                )


def read_corpus(path) -> dict[str, list[SolutionTrace]]:
    """Parse a corpus file into traces grouped by problem id."""
    out: dict[str, list[SolutionTrace]] = {}
    current: Optional[SolutionTrace] = None
    with open(path, encoding="ascii") as fh:
        for lineno, line in enumerate(fh, start=1):
            line = line.rstrip("\n")
            if not line:
                continue
            parts = line.split("\t")
            if len(parts) != 5:
                raise InvalidTrace(f"{path}:{lineno}: expected 5 fields, got {len(parts)}")
            problem_id, ordinal, rule_name, sources, derived = parts
            step = TraceStep(
                rule_from_name(rule_name),
                tuple(s for s in sources.split(",") if s),
                derived,
            )
            if ordinal == "1":
                current = SolutionTrace(problem_id, [])
                out.setdefault(problem_id, []).append(current)
            if current is None or current.problem_id != problem_id:
                raise InvalidTrace(f"{path}:{lineno}: step outside any trace")
            current.steps.append(step)
    return out


def dump_network(net: InteractionNetwork) -> str:
    """Human-readable state/value dump for debugging."""
    lines = [f"network {net.problem_id}: {len(net.states)} states, {len(net.goals)} goals"]
    for key in sorted(net.states, key=lambda k: (-net.values.get(k, NEG_INF), k.canonical())):
        tag = "goal " if key in net.goals else ("init " if key == net.initial else "     ")
        value = net.values.get(key)
        shown = "?" if value is None else ("-inf" if math.isinf(value) else f"{value:.4f}")
        lines.append(f"{tag}{shown:>10}  {key.canonical()}")
        for dst, added in sorted(net.successors(key).items(), key=lambda kv: kv[1]):
            lines.append(f"              +{added}")
    return "\n".join(lines)
