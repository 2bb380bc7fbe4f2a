"""Data-driven hints: build an interaction network from solution traces,
score states by value iteration, and answer hint queries with rollback."""

from logictutor.formulas import parse, render
from logictutor.hintnet import (
    SolutionTrace,
    StateKey,
    TraceStep,
    build_network,
    dump_network,
    hint_lookup,
    value_iterate,
)
from logictutor.rules import Rule
from logictutor.sample import fig_problem

problem = fig_problem()
net = build_network(
    problem.problem_id, problem.premises, problem.conclusion, [], problem.expert
)
value_iterate(net)
print(dump_network(net))

# A hint is the statement added by the best-valued edge out of the matched
# state. From the premises-only state that is the expert's first step.
initial = net.initial
print("\nhint at the initial state:", hint_lookup(net, [initial]).rendered)

# Rollback: a student who wandered off every recorded path still gets a hint,
# found by walking back through their own earlier states.
on_corpus = StateKey(initial.statements | {"D"})
off_corpus = StateKey(initial.statements | {"D", "B|B"})
hint = hint_lookup(net, [initial, on_corpus, off_corpus])
print("hint after going off-corpus:", hint.rendered, "(from the prior state)")

# Values prefer shorter routes: add a second, shorter recorded solution and
# the initial state's hint switches to it.
short = SolutionTrace(
    problem.problem_id,
    [
        TraceStep(Rule.SIMP, ("D&~E",), "~E"),
        TraceStep(Rule.MT, ("C->E", "~E"), "~C"),
        TraceStep(Rule.MT, ("A->C", "~C"), "~A"),
        TraceStep(Rule.CONJ, ("B", "~A"), "~A&B"),
    ],
)
richer = value_iterate(
    build_network(problem.problem_id, problem.premises, problem.conclusion,
                  [short], problem.expert)
)
print("hint with a shorter trace in the corpus:",
      hint_lookup(richer, [richer.initial]).rendered)
