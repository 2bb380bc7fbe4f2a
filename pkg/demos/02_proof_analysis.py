"""Proof graphs: the six-step walkthrough solution, completeness, and which
nodes a solution actually needs."""

from logictutor.formulas import parse, render
from logictutor.proofs import ProofGraph, needed_set, solution_summary
from logictutor.rules import Rule

# Premises 1: A->C, 2: B, 3: C->E, 4: D&~E; conclusion C: ~A&B.
g = ProofGraph(
    "walkthrough",
    [parse("A->C"), parse("B"), parse("C->E"), parse("D&~E")],
    parse("~A&B"),
)

steps = [
    (Rule.SIMP, ("D&~E",), "D"),
    (Rule.SIMP, ("D&~E",), "~E"),
    (Rule.IMPL, ("A->C",), "~A|C"),
    (Rule.MT, ("C->E", "~E"), "~C"),
    (Rule.DS, ("~A|C", "~C"), "~A"),
    (Rule.CONJ, ("B", "~A"), "~A&B"),
]

for rule, sources, derived in steps:
    ids = tuple(
        n.id for s in sources for n in g.source_nodes() if render(n.statement) == s
    )
    node = g.apply_step(parse(derived), rule, ids)
    print(f"node {node.label}: {derived}  [{rule.value} from {sources}]")

summary = solution_summary(g)
print("\ncomplete:", summary.complete, " solution length:", summary.length)

needed = needed_set(g)
for n in g.nodes:
    mark = "needed" if n.id in needed else "NOT needed"
    print(f"  node {n.label:>2} {render(n.statement):8} {mark}")
# The derived D plays no role in reaching the conclusion: deleting it (and
# anything built on it) leaves the solution complete, so it is not needed.
