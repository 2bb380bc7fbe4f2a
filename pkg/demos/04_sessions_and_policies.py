"""A live session: study phases, hint delivery policies, and the event log."""

from logictutor.policy import Condition
from logictutor.sample import demo_bank
from logictutor.session import Session, TutorEngine

bank = demo_bank()
engine = TutorEngine(bank)

# Seed 1 flips heads on the first training step, so an assertion appears.
s = Session("demo-student", Condition.ASSERTIONS, bank, engine, seed=1)
while s.phase.value == "intro":
    s.advance_example()
print("after the intro:", s.phase.value, s.problem.problem_id)


def by_statement(statement):
    return next(n.id for n in s.graph.source_nodes() if _r(n.statement) == statement)


def _r(f):
    from logictutor.formulas import render

    return render(f)


def do(rule, sources, derived):
    out = s.submit_step([by_statement(x) for x in sources], rule, derived)
    print(f"  {rule:5} -> {derived:8} valid={out.verdict.is_valid}"
          + (f"  assertion={out.assertion.content.rendered!r}" if out.assertion else ""))
    return out


print("\npretest (no hints, immediate feedback):")
do("MP", ["A->B", "A"], "B")
do("MP", ["B->C", "B"], "C")
do("Simp", ["A&B"], "B")
do("MP", ["B->D", "B"], "D")

print("\ntraining on", s.problem.problem_id, "- the walkthrough problem:")
do("Simp", ["D&~E"], "D")      # verified; the coin issues a subgoal assertion
print("  pending hint:", s.snapshot()["pending_hint"])
print("  message box:", s.snapshot()["message_box"])
do("Simp", ["D&~E"], "~E")     # justifies the pending subgoal
print("  pending after justification:", s.snapshot()["pending_hint"])
do("MP", ["C->E", "~E"], "B")  # the walkthrough mistake: error, no new node
print("  feedback shown:", s.snapshot()["message_box"])
do("MT", ["C->E", "~E"], "~C")  # same nodes, correct rule

s.request_on_demand()
print("\non-demand hint:", s.snapshot()["message_box"])

print("\nthe event log so far (last 8 lines):")
for event in s.events[-8:]:
    print(" ", event.to_line())
