"""Formulas and inference rules: parsing, canonical printing, verification."""

from logictutor.formulas import parse, render
from logictutor.rules import Rule, enumerate_one_step, verify_step

# The ASCII grammar: ~ binds tightest, then &, |, ->, <->.
for text in ("D&~E", "~(A|B)->C", "A->B->C", "(A->B)->C", "~A&B"):
    f = parse(text)
    print(f"{text:14} parses to {f!r}")
    assert parse(render(f)) == f  # printing is canonical and lossless

print()

# Verifying problem-solving steps. The tutor walkthrough: a student tries MP
# on (C->E, ~E), is told why it fails, then uses MT.
sources = [parse("C->E"), parse("~E")]
bad = verify_step(Rule.MP, sources, parse("B"))
print("MP on (C->E, ~E) deriving B:", bad.outcome.value)
print("  feedback:", bad.message)
good = verify_step(Rule.MT, sources, parse("~C"))
print("MT on (C->E, ~E) deriving ~C:", good.outcome.value)

print()

# Replacement rules rewrite one subformula occurrence, either direction.
print("Impl accepts C&(A->B) -> C&(~A|B):",
      verify_step(Rule.IMPL, [parse("C&(A->B)")], parse("C&(~A|B)")).is_valid)
print("DN accepts A&B -> A&~~B:",
      verify_step(Rule.DN, [parse("A&B")], parse("A&~~B")).is_valid)

print()

# Everything reachable in one rule application from a statement set:
reachable = enumerate_one_step([parse("A->C"), parse("~C")])
print(f"one step from {{A->C, ~C}} reaches {len(reachable)} statements, e.g.:")
for s in sorted(render(f) for f in reachable)[:8]:
    print("  ", s)
