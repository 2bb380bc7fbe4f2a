"""Inference rules: single-step verification and one-step enumeration.

Ten rules are supported. MP, MT, HS, DS and Conj take two source statements;
Simp, Add, DN, DeM and Impl take one. Source order never matters. The
replacement rules (DN, DeM, Impl) rewrite exactly one subformula occurrence,
in either direction of their equivalence. Add is verification-only because
its output space is infinite; every other rule is finitely productive and
participates in enumeration.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Callable, Iterable, Sequence

from .formulas import And, Atom, Formula, Iff, Implies, Not, Or


class Rule(Enum):
    MP = "MP"
    MT = "MT"
    HS = "HS"
    DS = "DS"
    CONJ = "Conj"
    SIMP = "Simp"
    ADD = "Add"
    DN = "DN"
    DEM = "DeM"
    IMPL = "Impl"

    @property
    def arity(self) -> int:
        return 2 if self in _BINARY else 1


_BINARY = frozenset((Rule.MP, Rule.MT, Rule.HS, Rule.DS, Rule.CONJ))
PRODUCTIVE_RULES = tuple(r for r in Rule if r is not Rule.ADD)


class UnknownRule(ValueError):
    pass


def rule_from_name(name: str) -> Rule:
    try:
        return Rule(name)
    except ValueError:
        raise UnknownRule(f"unknown rule {name!r}") from None


class Outcome(Enum):
    VALID = "valid"
    INVALID_RULE_APPLICATION = "invalid"
    MALFORMED_DERIVATION = "malformed"


@dataclass(frozen=True)
class Verdict:
    outcome: Outcome
    message: str = ""

    @property
    def is_valid(self) -> bool:
        return self.outcome is Outcome.VALID


_FEEDBACK = {
    Rule.MP: "MP needs a conditional and its antecedent, and derives the consequent.",
    Rule.MT: "MT needs a conditional and the negation of its consequent, and derives the negated antecedent.",
    Rule.HS: "HS chains two conditionals that share a middle statement.",
    Rule.DS: "DS needs a disjunction and the negation of one disjunct, and derives the other disjunct.",
    Rule.CONJ: "Conj joins the two selected statements with '&'.",
    Rule.SIMP: "Simp derives one conjunct of the selected conjunction.",
    Rule.ADD: "Add derives a disjunction with the selected statement on one side.",
    Rule.DN: "DN adds or removes a double negation at one position.",
    Rule.DEM: "DeM swaps a negated conjunction/disjunction with its De Morgan form at one position.",
    Rule.IMPL: "Impl swaps a conditional with its or-form (~antecedent | consequent) at one position.",
}


def _rewrite_positions(
    f: Formula, local: Callable[[Formula], Iterable[Formula]]
) -> set[Formula]:
    """All formulas obtained by applying a local rewrite at exactly one position."""
    out: set[Formula] = set(local(f))
    if isinstance(f, Not):
        out.update(Not(c) for c in _rewrite_positions(f.child, local))
    elif not isinstance(f, Atom):
        ctor = type(f)
        out.update(ctor(l, f.right) for l in _rewrite_positions(f.left, local))
        out.update(ctor(f.left, r) for r in _rewrite_positions(f.right, local))
    return out


def _dn_local(f: Formula) -> Iterable[Formula]:
    yield Not(Not(f))
    if isinstance(f, Not) and isinstance(f.child, Not):
        yield f.child.child


def _dem_local(f: Formula) -> Iterable[Formula]:
    if isinstance(f, Not):
        inner = f.child
        if isinstance(inner, And):
            yield Or(Not(inner.left), Not(inner.right))
        elif isinstance(inner, Or):
            yield And(Not(inner.left), Not(inner.right))
    if isinstance(f, Or) and isinstance(f.left, Not) and isinstance(f.right, Not):
        yield Not(And(f.left.child, f.right.child))
    if isinstance(f, And) and isinstance(f.left, Not) and isinstance(f.right, Not):
        yield Not(Or(f.left.child, f.right.child))


def _impl_local(f: Formula) -> Iterable[Formula]:
    if isinstance(f, Implies):
        yield Or(Not(f.left), f.right)
    if isinstance(f, Or) and isinstance(f.left, Not):
        yield Implies(f.left.child, f.right)


def _binary_productions(rule: Rule, p: Formula, q: Formula) -> set[Formula]:
    """Statements the rule can produce from the ordered source pair (p, q)."""
    out: set[Formula] = set()
    if rule is Rule.MP:
        if isinstance(p, Implies) and p.left == q:
            out.add(p.right)
    elif rule is Rule.MT:
        if isinstance(p, Implies) and q == Not(p.right):
            out.add(Not(p.left))
    elif rule is Rule.HS:
        if isinstance(p, Implies) and isinstance(q, Implies) and p.right == q.left:
            out.add(Implies(p.left, q.right))
    elif rule is Rule.DS:
        if isinstance(p, Or):
            if q == Not(p.left):
                out.add(p.right)
            if q == Not(p.right):
                out.add(p.left)
    elif rule is Rule.CONJ:
        out.add(And(p, q))
        out.add(And(q, p))
    return out


def _unary_productions(rule: Rule, p: Formula) -> set[Formula]:
    if rule is Rule.SIMP:
        return {p.left, p.right} if isinstance(p, And) else set()
    if rule is Rule.DN:
        return _rewrite_positions(p, _dn_local)
    if rule is Rule.DEM:
        return _rewrite_positions(p, _dem_local)
    if rule is Rule.IMPL:
        return _rewrite_positions(p, _impl_local)
    raise ValueError(f"{rule} has no finite production set")


def productions(rule: Rule, sources: Sequence[Formula]) -> set[Formula]:
    """All statements derivable from the sources by one application of the rule.

    Source order is ignored. Raises ValueError for Add (infinite output space)
    and for an arity mismatch.
    """
    if rule is Rule.ADD:
        raise ValueError("Add is not finitely productive")
    if len(sources) != rule.arity:
        raise ValueError(f"{rule.value} takes {rule.arity} source statement(s)")
    if rule.arity == 1:
        return _unary_productions(rule, sources[0])
    p, q = sources
    return _binary_productions(rule, p, q) | _binary_productions(rule, q, p)


def verify_step(rule: Rule, sources: Sequence[Formula], derived: Formula) -> Verdict:
    """Check whether the rule applied to the sources justifies the derived statement."""
    if len(sources) != rule.arity:
        plural = "s" if rule.arity == 2 else ""
        return Verdict(
            Outcome.MALFORMED_DERIVATION,
            f"{rule.value} takes {rule.arity} source statement{plural}, got {len(sources)}.",
        )
    if rule is Rule.ADD:
        src = sources[0]
        if isinstance(derived, Or) and (derived.left == src or derived.right == src):
            return Verdict(Outcome.VALID)
        return Verdict(Outcome.INVALID_RULE_APPLICATION, _FEEDBACK[Rule.ADD])
    if derived in productions(rule, sources):
        return Verdict(Outcome.VALID)
    return Verdict(Outcome.INVALID_RULE_APPLICATION, _FEEDBACK[rule])


def enumerate_one_step(statements: Iterable[Formula]) -> set[Formula]:
    """All statements derivable by one application of any finitely-productive rule.

    Source tuples are drawn from the statement set with repetition, so a rule
    may use the same statement twice.
    """
    pool = list(dict.fromkeys(statements))
    if not pool:
        raise ValueError("statement set is empty")
    out: set[Formula] = set()
    for rule in PRODUCTIVE_RULES:
        if rule.arity == 1:
            for p in pool:
                out |= _unary_productions(rule, p)
        else:
            for p in pool:
                for q in pool:
                    out |= _binary_productions(rule, p, q)
    return out
