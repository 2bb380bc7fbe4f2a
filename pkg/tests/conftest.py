from __future__ import annotations

import random

import pytest

from logictutor.formulas import parse, render
from logictutor.policy import Condition
from logictutor.sample import demo_bank, sample_bank
from logictutor.session import Session, TutorEngine


@pytest.fixture(scope="session")
def bank():
    return sample_bank()


@pytest.fixture(scope="session")
def engine(bank):
    return TutorEngine(bank)


@pytest.fixture(scope="session")
def demo():
    bank = demo_bank()
    return bank, TutorEngine(bank)


def make_session(bank, engine, condition=Condition.MESSAGES, seed=0, student="stu"):
    return Session(student, condition, bank, engine, seed)


def finish_intro(session):
    while session.phase.value == "intro":
        session.advance_example()


def node_by_statement(session, statement: str):
    target = render(parse(statement))
    for n in session.graph.source_nodes():
        if render(n.statement) == target:
            return n
    raise AssertionError(f"no node {statement!r} in workspace")


def submit(session, rule: str, source_statements: list[str], derived: str):
    ids = [node_by_statement(session, s).id for s in source_statements]
    return session.submit_step(ids, rule, derived)


def solve_scripted(session):
    """Solve the current problem along its expert solution."""
    problem = session.problem
    for step in problem.expert.steps:
        if render(parse(step.derived)) in session.graph.statements():
            continue
        submit(session, step.rule.value, list(step.sources), step.derived)
        if session.problem is not problem:
            return


def walk_to_training(session):
    """Advance a fresh session through intro and pretest."""
    finish_intro(session)
    while session.phase.value == "pretest":
        solve_scripted(session)


def random_formula(rng: random.Random, depth: int):
    from logictutor.formulas import And, Atom, Iff, Implies, Not, Or

    if depth <= 0 or rng.random() < 0.25:
        return Atom(rng.choice("ABCDEF"))
    kind = rng.randrange(5)
    if kind == 0:
        return Not(random_formula(rng, depth - 1))
    left = random_formula(rng, depth - 1)
    right = random_formula(rng, depth - 1)
    ctor = (And, Or, Implies, Iff)[kind - 1]
    return ctor(left, right)
