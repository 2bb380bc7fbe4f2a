import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from logictutor.formulas import (
    And,
    Atom,
    Iff,
    Implies,
    MalformedFormula,
    Not,
    Or,
    atoms,
    evaluate,
    parse,
    render,
)

from .conftest import random_formula


def test_parse_examples():
    assert parse("D&~E") == And(Atom("D"), Not(Atom("E")))
    assert parse("A") == Atom("A")
    assert parse("~(A|B)->C") == Implies(Not(Or(Atom("A"), Atom("B"))), Atom("C"))


def test_render_examples():
    assert render(And(Not(Atom("A")), Atom("B"))) == "~A&B"
    assert render(Atom("Q")) == "Q"
    assert render(Implies(Implies(Atom("A"), Atom("B")), Atom("C"))) == "(A->B)->C"


def test_whitespace_insensitive():
    assert parse(" D &  ~ E ") == parse("D&~E")


def test_precedence_and_associativity():
    assert parse("~A&B|C->D<->E") == Iff(
        Implies(Or(And(Not(Atom("A")), Atom("B")), Atom("C")), Atom("D")), Atom("E")
    )
    # -> and <-> associate right, & and | associate left
    assert parse("A->B->C") == Implies(Atom("A"), Implies(Atom("B"), Atom("C")))
    assert parse("A&B&C") == And(And(Atom("A"), Atom("B")), Atom("C"))
    assert parse("A|B|C") == Or(Or(Atom("A"), Atom("B")), Atom("C"))
    assert parse("A<->B<->C") == Iff(Atom("A"), Iff(Atom("B"), Atom("C")))


@pytest.mark.parametrize(
    "text,offset",
    [
        ("", 0),
        ("a", 0),
        ("A&b", 2),
        ("(A|B", 0),
        ("A-", 1),
        ("A<->", 4),
        ("A)", 1),
        ("A BB", 2),
    ],
)
def test_malformed_with_offsets(text, offset):
    with pytest.raises(MalformedFormula) as err:
        parse(text)
    assert err.value.offset == offset


def test_roundtrip_random_formulas():
    rng = random.Random(20240)
    for _ in range(2000):
        f = random_formula(rng, 6)
        assert parse(render(f)) == f


@settings(max_examples=300, deadline=None)
@given(st.integers(0, 2**63 - 1))
def test_roundtrip_property(seed):
    f = random_formula(random.Random(seed), 6)
    assert parse(render(f)) == f


def test_evaluate():
    f = parse("~A&B")
    assert evaluate(f, {"A": False, "B": True})
    assert not evaluate(f, {"A": True, "B": True})
    assert evaluate(parse("A->B"), {"A": False, "B": False})
    assert evaluate(parse("A<->B"), {"A": True, "B": True})
    assert atoms(parse("~(A|B)->C")) == frozenset("ABC")
