"""A complete built-in problem bank: 2 intro worked examples, 2 pretest
problems, 5 training levels of 7 problems each, and 4 posttest problems.

Problems are authored as templates and multiplied by relabeling atoms, which
preserves structure and the expert solution. Expert solutions avoid Add so
that every statement they introduce is reachable by one-step enumeration.
"""

from __future__ import annotations

from .bank import Bank, Problem
from .formulas import parse
from .hintnet import SolutionTrace, TraceStep
from .rules import Rule, rule_from_name

Steps = list[tuple[str, list[str], str]]


def _mk(
    problem_id: str,
    section: str,
    level: int,
    rank: int,
    premises: list[str],
    conclusion: str,
    steps: Steps,
) -> Problem:
    trace = SolutionTrace(
        problem_id,
        [TraceStep(rule_from_name(r), tuple(srcs), derived) for r, srcs, derived in steps],
    )
    rules: list[Rule] = []
    for r, _, _ in steps:
        rule = rule_from_name(r)
        if rule not in rules:
            rules.append(rule)
    return Problem(
        problem_id=problem_id,
        section=section,
        level=level,
        rank=rank,
        premises=[parse(p) for p in premises],
        conclusion=parse(conclusion),
        intended_rules=rules,
        expert=trace,
    )


def _relabel(text: str, table: dict[str, str]) -> str:
    return "".join(table.get(ch, ch) for ch in text)


def _variant(base: Problem, suffix: str, rank: int, table: dict[str, str]) -> Problem:
    from .formulas import render

    steps: Steps = [
        (s.rule.value, [_relabel(x, table) for x in s.sources], _relabel(s.derived, table))
        for s in base.expert.steps
    ]
    return _mk(
        f"{base.problem_id}{suffix}",
        base.section,
        base.level,
        rank,
        [_relabel(render(p), table) for p in base.premises],
        _relabel(render(base.conclusion), table),
        steps,
    )


_SHIFT1 = {c: chr((ord(c) - 65 + 7) % 26 + 65) for c in map(chr, range(65, 91))}
_SHIFT2 = {c: chr((ord(c) - 65 + 15) % 26 + 65) for c in map(chr, range(65, 91))}


def _intro() -> list[Problem]:
    return [
        _mk(
            "intro-1", "intro", 0, 1,
            ["A->B", "B->C", "A"], "C",
            [("MP", ["A->B", "A"], "B"), ("MP", ["B->C", "B"], "C")],
        ),
        _mk(
            "intro-2", "intro", 0, 2,
            ["A&B"], "B&A",
            [("Simp", ["A&B"], "A"), ("Simp", ["A&B"], "B"), ("Conj", ["B", "A"], "B&A")],
        ),
    ]


def _pretest() -> list[Problem]:
    return [
        _mk(
            "pre-1", "pretest", 0, 1,
            ["A->B", "A", "B->C"], "C",
            [("MP", ["A->B", "A"], "B"), ("MP", ["B->C", "B"], "C")],
        ),
        _mk(
            "pre-2", "pretest", 0, 2,
            ["A&B", "B->D"], "D",
            [("Simp", ["A&B"], "B"), ("MP", ["B->D", "B"], "D")],
        ),
    ]


def fig_problem(problem_id: str = "fig", section: str = "training", level: int = 3, rank: int = 4) -> Problem:
    """The walkthrough problem: premises A->C, B, C->E, D&~E, conclusion ~A&B,
    with the six-step sample solution (whose derived D is never needed)."""
    return _mk(
        problem_id, section, level, rank,
        ["A->C", "B", "C->E", "D&~E"], "~A&B",
        [
            ("Simp", ["D&~E"], "D"),
            ("Simp", ["D&~E"], "~E"),
            ("Impl", ["A->C"], "~A|C"),
            ("MT", ["C->E", "~E"], "~C"),
            ("DS", ["~A|C", "~C"], "~A"),
            ("Conj", ["B", "~A"], "~A&B"),
        ],
    )


def _level_templates(level: int) -> list[Problem]:
    if level == 1:
        return [
            _mk("t1a", "training", 1, 0, ["A&B", "A->C"], "C",
                [("Simp", ["A&B"], "A"), ("MP", ["A->C", "A"], "C")]),
            _mk("t1b", "training", 1, 0, ["A", "B", "A->C"], "C&B",
                [("MP", ["A->C", "A"], "C"), ("Conj", ["C", "B"], "C&B")]),
            _mk("t1c", "training", 1, 0, ["A&B", "B->D"], "A&D",
                [("Simp", ["A&B"], "A"), ("Simp", ["A&B"], "B"),
                 ("MP", ["B->D", "B"], "D"), ("Conj", ["A", "D"], "A&D")]),
        ]
    if level == 2:
        return [
            _mk("t2a", "training", 2, 0, ["A->B", "~B", "~A->C"], "C",
                [("MT", ["A->B", "~B"], "~A"), ("MP", ["~A->C", "~A"], "C")]),
            _mk("t2b", "training", 2, 0, ["A|B", "~A", "B->C"], "C",
                [("DS", ["A|B", "~A"], "B"), ("MP", ["B->C", "B"], "C")]),
            _mk("t2c", "training", 2, 0, ["A->B", "~B", "A|D", "D->E"], "E",
                [("MT", ["A->B", "~B"], "~A"), ("DS", ["A|D", "~A"], "D"),
                 ("MP", ["D->E", "D"], "E")]),
        ]
    if level == 3:
        return [
            _mk("t3a", "training", 3, 0, ["A->B", "B->C", "A"], "C",
                [("HS", ["A->B", "B->C"], "A->C"), ("MP", ["A->C", "A"], "C")]),
            _mk("t3b", "training", 3, 0, ["A->B", "B->C", "C->D", "~D"], "~A",
                [("HS", ["A->B", "B->C"], "A->C"), ("HS", ["A->C", "C->D"], "A->D"),
                 ("MT", ["A->D", "~D"], "~A")]),
            fig_problem(),
        ]
    if level == 4:
        return [
            _mk("t4a", "training", 4, 0, ["~(A&B)", "A"], "~B",
                [("DeM", ["~(A&B)"], "~A|~B"), ("DN", ["A"], "~~A"),
                 ("DS", ["~A|~B", "~~A"], "~B")]),
            _mk("t4b", "training", 4, 0, ["~(A|B)", "C"], "~A&C",
                [("DeM", ["~(A|B)"], "~A&~B"), ("Simp", ["~A&~B"], "~A"),
                 ("Conj", ["~A", "C"], "~A&C")]),
            _mk("t4c", "training", 4, 0, ["~A->B", "~B", "A->C"], "C",
                [("MT", ["~A->B", "~B"], "~~A"), ("DN", ["~~A"], "A"),
                 ("MP", ["A->C", "A"], "C")]),
        ]
    return [
        _mk("t5a", "training", 5, 0, ["A->B", "B->E", "E->F", "~F", "A|G"], "G",
            [("HS", ["A->B", "B->E"], "A->E"), ("HS", ["A->E", "E->F"], "A->F"),
             ("MT", ["A->F", "~F"], "~A"), ("DS", ["A|G", "~A"], "G")]),
        _mk("t5b", "training", 5, 0, ["A->B", "C->D", "A|C", "~B"], "D",
            [("MT", ["A->B", "~B"], "~A"), ("DS", ["A|C", "~A"], "C"),
             ("MP", ["C->D", "C"], "D")]),
        fig_problem("t5c", "training", 5, 0),
    ]


def _training_level(level: int) -> list[Problem]:
    a, b, c = _level_templates(level)
    out = [
        _variant(a, "-1", 1, {}),
        _variant(a, "-2", 2, _SHIFT1),
        _variant(b, "-1", 3, {}),
        _variant(c, "-1", 4, {}),
        _variant(b, "-2", 5, _SHIFT1),
        _variant(c, "-2", 6, _SHIFT2),
        _variant(a, "-3", 7, _SHIFT2),
    ]
    return out


def _posttest() -> list[Problem]:
    return [
        _mk(
            "post-1", "posttest", 0, 1,
            ["A->C", "B", "C->E", "D&~E", "~A->F"], "F&B",
            [
                ("Simp", ["D&~E"], "~E"),
                ("MT", ["C->E", "~E"], "~C"),
                ("MT", ["A->C", "~C"], "~A"),
                ("MP", ["~A->F", "~A"], "F"),
                ("Conj", ["F", "B"], "F&B"),
            ],
        ),
        _mk(
            "post-2", "posttest", 0, 2,
            ["A->B", "B->C", "C->D", "D->E", "~E", "A|F"], "F",
            [
                ("HS", ["A->B", "B->C"], "A->C"),
                ("HS", ["A->C", "C->D"], "A->D"),
                ("HS", ["A->D", "D->E"], "A->E"),
                ("MT", ["A->E", "~E"], "~A"),
                ("DS", ["A|F", "~A"], "F"),
            ],
        ),
        _mk(
            "post-3", "posttest", 0, 3,
            ["A|B", "~A", "B->C", "C->D", "~D|E"], "E&B",
            [
                ("DS", ["A|B", "~A"], "B"),
                ("MP", ["B->C", "B"], "C"),
                ("MP", ["C->D", "C"], "D"),
                ("Impl", ["~D|E"], "D->E"),
                ("MP", ["D->E", "D"], "E"),
                ("Conj", ["E", "B"], "E&B"),
            ],
        ),
        _mk(
            "post-4", "posttest", 0, 4,
            ["~(A&B)", "B&C", "D->A"], "~D&C",
            [
                ("DeM", ["~(A&B)"], "~A|~B"),
                ("Simp", ["B&C"], "B"),
                ("DN", ["B"], "~~B"),
                ("DS", ["~A|~B", "~~B"], "~A"),
                ("MT", ["D->A", "~A"], "~D"),
                ("Simp", ["B&C"], "C"),
                ("Conj", ["~D", "C"], "~D&C"),
            ],
        ),
    ]


def sample_bank() -> Bank:
    problems = _intro() + _pretest()
    for level in range(1, 6):
        problems.extend(_training_level(level))
    problems.extend(_posttest())
    bank = Bank(problems)
    bank.validate()
    return bank


def demo_bank() -> Bank:
    """A bank whose first training problem is the walkthrough problem, so a
    browser session reaches it after the intro and two short pretest problems."""
    problems = _intro() + _pretest()
    fig = fig_problem("fig-demo", "training", 1, 4)
    a, b, _ = _level_templates(1)
    level1 = [
        _variant(a, "-1", 1, {}),
        _variant(a, "-2", 2, _SHIFT1),
        _variant(b, "-1", 3, {}),
        fig,
        _variant(b, "-2", 5, _SHIFT1),
        _variant(a, "-3", 6, _SHIFT2),
        _variant(b, "-3", 7, _SHIFT2),
    ]
    problems.extend(level1)
    for level in range(2, 6):
        problems.extend(_training_level(level))
    problems.extend(_posttest())
    bank = Bank(problems)
    bank.validate()
    return bank


def mini_problems() -> list[Problem]:
    """Ten assorted problems with expert solutions, for hint-engine stress tests."""
    picks = []
    for level in range(1, 6):
        a, b, _ = _level_templates(level)
        picks.append(_variant(a, "-m", 1, {}))
        picks.append(_variant(b, "-m", 2, _SHIFT1))
    return picks
