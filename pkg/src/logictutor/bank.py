"""Problem banks: the study's problem inventory with expert solutions.

A full bank covers four sections: 2 intro worked examples, 2 pretest problems,
5 training levels, and 4 posttest problems. Each training level needs enough
problems to absorb three skips on top of the four-solved quota. Every problem
ships one complete expert solution, which both seeds the hint network and
proves the problem is solvable.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Iterable, Optional

from .formulas import Formula, parse, render
from .hintnet import InvalidTrace, SolutionTrace, TraceStep, replay_trace
from .rules import Rule, rule_from_name

INTRO = "intro"
PRETEST = "pretest"
TRAINING = "training"
POSTTEST = "posttest"

TRAINING_LEVELS = 5
REQUIRED = {INTRO: 2, PRETEST: 2, POSTTEST: 4}
SOLVE_QUOTA = 4
MAX_SKIPS = 3
PROBLEMS_PER_LEVEL = SOLVE_QUOTA + MAX_SKIPS


class BankIncomplete(Exception):
    def __init__(self, missing: list[str]):
        super().__init__("problem bank is missing: " + "; ".join(missing))
        self.missing = missing


@dataclass
class Problem:
    problem_id: str
    section: str
    level: int  # 1..5 for training, 0 elsewhere
    rank: int  # difficulty rank within the section/level, 1 = easiest
    premises: list[Formula]
    conclusion: Formula
    intended_rules: list[Rule]
    expert: SolutionTrace

    def graph_statements(self) -> set[str]:
        return {render(p) for p in self.premises}


@dataclass
class Bank:
    problems: list[Problem]

    def __post_init__(self):
        self.by_id = {p.problem_id: p for p in self.problems}

    def section(self, section: str, level: int = 0) -> list[Problem]:
        out = [p for p in self.problems if p.section == section and p.level == level]
        return sorted(out, key=lambda p: p.rank)

    def validate(self) -> None:
        """Check slot counts, per-problem invariants, and expert solutions."""
        missing: list[str] = []
        for section, count in REQUIRED.items():
            have = len(self.section(section))
            if have < count:
                missing.append(f"{section}: {have} of {count} problems")
        for level in range(1, TRAINING_LEVELS + 1):
            have = len(self.section(TRAINING, level))
            if have < PROBLEMS_PER_LEVEL:
                missing.append(
                    f"training level {level}: {have} of {PROBLEMS_PER_LEVEL} problems"
                )
        if missing:
            raise BankIncomplete(missing)
        for p in self.problems:
            if any(p.conclusion == prem for prem in p.premises):
                raise ValueError(f"{p.problem_id}: conclusion is already a premise")
            states = replay_trace(p.premises, p.conclusion, p.expert)
            if not states[-1][0].completed:
                raise InvalidTrace(f"{p.problem_id}: expert solution is incomplete")
        for section in (INTRO, PRETEST, POSTTEST):
            ranks = [p.rank for p in self.section(section)]
            if len(set(ranks)) != len(ranks):
                raise ValueError(f"{section}: duplicate difficulty ranks")
        for level in range(1, TRAINING_LEVELS + 1):
            ranks = [p.rank for p in self.section(TRAINING, level)]
            if len(set(ranks)) != len(ranks):
                raise ValueError(f"training level {level}: duplicate difficulty ranks")


def problem_to_dict(p: Problem) -> dict:
    return {
        "id": p.problem_id,
        "section": p.section,
        "level": p.level,
        "rank": p.rank,
        "premises": [render(f) for f in p.premises],
        "conclusion": render(p.conclusion),
        "rules": [r.value for r in p.intended_rules],
        "expert": [
            {"rule": s.rule.value, "sources": list(s.sources), "derived": s.derived}
            for s in p.expert.steps
        ],
    }


def problem_from_dict(d: dict) -> Problem:
    pid = d["id"]
    steps = [
        TraceStep(rule_from_name(s["rule"]), tuple(s["sources"]), s["derived"])
        for s in d["expert"]
    ]
    return Problem(
        problem_id=pid,
        section=d["section"],
        level=int(d.get("level", 0)),
        rank=int(d["rank"]),
        premises=[parse(s) for s in d["premises"]],
        conclusion=parse(d["conclusion"]),
        intended_rules=[rule_from_name(r) for r in d.get("rules", [])],
        expert=SolutionTrace(pid, steps),
    )


def save_bank(bank: Bank, path) -> None:
    payload = {"problems": [problem_to_dict(p) for p in bank.problems]}
    with open(path, "w", encoding="ascii") as fh:
        json.dump(payload, fh, indent=2, sort_keys=True)
        fh.write("\n")


def load_bank(path) -> Bank:
    with open(path, encoding="ascii") as fh:
        payload = json.load(fh)
    return Bank([problem_from_dict(d) for d in payload["problems"]])
