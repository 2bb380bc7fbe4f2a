import pytest

from logictutor.bank import Bank, BankIncomplete, load_bank, save_bank
from logictutor.formulas import parse, render
from logictutor.hintnet import InvalidTrace, SolutionTrace, TraceStep
from logictutor.rules import Rule
from logictutor.sample import demo_bank, fig_problem, mini_problems, sample_bank


def test_sample_bank_validates():
    bank = sample_bank()
    bank.validate()
    assert len(bank.section("intro")) == 2
    assert len(bank.section("pretest")) == 2
    assert len(bank.section("posttest")) == 4
    for level in range(1, 6):
        assert len(bank.section("training", level)) == 7


def test_demo_bank_has_walkthrough_at_entry():
    bank = demo_bank()
    level1 = bank.section("training", 1)
    assert level1[3].problem_id == "fig-demo" and level1[3].rank == 4


def test_mini_problems():
    problems = mini_problems()
    assert len(problems) == 10
    assert len({p.problem_id for p in problems}) == 10


def test_conclusion_never_a_premise():
    for p in sample_bank().problems:
        assert all(p.conclusion != prem for prem in p.premises)


def test_bad_expert_solution_rejected():
    bank = sample_bank()
    broken = fig_problem("broken", "posttest", 0, 9)
    broken.expert = SolutionTrace("broken", broken.expert.steps[:-1])
    with pytest.raises(InvalidTrace):
        Bank(bank.problems + [broken]).validate()


def test_missing_slots_listed():
    bank = sample_bank()
    pruned = Bank([p for p in bank.problems if not (p.section == "training" and p.level == 2)])
    with pytest.raises(BankIncomplete) as err:
        pruned.validate()
    assert any("level 2" in m for m in err.value.missing)


def test_json_roundtrip(tmp_path):
    bank = sample_bank()
    path = tmp_path / "bank.json"
    save_bank(bank, path)
    back = load_bank(path)
    back.validate()
    assert len(back.problems) == len(bank.problems)
    a = bank.by_id["fig-1"]
    b = back.by_id["fig-1"]
    assert [render(p) for p in a.premises] == [render(p) for p in b.premises]
    assert a.expert == b.expert
    assert a.intended_rules == b.intended_rules
