"""Command line: serve the tutor API, simulate cohorts, analyze logs, and
export the built-in bank or trace corpora."""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from .agents import default_policy, simulate_cohort
from .analytics import analyze_cohort
from .bank import Bank, load_bank, save_bank
from .events import read_log
from .formulas import render
from .hintnet import SolutionTrace, TraceStep, read_corpus, write_corpus
from .report import write_report
from .rules import rule_from_name
from .sample import demo_bank, sample_bank
from .service import make_server
from .session import TutorEngine
from . import events as ev


def _bank_from_args(args) -> Bank:
    if args.bank == "sample":
        return sample_bank()
    if args.bank == "demo":
        return demo_bank()
    return load_bank(args.bank)


def _cmd_serve(args) -> int:
    bank = _bank_from_args(args)
    extra = read_corpus(args.corpus) if args.corpus else None
    engine = TutorEngine(bank, extra)
    server = make_server(
        bank, args.port, engine=engine, ui_dir=args.ui, log_dir=args.logs
    )
    print(f"tutor API on http://127.0.0.1:{server.port}/ (Ctrl-C to stop)")
    try:
        server.serve_forever()
    except KeyboardInterrupt:
        server.shutdown()
    return 0


def _cmd_simulate(args) -> int:
    bank = _bank_from_args(args)
    policy = default_policy(args.policy)
    if args.think is not None:
        policy.think_lo, policy.think_hi = args.think
    paths = simulate_cohort(bank, args.n, args.condition, policy, args.seed, args.out)
    print(f"wrote {len(paths)} session logs to {args.out}")
    return 0


def _cmd_analyze(args) -> int:
    logs = sorted(Path(args.logs).glob("*.jsonl"))
    if not logs:
        print(f"no *.jsonl logs under {args.logs}", file=sys.stderr)
        return 1
    metrics = analyze_cohort([read_log(p) for p in logs])
    text = write_report(metrics, args.out)
    print(text)
    print(f"report written to {args.out}")
    return 0


def _cmd_sample_bank(args) -> int:
    bank = demo_bank() if args.demo else sample_bank()
    save_bank(bank, args.out)
    print(f"wrote {len(bank.problems)} problems to {args.out}")
    return 0


def _cmd_extract_traces(args) -> int:
    """Turn solved training problems from session logs into a trace corpus,
    which can reseed the hint networks (the data-driven loop)."""
    bank = _bank_from_args(args)
    traces: list[SolutionTrace] = []
    for path in sorted(Path(args.logs).glob("*.jsonl")):
        events = read_log(path)
        final_attempt: dict[str, int] = {}
        for e in events:
            if e.kind == ev.PROBLEM_COMPLETE and e.phase == "training":
                final_attempt[e.problem] = e.attempt
        for pid, attempt in sorted(final_attempt.items()):
            problem = bank.by_id[pid]
            statements = {}
            for i, premise in enumerate(problem.premises, start=1):
                statements[i] = render(premise)
            steps = []
            for e in events:
                if e.kind != ev.STEP_VALID or e.problem != pid or e.attempt != attempt:
                    continue
                sources = tuple(statements[s] for s in e.data["sources"])
                steps.append(TraceStep(rule_from_name(e.data["rule"]), sources, e.data["derived"]))
                statements[e.data["node"]] = e.data["derived"]
            traces.append(SolutionTrace(pid, steps))
    write_corpus(args.out, traces)
    print(f"wrote {len(traces)} solution traces to {args.out}")
    return 0


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(
        prog="logictutor",
        description="data-driven propositional-logic proof tutor",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("serve", help="run the HTTP session API")
    p.add_argument("--bank", default="sample", help="bank JSON file, or 'sample'/'demo'")
    p.add_argument("--port", type=int, default=8000)
    p.add_argument("--corpus", help="extra solution-trace corpus to seed hint networks")
    p.add_argument("--ui", help="directory of built frontend files to host at /")
    p.add_argument("--logs", help="directory for completed-session event logs")
    p.set_defaults(func=_cmd_serve)

    p = sub.add_parser("simulate", help="run a simulated cohort, one log per student")
    p.add_argument("--bank", default="sample")
    p.add_argument("--n", type=int, default=20)
    p.add_argument("--condition", default="mixed", choices=["assertions", "messages", "mixed"])
    p.add_argument("--policy", default="follow", choices=["follow", "ignore", "random"])
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--think", type=float, nargs=2, metavar=("LO", "HI"),
                   help="think-time range in seconds")
    p.add_argument("--out", required=True)
    p.set_defaults(func=_cmd_simulate)

    p = sub.add_parser("analyze", help="metrics, clustering, and correlation report")
    p.add_argument("--logs", required=True, help="directory of *.jsonl session logs")
    p.add_argument("--out", default="report.txt")
    p.set_defaults(func=_cmd_analyze)

    p = sub.add_parser("sample-bank", help="write the built-in problem bank as JSON")
    p.add_argument("--out", required=True)
    p.add_argument("--demo", action="store_true",
                   help="variant with the walkthrough problem first in training")
    p.set_defaults(func=_cmd_sample_bank)

    p = sub.add_parser("extract-traces", help="solved training solutions -> trace corpus")
    p.add_argument("--bank", default="sample")
    p.add_argument("--logs", required=True)
    p.add_argument("--out", required=True)
    p.set_defaults(func=_cmd_extract_traces)

    args = parser.parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
