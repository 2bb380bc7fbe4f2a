"""The measurement pipeline: simulate a cohort, compute every metric, cluster.

Writes event logs and the analysis report into ./demo_output/.
"""

from pathlib import Path

from logictutor.agents import AgentPolicy, simulate_cohort
from logictutor.analytics import analyze_cohort
from logictutor.events import read_log
from logictutor.report import clustering_features, write_report
from logictutor.sample import sample_bank
from logictutor.session import TutorEngine

out = Path("demo_output")
bank = sample_bank()
engine = TutorEngine(bank)

# A mixed cohort of wandering students with occasional errors, skips,
# restarts, and think times long enough to trigger inactivity messages.
policy = AgentPolicy("random", think_lo=3.0, think_hi=80.0, error_rate=0.12,
                     skip_rate=0.05, restart_rate=0.05, ondemand_rate=0.02)
print("simulating 16 students (this takes a few seconds)...")
paths = simulate_cohort(bank, 16, "mixed", policy, seed=2024, out_dir=out / "logs",
                        engine=engine)

metrics = analyze_cohort([read_log(p) for p in paths])
for m in metrics[:6]:
    print(f"  {m.student} [{m.condition:10}] given={m.hints.unsolicited_given:3}"
          f" HJR={m.hints.unsolicited_hjr:.2f}"
          f" posttest={m.posttest.total_time_minutes:6.1f}min"
          f" restarts={m.effort.restarts}"
          f" proficiency={m.proficiency.label}")

features, kept = clustering_features(metrics)
print(f"\nclustering {len(kept)} students on 5 features "
      "(posttest time/length, unsolved time, restarts, HJR)")
report = write_report(metrics, out / "report.txt")
print("\n".join(report.splitlines()[len(metrics) + 3 :]))
print("full report written to", out / "report.txt")
