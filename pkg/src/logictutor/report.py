"""Tab-separated analysis report: per-student metrics, cluster quality and
centroid tables, and correlations between posttest performance and
unsolicited hint usage."""

from __future__ import annotations

from typing import Optional, Sequence

import numpy as np

from .analytics import StudentMetrics, ZeroVariance, pearson_corr
from .clustering import (
    ClusterModel,
    FEATURE_NAMES,
    InsufficientData,
    profile_label,
    ward_cluster,
)


def clustering_features(
    metrics: Sequence[StudentMetrics],
) -> tuple[np.ndarray, list[StudentMetrics]]:
    """The five clustering features per student; students with no unsolicited
    hints have an undefined justification rate and are left out."""
    kept = [m for m in metrics if m.hints.unsolicited_hjr is not None]
    rows = [
        (
            m.posttest.total_time_minutes,
            m.posttest.avg_solution_length,
            m.effort.unsolved_time_minutes,
            float(m.effort.restarts),
            m.hints.unsolicited_hjr,
        )
        for m in kept
    ]
    return np.array(rows, dtype=float), kept


def _fmt(value: Optional[float], places: int = 4) -> str:
    if value is None:
        return "-"
    return f"{value:.{places}f}"


def _student_rows(metrics: Sequence[StudentMetrics]) -> list[str]:
    header = "\t".join(
        (
            "student", "condition", "proficiency_score", "proficiency",
            "hints_given", "unsolicited_given", "hjr", "hnr",
            "unsolicited_hjr", "unsolicited_hnr",
            "pretest_len", "pretest_min", "pretest_acc",
            "posttest_len", "posttest_min", "posttest_acc",
            "unsolved_min", "restarts",
        )
    )
    rows = [header]
    for m in metrics:
        p = m.proficiency
        rows.append(
            "\t".join(
                (
                    m.student,
                    m.condition,
                    _fmt(p.score) if p else "-",
                    p.label if p else "-",
                    str(m.hints.total_given),
                    str(m.hints.unsolicited_given),
                    _fmt(m.hints.hjr),
                    _fmt(m.hints.hnr),
                    _fmt(m.hints.unsolicited_hjr),
                    _fmt(m.hints.unsolicited_hnr),
                    _fmt(m.pretest.avg_solution_length, 2),
                    _fmt(m.pretest.total_time_minutes, 2),
                    _fmt(m.pretest.accuracy),
                    _fmt(m.posttest.avg_solution_length, 2),
                    _fmt(m.posttest.total_time_minutes, 2),
                    _fmt(m.posttest.accuracy),
                    _fmt(m.effort.unsolved_time_minutes, 2),
                    str(m.effort.restarts),
                )
            )
        )
    return rows


def _index_rows(model: ClusterModel) -> list[str]:
    rows = ["clusters\tsilhouette\tdavies_bouldin\tcalinski_harabasz\tchosen"]
    for k in sorted(model.index_table):
        idx = model.index_table[k]
        rows.append(
            "\t".join(
                (
                    str(k),
                    _fmt(idx["silhouette"]),
                    _fmt(idx["davies_bouldin"]),
                    _fmt(idx["calinski_harabasz"], 2),
                    "*" if k == model.k else "",
                )
            )
        )
    return rows


def _centroid_rows(model: ClusterModel) -> list[str]:
    rows = ["cluster\tlabel\tn\t" + "\t".join(FEATURE_NAMES)]
    class_average = model.features.mean(axis=0)
    for c in range(model.k):
        centroid = model.centroids[c]
        n = int((model.assignments == c).sum())
        rows.append(
            "\t".join(
                (
                    f"#{c + 1}",
                    profile_label(centroid, class_average),
                    str(n),
                    *(_fmt(float(v), 2) for v in centroid),
                )
            )
        )
    rows.append(
        "\t".join(
            ("CA", "Class Average", str(len(model.features)))
            + tuple(_fmt(float(v), 2) for v in class_average)
        )
    )
    return rows


def _correlation_rows(metrics: Sequence[StudentMetrics]) -> list[str]:
    rows = ["group\tn\ttarget\thint_metric\tpearson_r"]
    groups = [("all", list(metrics))]
    if any(m.proficiency for m in metrics):
        groups.append(("low", [m for m in metrics if m.proficiency and not m.proficiency.high]))
        groups.append(("high", [m for m in metrics if m.proficiency and m.proficiency.high]))
    hint_columns = (
        ("unsolicited_given", lambda m: float(m.hints.unsolicited_given)),
        ("unsolicited_hjr", lambda m: m.hints.unsolicited_hjr),
        ("unsolicited_hnr", lambda m: m.hints.unsolicited_hnr),
    )
    targets = (
        ("posttest_length", lambda m: m.posttest.avg_solution_length),
        ("posttest_time", lambda m: m.posttest.total_time_minutes),
    )
    for group_name, members in groups:
        for target_name, target_fn in targets:
            for metric_name, metric_fn in hint_columns:
                pairs = [
                    (target_fn(m), metric_fn(m))
                    for m in members
                    if metric_fn(m) is not None
                ]
                r: Optional[float] = None
                if len(pairs) >= 3:
                    try:
                        r = pearson_corr([a for a, _ in pairs], [b for _, b in pairs])
                    except ZeroVariance:
                        r = None
                rows.append(
                    "\t".join(
                        (group_name, str(len(pairs)), target_name, metric_name, _fmt(r))
                    )
                )
    return rows


def render_report(metrics: Sequence[StudentMetrics], k_range=range(2, 6)) -> str:
    sections = [
        f"# per-student metrics ({len(metrics)} students)",
        *_student_rows(metrics),
        "",
        "# cluster quality by candidate cluster count",
    ]
    model: Optional[ClusterModel] = None
    features, kept = clustering_features(metrics)
    try:
        model = ward_cluster(features, k_range)
    except InsufficientData as exc:
        sections.append(f"(not clustered: {exc})")
    if model is not None:
        sections.extend(_index_rows(model))
        sections.append("")
        sections.append(f"# cluster centroids (raw units, {len(kept)} students)")
        sections.extend(_centroid_rows(model))
    sections.append("")
    sections.append("# correlations: posttest performance vs unsolicited hint usage")
    sections.extend(_correlation_rows(metrics))
    sections.append("")
    return "\n".join(sections)


def write_report(metrics: Sequence[StudentMetrics], path, k_range=range(2, 6)) -> str:
    text = render_report(metrics, k_range)
    with open(path, "w", encoding="ascii") as fh:
        fh.write(text)
    return text
