"""Hierarchical Ward clustering over student features, with the three-index
majority vote for picking the number of clusters.

Students are clustered on five standardized features (posttest time, posttest
average solution length, unsolved-problem time, restarts, unsolicited hint
justification rate). Agglomeration follows Ward's minimum-variance criterion
via the Lance-Williams update; merge heights are the within-cluster
sum-of-squares increase, which is non-decreasing along the dendrogram.
Candidate cuts are scored by Silhouette and Calinski-Harabasz (higher better)
and Davies-Bouldin (lower better); the winning k takes the majority vote,
with ties going to the best Silhouette.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np


class InsufficientData(Exception):
    pass


def standardize(features: np.ndarray) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Column-wise z-scores plus the (mean, sd) used, population sd."""
    x = np.asarray(features, dtype=float)
    mean = x.mean(axis=0)
    sd = x.std(axis=0)
    if np.any(sd == 0.0):
        constant = [int(i) for i in np.where(sd == 0.0)[0]]
        raise InsufficientData(f"feature column(s) {constant} are constant")
    return (x - mean) / sd, mean, sd


@dataclass(frozen=True)
class Merge:
    """One agglomeration: clusters `a` and `b` become `new_id`; `height` is the
    within-cluster variance increase of the merge."""

    a: int
    b: int
    new_id: int
    height: float
    size: int


def ward_linkage(z: np.ndarray) -> list[Merge]:
    """Agglomerate points bottom-up under Ward's criterion.

    Cluster 'distances' follow the Lance-Williams recurrence on squared
    Euclidean distances, which keeps d2(i, j) equal to twice the variance
    increase of merging i and j. Ties pick the lexicographically smallest
    active pair, so the dendrogram is deterministic.
    """
    n = len(z)
    if n < 2:
        raise InsufficientData("need at least 2 points to cluster")
    d2 = {}
    for i in range(n):
        for j in range(i + 1, n):
            diff = z[i] - z[j]
            d2[(i, j)] = float(diff @ diff)
    size = {i: 1 for i in range(n)}
    active = set(range(n))
    merges: list[Merge] = []
    next_id = n
    while len(active) > 1:
        best = min(
            ((d2[pair], pair) for pair in d2 if pair[0] in active and pair[1] in active),
            key=lambda item: (item[0], item[1]),
        )
        dist, (a, b) = best
        merges.append(Merge(a, b, next_id, dist / 2.0, size[a] + size[b]))
        na, nb = size[a], size[b]
        for k in active:
            if k in (a, b):
                continue
            nk = size[k]
            dak = d2[tuple(sorted((a, k)))]
            dbk = d2[tuple(sorted((b, k)))]
            dab = d2[(a, b)]
            d2[(k, next_id)] = (
                (na + nk) * dak + (nb + nk) * dbk - nk * dab
            ) / (na + nb + nk)
        active.discard(a)
        active.discard(b)
        active.add(next_id)
        size[next_id] = na + nb
        next_id += 1
    return merges


def cut_dendrogram(merges: Sequence[Merge], n: int, k: int) -> np.ndarray:
    """Labels (0..k-1) from stopping the agglomeration at k clusters. Cluster
    ids are assigned by order of first member appearance."""
    if not 1 <= k <= n:
        raise ValueError(f"cannot cut {n} points into {k} clusters")
    parent = {}
    for merge in merges[: n - k]:
        parent[merge.a] = merge.new_id
        parent[merge.b] = merge.new_id

    def root(i: int) -> int:
        while i in parent:
            i = parent[i]
        return i

    labels = np.zeros(n, dtype=int)
    seen: dict[int, int] = {}
    for i in range(n):
        r = root(i)
        if r not in seen:
            seen[r] = len(seen)
        labels[i] = seen[r]
    return labels


# --- cluster validity indices ----------------------------------------------------


def silhouette_score(z: np.ndarray, labels: np.ndarray) -> float:
    """Mean over points of (b - a) / max(a, b); singleton members contribute 0."""
    z = np.asarray(z, dtype=float)
    labels = np.asarray(labels)
    uniq = np.unique(labels)
    if len(uniq) < 2:
        raise InsufficientData("silhouette needs at least 2 clusters")
    dist = np.sqrt(((z[:, None, :] - z[None, :, :]) ** 2).sum(axis=2))
    scores = np.zeros(len(z))
    for i in range(len(z)):
        own = labels == labels[i]
        n_own = own.sum()
        if n_own == 1:
            scores[i] = 0.0
            continue
        a = dist[i][own].sum() / (n_own - 1)
        b = min(dist[i][labels == c].mean() for c in uniq if c != labels[i])
        scores[i] = (b - a) / max(a, b)
    return float(scores.mean())


def davies_bouldin_score(z: np.ndarray, labels: np.ndarray) -> float:
    """Mean over clusters of the worst (sigma_i + sigma_j) / d(c_i, c_j)."""
    z = np.asarray(z, dtype=float)
    labels = np.asarray(labels)
    uniq = np.unique(labels)
    if len(uniq) < 2:
        raise InsufficientData("Davies-Bouldin needs at least 2 clusters")
    centroids = np.array([z[labels == c].mean(axis=0) for c in uniq])
    sigma = np.array(
        [
            np.sqrt(((z[labels == c] - centroids[i]) ** 2).sum(axis=1)).mean()
            for i, c in enumerate(uniq)
        ]
    )
    worst = []
    for i in range(len(uniq)):
        ratios = [
            (sigma[i] + sigma[j]) / np.sqrt(((centroids[i] - centroids[j]) ** 2).sum())
            for j in range(len(uniq))
            if j != i
        ]
        worst.append(max(ratios))
    return float(np.mean(worst))


def calinski_harabasz_score(z: np.ndarray, labels: np.ndarray) -> float:
    """Between-cluster over within-cluster dispersion, degree-of-freedom scaled."""
    z = np.asarray(z, dtype=float)
    labels = np.asarray(labels)
    uniq = np.unique(labels)
    n, k = len(z), len(uniq)
    if k < 2 or n <= k:
        raise InsufficientData("Calinski-Harabasz needs 2 <= k < n")
    overall = z.mean(axis=0)
    between = 0.0
    within = 0.0
    for c in uniq:
        members = z[labels == c]
        centroid = members.mean(axis=0)
        between += len(members) * float(((centroid - overall) ** 2).sum())
        within += float(((members - centroid) ** 2).sum())
    return (between / (k - 1)) / (within / (n - k))


def cluster_indices(z: np.ndarray, labels: np.ndarray) -> dict[str, float]:
    return {
        "silhouette": silhouette_score(z, labels),
        "davies_bouldin": davies_bouldin_score(z, labels),
        "calinski_harabasz": calinski_harabasz_score(z, labels),
    }


def choose_k(index_table: dict[int, dict[str, float]]) -> int:
    """Majority vote across the three indices; ties go to the best Silhouette."""
    votes: dict[int, int] = {}
    ks = sorted(index_table)
    preferences = (
        max(ks, key=lambda k: (index_table[k]["silhouette"], -k)),
        min(ks, key=lambda k: (index_table[k]["davies_bouldin"], k)),
        max(ks, key=lambda k: (index_table[k]["calinski_harabasz"], -k)),
    )
    for k in preferences:
        votes[k] = votes.get(k, 0) + 1
    top = max(votes.values())
    tied = sorted(k for k, v in votes.items() if v == top)
    if len(tied) == 1:
        return tied[0]
    return max(tied, key=lambda k: (index_table[k]["silhouette"], -k))


FEATURE_NAMES = (
    "posttest_time_minutes",
    "posttest_avg_solution_length",
    "unsolved_time_minutes",
    "restarts",
    "unsolicited_hjr",
)


@dataclass
class ClusterModel:
    features: np.ndarray
    mean: np.ndarray
    sd: np.ndarray
    merges: list[Merge]
    index_table: dict[int, dict[str, float]]
    k: int
    assignments: np.ndarray
    centroids: np.ndarray  # raw feature units, one row per cluster


def ward_cluster(features: np.ndarray, k_range: Sequence[int] = range(2, 6)) -> ClusterModel:
    """Standardize, agglomerate, score each candidate k, vote, and profile.

    Cluster numbering in the chosen assignment is by ascending first-feature
    centroid, so cluster 1 has the best (shortest) posttest time.
    """
    features = np.asarray(features, dtype=float)
    ks = sorted(set(int(k) for k in k_range))
    if features.ndim != 2 or len(features) < max(ks) + 1:
        raise InsufficientData(
            f"need more than {max(ks)} students with complete features"
        )
    z, mean, sd = standardize(features)
    merges = ward_linkage(z)
    index_table = {
        k: cluster_indices(z, cut_dendrogram(merges, len(z), k)) for k in ks
    }
    k = choose_k(index_table)
    raw_labels = cut_dendrogram(merges, len(z), k)
    centroids = np.array([features[raw_labels == c].mean(axis=0) for c in range(k)])
    order = np.argsort(centroids[:, 0], kind="stable")
    relabel = {int(old): new for new, old in enumerate(order)}
    assignments = np.array([relabel[int(c)] for c in raw_labels])
    centroids = centroids[order]
    return ClusterModel(features, mean, sd, merges, index_table, k, assignments, centroids)


def profile_label(centroid: np.ndarray, class_average: np.ndarray) -> str:
    """Name a cluster by how its centroid compares to the class average:
    productive when both posttest measures beat the average, high effort when
    either effort measure exceeds it, high HJR when hint justification does."""
    productive = centroid[0] < class_average[0] and centroid[1] < class_average[1]
    high_effort = centroid[2] > class_average[2] or centroid[3] > class_average[3]
    high_hjr = centroid[4] > class_average[4]
    return " - ".join(
        (
            "Productive" if productive else "Unproductive",
            "High Effort" if high_effort else "Low Effort",
            "High HJR" if high_hjr else "Low HJR",
        )
    )
