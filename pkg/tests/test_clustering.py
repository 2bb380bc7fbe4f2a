import numpy as np
import pytest

from logictutor.clustering import (
    InsufficientData,
    calinski_harabasz_score,
    choose_k,
    cluster_indices,
    cut_dendrogram,
    davies_bouldin_score,
    profile_label,
    silhouette_score,
    standardize,
    ward_cluster,
    ward_linkage,
)


def blobs(seed=0, n_per=20, spread=0.6):
    rng = np.random.default_rng(seed)
    centers = np.array([[0.0, 0.0, 0.0], [10.0, 0.0, 5.0], [0.0, 12.0, -4.0]])
    pts = [c + rng.normal(0, spread, 3) for c in centers for _ in range(n_per)]
    return np.array(pts)


def split_vote_data():
    """Three separated blobs, two with a faint two-way substructure: Silhouette
    and Davies-Bouldin prefer 3 clusters while Calinski-Harabasz prefers 5."""
    rng = np.random.default_rng(0)
    centers = np.array([[0.0, 0.0], [8.0, 0.0], [4.0, 7.0]])
    pts = []
    for i, c in enumerate(centers):
        for j in range(20):
            off = np.array([0.8 if j % 2 else -0.8, 0.0]) if i < 2 else np.zeros(2)
            pts.append(c + off + rng.normal(0, 0.35, 2))
    return np.array(pts)


def test_standardize_moments():
    z, mean, sd = standardize(blobs())
    assert np.allclose(z.mean(axis=0), 0.0, atol=1e-9)
    assert np.allclose(z.std(axis=0), 1.0, atol=1e-9)
    assert np.allclose(z * sd + mean, blobs(), atol=1e-9)


def test_standardize_rejects_constant_column():
    x = blobs()
    x[:, 1] = 3.0
    with pytest.raises(InsufficientData):
        standardize(x)


def naive_ward(z: np.ndarray):
    """O(n^3) oracle: at every step, merge the pair whose union raises the
    within-cluster sum of squares the least, recomputed from raw members."""

    def sse(idx):
        pts = z[idx]
        return float(((pts - pts.mean(axis=0)) ** 2).sum())

    clusters = {i: [i] for i in range(len(z))}
    merges = []
    next_id = len(z)
    while len(clusters) > 1:
        best = None
        for a in sorted(clusters):
            for b in sorted(clusters):
                if a >= b:
                    continue
                increase = sse(clusters[a] + clusters[b]) - sse(clusters[a]) - sse(clusters[b])
                key = (increase, a, b)
                if best is None or key < best:
                    best = key
        increase, a, b = best
        merges.append((a, b, next_id, increase))
        clusters[next_id] = clusters.pop(a) + clusters.pop(b)
        next_id += 1
    return merges


def test_ward_matches_naive_recompute_oracle():
    rng = np.random.default_rng(42)
    for _ in range(5):
        z, _, _ = standardize(rng.normal(size=(14, 3)))
        mine = ward_linkage(z)
        oracle = naive_ward(z)
        assert len(mine) == len(oracle)
        for m, (a, b, new_id, increase) in zip(mine, oracle):
            assert (m.a, m.b, m.new_id) == (a, b, new_id)
            assert m.height == pytest.approx(increase, abs=1e-9)


def test_first_merge_is_closest_pair():
    z, _, _ = standardize(blobs())
    merge = ward_linkage(z)[0]
    d2 = ((z[:, None, :] - z[None, :, :]) ** 2).sum(axis=2)
    np.fill_diagonal(d2, np.inf)
    assert d2[merge.a, merge.b] == d2.min()
    assert merge.height == pytest.approx(d2.min() / 2.0, abs=1e-12)


def test_merge_heights_nondecreasing():
    z, _, _ = standardize(blobs(seed=3, spread=2.5))
    heights = [m.height for m in ward_linkage(z)]
    assert all(b >= a - 1e-12 for a, b in zip(heights, heights[1:]))


def test_cut_dendrogram_sizes():
    z, _, _ = standardize(blobs())
    merges = ward_linkage(z)
    for k in (2, 3, 4, 5):
        labels = cut_dendrogram(merges, len(z), k)
        assert len(np.unique(labels)) == k


def test_blobs_choose_three():
    model = ward_cluster(blobs())
    assert model.k == 3
    # each blob of 20 lands in one cluster
    sizes = sorted(int((model.assignments == c).sum()) for c in range(3))
    assert sizes == [20, 20, 20]


def test_index_oracles_to_1e9():
    """All three indices against direct-formula loop oracles on a 12-point set."""
    rng = np.random.default_rng(7)
    z = rng.normal(size=(12, 3))
    labels = np.array([0, 0, 0, 0, 1, 1, 1, 1, 2, 2, 2, 2])

    def dist(a, b):
        return float(np.sqrt(((a - b) ** 2).sum()))

    # silhouette
    per_point = []
    for i in range(len(z)):
        own = [j for j in range(len(z)) if labels[j] == labels[i] and j != i]
        a = sum(dist(z[i], z[j]) for j in own) / len(own)
        b = min(
            sum(dist(z[i], z[j]) for j in range(len(z)) if labels[j] == c)
            / sum(1 for j in range(len(z)) if labels[j] == c)
            for c in set(labels) - {labels[i]}
        )
        per_point.append((b - a) / max(a, b))
    assert silhouette_score(z, labels) == pytest.approx(
        sum(per_point) / len(per_point), abs=1e-9
    )

    # davies-bouldin
    cents = {c: z[labels == c].mean(axis=0) for c in set(labels)}
    sigma = {
        c: sum(dist(z[j], cents[c]) for j in range(len(z)) if labels[j] == c)
        / sum(1 for j in range(len(z)) if labels[j] == c)
        for c in set(labels)
    }
    db = sum(
        max(
            (sigma[i] + sigma[j]) / dist(cents[i], cents[j])
            for j in set(labels)
            if j != i
        )
        for i in set(labels)
    ) / len(set(labels))
    assert davies_bouldin_score(z, labels) == pytest.approx(db, abs=1e-9)

    # calinski-harabasz
    overall = z.mean(axis=0)
    between = sum(
        (labels == c).sum() * ((cents[c] - overall) ** 2).sum() for c in set(labels)
    )
    within = sum(
        ((z[j] - cents[labels[j]]) ** 2).sum() for j in range(len(z))
    )
    k, n = len(set(labels)), len(z)
    assert calinski_harabasz_score(z, labels) == pytest.approx(
        (between / (k - 1)) / (within / (n - k)), abs=1e-9
    )


def test_indices_against_sklearn():
    sk = pytest.importorskip("sklearn.metrics")
    z, _, _ = standardize(blobs(seed=5, spread=2.0))
    labels = cut_dendrogram(ward_linkage(z), len(z), 3)
    assert silhouette_score(z, labels) == pytest.approx(
        float(sk.silhouette_score(z, labels)), abs=1e-9
    )
    assert davies_bouldin_score(z, labels) == pytest.approx(
        float(sk.davies_bouldin_score(z, labels)), abs=1e-9
    )
    assert calinski_harabasz_score(z, labels) == pytest.approx(
        float(sk.calinski_harabasz_score(z, labels)), abs=1e-9
    )


def test_ward_against_scipy():
    hierarchy = pytest.importorskip("scipy.cluster.hierarchy")
    z, _, _ = standardize(blobs(seed=11, spread=1.5))
    linkage = hierarchy.linkage(z, method="ward")
    mine = cut_dendrogram(ward_linkage(z), len(z), 3)
    theirs = hierarchy.fcluster(linkage, 3, criterion="maxclust")
    # identical partitions up to relabeling
    pairing = {}
    for a, b in zip(mine, theirs):
        pairing.setdefault(a, b)
        assert pairing[a] == b
    assert len(set(pairing.values())) == 3


def test_silhouette_approaches_one_with_separation():
    close = np.array([[0.0, 0], [0.1, 0], [5.0, 0], [5.1, 0]])
    far = np.array([[0.0, 0], [0.1, 0], [500.0, 0], [500.1, 0]])
    labels = np.array([0, 0, 1, 1])
    assert silhouette_score(far, labels) > silhouette_score(close, labels) > 0.9
    assert silhouette_score(far, labels) > 0.999


def test_singletons_contribute_zero_silhouette():
    z = np.array([[0.0, 0.0], [4.0, 0.0], [4.1, 0.0]])
    labels = np.array([0, 1, 1])
    # the singleton scores 0; the pair scores (b - a)/max with a = 0.1 (hand math)
    a1, b1 = 0.1, 4.0
    a2, b2 = 0.1, 4.1
    expected = (0.0 + (b1 - a1) / max(a1, b1) + (b2 - a2) / max(a2, b2)) / 3
    assert silhouette_score(z, labels) == pytest.approx(expected, abs=1e-12)


def test_davies_bouldin_with_zero_sigma_cluster():
    z = np.array([[0.0, 0.0], [0.0, 0.0], [3.0, 4.0], [3.0, 6.0]])
    labels = np.array([0, 0, 1, 1])
    # cluster 0 is two identical points: sigma 0
    sigma1 = 1.0
    centroid_distance = np.sqrt(3.0**2 + 5.0**2)
    assert davies_bouldin_score(z, labels) == pytest.approx(
        (0.0 + sigma1) / centroid_distance, abs=1e-12
    )


def test_vote_table4_pattern_on_reported_values():
    """Two indices prefer 3 and one prefers 5: the vote picks 3."""
    table = {
        2: {"silhouette": 0.49, "davies_bouldin": 0.63, "calinski_harabasz": 122.36},
        3: {"silhouette": 0.55, "davies_bouldin": 0.51, "calinski_harabasz": 234.91},
        4: {"silhouette": 0.50, "davies_bouldin": 0.57, "calinski_harabasz": 271.28},
        5: {"silhouette": 0.46, "davies_bouldin": 0.61, "calinski_harabasz": 285.74},
    }
    assert choose_k(table) == 3


def test_vote_three_way_tie_breaks_on_silhouette():
    table = {
        2: {"silhouette": 0.30, "davies_bouldin": 0.90, "calinski_harabasz": 50.0},
        3: {"silhouette": 0.60, "davies_bouldin": 0.95, "calinski_harabasz": 40.0},
        4: {"silhouette": 0.20, "davies_bouldin": 0.50, "calinski_harabasz": 30.0},
        5: {"silhouette": 0.10, "davies_bouldin": 0.80, "calinski_harabasz": 60.0},
    }
    # silhouette prefers 3, DB prefers 4, CH prefers 5: tie broken by silhouette
    assert choose_k(table) == 3


def test_split_vote_dataset_reproduces_table4_pattern():
    model = ward_cluster(split_vote_data())
    table = model.index_table
    sil = max(table, key=lambda k: table[k]["silhouette"])
    db = min(table, key=lambda k: table[k]["davies_bouldin"])
    ch = max(table, key=lambda k: table[k]["calinski_harabasz"])
    assert (sil, db, ch) == (3, 3, 5)
    assert model.k == 3


def test_permutation_invariance():
    x = blobs(seed=9, spread=1.0)
    rng = np.random.default_rng(123)
    perm = rng.permutation(len(x))
    a = ward_cluster(x)
    b = ward_cluster(x[perm])
    assert a.k == b.k
    pairing = {}
    for i, j in enumerate(perm):
        pairing.setdefault(int(b.assignments[i]), int(a.assignments[j]))
        assert pairing[int(b.assignments[i])] == int(a.assignments[j])


def test_centroids_in_raw_units_and_ordered():
    model = ward_cluster(blobs())
    for c in range(model.k):
        members = model.features[model.assignments == c]
        assert np.allclose(model.centroids[c], members.mean(axis=0), atol=1e-12)
    first = model.centroids[:, 0]
    assert all(b >= a for a, b in zip(first, first[1:]))


def test_insufficient_data():
    with pytest.raises(InsufficientData):
        ward_cluster(np.zeros((4, 5)))


def test_profile_labels():
    avg = np.array([42.81, 14.01, 5.16, 2.44, 0.80])
    high_effort = np.array([30.11, 13.08, 19.62, 4.58, 0.88])
    low_effort = np.array([38.51, 13.98, 3.79, 1.63, 0.83])
    unproductive = np.array([59.19, 14.75, 0.81, 1.06, 0.50])
    assert profile_label(high_effort, avg) == "Productive - High Effort - High HJR"
    assert profile_label(low_effort, avg) == "Productive - Low Effort - High HJR"
    assert profile_label(unproductive, avg) == "Unproductive - Low Effort - Low HJR"
