import math

import numpy as np
import pytest
from sklearn.neighbors import KNeighborsClassifier

from conftest import random_extended, random_points
from topodist import DistanceConfig, ExtendedDiagram, compute_distance, exact_wasserstein, make_angle_set
from topodist.errors import InvalidArgumentError
from topodist.harness import (
    BENCH_COLUMNS,
    KnnConfig,
    SyntheticClassSpec,
    bench_metrics,
    distance_matrix,
    generate_synthetic_dataset,
    knn_classify,
    randomized_search,
    topological_curves,
)
from topodist.harness.bench import random_diagram, time_interleaved
from topodist.harness.curves import log_ratio

E = ExtendedDiagram.from_mapping
ETD4 = DistanceConfig(p=2, angles=make_angle_set(4))


def _random_symmetric(rng, n):
    pts = rng.normal(size=(n, 3))
    return np.linalg.norm(pts[:, None] - pts[None], axis=-1)


# distance matrices


def test_matrix_single():
    m = distance_matrix([E({0: [(0, 1)]})], ETD4)
    assert m.values.shape == (1, 1) and m.values[0, 0] == 0


def test_matrix_identical_pair_is_zero():
    d = E({0: [(0, 1), (1, 4)]})
    assert not distance_matrix([d, d], ETD4).values.any()


@pytest.mark.parametrize("variant", ["etd", "basic_etd", "swd", "exact_wd", "ps", "cosine_etd"])
def test_matrix_matches_pairwise_calls(rng, variant):
    cfg = DistanceConfig(p=2, angles=make_angle_set(3), variant=variant, n_slices=8)
    ds = [random_extended(rng, max_points=5) for _ in range(6)]
    m = distance_matrix(ds, cfg)
    for i in range(6):
        for j in range(6):
            if i != j:
                assert m.values[i, j] == compute_distance(ds[i], ds[j], cfg).value
    assert np.array_equal(m.values, m.values.T)


def test_ps_matrix_with_weights(rng):
    cfg = DistanceConfig(p=1.5, variant="ps", weights=(1.0, 0.5, 2.0))
    ds = [random_extended(rng).padded(2) for _ in range(5)]
    m = distance_matrix(ds, cfg)
    assert m.values[1, 3] == compute_distance(ds[1], ds[3], cfg).value


def test_matrix_jobs_identical(rng):
    ds = [random_extended(rng) for _ in range(8)]
    assert np.array_equal(distance_matrix(ds, ETD4).values, distance_matrix(ds, ETD4, n_jobs=4).values)


def test_matrix_permutation(rng):
    ds = [random_extended(rng) for _ in range(6)]
    perm = rng.permutation(6)
    a = distance_matrix(ds, ETD4).values
    b = distance_matrix([ds[i] for i in perm], ETD4).values
    assert np.array_equal(a[np.ix_(perm, perm)], b)


def test_matrix_error_names_pair():
    cfg = DistanceConfig(variant="exact_wd", max_points=3)
    ds = [E({0: [(0, 1)]}), E({0: [(0, 1), (0, 2)]}), E({0: [(0, 1), (0, 2), (1, 3)]})]
    with pytest.raises(Exception, match=r"pair \(0, 2\)"):
        distance_matrix(ds, cfg)


# kNN


def test_knn_one_neighbour():
    m = np.array([[0, 1, 5], [1, 0, 4], [5, 4, 0]], dtype=float)
    assert knn_classify(m, {1: "x", 2: "y"}, [0], k=1) == ["x"]


def test_knn_inverse_distance_example():
    # query row 0; neighbours a, a, b at distances 2, 2, 1
    m = np.zeros((4, 4))
    m[0, 1:] = m[1:, 0] = [2, 2, 1]
    train = {1: "a", 2: "a", 3: "b"}
    assert knn_classify(m, train, [0], k=3, weighting="inverse_distance") == ["a"]
    assert knn_classify(m, train, [0], k=1, weighting="uniform") == ["b"]


def test_knn_zero_distance_dominates():
    m = np.zeros((4, 4))
    m[0, 1:] = m[1:, 0] = [0, 0.01, 0.01]
    train = {1: "b", 2: "a", 3: "a"}
    assert knn_classify(m, train, [0], k=3, weighting="inverse_distance") == ["b"]


def test_knn_k_too_large():
    with pytest.raises(InvalidArgumentError):
        knn_classify(np.zeros((3, 3)), {1: 0, 2: 1}, [0], k=3)


@pytest.mark.parametrize("weighting, sk", [("uniform", "uniform"), ("inverse_distance", "distance")])
@pytest.mark.parametrize("k", [1, 2, 3, 5, 8])
def test_knn_matches_sklearn(rng, weighting, sk, k):
    n = 40
    m = _random_symmetric(rng, n)
    labels = rng.integers(0, 3, n)
    train = np.arange(0, 30)
    query = np.arange(30, n)
    ref = KNeighborsClassifier(n_neighbors=k, weights=sk, metric="precomputed")
    ref.fit(m[np.ix_(train, train)], labels[train])
    expected = ref.predict(m[np.ix_(query, train)]).tolist()
    got = knn_classify(m, {int(i): int(labels[i]) for i in train}, query, k, weighting)
    assert got == expected


def test_search_separable():
    rng = np.random.default_rng(0)
    pts = np.concatenate([rng.normal(0, 0.1, (20, 2)), rng.normal(10, 0.1, (20, 2))])
    m = np.linalg.norm(pts[:, None] - pts[None], axis=-1)
    res = randomized_search(m, [0] * 20 + [1] * 20, KnnConfig(n_search_trials=5))
    assert res.accuracy == 1.0 and res.k == 1 and res.weighting == "uniform"


def test_search_deterministic(rng):
    m = _random_symmetric(rng, 30)
    labels = list(rng.integers(0, 2, 30))
    cfg = KnnConfig(seed=7)
    assert randomized_search(m, labels, cfg) == randomized_search(m, labels, cfg)


def test_search_random_labels_near_chance():
    rng = np.random.default_rng(3)
    m = _random_symmetric(rng, 100)
    labels = [0] * 50 + [1] * 50
    rng.shuffle(labels)
    res = randomized_search(m, labels, KnnConfig(k_candidates=(1, 3, 5), n_search_trials=50))
    assert 0.3 <= res.accuracy <= 0.7


def test_search_result_in_candidates(rng):
    m = _random_symmetric(rng, 20)
    cfg = KnnConfig(k_candidates=(2, 4), weightings=("inverse_distance",), n_search_trials=3)
    res = randomized_search(m, [0, 1] * 10, cfg)
    assert res.k in (2, 4) and res.weighting == "inverse_distance"
    assert set(res.scores) == {(2, "inverse_distance"), (4, "inverse_distance")}


@pytest.mark.parametrize("labels", [[0] * 10, [0] * 9 + [1]])
def test_search_degenerate_labels(labels):
    with pytest.raises(InvalidArgumentError):
        randomized_search(np.zeros((10, 10)), labels)


# curves


def _sequence(rng, n=5):
    return [ExtendedDiagram.from_arrays([random_points(rng, int(rng.integers(0, 5))) for _ in range(2)]) for _ in range(n)]


def test_curve_of_wd_is_zero(rng):
    seq = _sequence(rng)
    curves = topological_curves(seq, {"wd": DistanceConfig(p=2, variant="exact_wd")})
    for series in curves["wd"].values:
        for v in series:
            assert v == 0.0 or abs(v) < 1e-12


def test_curve_of_scaled_wd(rng):
    seq = _sequence(rng)
    curves = topological_curves(seq, {"2wd": lambda a, b: 2 * exact_wasserstein(a, b, 2)})
    for j, series in enumerate(curves["2wd"].values):
        assert series[0] == 0.0
        for i, v in enumerate(series[1:], start=1):
            if exact_wasserstein(seq[i][j], seq[0][j], 2) > 0:
                assert v == pytest.approx(math.log(2), abs=1e-12)


def test_curve_needs_two_layers():
    with pytest.raises(InvalidArgumentError):
        topological_curves([E({0: []})], {"wd": DistanceConfig(variant="exact_wd")})


def test_log_ratio_sentinels():
    assert log_ratio(0, 0) == 0.0
    assert log_ratio(1, 0) == math.inf
    assert log_ratio(0, 1) == -math.inf
    assert log_ratio(math.e, 1) == pytest.approx(1.0)


# synthetic data and bench


def test_synthetic_noise_free_is_template():
    spec = SyntheticClassSpec("a", 3, (4, 2), (1.0, 0.5), seed=5)
    ds, labels = generate_synthetic_dataset([spec])
    assert labels == ["a"] * 3
    tmpl = ExtendedDiagram.from_arrays(spec.template())
    assert all(d == tmpl for d in ds)


def test_synthetic_deterministic_and_valid():
    specs = [SyntheticClassSpec(c, 5, (6,), (1.0 + c,), noise=0.2, seed=c) for c in range(2)]
    a, la = generate_synthetic_dataset(specs)
    b, lb = generate_synthetic_dataset(specs)
    assert a == b and la == lb == [0] * 5 + [1] * 5
    for d in a:
        assert (d[0].deaths >= d[0].births).all() and (d[0].births >= 0).all()


def test_synthetic_rejects_bad_spec():
    with pytest.raises(InvalidArgumentError):
        SyntheticClassSpec("a", 1, (1, 2), (1.0,))


def test_bench_row():
    rows = bench_metrics([20], {"etd": ETD4}, repetitions=2)
    assert len(rows) == 1
    row = rows[0].as_dict()
    assert tuple(row) == BENCH_COLUMNS
    assert row["M"] == 20 and row["angles"] == "4" and row["trials"] == 2 and row["median_ms"] > 0


def test_time_interleaved_keys():
    rng = np.random.default_rng(0)
    pairs = {m: (random_diagram(m, 0, rng), random_diagram(m, 0, rng)) for m in (5, 50)}
    out = time_interleaved(pairs, ETD4, rounds=3, batch=2)
    assert set(out) == {5, 50} and all(v > 0 for v in out.values())
