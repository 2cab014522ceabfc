import json

import numpy as np
import pytest

import ssdbcodi


def blobs(seed=0):
    rng = np.random.default_rng(seed)
    a = rng.normal([0.0, 0.0], 0.2, size=(30, 2))
    b = rng.normal([5.0, 0.0], 0.2, size=(30, 2))
    far = np.array([[2.5, 6.0], [-4.0, -4.0], [9.0, 5.0]])
    points = np.vstack([a, b, far])
    truth = [0] * 30 + [1] * 30 + [ssdbcodi.OUTLIER] * 3
    return ssdbcodi.Dataset(points, truth, "blobs")


def test_dataset_roundtrip():
    ds = blobs()
    assert ds.n == 63 and ds.d == 2
    assert ds.num_clusters == 2 and ds.num_outliers == 3
    assert ds.points.shape == (63, 2)


def test_load_csv(tmp_path):
    path = tmp_path / "tiny.csv"
    path.write_text("x,label\n1,a\n2,o\n3,a\n4,b\n")
    ds = ssdbcodi.load_csv(str(path))
    assert ds.truth == [0, ssdbcodi.OUTLIER, 0, 1]
    path.write_text("x,label\n1,a\nabc,b\n")
    with pytest.raises(ValueError):
        ssdbcodi.load_csv(str(path))


def test_index_and_expansion():
    ds = ssdbcodi.Dataset(np.array([[0.0], [1.0], [3.0], [7.0]]), [0, 0, 0, 0])
    idx = ssdbcodi.build_index(ds, 2)
    assert idx.core == [3.0, 2.0, 3.0, 6.0]
    assert idx.reach_distance(1, 2) == 3.0
    labels = ssdbcodi.LabelSet(normal={0: 0})
    rec = ssdbcodi.prim_expand(ssdbcodi.build_index(ds, 1), 0, labels)
    assert [p for p, _ in rec.order] == [0, 1, 2, 3]
    assert rec.prefix_max[0] == 0.0


def test_pipeline_and_metrics():
    ds = blobs()
    labels = ssdbcodi.LabelSet(normal={0: 0, 1: 0, 30: 1, 31: 1}, outliers={60})
    res = ssdbcodi.run(ds, labels, k_reliable=2, knn_k=1)
    assert len(res.clusters) == ds.n
    assert all(c in (0, 1, ssdbcodi.OUTLIER) for c in res.clusters)
    assert ssdbcodi.rand_index(res.clusters, ds.truth) > 0.9
    positive = [t == ssdbcodi.OUTLIER for t in ds.truth]
    assert 0.0 <= ssdbcodi.auc(res.outlier_score, positive) <= 1.0
    again = ssdbcodi.run(ds, labels, k_reliable=2, knn_k=1)
    assert again.outlier_score == res.outlier_score


def test_tune_and_lattice():
    assert len(ssdbcodi.weight_lattice(0.5)) == 6
    ds = blobs()
    labels = ssdbcodi.sample_labels(ds, 0.3, 1)
    report = ssdbcodi.tune(ds, labels, grid_step=0.5, folds=2, seed=1)
    assert len(report.grid) == 6
    assert report.best_alpha + report.best_beta <= 1.0


def test_baselines_and_trial_json():
    ds = blobs()
    idx = ssdbcodi.build_index(ds, 1)
    assert len(ssdbcodi.lof(idx, 5)) == ds.n
    assert len(ssdbcodi.dbscan(idx, 0.5, 3)) == ds.n
    assign, centroids = ssdbcodi.kmeans(ds, 2, seed=3)
    assert centroids.shape == (2, 2)
    report = json.loads(ssdbcodi.run_trial_json(ds, 0.2, 5))
    assert report["schema_version"] == 1
    assert "wall_time_ms" not in report
