import numpy as np
import pytest
from sklearn.base import clone

from curveclust.clustering import sca
from curveclust.curves import Curve
from curveclust.datagen import WarpSpec, gen_sine_clusters
from curveclust.estimators import (
    CurveKMeans,
    CurveLowRankClustering,
    DTWSpectralClustering,
    EuclideanLRRClustering,
    as_curves,
)

ALL_ESTIMATORS = [CurveLowRankClustering, EuclideanLRRClustering,
                  DTWSpectralClustering, CurveKMeans]


@pytest.fixture(scope="module")
def small_sine():
    spec = WarpSpec(shift_range=(-0.15, 0.15), stretch_range=(0.8, 1.25),
                    local_warp_amplitude=0.4, seed=21)
    ds = gen_sine_clusters(2, 5, 60, spec)
    X = np.stack([c.samples for c in ds.curves])  # (N, T, 1)
    return X, ds.truth


class TestAsCurves:
    def test_2d_array(self):
        X = np.random.default_rng(0).normal(size=(4, 30))
        curves = as_curves(X)
        assert len(curves) == 4
        assert curves[0].samples.shape == (30, 1)

    def test_3d_array(self):
        X = np.random.default_rng(0).normal(size=(4, 30, 2))
        curves = as_curves(X)
        assert curves[0].samples.shape == (30, 2)

    def test_curve_list_passthrough(self):
        rng = np.random.default_rng(0)
        cs = [Curve(rng.normal(size=(25, 2))) for _ in range(3)]
        out = as_curves(cs)
        assert out[0] is cs[0]

    def test_resamples_ragged_lists(self):
        rng = np.random.default_rng(0)
        cs = [Curve(rng.normal(size=(T, 1))) for T in (20, 30, 40)]
        out = as_curves(cs, resample_to=25)
        assert all(c.T == 25 for c in out)

    def test_rejects_ragged_without_resample(self):
        rng = np.random.default_rng(0)
        cs = [Curve(rng.normal(size=(20, 1))), Curve(rng.normal(size=(30, 1)))]
        with pytest.raises(ValueError):
            as_curves(cs)

    def test_rejects_bad_ndim(self):
        with pytest.raises(ValueError):
            as_curves(np.zeros((2, 3, 4, 5)))


class TestSklearnProtocol:
    @pytest.mark.parametrize("cls", ALL_ESTIMATORS)
    def test_get_set_params_clone(self, cls):
        est = cls(n_clusters=4)
        params = est.get_params()
        assert params["n_clusters"] == 4
        est.set_params(n_clusters=2)
        assert est.get_params()["n_clusters"] == 2
        dup = clone(est)
        assert dup.get_params() == est.get_params()

    @pytest.mark.parametrize("cls", ALL_ESTIMATORS)
    def test_fit_predict_matches_labels(self, cls, small_sine):
        X, truth = small_sine
        est = cls(n_clusters=2, random_state=0)
        labels = est.fit_predict(X)
        np.testing.assert_array_equal(labels, est.labels_)
        assert labels.shape == (X.shape[0],)

    @pytest.mark.parametrize("cls", ALL_ESTIMATORS)
    def test_accepts_curve_list(self, cls, small_sine):
        X, _ = small_sine
        curves = [Curve(X[i]) for i in range(X.shape[0])]
        labels = cls(n_clusters=2, random_state=0).fit_predict(curves)
        assert labels.shape == (len(curves),)


class TestCurveLowRank:
    def test_recovers_clusters_and_exposes_report(self, small_sine):
        X, truth = small_sine
        est = CurveLowRankClustering(n_clusters=2, random_state=0).fit(X)
        assert sca(est.labels_, truth) == 1.0
        assert est.coefficients_.shape == (10, 10)
        assert est.affinity_.shape == (10, 10)
        assert est.report_.converged
        assert est.n_iter_ == est.report_.iters

    def test_2d_input(self, small_sine):
        X, truth = small_sine
        est = CurveLowRankClustering(n_clusters=2, random_state=0)
        labels = est.fit_predict(X[:, :, 0])
        assert sca(labels, truth) == 1.0

    def test_zero_diagonal_option(self, small_sine):
        X, _ = small_sine
        est = CurveLowRankClustering(n_clusters=2, zero_diagonal=True).fit(X)
        np.testing.assert_allclose(np.diag(est.affinity_), 0.0, atol=1e-15)


class TestBaselineEstimators:
    def test_lrr_exposes_residual(self, small_sine):
        X, _ = small_sine
        est = EuclideanLRRClustering(n_clusters=2).fit(X)
        assert est.fit_residual_ >= 0
        assert est.coefficients_.shape == (10, 10)

    def test_kmeans_separated_data(self):
        rng = np.random.default_rng(1)
        X = np.concatenate([rng.normal(size=(5, 20, 1)),
                            rng.normal(size=(5, 20, 1)) + 30.0])
        truth = np.repeat([0, 1], 5)
        labels = CurveKMeans(n_clusters=2, random_state=0).fit_predict(X)
        assert sca(labels, truth) == 1.0

    def test_dtw_affinity_attribute(self, small_sine):
        X, _ = small_sine
        est = DTWSpectralClustering(n_clusters=2).fit(X)
        assert est.affinity_.shape == (10, 10)
        np.testing.assert_allclose(est.affinity_, est.affinity_.T, atol=1e-12)
