"""Elastic-shape low-rank clustering of functional data."""

from .curves import Curve, Srvf, derivative, l2_inner, normalize_srvf, resample, to_srvf
from .manifold import (
    GramTensor,
    Rotation,
    TangentVector,
    Warp,
    align_reparam,
    align_rotation,
    align_to,
    build_gram_tensor,
    geodesic,
    log_quotient,
    log_sphere,
)
from .solver import SolveReport, SolverConfig, solve, svt
from .clustering import sca, spectral_cluster, symmetrize
from .baselines import DtwConfig, LrrConfig, dtw_affinity, dtw_distance, euclidean_lrr, flatten, kmeans
from .datagen import (
    Dataset,
    WarpSpec,
    gen_sine_clusters,
    gen_warped_basis_clusters,
    random_smooth_basis,
)
from .dataio import load_dataset, save_dataset
from .estimators import (
    CurveKMeans,
    CurveLowRankClustering,
    DTWSpectralClustering,
    EuclideanLRRClustering,
)

__version__ = "0.1.0"
