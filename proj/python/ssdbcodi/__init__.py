"""Semi-supervised density-based clustering with integrated outlier detection."""

from ._core import (
    NOISE,
    OUTLIER,
    UNCLUSTERED,
    Dataset,
    ExpansionRecord,
    LabelSet,
    NeighborhoodIndex,
    PipelineResult,
    ScoreTable,
    TuneReport,
    auc,
    back_trace,
    build_index,
    dbscan,
    emax_over_roots,
    kmeans,
    l_score,
    load_csv,
    local_density,
    lof,
    min_max_scaled,
    nmi,
    prim_expand,
    r_score,
    rand_index,
    run,
    run_trial_json,
    sample_labels,
    sim_score,
    ssdbscan,
    tune,
    weight_lattice,
)

__version__ = "0.1.0"
