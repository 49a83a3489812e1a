"""Adaptive symbolization of time-series datasets (ASTRIDE / FASTRIDE) with
SAX, 1d-SAX and SFA baselines, D-GED, reconstruction and benchmarks."""

from .distances import (
    CostModel,
    build_lookup_table,
    d_ged,
    dtw,
    euclidean,
    general_edit_distance,
    mindist,
    replicate,
)
from .evaluation import (
    BenchmarkConfig,
    BenchmarkReport,
    accuracy,
    knn_classify,
    memory_bits,
    reconstruction_error,
    run_benchmark,
    word_length_for_ratio,
)
from .exceptions import (
    AstrideError,
    EmptyInputError,
    FormatError,
    InvalidParameterError,
    ParseError,
    ShapeError,
)
from .ingest import Dataset, DatasetSplit, load_split, load_ucr, write_ucr, znormalize
from .quantization import (
    QuantizationModel,
    fit_1dsax_slope_bins,
    fit_mcb,
    fit_quantile_bins,
    gaussian_bins,
    segment_means,
)
from .reconstruct import reconstruct_piecewise, reconstruct_sax1d, reconstruct_sfa, truncate_pair
from .segmentation import SegmentationModel, fit_adaptive, fit_uniform, segment_cost
from .symbolizers import (
    FittedSymbolizer,
    SymbolizerSpec,
    distance_matrix,
    fit,
    format_word,
    inverse_transform,
    transform,
)

__version__ = "0.1.0"
