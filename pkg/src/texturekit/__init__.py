"""Texture feature extraction and minimum-distance classification.

The toolkit turns grayscale tiles into fixed-length feature vectors via
six pipelines built from three ingredients (local binary patterns,
texture-unit spectra, Legendre moments) and evaluates them with a seeded
train/test split and a nearest-prototype rule. See the README for the
CLI, file formats, and reproducibility guarantees.
"""

from .classifier import (ClassPrototype, EvaluationReport, LabeledSample, SplitSpec,
                         build_prototypes, classify, euclidean, evaluate,
                         run_experiment, split_samples)
from .featurefile import read_features, write_features
from .imageio import PgmError, TileSet, load_pgm, save_pgm, scan_dataset, tile
from .moments import MomentSet, legendre_poly, moment_indices, moments
from .operators import (LBP_ALPHABET, NEIGHBOR_OFFSETS, TEXTURE_UNIT_ALPHABET,
                        CodeImage, Histogram, code_histogram, lbp_code,
                        lbp_transform, normalize, texture_unit_code,
                        texture_unit_transform)
from .pipelines import (ALL_PIPELINES, CONVENTION, MIN_TILE_SIZE, MOMENT_ORDER,
                        PIPELINE_DIMS, FeatureVector, PipelineKind, extract)

__version__ = "0.1.0"

__all__ = [
    "ALL_PIPELINES",
    "CONVENTION",
    "ClassPrototype",
    "CodeImage",
    "EvaluationReport",
    "FeatureVector",
    "Histogram",
    "LBP_ALPHABET",
    "LabeledSample",
    "MIN_TILE_SIZE",
    "MOMENT_ORDER",
    "MomentSet",
    "NEIGHBOR_OFFSETS",
    "PgmError",
    "PIPELINE_DIMS",
    "PipelineKind",
    "SplitSpec",
    "TEXTURE_UNIT_ALPHABET",
    "TileSet",
    "build_prototypes",
    "classify",
    "code_histogram",
    "euclidean",
    "evaluate",
    "extract",
    "lbp_code",
    "lbp_transform",
    "legendre_poly",
    "load_pgm",
    "moment_indices",
    "moments",
    "normalize",
    "read_features",
    "run_experiment",
    "save_pgm",
    "scan_dataset",
    "split_samples",
    "texture_unit_code",
    "texture_unit_transform",
    "tile",
    "write_features",
    "__version__",
]
