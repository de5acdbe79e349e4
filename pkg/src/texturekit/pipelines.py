"""Feature pipelines: every supported route from a gray tile to a vector.

Six pipelines are built from three ingredients (local binary patterns,
texture units, Legendre moments):

=======  ====================================================  ====
name     definition                                            dim
=======  ====================================================  ====
LM       Legendre moments of the gray tile                       66
LBP      normalized histogram of the LBP code image             256
TS       normalized histogram of the texture unit code image   6561
TSLM     Legendre moments of the texture unit code image         66
LBPLM    Legendre moments of the LBP code image                  66
LBPTS    texture unit histogram of the LBP code image          6561
=======  ====================================================  ====

Moments use total order 10 (66 values). Inputs to the moment stage are
rescaled to [0, 1] by the alphabet maximum: gray and LBP images by 255,
texture unit images by 6560. Histograms are normalized to relative
frequencies and are dense over the operator alphabet, so every vector of
a given pipeline has the same fixed length.

The 3x3 neighbor indexing order that the codes depend on is pinned by
CONVENTION, which feature files embed so that archived vectors are never
compared across incompatible conventions.
"""

from dataclasses import dataclass
from enum import Enum

import numpy as np

from .moments import moments
from .operators import code_histogram, lbp_transform, normalize, texture_unit_transform

# bump only if the neighbor indexing convention ever changes
CONVENTION = "lbp3x3-rowmajor-v1"

MOMENT_ORDER = 10
MIN_TILE_SIZE = 5  # LBPTS strips two borders: 3x3 twice needs at least 5x5


class PipelineKind(Enum):
    """The six feature pipelines, in canonical reporting order."""

    LM = "LM"
    LBP = "LBP"
    TS = "TS"
    TSLM = "TSLM"
    LBPLM = "LBPLM"
    LBPTS = "LBPTS"

    @classmethod
    def parse(cls, name):
        try:
            return cls[str(name).strip().upper()]
        except KeyError:
            options = ", ".join(k.name for k in cls)
            raise ValueError(f"unknown pipeline {name!r} (choose from {options})") from None


ALL_PIPELINES = tuple(PipelineKind)

PIPELINE_DIMS = {
    PipelineKind.LM: 66,
    PipelineKind.LBP: 256,
    PipelineKind.TS: 6561,
    PipelineKind.TSLM: 66,
    PipelineKind.LBPLM: 66,
    PipelineKind.LBPTS: 6561,
}


@dataclass
class FeatureVector:
    """One tile's features under one pipeline."""

    pipeline: PipelineKind
    values: np.ndarray
    convention_version: str = CONVENTION


def extract(tile, kind):
    """Run one pipeline on one square gray tile.

    The tile must be square with side >= MIN_TILE_SIZE so that every
    pipeline is applicable to the same tiles. Returns a FeatureVector
    whose length is PIPELINE_DIMS[kind].
    """
    a = np.asarray(tile)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ValueError(f"expected a square tile, got shape {a.shape}")
    if a.shape[0] < MIN_TILE_SIZE:
        raise ValueError(f"tile side {a.shape[0]} is below the minimum {MIN_TILE_SIZE}")

    if kind is PipelineKind.LM:
        values = moments(a / 255.0, MOMENT_ORDER).vector()
    elif kind is PipelineKind.LBP:
        values = normalize(code_histogram(lbp_transform(a)))
    elif kind is PipelineKind.TS:
        values = normalize(code_histogram(texture_unit_transform(a)))
    elif kind is PipelineKind.TSLM:
        codes = texture_unit_transform(a).codes
        values = moments(codes / 6560.0, MOMENT_ORDER).vector()
    elif kind is PipelineKind.LBPLM:
        codes = lbp_transform(a).codes
        values = moments(codes / 255.0, MOMENT_ORDER).vector()
    elif kind is PipelineKind.LBPTS:
        codes = lbp_transform(a).codes
        # the intermediate stays inside the 8-bit range a gray image would
        # occupy, so the second operator needs no rescaling
        assert codes.max() <= 255
        values = normalize(code_histogram(texture_unit_transform(codes)))
    else:
        raise ValueError(f"unknown pipeline {kind!r}")

    assert len(values) == PIPELINE_DIMS[kind]
    return FeatureVector(pipeline=kind, values=values)
