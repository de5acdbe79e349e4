"""3x3 neighborhood coding operators: local binary patterns and texture units.

Both operators compare the eight neighbors of a pixel against the center
and pack the comparison outcomes into a single integer code:

* local binary pattern (LBP): neighbor >= center contributes bit 2^(i-1),
  giving codes 0..255;
* texture unit: three-way comparison (below / equal / above maps to
  0 / 1 / 2) with weight 3^(i-1), giving codes 0..6560.

Neighbor index i runs 1..8 in fixed row-major order over the 3x3 window,
top-left first, center excluded. This order is a convention shared by
every stage of the toolkit; feature files record it as a version string
so that archived features are never mixed across conventions.
"""

from dataclasses import dataclass

import numpy as np

# (row, col) offsets for neighbor index i = 1..8, row-major, center skipped
NEIGHBOR_OFFSETS = (
    (-1, -1), (-1, 0), (-1, 1),
    (0, -1), (0, 1),
    (1, -1), (1, 0), (1, 1),
)

LBP_ALPHABET = 256
TEXTURE_UNIT_ALPHABET = 6561  # 3**8

_LBP_WEIGHTS = tuple(1 << i for i in range(8))
_TU_WEIGHTS = tuple(3 ** i for i in range(8))


def lbp_code(center, neighbors):
    """LBP code of one neighborhood (neighbors in NEIGHBOR_OFFSETS order).

    A neighbor ties with the center count as set: >= contributes the bit.
    """
    if len(neighbors) != 8:
        raise ValueError("expected 8 neighbors")
    code = 0
    for i, v in enumerate(neighbors):
        if v >= center:
            code += _LBP_WEIGHTS[i]
    return code


def texture_unit_code(center, neighbors):
    """Texture unit code of one neighborhood (0..6560).

    Per-neighbor digit: 0 if below the center, 1 if equal, 2 if above.
    """
    if len(neighbors) != 8:
        raise ValueError("expected 8 neighbors")
    code = 0
    for i, v in enumerate(neighbors):
        if v > center:
            code += 2 * _TU_WEIGHTS[i]
        elif v == center:
            code += _TU_WEIGHTS[i]
    return code


@dataclass
class CodeImage:
    """Operator output over the interior of an image.

    codes has shape (height-2, width-2): border pixels have no complete
    3x3 neighborhood and are dropped, not padded. alphabet is the number
    of possible code values (256 for LBP, 6561 for texture units).
    """

    codes: np.ndarray
    alphabet: int
    operator: str


def _shifted_views(a):
    """The eight neighbor planes over the interior, in convention order."""
    h, w = a.shape
    return [a[1 + dr:h - 1 + dr, 1 + dc:w - 1 + dc] for dr, dc in NEIGHBOR_OFFSETS]


def lbp_transform(image):
    """Apply the LBP operator to every interior pixel of a gray image."""
    a = np.asarray(image)
    if a.ndim != 2 or a.shape[0] < 3 or a.shape[1] < 3:
        raise ValueError("image must be 2-D and at least 3x3")
    center = a[1:-1, 1:-1]
    codes = np.zeros(center.shape, dtype=np.int32)
    for weight, plane in zip(_LBP_WEIGHTS, _shifted_views(a)):
        codes += weight * (plane >= center)
    return CodeImage(codes=codes, alphabet=LBP_ALPHABET, operator="lbp")


def texture_unit_transform(image):
    """Apply the texture unit operator to every interior pixel."""
    a = np.asarray(image)
    if a.ndim != 2 or a.shape[0] < 3 or a.shape[1] < 3:
        raise ValueError("image must be 2-D and at least 3x3")
    center = a[1:-1, 1:-1]
    codes = np.zeros(center.shape, dtype=np.int32)
    for weight, plane in zip(_TU_WEIGHTS, _shifted_views(a)):
        digit = (plane > center).astype(np.int32) + (plane >= center)
        codes += weight * digit
    return CodeImage(codes=codes, alphabet=TEXTURE_UNIT_ALPHABET, operator="texture_unit")


@dataclass
class Histogram:
    """Occurrence counts of every code value, dense over the alphabet."""

    counts: np.ndarray
    alphabet: int

    @property
    def total(self):
        return int(self.counts.sum())


def normalize(histogram):
    """Histogram counts as relative frequencies (float64, sums to 1).

    Division by the total makes vectors comparable across region sizes;
    an all-zero histogram has no frequencies and is rejected.
    """
    total = histogram.total
    if total == 0:
        raise ValueError("cannot normalize an empty histogram")
    return histogram.counts.astype(np.float64) / total


def code_histogram(code_image):
    """Dense histogram of a CodeImage over its full alphabet.

    Bins with no occurrences are present with count 0, so histograms of a
    given operator always have the same length and align bin-for-bin.
    """
    codes = code_image.codes
    counts = np.bincount(codes.reshape(-1), minlength=code_image.alphabet)
    if len(counts) > code_image.alphabet:
        raise ValueError("code value outside the declared alphabet")
    return Histogram(counts=counts.astype(np.int64), alphabet=code_image.alphabet)
