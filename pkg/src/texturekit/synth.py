"""Deterministic synthetic texture classes for self-contained experiments.

Real benchmark photographs cannot be redistributed with this package, so
the harness ships five generated stand-ins with strongly distinct local
structure:

* vstripes: vertical stripes, period 8 (200 / 50)
* hstripes: the same stripes rotated 90 degrees
* checker: checkerboard with 4x4 cells (210 / 40)
* saltpepper: seeded binary noise (0 / 255)
* diagonal: diagonal stripes, period 8, modulated by a horizontal ramp

Every class except saltpepper is a closed-form function of the pixel
coordinates; saltpepper draws one bit per pixel from a splitmix64 stream
keyed by the dataset seed. Regenerating with the same seed reproduces
every file byte for byte on any platform.
"""

from pathlib import Path

import numpy as np

from .imageio import save_pgm
from .rng import GOLDEN_GAMMA, MASK64, stream_seed

CLASS_NAMES = ("checker", "diagonal", "hstripes", "saltpepper", "vstripes")

# stream index for the noise class, far outside the class-index streams
# the classifier uses for splits, so the two can never collide
_NOISE_STREAM = 0x7E585541


def _noise_words(seed, count):
    """First `count` outputs of SplitMix64(seed), vectorized.

    The generator's k-th output is mix64(seed + (k+1)*gamma) mod 2^64, so
    the whole sequence falls out of one vectorized finalizer pass. Kept in
    lockstep with rng.SplitMix64 (a test compares the two).
    """
    base = np.uint64(seed & MASK64)
    steps = (np.arange(1, count + 1, dtype=np.uint64)) * np.uint64(GOLDEN_GAMMA)
    z = base + steps  # uint64 arithmetic wraps mod 2^64
    z = (z ^ (z >> np.uint64(30))) * np.uint64(0xBF58476D1CE4E5B9)
    z = (z ^ (z >> np.uint64(27))) * np.uint64(0x94D049BB133111EB)
    return z ^ (z >> np.uint64(31))


def render_class(name, size=512, seed=0):
    """One synthetic texture image as a (size, size) uint8 array."""
    if size < 8:
        raise ValueError("size must be at least one stripe period (8)")
    r = np.arange(size).reshape(-1, 1)
    c = np.arange(size).reshape(1, -1)
    if name == "vstripes":
        img = np.where((c % 8) < 4, 200, 50) + np.zeros_like(r)
    elif name == "hstripes":
        img = np.where((r % 8) < 4, 200, 50) + np.zeros_like(c)
    elif name == "checker":
        img = np.where((r // 4 + c // 4) % 2 == 0, 210, 40)
    elif name == "saltpepper":
        words = _noise_words(stream_seed(seed, _NOISE_STREAM), size * size)
        bits = (words & np.uint64(1)).astype(np.uint8)
        img = bits.reshape(size, size) * np.uint8(255)
    elif name == "diagonal":
        stripes = np.where(((r + c) % 8) < 4, 160, 60)
        ramp = (c * 40) // size - 20
        img = stripes + ramp
    else:
        raise ValueError(f"unknown class {name!r} (choose from {', '.join(CLASS_NAMES)})")
    return img.astype(np.uint8)


def write_dataset(root, size=512, seed=0):
    """Write one image per class under root/<class>/<class>.pgm.

    Returns the written paths in class order. Existing files are
    overwritten so a dataset can be regenerated in place.
    """
    rootp = Path(root)
    paths = []
    for name in CLASS_NAMES:
        directory = rootp / name
        directory.mkdir(parents=True, exist_ok=True)
        path = directory / f"{name}.pgm"
        save_pgm(path, render_class(name, size=size, seed=seed))
        paths.append(path)
    return paths
