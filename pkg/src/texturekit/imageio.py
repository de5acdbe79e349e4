"""Grayscale PGM input/output, tiling, and dataset directory scanning.

A gray image is a plain 2-D numpy array, shape (height, width), dtype
uint8, row-major. Only 8-bit input is accepted (the 3x3 operators assume
intensities 0-255); code images with larger alphabets are written as
two-byte-per-sample P5 for inspection but are not read back.

Dataset layout on disk is ``<root>/<class_name>/<image>.pgm``. The class
label is the directory name, and class indices are the lexicographic
ranks of the labels.
"""

from dataclasses import dataclass
from pathlib import Path

import numpy as np

_WHITESPACE = b" \t\n\r\x0b\x0c"


class PgmError(ValueError):
    """Raised for malformed or unsupported PGM/PNM content."""


def _next_token(buf, pos):
    """Next header token, skipping whitespace and '#' comment lines."""
    n = len(buf)
    while pos < n:
        c = buf[pos:pos + 1]
        if c in _WHITESPACE:
            pos += 1
        elif c == b"#":
            while pos < n and buf[pos:pos + 1] != b"\n":
                pos += 1
        else:
            break
    if pos >= n:
        raise PgmError("truncated header")
    start = pos
    while pos < n and buf[pos:pos + 1] not in _WHITESPACE:
        pos += 1
    return buf[start:pos], pos


def _header_int(buf, pos, what):
    token, pos = _next_token(buf, pos)
    try:
        value = int(token)
    except ValueError:
        raise PgmError(f"malformed header: bad {what} {token!r}") from None
    return value, pos


def load_pgm(path):
    """Load a PGM file (P2 ASCII or P5 binary, maxval <= 255).

    Returns a (height, width) uint8 array with the exact stored values.
    Color PNM (P3/P6) is rejected; convert to grayscale beforehand.
    """
    buf = Path(path).read_bytes()
    magic, pos = _next_token(buf, 0)
    if magic in (b"P3", b"P6"):
        raise PgmError("color PNM input is not supported; convert to grayscale PGM first")
    if magic not in (b"P2", b"P5"):
        raise PgmError(f"not a PGM file (magic {magic!r}, expected P2 or P5)")
    width, pos = _header_int(buf, pos, "width")
    height, pos = _header_int(buf, pos, "height")
    maxval, pos = _header_int(buf, pos, "maxval")
    if width <= 0 or height <= 0:
        raise PgmError(f"invalid dimensions {width}x{height}")
    if maxval <= 0:
        raise PgmError(f"invalid maxval {maxval}")
    if maxval > 255:
        raise PgmError(f"maxval {maxval} exceeds 255; only 8-bit images are supported")

    count = width * height
    if magic == b"P5":
        # exactly one whitespace byte separates the header from the raster
        if pos >= len(buf) or buf[pos:pos + 1] not in _WHITESPACE:
            raise PgmError("malformed header: missing raster separator")
        data = buf[pos + 1:pos + 1 + count]
        if len(data) < count:
            raise PgmError("unexpected end of pixel data")
        pixels = np.frombuffer(data, dtype=np.uint8).reshape(height, width)
    else:
        values = np.empty(count, dtype=np.int64)
        for i in range(count):
            try:
                token, pos = _next_token(buf, pos)
            except PgmError:
                raise PgmError("unexpected end of pixel data") from None
            try:
                values[i] = int(token)
            except ValueError:
                raise PgmError(f"malformed pixel value {token!r}") from None
        if values.min() < 0 or values.max() > maxval:
            raise PgmError("pixel value outside [0, maxval]")
        pixels = values.astype(np.uint8).reshape(height, width)

    if magic == b"P5" and pixels.max() > maxval:
        raise PgmError("pixel value outside [0, maxval]")
    return pixels.copy()


def save_pgm(path, pixels, maxval=255):
    """Write a 2-D integer array as binary P5.

    maxval <= 255 stores one byte per sample; 256..65535 stores two bytes
    big-endian (used to export code images whose alphabet exceeds 256).
    """
    a = np.asarray(pixels)
    if a.ndim != 2:
        raise ValueError("expected a 2-D array")
    if not (0 < maxval <= 65535):
        raise ValueError(f"maxval {maxval} out of range 1..65535")
    if a.min() < 0 or a.max() > maxval:
        raise ValueError("pixel values outside [0, maxval]")
    height, width = a.shape
    header = f"P5\n{width} {height}\n{maxval}\n".encode("ascii")
    if maxval <= 255:
        raster = a.astype(np.uint8).tobytes()
    else:
        raster = a.astype(">u2").tobytes()
    Path(path).write_bytes(header + raster)


@dataclass
class TileSet:
    """Non-overlapping square tiles cut from one source image.

    Tiles are ordered row-major over the tile grid, so concatenating them
    reconstructs the cropped source exactly.
    """

    source_id: str
    tile_size: int
    tiles: list


def tile(image, tile_size=64, source_id=""):
    """Cut an image into tile_size x tile_size tiles (row-major order).

    Edge remainders that do not fill a whole tile are discarded. The tile
    size must be at least 3 (the 3x3 operators need an interior) and no
    larger than either image dimension.
    """
    a = np.asarray(image)
    if a.ndim != 2:
        raise ValueError("expected a 2-D image")
    height, width = a.shape
    if tile_size < 3:
        raise ValueError(f"tile_size {tile_size} is below the 3x3 operator minimum")
    if tile_size > width or tile_size > height:
        raise ValueError(f"tile_size {tile_size} exceeds image dimensions {width}x{height}")
    rows = height // tile_size
    cols = width // tile_size
    tiles = [
        a[r * tile_size:(r + 1) * tile_size, c * tile_size:(c + 1) * tile_size].copy()
        for r in range(rows)
        for c in range(cols)
    ]
    return TileSet(source_id=source_id, tile_size=tile_size, tiles=tiles)


def scan_dataset(root):
    """List (class_label, image_paths) pairs under a dataset root.

    Classes are the subdirectories that contain at least one ``*.pgm``
    file, sorted lexicographically; image paths are sorted within each
    class. Raises ValueError when no classes are found.
    """
    rootp = Path(root)
    if not rootp.is_dir():
        raise ValueError(f"no classes found: {root} is not a directory")
    classes = []
    for d in sorted(p for p in rootp.iterdir() if p.is_dir()):
        paths = sorted(d.glob("*.pgm"))
        if paths:
            classes.append((d.name, paths))
    if not classes:
        raise ValueError(f"no classes found under {root}")
    return classes
