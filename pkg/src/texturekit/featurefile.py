"""Delimited on-disk format for per-tile feature vectors.

A feature file is UTF-8 text: one metadata line, one CSV header, then one
CSV row per tile. The metadata line pins everything needed to interpret
the numbers:

    #texturekit-features v=1 pipeline=LBP dim=256 convention=lbp3x3-rowmajor-v1
    class_label,source_image,tile_index,pipeline,v0,v1,...
    grass,grass.pgm,0,LBP,0.0,0.00026...

Floats are written with repr(), the shortest decimal form that parses
back to the identical double, so a read/write round trip is lossless and
repeated runs produce byte-identical files. Files whose convention tag
does not match this build are rejected on load rather than silently
reinterpreted with a different neighbor order.
"""

import csv
from pathlib import Path

import numpy as np

from .classifier import LabeledSample
from .pipelines import CONVENTION, PIPELINE_DIMS, PipelineKind

_MAGIC = "#texturekit-features"
_VERSION = "1"


def write_features(path, kind, samples):
    """Write samples (LabeledSample list, one pipeline) to a feature file."""
    dim = PIPELINE_DIMS[kind]
    for s in samples:
        if len(s.features) != dim:
            raise ValueError(f"sample {s.source_image}:{s.tile_index} has "
                             f"{len(s.features)} values, expected {dim}")
    meta = f"{_MAGIC} v={_VERSION} pipeline={kind.name} dim={dim} convention={CONVENTION}\n"
    header = ["class_label", "source_image", "tile_index", "pipeline"]
    header += [f"v{i}" for i in range(dim)]
    with open(path, "w", encoding="utf-8", newline="") as fh:
        fh.write(meta)
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(header)
        for s in samples:
            row = [s.class_label, s.source_image, str(s.tile_index), kind.name]
            row += [repr(float(x)) for x in s.features]
            writer.writerow(row)


def _parse_meta(line, path):
    fields = line.strip().split(" ")
    if not fields or fields[0] != _MAGIC:
        raise ValueError(f"{path}: not a feature file (missing {_MAGIC} line)")
    meta = {}
    for token in fields[1:]:
        key, sep, value = token.partition("=")
        if not sep:
            raise ValueError(f"{path}: malformed metadata token {token!r}")
        meta[key] = value
    for key in ("v", "pipeline", "dim", "convention"):
        if key not in meta:
            raise ValueError(f"{path}: metadata missing {key!r}")
    if meta["v"] != _VERSION:
        raise ValueError(f"{path}: unsupported format version {meta['v']!r}")
    if meta["convention"] != CONVENTION:
        raise ValueError(f"{path}: neighbor convention {meta['convention']!r} "
                         f"does not match this build ({CONVENTION}); re-extract features")
    kind = PipelineKind.parse(meta["pipeline"])
    dim = int(meta["dim"])
    if dim != PIPELINE_DIMS[kind]:
        raise ValueError(f"{path}: dim {dim} does not match pipeline "
                         f"{kind.name} ({PIPELINE_DIMS[kind]})")
    return kind, dim


def read_features(path):
    """Read a feature file; returns (PipelineKind, list of LabeledSample).

    Class indices are assigned by sorted class label, the same convention
    used when scanning a dataset directory.
    """
    with open(path, "r", encoding="utf-8", newline="") as fh:
        meta_line = fh.readline()
        kind, dim = _parse_meta(meta_line, path)
        reader = csv.reader(fh)
        try:
            header = next(reader)
        except StopIteration:
            raise ValueError(f"{path}: missing column header") from None
        expected = ["class_label", "source_image", "tile_index", "pipeline"]
        expected += [f"v{i}" for i in range(dim)]
        if header != expected:
            raise ValueError(f"{path}: unexpected column header")
        rows = []
        for lineno, row in enumerate(reader, start=3):
            if len(row) != 4 + dim:
                raise ValueError(f"{path}:{lineno}: expected {4 + dim} fields, got {len(row)}")
            if row[3] != kind.name:
                raise ValueError(f"{path}:{lineno}: row pipeline {row[3]!r} "
                                 f"does not match file pipeline {kind.name}")
            rows.append((row[0], row[1], int(row[2]),
                         np.array([float(x) for x in row[4:]], dtype=np.float64)))
    labels = sorted({r[0] for r in rows})
    index_of = {label: i for i, label in enumerate(labels)}
    samples = [LabeledSample(class_index=index_of[label], class_label=label,
                             source_image=source, tile_index=tile_index,
                             features=features)
               for label, source, tile_index, features in rows]
    return kind, samples
