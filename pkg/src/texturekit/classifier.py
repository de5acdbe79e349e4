"""Minimum-distance classification over per-tile feature vectors.

The experiment protocol: tiles of each class are split into a training
and a test set by a seeded draw, each class is summarized by the mean of
its training vectors, and a test vector is assigned to the class whose
prototype is nearest in Euclidean distance. Distance ties resolve to the
lowest class index, so results never depend on list or iteration order.

Splits are reproducible across platforms: each class draws from its own
splitmix64 stream keyed by (seed, class_index), and candidates are
ordered by (source_image, tile_index) before the draw, so neither
directory scan order nor thread scheduling can change a split.
"""

from dataclasses import dataclass, field

import numpy as np

from .rng import SplitMix64, stream_seed


@dataclass
class LabeledSample:
    """One tile's feature vector with its provenance."""

    class_index: int
    class_label: str
    source_image: str
    tile_index: int
    features: np.ndarray


@dataclass
class SplitSpec:
    """Parameters of a train/test split."""

    seed: int
    train_per_class: int = 10


@dataclass
class ClassPrototype:
    """A class summary vector used as a classification target."""

    class_index: int
    class_label: str
    vector: np.ndarray


@dataclass
class EvaluationReport:
    """Confusion counts and derived accuracies for one evaluation run.

    confusion[i, j] counts test samples of true class i predicted as
    class j, rows and columns both in class_labels order. Accuracies are
    fractions in [0, 1]; average_accuracy is their unweighted mean, so
    every class counts equally regardless of test-set size.
    """

    class_labels: list
    confusion: np.ndarray
    per_class_accuracy: np.ndarray
    average_accuracy: float
    pipeline: str = field(default="")


def euclidean(u, v):
    """Euclidean distance between two equal-length vectors."""
    a = np.asarray(u, dtype=np.float64)
    b = np.asarray(v, dtype=np.float64)
    if a.shape != b.shape:
        raise ValueError(f"length mismatch: {a.shape} vs {b.shape}")
    return float(np.linalg.norm(a - b))


def split_samples(samples, spec):
    """Split samples into (train, test) lists, per class, reproducibly.

    Every class present must have more than spec.train_per_class samples
    so both sides of the split are non-empty.
    """
    if spec.train_per_class < 1:
        raise ValueError("train_per_class must be >= 1")
    by_class = {}
    for s in samples:
        by_class.setdefault(s.class_index, []).append(s)
    if not by_class:
        raise ValueError("no samples to split")
    train, test = [], []
    for class_index in sorted(by_class):
        group = sorted(by_class[class_index],
                       key=lambda s: (s.source_image, s.tile_index))
        if len(group) <= spec.train_per_class:
            raise ValueError(
                f"class {group[0].class_label!r} has {len(group)} samples; "
                f"need more than train_per_class={spec.train_per_class}")
        rng = SplitMix64(stream_seed(spec.seed, class_index))
        chosen = set(rng.sample(len(group), spec.train_per_class))
        for i, s in enumerate(group):
            (train if i in chosen else test).append(s)
    return train, test


def _class_table(samples):
    """Sorted (class_index, class_label) pairs present in samples."""
    seen = {}
    for s in samples:
        label = seen.setdefault(s.class_index, s.class_label)
        if label != s.class_label:
            raise ValueError(f"class index {s.class_index} maps to both "
                             f"{label!r} and {s.class_label!r}")
    return sorted(seen.items())


def build_prototypes(train, rule="mean"):
    """Class prototypes from training samples.

    rule "mean" yields one prototype per class (the entrywise mean of its
    training vectors); rule "1nn" keeps every training vector as its own
    prototype, turning classification into nearest neighbor.
    """
    if not train:
        raise ValueError("no training samples")
    dims = {len(s.features) for s in train}
    if len(dims) != 1:
        raise ValueError(f"mixed feature lengths {sorted(dims)}; "
                         "samples must come from one pipeline")
    if rule == "mean":
        protos = []
        for class_index, class_label in _class_table(train):
            vecs = np.stack([np.asarray(s.features, dtype=np.float64)
                             for s in train if s.class_index == class_index])
            protos.append(ClassPrototype(class_index=class_index,
                                         class_label=class_label,
                                         vector=vecs.mean(axis=0)))
        return protos
    if rule == "1nn":
        ordered = sorted(train, key=lambda s: (s.class_index, s.source_image, s.tile_index))
        return [ClassPrototype(class_index=s.class_index,
                               class_label=s.class_label,
                               vector=np.asarray(s.features, dtype=np.float64))
                for s in ordered]
    raise ValueError(f"unknown rule {rule!r} (choose mean or 1nn)")


def classify(vector, prototypes):
    """Class index of the nearest prototype; ties pick the lowest index.

    The prototype list may arrive in any order: candidates are ranked by
    class index internally, so permuting the list never changes the
    answer.
    """
    if not prototypes:
        raise ValueError("no prototypes")
    v = np.asarray(vector, dtype=np.float64)
    ordered = sorted(prototypes, key=lambda p: p.class_index)
    mat = np.stack([p.vector for p in ordered])
    if mat.shape[1] != v.shape[0]:
        raise ValueError(f"length mismatch: vector {v.shape[0]}, prototypes {mat.shape[1]}")
    dists = np.linalg.norm(mat - v, axis=1)
    return ordered[int(np.argmin(dists))].class_index


def evaluate(test, prototypes):
    """Classify every test sample and tabulate a confusion report.

    Rows and columns cover the prototype classes in class_index order;
    every test sample's class must be among them, and every class must
    receive at least one test sample so per-class rates are defined.
    """
    if not test:
        raise ValueError("no test samples")
    if not prototypes:
        raise ValueError("no prototypes")
    classes = sorted({(p.class_index, p.class_label) for p in prototypes})
    index_of = {class_index: row for row, (class_index, _) in enumerate(classes)}
    for s in test:
        if s.class_index not in index_of:
            raise ValueError(f"test class {s.class_label!r} has no prototype")
    k = len(classes)
    confusion = np.zeros((k, k), dtype=np.int64)
    for s in test:
        predicted = classify(s.features, prototypes)
        confusion[index_of[s.class_index], index_of[predicted]] += 1
    row_totals = confusion.sum(axis=1)
    if (row_totals == 0).any():
        raise ValueError("a prototype class has no test samples")
    per_class = confusion.diagonal() / row_totals
    return EvaluationReport(class_labels=[label for _, label in classes],
                            confusion=confusion,
                            per_class_accuracy=per_class,
                            average_accuracy=float(per_class.mean()))


def run_experiment(samples, spec, rule="mean"):
    """Split, build prototypes, and evaluate in one call."""
    train, test = split_samples(samples, spec)
    return evaluate(test, build_prototypes(train, rule=rule))
