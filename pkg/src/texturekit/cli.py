"""Batch command line for the texture toolkit.

Subcommands:

* ``transform``: apply one 3x3 operator to a PGM, write the code image
* ``extract``: compute per-tile features for a dataset, one file per pipeline
* ``evaluate``: run the split/train/classify experiment, write reports
* ``synth``: generate the built-in synthetic texture dataset

Conventions: data goes to files (plus a short stdout line where a command
defines one); progress goes to stderr and is silenced by --quiet;
warnings and errors always go to stderr. Exit status is 0 on success,
nonzero otherwise. All file outputs are written in deterministic logical
order, so repeated runs with the same flags are byte-identical no matter
how many worker threads are used.
"""

import argparse
import csv
import json
import os
import sys
from concurrent.futures import ThreadPoolExecutor
from pathlib import Path

import numpy as np

from . import imageio, synth
from .classifier import LabeledSample, SplitSpec, run_experiment
from .featurefile import read_features, write_features
from .imageio import PgmError
from .operators import lbp_transform, texture_unit_transform
from .pipelines import ALL_PIPELINES, CONVENTION, MIN_TILE_SIZE, PipelineKind, extract


def _progress(quiet, msg):
    if not quiet:
        print(msg, file=sys.stderr)


def _select_pipelines(values):
    """Resolve repeated --pipeline flags to kinds in canonical order."""
    if not values:
        return ALL_PIPELINES
    chosen = {PipelineKind.parse(v) for v in values}
    return tuple(k for k in ALL_PIPELINES if k in chosen)


def _feature_path(outdir, kind):
    return Path(outdir) / f"features_{kind.name}.csv"


def _extract_samples(dataset, kinds, tile_size, threads, quiet):
    """Compute features for every tile of every readable dataset image.

    Returns ({kind: [LabeledSample]}, skipped_count, image_count). Images
    that cannot be read or tiled are skipped with a warning rather than
    aborting the batch. Work fans out across a thread pool, but samples
    are assembled in (class, image, tile) order regardless of scheduling.
    """
    if tile_size < MIN_TILE_SIZE:
        raise ValueError(f"tile size {tile_size} is below the minimum {MIN_TILE_SIZE}")
    classes = imageio.scan_dataset(dataset)
    jobs = [(label, path)
            for label, paths in classes
            for path in paths]

    def work(job):
        label, path = job
        try:
            img = imageio.load_pgm(path)
            tiles = imageio.tile(img, tile_size, source_id=path.name).tiles
        except (PgmError, OSError, ValueError) as exc:
            return job, None, str(exc)
        return job, {kind: [extract(t, kind).values for t in tiles] for kind in kinds}, None

    rows = {kind: [] for kind in kinds}  # (label, image name, tile index, vector)
    skipped = 0
    with ThreadPoolExecutor(max_workers=max(1, threads)) as pool:
        for (label, path), vectors, err in pool.map(work, jobs):
            if err is not None:
                skipped += 1
                print(f"warning: skipping {path}: {err}", file=sys.stderr)
                continue
            count = 0
            for kind in kinds:
                for tile_index, vec in enumerate(vectors[kind]):
                    rows[kind].append((label, path.name, tile_index, vec))
                count = len(vectors[kind])
            _progress(quiet, f"{label}/{path.name}: {count} tiles")
    if all(not r for r in rows.values()):
        raise ValueError(f"no images could be read under {dataset}")

    # class indices come from the sorted labels of what actually loaded,
    # matching how a feature file is interpreted when read back
    labels = sorted({label for r in rows.values() for (label, _, _, _) in r})
    index_of = {label: i for i, label in enumerate(labels)}
    samples = {kind: [LabeledSample(class_index=index_of[label], class_label=label,
                                    source_image=source, tile_index=tile_index,
                                    features=vec)
                      for label, source, tile_index, vec in rows[kind]]
               for kind in kinds}
    return samples, skipped, len(jobs)


def cmd_transform(args):
    img = imageio.load_pgm(args.image)
    code = lbp_transform(img) if args.op == "lbp" else texture_unit_transform(img)
    imageio.save_pgm(args.out, code.codes, maxval=code.alphabet - 1)
    height, width = img.shape
    oh, ow = code.codes.shape
    print(f"{args.op}: {width}x{height} -> {ow}x{oh}, alphabet {code.alphabet}, wrote {args.out}")
    return 0


def cmd_synth(args):
    paths = synth.write_dataset(args.out, size=args.size, seed=args.seed)
    for path in paths:
        _progress(args.quiet, f"wrote {path}")
    return 0


def cmd_extract(args):
    kinds = _select_pipelines(args.pipeline)
    samples, skipped, total = _extract_samples(
        args.dataset, kinds, args.tile_size, args.threads, args.quiet)
    outdir = Path(args.out)
    outdir.mkdir(parents=True, exist_ok=True)
    records = 0
    for kind in kinds:
        path = _feature_path(outdir, kind)
        write_features(path, kind, samples[kind])
        records += len(samples[kind])
        _progress(args.quiet, f"wrote {path} ({len(samples[kind])} records)")
    summary = (f"extracted {records} records from {total - skipped} of {total} images "
               f"({skipped} skipped)")
    if skipped:
        print(summary, file=sys.stderr)
    else:
        _progress(args.quiet, summary)
    return 0


def _evaluate_one(kind, samples, args):
    """Run all trials of one pipeline; returns its aggregate stats."""
    labels = sorted({s.class_label for s in samples})
    if len(labels) < 2:
        raise ValueError(f"need at least 2 classes to evaluate, found {len(labels)}")
    per_trial_rows = []
    per_trial_avg = []
    confusion_sum = None
    class_labels = None
    for t in range(args.trials):
        spec = SplitSpec(seed=args.seed + t, train_per_class=args.train_per_class)
        report = run_experiment(samples, spec, rule=args.rule)
        class_labels = report.class_labels
        per_trial_rows.append(report.per_class_accuracy)
        per_trial_avg.append(report.average_accuracy)
        confusion_sum = (report.confusion.copy() if confusion_sum is None
                         else confusion_sum + report.confusion)
        _progress(args.quiet, f"{kind.name} trial {t} (seed {args.seed + t}): "
                              f"average {100.0 * report.average_accuracy:.3f}%")
    matrix = np.stack(per_trial_rows)
    class_means = matrix.mean(axis=0)
    return {
        "class_labels": class_labels,
        "per_class": class_means,
        "average": float(class_means.mean()),
        "average_std": float(np.std(np.asarray(per_trial_avg))),
        "per_trial_average": per_trial_avg,
        "confusion": confusion_sum,
    }


def cmd_evaluate(args):
    kinds = _select_pipelines(args.pipeline)
    if args.trials < 1:
        raise ValueError("trials must be >= 1")
    outdir = Path(args.out)
    outdir.mkdir(parents=True, exist_ok=True)

    # reuse feature files when present; extract anything missing in one pass
    loaded = {}
    missing = []
    for kind in kinds:
        path = _feature_path(outdir, kind)
        if path.exists():
            file_kind, samples = read_features(path)
            if file_kind is not kind:
                raise ValueError(f"{path}: contains {file_kind.name} features, "
                                 f"expected {kind.name}")
            loaded[kind] = samples
            _progress(args.quiet, f"loaded {len(samples)} records from {path}")
        else:
            missing.append(kind)
    if missing:
        if args.dataset is None:
            names = ", ".join(k.name for k in missing)
            raise ValueError(f"no feature files for {names} under {outdir} "
                             f"and no --dataset to extract from")
        extracted, _, _ = _extract_samples(
            args.dataset, tuple(missing), args.tile_size, args.threads, args.quiet)
        for kind in missing:
            path = _feature_path(outdir, kind)
            write_features(path, kind, extracted[kind])
            _progress(args.quiet, f"wrote {path} ({len(extracted[kind])} records)")
            loaded[kind] = extracted[kind]

    results = {}
    class_labels = None
    for kind in kinds:
        results[kind] = _evaluate_one(kind, loaded[kind], args)
        if class_labels is None:
            class_labels = results[kind]["class_labels"]
        elif results[kind]["class_labels"] != class_labels:
            raise ValueError("pipelines disagree on class labels; "
                             "regenerate all feature files from one dataset")

    for kind in kinds:
        r = results[kind]
        report = {
            "pipeline": kind.name,
            "convention": CONVENTION,
            "seed": args.seed,
            "trials": args.trials,
            "train_per_class": args.train_per_class,
            "rule": args.rule,
            "class_labels": r["class_labels"],
            "per_class": [float(x) for x in r["per_class"]],
            "per_trial_average": [float(x) for x in r["per_trial_average"]],
            "average": r["average"],
            "average_std": r["average_std"],
            "confusion": [[int(x) for x in row] for row in r["confusion"]],
        }
        path = outdir / f"report_{kind.name}.json"
        with open(path, "w", encoding="utf-8", newline="") as fh:
            json.dump(report, fh, indent=2, sort_keys=True)
            fh.write("\n")
        _progress(args.quiet, f"wrote {path}")

    names = [kind.name for kind in kinds]
    table_path = outdir / "accuracy_table.csv"
    with open(table_path, "w", encoding="utf-8", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(["class"] + names)
        for row, label in enumerate(class_labels):
            writer.writerow([label] + [f"{100.0 * results[k]['per_class'][row]:.3f}"
                                       for k in kinds])
        writer.writerow(["average"] + [f"{100.0 * results[k]['average']:.3f}"
                                       for k in kinds])
        if args.trials > 1:
            writer.writerow(["average_std"] + [f"{100.0 * results[k]['average_std']:.3f}"
                                               for k in kinds])
    _progress(args.quiet, f"wrote {table_path}")

    long_path = outdir / "accuracy_long.csv"
    with open(long_path, "w", encoding="utf-8", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(["pipeline", "class_label", "accuracy_percent"])
        for kind in kinds:
            for row, label in enumerate(class_labels):
                writer.writerow([kind.name, label,
                                 f"{100.0 * results[kind]['per_class'][row]:.3f}"])
    _progress(args.quiet, f"wrote {long_path}")

    if args.trials > 1:
        trials_path = outdir / "trials.csv"
        with open(trials_path, "w", encoding="utf-8", newline="") as fh:
            writer = csv.writer(fh, lineterminator="\n")
            writer.writerow(["pipeline", "trial", "seed", "average_percent"])
            for kind in kinds:
                for t, avg in enumerate(results[kind]["per_trial_average"]):
                    writer.writerow([kind.name, t, args.seed + t, f"{100.0 * avg:.3f}"])
        _progress(args.quiet, f"wrote {trials_path}")

    if args.figures:
        from . import plots  # deferred: matplotlib import is slow

        written = plots.render_report_figures(
            outdir / "figures",
            class_labels,
            {kind.name: results[kind]["per_class"] for kind in kinds},
            {kind.name: results[kind]["average"] for kind in kinds},
            ({kind.name: results[kind]["average_std"] for kind in kinds}
             if args.trials > 1 else None),
            {kind.name: results[kind]["confusion"] for kind in kinds},
        )
        for path in written:
            _progress(args.quiet, f"wrote {path}")
    return 0


def build_parser():
    parser = argparse.ArgumentParser(
        prog="texturekit",
        description="Texture feature extraction and minimum-distance classification.")
    sub = parser.add_subparsers(dest="command", required=True)
    default_threads = os.cpu_count() or 1

    p = sub.add_parser("transform", help="apply a 3x3 operator to one PGM image")
    p.add_argument("image", help="input PGM (P2 or P5, maxval <= 255)")
    p.add_argument("--op", required=True, choices=("lbp", "ts"),
                   help="which operator to apply")
    p.add_argument("--out", required=True, help="output PGM path for the code image")
    p.add_argument("--quiet", action="store_true", help="suppress progress output")
    p.set_defaults(func=cmd_transform)

    p = sub.add_parser("extract", help="extract per-tile features for a dataset")
    p.add_argument("--dataset", required=True,
                   help="dataset root laid out as <root>/<class_name>/<image>.pgm")
    p.add_argument("--pipeline", action="append", metavar="KIND",
                   help="pipeline to run (repeatable); default: all six")
    p.add_argument("--tile-size", type=int, default=64, help="square tile side (default 64)")
    p.add_argument("--threads", type=int, default=default_threads,
                   help="worker threads (default: machine parallelism)")
    p.add_argument("--out", required=True, help="output directory for feature files")
    p.add_argument("--quiet", action="store_true", help="suppress progress output")
    p.set_defaults(func=cmd_extract)

    p = sub.add_parser("evaluate", help="run the classification experiment and write reports")
    p.add_argument("--dataset", default=None,
                   help="dataset root; needed only when feature files are missing")
    p.add_argument("--pipeline", action="append", metavar="KIND",
                   help="pipeline to evaluate (repeatable); default: all six")
    p.add_argument("--tile-size", type=int, default=64, help="square tile side (default 64)")
    p.add_argument("--train-per-class", type=int, default=10,
                   help="training tiles drawn per class (default 10)")
    p.add_argument("--seed", type=int, default=0, help="base split seed (default 0)")
    p.add_argument("--trials", type=int, default=1,
                   help="number of seeds to run; trial t uses seed+t (default 1)")
    p.add_argument("--threads", type=int, default=default_threads,
                   help="worker threads (default: machine parallelism)")
    p.add_argument("--rule", choices=("mean", "1nn"), default="mean",
                   help="decision rule: nearest class mean, or nearest training sample")
    p.add_argument("--out", required=True, help="output directory for reports")
    p.add_argument("--no-figures", dest="figures", action="store_false",
                   help="skip rendering PNG figures alongside the reports")
    p.add_argument("--quiet", action="store_true", help="suppress progress output")
    p.set_defaults(func=cmd_evaluate)

    p = sub.add_parser("synth", help="write the synthetic texture dataset")
    p.add_argument("--out", required=True, help="dataset root to create")
    p.add_argument("--size", type=int, default=512, help="image side in pixels (default 512)")
    p.add_argument("--seed", type=int, default=0, help="noise seed (default 0)")
    p.add_argument("--quiet", action="store_true", help="suppress progress output")
    p.set_defaults(func=cmd_synth)
    return parser


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
