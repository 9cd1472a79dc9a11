"""Command-line pipeline: paths, convert, link, vectorize, compare, cluster,
predict, simulate.

Exit codes: 0 success, 1 input/format errors, 2 usage errors. Diagnostics go
to stderr; data goes to stdout or the file/directory given via ``--out``.
"""

from __future__ import annotations

import argparse
import dataclasses
import sys
from pathlib import Path

from . import analysis, gaze, linker, simulator
from .compressor import compress, read_eye_vector
from .embeddings import DEFAULT_DIM, DEFAULT_SEED, EmbeddingTable, load_table
from .errors import Eye2vecError, FormatError
from .minilang import parse
from .pathctx import DEFAULT_MAX_LENGTH, DEFAULT_MAX_WIDTH, all_path_contexts


def _int_at_least(minimum: int):
    def convert(text: str) -> int:
        try:
            value = int(text)
        except ValueError:
            raise argparse.ArgumentTypeError(f"expected an integer, got {text!r}") from None
        if value < minimum:
            raise argparse.ArgumentTypeError(f"expected an integer >= {minimum}, got {value}")
        return value

    return convert


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="eye2vec", description="Eye-movement vectors over source code"
    )
    sub = parser.add_subparsers(dest="subcommand", required=True)

    p = sub.add_parser("paths", help="emit path contexts of a source file, one per line")
    p.add_argument("src")
    p.add_argument("--max-length", type=_int_at_least(0), default=DEFAULT_MAX_LENGTH,
                   help="max nodes on a path, 0 = unlimited")
    p.add_argument("--max-width", type=_int_at_least(0), default=DEFAULT_MAX_WIDTH,
                   help="max leaf-index distance, 0 = unlimited")
    p.add_argument("--out", help="output file (default stdout)")

    p = sub.add_parser("convert", help="convert pixel fixations to line/column")
    p.add_argument("fixations")
    p.add_argument("--origin-x", type=float, required=True)
    p.add_argument("--origin-y", type=float, required=True)
    p.add_argument("--char-width", type=float, required=True)
    p.add_argument("--line-height", type=float, required=True)
    p.add_argument("--out", help="output file (default stdout)")

    p = sub.add_parser("link", help="build a transition profile from grid fixations")
    _add_link_flags(p)
    p.add_argument("--out", help="output file (default stdout)")

    p = sub.add_parser("vectorize", help="build an eye vector from grid fixations")
    _add_link_flags(p)
    p.add_argument("--emb", help="embedding TSV; absent keys use the seeded fallback")
    p.add_argument("--dim", type=_int_at_least(1), default=None,
                   help=f"embedding dimension when no table is given (default {DEFAULT_DIM})")
    p.add_argument("--seed", type=int, default=DEFAULT_SEED, help="fallback embedding seed")
    p.add_argument("--no-normalize", action="store_true")
    p.add_argument("--out", help="output file (default stdout)")

    p = sub.add_parser("compare", help="cosine similarity of two eye vectors")
    p.add_argument("a")
    p.add_argument("b")

    p = sub.add_parser("cluster", help="k-means over eye vectors")
    p.add_argument("vectors", nargs="+")
    p.add_argument("--k", type=_int_at_least(1), required=True)
    p.add_argument("--seed", type=int, default=0)

    p = sub.add_parser("predict", help="nearest-centroid label prediction")
    p.add_argument("--train", required=True,
                   help="directory with eye-vector JSON files and a labels.tsv")
    p.add_argument("--test", nargs="*", default=[])
    p.add_argument("--loo", action="store_true",
                   help="also print leave-one-out accuracy over the training set")

    p = sub.add_parser("simulate", help="generate synthetic fixation CSVs")
    p.add_argument("src")
    p.add_argument("--strategy", choices=simulator.STRATEGY_NAMES, required=True)
    p.add_argument("--n", type=_int_at_least(2), required=True, help="fixations per recording")
    p.add_argument("--count", type=_int_at_least(1), required=True, help="number of recordings")
    p.add_argument("--seed", type=int, required=True,
                   help="seed of the first recording; recording i uses seed+i")
    p.add_argument("--jitter", type=_int_at_least(0), default=0, help="column jitter radius")
    p.add_argument("--out", required=True, help="output directory")
    return parser


def _add_link_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("src")
    p.add_argument("fixations")
    p.add_argument("--snap-tol", type=_int_at_least(0), default=linker.DEFAULT_SNAP_TOL_COLS)
    p.add_argument("--keep-self", action="store_true",
                   help="keep same-leaf transitions instead of dropping them")
    p.add_argument("--strict-chain", action="store_true",
                   help="dropped fixations break the transition chain")


def _emit(text: str, out: str | None) -> None:
    if out:
        Path(out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def _link_options(args: argparse.Namespace) -> linker.LinkOptions:
    return linker.LinkOptions(
        snap_tol_cols=args.snap_tol,
        self_transitions="keep" if args.keep_self else "drop",
        chain="strict" if args.strict_chain else "skip",
    )


def _build_profile(args: argparse.Namespace) -> linker.TransitionProfile:
    root = parse(Path(args.src).read_text(encoding="utf-8"))
    recording = gaze.read_fixations(args.fixations, mode="grid")
    return linker.build_profile(recording, root, _link_options(args))


def _embedding_table(args: argparse.Namespace, parser: argparse.ArgumentParser) -> EmbeddingTable:
    if args.emb:
        table = load_table(args.emb)
        if args.dim is not None and args.dim != table.dim:
            parser.error(f"--dim {args.dim} conflicts with table dimension {table.dim}")
        return dataclasses.replace(table, fallback_seed=args.seed)
    return EmbeddingTable(dim=args.dim if args.dim is not None else DEFAULT_DIM,
                          fallback_seed=args.seed)


def _cmd_paths(args: argparse.Namespace) -> int:
    root = parse(Path(args.src).read_text(encoding="utf-8"))
    contexts = all_path_contexts(root, max_length=args.max_length, max_width=args.max_width)
    _emit("".join(c.context_string + "\n" for c in contexts), args.out)
    return 0


def _cmd_convert(args: argparse.Namespace) -> int:
    grid = gaze.FontGrid(args.origin_x, args.origin_y, args.char_width, args.line_height)
    recording = gaze.read_fixations(args.fixations, mode="pixel")
    converted = gaze.convert_recording(recording, grid)
    lines = [",".join(gaze.GRID_HEADER)]
    for f in converted.fixations:
        lines.append(f"{f.timestamp_ms},{f.position.line},{f.position.col},{f.duration_ms}")
    _emit("\n".join(lines) + "\n", args.out)
    return 0


def _cmd_link(args: argparse.Namespace) -> int:
    profile = _build_profile(args)
    if profile.is_empty:
        sys.stderr.write("EmptyProfile: no transitions could be formed from the fixations\n")
        return 1
    _emit(profile.to_json() + "\n", args.out)
    return 0


def _cmd_vectorize(args: argparse.Namespace, parser: argparse.ArgumentParser) -> int:
    profile = _build_profile(args)
    if profile.is_empty:
        sys.stderr.write("EmptyProfile: no transitions could be formed from the fixations\n")
        return 1
    table = _embedding_table(args, parser)
    vector = compress(profile, table, normalize=not args.no_normalize)
    _emit(vector.to_json() + "\n", args.out)
    return 0


def _cmd_compare(args: argparse.Namespace) -> int:
    a = read_eye_vector(args.a)
    b = read_eye_vector(args.b)
    print(analysis.cosine_similarity(a, b))
    return 0


def _cmd_cluster(args: argparse.Namespace) -> int:
    vectors = [read_eye_vector(p) for p in args.vectors]
    assignments = analysis.kmeans(vectors, k=args.k, seed=args.seed)
    for vector, cluster_index in zip(vectors, assignments):
        print(f"{vector.recording_id}\t{cluster_index}")
    return 0


def _load_train_dir(train_dir: str) -> analysis.LabeledSet:
    directory = Path(train_dir)
    labels_path = directory / "labels.tsv"
    if not labels_path.exists():
        raise FormatError(1, f"no labels.tsv in {train_dir!r}")
    labels = gaze.read_labels(labels_path)
    by_id = {}
    for path in sorted(directory.glob("*.json")):
        vector = read_eye_vector(path)
        by_id[vector.recording_id] = vector
    items = []
    for recording_id, label in labels.items():
        if recording_id not in by_id:
            raise FormatError(1, f"labels.tsv names {recording_id!r} but no vector JSON has it")
        items.append((by_id[recording_id], label))
    return analysis.LabeledSet(items)


def _cmd_predict(args: argparse.Namespace, parser: argparse.ArgumentParser) -> int:
    if not args.test and not args.loo:
        parser.error("predict needs --test files and/or --loo")
    train = _load_train_dir(args.train)
    if args.test:
        test_vectors = [read_eye_vector(p) for p in args.test]
        for vector, label in zip(test_vectors, analysis.nearest_centroid_predict(train, test_vectors)):
            print(f"{vector.recording_id}\t{label}")
    if args.loo:
        print(f"accuracy={analysis.leave_one_out(train)}")
    return 0


def _cmd_simulate(args: argparse.Namespace) -> int:
    source_path = Path(args.src)
    root = parse(source_path.read_text(encoding="utf-8"))
    out_dir = Path(args.out)
    out_dir.mkdir(parents=True, exist_ok=True)
    for i in range(args.count):
        strategy = simulator.Strategy(args.strategy, jitter_cols=args.jitter, seed=args.seed + i)
        stem = f"{source_path.stem}_{args.strategy}_{i}"
        recording = simulator.simulate(root, strategy, args.n, recording_id=stem)
        gaze.write_fixations(recording, out_dir / f"{stem}.csv")
    return 0


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        if args.subcommand == "paths":
            return _cmd_paths(args)
        if args.subcommand == "convert":
            return _cmd_convert(args)
        if args.subcommand == "link":
            return _cmd_link(args)
        if args.subcommand == "vectorize":
            return _cmd_vectorize(args, parser)
        if args.subcommand == "compare":
            return _cmd_compare(args)
        if args.subcommand == "cluster":
            return _cmd_cluster(args)
        if args.subcommand == "predict":
            return _cmd_predict(args, parser)
        if args.subcommand == "simulate":
            return _cmd_simulate(args)
        parser.error(f"unknown subcommand {args.subcommand!r}")
    except SystemExit as exc:  # parser.error() inside a handler
        return int(exc.code or 0)
    except (Eye2vecError, ValueError) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 1
    except OSError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 1
    return 0


def entrypoint() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entrypoint()
