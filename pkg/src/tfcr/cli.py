"""Command line interface: ``tfcr <command> [options]``.

Commands: ingest, recommend, evaluate, sweep-alpha, kappa, stats, generate.
Data goes to stdout, diagnostics to stderr; the exit status is non-zero
whenever a command fails.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from pathlib import Path

from . import __version__
from .bm25 import Bm25Params, build_index
from .corpus import RANKING_TF, CorpusError, TermFunction, dump_corpus, load_corpus, parse_ranking_tf
from .evaluation import (
    DEFAULT_KS,
    GeneratorConfig,
    align_annotations,
    alpha_grid,
    cohen_kappa,
    confusion_matrix,
    cross_validate,
    format_distribution,
    gen_synthetic,
    read_annotations,
    sweep_alpha,
    tf_distribution,
)
from .textpipe import Analyzer, StopwordChecksumError, load_stopwords
from .tfrank import DEFAULT_TOP_N, Query, Variant, build_profiles, load_profiles, recommend

log = logging.getLogger("tfcr")


def _ks(value: str) -> list[int]:
    try:
        ks = sorted({int(v) for v in value.split(",") if v.strip()})
    except ValueError:
        raise argparse.ArgumentTypeError(f"invalid k list {value!r}") from None
    if not ks or ks[0] < 1:
        raise argparse.ArgumentTypeError("k values must be positive integers")
    return ks


def _floats(value: str) -> list[float]:
    try:
        return [float(v) for v in value.split(",") if v.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"invalid number list {value!r}") from None


def _corpus_args(p: argparse.ArgumentParser) -> None:
    p.add_argument("--originals", type=Path, required=True, help="citing documents, JSON lines")
    p.add_argument("--candidates", type=Path, required=True, help="candidate documents, JSON lines")
    p.add_argument("--lenient", action="store_true", help="drop dangling references instead of failing")
    p.add_argument("--no-checksum", action="store_true", help="skip the stopword list checksum check")


def _ranking_args(p: argparse.ArgumentParser) -> None:
    p.add_argument("--k1", type=float, default=1.2, help="BM25 term-frequency saturation")
    p.add_argument("--b", type=float, default=0.75, help="BM25 length normalisation")
    p.add_argument("--clamp-idf", action="store_true", help="clamp negative idf to zero")
    p.add_argument("--alpha", type=float, default=1.0, help="term-function weight scale, in (0, 1]")
    p.add_argument("--top-n", type=int, default=DEFAULT_TOP_N, help="length of the recommendation list")
    p.add_argument("--lenient-year", action="store_true", help="keep candidates whose year is unknown")


def _eval_args(p: argparse.ArgumentParser) -> None:
    p.add_argument("--seed", type=int, default=0, help="fold partition seed")
    p.add_argument("--n-folds", type=int, default=5, help="number of cross-validation folds")
    p.add_argument("--ground-truth", choices=("paragraph", "article"), default="paragraph",
                   help="relevant set: the paragraph's citations or the whole article's")
    p.add_argument("--micro", action="store_true", help="pool hits over queries instead of averaging")
    p.add_argument("--out", type=Path, default=None, help="directory for report files")


def build_parser() -> argparse.ArgumentParser:
    fmt = argparse.ArgumentDefaultsHelpFormatter
    parser = argparse.ArgumentParser(prog="tfcr", description=__doc__.splitlines()[0], formatter_class=fmt)
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("ingest", help="load and validate a corpus", formatter_class=fmt)
    _corpus_args(p)
    p.set_defaults(func=cmd_ingest)

    p = sub.add_parser("recommend", help="rank candidates for a query", formatter_class=fmt)
    _corpus_args(p)
    _ranking_args(p)
    p.add_argument("--query", required=True, help="topic phrase or paragraph text")
    p.add_argument("--tf", required=True, help="term function: " + ", ".join(t.value for t in RANKING_TF))
    p.add_argument("--year", type=int, default=None, help="only recommend papers published before this year")
    p.add_argument("--variant", choices=[v.value for v in Variant], default=Variant.TFW.value)
    p.add_argument("--profiles", type=Path, default=None, help="profile file (default: built from all originals)")
    p.set_defaults(func=cmd_recommend)

    p = sub.add_parser("evaluate", help="cross-validate plain and weighted BM25", formatter_class=fmt)
    _corpus_args(p)
    _ranking_args(p)
    _eval_args(p)
    p.add_argument("--ks", type=_ks, default=list(DEFAULT_KS), help="comma-separated cutoffs")
    p.add_argument("--variant", choices=[v.value for v in Variant], default=None,
                   help="evaluate a single variant (default: both)")
    p.set_defaults(func=cmd_evaluate)

    p = sub.add_parser("sweep-alpha", help="weighted-BM25 F1@k over a grid of alpha", formatter_class=fmt)
    _corpus_args(p)
    _ranking_args(p)
    _eval_args(p)
    p.add_argument("--grid", type=_floats, default=None, help="comma-separated alphas (default 0.1..1.0)")
    p.add_argument("--step", type=float, default=0.1, help="grid step when --grid is not given")
    p.add_argument("--k", type=int, default=20, help="cutoff for F1")
    p.set_defaults(func=cmd_sweep_alpha)

    p = sub.add_parser("kappa", help="Cohen's kappa between two annotation files", formatter_class=fmt)
    p.add_argument("file_a", type=Path)
    p.add_argument("file_b", type=Path)
    p.set_defaults(func=cmd_kappa)

    p = sub.add_parser("stats", help="term-function distribution", formatter_class=fmt)
    _corpus_args(p)
    p.add_argument("--pooled", action="store_true", help="one table over all fields")
    p.set_defaults(func=cmd_stats)

    p = sub.add_parser("generate", help="write a seeded synthetic corpus", formatter_class=fmt)
    p.add_argument("--out", type=Path, required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--noise", type=float, default=GeneratorConfig.noise)
    p.add_argument("--n-originals", type=int, default=GeneratorConfig.n_originals)
    p.add_argument("--n-candidates", type=int, default=GeneratorConfig.n_candidates)
    p.set_defaults(func=cmd_generate)
    return parser


def _tokenizer(args):
    return Analyzer(load_stopwords(verify=not args.no_checksum)).tokenize


def _load(args):
    corpus, report = load_corpus(args.originals, args.candidates, lenient=args.lenient)
    if report.n_dropped:
        print(f"dropped {report.n_dropped} dangling reference(s)", file=sys.stderr)
    return corpus, report


def _params(args) -> Bm25Params:
    return Bm25Params(args.k1, args.b, args.clamp_idf)


def _check_alpha(alpha: float) -> None:
    if not 0 < alpha <= 1:
        raise ValueError(f"alpha must lie in (0, 1], got {alpha}")


def cmd_ingest(args) -> int:
    _tokenizer(args)
    corpus, report = _load(args)
    print(f"originals: {report.n_originals}")
    print(f"paragraphs: {report.n_paragraphs}")
    print(f"candidates: {report.n_candidates}")
    print(f"dropped references: {report.n_dropped}")
    for w in report.warnings:
        print(f"warning: {w}", file=sys.stderr)
    return 0


def cmd_recommend(args) -> int:
    tf = parse_ranking_tf(args.tf)
    tokenizer = _tokenizer(args)
    corpus, _ = _load(args)
    index = build_index(corpus.candidates.values(), tokenizer)
    profiles = load_profiles(args.profiles) if args.profiles else build_profiles(corpus)
    query = Query(args.query, tf, year_cutoff=args.year, alpha=args.alpha)
    ranked = recommend(query, index, profiles, _params(args), args.variant, args.top_n, args.lenient_year, tokenizer)
    out = [
        {
            "rank": i,
            "cand_id": e.cand_id,
            "title": corpus.candidates[e.cand_id].title,
            "score": e.score,
            "tf_weight": e.tf_weight,
        }
        for i, e in enumerate(ranked, start=1)
    ]
    json.dump(out, sys.stdout, indent=2, ensure_ascii=False)
    sys.stdout.write("\n")
    return 0


def _cv_kwargs(args, tokenizer) -> dict:
    return dict(
        params=_params(args),
        seed=args.seed,
        n_folds=args.n_folds,
        top_n=args.top_n,
        ground_truth=args.ground_truth,
        lenient_year=args.lenient_year,
        micro=args.micro,
        tokenizer=tokenizer,
    )


def cmd_evaluate(args) -> int:
    _check_alpha(args.alpha)
    tokenizer = _tokenizer(args)
    corpus, _ = _load(args)
    variants = [args.variant] if args.variant else list(Variant)
    top_n = max(args.top_n, max(args.ks))
    if top_n != args.top_n:
        log.info("raising top-n to %d to cover the largest k", top_n)
    args.top_n = top_n
    report = cross_validate(corpus, alpha=args.alpha, variants=variants, ks=args.ks, **_cv_kwargs(args, tokenizer))
    if args.out is not None:
        for path in report.write(args.out):
            print(f"wrote {path}", file=sys.stderr)
    print(report.format_table())
    print(f"queries: {report.n_queries}  skipped (no ground truth): {report.n_skipped}", file=sys.stderr)
    return 0


def cmd_sweep_alpha(args) -> int:
    grid = args.grid if args.grid is not None else alpha_grid(args.step)
    for a in grid:
        _check_alpha(a)
    tokenizer = _tokenizer(args)
    corpus, _ = _load(args)
    args.top_n = max(args.top_n, args.k)
    rows = sweep_alpha(corpus, grid, k=args.k, ks=(args.k,), **_cv_kwargs(args, tokenizer))
    lines = [f"alpha,f1@{args.k}"] + [f"{a!r},{f1!r}" for a, f1 in rows]
    text = "\n".join(lines) + "\n"
    sys.stdout.write(text)
    if args.out is not None:
        args.out.mkdir(parents=True, exist_ok=True)
        (args.out / "alpha_sweep.csv").write_text(text, encoding="utf-8", newline="\n")
    return 0


def cmd_kappa(args) -> int:
    a, b = read_annotations(args.file_a), read_annotations(args.file_b)
    la, lb, unmatched = align_annotations(a, b)
    if not la:
        raise ValueError("the two annotation files share no paragraph ids")
    if unmatched:
        print(f"skipped {len(unmatched)} unmatched paragraph id(s): {', '.join(unmatched)}", file=sys.stderr)
    print(f"kappa={cohen_kappa(la, lb):.3f}  (n={len(la)})")
    mat = confusion_matrix(la, lb)
    names = [tf.value for tf in TermFunction]
    w = max(len(n) for n in names)
    print(" " * w + "".join(f" {n[:8]:>8}" for n in names))
    for name, row in zip(names, mat):
        print(f"{name:<{w}}" + "".join(f" {v:>8d}" for v in row))
    return 0


def cmd_stats(args) -> int:
    _tokenizer(args)
    corpus, _ = _load(args)
    print(format_distribution(tf_distribution(corpus, group_by_field=not args.pooled)))
    return 0


def cmd_generate(args) -> int:
    config = GeneratorConfig(noise=args.noise, n_originals=args.n_originals, n_candidates=args.n_candidates)
    corpus = gen_synthetic(config, seed=args.seed)
    args.out.mkdir(parents=True, exist_ok=True)
    orig, cand = args.out / "originals.jsonl", args.out / "candidates.jsonl"
    dump_corpus(corpus, orig, cand)
    print(f"wrote {orig} and {cand}", file=sys.stderr)
    return 0


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(levelname)s: %(message)s")
    try:
        return args.func(args)
    except (CorpusError, StopwordChecksumError, ValueError, KeyError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
