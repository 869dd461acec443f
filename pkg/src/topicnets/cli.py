"""Command-line interface: ``topicnets <subcommand> ...``."""

from __future__ import annotations

import argparse
import json
import logging
import sys
from pathlib import Path

from .analysis import community_profile, fuzzy_jaccard, powerlaw_fit, rank_table
from .corpus import ReferenceStats, build_lmn, load_corpus, reference_stats
from .induction import DefinitionalSetting, InductionConfig, TopicNetwork, induce, to_undirected
from .learning import (GeneticConfig, GoldStandard, baseline_b1, baseline_b2, baseline_b3, baseline_b4,
                       classify_loo, genetic_search)
from .pipeline import PipelineError, run_pipeline
from .similarity import MEASURE_IDS, FeatureMatrix, class_mapping, get_measure, similarity_matrix
from .topics import FixedClassifier, LexiconClassifier, TopicScheme, load_lexicon, sample_lexicon, sample_scheme


def _emit(obj, out: str | None) -> None:
    text = json.dumps(obj, indent=2, sort_keys=True) + "\n"
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def _scheme(args) -> TopicScheme:
    return TopicScheme.load(args.scheme) if getattr(args, "scheme", None) else sample_scheme()


def _load_networks(directory: str) -> tuple[list[str], list[TopicNetwork]]:
    paths = sorted(Path(directory).glob("*.json"))
    if not paths:
        raise SystemExit(f"no network JSON files in {directory}")
    return [p.stem for p in paths], [TopicNetwork.from_json(p.read_text()) for p in paths]


def cmd_ingest(args) -> int:
    c, h = load_corpus(args.corpus)
    lmn = build_lmn(c, h)
    stats = ReferenceStats.load(args.reference_stats) if args.reference_stats else (
        reference_stats(c, h) if len(h) else None)
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    (out / "text_layer.json").write_text(lmn.text_layer.to_json(indent=1) + "\n")
    (out / "author_layer.json").write_text(lmn.author_layer.to_json(indent=1) + "\n")
    (out / "text_layer.dot").write_text(lmn.text_layer.to_dot("text_layer"))
    summary = {"texts": len(c), "links": lmn.text_layer.size, "dropped_links": c.dropped_links,
               "authors": lmn.author_layer.order, "coauthorship_arcs": lmn.author_layer.size,
               "reference_stats": stats.to_dict() if stats else None}
    (out / "stats.json").write_text(json.dumps(summary, indent=2, sort_keys=True) + "\n")
    _emit(summary, None)
    return 0


def cmd_induce(args) -> int:
    c, h = load_corpus(args.corpus)
    scheme = _scheme(args)
    if args.classifications:
        clf = FixedClassifier.load(args.classifications, args.level)
    else:
        lexicon = load_lexicon(args.lexicon) if args.lexicon else sample_lexicon()
        clf = LexiconClassifier(scheme, lexicon, args.level)
    ref = ReferenceStats.load(args.reference_stats) if args.reference_stats else None
    cfg = InductionConfig(m=args.m, p=args.p, reference=ref)
    s = DefinitionalSetting(scheme, clf, build_lmn(c, h), Path(args.corpus).stem)
    net = induce(s, args.mode, cfg)
    if args.undirected:
        net = to_undirected(net)
    text = json.dumps(net.to_dict(), indent=1) + "\n"
    if args.out:
        Path(args.out).write_text(text)
    else:
        sys.stdout.write(text)
    if args.dot:
        Path(args.dot).write_text(net.to_dot(f"{Path(args.corpus).stem}_{args.mode}"))
    return 0


def cmd_similarity(args) -> int:
    ids, nets = _load_networks(args.networks)
    type_of = None
    if args.measure == "tosi":
        type_of = class_mapping(_scheme(args), args.class_level, network_level=nets[0].level)
    fm = similarity_matrix(nets, args.measure, ids, type_of=type_of, cap=args.cap)
    if args.out:
        Path(args.out).write_text(fm.to_csv())
    else:
        sys.stdout.write(fm.to_csv())
    return 0


def cmd_classify(args) -> int:
    fm = FeatureMatrix.from_csv(Path(args.matrix).read_text())
    gold = GoldStandard.load(args.gold)
    if args.mode == "all":
        rep = classify_loo(fm, gold)
        history = None
    else:
        res = genetic_search(fm, gold, GeneticConfig.for_mode(args.mode, args.seed))
        rep, history = res.report, res.history
    out = {"mode": args.mode, "seed": args.seed, **rep.to_dict()}
    if history is not None:
        out["fitness_history"] = history
    _emit(out, args.out)
    return 0


def cmd_baseline(args) -> int:
    gold = GoldStandard.load(args.gold)
    kind = args.kind.lower()
    if kind == "b1":
        res = baseline_b1(gold, args.iterations, args.seed)
    elif kind == "b2":
        if not (args.networks and args.measure):
            raise SystemExit("b2 needs --networks and --measure")
        ids, nets = _load_networks(args.networks)
        type_of = class_mapping(_scheme(args), None, nets[0].level) if args.measure == "tosi" else None
        res = baseline_b2(nets, args.measure, gold, ids, args.reps, args.seed, args.mode, type_of)
    elif kind == "b3":
        m = get_measure(args.measure or "cosAV_w_phi1")
        res = baseline_b3(gold, (m.low, m.high), None, args.reps, args.seed, args.mode, m.self_value)
    else:
        if not args.matrix:
            raise SystemExit("b4 needs --matrix")
        fm = FeatureMatrix.from_csv(Path(args.matrix).read_text())
        res = baseline_b4(fm, gold, args.classes, args.reps, args.seed, args.mode)
    out = res.to_dict()
    out["scores"] = [float(x) for x in res.scores] if kind != "b1" else None
    _emit(out, args.out)
    return 0


def cmd_powerfit(args) -> int:
    if args.network:
        weights = TopicNetwork.from_json(Path(args.network).read_text()).vertex_weights().tolist()
    else:
        weights = [float(x) for x in Path(args.weights).read_text().split()]
    fit = powerlaw_fit(weights)
    if args.table:
        rows = "".join(f"{r},{w!r}\n" for r, w in rank_table(weights))
        Path(args.table).write_text("rank,weight\n" + rows)
    _emit(fit.to_dict(), args.out)
    return 0


def cmd_jaccard(args) -> int:
    keep = None
    if args.authors:
        keep = {ln.strip() for ln in Path(args.authors).read_text().splitlines() if ln.strip()}
    (c1, h1), (c2, h2) = load_corpus(args.a), load_corpus(args.b)
    value = fuzzy_jaccard(community_profile(c1, h1, keep), community_profile(c2, h2, keep))
    _emit({"a": Path(args.a).stem, "b": Path(args.b).stem, "fuzzy_jaccard": value}, args.out)
    return 0


def cmd_run(args) -> int:
    try:
        bundle = run_pipeline(args.config)
    except PipelineError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    print(f"wrote {len(bundle.files)} files to {bundle.out}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="topicnets", description="Topic network induction and comparison")
    p.add_argument("-v", "--verbose", action="store_true")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("ingest", help="build text and author layers from a corpus JSON")
    s.add_argument("--corpus", required=True)
    s.add_argument("--reference-stats")
    s.add_argument("--out", required=True, help="output directory")
    s.set_defaults(func=cmd_ingest)

    s = sub.add_parser("induce", help="induce a topic network")
    s.add_argument("--corpus", required=True)
    s.add_argument("--mode", choices=("ttn", "atn", "wtn"), default="ttn")
    s.add_argument("--level", type=int, choices=(2, 3), default=2)
    s.add_argument("--scheme")
    s.add_argument("--lexicon")
    s.add_argument("--classifications", help="JSON table text id -> {code: score}; replaces the lexicon")
    s.add_argument("--m", type=int, default=5, help="topics kept per text")
    s.add_argument("--p", type=float, default=2.0, help="activity penalty/reward factor")
    s.add_argument("--reference-stats")
    s.add_argument("--undirected", action="store_true")
    s.add_argument("--out")
    s.add_argument("--dot")
    s.set_defaults(func=cmd_induce)

    s = sub.add_parser("similarity", help="pairwise similarity matrix of a network directory")
    s.add_argument("--measure", required=True, choices=MEASURE_IDS)
    s.add_argument("--networks", required=True)
    s.add_argument("--scheme")
    s.add_argument("--class-level", type=int)
    s.add_argument("--cap", type=float, default=float("inf"))
    s.add_argument("--out")
    s.set_defaults(func=cmd_similarity)

    s = sub.add_parser("classify", help="leave-one-out classification of a matrix")
    s.add_argument("--matrix", required=True)
    s.add_argument("--gold", required=True)
    s.add_argument("--mode", choices=("all", "opt", "ext"), default="all")
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--out")
    s.set_defaults(func=cmd_classify)

    s = sub.add_parser("baseline", help="randomisation baselines B1-B4")
    s.add_argument("--kind", required=True, choices=("b1", "b2", "b3", "b4", "B1", "B2", "B3", "B4"))
    s.add_argument("--gold", required=True)
    s.add_argument("--matrix")
    s.add_argument("--networks")
    s.add_argument("--measure", choices=MEASURE_IDS)
    s.add_argument("--scheme")
    s.add_argument("--classes", type=int)
    s.add_argument("--mode", choices=("all", "opt", "ext"), default="all")
    s.add_argument("--reps", type=int, default=100)
    s.add_argument("--iterations", type=int, default=100_000)
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--out")
    s.set_defaults(func=cmd_baseline)

    s = sub.add_parser("powerfit", help="rank-weight power-law fit")
    g = s.add_mutually_exclusive_group(required=True)
    g.add_argument("--network")
    g.add_argument("--weights", help="whitespace-separated numbers")
    s.add_argument("--table", help="write the rank-weight CSV here")
    s.add_argument("--out")
    s.set_defaults(func=cmd_powerfit)

    s = sub.add_parser("jaccard", help="fuzzy Jaccard overlap of two author communities")
    s.add_argument("a")
    s.add_argument("b")
    s.add_argument("--authors", help="file with one author id per line to restrict to")
    s.add_argument("--out")
    s.set_defaults(func=cmd_jaccard)

    s = sub.add_parser("run", help="full pipeline from an INI config")
    s.add_argument("--config", required=True)
    s.set_defaults(func=cmd_run)
    return p


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    return args.func(args)


if __name__ == "__main__":
    raise SystemExit(main())
