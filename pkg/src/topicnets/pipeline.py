"""End-to-end run driven by an INI configuration file.

Sections and keys (all optional unless noted)::

    [pipeline]
    name = demo
    seed = 7
    out = results              ; relative to the config file
    level = 2
    modes = ttn, atn, wtn
    measures = cosAV_w_phi1, ges
    variants = all, opt, ext
    baseline_reps = 10
    b1_iterations = 100000
    undirected = no

    [input]                    ; either this section ...
    corpora = a.json, b.json   ; required here
    gold = gold.tsv            ; without it only networks and analyses are produced
    scheme = scheme.json
    lexicon = lexicon.tsv
    classifications = t.json   ; fixed {text: {code: score}} table instead of the lexicon
    closeness = closeness.csv  ; pairwise id,id,value rows for heat values

    [synthetic]                ; ... or this one
    genres = 2
    corpora_per_genre = 5
    texts = 40

    [reference]                ; overrides the per-corpus statistics
    mean_activity = 120
    mean_author_count = 2.5
    mean_coauthorship = 0.0027564072092594585

    [induction]
    m = 5
    p = 2

Outputs carry the config hash and seeds and contain no timestamps, so the
same configuration reproduces byte-identical files.
"""

from __future__ import annotations

import configparser
import csv
import hashlib
import io
import json
import logging
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .analysis import community_profile, fuzzy_jaccard, heat_value, powerlaw_fit, rank_table
from .corpus import ReferenceStats, build_lmn, load_corpus
from .induction import DefinitionalSetting, InductionConfig, build_mtn, induce, to_undirected
from .learning import (GeneticConfig, GoldStandard, baseline_b1, baseline_b2, baseline_b3, baseline_b4,
                       classify_loo, genetic_search)
from .similarity import class_mapping, get_measure, similarity_matrix
from .synthetic import synthetic_genres
from .topics import FixedClassifier, LexiconClassifier, TopicScheme, load_lexicon, sample_lexicon, sample_scheme

log = logging.getLogger(__name__)


class PipelineError(RuntimeError):
    def __init__(self, stage: str, message: str):
        super().__init__(f"[{stage}] {message}")
        self.stage = stage


def _list(value: str) -> list[str]:
    return [v.strip() for v in value.replace(",", " ").split() if v.strip()]


@dataclass
class RunBundle:
    out: Path
    report: dict
    files: list[str] = field(default_factory=list)


class _Writer:
    """Single writer for every output file of a run."""

    def __init__(self, root: Path):
        self.root = root
        self.files: list[str] = []

    def text(self, rel: str, content: str) -> None:
        p = self.root / rel
        p.parent.mkdir(parents=True, exist_ok=True)
        p.write_text(content)
        self.files.append(rel)

    def json(self, rel: str, obj) -> None:
        self.text(rel, json.dumps(obj, indent=2, sort_keys=True) + "\n")

    def csv(self, rel: str, header: list[str], rows) -> None:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(header)
        w.writerows(rows)
        self.text(rel, buf.getvalue())


def _stage(name):
    def deco(fn):
        def inner(*a, **kw):
            try:
                return fn(*a, **kw)
            except PipelineError:
                raise
            except Exception as exc:
                raise PipelineError(name, f"{type(exc).__name__}: {exc}") from exc
        return inner
    return deco


@_stage("config")
def _read_config(path: Path) -> configparser.ConfigParser:
    cp = configparser.ConfigParser(inline_comment_prefixes=(";", "#"))
    if not cp.read(path):
        raise FileNotFoundError(path)
    if not cp.has_section("input") and not cp.has_section("synthetic"):
        raise ValueError("config needs an [input] or a [synthetic] section")
    return cp


@_stage("ingest")
def _ingest(cp, base: Path, seed: int, level: int):
    if cp.has_section("input"):
        sec = cp["input"]
        scheme = TopicScheme.load(base / sec["scheme"]) if "scheme" in sec else sample_scheme()
        lexicon = load_lexicon(base / sec["lexicon"]) if "lexicon" in sec else sample_lexicon()
        if "classifications" in sec:
            lexicon = FixedClassifier.load(base / sec["classifications"], level)
        corpora = []
        for rel in _list(sec["corpora"]):
            c, h = load_corpus(base / rel)
            corpora.append((Path(rel).stem, c, h))
        gold = GoldStandard.load(base / sec["gold"]) if "gold" in sec else None
        return scheme, lexicon, corpora, gold
    sec = cp["synthetic"]
    gens = synthetic_genres(sec.getint("genres", 2), sec.getint("corpora_per_genre", 5),
                            sec.getint("texts", 40), seed=seed)
    corpora = [(g.id, g.corpus, g.history) for g in gens]
    gold = GoldStandard({g.id: g.genre for g in gens})
    return sample_scheme(), sample_lexicon(), corpora, gold


def config_hash(path: Path) -> str:
    return hashlib.sha256(Path(path).read_bytes()).hexdigest()[:16]


def run_pipeline(config_file: str | Path) -> RunBundle:
    """Ingest, classify, induce, compare, classify networks, run baselines and analyses."""
    path = Path(config_file)
    base = path.parent
    cp = _read_config(path)
    pl = cp["pipeline"] if cp.has_section("pipeline") else {}
    get = (lambda k, d: pl.get(k, d)) if pl else (lambda k, d: d)
    seed = int(get("seed", "0"))
    level = int(get("level", "2"))
    modes = _list(get("modes", "ttn, atn"))
    measures = _list(get("measures", "cosAV_w_phi1"))
    variants = _list(get("variants", "all, opt"))
    reps = int(get("baseline_reps", "10"))
    b1_iter = int(get("b1_iterations", "100000"))
    undirected = get("undirected", "no").lower() in ("1", "yes", "true", "on")
    out = base / get("out", "results")
    chash = config_hash(path)
    w = _Writer(out)

    for mid in measures:
        try:
            get_measure(mid)
        except ValueError as exc:
            raise PipelineError("config", str(exc)) from None

    scheme, lexicon, corpora, gold = _ingest(cp, base, seed, level)
    ref = ReferenceStats.from_dict(cp["reference"]) if cp.has_section("reference") else None
    ind = cp["induction"] if cp.has_section("induction") else {}
    cfg = InductionConfig(m=int(ind.get("m", 5)), p=float(ind.get("p", 2.0)), reference=ref)

    networks: dict[str, list] = {mode: [] for mode in modes}
    ids = [cid for cid, _, _ in corpora]

    @_stage("induce")
    def induce_all():
        clf = lexicon if isinstance(lexicon, FixedClassifier) else LexiconClassifier(scheme, lexicon, level)
        for cid, c, h in corpora:
            s = DefinitionalSetting(scheme, clf, build_lmn(c, h), cid)
            layers = []
            for mode in modes:
                net = induce(s, mode, cfg)
                if undirected:
                    net = to_undirected(net)
                networks[mode].append(net)
                layers.append(net)
                w.json(f"networks/{mode}/{cid}.json", net.to_dict())
                w.text(f"networks/{mode}/{cid}.dot", net.to_dot(f"{cid}_{mode}"))
            mtn = build_mtn(layers)
            w.json(f"networks/mtn/{cid}.json", {"layers": [l.mode for l in layers],
                                                "margin_arcs": mtn.margin_count})

    induce_all()
    report: dict = {"config_hash": chash, "seed": seed, "level": level, "modes": modes,
                    "measures": measures, "variants": variants, "items": ids,
                    "classes": gold.labels if gold else None, "results": {}}
    report["networks"] = {mode: {cid: {"vertices": net.order, "arcs": net.size}
                                 for cid, net in zip(ids, networks[mode])} for mode in modes}

    type_of = class_mapping(scheme, network_level=level)

    @_stage("similarity")
    def matrices():
        mats = {}
        for mode in modes:
            for mid in measures:
                fm = similarity_matrix(networks[mode], mid, ids, type_of=type_of)
                fm.provenance.update({"config_hash": chash, "mode": mode})
                mats[(mode, mid)] = fm
                w.text(f"matrices/{mode}_{mid}.csv", fm.to_csv())
        return mats

    mats = matrices()

    @_stage("baselines")
    def baselines():
        b1 = baseline_b1(gold, b1_iter, seed)
        report["baselines"] = {"B1": b1.to_dict()}
        for (mode, mid), fm in mats.items():
            m = get_measure(mid)
            b2 = baseline_b2(networks[mode], mid, gold, ids, reps, seed, "all", type_of)
            b3 = baseline_b3(GoldStandard({i: gold.classes[i] for i in ids}),
                             (m.low, m.high), len(ids), reps, seed, "all", m.self_value)
            b4 = baseline_b4(fm, gold, None, reps, seed, "all")
            key = f"{mode}/{mid}"
            report["baselines"][key] = {b.name: b.to_dict() for b in (b2, b3, b4)}
            w.csv(f"baselines/{mode}_{mid}.csv", ["baseline", "rep", "macro_f"],
                  [(b.name, i, repr(float(s))) for b in (b2, b3, b4) for i, s in enumerate(b.scores)])

    @_stage("classify")
    def classify():
        for (mode, mid), fm in mats.items():
            res = {}
            for var in variants:
                if var == "all":
                    rep = classify_loo(fm, gold)
                else:
                    rep = genetic_search(fm, gold, GeneticConfig.for_mode(var, seed)).report
                res[var] = rep.to_dict()
                w.json(f"reports/{mode}_{mid}_{var}.json", {"config_hash": chash, "seed": seed, **rep.to_dict()})
            report["results"][f"{mode}/{mid}"] = {v: r["macro_f"] for v, r in res.items()}

    if gold is not None:
        classify()
        baselines()

    @_stage("powerfit")
    def powerfits():
        fits = {}
        rows = []
        for mode in modes:
            for cid, net in zip(ids, networks[mode]):
                ws = net.vertex_weights()
                for r, x in rank_table(ws):
                    rows.append((mode, cid, r, repr(x)))
                if len(ws) >= 3:
                    fits[f"{mode}/{cid}"] = powerlaw_fit(ws).to_dict()
        w.csv("analysis/rank_weights.csv", ["mode", "corpus", "rank", "weight"], rows)
        exps = [f["exponent"] for f in fits.values()]
        r2 = [f["adjusted_r2"] for f in fits.values()]
        report["powerfit"] = {"fits": fits,
                              "mean_exponent": float(np.mean(exps)) if exps else None,
                              "mean_adjusted_r2": float(np.mean(r2)) if r2 else None}

    powerfits()

    @_stage("jaccard")
    def jaccard():
        profiles = [community_profile(c, h) for _, c, h in corpora]
        rows = []
        for i, a in enumerate(profiles):
            rows.append([ids[i], *(repr(fuzzy_jaccard(a, b)) for b in profiles)])
        w.csv("analysis/fuzzy_jaccard.csv", ["id", *ids], rows)
        if cp.has_section("input") and "closeness" in cp["input"]:
            heat_rows = []
            jac = {(ids[i], ids[j]): float(r) for i, row in enumerate(rows) for j, r in enumerate(row[1:])}
            with open(base / cp["input"]["closeness"], newline="") as fh:
                for a, b, cl in csv.reader(fh):
                    heat_rows.append((a, b, repr(heat_value(float(cl), jac[(a, b)]))))
            w.csv("analysis/heat.csv", ["a", "b", "heat"], heat_rows)

    jaccard()
    w.json("report.json", report)
    return RunBundle(out, report, list(w.files))
