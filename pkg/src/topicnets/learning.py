"""Classification over similarity features: leave-one-out k-NN, feature search, baselines."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from pathlib import Path
from typing import Mapping, Protocol, Sequence

import numpy as np

from .similarity import FeatureMatrix, Measure, similarity_matrix
from .structure import er_rewire

# distances are rounded before ranking so that float noise cannot break ties
_DIST_DECIMALS = 12


class GoldStandard:
    """Assignment of item ids to class labels."""

    def __init__(self, classes: Mapping[str, str]):
        if not classes:
            raise ValueError("gold standard is empty")
        self.classes = {str(k): str(v) for k, v in sorted(classes.items())}
        if len(set(self.classes.values())) < 2:
            raise ValueError("gold standard needs at least two classes")

    @property
    def items(self) -> list[str]:
        return list(self.classes)

    @property
    def labels(self) -> list[str]:
        return sorted(set(self.classes.values()))

    def labels_for(self, ids: Sequence[str]) -> list[str]:
        missing = [i for i in ids if i not in self.classes]
        if missing:
            raise ValueError(f"items without gold class: {missing[:5]!r}")
        return [self.classes[i] for i in ids]

    @classmethod
    def from_tsv(cls, text: str) -> "GoldStandard":
        rows = [ln.split("\t") for ln in text.splitlines() if ln.strip() and not ln.startswith("#")]
        return cls({r[0].strip(): r[1].strip() for r in rows})

    @classmethod
    def load(cls, path: str | Path) -> "GoldStandard":
        return cls.from_tsv(Path(path).read_text())

    def to_tsv(self) -> str:
        return "".join(f"{k}\t{v}\n" for k, v in self.classes.items())


@dataclass
class EvalReport:
    classes: list[str]
    precision: list[float]
    recall: list[float]
    f: list[float]
    macro_f: float
    confusion: list[list[int]]
    predictions: list[str] = field(default_factory=list)
    mask: list[int] = field(default_factory=list)

    def to_dict(self) -> dict:
        return {
            "macro_f": self.macro_f,
            "per_class": {c: {"precision": p, "recall": r, "f": f}
                          for c, p, r, f in zip(self.classes, self.precision, self.recall, self.f)},
            "confusion": {"labels": self.classes, "matrix": self.confusion},
            "predictions": self.predictions,
            "mask": self.mask,
        }


def evaluate(gold: Sequence[str], predicted: Sequence[str], classes: Sequence[str] | None = None) -> EvalReport:
    """Per-class precision, recall and F; macro-F over the gold classes.

    An undefined precision or recall (no predictions, empty class) counts as 0.
    Predicted labels outside ``classes`` get extra confusion columns.
    """
    classes = list(classes) if classes is not None else sorted(set(gold))
    cols = classes + sorted(set(predicted) - set(classes))
    idx = {c: i for i, c in enumerate(cols)}
    conf = np.zeros((len(classes), len(cols)), dtype=int)
    for g, p in zip(gold, predicted):
        conf[idx[g], idx[p]] += 1
    k = len(classes)
    tp = np.diag(conf[:, :k]).astype(float)
    pred_n = conf[:, :k].sum(axis=0)
    true_n = conf.sum(axis=1)
    with np.errstate(divide="ignore", invalid="ignore"):
        prec = np.where(pred_n > 0, tp / pred_n, 0.0)
        rec = np.where(true_n > 0, tp / true_n, 0.0)
        f = np.where(prec + rec > 0, 2 * prec * rec / (prec + rec), 0.0)
    return EvalReport(classes, prec.tolist(), rec.tolist(), f.tolist(), float(f.mean()),
                      conf.tolist(), list(predicted))


def macro_f_batch(y: np.ndarray, pred: np.ndarray, n_classes: int) -> np.ndarray:
    """Macro-F of many predictions at once; ``pred`` has shape (batch, n)."""
    scores = np.zeros(pred.shape[0])
    for c in range(n_classes):
        is_true = y == c
        is_pred = pred == c
        tp = (is_pred & is_true).sum(axis=1)
        pn = is_pred.sum(axis=1)
        tn = is_true.sum()
        p = np.divide(tp, pn, out=np.zeros(len(tp)), where=pn > 0)
        r = tp / tn if tn else np.zeros(len(tp))
        s = p + r
        scores += np.divide(2 * p * r, s, out=np.zeros(len(tp)), where=s > 0)
    return scores / n_classes


class LooClassifier(Protocol):
    def predict(self, values: np.ndarray, labels: Sequence[str], mask: np.ndarray) -> list[str]: ...


class KNNLeaveOneOut:
    """k nearest neighbours under cosine distance, one item held out at a time.

    Row ``i`` of the matrix is item ``i``'s feature vector. For a square
    similarity matrix, holding out item ``i`` also drops column ``i`` (its
    similarity to itself and others' to it) from every vector; set
    ``exclude_own`` to force this on or off. Neighbour ties go to the lower
    index; vote ties go to the class with the nearest member, then to the
    smaller label.
    """

    def __init__(self, k: int = 3, exclude_own: bool | None = None):
        if k < 1:
            raise ValueError("k must be positive")
        self.k = k
        self.exclude_own = exclude_own

    def distances(self, values: np.ndarray, mask: np.ndarray) -> np.ndarray:
        x = np.asarray(values, float)
        n = x.shape[0]
        m = np.asarray(mask, float)
        xm = x * m
        gram = xm @ x.T
        sq = np.einsum("ij,ij->i", xm, x)
        square = x.shape[1] == n
        if self.exclude_own if self.exclude_own is not None else square:
            if not square:
                raise ValueError("own-column exclusion needs a square matrix")
            own = np.diag(x)
            # remove column i from both vectors when i is held out
            dot = gram - (m * own)[:, None] * x.T
            ni = np.maximum(sq - m * own ** 2, 0.0)
            nj = np.maximum(sq[None, :] - m[:, None] * (x.T ** 2), 0.0)
            den = np.sqrt(ni[:, None] * nj)
        else:
            dot = gram
            den = np.sqrt(np.outer(sq, sq))
        with np.errstate(divide="ignore", invalid="ignore"):
            cos = np.where(den > 0, dot / den, 0.0)
        dist = np.round(1.0 - np.clip(cos, -1.0, 1.0), _DIST_DECIMALS)
        dist[np.arange(n), np.arange(n)] = np.inf
        return dist

    def predict(self, values: np.ndarray, labels: Sequence[str], mask: np.ndarray) -> list[str]:
        dist = self.distances(values, mask)
        n = dist.shape[0]
        k = min(self.k, n - 1)
        order = np.argsort(dist, axis=1, kind="stable")[:, :k]
        out = []
        for i in range(n):
            votes: dict[str, list] = {}
            for j in order[i]:
                c = labels[j]
                entry = votes.setdefault(c, [0, math.inf])
                entry[0] += 1
                entry[1] = min(entry[1], dist[i, j])
            best = min(votes.items(), key=lambda kv: (-kv[1][0], kv[1][1], kv[0]))
            out.append(best[0])
        return out


def _as_values(m) -> tuple[list[str], np.ndarray]:
    """Item ids and an items x features array; plain arrays get ids "0", "1", ..."""
    if isinstance(m, FeatureMatrix):
        return m.ids, m.values
    v = np.asarray(m, float)
    if v.ndim != 2:
        raise ValueError("features must form a 2-d array")
    return [str(i) for i in range(v.shape[0])], v


def _labels(gold, ids) -> list[str]:
    if isinstance(gold, GoldStandard):
        return gold.labels_for(ids)
    return [str(x) for x in gold]


def classify_loo(m, gold, feature_mask=None, classifier: LooClassifier | None = None) -> EvalReport:
    """Leave-one-out evaluation of ``classifier`` (default 3-NN) on masked feature columns."""
    ids, values = _as_values(m)
    labels = _labels(gold, ids)
    mask = np.ones(values.shape[1], bool) if feature_mask is None else np.asarray(feature_mask, bool)
    if mask.shape != (values.shape[1],):
        raise ValueError("mask length must equal the number of feature columns")
    if not mask.any():
        raise ValueError("mask selects no feature")
    clf = classifier or KNNLeaveOneOut()
    pred = clf.predict(values, labels, mask)
    rep = evaluate(labels, pred, sorted(set(labels)))
    rep.mask = np.flatnonzero(mask).tolist()
    return rep


# -- genetic feature search ----------------------------------------------


@dataclass(frozen=True)
class GeneticConfig:
    population: int = 20
    rounds: int = 50
    mutation_rate: float = 0.05
    seed: int = 0
    elite_fraction: float = 0.25
    replace_fraction: float = 0.25
    minimize: bool = False
    minimize_rounds: int = 500
    minimize_candidates: int = 20

    def __post_init__(self):
        if self.population < 2:
            raise ValueError("population must be at least 2")
        if self.rounds < 1:
            raise ValueError("rounds must be at least 1")
        if not 0 <= self.mutation_rate <= 1:
            raise ValueError("mutation rate must lie in [0, 1]")

    @classmethod
    def for_mode(cls, mode: str, seed: int = 0, **kw) -> "GeneticConfig":
        if mode == "opt":
            return cls(rounds=50, seed=seed, **kw)
        if mode == "ext":
            return cls(rounds=500, seed=seed, minimize=True, **kw)
        raise ValueError(f"no genetic configuration for mode {mode!r}")


@dataclass
class SearchResult:
    mask: np.ndarray
    report: EvalReport
    history: list[float]
    evaluations: int


def genetic_search(m, gold, cfg: GeneticConfig = GeneticConfig(),
                   classifier: LooClassifier | None = None) -> SearchResult:
    """Evolve feature masks; fitness is the leave-one-out macro-F.

    Each round keeps the elite unchanged, replaces the worst by random masks
    and fills the rest with mutated elite copies. ``history`` records the
    best fitness seen after each round (and after each minimisation round).
    """
    ids, values = _as_values(m)
    labels = _labels(gold, ids)
    d = values.shape[1]
    rng = np.random.default_rng(cfg.seed)
    clf = classifier or KNNLeaveOneOut()
    classes = sorted(set(labels))
    cache: dict[bytes, float] = {}

    def fitness(mask: np.ndarray) -> float:
        key = np.packbits(mask).tobytes()
        if key not in cache:
            cache[key] = evaluate(labels, clf.predict(values, labels, mask), classes).macro_f
        return cache[key]

    def random_mask() -> np.ndarray:
        mk = rng.random(d) < 0.5
        if not mk.any():
            mk[rng.integers(d)] = True
        return mk

    def mutate(parent: np.ndarray) -> np.ndarray:
        flips = rng.random(d) < cfg.mutation_rate
        if not flips.any():
            flips[rng.integers(d)] = True
        child = parent ^ flips
        if not child.any():
            child[rng.integers(d)] = True
        return child

    def rank_key(mk):
        return (-fitness(mk), int(mk.sum()), np.packbits(mk).tobytes())

    pop = [np.ones(d, bool)] + [random_mask() for _ in range(cfg.population - 1)]
    n_elite = max(1, math.ceil(cfg.elite_fraction * cfg.population))
    n_new = min(int(cfg.replace_fraction * cfg.population), cfg.population - n_elite)
    best = min(pop, key=rank_key)
    history = []
    for _ in range(cfg.rounds):
        pop.sort(key=rank_key)
        if rank_key(pop[0]) < rank_key(best):
            best = pop[0].copy()
        history.append(fitness(best))
        elite = pop[:n_elite]
        children = [mutate(elite[i % n_elite]) for i in range(cfg.population - n_elite - n_new)]
        pop = elite + children + [random_mask() for _ in range(n_new)]
    pop.sort(key=rank_key)
    if rank_key(pop[0]) < rank_key(best):
        best = pop[0].copy()
    history.append(fitness(best))

    if cfg.minimize:
        current = best.copy()
        for _ in range(cfg.minimize_rounds):
            on = np.flatnonzero(current)
            if on.size <= 1:
                break
            picks = on if on.size <= cfg.minimize_candidates else rng.choice(on, cfg.minimize_candidates, replace=False)
            trials = []
            for b in sorted(picks.tolist()):
                cand = current.copy()
                cand[b] = False
                trials.append((fitness(cand), b, cand))
            f_best, _, cand = max(trials, key=lambda t: (t[0], -t[1]))
            if f_best >= fitness(current):
                current = cand
            elif on.size <= cfg.minimize_candidates:
                break
            history.append(fitness(current))
        best = current

    rep = evaluate(labels, clf.predict(values, labels, best), classes)
    rep.mask = np.flatnonzero(best).tolist()
    return SearchResult(best, rep, history, len(cache))


def run_mode(m, gold, mode: str = "all", seed: int = 0, classifier: LooClassifier | None = None) -> EvalReport:
    """Evaluate with all features (``all``) or a searched mask (``opt``/``ext``)."""
    if mode == "all":
        return classify_loo(m, gold, None, classifier)
    return genetic_search(m, gold, GeneticConfig.for_mode(mode, seed), classifier).report


# -- randomisation baselines -----------------------------------------------


@dataclass
class BaselineResult:
    name: str
    scores: np.ndarray
    draws: list = field(default_factory=list, repr=False)  # B4: the random partitions used

    @property
    def mean(self) -> float:
        return float(np.mean(self.scores))

    @property
    def sd(self) -> float:
        return float(np.std(self.scores, ddof=1)) if len(self.scores) > 1 else 0.0

    def to_dict(self) -> dict:
        return {"baseline": self.name, "mean": self.mean, "sd": self.sd, "reps": int(len(self.scores))}


def baseline_b1(gold, iterations: int = 100_000, seed: int = 0, chunk: int = 10_000) -> BaselineResult:
    """Random permutations of the gold labels (class sizes preserved) scored against gold."""
    if iterations < 1:
        raise ValueError("iterations must be positive")
    labels = list(gold.classes.values()) if isinstance(gold, GoldStandard) else [str(x) for x in gold]
    classes = sorted(set(labels))
    y = np.array([classes.index(c) for c in labels])
    rng = np.random.default_rng(seed)
    scores = []
    done = 0
    while done < iterations:
        b = min(chunk, iterations - done)
        pred = rng.permuted(np.tile(y, (b, 1)), axis=1)
        scores.append(macro_f_batch(y, pred, len(classes)))
        done += b
    return BaselineResult("B1", np.concatenate(scores))


def baseline_b2(nets: Sequence, measure: str | Measure, gold, ids: Sequence[str], reps: int = 100,
                seed: int = 0, mode: str = "all", type_of=None,
                classifier: LooClassifier | None = None) -> BaselineResult:
    """Rewire every network at random, rebuild the matrix and classify again."""
    if reps < 1:
        raise ValueError("reps must be positive")
    rng = np.random.default_rng(seed)
    scores = []
    for _ in range(reps):
        seeds = rng.integers(0, 2**63 - 1, size=len(nets))
        rewired = [er_rewire(g, int(s)) for g, s in zip(nets, seeds)]
        fm = similarity_matrix(rewired, measure, ids, type_of=type_of)
        scores.append(run_mode(fm, gold, mode, int(rng.integers(2**31)), classifier).macro_f)
    return BaselineResult("B2", np.array(scores))


def random_symmetric(n: int, low: float, high: float, rng: np.random.Generator, diagonal: float) -> np.ndarray:
    a = rng.uniform(low, high, size=(n, n))
    a = np.triu(a, 1)
    a = a + a.T
    np.fill_diagonal(a, diagonal)
    return a


def baseline_b3(gold, measure_range: tuple[float, float] = (0.0, 1.0), n: int | None = None,
                reps: int = 100, seed: int = 0, mode: str = "all", diagonal: float = 1.0,
                classifier: LooClassifier | None = None) -> BaselineResult:
    """Classify symmetric random matrices with entries uniform over the measure's range."""
    if reps < 1:
        raise ValueError("reps must be positive")
    ids = gold.items if isinstance(gold, GoldStandard) else [str(i) for i in range(len(gold))]
    n = n or len(ids)
    if n != len(ids):
        raise ValueError("matrix size must match the gold standard")
    rng = np.random.default_rng(seed)
    low, high = measure_range
    scores = []
    for _ in range(reps):
        fm = FeatureMatrix(ids, random_symmetric(n, low, high, rng, diagonal), "random")
        scores.append(run_mode(fm, gold, mode, int(rng.integers(2**31)), classifier).macro_f)
    return BaselineResult("B3", np.array(scores))


def random_partition(n: int, n_classes: int, rng: np.random.Generator) -> np.ndarray:
    """Random class index per item with random, non-empty class sizes."""
    if n_classes > n:
        raise ValueError("more classes than items")
    cuts = np.sort(rng.choice(np.arange(1, n), n_classes - 1, replace=False)) if n_classes > 1 else np.array([], int)
    sizes = np.diff(np.concatenate([[0], cuts, [n]]))
    return rng.permutation(np.repeat(np.arange(n_classes), sizes))


def baseline_b4(m, gold, n_classes: int | None = None, reps: int = 100, seed: int = 0,
                mode: str = "all", classifier: LooClassifier | None = None,
                max_attempts: int = 10_000) -> BaselineResult:
    """Classify against random labelled partitions that never coincide with gold."""
    if reps < 1:
        raise ValueError("reps must be positive")
    ids, values = _as_values(m)
    gold_labels = _labels(gold, ids)
    names = sorted(set(gold_labels))
    k = n_classes or len(names)
    if k > len(ids):
        raise ValueError("more classes than items")
    if k != len(names):
        names = [f"r{i}" for i in range(k)]
    rng = np.random.default_rng(seed)
    scores, draws = [], []
    for _ in range(reps):
        for _attempt in range(max_attempts):
            part = [names[c] for c in random_partition(len(ids), k, rng)]
            if part != gold_labels:
                break
        else:
            raise RuntimeError("could not draw a partition different from gold")
        draws.append(part)
        fm = FeatureMatrix(ids, values, "b4")
        scores.append(run_mode(fm, part, mode, int(rng.integers(2**31)), classifier).macro_f)
    return BaselineResult("B4", np.array(scores), draws)
