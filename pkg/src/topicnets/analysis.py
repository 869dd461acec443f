"""Power-law fits of weight distributions, fuzzy community overlap and heat values."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Mapping

import numpy as np
from scipy import stats

from .corpus import Corpus, EditHistory


@dataclass(frozen=True)
class PowerFit:
    exponent: float
    prefactor: float
    adjusted_r2: float
    n: int

    def to_dict(self) -> dict:
        return {"exponent": self.exponent, "prefactor": self.prefactor,
                "adjusted_r2": self.adjusted_r2, "n": self.n}


def rank_table(weights: Iterable[float]) -> list[tuple[int, float]]:
    """``(rank, weight)`` rows with weights sorted in decreasing order."""
    w = sorted((float(x) for x in weights), reverse=True)
    return [(r, x) for r, x in enumerate(w, start=1)]


def powerlaw_fit(weights: Iterable[float]) -> PowerFit:
    """Least-squares fit of ``log w = log c - gamma log r`` over rank-ordered weights.

    The adjusted R² uses one predictor. A constant sample yields
    ``gamma = 0`` and R² reported as 0.
    """
    w = np.sort(np.asarray(list(weights), dtype=float))[::-1]
    if w.size < 3:
        raise ValueError("power-law fit needs at least 3 values")
    if not np.all(w > 0) or not np.all(np.isfinite(w)):
        raise ValueError("power-law fit needs finite positive values")
    n = w.size
    logr = np.log(np.arange(1, n + 1, dtype=float))
    logw = np.log(w)
    if np.ptp(logw) == 0:
        return PowerFit(0.0, float(w[0]), 0.0, n)
    res = stats.linregress(logr, logw)
    r2 = res.rvalue ** 2
    adj = 1.0 - (1.0 - r2) * (n - 1) / (n - 2)
    return PowerFit(float(-res.slope), float(math.exp(res.intercept)), float(adj), n)


def community_profile(c: Corpus, h: EditHistory, authors: Iterable[str] | None = None) -> dict[str, float]:
    """Share of the total activity in ``c`` per author, optionally restricted to ``authors``."""
    keep = set(authors) if authors is not None else None
    acts: dict[str, list[float]] = {}
    for (a, x), act in h.items():
        if x in c and act > 0 and (keep is None or a in keep):
            acts.setdefault(a, []).append(act)
    sums = {a: math.fsum(v) for a, v in sorted(acts.items())}
    total = math.fsum(sums.values())
    return {a: s / total for a, s in sums.items()} if total > 0 else {}


def fuzzy_jaccard(a: Mapping[str, float], b: Mapping[str, float]) -> float:
    """Sum of term-wise minima over sum of term-wise maxima of two share profiles."""
    keys = sorted(set(a) | set(b))
    lo = math.fsum(min(a.get(k, 0.0), b.get(k, 0.0)) for k in keys)
    hi = math.fsum(max(a.get(k, 0.0), b.get(k, 0.0)) for k in keys)
    return lo / hi if hi > 0 else 0.0


def heat_value(closeness: float, similarity: float) -> float:
    for name, v in (("closeness", closeness), ("similarity", similarity)):
        if not 0.0 <= v <= 1.0:
            raise ValueError(f"{name} must lie in [0, 1], got {v!r}")
    return -1.0 + closeness + similarity
