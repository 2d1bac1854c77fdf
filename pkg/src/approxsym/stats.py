"""Paired comparison of two algorithm variants over matched graph instances:
paired t-test (two-sided) and Cohen's d for paired designs."""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Mapping, Sequence

import numpy as np
from scipy.special import betainc


@dataclass(frozen=True)
class PairedSample:
    label_a: str
    label_b: str
    values_a: np.ndarray
    values_b: np.ndarray

    def __post_init__(self):
        a = np.asarray(self.values_a, dtype=np.float64)
        b = np.asarray(self.values_b, dtype=np.float64)
        if a.shape != b.shape or a.ndim != 1:
            raise ValueError("paired samples must be equal-length 1-d arrays")
        if a.shape[0] < 2:
            raise ValueError("need at least 2 pairs")
        object.__setattr__(self, "values_a", a)
        object.__setattr__(self, "values_b", b)

    @property
    def diffs(self) -> np.ndarray:
        """b - a: negative when variant B lowers the measured value."""
        return self.values_b - self.values_a


@dataclass(frozen=True)
class TestReport:
    t_statistic: float
    p_value: float
    dof: int
    cohens_d: float
    mean_diff: float
    degenerate: bool = False


def student_t_two_sided_p(t: float, dof: int) -> float:
    """Two-sided tail mass of Student's t: I_{dof/(dof+t^2)}(dof/2, 1/2)."""
    if dof < 1:
        raise ValueError("dof must be >= 1")
    if math.isinf(t):
        return 0.0
    return float(betainc(dof / 2.0, 0.5, dof / (dof + t * t)))


def paired_t_test(s: PairedSample) -> TestReport:
    d = s.diffs
    k = d.shape[0]
    mean = float(d.mean())
    sd = float(d.std(ddof=1))
    dof = k - 1
    if sd == 0.0:
        if mean == 0.0:
            return TestReport(0.0, 1.0, dof, 0.0, 0.0, degenerate=True)
        sign = math.copysign(1.0, mean)
        return TestReport(
            sign * math.inf, 0.0, dof, sign * math.inf, mean, degenerate=True
        )
    t = mean / (sd / math.sqrt(k))
    return TestReport(
        t_statistic=t,
        p_value=student_t_two_sided_p(t, dof),
        dof=dof,
        cohens_d=mean / sd,
        mean_diff=mean,
    )


def cohens_d(s: PairedSample) -> float:
    """Paired-design effect size mean(diff)/sd(diff); signed infinity on zero
    variance with nonzero mean, 0 when the samples are identical."""
    d = s.diffs
    mean = float(d.mean())
    sd = float(d.std(ddof=1))
    if sd == 0.0:
        return 0.0 if mean == 0.0 else math.copysign(math.inf, mean)
    return mean / sd


def paired_from_rows(
    rows: Iterable[Mapping[str, str]],
    label_a: str,
    label_b: str,
    per_run: bool = False,
) -> dict[tuple[str, str], PairedSample]:
    """Group RunRecord-style CSV rows into paired samples per (model, params).

    By default each graph contributes one value per variant (the mean S over
    its repeats); ``per_run`` pairs raw runs by (graph_id, run_id) instead.
    """
    groups: dict[tuple[str, str], dict[str, dict[tuple, list[float]]]] = {}
    for row in rows:
        variant = row["variant"]
        if variant not in (label_a, label_b):
            continue
        gkey = (row["model"], row["params"])
        pair_key = (row["graph_id"], row["run_id"]) if per_run else (row["graph_id"],)
        groups.setdefault(gkey, {}).setdefault(variant, {}).setdefault(
            pair_key, []
        ).append(float(row["S"]))

    out: dict[tuple[str, str], PairedSample] = {}
    for gkey, by_variant in sorted(groups.items()):
        if label_a not in by_variant or label_b not in by_variant:
            continue
        keys = sorted(set(by_variant[label_a]) & set(by_variant[label_b]))
        if len(keys) < 2:
            continue
        va = np.array([np.mean(by_variant[label_a][k]) for k in keys])
        vb = np.array([np.mean(by_variant[label_b][k]) for k in keys])
        out[gkey] = PairedSample(label_a, label_b, va, vb)
    return out
