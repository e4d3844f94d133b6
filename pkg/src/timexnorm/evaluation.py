"""Exact-match scoring and paired significance testing.

A system answer counts as correct only if it equals the gold string exactly;
a value that differs in a single character is as wrong as any other.
"""

from __future__ import annotations

import json
import logging
from dataclasses import asdict, dataclass, field
from typing import Callable, Optional, Sequence

import numpy as np
from scipy.stats import rankdata

from . import _kernels
from .errors import LengthMismatch, SizeExceeded
from .model import parse_value

log = logging.getLogger(__name__)

MAX_EXACT_N = 25
NOT_AVAILABLE = "n/a"


@dataclass(frozen=True)
class ErrorRow:
    attribute: str
    text: str
    gold: str
    system: Optional[str]


@dataclass
class ScoreReport:
    n_records: int
    type_correct: int
    value_correct: int
    type_errors: list = field(default_factory=list)
    value_errors: list = field(default_factory=list)

    @property
    def type_accuracy(self) -> float:
        return self.type_correct / self.n_records if self.n_records else 0.0

    @property
    def value_accuracy(self) -> float:
        return self.value_correct / self.n_records if self.n_records else 0.0

    def to_dict(self) -> dict:
        return {
            "n": self.n_records,
            "type_correct": self.type_correct,
            "value_correct": self.value_correct,
            "type_accuracy": self.type_accuracy,
            "value_accuracy": self.value_accuracy,
            "errors": [asdict(e) for e in self.type_errors + self.value_errors],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, ensure_ascii=False)


def score(gold: Sequence, system: Sequence, strict: bool = False) -> ScoreReport:
    """Compare system outcomes with gold records, index by index.

    With ``strict=True`` a gold value outside the value grammar raises
    MalformedValue; by default it is compared as a plain string.
    """
    if len(gold) != len(system):
        raise LengthMismatch(f"{len(gold)} gold records vs {len(system)} system outputs")
    report = ScoreReport(len(gold), 0, 0)
    for g, s in zip(gold, system):
        if strict:
            parse_value(g.gold_value, g.timex_type)
        sys_type = s.timex_type.value if s.fired else None
        sys_value = s.value_str if s.fired else None
        if sys_type == g.timex_type.value:
            report.type_correct += 1
        else:
            report.type_errors.append(ErrorRow("type", g.text, g.timex_type.value, sys_type))
        if sys_value == g.gold_value:
            report.value_correct += 1
        else:
            report.value_errors.append(ErrorRow("value", g.text, g.gold_value, sys_value))
    return report


def error_report(report: ScoreReport, k: int) -> str:
    """The first ``k`` value errors as ``text | human | system`` rows."""
    if k < 0:
        raise ValueError("k must be >= 0")
    rows = report.value_errors[:k]
    if not rows:
        return ""
    lines = ["text | human | system"]
    for e in rows:
        lines.append(f"{e.text} | {e.gold} | {e.system if e.system is not None else NOT_AVAILABLE}")
    return "\n".join(lines)


def subsample(records: Sequence, size: int = 400, count: int = 10, seed: int = 0) -> list[list]:
    """``count`` independent samples of ``size`` records, each without replacement."""
    n = len(records)
    if size > n:
        raise SizeExceeded(f"sample size {size} exceeds corpus size {n}")
    idx = subsample_indices(n, size, count, seed)
    return [[records[i] for i in row] for row in idx]


def subsample_indices(n: int, size: int, count: int, seed: int) -> np.ndarray:
    if size > n:
        raise SizeExceeded(f"sample size {size} exceeds corpus size {n}")
    rng = np.random.default_rng(seed)
    return np.stack([rng.choice(n, size=size, replace=False) for _ in range(count)]) \
        if count else np.empty((0, size), dtype=np.int64)


@dataclass(frozen=True)
class WilcoxonResult:
    n: int              # pairs left after dropping zero differences
    w_plus: float
    w_minus: float
    statistic: float    # min(W+, W-)
    p_value: float


def signed_ranks(pairs) -> tuple[np.ndarray, np.ndarray]:
    """Doubled average ranks of |b - a| (integers) and the difference signs.

    Zero differences are dropped. Differences are rounded to 12 decimals so
    that float noise does not break ties between equal accuracies.
    """
    arr = np.asarray(pairs, dtype=float).reshape(-1, 2)
    d = np.round(arr[:, 1] - arr[:, 0], 12)
    d = d[d != 0]
    ranks2 = np.rint(2 * rankdata(np.abs(d), method="average")).astype(np.int64)
    return ranks2, np.sign(d)


def wilcoxon_signed_rank(pairs) -> WilcoxonResult:
    """Exact two-sided Wilcoxon signed-rank test over paired values.

    The p-value is the fraction of the 2^n sign assignments whose
    min(W+, W-) is at most the observed one. All-zero differences give p = 1.
    """
    ranks2, signs = signed_ranks(pairs)
    n = len(ranks2)
    if n == 0:
        return WilcoxonResult(0, 0.0, 0.0, 0.0, 1.0)
    if n > MAX_EXACT_N:
        raise ValueError(f"exact test limited to {MAX_EXACT_N} non-zero pairs, got {n}")
    w_plus2 = int(ranks2[signs > 0].sum())
    w_minus2 = int(ranks2.sum()) - w_plus2
    w2 = min(w_plus2, w_minus2)
    hits = _kernels.count_extreme(ranks2, w2)
    return WilcoxonResult(n, w_plus2 / 2, w_minus2 / 2, w2 / 2, hits / 2 ** n)


@dataclass(frozen=True)
class ComparisonResult:
    attribute: str
    size: int
    count: int
    seed: int
    accuracies_a: tuple
    accuracies_b: tuple
    wilcoxon: WilcoxonResult

    @property
    def p_value(self) -> float:
        return self.wilcoxon.p_value

    @property
    def statistic(self) -> float:
        return self.wilcoxon.statistic

    def to_dict(self) -> dict:
        d = asdict(self)
        d["accuracies_a"] = list(self.accuracies_a)
        d["accuracies_b"] = list(self.accuracies_b)
        return d


def run_system(system, records) -> list:
    """Normalise every record with ``system`` (a Catalog or a callable)."""
    fn: Callable = system.normalise if hasattr(system, "normalise") else system
    return [fn(r.text, r.utterance) for r in records]


def compare_systems(corpus: Sequence, system_a, system_b, size: int = 400,
                    count: int = 10, seed: int = 0) -> dict[str, ComparisonResult]:
    """Score two systems on the same seeded subsamples and test the paired accuracies.

    Returns one ComparisonResult for "type" and one for "value".
    """
    idx = subsample_indices(len(corpus), size, count, seed)
    outs = []
    for system in (system_a, system_b):
        outputs = run_system(system, corpus)
        type_ok = np.array([o.fired and o.timex_type.value == g.timex_type.value
                            for o, g in zip(outputs, corpus)], dtype=bool)
        value_ok = np.array([o.fired and o.value_str == g.gold_value
                             for o, g in zip(outputs, corpus)], dtype=bool)
        outs.append((type_ok, value_ok))
    results = {}
    for k, attribute in enumerate(("type", "value")):
        acc_a = tuple(float(outs[0][k][row].mean()) for row in idx)
        acc_b = tuple(float(outs[1][k][row].mean()) for row in idx)
        test = wilcoxon_signed_rank(list(zip(acc_a, acc_b)))
        results[attribute] = ComparisonResult(attribute, size, count, seed, acc_a, acc_b, test)
    return results
