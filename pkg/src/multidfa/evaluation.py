"""Experiment harness: six disjoint target languages over {a, b, c}, dataset
generation, purity, and the (k, subset, density, method, seed) grid.
"""
from __future__ import annotations

import csv
import hashlib
import itertools
import math
import re
import statistics
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field, replace
from enum import Enum
from pathlib import Path
from typing import Callable, Iterable, Optional, Sequence

import numpy as np

from .automata import Alphabet, Dfa, LabeledSample, accepts
from .evolution import EaConfig, evolve, extract_solution
from .merging import rpni_splitting, standard_rpni

SIGMA = Alphabet(("a", "b", "c"))
MAX_LENGTH = 24
REPEAT_P = 0.3


class TargetLanguage(Enum):
    A_PLUS = "a+"
    AB_GE2 = "(ab){2,}"
    ABC_PLUS = "(abc)+"
    A_BPLUS_A = "ab+a"
    APLUS_BPLUS = "a+b+"
    A_BC_PLUS_A = "a(bc)+a"

    @property
    def pattern(self) -> re.Pattern:
        return _PATTERNS[self]

    def accepts(self, s: str) -> bool:
        return self.pattern.fullmatch(s) is not None

    def draw(self, rng: np.random.Generator) -> str:
        """One member string; repetition counts are geometric above the minimum."""
        while True:
            s = _BUILDERS[self](lambda low: low + int(rng.geometric(REPEAT_P)) - 1)
            if len(s) <= MAX_LENGTH:
                return s

    def capacity(self) -> int:
        """Number of members of length <= MAX_LENGTH."""
        return sum(1 for n in range(MAX_LENGTH + 1) for s in _members_of_length(self, n))


_PATTERNS = {lang: re.compile(lang.value) for lang in TargetLanguage}

_BUILDERS: dict[TargetLanguage, Callable] = {
    TargetLanguage.A_PLUS: lambda rep: "a" * rep(1),
    TargetLanguage.AB_GE2: lambda rep: "ab" * rep(2),
    TargetLanguage.ABC_PLUS: lambda rep: "abc" * rep(1),
    TargetLanguage.A_BPLUS_A: lambda rep: "a" + "b" * rep(1) + "a",
    TargetLanguage.APLUS_BPLUS: lambda rep: "a" * rep(1) + "b" * rep(1),
    TargetLanguage.A_BC_PLUS_A: lambda rep: "a" + "bc" * rep(1) + "a",
}


def _members_of_length(lang, n):
    if lang is TargetLanguage.APLUS_BPLUS:
        return ["a" * i + "b" * (n - i) for i in range(1, n)]
    unit, fixed, low = {
        TargetLanguage.A_PLUS: ("a", 0, 1),
        TargetLanguage.AB_GE2: ("ab", 0, 2),
        TargetLanguage.ABC_PLUS: ("abc", 0, 1),
        TargetLanguage.A_BPLUS_A: ("b", 2, 1),
        TargetLanguage.A_BC_PLUS_A: ("bc", 2, 1),
    }[lang]
    reps, rest = divmod(n - fixed, len(unit))
    if rest or reps < low:
        return []
    return [_BUILDERS[lang](lambda _low: reps)]


def reference_dfa(lang: TargetLanguage) -> Dfa:
    """Hand-built minimal (partial) DFA for each target language."""
    table = {
        TargetLanguage.A_PLUS: (2, {(0, "a"): 1, (1, "a"): 1}, {1}),
        TargetLanguage.AB_GE2: (5, {(0, "a"): 1, (1, "b"): 2, (2, "a"): 3,
                                    (3, "b"): 4, (4, "a"): 3}, {4}),
        TargetLanguage.ABC_PLUS: (4, {(0, "a"): 1, (1, "b"): 2, (2, "c"): 3,
                                      (3, "a"): 1}, {3}),
        TargetLanguage.A_BPLUS_A: (4, {(0, "a"): 1, (1, "b"): 2, (2, "b"): 2,
                                       (2, "a"): 3}, {3}),
        TargetLanguage.APLUS_BPLUS: (3, {(0, "a"): 1, (1, "a"): 1, (1, "b"): 2,
                                         (2, "b"): 2}, {2}),
        TargetLanguage.A_BC_PLUS_A: (5, {(0, "a"): 1, (1, "b"): 2, (2, "c"): 3,
                                         (3, "b"): 2, (3, "a"): 4}, {4}),
    }[lang]
    n, transitions, accepting = table
    return Dfa(SIGMA, n, 0, transitions, frozenset(accepting))


def sample_language(lang: TargetLanguage, count: int, rng: np.random.Generator) -> set:
    """``count`` distinct member strings, redrawing on collisions."""
    if count < 1:
        raise ValueError("count must be >= 1")
    cap = lang.capacity()
    if count > cap:
        raise ValueError(f"{lang.name} has only {cap} members of length <= {MAX_LENGTH}, "
                         f"cannot draw {count} distinct strings")
    out = set()
    while len(out) < count:
        out.add(lang.draw(rng))
    return out


class Method(str, Enum):
    RP = "RP"
    EA = "EA"
    RPNI = "RPNI"  # single-DFA baseline


@dataclass(frozen=True)
class ExperimentConfig:
    languages: tuple
    density: float
    method: Method = Method.RP
    total_strings: int = 100
    seed: int = 0
    ea: Optional[EaConfig] = None

    def __post_init__(self):
        langs = tuple(TargetLanguage(l) if not isinstance(l, TargetLanguage) else l
                      for l in self.languages)
        if not langs or len(set(langs)) != len(langs):
            raise ValueError("languages must be a non-empty set of distinct targets")
        if not 0.0 < self.density < 1.0:
            raise ValueError(f"density must lie in (0, 1), got {self.density}")
        if self.total_strings < len(langs):
            raise ValueError("need at least one string per language")
        object.__setattr__(self, "languages", langs)
        object.__setattr__(self, "method", Method(self.method))

    @property
    def k(self) -> int:
        return len(self.languages)


def negative_strings(languages: Iterable[TargetLanguage]) -> frozenset:
    """Sigma^1 and Sigma^2 over {a, b, c}, minus members of the selected languages."""
    languages = list(languages)
    short = [s for s in SIGMA.strings(2) if s]
    return frozenset(s for s in short if not any(l.accepts(s) for l in languages))


def _split_evenly(total: int, parts: int) -> list[int]:
    base, extra = divmod(total, parts)
    return [base + (i < extra) for i in range(parts)]


def make_dataset(config: ExperimentConfig, rng: np.random.Generator):
    """Draw ``total_strings`` strings evenly over the languages and split them.

    The first ``ceil(density * total)`` draws (at least one per language) form
    the positive training sample; the remaining draws, with their language,
    form the test list.  Draws are independent, so a test draw may repeat a
    training string.
    """
    k = config.k
    per_lang = _split_evenly(config.total_strings, k)
    n_train = math.ceil(round(config.density * config.total_strings, 9))
    if n_train < 1:
        raise ValueError("density too low: empty training set")
    train_counts = [max(1, t) for t in _split_evenly(n_train, k)]
    positives, test = set(), []
    for lang, n, t in zip(config.languages, per_lang, train_counts):
        if t >= n:
            raise ValueError(f"density too high: no test strings left for {lang.name}")
        draws = [lang.draw(rng) for _ in range(n)]
        positives.update(draws[:t])
        test.extend((s, lang) for s in draws[t:])
    train = LabeledSample(frozenset(positives), negative_strings(config.languages), SIGMA)
    return train, test


def purity(test: Sequence[tuple], learned: Sequence[Dfa]) -> float:
    """(1/|T|) * sum over true languages of the best single DFA's hit count."""
    if not test:
        raise ValueError("purity of an empty test set is undefined")
    if not learned:
        return 0.0
    by_lang = {}
    for s, lang in test:
        by_lang.setdefault(lang, []).append(s)
    total = 0
    for strings in by_lang.values():
        total += max(sum(1 for s in strings if accepts(d, s)) for d in learned)
    return total / len(test)


RESULT_FIELDS = ["method", "k", "languages", "density", "seed", "purity", "dfa_count", "runtime_ms"]


@dataclass(frozen=True, order=True)
class PurityRow:
    method: str
    k: int
    languages: str
    density: float
    seed: int
    purity: float
    dfa_count: int
    runtime_ms: float

    def as_list(self):
        return [self.method, self.k, self.languages, f"{self.density:g}", self.seed,
                f"{self.purity:.6f}", self.dfa_count, f"{self.runtime_ms:.3f}"]


@dataclass
class PurityReport:
    rows: list = field(default_factory=list)
    errors: list = field(default_factory=list)  # (cell description, message)

    def summary(self) -> list[tuple]:
        """(method, k, density, runs, mean purity, population stddev)."""
        groups = {}
        for r in self.rows:
            groups.setdefault((r.method, r.k, r.density), []).append(r.purity)
        out = []
        for (method, k, density), vals in sorted(groups.items()):
            out.append((method, k, density, len(vals), statistics.fmean(vals),
                        statistics.pstdev(vals)))
        return out

    def write(self, out_dir) -> dict:
        out_dir = Path(out_dir)
        out_dir.mkdir(parents=True, exist_ok=True)
        paths = {"results": out_dir / "results.csv", "summary": out_dir / "summary.csv"}
        with open(paths["results"], "w", newline="") as fh:
            w = csv.writer(fh, lineterminator="\n")
            w.writerow(RESULT_FIELDS)
            w.writerows(r.as_list() for r in sorted(self.rows))
        with open(paths["summary"], "w", newline="") as fh:
            w = csv.writer(fh, lineterminator="\n")
            w.writerow(["method", "k", "density", "runs", "mean_purity", "std_purity"])
            for method, k, density, n, mean, std in self.summary():
                w.writerow([method, k, f"{density:g}", n, f"{mean:.6f}", f"{std:.6f}"])
        if self.errors:
            paths["errors"] = out_dir / "errors.csv"
            with open(paths["errors"], "w", newline="") as fh:
                w = csv.writer(fh, lineterminator="\n")
                w.writerow(["method", "k", "languages", "density", "seed", "error"])
                w.writerows(sorted(self.errors))
        return paths


def cell_seed(seed: int, languages: Sequence[TargetLanguage], density: float,
              method: Method) -> int:
    """Stable per-cell seed derived from every coordinate of the cell."""
    text = f"{seed}|{len(languages)}|{'+'.join(l.name for l in languages)}|{density!r}|{Method(method).value}"
    return int.from_bytes(hashlib.sha256(text.encode()).digest()[:8], "little")


def learn(method: Method, train: LabeledSample, k: int, ea: Optional[EaConfig] = None,
          seed: int = 0) -> list[Dfa]:
    method = Method(method)
    if method is Method.RP:
        return list(rpni_splitting(train, k).dfas)
    if method is Method.RPNI:
        return [standard_rpni(train)]
    cfg = ea or EaConfig(k=k, rng_seed=seed)
    cfg = replace(cfg, k=k, rng_seed=seed)
    result = evolve(train, cfg)
    return list(extract_solution(result.best, train).subs)


def run_cell(config: ExperimentConfig, timing: bool = True) -> PurityRow:
    seed = cell_seed(config.seed, config.languages, config.density, config.method)
    rng = np.random.default_rng(seed)
    train, test = make_dataset(config, rng)
    t0 = time.perf_counter()
    dfas = learn(config.method, train, config.k, config.ea, seed)
    elapsed = (time.perf_counter() - t0) * 1000 if timing else 0.0
    return PurityRow(config.method.value, config.k,
                     "+".join(l.name for l in config.languages), config.density,
                     config.seed, purity(test, dfas), len(dfas), elapsed)


def _run_cell_safe(args):
    config, timing = args
    try:
        return run_cell(config, timing), None
    except Exception as exc:  # one failing cell must not stop the grid
        desc = (config.method.value, config.k, "+".join(l.name for l in config.languages),
                f"{config.density:g}", config.seed)
        return None, (*desc, f"{type(exc).__name__}: {exc}")


def grid_cells(ks=(2, 3, 4, 5), densities=(0.02, 0.05, 0.10, 0.15, 0.20),
               methods=(Method.RP,), seeds=(0,), total_strings=100, ea=None,
               languages=tuple(TargetLanguage)):
    for k in ks:
        for subset in itertools.combinations(languages, k):
            for density in densities:
                for method in methods:
                    for seed in seeds:
                        yield ExperimentConfig(subset, density, Method(method),
                                               total_strings, seed, ea)


def run_grid(ks=(2, 3, 4, 5), densities=(0.02, 0.05, 0.10, 0.15, 0.20),
             methods=(Method.RP,), seeds=(0,), total_strings=100, ea=None,
             jobs: int = 1, timing: bool = True) -> PurityReport:
    cells = [(c, timing) for c in grid_cells(ks, densities, methods, seeds,
                                             total_strings, ea)]
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            outcomes = list(pool.map(_run_cell_safe, cells, chunksize=8))
    else:
        outcomes = [_run_cell_safe(c) for c in cells]
    report = PurityReport()
    for row, err in outcomes:
        if row is not None:
            report.rows.append(row)
        else:
            report.errors.append(err)
    report.rows.sort()
    return report
