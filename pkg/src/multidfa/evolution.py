"""Multi-objective evolutionary DFA learning with transition clustering.

Individuals are genomes: a transition matrix (``-1`` marks an undefined
entry) and a 0/1 output array, with state 0 as the start state.  Each
individual gets two scores to minimize: ``f1 = 1 - accuracy`` and
``f2 = |1 - n/k|``, where ``n`` counts the distinct accepting paths that the
positive strings take through the automaton.
"""
from __future__ import annotations

import csv
import logging
from dataclasses import dataclass, field, fields
from pathlib import Path
from typing import Iterable, NamedTuple, Optional, Sequence

import numpy as np

from .automata import Alphabet, Dfa, LabeledSample, accuracy, build_pta, shortlex_key
from .nsga2 import fast_non_dominated_sort, rank_and_crowding, select_indices

logger = logging.getLogger(__name__)

UNDEFINED = -1


@dataclass(frozen=True, eq=False)
class Genome:
    alphabet: Alphabet
    matrix: np.ndarray
    output: np.ndarray

    def __post_init__(self):
        matrix = np.array(self.matrix, dtype=np.int64, copy=True)
        output = np.array(self.output, dtype=np.int8, copy=True)
        n = len(output)
        if n < 1:
            raise ValueError("a genome needs at least one state")
        if matrix.shape != (n, len(self.alphabet)):
            raise ValueError(f"matrix shape {matrix.shape} does not match "
                             f"{n} states x {len(self.alphabet)} symbols")
        if ((matrix < UNDEFINED) | (matrix >= n)).any():
            raise ValueError("matrix entry out of range")
        if not np.isin(output, (0, 1)).all():
            raise ValueError("output entries must be 0 or 1")
        matrix.flags.writeable = False
        output.flags.writeable = False
        object.__setattr__(self, "matrix", matrix)
        object.__setattr__(self, "output", output)

    @property
    def state_count(self) -> int:
        return len(self.output)

    def key(self) -> str:
        """Compact text form, used for caching and deterministic tie-breaks."""
        rows = ";".join(",".join(map(str, row)) for row in self.matrix.tolist())
        return f"{self.state_count}|{rows}|{''.join(map(str, self.output.tolist()))}"

    def __eq__(self, other):
        if not isinstance(other, Genome):
            return NotImplemented
        return (self.alphabet == other.alphabet
                and np.array_equal(self.matrix, other.matrix)
                and np.array_equal(self.output, other.output))

    def __hash__(self):
        return hash(self.key())

    def __repr__(self):
        return f"Genome({self.key()!r})"


class FitnessPair(NamedTuple):
    f1: float
    f2: float

    @classmethod
    def from_counts(cls, accuracy_value: float, n: int, k: int) -> "FitnessPair":
        if k < 1:
            raise ValueError("k must be >= 1")
        return cls(1.0 - accuracy_value, abs(1.0 - n / k))


@dataclass(frozen=True)
class EaConfig:
    k: int
    rng_seed: int
    population_size: int = 64
    max_generations: int = 500
    mutation_rate: float = 0.8
    output_mutation_share: float = 0.2
    crossover_rate: float = 0.9

    def __post_init__(self):
        if self.k < 1:
            raise ValueError("k must be >= 1")
        if self.population_size < 2:
            raise ValueError("population_size must be >= 2")
        if self.max_generations < 0:
            raise ValueError("max_generations must be >= 0")
        for name in ("mutation_rate", "output_mutation_share", "crossover_rate"):
            v = getattr(self, name)
            if not 0.0 <= v <= 1.0:
                raise ValueError(f"{name} must lie in [0, 1], got {v}")

    @classmethod
    def from_file(cls, path, **overrides) -> "EaConfig":
        """Read a flat ``key = value`` file; ``#`` starts a comment."""
        types = {f.name: f.type for f in fields(cls)}
        values = {}
        for lineno, raw in enumerate(Path(path).read_text().splitlines(), start=1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            key, sep, value = line.partition("=")
            key = key.strip()
            if not sep or key not in types:
                raise ValueError(f"{path}:{lineno}: bad config line {raw!r}")
            conv = float if types[key] in (float, "float") else int
            try:
                values[key] = conv(value.strip())
            except ValueError:
                raise ValueError(f"{path}:{lineno}: bad value for {key}: {value.strip()!r}") from None
        values.update({k: v for k, v in overrides.items() if v is not None})
        missing = [k for k in ("k", "rng_seed") if k not in values]
        if missing:
            raise ValueError(f"{path}: missing required keys {missing}")
        return cls(**values)


def encode(dfa: Dfa) -> Genome:
    if dfa.start != 0:
        raise ValueError("genomes require the start state to be 0")
    sym = {a: j for j, a in enumerate(dfa.alphabet)}
    matrix = np.full((dfa.state_count, len(dfa.alphabet)), UNDEFINED, dtype=np.int64)
    for (q, a), t in dfa.transitions.items():
        matrix[q, sym[a]] = t
    output = np.zeros(dfa.state_count, dtype=np.int8)
    output[list(dfa.accepting)] = 1
    return Genome(dfa.alphabet, matrix, output)


def decode(genome: Genome) -> Dfa:
    symbols = genome.alphabet.symbols
    transitions = {
        (q, symbols[j]): t
        for q, row in enumerate(genome.matrix.tolist())
        for j, t in enumerate(row)
        if t != UNDEFINED
    }
    accepting = frozenset(np.flatnonzero(genome.output).tolist())
    return Dfa(genome.alphabet, genome.state_count, 0, transitions, accepting)


def init_population(positives: Iterable[str], alphabet: Alphabet) -> list[Genome]:
    """One single-string PTA per positive string, in shortlex order."""
    positives = sorted(set(positives), key=shortlex_key)
    if not positives:
        raise ValueError("empty positive sample")
    return [encode(build_pta([s], alphabet)) for s in positives]


def mutate(genome: Genome, rng: np.random.Generator,
           output_mutation_share: float = 0.2) -> Genome:
    """Copy of ``genome`` with exactly one entry changed.

    Either one output bit is flipped, or one matrix cell gets a new value
    drawn uniformly from the other states and "undefined".
    """
    matrix = genome.matrix.copy()
    output = genome.output.copy()
    n, m = matrix.shape
    if m == 0 or rng.random() < output_mutation_share:
        i = rng.integers(n)
        output[i] = 1 - output[i]
    else:
        cell = rng.integers(n * m)
        q, j = divmod(int(cell), m)
        current = int(matrix[q, j])
        choices = [v for v in range(UNDEFINED, n) if v != current]
        matrix[q, j] = choices[rng.integers(len(choices))]
    return Genome(genome.alphabet, matrix, output)


def _pad(genome: Genome, n: int) -> tuple[np.ndarray, np.ndarray]:
    extra = n - genome.state_count
    m = len(genome.alphabet)
    matrix = np.vstack([genome.matrix, np.full((extra, m), UNDEFINED, dtype=np.int64)])
    output = np.concatenate([genome.output, np.zeros(extra, dtype=np.int8)])
    return matrix, output


def crossover(p1: Genome, p2: Genome, rng: Optional[np.random.Generator] = None,
              cut: Optional[int] = None) -> tuple[Genome, Genome]:
    """Single-point crossover over the row-major flattened matrices.

    Both parents are padded with undefined rows to the larger state count.
    The output arrays are cut at state ``cut // |alphabet|``.
    """
    if p1.alphabet != p2.alphabet:
        raise ValueError("crossover of genomes over different alphabets")
    n = max(p1.state_count, p2.state_count)
    m = len(p1.alphabet)
    m1, o1 = _pad(p1, n)
    m2, o2 = _pad(p2, n)
    flat1, flat2 = m1.ravel(), m2.ravel()
    if cut is None:
        cut = int(rng.integers(n * m + 1))
    if not 0 <= cut <= n * m:
        raise ValueError(f"cut {cut} outside [0, {n * m}]")
    s = cut // m if m else 0
    c1 = np.concatenate([flat1[:cut], flat2[cut:]]).reshape(n, m)
    c2 = np.concatenate([flat2[:cut], flat1[cut:]]).reshape(n, m)
    out1 = np.concatenate([o1[:s], o2[s:]])
    out2 = np.concatenate([o2[:s], o1[s:]])
    for c in (c1, c2):
        c[c >= n] = UNDEFINED
    return Genome(p1.alphabet, c1, out1), Genome(p1.alphabet, c2, out2)


class PathRecord(NamedTuple):
    transitions: frozenset  # of (src, symbol, dst)
    final: int
    strings: tuple

    @property
    def states(self) -> frozenset:
        out = {self.final}
        for q, _, t in self.transitions:
            out.update((q, t))
        return frozenset(out)


@dataclass(frozen=True)
class SubDfaSet:
    """Sub-automata extracted from one parent DFA.

    Each sub-DFA keeps the parent's state numbering; states off its path are
    isolated.
    """

    subs: list
    records: list = field(default_factory=list)

    def __len__(self):
        return len(self.subs)

    def __iter__(self):
        return iter(self.subs)


def _path(dfa: Dfa, s: str):
    q = dfa.start
    used = set()
    for ch in s:
        t = dfa.transitions.get((q, ch))
        if t is None:
            return None
        used.add((q, ch, t))
        q = t
    return frozenset(used), q


def transition_clustering(dfa: Dfa, positives: Iterable[str]) -> SubDfaSet:
    """Group accepted positives by (transitions used, final state)."""
    groups = {}
    for s in sorted(set(positives), key=shortlex_key):
        p = _path(dfa, s)
        if p is None or p[1] not in dfa.accepting:
            continue
        groups.setdefault(p, []).append(s)
    subs, records = [], []
    for (used, final), strings in groups.items():
        subs.append(Dfa(dfa.alphabet, dfa.state_count, dfa.start,
                        {(q, a): t for q, a, t in used}, frozenset([final])))
        records.append(PathRecord(used, final, tuple(strings)))
    return SubDfaSet(subs, records)


def count_paths(dfa: Dfa, positives: Iterable[str]) -> int:
    return len(transition_clustering(dfa, positives))


def fitness(genome: Genome, sample: LabeledSample, k: int) -> FitnessPair:
    dfa = decode(genome)
    return FitnessPair.from_counts(accuracy(dfa, sample),
                                   count_paths(dfa, sample.positives), k)


def extract_solution(best: Genome, sample: LabeledSample) -> SubDfaSet:
    return transition_clustering(decode(best), sample.positives)


@dataclass
class EvolutionResult:
    best: Genome
    fitness: FitnessPair
    history: list          # best FitnessPair per generation, generation 0 first
    front_sizes: list      # size of the first Pareto front per generation

    @property
    def generations(self) -> int:
        return len(self.history) - 1

    def write_history(self, path) -> None:
        with open(path, "w", newline="") as fh:
            w = csv.writer(fh, lineterminator="\n")
            w.writerow(["generation", "best_f1", "best_f2", "front_size"])
            for gen, (fp, size) in enumerate(zip(self.history, self.front_sizes)):
                w.writerow([gen, repr(fp.f1), repr(fp.f2), size])


def _best(pop, scores):
    i = min(range(len(pop)), key=lambda i: (scores[i], pop[i].key()))
    return pop[i], scores[i]


def _tournament(rng, rank, crowd):
    i, j = (int(x) for x in rng.integers(len(rank), size=2))
    if (rank[i], -crowd[i], i) <= (rank[j], -crowd[j], j):
        return i
    return j


def evolve(sample: LabeledSample, config: EaConfig) -> EvolutionResult:
    """Run the (mu + lambda) NSGA-II loop from one single-string PTA per positive.

    Stops as soon as some individual scores (0, 0), or after
    ``config.max_generations`` generations.  The random stream is consumed
    in a fixed order, so equal configs give equal results.
    """
    rng = np.random.default_rng(config.rng_seed)
    cache = {}

    def score(g):
        key = g.key()
        if key not in cache:
            cache[key] = fitness(g, sample, config.k)
        return cache[key]

    pop = init_population(sample.positives, sample.alphabet)
    scores = [score(g) for g in pop]
    if len(pop) > config.population_size:
        keep = select_indices(scores, config.population_size)
        pop, scores = [pop[i] for i in keep], [scores[i] for i in keep]

    history, front_sizes = [], []

    def record():
        history.append(_best(pop, scores)[1])
        front_sizes.append(len(fast_non_dominated_sort(scores)[0]))

    record()
    for gen in range(1, config.max_generations + 1):
        if history[-1] == (0.0, 0.0):
            break
        rank, crowd = rank_and_crowding(scores)
        offspring = []
        while len(offspring) < config.population_size:
            a = pop[_tournament(rng, rank, crowd)]
            b = pop[_tournament(rng, rank, crowd)]
            if rng.random() < config.crossover_rate:
                a, b = crossover(a, b, rng)
            for child in (a, b):
                if rng.random() < config.mutation_rate:
                    child = mutate(child, rng, config.output_mutation_share)
                offspring.append(child)
        offspring = offspring[: config.population_size]
        pool = pop + offspring
        pool_scores = scores + [score(g) for g in offspring]
        keep = select_indices(pool_scores, config.population_size)
        pop = [pool[i] for i in keep]
        scores = [pool_scores[i] for i in keep]
        record()
        logger.debug("generation %d best %s", gen, history[-1])
    best, best_fit = _best(pop, scores)
    return EvolutionResult(best, best_fit, history, front_sizes)
