"""scikit-learn style front ends for the learners.

``X`` is a sequence of strings and ``y`` the matching 0/1 labels.  The
multi-DFA learners predict, for each string, the index of the first learned
DFA that accepts it (``-1`` when none does); ``transform`` returns the full
string-by-DFA membership matrix.
"""
from __future__ import annotations

import numpy as np
from sklearn.base import BaseEstimator, ClassifierMixin, TransformerMixin
from sklearn.exceptions import NotFittedError

from .automata import Alphabet, LabeledSample, accepts
from .evolution import EaConfig, evolve, extract_solution
from .merging import rpni_splitting, standard_rpni


def check_strings(X) -> list[str]:
    if isinstance(X, str):
        raise TypeError("expected a sequence of strings, got a single string")
    X = list(np.asarray(X, dtype=object).ravel()) if not isinstance(X, list) else X
    for s in X:
        if not isinstance(s, str):
            raise TypeError(f"expected strings, got {type(s).__name__}: {s!r}")
    return list(X)


def check_labeled_strings(X, y, alphabet=None) -> LabeledSample:
    """Validate ``X``/``y`` and turn them into a labeled sample."""
    X = check_strings(X)
    y = np.asarray(y).ravel()
    if len(X) != len(y):
        raise ValueError(f"X has {len(X)} strings but y has {len(y)} labels")
    if not np.isin(y, (0, 1)).all():
        raise ValueError("labels must be 0 or 1")
    pos = frozenset(s for s, label in zip(X, y) if label == 1)
    neg = frozenset(s for s, label in zip(X, y) if label == 0)
    if not pos:
        raise ValueError("no positive strings")
    if alphabet is not None and not isinstance(alphabet, Alphabet):
        alphabet = Alphabet(tuple(alphabet))
    return LabeledSample(pos, neg, alphabet)


def _check_fitted(est, attr):
    if not hasattr(est, attr):
        raise NotFittedError(f"{type(est).__name__} is not fitted yet; call fit first")


class _MultiDfaMixin(TransformerMixin):
    def transform(self, X):
        _check_fitted(self, "dfas_")
        X = check_strings(X)
        return np.array([[accepts(d, s) for d in self.dfas_] for s in X],
                        dtype=int).reshape(len(X), len(self.dfas_))

    def predict(self, X):
        member = self.transform(X)
        hit = member.any(axis=1)
        return np.where(hit, member.argmax(axis=1), -1)


class StandardRPNI(ClassifierMixin, BaseEstimator):
    """Single DFA learned by red/blue RPNI."""

    def __init__(self, alphabet=None, reject_marks=False):
        self.alphabet = alphabet
        self.reject_marks = reject_marks

    def fit(self, X, y):
        sample = check_labeled_strings(X, y, self.alphabet)
        self.dfa_ = standard_rpni(sample, reject_marks=self.reject_marks)
        self.alphabet_ = sample.alphabet
        self.classes_ = np.array([0, 1])
        return self

    def predict(self, X):
        _check_fitted(self, "dfa_")
        return np.array([int(accepts(self.dfa_, s)) for s in check_strings(X)], dtype=int)


class RPNISplitting(_MultiDfaMixin, BaseEstimator):
    """Up to ``k`` DFAs obtained by splitting RPNI at big merges."""

    def __init__(self, k=2, alphabet=None, reject_marks=False):
        self.k = k
        self.alphabet = alphabet
        self.reject_marks = reject_marks

    def fit(self, X, y):
        sample = check_labeled_strings(X, y, self.alphabet)
        result = rpni_splitting(sample, self.k, reject_marks=self.reject_marks)
        self.dfas_ = list(result.dfas)
        self.assignments_ = list(result.assignments)
        self.alphabet_ = sample.alphabet
        return self


class EvolutionaryDFALearner(_MultiDfaMixin, BaseEstimator):
    """Multi-objective EA; the sub-DFAs come from clustering the best individual's paths."""

    def __init__(self, k=2, population_size=64, max_generations=500, mutation_rate=0.8,
                 output_mutation_share=0.2, crossover_rate=0.9, random_state=None,
                 alphabet=None):
        self.k = k
        self.population_size = population_size
        self.max_generations = max_generations
        self.mutation_rate = mutation_rate
        self.output_mutation_share = output_mutation_share
        self.crossover_rate = crossover_rate
        self.random_state = random_state
        self.alphabet = alphabet

    def fit(self, X, y):
        if self.random_state is None:
            raise ValueError("random_state must be set explicitly")
        sample = check_labeled_strings(X, y, self.alphabet)
        config = EaConfig(
            k=self.k,
            rng_seed=self.random_state,
            population_size=self.population_size,
            max_generations=self.max_generations,
            mutation_rate=self.mutation_rate,
            output_mutation_share=self.output_mutation_share,
            crossover_rate=self.crossover_rate,
        )
        result = evolve(sample, config)
        subs = extract_solution(result.best, sample)
        self.best_ = result.best
        self.fitness_ = result.fitness
        self.history_ = result.history
        self.dfas_ = list(subs.subs)
        self.records_ = list(subs.records)
        self.alphabet_ = sample.alphabet
        return self
