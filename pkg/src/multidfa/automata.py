"""Deterministic finite automata with a partial transition function.

States are integers ``0 .. state_count - 1``.  A missing transition rejects.
All types here are immutable once built; operations are pure functions.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from itertools import product
from typing import Iterable, Iterator, Mapping, Optional


def shortlex_key(s: str) -> tuple[int, str]:
    return (len(s), s)


def prefixes(strings: Iterable[str]) -> set[str]:
    out = set()
    for s in strings:
        for i in range(len(s) + 1):
            out.add(s[:i])
    return out


@dataclass(frozen=True)
class Alphabet:
    """Ordered set of distinct single-character symbols."""

    symbols: tuple[str, ...]

    def __post_init__(self):
        syms = tuple(self.symbols)
        if len(set(syms)) != len(syms):
            raise ValueError(f"duplicate symbols in alphabet: {syms!r}")
        for s in syms:
            if not isinstance(s, str) or len(s) != 1:
                raise ValueError(f"symbols must be single characters, got {s!r}")
        object.__setattr__(self, "symbols", tuple(sorted(syms)))

    @classmethod
    def from_strings(cls, *groups: Iterable[str]) -> "Alphabet":
        seen = set()
        for group in groups:
            for s in group:
                seen.update(s)
        return cls(tuple(seen))

    def index(self, symbol: str) -> int:
        return self.symbols.index(symbol)

    def check(self, s: str) -> None:
        for ch in s:
            if ch not in self.symbols:
                raise ValueError(f"symbol {ch!r} of {s!r} is not in the alphabet")

    def strings(self, max_len: int) -> Iterator[str]:
        """All strings of length <= max_len in shortlex order."""
        for n in range(max_len + 1):
            for t in product(self.symbols, repeat=n):
                yield "".join(t)

    def __iter__(self):
        return iter(self.symbols)

    def __len__(self):
        return len(self.symbols)

    def __contains__(self, symbol):
        return symbol in self.symbols


@dataclass(frozen=True, eq=True)
class Dfa:
    """A DFA ``(alphabet, states, start, delta, accepting)``.

    ``transitions`` maps ``(state, symbol)`` to a target state; undefined
    pairs are simply absent.
    """

    alphabet: Alphabet
    state_count: int
    start: int
    transitions: Mapping[tuple[int, str], int] = field(default_factory=dict)
    accepting: frozenset[int] = frozenset()

    def __post_init__(self):
        n = self.state_count
        if n < 1:
            raise ValueError("a DFA needs at least one state")
        if not 0 <= self.start < n:
            raise ValueError(f"start state {self.start} out of range")
        trans = dict(self.transitions)
        for (q, a), t in trans.items():
            if not 0 <= q < n or not 0 <= t < n:
                raise ValueError(f"transition ({q}, {a!r}) -> {t} out of range")
            if a not in self.alphabet:
                raise ValueError(f"transition symbol {a!r} not in alphabet")
        acc = frozenset(self.accepting)
        for q in acc:
            if not 0 <= q < n:
                raise ValueError(f"accepting state {q} out of range")
        object.__setattr__(self, "transitions", trans)
        object.__setattr__(self, "accepting", acc)

    __hash__ = None

    def delta(self, state: int, symbol: str) -> Optional[int]:
        return self.transitions.get((state, symbol))

    def edges(self) -> list[tuple[int, str, int]]:
        """Transitions as sorted ``(src, symbol, dst)`` triples."""
        order = {a: i for i, a in enumerate(self.alphabet)}
        return sorted(
            ((q, a, t) for (q, a), t in self.transitions.items()),
            key=lambda e: (e[0], order[e[1]]),
        )

    def __repr__(self):
        return (f"Dfa(states={self.state_count}, start={self.start}, "
                f"accepting={sorted(self.accepting)}, edges={len(self.transitions)})")


@dataclass(frozen=True)
class LabeledSample:
    """Positive and negative strings plus the alphabet they are written in."""

    positives: frozenset[str]
    negatives: frozenset[str]
    alphabet: Alphabet = None

    def __post_init__(self):
        pos = frozenset(self.positives)
        neg = frozenset(self.negatives)
        both = pos & neg
        if both:
            raise ValueError(f"strings labeled both positive and negative: {sorted(both)}")
        alphabet = self.alphabet
        if alphabet is None:
            alphabet = Alphabet.from_strings(pos, neg)
        for s in pos | neg:
            alphabet.check(s)
        object.__setattr__(self, "positives", pos)
        object.__setattr__(self, "negatives", neg)
        object.__setattr__(self, "alphabet", alphabet)

    def __len__(self):
        return len(self.positives) + len(self.negatives)


def build_pta(positives: Iterable[str], alphabet: Optional[Alphabet] = None) -> Dfa:
    """Prefix tree acceptor of ``positives``; states numbered in shortlex order."""
    positives = set(positives)
    if not positives:
        raise ValueError("empty positive sample")
    if alphabet is None:
        alphabet = Alphabet.from_strings(positives)
    for s in positives:
        alphabet.check(s)
    ordered = sorted(prefixes(positives), key=shortlex_key)
    index = {p: i for i, p in enumerate(ordered)}
    transitions = {(index[p[:-1]], p[-1]): index[p] for p in ordered if p}
    accepting = frozenset(index[s] for s in positives)
    return Dfa(alphabet, len(ordered), 0, transitions, accepting)


def run(dfa: Dfa, s: str) -> Optional[int]:
    q = dfa.start
    trans = dfa.transitions
    for ch in s:
        q = trans.get((q, ch))
        if q is None:
            return None
    return q


def accepts(dfa: Dfa, s: str) -> bool:
    q = run(dfa, s)
    return q is not None and q in dfa.accepting


def accuracy(dfa: Dfa, sample: LabeledSample) -> float:
    total = len(sample.positives) + len(sample.negatives)
    if total == 0:
        raise ValueError("accuracy of an empty sample is undefined")
    correct = sum(1 for s in sample.positives if accepts(dfa, s))
    correct += sum(1 for s in sample.negatives if not accepts(dfa, s))
    return correct / total


def union(dfas: Iterable[Dfa], alphabet: Optional[Alphabet] = None) -> Dfa:
    """Product DFA accepting the union of the given languages."""
    dfas = list(dfas)
    if alphabet is None:
        if not dfas:
            raise ValueError("union of no automata needs an explicit alphabet")
        alphabet = dfas[0].alphabet
    for d in dfas:
        if d.alphabet != alphabet:
            raise ValueError("alphabet mismatch in union")
    start = tuple(d.start for d in dfas)
    index = {start: 0}
    queue = deque([start])
    transitions = {}
    accepting = set()
    while queue:
        tup = queue.popleft()
        i = index[tup]
        if any(q is not None and q in d.accepting for d, q in zip(dfas, tup)):
            accepting.add(i)
        for a in alphabet:
            nxt = tuple(None if q is None else d.delta(q, a) for d, q in zip(dfas, tup))
            if all(q is None for q in nxt):
                continue
            if nxt not in index:
                index[nxt] = len(index)
                queue.append(nxt)
            transitions[(i, a)] = index[nxt]
    return Dfa(alphabet, len(index), 0, transitions, frozenset(accepting))


def difference_witness(a: Dfa, b: Dfa, max_len: int) -> Optional[str]:
    """Shortlex-smallest string of length <= max_len on which a and b disagree.

    Breadth-first search over the product automaton; ``None`` stands for the
    implicit rejecting sink of a partial DFA.
    """
    if a.alphabet != b.alphabet:
        raise ValueError("alphabet mismatch")
    if max_len < 0:
        raise ValueError("max_len must be non-negative")

    def acc(d, q):
        return q is not None and q in d.accepting

    start = (a.start, b.start)
    seen = {start}
    frontier = [(start, "")]
    for depth in range(max_len + 1):
        nxt = []
        for (p, q), w in frontier:
            if acc(a, p) != acc(b, q):
                return w
            if depth == max_len:
                continue
            for sym in a.alphabet:
                pair = (
                    None if p is None else a.delta(p, sym),
                    None if q is None else b.delta(q, sym),
                )
                if pair == (None, None) or pair in seen:
                    continue
                seen.add(pair)
                nxt.append((pair, w + sym))
        frontier = nxt
        if not frontier:
            break
    return None


def equivalent_upto(a: Dfa, b: Dfa, max_len: int) -> bool:
    return difference_witness(a, b, max_len) is None


def trim(dfa: Dfa) -> Dfa:
    """Keep only states reachable from the start, renumbered in BFS order."""
    order = {dfa.start: 0}
    queue = deque([dfa.start])
    while queue:
        q = queue.popleft()
        for a in dfa.alphabet:
            t = dfa.delta(q, a)
            if t is not None and t not in order:
                order[t] = len(order)
                queue.append(t)
    transitions = {
        (order[q], a): order[t]
        for (q, a), t in dfa.transitions.items()
        if q in order
    }
    accepting = frozenset(order[q] for q in dfa.accepting if q in order)
    return Dfa(dfa.alphabet, len(order), 0, transitions, accepting)
