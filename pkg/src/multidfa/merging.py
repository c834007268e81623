"""Red/blue state merging (RPNI) and RPNI-splitting.

The merge loop works on a mutable hypothesis whose states keep their PTA
indices, so every state still knows the access string (PTA prefix) it was
created for.  Blue states are always roots of tree-shaped suffixes, which is
what lets ``fold`` run without union-find.

Blue states are chosen in alphabetical (plain lexicographic) order of their
access strings.  Red states are tried in the same order.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import Iterable, Mapping, Optional

from .automata import Dfa, LabeledSample, prefixes, shortlex_key

logger = logging.getLogger(__name__)


class _Hypothesis:
    """Mutable working automaton used inside the merge loop."""

    __slots__ = ("delta", "accepting", "rejecting", "provenance")

    def __init__(self, delta, accepting, rejecting, provenance):
        self.delta = delta            # state -> {symbol: state}
        self.accepting = accepting    # set of states
        self.rejecting = rejecting    # set of states (reject marks, usually empty)
        self.provenance = provenance  # accepting state -> frozenset of S+ strings

    def copy(self):
        return _Hypothesis(
            {q: dict(row) for q, row in self.delta.items()},
            set(self.accepting),
            set(self.rejecting),
            dict(self.provenance),
        )

    def __len__(self):
        return len(self.delta)

    def run(self, s):
        q = 0
        delta = self.delta
        for ch in s:
            q = delta[q].get(ch)
            if q is None:
                return None
        return q

    def accepts_any(self, strings):
        acc = self.accepting
        for s in strings:
            q = self.run(s)
            if q is not None and q in acc:
                return True
        return False

    def successors(self, states):
        out = set()
        for q in states:
            out.update(self.delta[q].values())
        return out

    def to_dfa(self, alphabet):
        ids = {q: i for i, q in enumerate(sorted(self.delta))}
        transitions = {
            (ids[q], a): ids[t] for q, row in self.delta.items() for a, t in row.items()
        }
        return Dfa(alphabet, len(ids), ids[0], transitions,
                   frozenset(ids[q] for q in self.accepting))

    @classmethod
    def from_dfa(cls, dfa: Dfa, provenance=None, rejecting=()):
        delta = {q: {} for q in range(dfa.state_count)}
        for (q, a), t in dfa.transitions.items():
            delta[q][a] = t
        prov = {q: frozenset() for q in dfa.accepting}
        if provenance:
            prov.update({q: frozenset(v) for q, v in provenance.items()})
        return cls(delta, set(dfa.accepting), set(rejecting), prov)


def _pta(positives, alphabet, marked_negatives=()):
    """PTA hypothesis plus the access string of each state.

    With ``marked_negatives`` the tree also covers those strings and their end
    states carry reject marks.
    """
    words = set(positives) | set(marked_negatives)
    ordered = sorted(prefixes(words), key=shortlex_key)
    index = {p: i for i, p in enumerate(ordered)}
    delta = {i: {} for i in range(len(ordered))}
    for p in ordered:
        if p:
            delta[index[p[:-1]]][p[-1]] = index[p]
    accepting = {index[s] for s in positives}
    provenance = {index[s]: frozenset([s]) for s in positives}
    rejecting = {index[s] for s in marked_negatives}
    return _Hypothesis(delta, accepting, rejecting, provenance), ordered


def _merge(h: _Hypothesis, red: int, blue: int) -> Optional[_Hypothesis]:
    """Redirect the edge into ``blue`` onto ``red`` and fold blue's subtree.

    Returns a new hypothesis, or None when folding joins an accepting state
    with a reject-marked one.
    """
    m = h.copy()
    for row in m.delta.values():
        for a, t in row.items():
            if t == blue:
                row[a] = red
    stack = [(red, blue)]
    while stack:
        r, b = stack.pop()
        if b in m.accepting:
            if r in m.rejecting:
                return None
            m.accepting.add(r)
            m.accepting.discard(b)
            m.provenance[r] = m.provenance.get(r, frozenset()) | m.provenance.pop(b)
        if b in m.rejecting:
            if r in m.accepting:
                return None
            m.rejecting.add(r)
            m.rejecting.discard(b)
        rrow = m.delta[r]
        for a, bt in m.delta.pop(b).items():
            rt = rrow.get(a)
            if rt is None:
                rrow[a] = bt
            else:
                stack.append((rt, bt))
    return m


@dataclass(frozen=True)
class MergeContext:
    """Red/blue bookkeeping over a hypothesis DFA.

    ``access`` holds the PTA prefix each state was created for; ``provenance``
    maps accepting states to the positive strings folded into them.
    """

    dfa: Dfa
    red: tuple[int, ...]
    blue: tuple[int, ...]
    provenance: Mapping[int, frozenset] = field(default_factory=dict)
    access: Mapping[int, str] = field(default_factory=dict)

    @classmethod
    def initial(cls, sample: LabeledSample) -> "MergeContext":
        h, ordered = _pta(sample.positives, sample.alphabet)
        dfa = h.to_dfa(sample.alphabet)
        blue = tuple(sorted(h.successors([0]) - {0}, key=lambda q: ordered[q]))
        return cls(dfa, (0,), blue, dict(h.provenance), dict(enumerate(ordered)))


def merge_fold(dfa: Dfa, red_state: int, blue_state: int, provenance=None,
               rejecting=()) -> Optional[tuple[Dfa, dict]]:
    """Merge ``blue_state`` into ``red_state`` and fold its subtree.

    States of the result are renumbered by increasing original index.
    Returns ``None`` if the fold hits a reject mark.
    """
    h = _Hypothesis.from_dfa(dfa, provenance, rejecting)
    m = _merge(h, red_state, blue_state)
    if m is None:
        return None
    ids = {q: i for i, q in enumerate(sorted(m.delta))}
    out = m.to_dfa(dfa.alphabet)
    return out, {ids[q]: v for q, v in m.provenance.items()}


def rpni_compatible(dfa: Dfa, negatives: Iterable[str]) -> bool:
    h = _Hypothesis.from_dfa(dfa)
    return not h.accepts_any(negatives)


def choose(blue: Iterable[int], access: Mapping[int, str]) -> int:
    """The blue state whose access string comes first alphabetically."""
    blue = list(blue)
    if not blue:
        raise ValueError("choose from an empty blue set")
    return min(blue, key=lambda q: (access[q], q))


def promote(blue_state: int, context: MergeContext) -> MergeContext:
    if blue_state not in context.blue:
        raise ValueError(f"state {blue_state} is not blue")
    red = context.red + (blue_state,)
    h = _Hypothesis.from_dfa(context.dfa)
    blue = h.successors(red) - set(red)
    blue = tuple(sorted(blue, key=lambda q: (context.access.get(q, ""), q)))
    return MergeContext(context.dfa, red, blue, context.provenance, context.access)


@dataclass
class _Run:
    hypothesis: _Hypothesis
    merges: int = 0
    extracted: Optional[frozenset] = None


def _red_blue(positives, negatives, alphabet, k=1, reject_marks=False) -> _Run:
    """Run the red/blue loop; with k > 1 stop at the first big merge."""
    h, access = _pta(positives, alphabet, negatives if reject_marks else ())
    key = access.__getitem__
    n_pos = len(positives)
    red = [0]
    blue = sorted(h.successors(red) - {0}, key=key)
    merges = 0
    while blue:
        qb = min(blue, key=key)
        blue.remove(qb)
        merged = None
        for qr in sorted(red, key=key):
            m = _merge(h, qr, qb)
            if m is not None and not m.accepts_any(negatives):
                merged = m
                break
        if merged is not None:
            if k > 1:
                removed = h.delta.keys() - merged.delta.keys()
                lost = frozenset().union(
                    *(h.provenance[q] for q in removed if q in h.accepting))
                shrink = len(h) - len(merged)
                # a split needs positives to learn the sub-solution from
                if lost and (len(lost) * k >= n_pos or shrink * k >= len(h)):
                    logger.debug("big merge %r <- %r: %d strings, %d states",
                                 access[qr], access[qb], len(lost), shrink)
                    return _Run(h, merges, lost)
            h = merged
            merges += 1
        else:
            red.append(qb)
        red_set = set(red)
        blue = sorted(h.successors(red) - red_set, key=key)
    return _Run(h, merges)


def standard_rpni(sample: LabeledSample, reject_marks: bool = False) -> Dfa:
    """Plain RPNI with the red/blue framework.

    With ``reject_marks`` the prefix tree also covers the negatives and merges
    that join an accepting and a rejecting state fail during folding.
    """
    if not sample.positives:
        raise ValueError("empty positive sample")
    return _red_blue(sample.positives, sample.negatives, sample.alphabet,
                     reject_marks=reject_marks).hypothesis.to_dfa(sample.alphabet)


def count_merges(sample: LabeledSample) -> int:
    """Number of merges plain RPNI commits on ``sample``."""
    return _red_blue(sample.positives, sample.negatives, sample.alphabet).merges


@dataclass(frozen=True)
class SplitResult:
    dfas: list
    assignments: list

    def __len__(self):
        return len(self.dfas)

    def __iter__(self):
        return iter(zip(self.dfas, self.assignments))


def rpni_splitting(sample: LabeledSample, k: int, reject_marks: bool = False) -> SplitResult:
    """Learn at most ``k`` DFAs, extracting a sub-solution at each big merge.

    A merge is big when the accepting states it eliminates carry at least
    |S+|/k positive strings, or when it removes at least |Q|/k states.  The
    eliminated strings are learned separately against S-, then the search
    restarts on the remaining positives with the extracted strings added to
    the negatives and ``k // 2``.
    """
    if not isinstance(k, int) or k < 1:
        raise ValueError(f"k must be a positive integer, got {k!r}")
    dfas, assignments = [], []
    positives, negatives = frozenset(sample.positives), frozenset(sample.negatives)
    alphabet = sample.alphabet
    while positives:
        res = _red_blue(positives, negatives, alphabet, k, reject_marks)
        if res.extracted is None:
            dfas.append(res.hypothesis.to_dfa(alphabet))
            assignments.append(positives)
            break
        extracted = res.extracted
        sub = _red_blue(extracted, negatives, alphabet, reject_marks=reject_marks)
        dfas.append(sub.hypothesis.to_dfa(alphabet))
        assignments.append(extracted)
        positives = positives - extracted
        negatives = negatives | extracted
        k //= 2
    return SplitResult(dfas, assignments)

