"""Hand-transcribed automata and samples from the worked examples."""
from multidfa.automata import Alphabet, Dfa, LabeledSample

AB = Alphabet(("a", "b"))

THREE_GROUP_POSITIVES = frozenset(
    "aaaa aaaaaa aaaaaaa abba abbba abbbba abab ababab abababab".split()
)
THREE_GROUP_NEGATIVES = frozenset({"a", "b", "bb"})
THREE_GROUPS = [
    frozenset({"aaaa", "aaaaaa", "aaaaaaa"}),
    frozenset({"abba", "abbba", "abbbba"}),
    frozenset({"abab", "ababab", "abababab"}),
]

CLUSTER_POSITIVES = frozenset(
    "abab ababab abababab abbba abbbbba abbbbbbba".split()
)


def three_group_sample():
    return LabeledSample(THREE_GROUP_POSITIVES, THREE_GROUP_NEGATIVES, AB)


def rpni_target():
    """Standard RPNI result: init(accepting)=0, A=1, B=2, AA=3."""
    return Dfa(AB, 4, 0, {
        (0, "a"): 1, (0, "b"): 2,
        (1, "a"): 3, (1, "b"): 0,
        (2, "a"): 0, (2, "b"): 2,
        (3, "a"): 3,
    }, frozenset({0, 3}))


def split_targets():
    """The three RPNI-splitting results, top to bottom."""
    first = Dfa(AB, 3, 0, {(0, "a"): 1, (1, "a"): 2, (2, "a"): 2}, frozenset({2}))
    second = Dfa(AB, 3, 0, {(0, "a"): 0, (0, "b"): 1, (1, "b"): 1, (1, "a"): 2},
                 frozenset({2}))
    third = Dfa(AB, 3, 0, {(0, "a"): 0, (0, "b"): 1, (1, "a"): 2, (2, "a"): 2, (2, "b"): 2},
                frozenset({2}))
    return [first, second, third]


CLUSTER_PARENT_EDGES = [
    (0, "b", 1), (0, "a", 2), (1, "b", 3), (2, "a", 2), (2, "b", 3), (3, "b", 4),
    (3, "a", 5), (4, "b", 4), (4, "a", 6), (5, "b", 6), (6, "a", 7), (7, "b", 3),
]


def cluster_parent():
    return Dfa(AB, 8, 0, {(q, a): t for q, a, t in CLUSTER_PARENT_EDGES}, frozenset({3, 6}))


# (state pairs traversed, accepting state) for each distinct path
CLUSTER_RECORDS = {
    (frozenset({(0, 2), (2, 3), (3, 5), (5, 6)}), 6),
    (frozenset({(0, 2), (2, 3), (3, 5), (5, 6), (6, 7), (7, 3)}), 3),
    (frozenset({(0, 2), (2, 3), (3, 5), (5, 6), (6, 7), (7, 3)}), 6),
    (frozenset({(0, 2), (2, 3), (3, 4), (4, 4), (4, 6)}), 6),
}
