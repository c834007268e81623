"""Text formats: canonical DFA documents, DOT export and Abbadingo-style samples.

DFA document, one ``key: value`` per line::

    alphabet: a b
    states: 3
    start: 0
    accepting: 2
    transition: 0 a 1
    transition: 1 b 2

Blank lines and ``#`` comments are ignored when reading.  ``serialize``
always writes transitions ordered by (state, symbol).
"""
from __future__ import annotations

from pathlib import Path
from typing import Union

from .automata import Alphabet, Dfa, LabeledSample, shortlex_key


class FormatError(ValueError):
    """Malformed DFA document or sample file."""

    def __init__(self, message, line=None, source=None):
        self.line = line
        self.source = source
        where = ""
        if source is not None:
            where += f"{source}:"
        if line is not None:
            where += f"{line}:"
        super().__init__(f"{where} {message}" if where else message)


def serialize(dfa: Dfa) -> str:
    lines = [
        "alphabet: " + " ".join(dfa.alphabet),
        f"states: {dfa.state_count}",
        f"start: {dfa.start}",
        "accepting: " + " ".join(str(q) for q in sorted(dfa.accepting)),
    ]
    lines.extend(f"transition: {q} {a} {t}" for q, a, t in dfa.edges())
    return "\n".join(line.rstrip() for line in lines) + "\n"


def deserialize(text: str, source=None) -> Dfa:
    header = {}
    transitions = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        key, sep, value = line.partition(":")
        if not sep:
            raise FormatError(f"expected 'key: value', got {raw!r}", lineno, source)
        key = key.strip()
        fields = value.split()
        try:
            if key == "transition":
                if len(fields) != 3:
                    raise FormatError("transition needs 'src symbol dst'", lineno, source)
                src, sym, dst = int(fields[0]), fields[1], int(fields[2])
                if (src, sym) in transitions:
                    raise FormatError(f"duplicate transition ({src}, {sym})", lineno, source)
                transitions[(src, sym)] = dst
            elif key in ("alphabet", "states", "start", "accepting"):
                if key in header:
                    raise FormatError(f"duplicate key {key!r}", lineno, source)
                if key == "alphabet":
                    header[key] = Alphabet(tuple(fields))
                elif key == "accepting":
                    header[key] = frozenset(int(f) for f in fields)
                else:
                    if len(fields) != 1:
                        raise FormatError(f"{key} takes one integer", lineno, source)
                    header[key] = int(fields[0])
            else:
                raise FormatError(f"unknown key {key!r}", lineno, source)
        except FormatError:
            raise
        except ValueError as exc:
            raise FormatError(str(exc), lineno, source) from None
    missing = [k for k in ("alphabet", "states", "start") if k not in header]
    if missing:
        raise FormatError(f"missing keys: {', '.join(missing)}", None, source)
    try:
        return Dfa(
            header["alphabet"],
            header["states"],
            header["start"],
            transitions,
            header.get("accepting", frozenset()),
        )
    except ValueError as exc:
        raise FormatError(str(exc), None, source) from None


def to_dot(dfa: Dfa, name: str = "dfa") -> str:
    out = [f"digraph {name} {{", "    rankdir=LR;", '    __start [shape=point, label=""];']
    for q in range(dfa.state_count):
        shape = "doublecircle" if q in dfa.accepting else "circle"
        out.append(f"    {q} [shape={shape}];")
    out.append(f"    __start -> {dfa.start};")
    # one edge per (src, dst) with the symbols joined
    labels = {}
    for q, a, t in dfa.edges():
        labels.setdefault((q, t), []).append(a)
    for (q, t), syms in labels.items():
        out.append(f'    {q} -> {t} [label="{",".join(syms)}"];')
    out.append("}")
    return "\n".join(out) + "\n"


def read_dfa(path: Union[str, Path]) -> Dfa:
    path = Path(path)
    return deserialize(path.read_text(encoding="utf-8"), source=str(path))


def write_dfa(dfa: Dfa, path: Union[str, Path]) -> None:
    Path(path).write_text(serialize(dfa), encoding="utf-8")


def format_sample(sample: LabeledSample) -> str:
    """Abbadingo-style text: ``count alphabet_size`` then ``label length sym...``."""
    rows = [(1, s) for s in sorted(sample.positives, key=shortlex_key)]
    rows += [(0, s) for s in sorted(sample.negatives, key=shortlex_key)]
    lines = [f"{len(rows)} {len(sample.alphabet)}"]
    for label, s in rows:
        lines.append(" ".join([str(label), str(len(s)), *s]))
    return "\n".join(lines) + "\n"


def parse_sample(text: str, source=None, alphabet=None) -> LabeledSample:
    lines = [(i, ln.strip()) for i, ln in enumerate(text.splitlines(), start=1)]
    lines = [(i, ln) for i, ln in lines if ln]
    if not lines:
        raise FormatError("empty sample file", None, source)
    lineno, head = lines[0]
    try:
        count, alpha_size = (int(f) for f in head.split())
    except ValueError:
        raise FormatError(f"bad header {head!r}, expected '<count> <alphabet_size>'",
                          lineno, source) from None
    body = lines[1:]
    if len(body) != count:
        raise FormatError(f"header announces {count} strings, found {len(body)}",
                          lineno, source)
    pos, neg = set(), set()
    for lineno, line in body:
        fields = line.split()
        try:
            label, length = int(fields[0]), int(fields[1])
        except (ValueError, IndexError):
            raise FormatError(f"bad string line {line!r}", lineno, source) from None
        syms = fields[2:]
        if label not in (0, 1):
            raise FormatError(f"label must be 0 or 1, got {label}", lineno, source)
        if len(syms) != length:
            raise FormatError(f"declared length {length} but {len(syms)} symbols",
                              lineno, source)
        if any(len(s) != 1 for s in syms):
            raise FormatError("symbols must be single characters", lineno, source)
        s = "".join(syms)
        (pos if label == 1 else neg).add(s)
    if pos & neg:
        raise FormatError(f"strings labeled both ways: {sorted(pos & neg)}", None, source)
    if alphabet is None:
        alphabet = Alphabet.from_strings(pos, neg)
        if len(alphabet) > alpha_size:
            raise FormatError(
                f"header alphabet size {alpha_size} but {len(alphabet)} symbols used",
                None, source)
    try:
        return LabeledSample(frozenset(pos), frozenset(neg), alphabet)
    except ValueError as exc:
        raise FormatError(str(exc), None, source) from None


def read_sample(path: Union[str, Path], alphabet=None) -> LabeledSample:
    path = Path(path)
    return parse_sample(path.read_text(encoding="utf-8"), source=str(path), alphabet=alphabet)


def write_sample(sample: LabeledSample, path: Union[str, Path]) -> None:
    Path(path).write_text(format_sample(sample), encoding="utf-8")
