"""Embedded data and the plain-text code/partition file formats.

Code file::

    # comment lines start with '#'
    q 3
    n 3
    0 0 0
    2 2 1
    1 1 2

A word of multiplicity k is written on k lines.  A partition file has the
same header followed by blocks introduced by ``class <label>`` lines.
Writers emit words in lexicographic order, so write-then-read is the
identity.
"""

from __future__ import annotations

from functools import lru_cache
from pathlib import Path

import numpy as np

from .errors import OverlapError, ParseError
from .space import Code, FullSpace, Partition, check_budget

# Partition of H(4,4) into sixteen (4,16,3)_4 codes.  Cell (r, c) of the grid
# is the word (r // 4, r % 4, c // 4, c % 4); the hex digit is its class.
H44_GRID = """\
0123456789ABCDEF
FE76103A24DC9B85
A8B9EFCD56013742
DC54B29873FE6A10
67FEA301DC4528B9
35107624BA98EFCD
42DC895BFE3701A6
9B8ACDEF10625473
BA98FEDC32701654
CD4258B961EFA307
706524139B8ADCFE
EF3107A645CD892B
54CD9B82EF16703A
89ABDCFE07534261
13EF6A70CD24B598
26073145A8B9FEDC
"""

HEX_LABELS = [format(i, "X") for i in range(16)]

EMBEDDED = {"h44-partition": "embedded partition of H(4,4) into (4,16,3)_4 MDS codes"}


def grid_labels() -> np.ndarray:
    rows = H44_GRID.split()
    return np.array([[int(ch, 16) for ch in row] for row in rows], dtype=np.int64)


@lru_cache(maxsize=None)
def load_embedded_partition() -> Partition:
    """Decode the H(4,4) table into a Partition and self-validate it.

    Raises AssertionError if a class is not a (4,16,3)_4 MDS code or the
    classes do not tile H(4,4); that would mean the grid indexing is wrong.
    """
    T = grid_labels()
    assert T.shape == (16, 16)
    r, c = np.meshgrid(np.arange(16), np.arange(16), indexing="ij")
    words = np.stack([r // 4, r % 4, c // 4, c % 4], axis=-1).reshape(256, 4)
    labels = T.reshape(256)
    classes = [Code(4, 4, words[labels == k], indices=False) for k in range(16)]
    for k, cls in enumerate(classes):
        assert len(cls) == 16, f"class {k:X} has {len(cls)} words"
        assert cls.min_distance == 3, f"class {k:X} has minimum distance {cls.min_distance}"
    return Partition(FullSpace(4, 4), classes, HEX_LABELS)


def load(name: str) -> Partition:
    if name not in EMBEDDED:
        raise KeyError(f"unknown embedded object {name!r}; known: {', '.join(EMBEDDED)}")
    return load_embedded_partition()


# ---------------------------------------------------------------------------
# text formats


def _word_lines(code: Code) -> list[str]:
    return [" ".join(str(int(s)) for s in row) for row in code.symbols]


def format_code(code: Code, comment: str | None = None) -> str:
    lines = [f"# {line}" for line in comment.splitlines()] if comment else []
    lines += [f"q {code.q}", f"n {code.n}"]
    lines += _word_lines(code)
    return "\n".join(lines) + "\n"


def format_partition(partition: Partition, comment: str | None = None) -> str:
    lines = [f"# {line}" for line in comment.splitlines()] if comment else []
    lines += [f"q {partition.q}", f"n {partition.n}"]
    for label, cls in zip(partition.labels, partition.classes):
        lines.append(f"class {label}")
        lines += _word_lines(cls)
    return "\n".join(lines) + "\n"


def _content_lines(text: str):
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        yield lineno, line


def _header(lines) -> tuple[int, int]:
    vals = {}
    for key in ("q", "n"):
        try:
            lineno, line = next(lines)
        except StopIteration:
            raise ParseError(f"missing '{key}' header") from None
        parts = line.split()
        if len(parts) != 2 or parts[0] != key or not parts[1].isdigit():
            raise ParseError(f"expected '{key} <int>', got {line!r}", lineno)
        vals[key] = int(parts[1])
    if vals["q"] < 2:
        raise ParseError("q must be at least 2", 1)
    return vals["q"], vals["n"]


def _parse_word(line: str, lineno: int, q: int, n: int) -> list[int]:
    parts = line.split()
    if len(parts) != n:
        raise ParseError(f"word has {len(parts)} symbols, expected {n}", lineno)
    try:
        word = [int(p) for p in parts]
    except ValueError:
        raise ParseError(f"non-integer symbol in {line!r}", lineno) from None
    for s in word:
        if not 0 <= s < q:
            raise ParseError(f"symbol {s} out of range for q={q}", lineno)
    return word


def parse_code(text: str) -> Code:
    lines = _content_lines(text)
    q, n = _header(lines)
    words = []
    for lineno, line in lines:
        if line.startswith("class"):
            raise ParseError("'class' line in a code file", lineno)
        words.append(_parse_word(line, lineno, q, n))
    return Code(q, n, np.array(words, dtype=np.int64).reshape(len(words), n), indices=False)


def parse_partition(text: str) -> Partition:
    lines = _content_lines(text)
    q, n = _header(lines)
    labels, blocks, owner = [], [], {}
    for lineno, line in lines:
        if line.startswith("class"):
            parts = line.split(maxsplit=1)
            labels.append(parts[1] if len(parts) > 1 else str(len(labels)))
            blocks.append([])
            continue
        if not blocks:
            raise ParseError("word before the first 'class' line", lineno)
        w = tuple(_parse_word(line, lineno, q, n))
        if w in owner:
            raise OverlapError(f"word {w} already in class {owner[w]}", lineno)
        owner[w] = labels[-1]
        blocks[-1].append(w)
    if not blocks:
        raise ParseError("partition file has no classes")
    classes = [Code(q, n, np.array(b, dtype=np.int64).reshape(len(b), n), indices=False) for b in blocks]
    total = sum(len(c) for c in classes)
    if q**n == total:
        ambient = FullSpace(q, n)
    else:
        ambient = Code.from_indices(q, n, np.concatenate([c.words for c in classes]))
    return Partition(ambient, classes, labels)


def read_code(path) -> Code:
    return parse_code(Path(path).read_text())


def write_code(code: Code, path, comment: str | None = None) -> None:
    Path(path).write_text(format_code(code, comment))


def read_partition(path) -> Partition:
    return parse_partition(Path(path).read_text())


def write_partition(partition: Partition, path, comment: str | None = None) -> None:
    Path(path).write_text(format_partition(partition, comment))
