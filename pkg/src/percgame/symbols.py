"""Three-symbol cell alphabet shared by the game solver and the ring PCAs.

Cells take values in {0, ?, 1}.  Game reading: 0 = first player wins (or the
site is closed), 1 = first player loses, ? = draw / value unknown.  Integer
encoding:

    ZERO = 0,  ONE = 1,  QUES = 2

so that binary configurations are plain 0/1 arrays (matching hard-core
occupation variables, where 1 = occupied).  Two partial orders matter:

* the linear order 0 < ? < 1, used by the order-reversing coupling; encoded
  ranks are given by ``LINEAR_RANK``;
* the "information" order in which ? is the unique maximal element
  (0 and 1 are incomparable), tested with ``ques_le``.
"""

from __future__ import annotations

import numpy as np

ZERO = 0
ONE = 1
QUES = 2

SYMBOLS = (ZERO, ONE, QUES)

_CHAR = {ZERO: "0", ONE: "1", QUES: "?"}
_FROM_CHAR = {"0": ZERO, "1": ONE, "?": QUES}

# rank under the linear order 0 < ? < 1
LINEAR_RANK = np.array([0, 2, 1], dtype=np.int8)


def parse_word(s: str) -> tuple[int, ...]:
    """Parse a string over ``0?1`` into a tuple of symbol codes."""
    try:
        return tuple(_FROM_CHAR[c] for c in s)
    except KeyError as e:
        raise ValueError(f"invalid symbol {e.args[0]!r} in word {s!r}") from None


def format_word(cells) -> str:
    return "".join(_CHAR[int(c)] for c in cells)


def as_cells(word) -> np.ndarray:
    """Accept a ``0?1`` string, a sequence of codes, or an array."""
    if isinstance(word, str):
        word = parse_word(word)
    cells = np.asarray(word, dtype=np.int8)
    if cells.size and not np.isin(cells, SYMBOLS).all():
        raise ValueError("cell values must be 0, 1 or 2 (=?)")
    return cells


def linear_le(a, b) -> bool:
    """Cellwise a <= b under the order 0 < ? < 1."""
    a = as_cells(a)
    b = as_cells(b)
    return bool(np.all(LINEAR_RANK[a] <= LINEAR_RANK[b]))


def ques_le(a, b) -> bool:
    """Cellwise a <= b under the order with ? maximal (0, 1 incomparable)."""
    a = as_cells(a)
    b = as_cells(b)
    return bool(np.all((b == QUES) | (a == b)))
