"""Line-oriented block transcripts for bit-exact cross checks.

One line per coherence block::

    k b1 b2 X1 X2 Y1 Y2

where each matrix is written column by column as hex words (row 0 is the
most significant bit), columns separated by '.'.
"""

from __future__ import annotations

import numpy as np

from ..errors import ParameterError

__all__ = ["pack_block", "unpack_block", "format_line", "parse_line"]


def pack_block(x: np.ndarray) -> str:
    x = np.asarray(x, dtype=np.uint8)
    q = x.shape[0]
    width = max(1, -(-q // 4))
    cols = []
    for col in x.T:
        v = 0
        for bit in col:
            v = (v << 1) | int(bit)
        cols.append(format(v, f"0{width}x"))
    return ".".join(cols)


def unpack_block(text: str, q: int) -> np.ndarray:
    cols = []
    for word in text.split("."):
        v = int(word, 16)
        if v >> q:
            raise ParameterError(f"hex word {word} does not fit in {q} bits")
        cols.append([(v >> (q - 1 - i)) & 1 for i in range(q)])
    return np.array(cols, dtype=np.uint8).T


def format_line(k: int, b1: int, b2: int, x1, x2, y1, y2) -> str:
    return " ".join([str(k), str(int(b1)), str(int(b2))] + [pack_block(m) for m in (x1, x2, y1, y2)])


def parse_line(line: str, q: int):
    parts = line.split()
    if len(parts) != 7:
        raise ParameterError("transcript lines have seven fields")
    k, b1, b2 = (int(v) for v in parts[:3])
    return (k, b1, b2) + tuple(unpack_block(w, q) for w in parts[3:])
