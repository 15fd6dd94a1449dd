"""Dense GF(2) linear algebra on bit matrices packed into uint64 words."""

from __future__ import annotations

import numpy as np

__all__ = ["pack_rows", "unpack_rows", "rank", "solve"]


def pack_rows(bits: np.ndarray) -> np.ndarray:
    """Pack a 0/1 matrix row-wise; column j sits in word j // 64, bit j % 64."""
    bits = np.asarray(bits, dtype=np.uint8)
    rows, cols = bits.shape
    words = max(1, -(-cols // 64))
    padded = np.zeros((rows, words * 64), dtype=np.uint8)
    padded[:, :cols] = bits
    return np.packbits(padded, axis=1, bitorder="little").view("<u8").copy()


def unpack_rows(packed: np.ndarray, cols: int) -> np.ndarray:
    bits = np.unpackbits(packed.view(np.uint8), axis=1, bitorder="little")
    return bits[:, :cols]


def _eliminate(M: np.ndarray, ncols: int) -> list[int]:
    """In-place Gauss-Jordan elimination over the first ``ncols`` columns.

    Returns the pivot column of each leading row.
    """
    pivots = []
    r = 0
    nrows = M.shape[0]
    for c in range(ncols):
        if r == nrows:
            break
        w, bit = c >> 6, np.uint64(1) << np.uint64(c & 63)
        hits = np.flatnonzero(M[r:, w] & bit)
        if hits.size == 0:
            continue
        piv = r + int(hits[0])
        if piv != r:
            M[[r, piv]] = M[[piv, r]]
        has = (M[:, w] & bit) != 0
        has[r] = False
        if has.any():
            M[has, w:] ^= M[r, w:]
        pivots.append(c)
        r += 1
    return pivots


def rank(bits: np.ndarray) -> int:
    bits = np.asarray(bits)
    M = pack_rows(bits)
    return len(_eliminate(M, bits.shape[1]))


def solve(A: np.ndarray, B: np.ndarray) -> np.ndarray | None:
    """Solve A X = B over GF(2) when A has full column rank.

    ``A`` is m x k and ``B`` m x r (several right-hand sides sharing one
    elimination).  Returns the k x r solution, or None if A is rank
    deficient or the system is inconsistent.
    """
    A = np.asarray(A, dtype=np.uint8)
    B = np.asarray(B, dtype=np.uint8)
    if B.ndim == 1:
        B = B[:, None]
    m, k = A.shape
    if B.shape[0] != m:
        raise ValueError("A and B must have the same number of rows")
    if m < k:
        return None
    M = pack_rows(np.hstack([A, B]))
    pivots = _eliminate(M, k)
    if len(pivots) < k:
        return None
    full = unpack_rows(M, k + B.shape[1])
    if full[k:, k:].any():
        return None
    return full[:k, k:].copy()
