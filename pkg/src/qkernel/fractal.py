"""Self-similar operator tables of pointwise two-bit logical operations.

A two-bit operation is given by its 2x2 truth table ``m`` (``m[a][b] = op(a, b)``).
The ``2**n x 2**n`` table ``T_n[i][j] = op(i, j)`` applied bitwise obeys

    T_{n+1} = [[T_n + 2**n m[0][0],  T_n + 2**n m[0][1]],
               [T_n + 2**n m[1][0],  T_n + 2**n m[1][1]]]

starting from ``T_0 = [[0]]``, and the digit sums follow the same pattern
with ``+ m[a][b]`` in place of ``+ 2**n m[a][b]``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable

import numpy as np

from .board_codec import digit_sum_s2
from .sigma_solver import SigmaSequence, and_of_complements

MAX_TABLE_BITS = 13


class SizeError(ValueError):
    pass


@dataclass(frozen=True)
class ExponentMatrix:
    m: tuple[tuple[int, int], tuple[int, int]]
    name: str = ""

    def __post_init__(self):
        if len(self.m) != 2 or any(len(row) != 2 for row in self.m):
            raise ValueError("exponent matrix must be 2x2")
        if any(x not in (0, 1) for row in self.m for x in row):
            raise ValueError("exponent matrix entries must be 0 or 1")

    def apply(self, a: int, b: int) -> int:
        return self.m[a][b]


AND = ExponentMatrix(((0, 0), (0, 1)), "and")
OR = ExponentMatrix(((0, 1), (1, 1)), "or")
XOR = ExponentMatrix(((0, 1), (1, 0)), "xor")
OPS = {op.name: op for op in (AND, OR, XOR)}


@dataclass(frozen=True)
class FractalTable:
    op: ExponentMatrix
    bits_n: int
    table: np.ndarray = field(repr=False)
    digit_sums: np.ndarray = field(repr=False)


def _check_bits(n: int) -> None:
    if not 1 <= n <= MAX_TABLE_BITS:
        raise SizeError(f"table bits must lie in [1, {MAX_TABLE_BITS}], got {n}")


def _recurse(op: ExponentMatrix, n: int, scale) -> np.ndarray:
    t = np.zeros((1, 1), dtype=np.int64)
    for k in range(n):
        step = scale(k)
        t = np.block(
            [[t + step * op.m[a][b] for b in (0, 1)] for a in (0, 1)]
        )
    return t


def popcount(arr: np.ndarray) -> np.ndarray:
    arr = np.asarray(arr, dtype=np.uint64)
    out = np.zeros(arr.shape, dtype=np.int64)
    while np.any(arr):
        out += (arr & np.uint64(1)).astype(np.int64)
        arr = arr >> np.uint64(1)
    return out


def build_table(op: ExponentMatrix, n: int) -> FractalTable:
    _check_bits(n)
    table = _recurse(op, n, lambda k: 1 << k)
    return FractalTable(op, n, table, popcount(table))


def digit_sum_table(t: FractalTable) -> np.ndarray:
    return t.digit_sums


def digit_sum_recursive(op: ExponentMatrix, n: int) -> np.ndarray:
    """Digit sums grown directly by the quadrant recursion (``+ m[a][b]`` per level)."""
    _check_bits(n)
    return _recurse(op, n, lambda k: 1)


def direct_table(op: ExponentMatrix, n: int) -> np.ndarray:
    """``op(i, j)`` evaluated bit by bit from the truth table, no recursion."""
    i = np.arange(1 << n, dtype=np.int64)[:, None]
    j = np.arange(1 << n, dtype=np.int64)[None, :]
    lut = np.array(op.m, dtype=np.int64)
    out = np.zeros((1 << n, 1 << n), dtype=np.int64)
    for k in range(n):
        out |= lut[(i >> k) & 1, (j >> k) & 1] << k
    return out


def entry(op: ExponentMatrix, i: int, j: int) -> int:
    """One table entry on demand, for any operand size."""
    out = 0
    k = 0
    while i >> k or j >> k:
        out |= op.m[(i >> k) & 1][(j >> k) & 1] << k
        k += 1
    return out


def quadrant_offsets_ok(t: FractalTable) -> bool:
    """Each quadrant minus its constant ``2**(n-1) m[a][b]`` is ``T_{n-1}``."""
    n = t.bits_n
    half = 1 << (n - 1)
    prev = direct_table(t.op, n - 1)
    for a in (0, 1):
        for b in (0, 1):
            quad = t.table[a * half:(a + 1) * half, b * half:(b + 1) * half]
            if not np.array_equal(quad - half * t.op.m[a][b], prev):
                return False
    return True


def hypercube_digit_sum(seq: SigmaSequence, p: Iterable[int]) -> int:
    """Digit sum of the AND of complemented sigma values over ``p``.

    Equals ``L`` exactly when ``p`` is a full solution.
    """
    p = list(p)
    if not p:
        raise ValueError("need at least one position")
    return digit_sum_s2(and_of_complements(seq, p))
