"""Characteristic integer sequences of the kernel and the AND-decoding solver.

Row ``i`` of the kernel is read as the integer ``sigma[i]`` (column ``j`` at
bit ``j``).  Its ``L**2``-bit complement ``sigma_bar[i]`` marks every cell a
queen on ``i`` leaves alone, including ``i`` itself.  For a full solution
``p``, the bitwise AND of ``sigma_bar`` over ``p`` is exactly the solution's
own code; ``solve`` turns that into a search.
"""

from __future__ import annotations

import math
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from functools import reduce
from typing import Iterable, Sequence

import numpy as np

from .board_codec import BoardConfig, digit_sum_s2
from .kernel import InteractionKernel, build_kernel
from .oracle import SolutionSet


@dataclass(frozen=True)
class SigmaSequence:
    size_L: int
    sigma: tuple[int, ...]
    sigma_bar: tuple[int, ...]

    @property
    def full_mask(self) -> int:
        return (1 << (self.size_L * self.size_L)) - 1

    def log2(self) -> list[float]:
        return [math.log2(s) if s > 0 else float("-inf") for s in self.sigma]


def sigma_sequences(K: InteractionKernel) -> SigmaSequence:
    n = K.cells
    weights = [1 << j for j in range(n)]
    # encoded straight from the boolean rows, independently of K.row_masks
    sigma = tuple(int(sum(w for w, b in zip(weights, row) if b)) for row in K.matrix.tolist())
    full = (1 << n) - 1
    return SigmaSequence(K.size_L, sigma, tuple(full - s for s in sigma))


def complement(seq: SigmaSequence) -> SigmaSequence:
    return SigmaSequence(seq.size_L, seq.sigma_bar, seq.sigma)


def and_of_complements(seq: SigmaSequence, p: Iterable[int]) -> int:
    return reduce(lambda acc, i: acc & seq.sigma_bar[i], p, seq.full_mask)


def and_via_de_morgan(seq: SigmaSequence, p: Iterable[int]) -> int:
    """Same value as ``and_of_complements``: OR the raw rows, then complement."""
    union = reduce(lambda acc, i: acc | seq.sigma[i], p, 0)
    return seq.full_mask ^ union


def decode_dyadic(seq: SigmaSequence, p: Sequence[int]) -> BoardConfig:
    """Bitwise AND of the complemented kernel rows at ``p``.

    For a valid full solution this reproduces the solution itself.  For any
    other ``p`` it gives the unattacked cells together with the queens of
    ``p`` that no other queen of ``p`` attacks.
    """
    if not p:
        raise ValueError("need at least one position")
    n = seq.size_L * seq.size_L
    for i in p:
        if not 0 <= i < n:
            raise ValueError(f"position {i} outside [0, {n})")
    return BoardConfig(seq.size_L, and_of_complements(seq, p))


def _search_from(seq: SigmaSequence, first_col: int | None) -> list[tuple[int, ...]]:
    L = seq.size_L
    bars = seq.sigma_bar
    row_bits = [((1 << L) - 1) << (r * L) for r in range(L)]
    found = []

    def descend(row: int, mask: int, chosen: list[int]) -> None:
        if row == L:
            if digit_sum_s2(mask) == L:
                found.append(tuple(chosen))
            return
        avail = mask & row_bits[row]
        while avail:
            low = avail & -avail
            avail ^= low
            cell = low.bit_length() - 1
            chosen.append(cell)
            descend(row + 1, mask & bars[cell], chosen)
            chosen.pop()

    full = seq.full_mask
    if first_col is None:
        descend(0, full, [])
    else:
        descend(1, full & bars[first_col], [first_col])
    return found


def _search_task(args) -> list[tuple[int, ...]]:
    L, col = args
    return _search_from(sigma_sequences(build_kernel(L)), col)


def default_workers() -> int:
    cap = os.environ.get("QKERNEL_THREADS")
    if cap:
        return max(1, int(cap))
    return 1


def solve(seq: SigmaSequence, L: int | None = None, workers: int | None = None) -> SolutionSet:
    """All full L-queens solutions, sorted by integer code.

    The search places one queen per board row, carrying the running AND of
    complemented rows; a cell is a candidate only while its bit survives in
    that mask.  A leaf is accepted when the mask's digit sum equals ``L``.
    With ``workers > 1`` the first-row columns are split across processes;
    the merged output is the same either way.
    """
    if L is None:
        L = seq.size_L
    if L != seq.size_L:
        raise ValueError(f"sequence is for L={seq.size_L}, asked to solve L={L}")
    workers = default_workers() if workers is None else workers
    if workers <= 1 or L < 4:
        found = _search_from(seq, None)
    else:
        with ProcessPoolExecutor(max_workers=min(workers, L)) as pool:
            parts = pool.map(_search_task, [(L, c) for c in range(L)])
            found = [s for part in parts for s in part]
    return SolutionSet.from_solutions(L, found)


@dataclass(frozen=True)
class DyadicClosure:
    size_L: int
    matrix: np.ndarray

    @property
    def diagonal_support(self) -> list[int]:
        return np.flatnonzero(np.diag(self.matrix)).tolist()


def dyadic(p: Iterable[int], L: int) -> np.ndarray:
    s = np.zeros(L * L, dtype=bool)
    s[list(p)] = True
    return np.outer(s, s)


def dyadic_closure(solutions: SolutionSet) -> DyadicClosure:
    L = solutions.size_L
    m = np.zeros((L * L, L * L), dtype=bool)
    for p in solutions.solutions:
        m |= dyadic(p, L)
    return DyadicClosure(L, m)
