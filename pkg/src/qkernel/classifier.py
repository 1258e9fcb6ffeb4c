"""Kernel-based validity tests for queen placements.

Two criteria are provided.  ``quadratic_form`` evaluates ``S^T K S`` over the
integers, which vanishes exactly on non-attacking placements of any size.
``power_of_two_classify`` weights column ``j`` of the kernel by ``2**j`` and
checks, queen by queen, that the closed neighbourhood code (overlap of the
queen's kernel row with the board, plus the queen's own bit) is the single
power of two ``2**p``.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .board_codec import BoardConfig, DimensionError, digit_sum_s2
from .kernel import InteractionKernel


@dataclass(frozen=True)
class QKernel:
    size_L: int
    rows_as_codes: tuple[int, ...]

    def row(self, i: int) -> int:
        return self.rows_as_codes[i]


@dataclass(frozen=True)
class ClassifierVerdict:
    attacking_pairs: int
    quadratic_value: int
    is_nonattacking: bool
    is_full_solution: bool
    per_queen_codes: tuple[tuple[int, int], ...]

    def to_json(self, one_based: bool = False) -> dict:
        shift = 1 if one_based else 0
        return {
            "attacking_pairs": self.attacking_pairs,
            "quadratic_value": self.quadratic_value,
            "is_nonattacking": self.is_nonattacking,
            "is_full_solution": self.is_full_solution,
            "per_queen_codes": [
                {"position": p + shift, "code": str(c), "is_power_of_two": c == 1 << p}
                for p, c in self.per_queen_codes
            ],
        }


def _check_sizes(L_kernel: int, S: BoardConfig) -> None:
    if S.size_L != L_kernel:
        raise DimensionError(f"board is {S.size_L}x{S.size_L} but kernel is for L={L_kernel}")


def quadratic_form(K: InteractionKernel, S: BoardConfig) -> int:
    """``S^T K S`` summed over ordered queen pairs, i.e. twice the attacking pairs."""
    _check_sizes(K.size_L, S)
    rows = K.row_masks
    p = S.positions
    total = 0
    for a in p:
        ra = rows[a]
        for b in p:
            total += (ra >> b) & 1
    return total


def quadratic_form_dense(K: InteractionKernel, S: BoardConfig) -> int:
    _check_sizes(K.size_L, S)
    s = S.bits.astype(np.int64)
    return int(s @ K.matrix.astype(np.int64) @ s)


def build_q_kernel(K: InteractionKernel) -> QKernel:
    # bit j of row i is K[i, j]; the diagonal is empty so Tr(Q) = 0
    return QKernel(K.size_L, K.row_masks)


def power_of_two_classify(Q: QKernel, S: BoardConfig) -> ClassifierVerdict:
    _check_sizes(Q.size_L, S)
    nu = S.code_nu
    codes = []
    overlap_bits = 0
    for p in S.positions:
        overlap = Q.rows_as_codes[p] & nu
        overlap_bits += digit_sum_s2(overlap)
        codes.append((p, overlap + (1 << p)))
    nonattacking = all(c == 1 << p for p, c in codes)
    return ClassifierVerdict(
        attacking_pairs=overlap_bits // 2,
        quadratic_value=overlap_bits,
        is_nonattacking=nonattacking,
        is_full_solution=nonattacking and len(codes) == S.size_L,
        per_queen_codes=tuple(codes),
    )


def is_power_of_two(v: int) -> bool:
    return v > 0 and v & (v - 1) == 0
