"""Conversions between boards, flattened bit vectors, position lists and integer codes.

Cells are indexed row-major from zero: ``index = row * L + col``.  A board's
integer code carries cell ``j`` as bit ``j``, so a queen set ``p`` has code
``sum(2**j for j in p)``.  Codes are plain Python ints and never overflow.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from itertools import combinations
from math import comb
from typing import Iterable, Iterator, Sequence

import numpy as np


class DimensionError(ValueError):
    """Raised when a board or vector has the wrong shape for its board size."""


@dataclass(frozen=True)
class BoardConfig:
    size_L: int
    code_nu: int

    def __post_init__(self):
        if self.size_L < 1:
            raise DimensionError(f"board size must be positive, got {self.size_L}")
        if self.code_nu < 0 or self.code_nu >> (self.size_L * self.size_L):
            raise DimensionError(
                f"code {self.code_nu} does not fit a {self.size_L}x{self.size_L} board"
            )

    @classmethod
    def from_positions(cls, L: int, positions: Iterable[int]) -> "BoardConfig":
        code = 0
        n = L * L
        for p in positions:
            if not 0 <= p < n:
                raise DimensionError(f"position {p} outside [0, {n})")
            code |= 1 << p
        return cls(L, code)

    @classmethod
    def from_bits(cls, L: int, bits: Sequence[int]) -> "BoardConfig":
        if len(bits) != L * L:
            raise DimensionError(f"expected {L * L} bits, got {len(bits)}")
        return cls.from_positions(L, (j for j, b in enumerate(bits) if b))

    @property
    def cells(self) -> int:
        return self.size_L * self.size_L

    @property
    def bits(self) -> np.ndarray:
        out = np.zeros(self.cells, dtype=bool)
        out[list(self.positions)] = True
        return out

    @property
    def positions(self) -> tuple[int, ...]:
        return positions_of(self.code_nu)

    @property
    def queens(self) -> int:
        return digit_sum_s2(self.code_nu)

    def to_matrix(self) -> np.ndarray:
        return unflatten(self)


def positions_of(code: int) -> tuple[int, ...]:
    """Indices of the set bits of ``code``, ascending."""
    out = []
    while code:
        low = code & -code
        out.append(low.bit_length() - 1)
        code ^= low
    return tuple(out)


def digit_sum_s2(v: int) -> int:
    """Binary digit sum (popcount) of a nonnegative integer of any size."""
    if v < 0:
        raise ValueError("digit sum is defined for nonnegative integers only")
    return bin(v).count("1")


def flatten(board) -> BoardConfig:
    arr = np.asarray(board)
    if arr.ndim != 2 or arr.shape[0] != arr.shape[1] or arr.shape[0] == 0:
        raise DimensionError(f"expected a non-empty square board, got shape {arr.shape}")
    L = arr.shape[0]
    return BoardConfig.from_bits(L, arr.astype(bool).reshape(L * L))


def unflatten(config: BoardConfig) -> np.ndarray:
    L = config.size_L
    return config.bits.reshape(L, L)


def pattern_count(L: int, N: int) -> int:
    return comb(L * L, N) if N >= 0 else 0


def iter_patterns(L: int, N: int) -> Iterator[tuple[int, ...]]:
    """Every N-subset of the L*L cells, in lexicographic order of the sorted tuples.

    Yields nothing when N exceeds the number of cells.
    """
    if N < 0:
        raise ValueError("queen count must be nonnegative")
    return combinations(range(L * L), N)


# -- text / JSON board formats ---------------------------------------------


def parse_board_text(text: str) -> BoardConfig:
    """Parse ``L`` lines of ``L`` characters where ``Q`` marks a queen and ``.`` an empty cell."""
    lines = text.splitlines()
    while lines and not lines[-1].strip():
        lines.pop()
    if not lines:
        raise DimensionError("empty board text")
    L = len(lines)
    positions = []
    for r, line in enumerate(lines):
        line = line.rstrip("\r")
        if len(line) != L:
            raise DimensionError(f"line {r} has {len(line)} characters, expected {L}")
        for c, ch in enumerate(line):
            if ch == "Q":
                positions.append(r * L + c)
            elif ch != ".":
                raise ValueError(f"unexpected character {ch!r} at row {r}, column {c}")
    return BoardConfig.from_positions(L, positions)


def format_board_text(config: BoardConfig) -> str:
    L = config.size_L
    occupied = set(config.positions)
    return "".join(
        "".join("Q" if r * L + c in occupied else "." for c in range(L)) + "\n"
        for r in range(L)
    )


def shift_positions(positions: Iterable[int], one_based: bool) -> list[int]:
    return [p + 1 for p in positions] if one_based else list(positions)


def unshift_positions(positions: Iterable[int], one_based: bool) -> list[int]:
    return [p - 1 for p in positions] if one_based else list(positions)


def board_to_json(config: BoardConfig, one_based: bool = False) -> dict:
    return {"L": config.size_L, "positions": shift_positions(config.positions, one_based)}


def board_from_json(obj: dict | str, one_based: bool = False) -> BoardConfig:
    if isinstance(obj, str):
        obj = json.loads(obj)
    try:
        L = int(obj["L"])
        positions = unshift_positions((int(p) for p in obj["positions"]), one_based)
    except (KeyError, TypeError) as exc:
        raise ValueError(f"board JSON needs integer 'L' and list 'positions': {exc}") from exc
    return BoardConfig.from_positions(L, positions)


def load_board(text: str, one_based: bool = False) -> BoardConfig:
    """Accept either the JSON form or the Q/. text form."""
    if text.lstrip().startswith("{"):
        return board_from_json(text, one_based=one_based)
    return parse_board_text(text)
