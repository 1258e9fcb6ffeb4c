"""Independent N-Queens ground truth.

Plain row-by-row backtracking with column and diagonal occupancy sets, a
pairwise geometric attack test, and D4 symmetry classification.  Nothing here
touches the kernel machinery, so agreement with it is real evidence.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable

MAX_ORACLE_SIZE = 12


class SizeError(ValueError):
    pass


def attacks(a: tuple[int, int], b: tuple[int, int]) -> bool:
    """True iff queens on cells ``a`` and ``b`` (``(row, col)``) attack each other."""
    if a == b:
        raise ValueError(f"a cell does not attack itself: {a}")
    dr = a[0] - b[0]
    dc = a[1] - b[1]
    return dr == 0 or dc == 0 or abs(dr) == abs(dc)


def attacking_pairs(positions: Iterable[int], L: int) -> int:
    cells = [divmod(p, L) for p in positions]
    return sum(
        attacks(cells[i], cells[j]) for i in range(len(cells)) for j in range(i + 1, len(cells))
    )


def is_solution(positions: Iterable[int], L: int) -> bool:
    positions = list(positions)
    return len(positions) == L and attacking_pairs(positions, L) == 0


def _code(positions: Iterable[int]) -> int:
    return sum(1 << p for p in positions)


# the eight symmetries of the square acting on (row, col)
_D4 = (
    lambda r, c, n: (r, c),
    lambda r, c, n: (c, n - 1 - r),
    lambda r, c, n: (n - 1 - r, n - 1 - c),
    lambda r, c, n: (n - 1 - c, r),
    lambda r, c, n: (r, n - 1 - c),
    lambda r, c, n: (n - 1 - r, c),
    lambda r, c, n: (c, r),
    lambda r, c, n: (n - 1 - c, n - 1 - r),
)


def symmetry_orbit(p: Iterable[int], L: int) -> set[tuple[int, ...]]:
    cells = [divmod(x, L) for x in p]
    orbit = set()
    for transform in _D4:
        moved = sorted(r * L + c for r, c in (transform(r, c, L) for r, c in cells))
        orbit.add(tuple(moved))
    return orbit


def canonical(p: Iterable[int], L: int) -> tuple[int, ...]:
    """Orbit representative with the smallest integer code."""
    return min(symmetry_orbit(p, L), key=_code)


@dataclass(frozen=True)
class SolutionSet:
    size_L: int
    solutions: tuple[tuple[int, ...], ...]
    fundamental: tuple[tuple[int, ...], ...] = field(default=())

    @classmethod
    def from_solutions(cls, L: int, solutions: Iterable[Iterable[int]]) -> "SolutionSet":
        sols = sorted({tuple(sorted(s)) for s in solutions}, key=_code)
        reps = sorted({canonical(s, L) for s in sols}, key=_code)
        return cls(L, tuple(sols), tuple(reps))

    def __len__(self) -> int:
        return len(self.solutions)

    def __contains__(self, p) -> bool:
        return tuple(sorted(p)) in set(self.solutions)

    def codes(self) -> list[int]:
        return [_code(s) for s in self.solutions]

    def orbit_sizes(self) -> list[int]:
        return [len(symmetry_orbit(f, self.size_L)) for f in self.fundamental]


def _search(L: int, row: int, cols: set, diag: set, anti: set, placed: list, out: list) -> None:
    if row == L:
        out.append(tuple(sorted(r * L + c for r, c in enumerate(placed))))
        return
    for c in range(L):
        if c in cols or (row - c) in diag or (row + c) in anti:
            continue
        cols.add(c)
        diag.add(row - c)
        anti.add(row + c)
        placed.append(c)
        _search(L, row + 1, cols, diag, anti, placed, out)
        placed.pop()
        cols.remove(c)
        diag.remove(row - c)
        anti.remove(row + c)


def enumerate_solutions(L: int) -> SolutionSet:
    if not 1 <= L <= MAX_ORACLE_SIZE:
        raise SizeError(f"oracle handles 1 <= L <= {MAX_ORACLE_SIZE}, got {L}")
    found: list[tuple[int, ...]] = []
    _search(L, 0, set(), set(), set(), [], found)
    return SolutionSet.from_solutions(L, found)


def counts(L: int) -> dict:
    s = enumerate_solutions(L)
    return {"L": L, "total": len(s), "fundamental": len(s.fundamental)}
