"""Construction and diagnostics of the queen interaction kernel.

The kernel ``K`` of an ``L x L`` board is an ``L**2 x L**2`` boolean matrix
with ``K[a, b] = 1`` whenever a queen on cell ``a`` attacks cell ``b``.  It
splits into a row/column part (a Kronecker sum of complemented identities)
and a diagonal part (a sum of Kronecker squares of band matrices).  Both the
Kronecker route and a direct per-cell stamping route are provided so they can
be checked against each other.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property

import numpy as np


class ConvergenceError(RuntimeError):
    def __init__(self, message: str, residual: float):
        super().__init__(f"{message} (off-diagonal residual {residual:.3e})")
        self.residual = residual


def identity_complement(L: int) -> np.ndarray:
    """All-ones L x L block minus the identity."""
    return ~np.eye(L, dtype=bool)


def decimating_matrix(L: int, d: int) -> np.ndarray:
    """L x L band matrix with ones exactly where ``|i - j| == d``."""
    if not 1 <= d <= max(L - 1, 0):
        raise ValueError(f"offset must lie in [1, {L - 1}], got {d}")
    idx = np.arange(L)
    return np.abs(idx[:, None] - idx[None, :]) == d


def build_cross_kernel(L: int) -> np.ndarray:
    """Row/column attacks: ``I (x) Ibar + Ibar (x) I``."""
    eye = np.eye(L, dtype=bool)
    ibar = identity_complement(L)
    return np.kron(eye, ibar) | np.kron(ibar, eye)


def build_diag_kernel(L: int) -> np.ndarray:
    """Diagonal attacks: OR over offsets d of ``k_d (x) k_d``."""
    out = np.zeros((L * L, L * L), dtype=bool)
    for d in range(1, L):
        k = decimating_matrix(L, d)
        out |= np.kron(k, k)
    return out


def build_kernel_direct(L: int) -> tuple[np.ndarray, np.ndarray]:
    """Stamp each cell's neighbourhood onto a fresh board and flatten it.

    Returns ``(cross_part, diag_part)``.  This mirrors the per-cell loop
    construction and shares nothing with the Kronecker route.
    """
    n = L * L
    cross = np.zeros((n, n), dtype=bool)
    diag = np.zeros((n, n), dtype=bool)
    for i in range(L):
        for j in range(L):
            wc = np.zeros((L, L), dtype=bool)
            wc[i, :] = True
            wc[:, j] = True
            # np.eye offsets follow the main and anti diagonal through (i, j)
            wd = np.eye(L, k=j - i, dtype=bool) | np.fliplr(np.eye(L, k=(L - 1 - j) - i, dtype=bool))
            wc[i, j] = False
            wd[i, j] = False
            cross[i * L + j] = wc.reshape(n)
            diag[i * L + j] = wd.reshape(n)
    return cross, diag


@dataclass(frozen=True)
class InteractionKernel:
    size_L: int
    cross_part: np.ndarray = field(repr=False)
    diag_part: np.ndarray = field(repr=False)

    def __post_init__(self):
        for arr in (self.cross_part, self.diag_part):
            arr.flags.writeable = False

    @cached_property
    def matrix(self) -> np.ndarray:
        m = self.cross_part | self.diag_part
        m.flags.writeable = False
        return m

    @property
    def cells(self) -> int:
        return self.size_L * self.size_L

    @cached_property
    def row_masks(self) -> tuple[int, ...]:
        """Each row packed into an int, column j at bit j."""
        weights = [1 << j for j in range(self.cells)]
        return tuple(
            sum(w for w, b in zip(weights, row) if b) for row in self.matrix.tolist()
        )

    def attacks(self, a: int, b: int) -> bool:
        return bool((self.row_masks[a] >> b) & 1)


def build_kernel(L: int, method: str = "kronecker") -> InteractionKernel:
    if L < 1:
        raise ValueError(f"board size must be positive, got {L}")
    if method == "kronecker":
        return InteractionKernel(L, build_cross_kernel(L), build_diag_kernel(L))
    if method == "direct":
        cross, diag = build_kernel_direct(L)
        return InteractionKernel(L, cross, diag)
    raise ValueError(f"unknown construction method {method!r}")


def row_bitsums(K: InteractionKernel) -> tuple[list[int], int, int]:
    sums = K.matrix.sum(axis=1).astype(int).tolist()
    return sums, min(sums), max(sums)


def verify_decomposition(L: int) -> bool:
    """Check the band matrices tile ``Ibar_L`` and their Kronecker squares give the diagonal kernel."""
    if L < 2:
        raise ValueError("decomposition needs L >= 2")
    bands = [decimating_matrix(L, d) for d in range(1, L)]
    union = np.zeros((L, L), dtype=bool)
    total = np.zeros((L, L), dtype=int)
    for k in bands:
        union |= k
        total += k
    if not (np.array_equal(union, identity_complement(L)) and total.max() == 1):
        return False
    kron_sum = sum(np.kron(k, k).astype(int) for k in bands)
    return bool(np.array_equal(kron_sum, build_diag_kernel(L).astype(int))) and kron_sum.max() <= 1


# -- spectrum ---------------------------------------------------------------


@dataclass(frozen=True)
class SpectrumReport:
    eigenvalues: list[float]
    max_offdiag_residual: float
    sweeps: int
    orthogonality_residual: float
    eigenvectors: np.ndarray | None = field(default=None, repr=False, compare=False)

    def to_json(self, L: int) -> dict:
        return {"L": L, "eigenvalues": self.eigenvalues}


def _round_robin(n: int) -> list[list[tuple[int, int]]]:
    # circle-method schedule: n - 1 rounds of disjoint pairs covering every pair once
    players = list(range(n)) + ([-1] if n % 2 else [])
    m = len(players)
    rounds = []
    for _ in range(m - 1):
        pairs = []
        for k in range(m // 2):
            a, b = players[k], players[m - 1 - k]
            if a >= 0 and b >= 0:
                pairs.append((min(a, b), max(a, b)))
        rounds.append(pairs)
        players = [players[0], players[-1]] + players[1:-1]
    return rounds


def _offdiag_norm(a: np.ndarray) -> float:
    off = a - np.diag(np.diag(a))
    return float(np.linalg.norm(off))


def jacobi_eigh(a, tol: float | None = None, max_sweeps: int = 100):
    """Eigen-decomposition of a real symmetric matrix by cyclic Jacobi sweeps.

    Rotations are grouped in round-robin order so that each round touches
    disjoint index pairs and can be applied at once.  Iteration stops when the
    off-diagonal Frobenius norm drops below ``tol`` (default
    ``1e-10 * ||a||_F``).

    Returns ``(eigenvalues, eigenvectors, residual, sweeps)`` with eigenvalues
    in descending order and eigenvectors as columns.
    """
    a = np.array(a, dtype=np.float64)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ValueError("expected a square matrix")
    if not np.allclose(a, a.T, atol=0.0):
        raise ValueError("matrix is not symmetric")
    n = a.shape[0]
    if tol is None:
        tol = 1e-10 * float(np.linalg.norm(a))
    v = np.eye(n)
    schedule = _round_robin(n) if n > 1 else []
    rounds = [(np.array([p for p, _ in r]), np.array([q for _, q in r])) for r in schedule]

    residual = _offdiag_norm(a)
    sweeps = 0
    while residual > tol:
        if sweeps >= max_sweeps:
            raise ConvergenceError(f"Jacobi did not converge in {max_sweeps} sweeps", residual)
        for p, q in rounds:
            apq = a[p, q]
            app = a[p, p]
            aqq = a[q, q]
            active = apq != 0.0
            theta = np.where(active, (aqq - app) / np.where(active, 2.0 * apq, 1.0), 0.0)
            t = np.where(
                active,
                np.sign(theta + (theta == 0)) / (np.abs(theta) + np.sqrt(theta * theta + 1.0)),
                0.0,
            )
            c = 1.0 / np.sqrt(t * t + 1.0)
            s = t * c
            # columns: A <- A J
            ap, aq = a[:, p].copy(), a[:, q].copy()
            a[:, p] = c * ap - s * aq
            a[:, q] = s * ap + c * aq
            # rows: A <- J^T A
            ap, aq = a[p, :].copy(), a[q, :].copy()
            a[p, :] = c[:, None] * ap - s[:, None] * aq
            a[q, :] = s[:, None] * ap + c[:, None] * aq
            a[p, q] = 0.0
            a[q, p] = 0.0
            vp, vq = v[:, p].copy(), v[:, q].copy()
            v[:, p] = c * vp - s * vq
            v[:, q] = s * vp + c * vq
        sweeps += 1
        residual = _offdiag_norm(a)

    w = np.diag(a).copy()
    order = np.argsort(-w, kind="stable")
    return w[order], v[:, order], residual, sweeps


def spectrum(K: InteractionKernel, tol: float | None = None, max_sweeps: int = 100) -> SpectrumReport:
    if tol is not None and tol <= 0:
        raise ValueError("tolerance must be positive")
    w, v, residual, sweeps = jacobi_eigh(K.matrix.astype(np.float64), tol=tol, max_sweeps=max_sweeps)
    ortho = float(np.max(np.abs(v.T @ v - np.eye(v.shape[0])))) if v.size else 0.0
    return SpectrumReport(
        eigenvalues=[float(x) for x in w],
        max_offdiag_residual=residual,
        sweeps=sweeps,
        orthogonality_residual=ortho,
        eigenvectors=v,
    )
