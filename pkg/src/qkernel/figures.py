"""Regeneration of the five kernel figures as PBM/PGM images with CSV twins."""

from __future__ import annotations

import csv
import io
import json
import time
from dataclasses import asdict, dataclass, field
from pathlib import Path

import numpy as np

from . import netpbm
from .kernel import build_kernel, row_bitsums, spectrum
from .oracle import enumerate_solutions
from .sigma_solver import decode_dyadic, dyadic_closure, sigma_sequences

# queen placements shown for the 6x6 and 7x7 boards, zero-based
PAPER_SOLUTION_6 = (3, 6, 16, 19, 29, 32)
PAPER_SOLUTION_7 = (1, 10, 14, 27, 32, 37, 47)


@dataclass
class RunReport:
    command: str
    parameters: dict
    outputs: list[str] = field(default_factory=list)
    checks_passed: list[dict] = field(default_factory=list)
    wall_time_ms: int = 0

    def check(self, name: str, ok: bool, **detail) -> bool:
        self.checks_passed.append({"name": name, "passed": bool(ok), **detail})
        return bool(ok)

    @property
    def ok(self) -> bool:
        return all(c["passed"] for c in self.checks_passed)

    def to_json(self) -> dict:
        return asdict(self)


class FigureError(RuntimeError):
    def __init__(self, message: str, report: RunReport):
        super().__init__(message)
        self.report = report


def write_csv(path: Path, header, rows) -> Path:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    if header:
        writer.writerow(header)
    writer.writerows(rows)
    path.write_text(buf.getvalue())
    return path


def fig_float(x: float) -> str:
    # fixed precision keeps the CSVs diffable across platforms
    return f"{x:.10f}"


def kernel_figure(outdir: Path, report: RunReport, L: int = 8) -> None:
    K = build_kernel(L)
    report.outputs.append(netpbm.write_pbm(outdir / f"fig1_kernel_L{L}.pbm", K.matrix).name)
    rows = [[i, *K.matrix[i].astype(int).tolist()] for i in range(K.cells)]
    report.outputs.append(
        write_csv(outdir / f"fig1_kernel_L{L}.csv", ["row", *range(K.cells)], rows).name
    )
    report.check(
        "fig1_symmetric_traceless",
        np.array_equal(K.matrix, K.matrix.T) and not K.matrix.diagonal().any(),
    )


def spectrum_figure(outdir: Path, report: RunReport, L: int = 8) -> None:
    K = build_kernel(L)
    spec = spectrum(K)
    eig = spec.eigenvalues
    report.outputs.append(netpbm.write_pbm(outdir / f"fig2_spectrum_L{L}.pbm", netpbm.bar_chart(eig)).name)
    report.outputs.append(
        write_csv(
            outdir / f"fig2_spectrum_L{L}.csv",
            ["index", "eigenvalue"],
            [[k, fig_float(v)] for k, v in enumerate(eig)],
        ).name
    )
    report.check("fig2_eigenvalue_count", len(eig) == L * L, count=len(eig))
    report.check("fig2_trace_zero", abs(sum(eig)) <= 1e-9 * L * L)


def bitsums_figure(outdir: Path, report: RunReport, L: int = 16, sweep=range(4, 17)) -> None:
    sums, lo, hi = row_bitsums(build_kernel(L))
    grid = np.array(sums).reshape(L, L)
    report.outputs.append(netpbm.write_pgm(outdir / f"fig3_bitsums_L{L}.pgm", grid).name)
    rows = [["row_bitsum", L, i, s] for i, s in enumerate(sums)]
    bounds = {}
    for n in sweep:
        _, mn, mx = row_bitsums(build_kernel(n))
        bounds[n] = (mn, mx)
        rows.append(["min", n, 0, mn])
        rows.append(["max", n, 0, mx])
    report.outputs.append(
        write_csv(outdir / f"fig3_bitsums_L{L}.csv", ["series", "L", "index", "value"], rows).name
    )
    if 8 in bounds:
        report.check("fig3_L8_bounds", bounds[8] == (21, 27), min=bounds[8][0], max=bounds[8][1])
    # corner and centre counts from the attack geometry
    expect_lo = 3 * (L - 1)
    expect_hi = 4 * L - 5 if L % 2 == 0 else 4 * (L - 1)
    report.check("fig3_bounds", (lo, hi) == (expect_lo, expect_hi), min=lo, max=hi)


def dyadic_figure(outdir: Path, report: RunReport, sizes=(6, 7)) -> None:
    panels = []
    rows = []
    paper = {6: PAPER_SOLUTION_6, 7: PAPER_SOLUTION_7}
    for L in sizes:
        K = build_kernel(L)
        sols = enumerate_solutions(L)
        closure = dyadic_closure(sols)
        # 0 = attacked pair, 1 = kernel complement, 2 = inside a solution dyadic
        panel = np.where(K.matrix, 0, 1) + closure.matrix.astype(int)
        panels.append(panel)
        ii, jj = np.nonzero(closure.matrix)
        rows.extend([L, int(i), int(j)] for i, j in zip(ii, jj))
        report.check(
            f"fig4_L{L}_closure_outside_kernel", not (closure.matrix & K.matrix).any()
        )
        if L in paper:
            p = paper[L]
            decoded = decode_dyadic(sigma_sequences(K), p)
            report.check(
                f"fig4_L{L}_paper_solution",
                p in sols and decoded.positions == p,
                positions_one_based=[x + 1 for x in p],
            )
    gap = 4
    h = max(p.shape[0] for p in panels)
    w = sum(p.shape[1] for p in panels) + gap * (len(panels) - 1)
    canvas = np.zeros((h, w), dtype=int)
    x = 0
    for p in panels:
        canvas[: p.shape[0], x : x + p.shape[1]] = p
        x += p.shape[1] + gap
    # invert so dyadic entries render dark
    image = 2 - canvas
    name = "fig4_dyadic_L" + "_L".join(str(L) for L in sizes)
    report.outputs.append(netpbm.write_pgm(outdir / f"{name}.pgm", image, maxval=2).name)
    report.outputs.append(write_csv(outdir / f"{name}.csv", ["L", "i", "j"], rows).name)


def sigma_figure(outdir: Path, report: RunReport, L: int = 7) -> None:
    seq = sigma_sequences(build_kernel(L))
    logs = seq.log2()
    report.outputs.append(netpbm.write_pbm(outdir / f"fig5_sigma_L{L}.pbm", netpbm.line_plot(logs)).name)
    report.outputs.append(
        write_csv(
            outdir / f"fig5_sigma_L{L}.csv",
            ["i", "sigma_decimal", "log2_sigma"],
            [[i, s, fig_float(v)] for i, (s, v) in enumerate(zip(seq.sigma, logs))],
        ).name
    )
    report.check(
        "fig5_sequence_shape",
        len(logs) == L * L and all(s > 0 for s in seq.sigma) and max(logs) < L * L,
        points=len(logs),
    )


FIGURES = (kernel_figure, spectrum_figure, bitsums_figure, dyadic_figure, sigma_figure)


def regenerate(outdir) -> RunReport:
    """Write all figure artifacts and ``manifest.json`` into ``outdir``.

    On the first failing figure the partial report is attached to the raised
    ``FigureError``.
    """
    start = time.perf_counter()
    outdir = Path(outdir)
    report = RunReport("figures", {"out": str(outdir)})
    outdir.mkdir(parents=True, exist_ok=True)
    for make in FIGURES:
        try:
            make(outdir, report)
        except Exception as exc:
            report.wall_time_ms = int((time.perf_counter() - start) * 1000)
            raise FigureError(f"{make.__name__} failed: {exc}", report) from exc
    for name in report.outputs:
        report.check(f"nonempty:{name}", (outdir / name).stat().st_size > 0)
    report.wall_time_ms = int((time.perf_counter() - start) * 1000)
    (outdir / "manifest.json").write_text(json.dumps(report.to_json(), indent=2) + "\n")
    return report
