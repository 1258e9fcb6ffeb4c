"""Command line entry point: ``qkernel <command> [flags]``."""

from __future__ import annotations

import argparse
import json
import random
import sys
import time
from pathlib import Path

import numpy as np

from . import fractal, netpbm, oracle
from .board_codec import BoardConfig, load_board, shift_positions
from .classifier import build_q_kernel, power_of_two_classify, quadratic_form
from .figures import FigureError, RunReport, regenerate, write_csv
from .kernel import build_kernel, row_bitsums, spectrum
from .sigma_solver import sigma_sequences, solve

MAX_SPECTRUM_SIZE = 16
MAX_KERNEL_SIZE = 64
MAX_BOTH_SIZE = 10


class CheckFailed(RuntimeError):
    def __init__(self, message: str, **detail):
        super().__init__(message)
        self.detail = detail


def _emit(text: str, out: str | None) -> None:
    if out and out != "-":
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def _dumps(obj) -> str:
    return json.dumps(obj, indent=2) + "\n"


def _require_size(args, lo: int = 1, hi: int | None = None) -> int:
    L = args.size
    if L is None:
        raise ValueError(f"{args.command} needs --size")
    if L < lo or (hi is not None and L > hi):
        raise ValueError(f"--size must lie in [{lo}, {hi}], got {L}")
    return L


# -- commands ----------------------------------------------------------------


def cmd_kernel(args) -> int:
    start = time.perf_counter()
    L = _require_size(args, 1, MAX_KERNEL_SIZE)
    fmt = args.format or "pbm"
    if fmt not in ("pbm", "csv", "json"):
        raise ValueError(f"kernel format must be pbm, csv or json, got {fmt}")
    outdir = Path(args.out or ".")
    outdir.mkdir(parents=True, exist_ok=True)
    K = build_kernel(L)
    report = RunReport("kernel", {"size": L, "format": fmt, "spectrum": args.spectrum, "bitsums": args.bitsums})

    path = outdir / f"kernel_L{L}.{fmt}"
    if fmt == "pbm":
        netpbm.write_pbm(path, K.matrix)
    elif fmt == "csv":
        write_csv(path, None, K.matrix.astype(int).tolist())
    else:
        path.write_text(json.dumps({"L": L, "rows": K.matrix.astype(int).tolist()}) + "\n")
    report.outputs.append(str(path))
    report.check("symmetric", bool(np.array_equal(K.matrix, K.matrix.T)))
    report.check("traceless", not K.matrix.diagonal().any())

    if args.spectrum:
        if L > MAX_SPECTRUM_SIZE:
            raise ValueError(f"spectrum is limited to L <= {MAX_SPECTRUM_SIZE}")
        spec = spectrum(K)
        spath = outdir / f"spectrum_L{L}.json"
        spath.write_text(_dumps(spec.to_json(L)))
        cpath = write_csv(
            outdir / f"spectrum_L{L}.csv",
            ["index", "eigenvalue"],
            [[k, repr(v)] for k, v in enumerate(spec.eigenvalues)],
        )
        report.outputs += [str(spath), str(cpath)]
        report.check("eigenvalue_sum", abs(sum(spec.eigenvalues)) <= 1e-9 * L * L)

    if args.bitsums:
        sums, lo, hi = row_bitsums(K)
        bpath = write_csv(outdir / f"bitsums_L{L}.csv", ["row", "bitsum"], list(enumerate(sums)))
        sweep = []
        for n in range(min(4, L), L + 1):
            _, mn, mx = row_bitsums(build_kernel(n))
            sweep.append([n, mn, mx])
        wpath = write_csv(outdir / f"bitsums_sweep_L{L}.csv", ["L", "min", "max"], sweep)
        report.outputs += [str(bpath), str(wpath)]
        report.parameters["bitsum_min"] = lo
        report.parameters["bitsum_max"] = hi

    report.wall_time_ms = int((time.perf_counter() - start) * 1000)
    sys.stdout.write(_dumps(report.to_json()))
    return 0 if report.ok else 1


def cmd_classify(args) -> int:
    if args.random:
        L = _require_size(args, 1)
        rng = random.Random(args.seed)
        boards = []
        for _ in range(args.random):
            n = rng.randint(1, L)
            boards.append(BoardConfig.from_positions(L, rng.sample(range(L * L), n)))
    else:
        if not args.input:
            raise ValueError("classify needs an input file, '-' for stdin, or --random COUNT")
        text = sys.stdin.read() if args.input == "-" else Path(args.input).read_text()
        boards = [load_board(text, one_based=args.one_based)]

    verdicts = []
    for S in boards:
        K = build_kernel(S.size_L)
        v = power_of_two_classify(build_q_kernel(K), S)
        qf = quadratic_form(K, S)
        if (qf == 0) != v.is_nonattacking or qf != v.quadratic_value:
            raise CheckFailed("quadratic form and power-of-two criteria disagree",
                              positions=list(S.positions), quadratic_form=qf)
        verdicts.append({"L": S.size_L, "positions": shift_positions(S.positions, args.one_based),
                         **v.to_json(one_based=args.one_based)})
    _emit(_dumps(verdicts[0] if len(verdicts) == 1 and not args.random else verdicts), args.out)
    return 0


def cmd_solve(args) -> int:
    L = _require_size(args, 1)
    method = args.method
    if method == "oracle" and L > oracle.MAX_ORACLE_SIZE:
        raise ValueError(f"oracle method is limited to L <= {oracle.MAX_ORACLE_SIZE}")
    if method == "both" and L > MAX_BOTH_SIZE:
        raise ValueError(f"method 'both' is limited to L <= {MAX_BOTH_SIZE}")

    if method in ("dyadic", "both"):
        result = solve(sigma_sequences(build_kernel(L)), L, workers=args.workers)
    if method in ("oracle", "both"):
        truth = oracle.enumerate_solutions(L)
        if method == "oracle":
            result = truth
        elif set(result.solutions) != set(truth.solutions):
            only_dyadic = sorted(set(result.solutions) - set(truth.solutions))
            only_oracle = sorted(set(truth.solutions) - set(result.solutions))
            raise CheckFailed("dyadic solver and oracle disagree",
                              only_dyadic=only_dyadic, only_oracle=only_oracle)
        else:
            print(f"equality check passed: {len(result)} solutions", file=sys.stderr)

    payload = [shift_positions(p, args.one_based) for p in result.solutions]
    _emit(json.dumps(payload) + "\n", args.out)
    return 0


def cmd_sigma(args) -> int:
    L = _require_size(args, 1)
    seq = sigma_sequences(build_kernel(L))
    fmt = args.format or "csv"
    if fmt == "csv":
        rows = [[i, s, hex(s), bin(s).count("1")] for i, s in enumerate(seq.sigma)]
        text = "i,sigma_decimal,sigma_hex,popcount\n" + "".join(",".join(map(str, r)) + "\n" for r in rows)
    elif fmt == "json":
        text = _dumps({"L": L, "sigma": [str(s) for s in seq.sigma],
                       "sigma_bar": [str(s) for s in seq.sigma_bar]})
    else:
        raise ValueError(f"sigma format must be csv or json, got {fmt}")
    _emit(text, args.out)
    return 0


def cmd_fractal(args) -> int:
    fmt = args.format
    if fmt is None:
        fmt = "csv" if not args.out or args.out.endswith(".csv") else "pgm"
    if fmt not in ("pgm", "csv"):
        raise ValueError(f"fractal format must be pgm or csv, got {fmt}")
    table = fractal.build_table(fractal.OPS[args.op], args.bits)
    if fmt == "pgm":
        if not args.out:
            raise ValueError("pgm output needs --out")
        netpbm.write_pgm(args.out, table.digit_sums, maxval=args.bits)
    else:
        values = table.digit_sums if args.digit_sums else table.table
        _emit("".join(",".join(map(str, row)) + "\n" for row in values.tolist()), args.out)
    return 0


def cmd_oracle(args) -> int:
    L = _require_size(args, 1, oracle.MAX_ORACLE_SIZE)
    if args.counts:
        _emit(json.dumps(oracle.counts(L)) + "\n", args.out)
    else:
        sols = oracle.enumerate_solutions(L)
        _emit(json.dumps([shift_positions(p, args.one_based) for p in sols.solutions]) + "\n", args.out)
    return 0


def cmd_figures(args) -> int:
    report = regenerate(args.out or "figures")
    sys.stdout.write(_dumps(report.to_json()))
    if not report.ok:
        failed = [c["name"] for c in report.checks_passed if not c["passed"]]
        raise CheckFailed("figure checks failed", failed=failed)
    return 0


# -- parser ------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--size", "-L", type=int, help="board edge length")
    common.add_argument("--out", help="output file or directory, depending on the command")
    common.add_argument("--format", help="output format (command specific)")
    common.add_argument("--one-based", action="store_true",
                        help="read and write cell positions counting from 1")
    common.add_argument("--seed", type=int, default=0, help="seed for randomized sweeps")

    parser = argparse.ArgumentParser(prog="qkernel", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("kernel", parents=[common], help="export the interaction kernel")
    p.add_argument("--spectrum", action="store_true", help="also write the eigenvalue spectrum")
    p.add_argument("--bitsums", action="store_true", help="also write row bit sums and the bound sweep")
    p.set_defaults(func=cmd_kernel)

    p = sub.add_parser("classify", parents=[common], help="classify a board with both kernel criteria")
    p.add_argument("input", nargs="?", help="board file (text or JSON); '-' reads stdin")
    p.add_argument("--random", type=int, default=0, metavar="COUNT",
                   help="classify COUNT seeded random boards of --size instead")
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("solve", parents=[common], help="enumerate all full solutions")
    p.add_argument("--method", choices=("dyadic", "oracle", "both"), default="dyadic")
    p.add_argument("--workers", type=int, default=None,
                   help="worker processes (default: QKERNEL_THREADS or 1)")
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("sigma", parents=[common], help="characteristic integer sequence of the kernel")
    p.set_defaults(func=cmd_sigma)

    p = sub.add_parser("fractal", parents=[common], help="bitwise operator tables")
    p.add_argument("--op", choices=sorted(fractal.OPS), default="and")
    p.add_argument("--bits", type=int, default=8)
    p.add_argument("--digit-sums", action="store_true", help="CSV of digit sums instead of raw values")
    p.set_defaults(func=cmd_fractal)

    p = sub.add_parser("oracle", parents=[common], help="independent backtracking enumeration")
    p.add_argument("--counts", action="store_true")
    p.set_defaults(func=cmd_oracle)

    p = sub.add_parser("figures", parents=[common], help="regenerate all figure artifacts")
    p.set_defaults(func=cmd_figures)
    return parser


def _fail(command: str, exc: Exception, **extra) -> int:
    body = {"command": command, "error": type(exc).__name__, "message": str(exc), **extra}
    sys.stderr.write(json.dumps(body) + "\n")
    return 1


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except CheckFailed as exc:
        return _fail(args.command, exc, **exc.detail)
    except FigureError as exc:
        return _fail(args.command, exc, report=exc.report.to_json())
    except OSError as exc:
        return _fail(args.command, exc, path=exc.filename)
    except ValueError as exc:
        return _fail(args.command, exc)


if __name__ == "__main__":
    sys.exit(main())
