"""Interaction-kernel toolkit for the N-Queens problem."""

from .board_codec import BoardConfig, digit_sum_s2, flatten, iter_patterns, unflatten
from .classifier import build_q_kernel, power_of_two_classify, quadratic_form
from .fractal import AND, OR, XOR, build_table, hypercube_digit_sum
from .kernel import InteractionKernel, build_kernel, row_bitsums, spectrum, verify_decomposition
from .oracle import SolutionSet, enumerate_solutions
from .sigma_solver import decode_dyadic, dyadic_closure, sigma_sequences, solve

__version__ = "0.1.0"

__all__ = [
    "AND",
    "OR",
    "XOR",
    "BoardConfig",
    "InteractionKernel",
    "SolutionSet",
    "build_kernel",
    "build_q_kernel",
    "build_table",
    "decode_dyadic",
    "digit_sum_s2",
    "dyadic_closure",
    "enumerate_solutions",
    "flatten",
    "hypercube_digit_sum",
    "iter_patterns",
    "power_of_two_classify",
    "quadratic_form",
    "row_bitsums",
    "sigma_sequences",
    "solve",
    "spectrum",
    "unflatten",
    "verify_decomposition",
]
