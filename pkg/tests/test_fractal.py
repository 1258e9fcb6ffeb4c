import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from qkernel.fractal import (
    AND,
    OPS,
    OR,
    XOR,
    ExponentMatrix,
    SizeError,
    build_table,
    digit_sum_recursive,
    digit_sum_table,
    direct_table,
    entry,
    hypercube_digit_sum,
    popcount,
    quadrant_offsets_ok,
)
from qkernel.kernel import build_kernel
from qkernel.oracle import enumerate_solutions
from qkernel.sigma_solver import sigma_sequences

NUMPY_OPS = {"and": np.bitwise_and, "or": np.bitwise_or, "xor": np.bitwise_xor}


def test_or_exponent_matrix():
    assert OR.m == ((0, 1), (1, 1))


def test_small_tables():
    assert build_table(OR, 1).table.tolist() == [[0, 1], [1, 1]]
    assert build_table(AND, 2).table.tolist() == [[0, 0, 0, 0], [0, 1, 0, 1], [0, 0, 2, 2], [0, 1, 2, 3]]
    assert build_table(XOR, 1).table.tolist() == [[0, 1], [1, 0]]


def test_small_digit_sums():
    assert digit_sum_table(build_table(OR, 1)).tolist() == [[0, 1], [1, 1]]
    assert digit_sum_table(build_table(OR, 2))[3, 3] == 2


@pytest.mark.parametrize("name", ["and", "or", "xor"])
@pytest.mark.parametrize("n", [1, 2, 5, 8])
def test_recursion_matches_numpy_bitwise(name, n):
    t = build_table(OPS[name], n)
    i = np.arange(1 << n)
    assert np.array_equal(t.table, NUMPY_OPS[name](i[:, None], i[None, :]))
    assert np.array_equal(t.table, direct_table(OPS[name], n))


def test_and_digit_sums_exhaustive_n8():
    t = build_table(AND, 8)
    ds = digit_sum_table(t)
    for i in range(256):
        for j in range(256):
            assert ds[i, j] == bin(i & j).count("1")


@pytest.mark.parametrize("op", [AND, OR, XOR])
@pytest.mark.parametrize("n", [1, 3, 6])
def test_digit_sum_recursion_and_self_similarity(op, n):
    t = build_table(op, n)
    assert np.array_equal(t.digit_sums, digit_sum_recursive(op, n))
    assert quadrant_offsets_ok(t)
    if n > 1:
        prev = digit_sum_recursive(op, n - 1)
        half = 1 << (n - 1)
        for a in (0, 1):
            for b in (0, 1):
                quad = t.digit_sums[a * half:(a + 1) * half, b * half:(b + 1) * half]
                assert np.array_equal(quad, prev + op.m[a][b])


@pytest.mark.parametrize("n", [1, 4, 8])
def test_de_morgan(n):
    mask = (1 << n) - 1
    t_and = build_table(AND, n).table
    t_or = build_table(OR, n).table
    idx = np.arange(1 << n)
    comp = mask ^ idx
    assert np.array_equal(mask ^ t_and[np.ix_(comp, comp)], t_or)


def test_size_limits():
    with pytest.raises(SizeError):
        build_table(AND, 0)
    with pytest.raises(SizeError):
        build_table(AND, 14)


def test_exponent_matrix_validation():
    with pytest.raises(ValueError):
        ExponentMatrix(((0, 2), (1, 1)))


@given(st.integers(0, 2**200), st.integers(0, 2**200))
def test_entry_on_demand(i, j):
    assert entry(AND, i, j) == i & j
    assert entry(OR, i, j) == i | j
    assert entry(XOR, i, j) == i ^ j


def test_popcount_vectorized():
    vals = np.array([0, 1, 3, 255, 2**40 - 1])
    assert popcount(vals).tolist() == [0, 1, 2, 8, 40]


def test_hypercube_examples():
    s4 = sigma_sequences(build_kernel(4))
    assert hypercube_digit_sum(s4, [1, 7, 8, 14]) == 4
    assert hypercube_digit_sum(s4, [0, 1]) == bin(s4.sigma_bar[0] & s4.sigma_bar[1]).count("1")
    s2 = sigma_sequences(build_kernel(2))
    assert hypercube_digit_sum(s2, [0, 3]) == 0
    with pytest.raises(ValueError):
        hypercube_digit_sum(s2, [])


def test_hypercube_pair_removes_own_bits():
    s4 = sigma_sequences(build_kernel(4))
    value = s4.sigma_bar[0] & s4.sigma_bar[1]
    assert not value & 0b11


def test_hypercube_predicate_small_boards():
    from itertools import product

    for L in range(1, 7):
        seq = sigma_sequences(build_kernel(L))
        truth = set(enumerate_solutions(L).solutions)
        for cols in product(range(L), repeat=L):
            p = tuple(r * L + c for r, c in enumerate(cols))
            assert (hypercube_digit_sum(seq, p) == L) == (p in truth)
