import json
from math import comb

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from qkernel.board_codec import (
    BoardConfig,
    DimensionError,
    board_from_json,
    board_to_json,
    digit_sum_s2,
    flatten,
    format_board_text,
    iter_patterns,
    load_board,
    parse_board_text,
    pattern_count,
    unflatten,
)


def test_flatten_identity_2x2():
    cfg = flatten([[1, 0], [0, 1]])
    assert cfg.bits.astype(int).tolist() == [1, 0, 0, 1]
    assert cfg.positions == (0, 3)
    assert cfg.code_nu == 9


def test_flatten_empty_board():
    cfg = flatten(np.zeros((4, 4), dtype=int))
    assert cfg.code_nu == 0
    assert not cfg.bits.any()


def test_flatten_six_by_six_example():
    board = np.zeros((6, 6), dtype=int)
    for r, c in [(0, 3), (1, 0), (2, 4), (3, 1), (4, 5), (5, 2)]:
        board[r, c] = 1
    assert flatten(board).positions == (3, 6, 16, 19, 29, 32)


@pytest.mark.parametrize("shape", [(2, 3), (3,), (0, 0)])
def test_flatten_rejects_non_square(shape):
    with pytest.raises(DimensionError):
        flatten(np.zeros(shape))


@pytest.mark.parametrize("v,expected", [(0, 0), (7, 3), (2**100, 1), (2**200 - 1, 200)])
def test_digit_sum(v, expected):
    assert digit_sum_s2(v) == expected


@given(st.integers(min_value=0, max_value=2**300))
def test_digit_sum_matches_floor_formula(v):
    assert digit_sum_s2(v) == sum((v >> i) % 2 for i in range(v.bit_length() + 1))


def test_digit_sum_rejects_negative():
    with pytest.raises(ValueError):
        digit_sum_s2(-1)


@settings(max_examples=200)
@given(st.integers(1, 12).flatmap(
    lambda L: st.lists(st.booleans(), min_size=L * L, max_size=L * L).map(
        lambda bits: np.array(bits).reshape(L, L))))
def test_round_trip_and_popcount(board):
    cfg = flatten(board)
    assert np.array_equal(unflatten(cfg), board)
    assert cfg.code_nu == sum(1 << j for j, b in enumerate(board.reshape(-1)) if b)
    assert digit_sum_s2(cfg.code_nu) == int(board.sum()) == len(cfg.positions)
    assert list(cfg.positions) == sorted(set(cfg.positions))


def test_iter_patterns_examples():
    assert list(iter_patterns(2, 1)) == [(0,), (1,), (2,), (3,)]
    assert len(list(iter_patterns(2, 2))) == 6
    assert sum(1 for _ in iter_patterns(4, 4)) == comb(16, 4) == 1820


def test_iter_patterns_too_many_queens_is_empty():
    assert list(iter_patterns(2, 5)) == []
    assert pattern_count(2, 5) == 0


@pytest.mark.parametrize("L", [1, 2, 3, 4])
def test_iter_patterns_exhaustive_counts(L):
    for N in range(L * L + 1):
        pats = list(iter_patterns(L, N))
        assert len(pats) == len(set(pats)) == comb(L * L, N) == pattern_count(L, N)
        assert pats == sorted(pats)


def test_board_text_round_trip():
    text = ".Q..\n...Q\nQ...\n..Q.\n"
    cfg = parse_board_text(text)
    assert cfg.positions == (1, 7, 8, 14)
    assert format_board_text(cfg) == text


@pytest.mark.parametrize("text", [".Q.\n..\n...\n", "Q.\n.X\n", ""])
def test_board_text_rejects_bad_input(text):
    with pytest.raises(ValueError):
        parse_board_text(text)


def test_json_forms_and_one_based():
    cfg = board_from_json({"L": 6, "positions": [4, 7, 17, 20, 30, 33]}, one_based=True)
    assert cfg.positions == (3, 6, 16, 19, 29, 32)
    assert board_to_json(cfg, one_based=True) == {"L": 6, "positions": [4, 7, 17, 20, 30, 33]}
    assert load_board(json.dumps(board_to_json(cfg))) == cfg
    assert load_board("Q.\n..\n") == BoardConfig(2, 1)


def test_positions_out_of_range():
    with pytest.raises(DimensionError):
        BoardConfig.from_positions(2, [4])
    with pytest.raises(DimensionError):
        BoardConfig(2, 1 << 4)
