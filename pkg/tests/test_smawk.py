import random
from fractions import Fraction

import hypothesis.strategies as st
from hypothesis import assume, given

from terrain_lit.smawk import (
    Area,
    MatrixOracle,
    NegEps,
    PosEps,
    entry_compare,
    is_totally_monotone,
    monotonicity_violations,
    naive_row_maxima,
    row_maxima,
)

EVAL_CONSTANT = 6


def test_epsilon_order():
    assert Area(Fraction(1, 1000)) > PosEps(10**6)
    assert PosEps(2) < PosEps(5)
    assert NegEps(2) > NegEps(5)
    assert PosEps(0) > NegEps(0)
    assert entry_compare(Area(3), Area(3)) == 0
    assert entry_compare(NegEps(1), Area(-5)) == -1
    assert repr(NegEps(3)) == "NegEps(3)" and NegEps(3).kind == "NegEps"


def test_tiny_matrices():
    assert row_maxima(MatrixOracle.from_dense([[Area(7)]])) == [0]
    m = MatrixOracle.from_dense([[Area(2), Area(1)], [Area(1), Area(2)]])
    assert row_maxima(m) == [0, 1]
    assert row_maxima(MatrixOracle(0, 5, lambda i, j: Area(0))) == []
    assert row_maxima(MatrixOracle(3, 0, lambda i, j: Area(0))) == []


def supermodular(rng, rows, cols, spread=4):
    a = sorted(rng.randint(0, spread) for _ in range(rows))
    b = sorted(rng.randint(0, spread) for _ in range(cols))
    c = [rng.randint(-spread * spread, spread * spread) for _ in range(cols)]
    d = [rng.randint(-5, 5) for _ in range(rows)]
    return [[a[i] * b[j] + c[j] + d[i] for j in range(cols)] for i in range(rows)]


def with_blocks(rng, dense):
    """Keep a contiguous block of areas per row, blocks moving right, eps elsewhere."""
    rows, cols = len(dense), len(dense[0])
    starts = sorted(rng.randint(0, cols - 1) for _ in range(rows))
    stops = sorted(rng.randint(1, cols) for _ in range(rows))
    out = []
    for i in range(rows):
        s, e = starts[i], max(stops[i], starts[i] + 1)
        out.append([Area(dense[i][j]) if s <= j < e else (PosEps(j) if j < s else NegEps(j)) for j in range(cols)])
    return out


def random_matrix(seed):
    rng = random.Random(seed)
    rows, cols = rng.randint(1, 40), rng.randint(1, 40)
    dense = supermodular(rng, rows, cols)
    if rng.random() < 0.5:
        return [[Area(v) for v in row] for row in dense]
    return with_blocks(rng, dense)


@given(st.integers(0, 10**9))
def test_synthetic_matrices_match_naive(seed):
    dense = random_matrix(seed)
    assume(is_totally_monotone(MatrixOracle.from_dense(dense), both=True))
    m = MatrixOracle.from_dense(dense, memo=True)
    assert row_maxima(m) == naive_row_maxima(MatrixOracle.from_dense(dense))
    assert m.evaluations <= EVAL_CONSTANT * (m.rows + m.cols)


@given(
    st.integers(1, 8).flatmap(
        lambda r: st.integers(1, 8).flatmap(
            lambda c: st.lists(st.lists(st.integers(-3, 3), min_size=c, max_size=c), min_size=r, max_size=r)
        )
    )
)
def test_small_arbitrary_monotone_matrices(rows):
    dense = [[Area(v) for v in row] for row in rows]
    m = MatrixOracle.from_dense(dense)
    assume(is_totally_monotone(m, both=True))
    assert row_maxima(m) == naive_row_maxima(m)


def test_one_sided_condition_allows_tied_rows():
    # passes the first rule vacuously, yet the leftmost maximum moves left
    m = MatrixOracle.from_dense([[Area(0), Area(1)], [Area(0), Area(0)]])
    assert is_totally_monotone(m) and not is_totally_monotone(m, both=True)
    assert naive_row_maxima(m) == [1, 0]


def test_leftmost_ties():
    dense = [[Area(v) for v in row] for row in ([1, 3, 3, 2], [0, 3, 3, 3], [0, 1, 2, 2])]
    m = MatrixOracle.from_dense(dense)
    assert is_totally_monotone(m, both=True)
    assert row_maxima(m) == naive_row_maxima(m) == [1, 1, 2]


def test_violation_reported():
    m = MatrixOracle.from_dense([[Area(1), Area(2)], [Area(2), Area(1)]])
    assert monotonicity_violations(m) == [(0, 1, 0, 1)]
    assert not is_totally_monotone(m)


def test_memo_counts_each_entry_once():
    calls = []
    m = MatrixOracle(3, 3, lambda i, j: calls.append((i, j)) or Area(i * j))
    m(1, 1)
    m(1, 1)
    assert m.evaluations == 1 and len(calls) == 1
    assert len(m.dense()) == 3
