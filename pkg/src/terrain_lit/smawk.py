"""Row maxima of implicit totally monotone matrices.

Matrix entries mix exact areas with infinitesimals.  An entry is a pair
(rank, value): rank 2 holds an area, rank 1 holds +j*eps as j, rank 0 holds
-j*eps as -j.  Plain tuple comparison then gives exactly the required order:
every area beats every +eps entry, which beats every -eps entry, and within
a rank the values compare as numbers.
"""

from __future__ import annotations

from typing import Callable, Dict, List, NamedTuple, Optional, Sequence

AREA, POS_EPS, NEG_EPS = 2, 1, 0


class MatrixEntry(NamedTuple):
    rank: int
    value: object

    @property
    def kind(self) -> str:
        return ("NegEps", "PosEps", "Area")[self.rank]

    def __repr__(self) -> str:
        if self.rank == AREA:
            return f"Area({self.value})"
        if self.rank == POS_EPS:
            return f"PosEps({self.value})"
        return f"NegEps({-self.value})"


def Area(value) -> MatrixEntry:
    return MatrixEntry(AREA, value)


def PosEps(col: int) -> MatrixEntry:
    return MatrixEntry(POS_EPS, col)


def NegEps(col: int) -> MatrixEntry:
    return MatrixEntry(NEG_EPS, -col)


def entry_compare(a, b) -> int:
    """-1, 0 or +1 as a is below, equal to or above b."""
    return (a > b) - (a < b)


class MatrixOracle:
    """Implicit rows x cols matrix given by an entry function, with an evaluation counter."""

    def __init__(self, rows: int, cols: int, entry: Callable[[int, int], tuple], memo: bool = True):
        self.rows = rows
        self.cols = cols
        self._entry = entry
        self._memo: Optional[Dict] = {} if memo else None
        self.evaluations = 0

    def __call__(self, i: int, j: int):
        memo = self._memo
        if memo is not None:
            key = (i, j)
            v = memo.get(key)
            if v is None:
                self.evaluations += 1
                v = memo[key] = self._entry(i, j)
            return v
        self.evaluations += 1
        return self._entry(i, j)

    def dense(self) -> List[List[tuple]]:
        return [[self._entry(i, j) for j in range(self.cols)] for i in range(self.rows)]

    @classmethod
    def from_dense(cls, rows: Sequence[Sequence], memo: bool = False) -> "MatrixOracle":
        r = len(rows)
        c = len(rows[0]) if r else 0
        return cls(r, c, lambda i, j: rows[i][j], memo=memo)


def _smawk(rows: List[int], cols: List[int], f, out: Dict[int, int]) -> None:
    if not rows:
        return
    # reduce: keep at most len(rows) columns that can still hold a leftmost maximum
    stack: List[int] = []
    nrows = len(rows)
    for c in cols:
        while stack:
            r = rows[len(stack) - 1]
            if f(r, stack[-1]) < f(r, c):
                stack.pop()
            else:
                break
        if len(stack) < nrows:
            stack.append(c)
    _smawk(rows[1::2], stack, f, out)
    # interpolate the even rows between the odd rows' answers
    k = 0
    last_col = stack[-1]
    for idx in range(0, nrows, 2):
        r = rows[idx]
        stop = out[rows[idx + 1]] if idx + 1 < nrows else last_col
        best, bestval = stack[k], f(r, stack[k])
        while stack[k] != stop:
            k += 1
            v = f(r, stack[k])
            if v > bestval:
                best, bestval = stack[k], v
        out[r] = best


def row_maxima(m: MatrixOracle) -> List[int]:
    """Leftmost maximum column of every row, in O(rows + cols) evaluations."""
    if m.rows == 0 or m.cols == 0:
        return []
    out: Dict[int, int] = {}
    _smawk(list(range(m.rows)), list(range(m.cols)), m, out)
    return [out[i] for i in range(m.rows)]


def naive_row_maxima(m: MatrixOracle) -> List[int]:
    if m.cols == 0:
        return []
    res = []
    for i in range(m.rows):
        best, bestval = 0, m(i, 0)
        for j in range(1, m.cols):
            v = m(i, j)
            if v > bestval:
                best, bestval = j, v
        res.append(best)
    return res


def monotonicity_violations(m: MatrixOracle, limit: int = 1, both: bool = False) -> List[tuple]:
    """Quadruples (i, i2, j, j2), i < i2 and j < j2, breaking total monotonicity.

    The checked form: M[i2, j] > M[i2, j2] implies M[i, j] > M[i, j2].
    With ``both`` the mirror rule is checked as well: M[i, j] < M[i, j2]
    implies M[i2, j] < M[i2, j2].  Leftmost row maxima are only guaranteed
    to move right (which SMAWK relies on) when both hold; the first rule
    alone says nothing about rows with ties.  Runs in O(rows * cols^2).
    """
    dense = [[m(i, j) for j in range(m.cols)] for i in range(m.rows)]
    bad = []
    for j in range(m.cols):
        for j2 in range(j + 1, m.cols):
            lower = None  # some row below the current one prefers column j strictly
            for i in range(m.rows - 1, -1, -1):
                row = dense[i]
                if lower is not None and not row[j] > row[j2]:
                    bad.append((i, lower, j, j2))
                    if len(bad) >= limit:
                        return bad
                if row[j] > row[j2]:
                    lower = i
            if not both:
                continue
            upper = None  # some row above the current one prefers column j2 strictly
            for i in range(m.rows):
                row = dense[i]
                if upper is not None and not row[j] < row[j2]:
                    bad.append((upper, i, j, j2))
                    if len(bad) >= limit:
                        return bad
                if row[j] < row[j2]:
                    upper = i
    return bad


def is_totally_monotone(m: MatrixOracle, both: bool = False) -> bool:
    return not monotonicity_violations(m, both=both)
