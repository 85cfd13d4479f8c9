"""Exact Ho-Kalman realization from Markov parameters.

Everything is computed over :class:`fractions.Fraction`, so ranks are exact
and no tolerance is involved anywhere.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, List, Sequence as _Seq

from .errors import OrderUndeterminedError, ValidationError

__all__ = [
    "Rational",
    "RationalMatrix",
    "LinearSystem",
    "HankelMatrix",
    "markov_parameters",
    "block_hankel",
    "rank_factor",
    "ho_kalman",
    "mcmillan_degree",
    "saturated_rank",
]

Rational = Fraction


def to_rational(value) -> Fraction:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, float):
        raise TypeError("floats are not accepted; pass ints, Fractions or 'p/q' strings")
    return Fraction(value)


@dataclass(frozen=True)
class RationalMatrix:
    """Dense ``rows x cols`` matrix of Fractions in row-major order.

    Zero-sized dimensions are allowed so that order-0 systems can be
    represented.
    """

    rows: int
    cols: int
    entries: tuple

    def __post_init__(self):
        entries = tuple(to_rational(v) for v in self.entries)
        if self.rows < 0 or self.cols < 0 or len(entries) != self.rows * self.cols:
            raise ValueError(
                f"{len(entries)} entries do not fill a {self.rows}x{self.cols} matrix"
            )
        object.__setattr__(self, "entries", entries)

    @classmethod
    def from_rows(cls, rows: Iterable[Iterable], cols: int = None) -> "RationalMatrix":
        rows = [list(r) for r in rows]
        if cols is None:
            cols = len(rows[0]) if rows else 0
        if any(len(r) != cols for r in rows):
            raise ValueError("ragged matrix rows")
        return cls(len(rows), cols, tuple(v for r in rows for v in r))

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "RationalMatrix":
        return cls(rows, cols, (0,) * (rows * cols))

    @classmethod
    def identity(cls, n: int) -> "RationalMatrix":
        return cls(n, n, tuple(int(i == j) for i in range(n) for j in range(n)))

    @property
    def shape(self) -> tuple:
        return self.rows, self.cols

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i * self.cols + j]

    def to_rows(self) -> List[list]:
        c = self.cols
        return [list(self.entries[i * c:(i + 1) * c]) for i in range(self.rows)]

    def submatrix(self, row_idx, col_idx) -> "RationalMatrix":
        row_idx, col_idx = list(row_idx), list(col_idx)
        return RationalMatrix(
            len(row_idx), len(col_idx),
            tuple(self[i, j] for i in row_idx for j in col_idx),
        )

    def transpose(self) -> "RationalMatrix":
        return RationalMatrix(
            self.cols, self.rows,
            tuple(self[i, j] for j in range(self.cols) for i in range(self.rows)),
        )

    def __matmul__(self, other: "RationalMatrix") -> "RationalMatrix":
        if self.cols != other.rows:
            raise ValueError(f"shape mismatch {self.shape} @ {other.shape}")
        a, b = self.to_rows(), other.to_rows()
        bt = list(zip(*b)) if b else [()] * other.cols
        return RationalMatrix(
            self.rows, other.cols,
            tuple(sum((x * y for x, y in zip(row, col)), Fraction(0))
                  for row in a for col in bt),
        )

    def __add__(self, other: "RationalMatrix") -> "RationalMatrix":
        if self.shape != other.shape:
            raise ValueError(f"shape mismatch {self.shape} + {other.shape}")
        return RationalMatrix(self.rows, self.cols,
                              tuple(x + y for x, y in zip(self.entries, other.entries)))

    def __sub__(self, other: "RationalMatrix") -> "RationalMatrix":
        if self.shape != other.shape:
            raise ValueError(f"shape mismatch {self.shape} - {other.shape}")
        return RationalMatrix(self.rows, self.cols,
                              tuple(x - y for x, y in zip(self.entries, other.entries)))

    def is_zero(self) -> bool:
        return not any(self.entries)

    @staticmethod
    def hstack(blocks: _Seq["RationalMatrix"]) -> "RationalMatrix":
        rows = blocks[0].rows
        cols = sum(b.cols for b in blocks)
        out = [sum((b.to_rows()[i] for b in blocks), []) for i in range(rows)]
        return RationalMatrix.from_rows(out, cols)

    @staticmethod
    def vstack(blocks: _Seq["RationalMatrix"]) -> "RationalMatrix":
        cols = blocks[0].cols
        return RationalMatrix.from_rows(sum((b.to_rows() for b in blocks), []), cols)

    def rref(self):
        """Reduced row-echelon form and the list of pivot columns."""
        m = self.to_rows()
        pivots = []
        r = 0
        for c in range(self.cols):
            pivot = next((i for i in range(r, self.rows) if m[i][c] != 0), None)
            if pivot is None:
                continue
            m[r], m[pivot] = m[pivot], m[r]
            inv = 1 / m[r][c]
            m[r] = [v * inv for v in m[r]]
            for i in range(self.rows):
                if i != r and m[i][c] != 0:
                    f = m[i][c]
                    m[i] = [x - f * y for x, y in zip(m[i], m[r])]
            pivots.append(c)
            r += 1
            if r == self.rows:
                break
        return RationalMatrix.from_rows(m, self.cols), pivots

    def rank(self) -> int:
        return len(self.rref()[1])

    def inverse(self) -> "RationalMatrix":
        n = self.rows
        if n != self.cols:
            raise ValueError("only square matrices are invertible")
        aug = RationalMatrix.hstack([self, RationalMatrix.identity(n)]) if n else self
        red, pivots = aug.rref()
        if pivots[:n] != list(range(n)):
            raise ZeroDivisionError("matrix is singular")
        return red.submatrix(range(n), range(n, 2 * n))

    def to_json(self) -> list:
        return [[_fmt(v) for v in row] for row in self.to_rows()]


def _fmt(q: Fraction) -> str:
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def _matrix(value) -> RationalMatrix:
    return value if isinstance(value, RationalMatrix) else RationalMatrix.from_rows(value)


@dataclass(frozen=True)
class LinearSystem:
    """``x(k+1) = A x(k) + B u(k)``, ``y(k) = C x(k) + D u(k)``."""

    A: RationalMatrix
    B: RationalMatrix
    C: RationalMatrix
    D: RationalMatrix

    def __post_init__(self):
        for name in "ABCD":
            object.__setattr__(self, name, _matrix(getattr(self, name)))
        problems = linear_violations(self.A, self.B, self.C, self.D)
        if problems:
            raise ValidationError(problems)

    @property
    def order(self) -> int:
        return self.A.rows

    @property
    def n_inputs(self) -> int:
        return self.D.cols

    @property
    def n_outputs(self) -> int:
        return self.D.rows

    def reachability_matrix(self, k: int = None) -> RationalMatrix:
        """``[B, AB, ..., A^(k-1) B]`` with ``k`` defaulting to the order."""
        k = self.order if k is None else k
        blocks, cur = [], self.B
        for _ in range(k):
            blocks.append(cur)
            cur = self.A @ cur
        return RationalMatrix.hstack(blocks) if blocks else RationalMatrix.zeros(self.order, 0)

    def observability_matrix(self, k: int = None) -> RationalMatrix:
        """``[C; CA; ...; C A^(k-1)]`` with ``k`` defaulting to the order."""
        k = self.order if k is None else k
        blocks, cur = [], self.C
        for _ in range(k):
            blocks.append(cur)
            cur = cur @ self.A
        return RationalMatrix.vstack(blocks) if blocks else RationalMatrix.zeros(0, self.order)


def linear_violations(A, B, C, D) -> list:
    n = A.rows
    problems = []
    if A.cols != n:
        problems.append(f"A must be square, got {A.rows}x{A.cols}")
    if B.rows != n:
        problems.append(f"B must have {n} rows, got {B.rows}")
    if C.cols != n:
        problems.append(f"C must have {n} columns, got {C.cols}")
    if C.rows != D.rows:
        problems.append(f"C has {C.rows} rows but D has {D.rows}")
    if B.cols != D.cols:
        problems.append(f"B has {B.cols} columns but D has {D.cols}")
    return problems


def markov_parameters(sys: LinearSystem, count: int) -> list:
    """``[D, CB, CAB, CA^2B, ...]``, ``count`` terms."""
    if count < 1:
        raise ValueError("count must be positive")
    out = [sys.D]
    cur = sys.B
    for _ in range(count - 1):
        out.append(sys.C @ cur)
        cur = sys.A @ cur
    return out


@dataclass(frozen=True)
class HankelMatrix:
    """Block Hankel array whose ``(i, j)`` block is ``M_{i+j+1}``."""

    block_rows: int
    block_cols: int
    markov: tuple
    assembled: RationalMatrix


def _block_shape(markov) -> tuple:
    if not markov:
        raise ValueError("empty Markov sequence")
    shape = _matrix(markov[0]).shape
    for k, mk in enumerate(markov):
        if _matrix(mk).shape != shape:
            raise ValueError(f"Markov parameter {k} has shape {_matrix(mk).shape}, expected {shape}")
    return shape


def block_hankel(markov: _Seq, r: int, c: int) -> HankelMatrix:
    """Assemble the ``r x c`` block Hankel matrix from ``M_1, ..., M_{r+c-1}``.

    ``markov[0]`` is the feedthrough ``M_0`` and is not used.
    """
    markov = tuple(_matrix(mk) for mk in markov)
    if r < 0 or c < 0:
        raise ValueError("block dimensions must be non-negative")
    need = r + c
    if len(markov) < need:
        raise ValueError(
            f"a {r}x{c} block Hankel matrix needs Markov parameters M_0..M_{need - 1}, "
            f"got {len(markov)} terms"
        )
    p, m = _block_shape(markov)
    rows = []
    for i in range(r):
        for ii in range(p):
            rows.append([markov[i + j + 1][ii, jj] for j in range(c) for jj in range(m)])
    return HankelMatrix(r, c, markov, RationalMatrix.from_rows(rows, c * m))


def rank_factor(H: RationalMatrix):
    """Exact rank factorisation ``H = O R``.

    ``O`` collects the pivot columns of ``H`` and ``R`` the non-zero rows of
    its reduced echelon form.  Returns ``(O, R, rank)``.
    """
    red, pivots = H.rref()
    rank = len(pivots)
    O = H.submatrix(range(H.rows), pivots)
    R = red.submatrix(range(rank), range(H.cols))
    return O, R, rank


def _hankel_rank(markov, r, c) -> int:
    if r <= 0 or c <= 0:
        return 0
    return block_hankel(markov, r, c).assembled.rank()


def saturated_rank(markov: _Seq, r: int, c: int) -> int:
    """Rank of the ``r x c`` block Hankel matrix, checked for saturation.

    The rank must already be reached by the ``(r-1) x (c-1)`` matrix, and
    must not grow at ``(r+1) x (c+1)`` when enough data is available.
    """
    if r < 1 or c < 1:
        raise ValueError("need at least one block row and one block column")
    rank = _hankel_rank(markov, r, c)
    smaller = _hankel_rank(markov, r - 1, c - 1)
    larger = None
    if len(markov) >= r + c + 2:
        larger = _hankel_rank(markov, r + 1, c + 1)
    if smaller != rank or (larger is not None and larger != rank):
        grown = f"{smaller} -> {rank}" + (f" -> {larger}" if larger is not None else "")
        raise OrderUndeterminedError(
            f"block Hankel rank has not saturated ({grown}); supply more Markov "
            f"parameters and increase the block dimensions"
        )
    return rank


def mcmillan_degree(markov: _Seq, r: int, c: int) -> int:
    """Minimal state dimension, i.e. the saturated block Hankel rank."""
    return saturated_rank(markov, r, c)


def ho_kalman(markov: _Seq, r: int, c: int, p: int, m: int) -> LinearSystem:
    """Minimal realization ``(A, B, C, D)`` of ``markov = [M_0, M_1, ...]``.

    Uses ``M_0 .. M_{r+c-1}``.  The realization reproduces every supplied
    Markov parameter exactly; otherwise :class:`OrderUndeterminedError` is
    raised.
    """
    markov = [_matrix(mk) for mk in markov]
    if _block_shape(markov) != (p, m):
        raise ValueError(f"Markov parameters are {_block_shape(markov)}, expected {(p, m)}")
    rank = saturated_rank(markov, r, c)
    D = markov[0]
    if rank == 0:
        sys = LinearSystem(RationalMatrix.zeros(0, 0), RationalMatrix.zeros(0, m),
                           RationalMatrix.zeros(p, 0), D)
    else:
        H = block_hankel(markov, r, c).assembled
        O, R, _ = rank_factor(H)
        C = O.submatrix(range(p), range(rank))
        B = R.submatrix(range(rank), range(m))
        top = O.submatrix(range((r - 1) * p), range(rank))
        left = R.submatrix(range(rank), range((c - 1) * m))
        # shifted Hankel: block (i, j) = M_{i+j+2}
        shifted = H.submatrix(range(p, r * p), range((c - 1) * m))
        row_sel = top.transpose().rref()[1]
        col_sel = left.rref()[1]
        A = (top.submatrix(row_sel, range(rank)).inverse()
             @ shifted.submatrix(row_sel, col_sel)
             @ left.submatrix(range(rank), col_sel).inverse())
        sys = LinearSystem(A, B, C, D)
    if markov_parameters(sys, len(markov)) != markov:
        raise OrderUndeterminedError(
            f"order-{rank} realization does not reproduce all {len(markov)} Markov "
            f"parameters; supply more Markov parameters and increase the block dimensions"
        )
    return sys
