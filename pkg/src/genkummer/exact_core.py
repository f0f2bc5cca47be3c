"""Exact integer and rational linear algebra.

Everything here works on Python ints (unbounded) or ``fractions.Fraction``;
floats are rejected on input.
"""

from fractions import Fraction
from typing import NamedTuple, Sequence


class IntegerMatrix:
    """Immutable integer matrix stored row-major as a tuple of tuples."""

    __slots__ = ("_rows", "nrows", "ncols")

    def __init__(self, rows, ncols=None):
        data = tuple(tuple(_check_int(x) for x in row) for row in rows)
        if data:
            width = len(data[0])
            if any(len(r) != width for r in data):
                raise ValueError("ragged rows")
        else:
            width = 0 if ncols is None else ncols
        if ncols is not None and data and width != ncols:
            raise ValueError("column count mismatch")
        self._rows = data
        self.nrows = len(data)
        self.ncols = width

    @classmethod
    def identity(cls, n):
        return cls([[int(i == j) for j in range(n)] for i in range(n)])

    @classmethod
    def zeros(cls, nrows, ncols):
        return cls([[0] * ncols for _ in range(nrows)], ncols=ncols)

    @property
    def shape(self):
        return self.nrows, self.ncols

    @property
    def entries(self):
        return [x for row in self._rows for x in row]

    def is_square(self):
        return self.nrows == self.ncols

    def __getitem__(self, idx):
        if isinstance(idx, tuple):
            i, j = idx
            return self._rows[i][j]
        return self._rows[idx]

    def __iter__(self):
        return iter(self._rows)

    def __len__(self):
        return self.nrows

    def __eq__(self, other):
        if isinstance(other, IntegerMatrix):
            return self.shape == other.shape and self._rows == other._rows
        if isinstance(other, (list, tuple)):
            try:
                return self == IntegerMatrix(other)
            except (TypeError, ValueError):
                return False
        return NotImplemented

    def __hash__(self):
        return hash((self.shape, self._rows))

    def __repr__(self):
        return f"IntegerMatrix({self.tolist()!r})"

    def tolist(self):
        return [list(r) for r in self._rows]

    @property
    def T(self):
        return IntegerMatrix(
            [[self._rows[i][j] for i in range(self.nrows)] for j in range(self.ncols)],
            ncols=self.nrows,
        )

    def __matmul__(self, other):
        other = as_matrix(other)
        if self.ncols != other.nrows:
            raise ValueError(f"shape mismatch {self.shape} @ {other.shape}")
        cols = list(zip(*other._rows)) if other.nrows else [()] * other.ncols
        return IntegerMatrix(
            [[sum(a * b for a, b in zip(row, col)) for col in cols] for row in self._rows],
            ncols=other.ncols,
        )

    def __neg__(self):
        return self.scale(-1)

    def scale(self, n):
        return IntegerMatrix([[n * x for x in row] for row in self._rows], ncols=self.ncols)

    def is_symmetric(self):
        return self.is_square() and all(
            self._rows[i][j] == self._rows[j][i]
            for i in range(self.nrows)
            for j in range(i + 1, self.ncols)
        )


class Inertia(NamedTuple):
    positive: int
    negative: int
    zero: int

    def __str__(self):
        return f"({self.positive},{self.negative},{self.zero})"


class SmithForm(NamedTuple):
    factors: list
    left: IntegerMatrix
    right: IntegerMatrix


def _check_int(x):
    if isinstance(x, bool) or not isinstance(x, int):
        # numpy integer scalars expose __index__; floats do not
        if hasattr(x, "__index__") and not isinstance(x, bool):
            return int(x.__index__())
        raise TypeError(f"integer entries required, got {type(x).__name__}")
    return x


def as_matrix(m) -> IntegerMatrix:
    if isinstance(m, IntegerMatrix):
        return m
    return IntegerMatrix(m)


def block_diagonal(*blocks) -> IntegerMatrix:
    blocks = [as_matrix(b) for b in blocks]
    n = sum(b.nrows for b in blocks)
    m = sum(b.ncols for b in blocks)
    out = [[0] * m for _ in range(n)]
    r0 = c0 = 0
    for b in blocks:
        for i in range(b.nrows):
            for j in range(b.ncols):
                out[r0 + i][c0 + j] = b[i, j]
        r0 += b.nrows
        c0 += b.ncols
    return IntegerMatrix(out, ncols=m)


def determinant(m) -> int:
    """Fraction-free (Bareiss) determinant."""
    m = as_matrix(m)
    if not m.is_square():
        raise ValueError(f"determinant needs a square matrix, got {m.shape}")
    n = m.nrows
    if n == 0:
        return 1
    a = m.tolist()
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for i in range(k + 1, n):
                if a[i][k] != 0:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return 0
        pivot = a[k][k]
        for i in range(k + 1, n):
            aik = a[i][k]
            row_i, row_k = a[i], a[k]
            for j in range(k + 1, n):
                # exact by Sylvester's identity
                row_i[j] = (row_i[j] * pivot - aik * row_k[j]) // prev
            row_i[k] = 0
        prev = pivot
    return sign * a[n - 1][n - 1]


def smith_normal_form(m) -> SmithForm:
    """Smith normal form ``left @ m @ right = diag(factors)``.

    ``factors`` has ``min(rows, cols)`` entries, all nonnegative, each
    dividing the next (trailing zeros for rank-deficient input). Both
    transforms are unimodular.
    """
    m = as_matrix(m)
    r, c = m.shape
    a = m.tolist()
    left = IntegerMatrix.identity(r).tolist()
    right = IntegerMatrix.identity(c).tolist()

    def swap_rows(i, j):
        a[i], a[j] = a[j], a[i]
        left[i], left[j] = left[j], left[i]

    def swap_cols(i, j):
        for row in a:
            row[i], row[j] = row[j], row[i]
        for row in right:
            row[i], row[j] = row[j], row[i]

    def add_row(dst, src, q):
        # row dst += q * row src
        if q:
            a[dst] = [x + q * y for x, y in zip(a[dst], a[src])]
            left[dst] = [x + q * y for x, y in zip(left[dst], left[src])]

    def add_col(dst, src, q):
        if q:
            for row in a:
                row[dst] += q * row[src]
            for row in right:
                row[dst] += q * row[src]

    for t in range(min(r, c)):
        while True:
            best = None
            for i in range(t, r):
                for j in range(t, c):
                    v = a[i][j]
                    if v and (best is None or abs(v) < best[0]):
                        best = (abs(v), i, j)
            if best is None:
                break
            _, i, j = best
            if i != t:
                swap_rows(t, i)
            if j != t:
                swap_cols(t, j)
            p = a[t][t]
            clean = True
            for i in range(t + 1, r):
                add_row(i, t, -(a[i][t] // p))
                clean = clean and a[i][t] == 0
            for j in range(t + 1, c):
                add_col(j, t, -(a[t][j] // p))
                clean = clean and a[t][j] == 0
            if not clean:
                continue
            bad = next(
                (i for i in range(t + 1, r) for j in range(t + 1, c) if a[i][j] % p),
                None,
            )
            if bad is None:
                break
            add_row(t, bad, 1)
        if a[t][t] < 0:
            a[t] = [-x for x in a[t]]
            left[t] = [-x for x in left[t]]

    factors = [a[i][i] for i in range(min(r, c))]
    return SmithForm(factors, IntegerMatrix(left, ncols=r), IntegerMatrix(right, ncols=c))


def symmetric_inertia(g) -> Inertia:
    """Counts of positive, negative and zero eigenvalues of a symmetric matrix.

    Uses rational congruence diagonalization. A block whose diagonal is
    entirely zero but which has a nonzero off-diagonal entry is split off
    as a 2x2 hyperbolic block contributing one positive and one negative.
    """
    g = as_matrix(g)
    if not g.is_symmetric():
        raise ValueError("symmetric matrix required")
    n = g.nrows
    a = [[Fraction(x) for x in row] for row in g]
    pos = neg = 0
    k = 0

    def sym_swap(i, j):
        a[i], a[j] = a[j], a[i]
        for row in a:
            row[i], row[j] = row[j], row[i]

    while k < n:
        piv = next((i for i in range(k, n) if a[i][i] != 0), None)
        if piv is not None:
            sym_swap(k, piv)
            p = a[k][k]
            for i in range(k + 1, n):
                for j in range(k + 1, n):
                    a[i][j] -= a[i][k] * a[k][j] / p
            if p > 0:
                pos += 1
            else:
                neg += 1
            k += 1
            continue
        off = next(
            ((i, j) for i in range(k, n) for j in range(i + 1, n) if a[i][j] != 0),
            None,
        )
        if off is None:
            break
        i, j = off
        sym_swap(k, i)
        sym_swap(k + 1, j)
        h = a[k][k + 1]
        # Schur complement of [[0, h], [h, 0]]
        for r in range(k + 2, n):
            for s in range(k + 2, n):
                a[r][s] -= (a[r][k] * a[k + 1][s] + a[r][k + 1] * a[k][s]) / h
        pos += 1
        neg += 1
        k += 2
    return Inertia(pos, neg, n - pos - neg)


def rational_inverse(m) -> list:
    """Inverse over Q as a list of lists of Fractions."""
    m = as_matrix(m)
    if not m.is_square():
        raise ValueError("square matrix required")
    n = m.nrows
    a = [[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(n)]
         for i, row in enumerate(m)]
    for col in range(n):
        piv = next((i for i in range(col, n) if a[i][col] != 0), None)
        if piv is None:
            raise ZeroDivisionError("singular matrix")
        a[col], a[piv] = a[piv], a[col]
        p = a[col][col]
        a[col] = [x / p for x in a[col]]
        for i in range(n):
            if i != col and a[i][col]:
                f = a[i][col]
                a[i] = [x - f * y for x, y in zip(a[i], a[col])]
    return [row[n:] for row in a]


def unimodular_inverse(m) -> IntegerMatrix:
    inv = rational_inverse(m)
    if any(x.denominator != 1 for row in inv for x in row):
        raise ValueError("matrix is not unimodular")
    return IntegerMatrix([[int(x) for x in row] for row in inv])


def bilinear(g, u: Sequence[int], v: Sequence[int]) -> int:
    return sum(u[i] * sum(gi[j] * v[j] for j in range(len(v))) for i, gi in enumerate(g))
