"""Dense exact-integer matrices with Hermite/Smith normal forms.

Everything here works on arbitrary-precision Python ints; normal-form
intermediates and determinant pivots grow far beyond 64 bits even on small
inputs, so no fixed-width arithmetic is used anywhere.  Rationals appear
only inside ``inertia`` and never cross an API boundary.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import NotSquare, NotSymmetric, NotUnimodular, ShapeMismatch


@dataclass(frozen=True)
class IntMatrix:
    rows: int
    cols: int
    data: tuple  # row-major tuple of row tuples

    def __post_init__(self):
        if self.rows < 0 or self.cols < 0:
            raise ValueError("negative dimensions")
        if len(self.data) != self.rows:
            raise ValueError("row count mismatch")
        for row in self.data:
            if len(row) != self.cols:
                raise ValueError("ragged row")

    @staticmethod
    def from_rows(rows, cols=None):
        """Build from an iterable of row iterables; `cols` disambiguates 0-row shapes."""
        data = tuple(tuple(int(x) for x in row) for row in rows)
        if data:
            width = len(data[0])
        else:
            width = 0 if cols is None else cols
        return IntMatrix(len(data), width, data)

    @staticmethod
    def identity(n):
        return IntMatrix(n, n, tuple(tuple(1 if i == j else 0 for j in range(n)) for i in range(n)))

    @staticmethod
    def zeros(rows, cols):
        return IntMatrix(rows, cols, tuple(tuple(0 for _ in range(cols)) for _ in range(rows)))

    def __getitem__(self, rc):
        i, j = rc
        return self.data[i][j]

    def row(self, i):
        return self.data[i]

    def column(self, j):
        return tuple(self.data[i][j] for i in range(self.rows))

    def transpose(self):
        return IntMatrix(self.cols, self.rows,
                         tuple(tuple(self.data[i][j] for i in range(self.rows))
                               for j in range(self.cols)))

    def mul(self, other):
        if self.cols != other.rows:
            raise ShapeMismatch(f"cannot multiply {self.rows}x{self.cols} by {other.rows}x{other.cols}")
        bt = other.transpose().data
        return IntMatrix(self.rows, other.cols,
                         tuple(tuple(sum(x * y for x, y in zip(row, col)) for col in bt)
                               for row in self.data))

    def add(self, other):
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise ShapeMismatch("shape mismatch in add")
        return IntMatrix(self.rows, self.cols,
                         tuple(tuple(a + b for a, b in zip(ra, rb))
                               for ra, rb in zip(self.data, other.data)))

    def sub(self, other):
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise ShapeMismatch("shape mismatch in sub")
        return IntMatrix(self.rows, self.cols,
                         tuple(tuple(a - b for a, b in zip(ra, rb))
                               for ra, rb in zip(self.data, other.data)))

    def neg(self):
        return IntMatrix(self.rows, self.cols,
                         tuple(tuple(-a for a in row) for row in self.data))

    def scale(self, k):
        return IntMatrix(self.rows, self.cols,
                         tuple(tuple(k * a for a in row) for row in self.data))

    def submatrix(self, row_indices, col_indices):
        ri = tuple(row_indices)
        ci = tuple(col_indices)
        return IntMatrix(len(ri), len(ci),
                         tuple(tuple(self.data[i][j] for j in ci) for i in ri))

    def hstack(self, other):
        if self.rows != other.rows:
            raise ShapeMismatch("hstack row mismatch")
        return IntMatrix(self.rows, self.cols + other.cols,
                         tuple(ra + rb for ra, rb in zip(self.data, other.data)))

    def vstack(self, other):
        if self.cols != other.cols:
            raise ShapeMismatch("vstack col mismatch")
        return IntMatrix(self.rows + other.rows, self.cols, self.data + other.data)

    def trace(self):
        if self.rows != self.cols:
            raise NotSquare("trace of non-square matrix")
        return sum(self.data[i][i] for i in range(self.rows))

    def is_symmetric(self):
        if self.rows != self.cols:
            return False
        return all(self.data[i][j] == self.data[j][i]
                   for i in range(self.rows) for j in range(i + 1, self.cols))

    def is_zero(self):
        return all(x == 0 for row in self.data for x in row)

    def nonzero_rows(self):
        return [i for i in range(self.rows) if any(self.data[i])]

    def nonzero_columns(self):
        return [j for j in range(self.cols) if any(self.data[i][j] for i in range(self.rows))]

    def to_lists(self):
        return [list(row) for row in self.data]


@dataclass(frozen=True)
class UnimodularWitness:
    """A square integer matrix with determinant +-1, checked at construction."""

    u: IntMatrix

    def __post_init__(self):
        if self.u.rows != self.u.cols:
            raise NotUnimodular("witness must be square")
        if det_bareiss(self.u) not in (1, -1):
            raise NotUnimodular("witness determinant is not +-1")


@dataclass(frozen=True)
class SnfResult:
    """Smith normal form d1 | d2 | ... with left*a*right = diagonal embedding."""

    diag: tuple
    left: UnimodularWitness
    right: UnimodularWitness

    def __post_init__(self):
        for d in self.diag:
            if d < 0:
                raise ValueError("Smith diagonal entries must be nonnegative")
        for d, nxt in zip(self.diag, self.diag[1:]):
            if d == 0 and nxt != 0:
                raise ValueError("zero entries must close the Smith diagonal")
            if d != 0 and nxt % d != 0:
                raise ValueError("Smith diagonal must form a divisibility chain")


def det_bareiss(a: IntMatrix) -> int:
    """Exact determinant by fraction-free (Bareiss) elimination."""
    if a.rows != a.cols:
        raise NotSquare("determinant of non-square matrix")
    n = a.rows
    if n == 0:
        return 1
    m = [list(row) for row in a.data]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if m[k][k] == 0:
            for i in range(k + 1, n):
                if m[i][k] != 0:
                    m[k], m[i] = m[i], m[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // prev
            m[i][k] = 0
        prev = m[k][k]
    return sign * m[n - 1][n - 1]


def _swap_rows(m, u, i, j):
    m[i], m[j] = m[j], m[i]
    u[i], u[j] = u[j], u[i]


def _add_row(m, u, dst, src, k):
    # row dst += k * row src, mirrored on the witness
    if k == 0:
        return
    m[dst] = [a + k * b for a, b in zip(m[dst], m[src])]
    u[dst] = [a + k * b for a, b in zip(u[dst], u[src])]


def _negate_row(m, u, i):
    m[i] = [-a for a in m[i]]
    u[i] = [-a for a in u[i]]


def hermite_normal_form(a: IntMatrix):
    """Canonical row HNF: returns (h, u) with u*a = h and u unimodular.

    Convention: pivots positive, pivot columns strictly increasing, entries
    above each pivot reduced into [0, pivot), zero rows collected at the
    bottom.  Two matrices generate the same row lattice iff their nonzero
    HNF rows coincide.
    """
    m = [list(row) for row in a.data]
    u = [[1 if i == j else 0 for j in range(a.rows)] for i in range(a.rows)]
    r = 0
    for c in range(a.cols):
        # gcd-reduce column c among rows r.. until one nonzero survives
        while True:
            nz = [i for i in range(r, a.rows) if m[i][c] != 0]
            if not nz:
                break
            pivot_row = min(nz, key=lambda i: abs(m[i][c]))
            if pivot_row != r:
                _swap_rows(m, u, r, pivot_row)
            if len(nz) == 1:
                break
            done = True
            for i in range(r + 1, a.rows):
                if m[i][c] != 0:
                    q = m[i][c] // m[r][c]
                    _add_row(m, u, i, r, -q)
                    if m[i][c] != 0:
                        done = False
            if done:
                break
        if r < a.rows and m[r][c] != 0:
            if m[r][c] < 0:
                _negate_row(m, u, r)
            for i in range(r):
                q = m[i][c] // m[r][c]
                _add_row(m, u, i, r, -q)
            r += 1
            if r == a.rows:
                break
    h = IntMatrix.from_rows(m, cols=a.cols)
    witness = UnimodularWitness(IntMatrix.from_rows(u, cols=a.rows))
    return h, witness


def hnf_nonzero_part(a: IntMatrix) -> IntMatrix:
    """Nonzero rows of the canonical HNF; the canonical label of a row lattice."""
    h, _ = hermite_normal_form(a)
    keep = [i for i in range(h.rows) if any(h.data[i])]
    return h.submatrix(keep, range(h.cols))


def smith_normal_form(a: IntMatrix) -> SnfResult:
    """Smith normal form with unimodular left/right witnesses."""
    m = [list(row) for row in a.data]
    left = [[1 if i == j else 0 for j in range(a.rows)] for i in range(a.rows)]
    right = [[1 if i == j else 0 for j in range(a.cols)] for i in range(a.cols)]

    def swap_cols(i, j):
        for row in m:
            row[i], row[j] = row[j], row[i]
        for row in right:
            row[i], row[j] = row[j], row[i]

    def add_col(dst, src, k):
        if k == 0:
            return
        for row in m:
            row[dst] += k * row[src]
        for row in right:
            row[dst] += k * row[src]

    def negate_col(i):
        for row in m:
            row[i] = -row[i]
        for row in right:
            row[i] = -row[i]

    t = 0
    limit = min(a.rows, a.cols)
    while t < limit:
        # locate a minimal-magnitude nonzero pivot in the trailing block
        best = None
        for i in range(t, a.rows):
            for j in range(t, a.cols):
                if m[i][j] != 0 and (best is None or abs(m[i][j]) < abs(m[best[0]][best[1]])):
                    best = (i, j)
        if best is None:
            break
        if best[0] != t:
            _swap_rows(m, left, t, best[0])
        if best[1] != t:
            swap_cols(t, best[1])
        while True:
            # clear column t
            reduced = False
            for i in range(t + 1, a.rows):
                if m[i][t] != 0:
                    q = m[i][t] // m[t][t]
                    _add_row(m, left, i, t, -q)
                    if m[i][t] != 0:
                        _swap_rows(m, left, t, i)
                        reduced = True
            if reduced:
                continue
            # clear row t
            for j in range(t + 1, a.cols):
                if m[t][j] != 0:
                    q = m[t][j] // m[t][t]
                    add_col(j, t, -q)
                    if m[t][j] != 0:
                        swap_cols(t, j)
                        reduced = True
            if reduced:
                continue
            # enforce divisibility into the trailing block
            offender = None
            for i in range(t + 1, a.rows):
                for j in range(t + 1, a.cols):
                    if m[i][j] % m[t][t] != 0:
                        offender = i
                        break
                if offender is not None:
                    break
            if offender is None:
                break
            _add_row(m, left, t, offender, 1)
        if m[t][t] < 0:
            negate_col(t)
        t += 1

    diag = tuple(m[i][i] for i in range(limit))
    return SnfResult(
        diag=diag,
        left=UnimodularWitness(IntMatrix.from_rows(left, cols=a.rows)),
        right=UnimodularWitness(IntMatrix.from_rows(right, cols=a.cols)),
    )


def inverse_unimodular(a: IntMatrix) -> IntMatrix:
    """Exact integer inverse of a unimodular matrix."""
    if a.rows != a.cols:
        raise NotSquare("inverse of non-square matrix")
    h, u = hermite_normal_form(a)
    if h != IntMatrix.identity(a.rows):
        raise NotUnimodular("matrix is not invertible over the integers")
    return u.u


def inertia(a: IntMatrix):
    """(n_pos, n_neg, n_zero) of a symmetric matrix, via exact rational pivoting."""
    if not a.is_symmetric():
        raise NotSymmetric("inertia requires a symmetric matrix")
    n = a.rows
    w = [[Fraction(a.data[i][j]) for j in range(n)] for i in range(n)]
    active = list(range(n))
    n_pos = n_neg = n_zero = 0
    while active:
        pivot = None
        for k in active:
            if w[k][k] != 0:
                pivot = k
                break
        if pivot is None:
            # all active diagonal entries vanish; look for an off-diagonal coupling
            pair = None
            for i in active:
                for j in active:
                    if i != j and w[i][j] != 0:
                        pair = (i, j)
                        break
                if pair:
                    break
            if pair is None:
                n_zero += len(active)
                break
            i, j = pair
            # symmetric update row/col i += row/col j turns w[i][i] into 2*w[i][j]
            for k in range(n):
                w[i][k] += w[j][k]
            for k in range(n):
                w[k][i] += w[k][j]
            continue
        d = w[pivot][pivot]
        if d > 0:
            n_pos += 1
        else:
            n_neg += 1
        active.remove(pivot)
        for i in active:
            if w[i][pivot] != 0:
                f = w[i][pivot] / d
                for j in active:
                    w[i][j] -= f * w[pivot][j]
        for i in active:
            w[i][pivot] = Fraction(0)
            w[pivot][i] = Fraction(0)
    return (n_pos, n_neg, n_zero)


def rank(a: IntMatrix) -> int:
    return hnf_nonzero_part(a).rows
