"""Exact integer and field linear algebra.

Everything here is arbitrary precision: integer matrices carry Python ints,
field matrices carry :class:`fractions.Fraction` (over Q) or residues (over
F_p).  Nothing ever touches floating point.

>>> U, D, V = smith_normal_form(IntMatrix([[2, 0], [0, 3]]))
>>> D.diagonal()
[1, 6]
>>> solve_congruence(IntMatrix([[2]]), [1], [4]) is None
True
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

__all__ = [
    "IntMatrix", "smith_normal_form", "solve_congruence", "integer_kernel",
    "Field", "Scalar", "KMatrix", "parse_field", "QQ",
]


class IntMatrix:
    """Immutable integer matrix with explicit shape (zero-size shapes allowed)."""

    __slots__ = ("rows", "cols", "_data", "_hash")

    def __init__(self, data: Iterable[Iterable[int]] = (), rows=None, cols=None):
        data = tuple(tuple(int(x) for x in r) for r in data)
        if rows is None:
            rows = len(data)
        if cols is None:
            cols = len(data[0]) if data else 0
        if len(data) != rows and not (rows and not data):
            raise ValueError("row count mismatch")
        if not data and rows:
            data = tuple((0,) * cols for _ in range(rows))
        for r in data:
            if len(r) != cols:
                raise ValueError("ragged matrix")
        self.rows, self.cols, self._data = rows, cols, data
        self._hash = None

    @classmethod
    def zeros(cls, rows, cols):
        return cls([[0] * cols for _ in range(rows)], rows, cols)

    @classmethod
    def identity(cls, n):
        return cls([[int(i == j) for j in range(n)] for i in range(n)], n, n)

    @classmethod
    def diag(cls, entries, rows=None, cols=None):
        entries = list(entries)
        rows = len(entries) if rows is None else rows
        cols = len(entries) if cols is None else cols
        m = [[0] * cols for _ in range(rows)]
        for i, d in enumerate(entries):
            m[i][i] = d
        return cls(m, rows, cols)

    @classmethod
    def from_columns(cls, columns, rows):
        columns = [list(c) for c in columns]
        return cls([[c[i] for c in columns] for i in range(rows)], rows, len(columns))

    def __getitem__(self, ij):
        i, j = ij
        return self._data[i][j]

    def row(self, i):
        return list(self._data[i])

    def column(self, j):
        return [r[j] for r in self._data]

    def columns(self):
        return [self.column(j) for j in range(self.cols)]

    def tolist(self):
        return [list(r) for r in self._data]

    def diagonal(self):
        return [self._data[i][i] for i in range(min(self.rows, self.cols))]

    @property
    def shape(self):
        return (self.rows, self.cols)

    def T(self):
        return IntMatrix([[self._data[i][j] for i in range(self.rows)]
                          for j in range(self.cols)], self.cols, self.rows)

    def __matmul__(self, other):
        if isinstance(other, IntMatrix):
            if self.cols != other.rows:
                raise ValueError(f"shape mismatch {self.shape} @ {other.shape}")
            ocols = other.columns()
            return IntMatrix([[sum(a * b for a, b in zip(r, c)) for c in ocols]
                              for r in self._data], self.rows, other.cols)
        v = list(other)
        if len(v) != self.cols:
            raise ValueError("vector length mismatch")
        return [sum(a * b for a, b in zip(r, v)) for r in self._data]

    def __add__(self, other):
        if self.shape != other.shape:
            raise ValueError("shape mismatch")
        return IntMatrix([[a + b for a, b in zip(r, s)]
                          for r, s in zip(self._data, other._data)], self.rows, self.cols)

    def __neg__(self):
        return IntMatrix([[-a for a in r] for r in self._data], self.rows, self.cols)

    def __sub__(self, other):
        return self + (-other)

    def scaled(self, c):
        return IntMatrix([[c * a for a in r] for r in self._data], self.rows, self.cols)

    def hstack(self, *others):
        out = IntMatrix([list(r) for r in self._data], self.rows, self.cols)
        for o in others:
            if o.rows != out.rows:
                raise ValueError("row mismatch in hstack")
            out = IntMatrix([a + b for a, b in zip(out.tolist(), o.tolist())]
                            if out.rows else [], out.rows, out.cols + o.cols)
        return out

    def vstack(self, *others):
        data = self.tolist()
        for o in others:
            if o.cols != self.cols:
                raise ValueError("column mismatch in vstack")
            data += o.tolist()
        return IntMatrix(data, len(data), self.cols)

    def block(self, rows, cols):
        """Submatrix on the given row and column index lists."""
        return IntMatrix([[self._data[i][j] for j in cols] for i in rows], len(rows), len(cols))

    def reduce_rows(self, moduli):
        """Reduce row i modulo moduli[i]."""
        return IntMatrix([[a % m for a in r] for r, m in zip(self._data, moduli)],
                         self.rows, self.cols)

    def is_zero(self):
        return all(a == 0 for r in self._data for a in r)

    def __eq__(self, other):
        return isinstance(other, IntMatrix) and self.shape == other.shape and self._data == other._data

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.rows, self.cols, self._data))
        return self._hash

    def __repr__(self):
        return f"IntMatrix({self.tolist()!r}, rows={self.rows}, cols={self.cols})"


# ---------------------------------------------------------------- Smith form

def _snf(M: IntMatrix):
    """Return (U, D, V, Uinv, Vinv) as lists with U M V = D."""
    m, n = M.rows, M.cols
    A = M.tolist()
    U = [[int(i == j) for j in range(m)] for i in range(m)]
    Ui = [[int(i == j) for j in range(m)] for i in range(m)]
    V = [[int(i == j) for j in range(n)] for i in range(n)]
    Vi = [[int(i == j) for j in range(n)] for i in range(n)]

    # row op r_i += c r_j  (U <- E U, Ui <- Ui E^-1: column op c_j -= c c_i)
    def add_row(i, j, c):
        if c == 0:
            return
        A[i] = [a + c * b for a, b in zip(A[i], A[j])]
        U[i] = [a + c * b for a, b in zip(U[i], U[j])]
        for r in Ui:
            r[j] -= c * r[i]

    def add_col(i, j, c):  # c_i += c c_j
        if c == 0:
            return
        for r in A:
            r[i] += c * r[j]
        for r in V:
            r[i] += c * r[j]
        Vi[j] = [a - c * b for a, b in zip(Vi[j], Vi[i])]

    def swap_rows(i, j):
        if i != j:
            A[i], A[j] = A[j], A[i]
            U[i], U[j] = U[j], U[i]
            for r in Ui:
                r[i], r[j] = r[j], r[i]

    def swap_cols(i, j):
        if i != j:
            for r in A:
                r[i], r[j] = r[j], r[i]
            for r in V:
                r[i], r[j] = r[j], r[i]
            Vi[i], Vi[j] = Vi[j], Vi[i]

    def neg_row(i):
        A[i] = [-a for a in A[i]]
        U[i] = [-a for a in U[i]]
        for r in Ui:
            r[i] = -r[i]

    t = 0
    while t < min(m, n):
        while True:
            best = None
            for i in range(t, m):
                row = A[i]
                for j in range(t, n):
                    a = row[j]
                    if a and (best is None or abs(a) < best[0]):
                        best = (abs(a), i, j)
            if best is None:
                return U, A, V, Ui, Vi
            _, i, j = best
            swap_rows(t, i)
            swap_cols(t, j)
            p = A[t][t]
            for i in range(t + 1, m):
                if A[i][t]:
                    add_row(i, t, -(A[i][t] // p))
            for j in range(t + 1, n):
                if A[t][j]:
                    add_col(j, t, -(A[t][j] // p))
            if any(A[i][t] for i in range(t + 1, m)) or any(A[t][j] for j in range(t + 1, n)):
                continue
            bad = next((i for i in range(t + 1, m)
                        if any(A[i][j] % p for j in range(t + 1, n))), None)
            if bad is not None:
                add_row(t, bad, 1)
                continue
            if p < 0:
                neg_row(t)
            break
        t += 1
    return U, A, V, Ui, Vi


def smith_normal_form(M: IntMatrix):
    """Smith normal form ``(U, D, V)`` with ``U @ M @ V == D``.

    U and V are unimodular.  D is diagonal with positive entries
    d_1 | d_2 | ... followed by zeros.  Pivots are chosen as the nonzero
    entry of least absolute value, ties going to the lowest row and then
    the lowest column, so the transforms are reproducible.
    """
    U, D, V, _, _ = _snf(M)
    return (IntMatrix(U, M.rows, M.rows), IntMatrix(D, M.rows, M.cols),
            IntMatrix(V, M.cols, M.cols))


class SmithData:
    """Cached Smith decomposition with inverses, for repeated solves."""

    def __init__(self, M: IntMatrix):
        self.M = M
        U, D, V, Ui, Vi = _snf(M)
        self.U = IntMatrix(U, M.rows, M.rows)
        self.Uinv = IntMatrix(Ui, M.rows, M.rows)
        self.V = IntMatrix(V, M.cols, M.cols)
        self.Vinv = IntMatrix(Vi, M.cols, M.cols)
        self.D = IntMatrix(D, M.rows, M.cols)
        self.diag = [d for d in self.D.diagonal() if d]
        self.rank = len(self.diag)

    def kernel_basis(self):
        """Z-basis of {x : M x = 0}, as a list of vectors."""
        return [self.V.column(j) for j in range(self.rank, self.M.cols)]

    def solve(self, b):
        """An integer x with M x = b, or None."""
        c = self.U @ list(b)
        w = [0] * self.M.cols
        for i, ci in enumerate(c):
            if i < self.rank:
                q, r = divmod(ci, self.diag[i])
                if r:
                    return None
                w[i] = q
            elif ci:
                return None
        return self.V @ w


def integer_kernel(M: IntMatrix):
    """Z-basis of the integer null space of M."""
    return SmithData(M).kernel_basis()


def solve_congruence(A: IntMatrix, b: Sequence[int], moduli: Sequence[int]):
    """Solve ``A x = b`` componentwise modulo ``moduli``.

    Returns ``(particular, basis)`` where every solution is particular plus an
    integer combination of basis vectors, or ``None`` if there is no solution.
    """
    if len(moduli) != A.rows or len(b) != A.rows:
        raise ValueError("moduli and b must match the rows of A")
    if any(m <= 0 for m in moduli):
        raise ValueError("moduli must be positive")
    n = A.cols
    R = A.hstack(IntMatrix.diag(moduli))
    sd = SmithData(R)
    z = sd.solve(b)
    if z is None:
        return None
    basis = [v[:n] for v in sd.kernel_basis()]
    basis = [v for v in basis if any(v)]
    return z[:n], basis


# -------------------------------------------------------------------- fields

def _is_prime(p):
    if p < 2:
        return False
    d = 2
    while d * d <= p:
        if p % d == 0:
            return False
        d += 1
    return True


@dataclass(frozen=True)
class Field:
    """Q when ``p == 0``, otherwise the prime field F_p."""

    p: int = 0

    def __post_init__(self):
        if self.p and not _is_prime(self.p):
            raise ValueError(f"{self.p} is not prime")

    @property
    def char(self):
        return self.p

    def elem(self, x):
        """Normalize an int or Fraction into this field's raw representation."""
        if self.p == 0:
            return Fraction(x)
        if isinstance(x, Fraction):
            if x.denominator % self.p == 0:
                raise ZeroDivisionError(f"{x} is not defined in F_{self.p}")
            return x.numerator * pow(x.denominator, -1, self.p) % self.p
        return int(x) % self.p

    def divides_char(self, n):
        """True when n·1 = 0 in this field."""
        return self.p != 0 and n % self.p == 0

    def scalar(self, x):
        return Scalar(self, self.elem(x))

    def one(self):
        return self.scalar(1)

    def zero(self):
        return self.scalar(0)

    def __str__(self):
        return "Q" if self.p == 0 else f"F{self.p}"


QQ = Field(0)


def parse_field(text: str) -> Field:
    """Parse ``"Q"`` or ``"F<p>"``."""
    t = text.strip()
    if t in ("Q", "QQ"):
        return QQ
    if t[:1] == "F" and t[1:].isdigit():
        return Field(int(t[1:]))
    raise ValueError(f"unknown field literal {text!r}")


class Scalar:
    """An exact element of a field."""

    __slots__ = ("field", "value")

    def __init__(self, field: Field, value):
        self.field = field
        self.value = field.elem(value)

    def _coerce(self, other):
        if isinstance(other, Scalar):
            if other.field != self.field:
                raise ValueError("mixing scalars of different fields")
            return other.value
        return self.field.elem(other)

    def __mul__(self, other):
        v = self.value * self._coerce(other)
        return Scalar(self.field, v)

    __rmul__ = __mul__

    def __add__(self, other):
        return Scalar(self.field, self.value + self._coerce(other))

    __radd__ = __add__

    def __neg__(self):
        return Scalar(self.field, -self.value)

    def __sub__(self, other):
        return Scalar(self.field, self.value - self._coerce(other))

    def inverse(self):
        if self.is_zero():
            raise ZeroDivisionError("zero scalar has no inverse")
        if self.field.p == 0:
            return Scalar(self.field, 1 / self.value)
        return Scalar(self.field, pow(self.value, -1, self.field.p))

    def __truediv__(self, other):
        o = other if isinstance(other, Scalar) else Scalar(self.field, other)
        return self * o.inverse()

    def __rtruediv__(self, other):
        return Scalar(self.field, other) * self.inverse()

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        if self.field.p == 0:
            return Scalar(self.field, self.value ** k)
        return Scalar(self.field, pow(self.value, k, self.field.p))

    def is_zero(self):
        return self.value == 0

    def is_one(self):
        return self.value == 1

    def __eq__(self, other):
        if isinstance(other, Scalar):
            return self.field == other.field and self.value == other.value
        try:
            return self.value == self.field.elem(other)
        except (TypeError, ValueError, ZeroDivisionError):
            return NotImplemented

    def __hash__(self):
        return hash((self.field, self.value))

    def __str__(self):
        return str(self.value)

    def __repr__(self):
        return f"Scalar({self.field}, {self.value})"


# ----------------------------------------------------------- field matrices

class KMatrix:
    """Sparse exact matrix over a :class:`Field`.

    Entries live in ``rows[i][j]``; absent entries are zero.
    """

    __slots__ = ("field", "nrows", "ncols", "rows")

    def __init__(self, field: Field, nrows: int, ncols: int, rows=None):
        self.field, self.nrows, self.ncols = field, nrows, ncols
        self.rows = rows if rows is not None else {}

    @classmethod
    def from_entries(cls, field, nrows, ncols, entries):
        out = {}
        for i, j, v in entries:
            v = field.elem(v)
            r = out.setdefault(i, {})
            s = r.get(j, 0) + v
            if field.p:
                s %= field.p
            if s:
                r[j] = s
            else:
                r.pop(j, None)
        return cls(field, nrows, ncols, {i: r for i, r in out.items() if r})

    @classmethod
    def from_dense(cls, field, data, ncols=None):
        data = [list(r) for r in data]
        ncols = len(data[0]) if data else (ncols or 0)
        return cls.from_entries(field, len(data), ncols,
                                ((i, j, v) for i, r in enumerate(data) for j, v in enumerate(r) if v))

    @classmethod
    def identity(cls, field, n):
        return cls(field, n, n, {i: {i: field.elem(1)} for i in range(n)})

    @classmethod
    def zeros(cls, field, nrows, ncols):
        return cls(field, nrows, ncols, {})

    @property
    def shape(self):
        return (self.nrows, self.ncols)

    def entry(self, i, j):
        return self.rows.get(i, {}).get(j, self.field.elem(0))

    def to_dense(self):
        z = self.field.elem(0)
        return [[self.rows.get(i, {}).get(j, z) for j in range(self.ncols)]
                for i in range(self.nrows)]

    def nnz(self):
        return sum(len(r) for r in self.rows.values())

    def _clean(self, rows):
        p = self.field.p
        out = {}
        for i, r in rows.items():
            if p:
                r = {j: v % p for j, v in r.items() if v % p}
            else:
                r = {j: v for j, v in r.items() if v}
            if r:
                out[i] = r
        return out

    def __matmul__(self, other: "KMatrix"):
        if self.ncols != other.nrows:
            raise ValueError(f"shape mismatch {self.shape} @ {other.shape}")
        orows = other.rows
        res = {}
        for i, r in self.rows.items():
            acc = {}
            for k, a in r.items():
                ok = orows.get(k)
                if ok:
                    for j, b in ok.items():
                        acc[j] = acc.get(j, 0) + a * b
            res[i] = acc
        return KMatrix(self.field, self.nrows, other.ncols, self._clean(res))

    def apply(self, vec):
        """Multiply a dense vector."""
        z = 0
        out = [z] * self.nrows
        for i, r in self.rows.items():
            out[i] = sum(v * vec[j] for j, v in r.items())
        return [self.field.elem(x) for x in out]

    def scale(self, c):
        c = c.value if isinstance(c, Scalar) else self.field.elem(c)
        return KMatrix(self.field, self.nrows, self.ncols,
                       self._clean({i: {j: v * c for j, v in r.items()} for i, r in self.rows.items()}))

    def __add__(self, other):
        if self.shape != other.shape:
            raise ValueError("shape mismatch")
        res = {i: dict(r) for i, r in self.rows.items()}
        for i, r in other.rows.items():
            t = res.setdefault(i, {})
            for j, v in r.items():
                t[j] = t.get(j, 0) + v
        return KMatrix(self.field, self.nrows, self.ncols, self._clean(res))

    def __sub__(self, other):
        return self + other.scale(-1)

    def T(self):
        res = {}
        for i, r in self.rows.items():
            for j, v in r.items():
                res.setdefault(j, {})[i] = v
        return KMatrix(self.field, self.ncols, self.nrows, res)

    def kron(self, other):
        res = {}
        for i, r in self.rows.items():
            for k, s in other.rows.items():
                row = res.setdefault(i * other.nrows + k, {})
                for j, a in r.items():
                    for l, b in s.items():
                        row[j * other.ncols + l] = a * b
        return KMatrix(self.field, self.nrows * other.nrows, self.ncols * other.ncols,
                       self._clean(res))

    def is_zero(self):
        return not self.rows

    def __eq__(self, other):
        return (isinstance(other, KMatrix) and self.field == other.field
                and self.shape == other.shape and self.rows == other.rows)

    def __hash__(self):
        return hash((self.field, self.shape, tuple(sorted(
            (i, tuple(sorted(r.items()))) for i, r in self.rows.items()))))

    def ratio_to(self, other: "KMatrix"):
        """The scalar c with ``self == c * other``, or None if there is none."""
        if self.shape != other.shape:
            return None
        if other.is_zero():
            return self.field.one() if self.is_zero() else None
        i = min(other.rows)
        j = min(other.rows[i])
        c = Scalar(self.field, self.entry(i, j)) / Scalar(self.field, other.rows[i][j])
        return c if other.scale(c) == self else None

    def rank(self):
        return len(_row_echelon(self.field, self.to_dense())[1])

    def __repr__(self):
        return f"KMatrix({self.field}, {self.nrows}x{self.ncols}, nnz={self.nnz()})"


def _row_echelon(field, A):
    """Reduced row echelon form over a field; returns (R, pivot columns)."""
    R = [[field.elem(x) for x in r] for r in A]
    m = len(R)
    n = len(R[0]) if R else 0
    pivots = []
    r = 0
    for c in range(n):
        piv = next((i for i in range(r, m) if R[i][c] != 0), None)
        if piv is None:
            continue
        R[r], R[piv] = R[piv], R[r]
        inv = Scalar(field, R[r][c]).inverse().value
        R[r] = [field.elem(x * inv) for x in R[r]]
        for i in range(m):
            if i != r and R[i][c] != 0:
                f = R[i][c]
                R[i] = [field.elem(a - f * b) for a, b in zip(R[i], R[r])]
        pivots.append(c)
        r += 1
        if r == m:
            break
    return R, pivots


def solve_linear(field: Field, A, b):
    """Some x with A x = b over the field (dense lists), or None."""
    m = len(A)
    n = len(A[0]) if A else 0
    aug = [list(A[i]) + [b[i]] for i in range(m)]
    R, piv = _row_echelon(field, aug)
    if n in piv:
        return None
    x = [field.elem(0)] * n
    for row, c in zip(R, piv):
        x[c] = row[n]
    return x
