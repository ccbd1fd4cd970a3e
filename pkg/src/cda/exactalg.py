"""Exact dense linear algebra over the rationals and prime fields.

Rationals are ``gmpy2.mpq`` values (arbitrary precision, always reduced with a
positive denominator).  Prime-field elements are :class:`ModP` values.  Both
support the usual arithmetic operators, so the elimination routines below are
written once and work over either field.
"""

from __future__ import annotations

import json
from functools import lru_cache
from typing import Iterable, Sequence

import gmpy2
from gmpy2 import mpq


class SingularMatrix(ArithmeticError):
    pass


class NotSymmetric(ValueError):
    pass


class NonIntegerEntries(ValueError):
    pass


class ShapeMismatch(ValueError):
    pass


class ModP:
    """An element of the prime field F_p."""

    __slots__ = ("value", "p")

    def __init__(self, value: int, p: int):
        self.value = value % p
        self.p = p

    def _coerce(self, other):
        if isinstance(other, ModP):
            if other.p != self.p:
                raise ValueError(f"cannot mix F_{self.p} and F_{other.p}")
            return other.value
        if isinstance(other, int):
            return other
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return ModP(self.value + o, self.p)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return ModP(self.value - o, self.p)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return ModP(o - self.value, self.p)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return ModP(self.value * o, self.p)

    __rmul__ = __mul__

    def __neg__(self):
        return ModP(-self.value, self.p)

    def inverse(self) -> "ModP":
        if self.value == 0:
            raise ZeroDivisionError("inverse of zero in F_p")
        return ModP(pow(self.value, -1, self.p), self.p)

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self * ModP(o, self.p).inverse()

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return ModP(o, self.p) * self.inverse()

    def __eq__(self, other):
        if isinstance(other, ModP):
            return self.p == other.p and self.value == other.value
        if isinstance(other, int):
            return (self.value - other) % self.p == 0
        return NotImplemented

    def __hash__(self):
        return hash((self.value, self.p))

    def __bool__(self):
        return self.value != 0

    def __repr__(self):
        return f"ModP({self.value}, {self.p})"

    def __str__(self):
        return str(self.value)


class RationalField:
    """The field Q with elements stored as ``mpq``."""

    name = "Q"
    characteristic = 0

    def __call__(self, x) -> mpq:
        if isinstance(x, ModP):
            raise TypeError("cannot convert an F_p element to Q")
        if isinstance(x, float):
            raise TypeError("floating point values are not accepted")
        if isinstance(x, str):
            return mpq(x.strip())
        return mpq(x)

    @property
    def zero(self):
        return mpq(0)

    @property
    def one(self):
        return mpq(1)

    def parse(self, text: str):
        return self(text)

    def __eq__(self, other):
        return isinstance(other, RationalField)

    def __hash__(self):
        return hash("Q")

    def __repr__(self):
        return "QQ"

    def to_json(self):
        return "Q"


class PrimeField:
    """The field F_p for a prime p."""

    def __init__(self, p: int):
        if p < 2 or not gmpy2.is_prime(p):
            raise ValueError(f"{p} is not prime")
        self.p = p
        self.name = f"F{p}"
        self.characteristic = p

    def __call__(self, x) -> ModP:
        if isinstance(x, ModP):
            if x.p != self.p:
                raise ValueError(f"element of F_{x.p} given to F_{self.p}")
            return x
        if isinstance(x, float):
            raise TypeError("floating point values are not accepted")
        if isinstance(x, str):
            x = mpq(x.strip())
        if isinstance(x, int):
            return ModP(x, self.p)
        q = mpq(x)
        return ModP(int(q.numerator), self.p) / ModP(int(q.denominator), self.p)

    @property
    def zero(self):
        return ModP(0, self.p)

    @property
    def one(self):
        return ModP(1, self.p)

    def parse(self, text: str):
        return self(text)

    def elements(self):
        return [ModP(v, self.p) for v in range(self.p)]

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self):
        return hash(("Fp", self.p))

    def __repr__(self):
        return f"GF({self.p})"

    def to_json(self):
        return {"Fp": self.p}


QQ = RationalField()


@lru_cache(maxsize=None)
def GF(p: int) -> PrimeField:
    return PrimeField(p)


def field_from_json(obj) -> RationalField | PrimeField:
    """Accepts ``"Q"``, ``{"Fp": p}`` or the CLI spelling ``"Fp:p"``."""
    if obj is None or obj == "Q":
        return QQ
    if isinstance(obj, dict) and set(obj) == {"Fp"}:
        return GF(int(obj["Fp"]))
    if isinstance(obj, str) and obj.startswith("Fp:"):
        return GF(int(obj[3:]))
    raise ValueError(f"unknown field {obj!r}")


def _is_zero(x) -> bool:
    return not x


class ExactMatrix:
    """Immutable dense matrix over QQ or a prime field."""

    __slots__ = ("rows", "cols", "entries", "field", "_hash")

    def __init__(self, data: Iterable[Iterable], field=QQ, *, cols: int | None = None):
        conv = field
        entries = tuple(tuple(conv(x) for x in row) for row in data)
        nrows = len(entries)
        if nrows:
            ncols = len(entries[0])
            if any(len(r) != ncols for r in entries):
                raise ShapeMismatch("ragged rows")
            if cols is not None and cols != ncols:
                raise ShapeMismatch("column count does not match data")
        else:
            ncols = cols or 0
        self.rows = nrows
        self.cols = ncols
        self.entries = entries
        self.field = field
        self._hash = None

    @classmethod
    def _raw(cls, entries: tuple, field, cols: int) -> "ExactMatrix":
        # entries already converted; skips per-entry coercion
        m = cls.__new__(cls)
        m.rows = len(entries)
        m.cols = cols
        m.entries = entries
        m.field = field
        m._hash = None
        return m

    @classmethod
    def zeros(cls, rows: int, cols: int, field=QQ) -> "ExactMatrix":
        z = field.zero
        return cls._raw(tuple((z,) * cols for _ in range(rows)), field, cols)

    @classmethod
    def identity(cls, n: int, field=QQ) -> "ExactMatrix":
        z, o = field.zero, field.one
        return cls._raw(
            tuple(tuple(o if i == j else z for j in range(n)) for i in range(n)), field, n
        )

    @classmethod
    def diagonal(cls, values: Sequence, field=QQ) -> "ExactMatrix":
        n = len(values)
        z = field.zero
        return cls._raw(
            tuple(tuple(field(values[i]) if i == j else z for j in range(n)) for i in range(n)),
            field,
            n,
        )

    @classmethod
    def from_columns(cls, columns: Sequence[Sequence], field=QQ, rows: int | None = None) -> "ExactMatrix":
        if not columns:
            return cls.zeros(rows or 0, 0, field)
        n = len(columns[0])
        return cls((tuple(c[i] for c in columns) for i in range(n)), field)

    @property
    def shape(self) -> tuple[int, int]:
        return self.rows, self.cols

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i][j]

    def row(self, i: int) -> tuple:
        return self.entries[i]

    def col(self, j: int) -> tuple:
        return tuple(r[j] for r in self.entries)

    def columns(self) -> list[tuple]:
        return [self.col(j) for j in range(self.cols)]

    def tolist(self) -> list[list]:
        return [list(r) for r in self.entries]

    def is_square(self) -> bool:
        return self.rows == self.cols

    def is_zero(self) -> bool:
        return all(_is_zero(x) for r in self.entries for x in r)

    def _check_field(self, other: "ExactMatrix"):
        if self.field != other.field:
            raise ValueError("matrices over different fields")

    def __eq__(self, other):
        if not isinstance(other, ExactMatrix):
            return NotImplemented
        return (
            self.shape == other.shape
            and self.field == other.field
            and self.entries == other.entries
        )

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.rows, self.cols, self.entries))
        return self._hash

    def __add__(self, other: "ExactMatrix") -> "ExactMatrix":
        self._check_field(other)
        if self.shape != other.shape:
            raise ShapeMismatch(f"{self.shape} + {other.shape}")
        return ExactMatrix._raw(
            tuple(tuple(a + b for a, b in zip(r, s)) for r, s in zip(self.entries, other.entries)),
            self.field,
            self.cols,
        )

    def __sub__(self, other: "ExactMatrix") -> "ExactMatrix":
        return self + (-other)

    def __neg__(self) -> "ExactMatrix":
        return ExactMatrix._raw(
            tuple(tuple(-a for a in r) for r in self.entries), self.field, self.cols
        )

    def scale(self, c) -> "ExactMatrix":
        c = self.field(c)
        return ExactMatrix._raw(
            tuple(tuple(c * a for a in r) for r in self.entries), self.field, self.cols
        )

    def __matmul__(self, other: "ExactMatrix") -> "ExactMatrix":
        self._check_field(other)
        if self.cols != other.rows:
            raise ShapeMismatch(f"{self.shape} @ {other.shape}")
        zero = self.field.zero
        ocols = other.columns()
        out = []
        for r in self.entries:
            nz = [(k, a) for k, a in enumerate(r) if a]
            row = []
            for c in ocols:
                s = zero
                for k, a in nz:
                    b = c[k]
                    if b:
                        s = s + a * b
                row.append(s)
            out.append(tuple(row))
        return ExactMatrix._raw(tuple(out), self.field, other.cols)

    def apply(self, vec: Sequence) -> tuple:
        """Matrix times column vector."""
        if len(vec) != self.cols:
            raise ShapeMismatch("vector length does not match column count")
        zero = self.field.zero
        out = []
        for r in self.entries:
            s = zero
            for a, b in zip(r, vec):
                if a and b:
                    s = s + a * b
            out.append(s)
        return tuple(out)

    def __pow__(self, k: int) -> "ExactMatrix":
        if not self.is_square():
            raise ShapeMismatch("power of a non-square matrix")
        if k < 0:
            return inverse(self) ** (-k)
        result = ExactMatrix.identity(self.rows, self.field)
        base = self
        while k:
            if k & 1:
                result = result @ base
            base = base @ base
            k >>= 1
        return result

    @property
    def T(self) -> "ExactMatrix":
        if self.rows == 0:
            return ExactMatrix.zeros(self.cols, 0, self.field)
        return ExactMatrix._raw(tuple(zip(*self.entries)), self.field, self.rows)

    def transpose(self) -> "ExactMatrix":
        return self.T

    def submatrix(self, rows: Sequence[int], cols: Sequence[int]) -> "ExactMatrix":
        return ExactMatrix._raw(
            tuple(tuple(self.entries[i][j] for j in cols) for i in rows), self.field, len(cols)
        )

    def hstack(self, other: "ExactMatrix") -> "ExactMatrix":
        self._check_field(other)
        if self.rows != other.rows:
            raise ShapeMismatch("hstack needs equal row counts")
        return ExactMatrix._raw(
            tuple(r + s for r, s in zip(self.entries, other.entries)),
            self.field,
            self.cols + other.cols,
        )

    def vstack(self, other: "ExactMatrix") -> "ExactMatrix":
        self._check_field(other)
        if self.cols != other.cols:
            raise ShapeMismatch("vstack needs equal column counts")
        return ExactMatrix._raw(self.entries + other.entries, self.field, self.cols)

    def is_integral(self) -> bool:
        if self.field != QQ:
            return False
        return all(x.denominator == 1 for r in self.entries for x in r)

    def is_symmetric(self) -> bool:
        return self.is_square() and self == self.T

    # elimination -----------------------------------------------------------

    def rref(self) -> tuple["ExactMatrix", tuple[int, ...]]:
        """Reduced row echelon form and pivot columns."""
        rows = [list(r) for r in self.entries]
        pivots = _rref_inplace(rows, self.cols)
        return ExactMatrix._raw(tuple(tuple(r) for r in rows), self.field, self.cols), pivots

    def rank(self) -> int:
        return rank(self)

    def kernel_basis(self) -> list[tuple]:
        return kernel_basis(self)

    def inverse(self) -> "ExactMatrix":
        return inverse(self)

    def det(self):
        return determinant(self)

    # serialization --------------------------------------------------------

    def to_json(self) -> dict:
        out = {
            "rows": self.rows,
            "cols": self.cols,
            "entries": [[str(x) for x in r] for r in self.entries],
        }
        if self.field != QQ:
            out["field"] = self.field.to_json()
        return out

    @classmethod
    def from_json(cls, obj: dict | str, field=None) -> "ExactMatrix":
        if isinstance(obj, str):
            obj = json.loads(obj)
        if field is None:
            field = field_from_json(obj.get("field", "Q"))
        rows, cols = int(obj["rows"]), int(obj["cols"])
        entries = obj["entries"]
        if len(entries) != rows or any(len(r) != cols for r in entries):
            raise ShapeMismatch("entries do not match declared shape")
        return cls(([field.parse(str(x)) for x in r] for r in entries), field, cols=cols)

    def __repr__(self):
        body = "; ".join(" ".join(str(x) for x in r) for r in self.entries)
        return f"ExactMatrix({self.rows}x{self.cols} over {self.field!r}: [{body}])"


def _rref_inplace(rows: list[list], ncols: int) -> tuple[int, ...]:
    pivots = []
    r = 0
    nrows = len(rows)
    for c in range(ncols):
        if r == nrows:
            break
        piv = None
        for i in range(r, nrows):
            if rows[i][c]:
                piv = i
                break
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        prow = rows[r]
        inv = 1 / prow[c] if not isinstance(prow[c], ModP) else prow[c].inverse()
        if prow[c] != 1:
            prow = [x * inv for x in prow]
            rows[r] = prow
        nz = [k for k in range(c, ncols) if prow[k]]
        for i in range(nrows):
            if i != r:
                f = rows[i][c]
                if f:
                    ri = rows[i]
                    for k in nz:
                        ri[k] = ri[k] - f * prow[k]
        pivots.append(c)
        r += 1
    return tuple(pivots)


def rank(m: ExactMatrix) -> int:
    rows = [list(r) for r in m.entries]
    return len(_rref_inplace(rows, m.cols))


def kernel_basis(m: ExactMatrix) -> list[tuple]:
    """Basis of the right null space, in reduced column echelon form.

    The returned vectors, read as the columns of a matrix K, satisfy: K^T is
    in reduced row echelon form.
    """
    R, pivots = m.rref()
    field = m.field
    free = [c for c in range(m.cols) if c not in set(pivots)]
    zero, one = field.zero, field.one
    basis = []
    for fc in free:
        v = [zero] * m.cols
        v[fc] = one
        for i, pc in enumerate(pivots):
            v[pc] = -R.entries[i][fc]
        basis.append(v)
    if not basis:
        return []
    # canonical form: rref of the stacked basis vectors
    rows = [list(v) for v in basis]
    _rref_inplace(rows, m.cols)
    return [tuple(r) for r in rows]


def inverse(m: ExactMatrix) -> ExactMatrix:
    if not m.is_square():
        raise ShapeMismatch("inverse of a non-square matrix")
    n = m.rows
    field = m.field
    zero, one = field.zero, field.one
    rows = [list(r) + [one if i == j else zero for j in range(n)] for i, r in enumerate(m.entries)]
    pivots = _rref_inplace(rows, 2 * n)
    if len(pivots) < n or pivots[n - 1] != n - 1:
        raise SingularMatrix("matrix is singular")
    return ExactMatrix._raw(tuple(tuple(r[n:]) for r in rows), field, n)


def determinant(m: ExactMatrix):
    if not m.is_square():
        raise ShapeMismatch("determinant of a non-square matrix")
    rows = [list(r) for r in m.entries]
    n = m.rows
    det = m.field.one
    for c in range(n):
        piv = next((i for i in range(c, n) if rows[i][c]), None)
        if piv is None:
            return m.field.zero
        if piv != c:
            rows[c], rows[piv] = rows[piv], rows[c]
            det = -det
        p = rows[c][c]
        det = det * p
        inv = 1 / p if not isinstance(p, ModP) else p.inverse()
        for i in range(c + 1, n):
            f = rows[i][c]
            if f:
                f = f * inv
                ri, rc = rows[i], rows[c]
                for k in range(c, n):
                    if rc[k]:
                        ri[k] = ri[k] - f * rc[k]
    return det


def solve(m: ExactMatrix, rhs: Sequence) -> tuple | None:
    """One solution x of m x = rhs, or None when inconsistent."""
    if len(rhs) != m.rows:
        raise ShapeMismatch("right-hand side length")
    field = m.field
    rows = [list(r) + [field(b)] for r, b in zip(m.entries, rhs)]
    pivots = _rref_inplace(rows, m.cols + 1)
    if pivots and pivots[-1] == m.cols:
        return None
    x = [field.zero] * m.cols
    for i, pc in enumerate(pivots):
        x[pc] = rows[i][m.cols]
    return tuple(x)


def signature_symmetric(m: ExactMatrix) -> tuple[int, int, int]:
    """Inertia (n_plus, n_zero, n_minus) by symmetric Gaussian elimination."""
    if m.field != QQ:
        raise TypeError("signature is only defined over QQ")
    if not m.is_symmetric():
        raise NotSymmetric("signature needs a symmetric matrix")
    a = [list(r) for r in m.entries]
    n = m.rows
    plus = minus = 0
    k = 0
    while k < n:
        piv = next((i for i in range(k, n) if a[i][i]), None)
        if piv is None:
            off = next(((i, j) for i in range(k, n) for j in range(i + 1, n) if a[i][j]), None)
            if off is None:
                break
            i, j = off
            # zero diagonal, nonzero a_ij: row/col i += row/col j gives pivot 2*a_ij
            for c in range(n):
                a[i][c] = a[i][c] + a[j][c]
            for r in range(n):
                a[r][i] = a[r][i] + a[r][j]
            piv = i
        if piv != k:
            a[k], a[piv] = a[piv], a[k]
            for r in a:
                r[k], r[piv] = r[piv], r[k]
        d = a[k][k]
        if d > 0:
            plus += 1
        else:
            minus += 1
        for i in range(k + 1, n):
            f = a[i][k]
            if f:
                f = f / d
                ai, ak = a[i], a[k]
                for c in range(k, n):
                    if ak[c]:
                        ai[c] = ai[c] - f * ak[c]
        # the matching column operations only touch row k
        for c in range(k + 1, n):
            a[k][c] = mpq(0)
        k += 1
    return plus, n - plus - minus, minus


def is_unimodular(m: ExactMatrix) -> bool:
    if not m.is_square():
        return False
    if not m.is_integral():
        raise NonIntegerEntries("unimodularity needs an integer matrix")
    return determinant(m) in (1, -1)


def integer_matrix(data: Iterable[Iterable[int]]) -> ExactMatrix:
    return ExactMatrix(data, QQ)
