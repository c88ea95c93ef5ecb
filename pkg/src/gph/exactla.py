"""Exact dense linear algebra over the rationals and prime fields.

Rationals are gmpy2 ``mpq`` values; prime-field elements are instances of
``ModP``.  Matrices are immutable by convention: every operation returns a
new ``Mat``.
"""
from __future__ import annotations

import random
from typing import Iterable, Sequence

from gmpy2 import mpq


class ModP:
    """Canonical residue modulo a prime."""

    __slots__ = ("v", "p")

    def __init__(self, v: int, p: int):
        self.v = v % p
        self.p = p

    def _coerce(self, other):
        if isinstance(other, ModP):
            return other.v
        return int(other) % self.p

    def __add__(self, other):
        return ModP(self.v + self._coerce(other), self.p)

    __radd__ = __add__

    def __sub__(self, other):
        return ModP(self.v - self._coerce(other), self.p)

    def __rsub__(self, other):
        return ModP(self._coerce(other) - self.v, self.p)

    def __mul__(self, other):
        return ModP(self.v * self._coerce(other), self.p)

    __rmul__ = __mul__

    def __neg__(self):
        return ModP(-self.v, self.p)

    def __truediv__(self, other):
        d = self._coerce(other)
        if d == 0:
            raise ZeroDivisionError("division by zero in prime field")
        return ModP(self.v * pow(d, -1, self.p), self.p)

    def __rtruediv__(self, other):
        return ModP(self._coerce(other), self.p) / self

    def __eq__(self, other):
        if isinstance(other, ModP):
            return self.v == other.v and self.p == other.p
        try:
            return self.v == int(other) % self.p
        except (TypeError, ValueError):
            return NotImplemented

    def __hash__(self):
        return hash((self.v, self.p))

    def __bool__(self):
        return self.v != 0

    def __repr__(self):
        return f"{self.v} (mod {self.p})"

    def __str__(self):
        return str(self.v)


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    i = 2
    while i * i <= p:
        if p % i == 0:
            return False
        i += 1
    return True


class Field:
    """The coefficient field: ``Field()`` is Q, ``Field(p)`` is F_p."""

    def __init__(self, p: int | None = None):
        if p is not None and not _is_prime(p):
            raise ValueError(f"characteristic {p} is not prime")
        self.p = p
        self.zero = self(0)
        self.one = self(1)

    @property
    def characteristic(self) -> int:
        return self.p or 0

    @property
    def kind(self) -> str:
        return "Q" if self.p is None else "Fp"

    def __call__(self, x):
        if self.p is None:
            if isinstance(x, str):
                return mpq(x.strip())
            if isinstance(x, ModP):
                raise TypeError("prime-field element used over the rationals")
            return mpq(x)
        if isinstance(x, ModP):
            return ModP(x.v, self.p)
        if isinstance(x, str):
            x = x.strip()
            if "/" in x:
                num, den = x.split("/")
                return ModP(int(num), self.p) / ModP(int(den), self.p)
            return ModP(int(x), self.p)
        q = mpq(x)
        return ModP(int(q.numerator), self.p) / ModP(int(q.denominator), self.p)

    def parse(self, literal) -> object:
        """Parse a file literal: "p" or "p/q" over Q, an integer in [0, p) over F_p."""
        if self.p is None:
            if isinstance(literal, bool) or not isinstance(literal, (str, int)):
                raise ValueError(f"bad rational literal {literal!r}")
            text = str(literal).strip()
            if "/" in text:
                num, den = text.split("/")
                if int(den) <= 0:
                    raise ValueError(f"bad rational literal {literal!r}: denominator must be positive")
            return mpq(text)
        value = int(literal)
        if not 0 <= value < self.p:
            raise ValueError(f"prime-field literal {literal!r} outside [0, {self.p})")
        return ModP(value, self.p)

    def format(self, x) -> str:
        return str(x)

    def random(self, rng: random.Random, bound: int = 3):
        return self(rng.randint(-bound, bound))

    def to_json(self) -> dict:
        return {"kind": "Q"} if self.p is None else {"kind": "Fp", "p": self.p}

    @classmethod
    def from_json(cls, data: dict) -> "Field":
        kind = data.get("kind")
        if kind == "Q":
            return cls()
        if kind == "Fp":
            return cls(int(data["p"]))
        raise ValueError(f"unknown field kind {kind!r}")

    def __eq__(self, other):
        return isinstance(other, Field) and self.p == other.p

    def __hash__(self):
        return hash(("field", self.p))

    def __repr__(self):
        return "Field(Q)" if self.p is None else f"Field(F_{self.p})"


QQ = Field()


class Mat:
    """Dense matrix with exact entries.

    Args:
        field: coefficient field.
        rows: list of rows; each row is a list of field elements.
        ncols: column count, required when there are no rows.
    """

    __slots__ = ("field", "rows", "nrows", "ncols")

    def __init__(self, field: Field, rows: Sequence[Sequence], ncols: int | None = None):
        self.field = field
        self.rows = [list(r) for r in rows]
        self.nrows = len(self.rows)
        if ncols is None:
            if not self.rows:
                raise ValueError("ncols is required for a matrix with no rows")
            ncols = len(self.rows[0])
        self.ncols = ncols
        for r in self.rows:
            if len(r) != ncols:
                raise ValueError("ragged matrix rows")

    # -- construction -------------------------------------------------
    @classmethod
    def zeros(cls, field: Field, nrows: int, ncols: int) -> "Mat":
        z = field.zero
        return cls(field, [[z] * ncols for _ in range(nrows)], ncols)

    @classmethod
    def identity(cls, field: Field, n: int) -> "Mat":
        m = cls.zeros(field, n, n)
        for i in range(n):
            m.rows[i][i] = field.one
        return m

    @classmethod
    def from_literals(cls, field: Field, rows, nrows: int | None = None, ncols: int | None = None) -> "Mat":
        parsed = [[field.parse(x) for x in r] for r in rows]
        if not parsed:
            return cls.zeros(field, nrows or 0, ncols or 0)
        return cls(field, parsed)

    @classmethod
    def from_ints(cls, field: Field, rows, ncols: int | None = None) -> "Mat":
        return cls(field, [[field(x) for x in r] for r in rows], ncols)

    @classmethod
    def from_columns(cls, field: Field, cols: Sequence[Sequence], nrows: int) -> "Mat":
        if not cols:
            return cls.zeros(field, nrows, 0)
        return cls(field, [[c[i] for c in cols] for i in range(nrows)], len(cols))

    # -- access -------------------------------------------------------
    @property
    def shape(self) -> tuple[int, int]:
        return (self.nrows, self.ncols)

    def col(self, j: int) -> list:
        return [r[j] for r in self.rows]

    def columns(self) -> list[list]:
        return [self.col(j) for j in range(self.ncols)]

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def to_literals(self) -> list[list[str]]:
        return [[str(x) for x in r] for r in self.rows]

    def key(self) -> tuple:
        return (self.nrows, self.ncols, tuple(tuple(r) for r in self.rows))

    def __eq__(self, other):
        if not isinstance(other, Mat):
            return NotImplemented
        return self.shape == other.shape and self.rows == other.rows

    def __hash__(self):
        return hash(self.key())

    def __repr__(self):
        return f"Mat({self.nrows}x{self.ncols}, {self.to_literals()})"

    def is_zero(self) -> bool:
        return not any(x for r in self.rows for x in r)

    # -- arithmetic ---------------------------------------------------
    def __add__(self, other: "Mat") -> "Mat":
        if self.shape != other.shape:
            raise ValueError(f"shape mismatch {self.shape} + {other.shape}")
        return Mat(self.field, [[a + b for a, b in zip(r, s)] for r, s in zip(self.rows, other.rows)], self.ncols)

    def __sub__(self, other: "Mat") -> "Mat":
        if self.shape != other.shape:
            raise ValueError(f"shape mismatch {self.shape} - {other.shape}")
        return Mat(self.field, [[a - b for a, b in zip(r, s)] for r, s in zip(self.rows, other.rows)], self.ncols)

    def __neg__(self) -> "Mat":
        return Mat(self.field, [[-a for a in r] for r in self.rows], self.ncols)

    def scale(self, c) -> "Mat":
        return Mat(self.field, [[c * a for a in r] for r in self.rows], self.ncols)

    def __matmul__(self, other: "Mat") -> "Mat":
        if self.ncols != other.nrows:
            raise ValueError(f"shape mismatch {self.shape} @ {other.shape}")
        z = self.field.zero
        n = other.ncols
        out = []
        orows = other.rows
        for r in self.rows:
            acc = [z] * n
            for k, a in enumerate(r):
                if not a:
                    continue
                ok = orows[k]
                for j in range(n):
                    b = ok[j]
                    if b:
                        acc[j] = acc[j] + a * b
            out.append(acc)
        return Mat(self.field, out, n)

    def apply(self, v: Sequence) -> list:
        """Matrix-vector product."""
        if len(v) != self.ncols:
            raise ValueError("vector length mismatch")
        z = self.field.zero
        out = []
        for r in self.rows:
            acc = z
            for a, b in zip(r, v):
                if a and b:
                    acc = acc + a * b
            out.append(acc)
        return out

    @property
    def T(self) -> "Mat":
        if self.nrows == 0:
            return Mat.zeros(self.field, self.ncols, 0)
        return Mat(self.field, [list(c) for c in zip(*self.rows)], self.nrows)

    def submatrix(self, rows: Iterable[int], cols: Iterable[int]) -> "Mat":
        cols = list(cols)
        return Mat(self.field, [[self.rows[i][j] for j in cols] for i in rows], len(cols))

    # -- elimination --------------------------------------------------
    def rref(self) -> tuple["Mat", list[int]]:
        return rref(self)

    def rank(self) -> int:
        return len(rref(self)[1])

    def kernel_basis(self) -> list[list]:
        return kernel_basis(self)

    def solve(self, b: Sequence):
        return solve(self, b)

    def inverse(self) -> "Mat":
        if self.nrows != self.ncols:
            raise ValueError("inverse of a non-square matrix")
        n = self.nrows
        aug = hstack([self, Mat.identity(self.field, n)])
        red, piv = rref(aug)
        if piv[:n] != list(range(n)):
            raise ZeroDivisionError("matrix is singular")
        return red.submatrix(range(n), range(n, 2 * n))


def _eliminate(rows: list[list], ncols: int, stop: int | None = None) -> list[int]:
    """In-place Gauss-Jordan elimination; returns pivot columns."""
    pivots: list[int] = []
    r = 0
    nrows = len(rows)
    limit = ncols if stop is None else stop
    for c in range(limit):
        if r == nrows:
            break
        pr = None
        for i in range(r, nrows):
            if rows[i][c]:
                pr = i
                break
        if pr is None:
            continue
        rows[r], rows[pr] = rows[pr], rows[r]
        prow = rows[r]
        inv = 1 / prow[c]
        if inv != 1:
            for j in range(c, ncols):
                if prow[j]:
                    prow[j] = prow[j] * inv
        nz = [j for j in range(c, ncols) if prow[j]]
        for i in range(nrows):
            if i == r:
                continue
            row = rows[i]
            f = row[c]
            if f:
                for j in nz:
                    row[j] = row[j] - f * prow[j]
        pivots.append(c)
        r += 1
    return pivots


def rref(m: Mat) -> tuple[Mat, list[int]]:
    """Reduced row echelon form and the pivot columns."""
    rows = [list(r) for r in m.rows]
    pivots = _eliminate(rows, m.ncols)
    return Mat(m.field, rows, m.ncols), pivots


def rank(m: Mat) -> int:
    return len(rref(m)[1])


def kernel_basis(m: Mat) -> list[list]:
    """Canonical basis of the right null space: one vector per free column."""
    red, pivots = rref(m)
    f = m.field
    pivset = set(pivots)
    basis = []
    for free in range(m.ncols):
        if free in pivset:
            continue
        v = [f.zero] * m.ncols
        v[free] = f.one
        for row, pc in zip(red.rows, pivots):
            if row[free]:
                v[pc] = -row[free]
        basis.append(v)
    return basis


def solve(m: Mat, b: Sequence):
    """A solution of m·x = b, or None when the system is inconsistent."""
    if len(b) != m.nrows:
        raise ValueError(f"right-hand side has length {len(b)}, expected {m.nrows}")
    rows = [list(r) + [bi] for r, bi in zip(m.rows, b)]
    pivots = _eliminate(rows, m.ncols + 1, stop=m.ncols)
    f = m.field
    for row in rows[len(pivots):]:
        if row[-1]:
            return None
    x = [f.zero] * m.ncols
    for row, pc in zip(rows, pivots):
        x[pc] = row[-1]
    return x


def solve_many(m: Mat, rhs: Mat) -> Mat | None:
    """Solve m·X = rhs for a matrix X; None if some column is inconsistent."""
    if rhs.nrows != m.nrows:
        raise ValueError("row count mismatch")
    k = rhs.ncols
    rows = [list(r) + list(s) for r, s in zip(m.rows, rhs.rows)]
    pivots = _eliminate(rows, m.ncols + k, stop=m.ncols)
    for row in rows[len(pivots):]:
        if any(row[m.ncols:]):
            return None
    out = Mat.zeros(m.field, m.ncols, k)
    for row, pc in zip(rows, pivots):
        out.rows[pc] = row[m.ncols:]
    return out


def hstack(mats: Sequence[Mat]) -> Mat:
    if not mats:
        raise ValueError("hstack of nothing")
    n = mats[0].nrows
    if any(x.nrows != n for x in mats):
        raise ValueError("hstack row mismatch")
    rows = [[] for _ in range(n)]
    for x in mats:
        for i in range(n):
            rows[i].extend(x.rows[i])
    return Mat(mats[0].field, rows, sum(x.ncols for x in mats))


def vstack(mats: Sequence[Mat]) -> Mat:
    if not mats:
        raise ValueError("vstack of nothing")
    n = mats[0].ncols
    if any(x.ncols != n for x in mats):
        raise ValueError("vstack column mismatch")
    rows = []
    for x in mats:
        rows.extend(list(r) for r in x.rows)
    return Mat(mats[0].field, rows, n)


def block_diag(mats: Sequence[Mat], field: Field) -> Mat:
    nr = sum(x.nrows for x in mats)
    nc = sum(x.ncols for x in mats)
    out = Mat.zeros(field, nr, nc)
    r0 = c0 = 0
    for x in mats:
        for i, row in enumerate(x.rows):
            out.rows[r0 + i][c0:c0 + x.ncols] = row
        r0 += x.nrows
        c0 += x.ncols
    return out


def kron(a: Mat, b: Mat) -> Mat:
    """Kronecker product with a-index major, b-index minor."""
    f = a.field
    out = Mat.zeros(f, a.nrows * b.nrows, a.ncols * b.ncols)
    for i, arow in enumerate(a.rows):
        for j, x in enumerate(arow):
            if not x:
                continue
            for k, brow in enumerate(b.rows):
                orow = out.rows[i * b.nrows + k]
                base = j * b.ncols
                for l, y in enumerate(brow):
                    if y:
                        orow[base + l] = x * y
    return out


def column_space(m: Mat) -> Mat:
    """Canonical basis (as columns) of the column space of m."""
    red, piv = rref(m.T)
    return Mat.from_columns(m.field, red.rows[:len(piv)], m.nrows)


def left_inverse(basis: Mat) -> Mat:
    """Some r×n matrix L with L·basis = I for a full-column-rank n×r basis."""
    r = basis.ncols
    if r == 0:
        return Mat.zeros(basis.field, 0, basis.nrows)
    _, piv_rows = rref(basis.T)
    if len(piv_rows) != r:
        raise ValueError("basis is not of full column rank")
    sq = basis.submatrix(piv_rows, range(r))
    inv = sq.inverse()
    sel = Mat.zeros(basis.field, r, basis.nrows)
    for k, i in enumerate(piv_rows):
        sel.rows[k][i] = basis.field.one
    return inv @ sel


def quotient_maps(span: Mat) -> tuple[Mat, Mat]:
    """Projection and section for the quotient of k^n by the column span of ``span``.

    Returns (proj, sect) with proj of shape q×n, sect of shape n×q,
    ker(proj) = column span, and proj·sect = I.
    """
    f = span.field
    n = span.nrows
    red, piv = rref(span.T)
    pivset = set(piv)
    free = [c for c in range(n) if c not in pivset]
    q = len(free)
    proj = Mat.zeros(f, q, n)
    sect = Mat.zeros(f, n, q)
    pos = {c: k for k, c in enumerate(free)}
    for k, c in enumerate(free):
        proj.rows[k][c] = f.one
        sect.rows[c][k] = f.one
    for row, pc in zip(red.rows, piv):
        for c in free:
            if row[c]:
                proj.rows[pos[c]][pc] = -row[c]
    return proj, sect
