"""Exact scalars, dense matrices and subspaces over Q and prime fields.

Rational scalars are plain :class:`fractions.Fraction` values; prime-field
scalars are :class:`Mod` residues that refuse to mix with anything but
ints and residues of the same characteristic.
"""

from __future__ import annotations

import random
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence


class FieldMismatchError(TypeError):
    """Arithmetic or construction mixed two different fields."""


class NotInvertibleError(ValueError):
    def __init__(self, rank: int, size: int):
        super().__init__(f"matrix is not invertible (rank {rank} < {size})")
        self.rank = rank
        self.size = size


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    if p % 2 == 0:
        return p == 2
    d = 3
    while d * d <= p:
        if p % d == 0:
            return False
        d += 2
    return True


class Mod:
    """A residue class modulo a prime ``p``, stored in ``[0, p)``."""

    __slots__ = ("v", "p")

    def __init__(self, v: int, p: int):
        self.v = v % p
        self.p = p

    def _coerce(self, other) -> int:
        if isinstance(other, Mod):
            if other.p != self.p:
                raise FieldMismatchError(f"F_{self.p} and F_{other.p} scalars mixed")
            return other.v
        if isinstance(other, int) and not isinstance(other, bool):
            return other
        raise FieldMismatchError(f"cannot combine F_{self.p} scalar with {type(other).__name__}")

    def __add__(self, other):
        return Mod(self.v + self._coerce(other), self.p)

    __radd__ = __add__

    def __sub__(self, other):
        return Mod(self.v - self._coerce(other), self.p)

    def __rsub__(self, other):
        return Mod(self._coerce(other) - self.v, self.p)

    def __mul__(self, other):
        return Mod(self.v * self._coerce(other), self.p)

    __rmul__ = __mul__

    def inverse(self) -> "Mod":
        if self.v == 0:
            raise ZeroDivisionError(f"0 has no inverse in F_{self.p}")
        return Mod(pow(self.v, -1, self.p), self.p)

    def __truediv__(self, other):
        return self * Mod(self._coerce(other), self.p).inverse()

    def __rtruediv__(self, other):
        return Mod(self._coerce(other), self.p) * self.inverse()

    def __neg__(self):
        return Mod(-self.v, self.p)

    def __pos__(self):
        return self

    def __pow__(self, e: int):
        if e < 0:
            return self.inverse() ** (-e)
        return Mod(pow(self.v, e, self.p), self.p)

    def __eq__(self, other):
        if isinstance(other, Mod):
            return self.p == other.p and self.v == other.v
        if isinstance(other, int):
            return self.v == other % self.p
        return NotImplemented

    def __hash__(self):
        return hash((self.p, self.v))

    def __bool__(self):
        return self.v != 0

    def __repr__(self):
        return f"Mod({self.v}, {self.p})"

    def __str__(self):
        return str(self.v)


_RATIONAL = re.compile(r"^\s*(-?\d+)(?:\s*/\s*(\d+))?\s*$")


class Field:
    """Ground field tag: the rationals (``p is None``) or F_p."""

    __slots__ = ("p",)

    def __init__(self, p: int | None = None):
        if p is not None:
            if not isinstance(p, int) or p > 2**31 or not _is_prime(p):
                raise ValueError(f"{p!r} is not a prime <= 2^31")
        self.p = p

    @classmethod
    def from_tag(cls, tag: str) -> "Field":
        if tag == "Q":
            return QQ
        m = re.fullmatch(r"Fp:(\d+)", tag)
        if not m:
            raise ValueError(f"unknown field tag {tag!r}")
        return cls(int(m.group(1)))

    @property
    def tag(self) -> str:
        return "Q" if self.p is None else f"Fp:{self.p}"

    @property
    def is_rational(self) -> bool:
        return self.p is None

    @property
    def zero(self):
        return Fraction(0) if self.p is None else Mod(0, self.p)

    @property
    def one(self):
        return Fraction(1) if self.p is None else Mod(1, self.p)

    def __call__(self, x):
        if self.p is None:
            if isinstance(x, Mod):
                raise FieldMismatchError("F_p scalar used where a rational was expected")
            if isinstance(x, str):
                return self.parse(x)
            if isinstance(x, (int, Fraction)):
                return Fraction(x)
            raise TypeError(f"cannot convert {x!r} to a rational")
        if isinstance(x, Mod):
            if x.p != self.p:
                raise FieldMismatchError(f"F_{x.p} scalar used in F_{self.p}")
            return x
        if isinstance(x, str):
            return self.parse(x)
        if isinstance(x, int):
            return Mod(x, self.p)
        if isinstance(x, Fraction):
            return Mod(x.numerator, self.p) / Mod(x.denominator, self.p)
        raise TypeError(f"cannot convert {x!r} to F_{self.p}")

    def owns(self, x) -> bool:
        if self.p is None:
            return isinstance(x, Fraction)
        return isinstance(x, Mod) and x.p == self.p

    def parse(self, text: str):
        m = _RATIONAL.match(text)
        if not m:
            raise ValueError(f"bad scalar literal {text!r}")
        num = int(m.group(1))
        if self.p is not None:
            if m.group(2) is not None:
                raise ValueError(f"prime-field literals are integers, got {text!r}")
            return Mod(num, self.p)
        den = int(m.group(2)) if m.group(2) is not None else 1
        if den == 0:
            raise ValueError(f"zero denominator in {text!r}")
        return Fraction(num, den)

    def render(self, x) -> str:
        x = self(x)
        if self.p is not None:
            return str(x.v)
        return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"

    def elements(self):
        if self.p is None:
            raise ValueError("Q is infinite")
        return [Mod(v, self.p) for v in range(self.p)]

    def random(self, rng: random.Random, bound: int = 6, nonzero: bool = False):
        while True:
            if self.p is None:
                x = Fraction(rng.randint(-bound, bound), rng.randint(1, bound))
            else:
                x = Mod(rng.randrange(self.p), self.p)
            if x != 0 or not nonzero:
                return x

    def __eq__(self, other):
        return isinstance(other, Field) and other.p == self.p

    def __hash__(self):
        return hash(("Field", self.p))

    def __repr__(self):
        return "QQ" if self.p is None else f"GF({self.p})"


QQ = Field()


def GF(p: int) -> Field:
    return Field(p)


def field_of(x) -> Field:
    if isinstance(x, Mod):
        return Field(x.p)
    if isinstance(x, (Fraction, int)):
        return QQ
    raise TypeError(f"{x!r} is not a field scalar")


# ---------------------------------------------------------------------------
# row reduction on plain lists
# ---------------------------------------------------------------------------

def rref_rows(rows: Iterable[Sequence], ncols: int) -> tuple[list[list], list[int]]:
    """Gauss-Jordan elimination; returns the nonzero RREF rows and pivot columns."""
    m = [list(r) for r in rows]
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        if r == len(m):
            break
        piv = next((i for i in range(r, len(m)) if m[i][c] != 0), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        inv = 1 / m[r][c]
        m[r] = [x * inv for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                ri = m[i]
                rr = m[r]
                m[i] = [ri[k] - f * rr[k] for k in range(ncols)]
        pivots.append(c)
        r += 1
    return m[:r], pivots


def kernel_basis(rows: Sequence[Sequence], ncols: int, field: Field) -> list[tuple]:
    """Basis of ``{x : rows @ x = 0}``."""
    red, pivots = rref_rows(rows, ncols)
    free = [c for c in range(ncols) if c not in set(pivots)]
    basis = []
    for f in free:
        x = [field.zero] * ncols
        x[f] = field.one
        for row, pc in zip(red, pivots):
            x[pc] = -row[f]
        basis.append(tuple(x))
    return basis


def rank_of(rows: Sequence[Sequence], ncols: int) -> int:
    return len(rref_rows(rows, ncols)[1])


def dot(u: Sequence, v: Sequence, field: Field):
    s = field.zero
    for a, b in zip(u, v):
        if a != 0 and b != 0:
            s = s + a * b
    return s


def is_zero_vector(v: Sequence) -> bool:
    return all(x == 0 for x in v)


# ---------------------------------------------------------------------------
# matrices
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Matrix:
    """Dense exact matrix; ``rows`` is a tuple of equal-length tuples."""

    field: Field
    rows: tuple

    def __post_init__(self):
        width = len(self.rows[0]) if self.rows else 0
        for r in self.rows:
            if len(r) != width:
                raise ValueError("ragged matrix rows")
            for x in r:
                if not self.field.owns(x):
                    raise FieldMismatchError(f"entry {x!r} not in {self.field!r}")

    @classmethod
    def of(cls, field: Field, rows: Iterable[Iterable]) -> "Matrix":
        return cls(field, tuple(tuple(field(x) for x in r) for r in rows))

    @classmethod
    def identity(cls, field: Field, n: int) -> "Matrix":
        return cls(field, tuple(tuple(field.one if i == j else field.zero for j in range(n))
                                for i in range(n)))

    @classmethod
    def zeros(cls, field: Field, nrows: int, ncols: int | None = None) -> "Matrix":
        ncols = nrows if ncols is None else ncols
        return cls(field, tuple(tuple(field.zero for _ in range(ncols)) for _ in range(nrows)))

    @classmethod
    def diagonal(cls, field: Field, entries: Sequence) -> "Matrix":
        n = len(entries)
        return cls(field, tuple(tuple(field(entries[i]) if i == j else field.zero
                                      for j in range(n)) for i in range(n)))

    @classmethod
    def from_columns(cls, field: Field, cols: Sequence[Sequence], nrows: int | None = None) -> "Matrix":
        if not cols:
            return cls(field, tuple(() for _ in range(nrows or 0)))
        n = len(cols[0])
        return cls(field, tuple(tuple(field(cols[j][i]) for j in range(len(cols)))
                                for i in range(n)))

    @property
    def nrows(self) -> int:
        return len(self.rows)

    @property
    def ncols(self) -> int:
        return len(self.rows[0]) if self.rows else 0

    @property
    def shape(self) -> tuple[int, int]:
        return self.nrows, self.ncols

    def column(self, j: int) -> tuple:
        return tuple(r[j] for r in self.rows)

    def columns(self) -> list[tuple]:
        return [self.column(j) for j in range(self.ncols)]

    @property
    def T(self) -> "Matrix":
        return Matrix(self.field, tuple(zip(*self.rows)) if self.rows else ())

    def _check(self, other: "Matrix"):
        if other.field != self.field:
            raise FieldMismatchError(f"{self.field!r} matrix combined with {other.field!r}")

    def apply(self, v: Sequence) -> tuple:
        if len(v) != self.ncols:
            raise ValueError(f"vector of length {len(v)} for {self.shape} matrix")
        return tuple(dot(r, v, self.field) for r in self.rows)

    def __matmul__(self, other):
        if isinstance(other, Matrix):
            self._check(other)
            if self.ncols != other.nrows:
                raise ValueError(f"shape mismatch {self.shape} @ {other.shape}")
            cols = other.columns()
            return Matrix(self.field, tuple(tuple(dot(r, c, self.field) for c in cols)
                                            for r in self.rows))
        return self.apply(other)

    def __add__(self, other: "Matrix") -> "Matrix":
        self._check(other)
        return Matrix(self.field, tuple(tuple(a + b for a, b in zip(r, s))
                                        for r, s in zip(self.rows, other.rows)))

    def __sub__(self, other: "Matrix") -> "Matrix":
        self._check(other)
        return Matrix(self.field, tuple(tuple(a - b for a, b in zip(r, s))
                                        for r, s in zip(self.rows, other.rows)))

    def __neg__(self) -> "Matrix":
        return Matrix(self.field, tuple(tuple(-a for a in r) for r in self.rows))

    def scale(self, c) -> "Matrix":
        c = self.field(c)
        return Matrix(self.field, tuple(tuple(c * a for a in r) for r in self.rows))

    def __pow__(self, k: int) -> "Matrix":
        if self.nrows != self.ncols:
            raise ValueError("power of a non-square matrix")
        if k < 0:
            return inverse(self) ** (-k)
        out = Matrix.identity(self.field, self.nrows)
        base = self
        while k:
            if k & 1:
                out = out @ base
            base = base @ base
            k >>= 1
        return out

    def is_zero(self) -> bool:
        return all(x == 0 for r in self.rows for x in r)

    def is_identity(self) -> bool:
        return all((x == 1) if i == j else (x == 0)
                   for i, r in enumerate(self.rows) for j, x in enumerate(r))

    def is_lower_triangular(self) -> bool:
        return all(x == 0 for i, r in enumerate(self.rows) for j, x in enumerate(r) if j > i)

    def rank(self) -> int:
        return rank_of(self.rows, self.ncols)

    def rref(self) -> "Matrix":
        return rref(self)

    def nullspace(self) -> list[tuple]:
        return kernel_basis(self.rows, self.ncols, self.field)

    def solve(self, b: Sequence) -> tuple | None:
        """One solution of ``self @ x = b`` or ``None`` when inconsistent."""
        n = self.ncols
        aug = [list(r) + [self.field(y)] for r, y in zip(self.rows, b)]
        red, pivots = rref_rows(aug, n + 1)
        if n in pivots:
            return None
        x = [self.field.zero] * n
        for row, pc in zip(red, pivots):
            x[pc] = row[n]
        return tuple(x)

    def det(self):
        if self.nrows != self.ncols:
            raise ValueError("determinant of a non-square matrix")
        m = [list(r) for r in self.rows]
        n = len(m)
        d = self.field.one
        for c in range(n):
            piv = next((i for i in range(c, n) if m[i][c] != 0), None)
            if piv is None:
                return self.field.zero
            if piv != c:
                m[c], m[piv] = m[piv], m[c]
                d = -d
            d = d * m[c][c]
            inv = 1 / m[c][c]
            for i in range(c + 1, n):
                if m[i][c] != 0:
                    f = m[i][c] * inv
                    m[i] = [a - f * b for a, b in zip(m[i], m[c])]
        return d

    def render(self) -> list[list[str]]:
        return [[self.field.render(x) for x in r] for r in self.rows]


def rref(m: Matrix) -> Matrix:
    """Reduced row-echelon form, keeping zero rows so the shape is unchanged."""
    red, _ = rref_rows(m.rows, m.ncols)
    pad = [tuple(m.field.zero for _ in range(m.ncols))] * (m.nrows - len(red))
    return Matrix(m.field, tuple(tuple(r) for r in red) + tuple(pad))


def inverse(m: Matrix) -> Matrix:
    n = m.nrows
    if n != m.ncols:
        raise ValueError(f"inverse of a non-square {m.shape} matrix")
    f = m.field
    aug = [list(r) + [f.one if i == j else f.zero for j in range(n)] for i, r in enumerate(m.rows)]
    red, pivots = rref_rows(aug, 2 * n)
    rank = sum(1 for p in pivots if p < n)
    if rank < n:
        raise NotInvertibleError(rank, n)
    return Matrix(f, tuple(tuple(r[n:]) for r in red))


# ---------------------------------------------------------------------------
# subspaces
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Subspace:
    """A subspace of ``field^n`` held by its RREF basis (so ``==`` is equality)."""

    field: Field
    n: int
    basis: tuple
    pivots: tuple

    @classmethod
    def span(cls, field: Field, n: int, vectors: Iterable[Sequence]) -> "Subspace":
        vecs = [tuple(field(x) for x in v) for v in vectors]
        for v in vecs:
            if len(v) != n:
                raise ValueError(f"vector of length {len(v)} in ambient dimension {n}")
        red, pivots = rref_rows(vecs, n)
        return cls(field, n, tuple(tuple(r) for r in red), tuple(pivots))

    @classmethod
    def zero(cls, field: Field, n: int) -> "Subspace":
        return cls(field, n, (), ())

    @classmethod
    def full(cls, field: Field, n: int) -> "Subspace":
        return cls.span(field, n, Matrix.identity(field, n).rows)

    @property
    def dim(self) -> int:
        return len(self.basis)

    def _check(self, other: "Subspace"):
        if other.field != self.field:
            raise FieldMismatchError("subspaces over different fields")
        if other.n != self.n:
            raise ValueError(f"ambient dimensions differ: {self.n} vs {other.n}")

    def reduce(self, v: Sequence) -> tuple:
        """Remainder of ``v`` after clearing the pivot coordinates."""
        v = list(v)
        for row, pc in zip(self.basis, self.pivots):
            c = v[pc]
            if c != 0:
                v = [a - c * b for a, b in zip(v, row)]
        return tuple(v)

    def contains(self, v: Sequence) -> bool:
        if len(v) != self.n:
            raise ValueError(f"vector of length {len(v)} in ambient dimension {self.n}")
        return is_zero_vector(self.reduce(v))

    def __contains__(self, v) -> bool:
        return self.contains(v)

    def issubspace(self, other: "Subspace") -> bool:
        self._check(other)
        return all(other.contains(b) for b in self.basis)

    def __le__(self, other: "Subspace") -> bool:
        return self.issubspace(other)

    def __add__(self, other: "Subspace") -> "Subspace":
        self._check(other)
        return Subspace.span(self.field, self.n, self.basis + other.basis)

    def intersection(self, other: "Subspace") -> "Subspace":
        self._check(other)
        if self.dim == 0 or other.dim == 0:
            return Subspace.zero(self.field, self.n)
        # (x, y) with x.A = y.B ; kernel of the transposed stack [A; -B]
        stacked = list(self.basis) + [tuple(-x for x in b) for b in other.basis]
        cols = len(stacked)
        rows = [[stacked[k][i] for k in range(cols)] for i in range(self.n)]
        rel = kernel_basis(rows, cols, self.field)
        vecs = []
        for x in rel:
            v = [self.field.zero] * self.n
            for k in range(self.dim):
                if x[k] != 0:
                    v = [a + x[k] * b for a, b in zip(v, self.basis[k])]
            vecs.append(v)
        return Subspace.span(self.field, self.n, vecs)

    def __and__(self, other: "Subspace") -> "Subspace":
        return self.intersection(other)

    def image(self, m: Matrix) -> "Subspace":
        return Subspace.span(self.field, m.nrows, [m.apply(b) for b in self.basis])

    def coordinates(self, v: Sequence) -> tuple | None:
        """Coefficients of ``v`` in this basis, or ``None`` if outside."""
        if not self.contains(v):
            return None
        return tuple(v[pc] for pc in self.pivots)

    def __repr__(self):
        return f"Subspace(dim={self.dim}, n={self.n}, field={self.field!r})"


def subspace_sum(a: Subspace, b: Subspace) -> Subspace:
    return a + b


def subspace_intersection(a: Subspace, b: Subspace) -> Subspace:
    return a & b


def subspace_contains(a: Subspace, b: Subspace) -> bool:
    """True when ``b`` is contained in ``a``."""
    return b.issubspace(a)


def unit_vector(field: Field, n: int, i: int, scale=1) -> tuple:
    return tuple(field(scale) if k == i else field.zero for k in range(n))
