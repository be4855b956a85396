"""Algebra-valued cochains, the Hom-Lie coboundary, and the circle product.

Two independent routes to the degree-two coboundary are kept on purpose:
:func:`coboundary` expands the alternating-sum formula term by term, while
:func:`delta2_circle_form` is built from :func:`circle`. For ``p = 2`` and the
standard sign convention they satisfy ``coboundary = -(circle form)``.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from math import comb
from typing import Callable, Mapping, Sequence

from .algebra import HomAlgebra, ad_matrix
from .exactlin import Field, Matrix, kernel_basis, rank_of

CONVENTIONS = ("standard", "unsigned")
SUPPORTED_ARITIES = (1, 2, 3)


def _sort_sign(idx: Sequence[int]) -> tuple[tuple, int]:
    inv = sum(1 for a in range(len(idx)) for b in range(a + 1, len(idx)) if idx[a] > idx[b])
    return tuple(sorted(idx)), (-1 if inv % 2 else 1)


def alt_expand(vecs: Sequence[Sequence], field: Field) -> dict[tuple, object]:
    """Write ``phi(v_1, ..., v_p)`` as ``sum c_S phi(x_S)`` over increasing ``S``."""
    out: dict[tuple, object] = {}
    supports = [[(a, c) for a, c in enumerate(v) if c != 0] for v in vecs]

    def rec(pos, chosen, coef):
        if pos == len(supports):
            s, sign = _sort_sign(chosen)
            out[s] = out.get(s, field.zero) + (coef if sign > 0 else -coef)
            return
        for a, c in supports[pos]:
            if a not in chosen:
                rec(pos + 1, chosen + (a,), coef * c)

    rec(0, (), field.one)
    return {s: c for s, c in out.items() if c != 0}


@dataclass(frozen=True)
class Cochain:
    """Alternating ``p``-linear map ``g^p -> g`` stored on increasing index tuples."""

    field: Field
    dim: int
    arity: int
    values: tuple  # one length-dim vector per tuple, in combinations() order
    equivariant: bool = False

    def __post_init__(self):
        if self.arity < 0:
            raise ValueError("cochain arity must be non-negative")
        if len(self.values) != comb(self.dim, self.arity):
            raise ValueError("wrong number of cochain values")
        for v in self.values:
            if len(v) != self.dim:
                raise ValueError("cochain value of the wrong length")

    @staticmethod
    def tuples(dim: int, arity: int) -> list[tuple]:
        return list(combinations(range(dim), arity))

    @classmethod
    def zero(cls, field: Field, dim: int, arity: int, equivariant: bool = False) -> "Cochain":
        z = tuple(field.zero for _ in range(dim))
        return cls(field, dim, arity, tuple(z for _ in range(comb(dim, arity))), equivariant)

    @classmethod
    def from_values(cls, field: Field, dim: int, arity: int, values: Mapping,
                    equivariant: bool = False) -> "Cochain":
        """From ``{index tuple: {k: c} or vector}``; tuples are sorted with sign."""
        table = {s: [field.zero] * dim for s in cls.tuples(dim, arity)}
        for idx, val in values.items():
            if len(idx) != arity or len(set(idx)) != arity:
                raise ValueError(f"bad cochain argument tuple {idx}")
            s, sign = _sort_sign(idx)
            if s not in table:
                raise ValueError(f"index tuple {idx} out of range")
            items = val.items() if isinstance(val, Mapping) else enumerate(val)
            for k, c in items:
                c = field(c)
                table[s][k] = table[s][k] + (c if sign > 0 else -c)
        return cls(field, dim, arity, tuple(tuple(table[s]) for s in cls.tuples(dim, arity)), equivariant)

    @classmethod
    def from_function(cls, field: Field, dim: int, arity: int, fn: Callable[[tuple], Sequence]) -> "Cochain":
        return cls(field, dim, arity, tuple(tuple(field(x) for x in fn(s)) for s in cls.tuples(dim, arity)))

    @classmethod
    def from_bracket(cls, g: HomAlgebra) -> "Cochain":
        return cls.from_function(g.field, g.dim, 2, lambda s: g.table[s[0]][s[1]])

    @classmethod
    def from_coords(cls, field: Field, dim: int, arity: int, coords: Sequence,
                    equivariant: bool = False) -> "Cochain":
        m = comb(dim, arity)
        if len(coords) != m * dim:
            raise ValueError("coordinate vector has the wrong length")
        return cls(field, dim, arity, tuple(tuple(coords[s * dim:(s + 1) * dim]) for s in range(m)), equivariant)

    def coords(self) -> tuple:
        return tuple(x for v in self.values for x in v)

    def _index(self) -> dict:
        idx = getattr(self, "_idx_cache", None)
        if idx is None:
            idx = {s: n for n, s in enumerate(self.tuples(self.dim, self.arity))}
            object.__setattr__(self, "_idx_cache", idx)
        return idx

    def at(self, idx: Sequence[int]) -> tuple:
        """Value on basis vectors ``x_{idx[0]}, ...`` in any order."""
        if len(set(idx)) < len(idx):
            return tuple(self.field.zero for _ in range(self.dim))
        s, sign = _sort_sign(idx)
        v = self.values[self._index()[s]]
        return v if sign > 0 else tuple(-x for x in v)

    def __call__(self, *vecs: Sequence) -> tuple:
        if len(vecs) != self.arity:
            raise ValueError(f"{self.arity}-cochain called with {len(vecs)} arguments")
        out = [self.field.zero] * self.dim
        index = self._index()
        for s, c in alt_expand(vecs, self.field).items():
            for k, x in enumerate(self.values[index[s]]):
                if x != 0:
                    out[k] = out[k] + c * x
        return tuple(out)

    def is_zero(self) -> bool:
        return all(x == 0 for v in self.values for x in v)

    def __add__(self, other: "Cochain") -> "Cochain":
        self._compat(other)
        return Cochain(self.field, self.dim, self.arity,
                       tuple(tuple(a + b for a, b in zip(u, v)) for u, v in zip(self.values, other.values)),
                       self.equivariant and other.equivariant)

    def __neg__(self) -> "Cochain":
        return self.scale(-1)

    def __sub__(self, other: "Cochain") -> "Cochain":
        return self + (-other)

    def scale(self, c) -> "Cochain":
        c = self.field(c)
        return Cochain(self.field, self.dim, self.arity,
                       tuple(tuple(c * a for a in v) for v in self.values), self.equivariant)

    def _compat(self, other: "Cochain"):
        if (self.field, self.dim, self.arity) != (other.field, other.dim, other.arity):
            raise ValueError("cochains of different shape")

    def support(self) -> list[tuple[tuple, tuple]]:
        return [(s, v) for s, v in zip(self.tuples(self.dim, self.arity), self.values)
                if any(x != 0 for x in v)]

    def to_dict(self) -> dict:
        return {",".join(map(str, s)): {str(k): self.field.render(x) for k, x in enumerate(v) if x != 0}
                for s, v in self.support()}


def is_equivariant(phi: Cochain, alpha: Matrix) -> bool:
    cols = alpha.columns()
    for s, v in zip(phi.tuples(phi.dim, phi.arity), phi.values):
        if alpha.apply(v) != phi(*[cols[i] for i in s]):
            return False
    return True


class CochainError(ValueError):
    pass


def _coboundary_terms(g: HomAlgebra, p: int, t: tuple, convention: str, ad_cache: dict):
    """Terms ``(S, coef, M)`` with ``delta phi(x_t) = sum coef * M @ phi(x_S)`` (``M=None`` is I)."""
    F = g.field
    terms = []
    apow = g.alpha ** (p - 1)
    cols = g.alpha.columns()
    for k in range(p + 1):
        rest = t[:k] + t[k + 1:]
        key = t[k]
        if key not in ad_cache:
            ad_cache[key] = ad_matrix(g, apow.column(key))
        terms.append((rest, F.one if k % 2 == 0 else -F.one, ad_cache[key]))
    for i, j in combinations(range(p + 1), 2):
        w = g.table[t[i]][t[j]]
        if all(x == 0 for x in w):
            continue
        others = [cols[t[m]] for m in range(p + 1) if m not in (i, j)]
        sign = F.one
        if convention == "standard" and (i + j) % 2:
            sign = -F.one
        for s, c in alt_expand([w] + others, F).items():
            terms.append((s, sign * c, None))
    return terms


def _check_convention(convention: str):
    if convention not in CONVENTIONS:
        raise CochainError(f"unknown coboundary convention {convention!r}")


def coboundary(g: HomAlgebra, phi: Cochain, convention: str = "standard") -> Cochain:
    """Hom-Lie coboundary of a ``p``-cochain, ``p >= 1``.

    ``standard`` uses the sign ``(-1)^(i+j)`` in the second sum; ``unsigned``
    drops it. Remaining arguments in the second sum carry ``alpha``.
    """
    _check_convention(convention)
    p = phi.arity
    if p < 1:
        raise CochainError("coboundary is defined for arity >= 1 only")
    if phi.dim != g.dim or phi.field != g.field:
        raise CochainError("cochain and algebra do not match")
    F = g.field
    ad_cache: dict = {}
    out = []
    for t in Cochain.tuples(g.dim, p + 1):
        acc = [F.zero] * g.dim
        for s, coef, m in _coboundary_terms(g, p, t, convention, ad_cache):
            v = phi.at(s)
            if m is not None:
                v = m.apply(v)
            acc = [a + coef * b for a, b in zip(acc, v)]
        out.append(tuple(acc))
    return Cochain(F, g.dim, p + 1, tuple(out))


def coboundary_matrix(g: HomAlgebra, p: int, convention: str = "standard") -> Matrix:
    """Matrix of the coboundary from ``p``- to ``(p+1)``-cochain coordinates."""
    _check_convention(convention)
    if p < 1:
        raise CochainError("coboundary is defined for arity >= 1 only")
    F, n = g.field, g.dim
    src = {s: k for k, s in enumerate(Cochain.tuples(n, p))}
    tgt = Cochain.tuples(n, p + 1)
    rows = [[F.zero] * (n * len(src)) for _ in range(n * len(tgt))]
    ad_cache: dict = {}
    for ti, t in enumerate(tgt):
        for s, coef, m in _coboundary_terms(g, p, t, convention, ad_cache):
            base = src[s] * n
            for a in range(n):
                r = rows[ti * n + a]
                if m is None:
                    r[base + a] = r[base + a] + coef
                else:
                    for b in range(n):
                        x = m.rows[a][b]
                        if x != 0:
                            r[base + b] = r[base + b] + coef * x
    return Matrix(F, tuple(tuple(r) for r in rows))


def circle(alpha: Matrix, phi1: Cochain, phi2: Cochain) -> Cochain:
    """``phi1(phi2(x, y), a z) + phi1(phi2(z, x), a y) + phi1(phi2(y, z), a x)``."""
    if phi1.arity != 2 or phi2.arity != 2:
        raise CochainError("circle product needs two 2-cochains")
    if phi1.dim != phi2.dim or alpha.shape != (phi1.dim, phi1.dim):
        raise CochainError("circle product operands have different dimensions")
    F, n = phi1.field, phi1.dim
    cols = alpha.columns()
    out = []
    for x, y, z in Cochain.tuples(n, 3):
        v = [F.zero] * n
        for a, b, c in ((x, y, z), (z, x, y), (y, z, x)):
            inner = phi2.at((a, b))
            if all(e == 0 for e in inner):
                continue
            term = phi1(inner, cols[c])
            v = [p + q for p, q in zip(v, term)]
        out.append(tuple(v))
    return Cochain(F, n, 3, tuple(out))


def delta2_circle_form(g: HomAlgebra, psi: Cochain) -> Cochain:
    """``mu o psi + psi o mu`` for the bracket ``mu`` of ``g``."""
    mu = Cochain.from_bracket(g)
    return circle(g.alpha, mu, psi) + circle(g.alpha, psi, mu)


def delta2_circle_matrix(g: HomAlgebra) -> Matrix:
    n = g.dim
    cols = []
    for idx in range(n * comb(n, 2)):
        e = [g.field.zero] * (n * comb(n, 2))
        e[idx] = g.field.one
        cols.append(delta2_circle_form(g, Cochain.from_coords(g.field, n, 2, e)).coords())
    return Matrix.from_columns(g.field, cols)


# ---------------------------------------------------------------------------
# cocycles, coboundaries, cohomology
# ---------------------------------------------------------------------------

def cochain_space_dim(n: int, p: int) -> int:
    return n * comb(n, p)


def equivariant_basis(g: HomAlgebra, p: int) -> list[tuple]:
    """Coordinate basis of the cochains commuting with the twist map."""
    F, n = g.field, g.dim
    size = cochain_space_dim(n, p)
    cols = []
    for idx in range(size):
        e = [F.zero] * size
        e[idx] = F.one
        phi = Cochain.from_coords(F, n, p, e)
        acols = g.alpha.columns()
        defect = []
        for s, v in zip(phi.tuples(n, p), phi.values):
            lhs = g.alpha.apply(v)
            rhs = phi(*[acols[i] for i in s])
            defect.extend(a - b for a, b in zip(lhs, rhs))
        cols.append(defect)
    if not cols:
        return []
    rows = [[cols[c][r] for c in range(size)] for r in range(len(cols[0]))]
    return kernel_basis(rows, size, F)


def _domain(g: HomAlgebra, p: int, equivariant: bool) -> Matrix:
    """Columns span the admissible ``p``-cochains."""
    F, n = g.field, g.dim
    size = cochain_space_dim(n, p)
    if equivariant:
        basis = equivariant_basis(g, p)
        if not basis:
            return Matrix(F, tuple(() for _ in range(size)))
        return Matrix.from_columns(F, basis)
    return Matrix.identity(F, size)


def _delta(g: HomAlgebra, p: int, convention: str, form: str) -> Matrix:
    if form == "circle":
        if p != 2:
            raise CochainError("the circle form is only defined in degree 2")
        return delta2_circle_matrix(g)
    return coboundary_matrix(g, p, convention)


@dataclass(frozen=True)
class CohomologyReport:
    arity: int
    equivariant: bool
    convention: str
    form: str
    cochain_dim: int
    cocycle_dim: int
    coboundary_dim: int
    delta_squared_zero: bool
    cohomology_dim: int | None
    diagnostic: str

    def as_dict(self) -> dict:
        return {k: getattr(self, k) for k in self.__dataclass_fields__}


def _check_p(p: int):
    if p not in SUPPORTED_ARITIES:
        raise CochainError(f"unsupported arity {p}; choose from {SUPPORTED_ARITIES}")


def _mul_or_empty(a: Matrix, b: Matrix) -> Matrix:
    if b.ncols == 0:
        return Matrix(a.field, tuple(() for _ in range(a.nrows)))
    return a @ b


def cohomology_report(g: HomAlgebra, p: int, equivariant: bool = False,
                      convention: str = "standard", form: str = "literal") -> CohomologyReport:
    _check_p(p)
    _check_convention(convention)
    if form not in ("literal", "circle"):
        raise CochainError(f"unknown coboundary form {form!r}")
    dom = _domain(g, p, equivariant)
    top = cochain_space_dim(g.dim, p + 1) == 0
    cochain_dim = dom.ncols
    # nothing lives in degree p + 1, so every p-cochain is a cocycle
    cocycle_dim = cochain_dim if top else cochain_dim - _mul_or_empty(_delta(g, p, convention, form), dom).rank()
    if p == 1:
        coboundary_dim, dd_zero = 0, True
        diagnostic = "no degree-0 coboundary; B^1 taken as zero"
    else:
        prev = _mul_or_empty(coboundary_matrix(g, p - 1, convention), _domain(g, p - 1, equivariant))
        coboundary_dim = rank_of(prev.T.rows, prev.nrows) if prev.ncols else 0
        dd = _mul_or_empty(_delta(g, p, convention, form), prev) if prev.ncols and not top else None
        dd_zero = dd is None or dd.is_zero()
        diagnostic = "delta o delta vanishes" if dd_zero else "delta o delta does not vanish"
    coh = cocycle_dim - coboundary_dim if dd_zero else None
    return CohomologyReport(p, equivariant, convention, form, cochain_dim, cocycle_dim,
                            coboundary_dim, dd_zero, coh, diagnostic)


class CohomologyRefused(ValueError):
    pass


def cocycle_space_dim(g: HomAlgebra, p: int, equivariant: bool = False, convention: str = "standard") -> int:
    return cohomology_report(g, p, equivariant, convention).cocycle_dim


def coboundary_space_dim(g: HomAlgebra, p: int, equivariant: bool = False, convention: str = "standard") -> int:
    return cohomology_report(g, p, equivariant, convention).coboundary_dim


def cohomology_dim(g: HomAlgebra, p: int, equivariant: bool = False, convention: str = "standard") -> int:
    rep = cohomology_report(g, p, equivariant, convention)
    if rep.cohomology_dim is None:
        raise CohomologyRefused(f"{rep.diagnostic}; dim Z = {rep.cocycle_dim}, dim B = {rep.coboundary_dim}")
    return rep.cohomology_dim


def cocycle_basis(g: HomAlgebra, p: int, equivariant: bool = False, convention: str = "standard",
                  form: str = "literal") -> list[Cochain]:
    _check_p(p)
    dom = _domain(g, p, equivariant)
    if dom.ncols == 0:
        return []
    if cochain_space_dim(g.dim, p + 1) == 0:
        return [Cochain.from_coords(g.field, g.dim, p, c, equivariant) for c in dom.columns()]
    dp = _mul_or_empty(_delta(g, p, convention, form), dom)
    out = []
    for k in dp.nullspace():
        out.append(Cochain.from_coords(g.field, g.dim, p, dom.apply(k), equivariant))
    return out
