"""Hom-Lie algebras by structure constants: axioms, morphisms, sums, center."""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from itertools import combinations
from typing import Mapping, Sequence

from .exactlin import (
    Field,
    FieldMismatchError,
    Matrix,
    Subspace,
    inverse,
    is_zero_vector,
    kernel_basis,
)


@dataclass(frozen=True)
class HomAlgebra:
    """A skew bracket on ``field^dim`` together with a twist map.

    ``table[i][j]`` holds the coordinates of ``[x_i, x_j]``; skew-symmetry is
    enforced at construction. ``alpha`` uses the column convention: column
    ``j`` is ``alpha(x_j)``.
    """

    field: Field
    dim: int
    table: tuple
    alpha: Matrix
    labels: tuple | None = None
    _nz: tuple = dc_field(default=(), repr=False, compare=False)

    def __post_init__(self):
        n = self.dim
        if self.alpha.shape != (n, n):
            raise ValueError(f"twist map has shape {self.alpha.shape}, expected {(n, n)}")
        if self.alpha.field != self.field:
            raise FieldMismatchError("twist map and bracket over different fields")
        if len(self.table) != n or any(len(r) != n for r in self.table):
            raise ValueError("bracket table has the wrong shape")
        for i in range(n):
            if not is_zero_vector(self.table[i][i]):
                raise ValueError(f"[x_{i}, x_{i}] must vanish")
            for j in range(i + 1, n):
                a, b = self.table[i][j], self.table[j][i]
                if len(a) != n or any(x + y != 0 for x, y in zip(a, b)):
                    raise ValueError(f"bracket table is not skew at ({i}, {j})")
                if not all(self.field.owns(x) for x in a):
                    raise FieldMismatchError(f"bracket entry ({i},{j}) not over {self.field!r}")
        if self.labels is not None and len(self.labels) != n:
            raise ValueError("labels do not match the dimension")
        nz = tuple((i, j, self.table[i][j]) for i in range(n) for j in range(n)
                   if not is_zero_vector(self.table[i][j]))
        object.__setattr__(self, "_nz", nz)

    @classmethod
    def from_brackets(cls, field: Field, dim: int, brackets: Mapping, alpha=None,
                      labels: Sequence[str] | None = None) -> "HomAlgebra":
        """Build from ``{(i, j): {k: c}}`` (or ``{(i, j): vector}``) with ``i != j``."""
        zero = tuple(field.zero for _ in range(dim))
        t = [[zero] * dim for _ in range(dim)]
        seen = set()
        for (i, j), val in brackets.items():
            if not (0 <= i < dim and 0 <= j < dim) or i == j:
                raise ValueError(f"bad bracket index pair ({i}, {j})")
            key = (min(i, j), max(i, j))
            if key in seen:
                raise ValueError(f"duplicate bracket pair {key}")
            seen.add(key)
            if isinstance(val, Mapping):
                vec = [field.zero] * dim
                for k, c in val.items():
                    if not 0 <= k < dim:
                        raise ValueError(f"bracket target index {k} out of range")
                    vec[k] = field(c)
                vec = tuple(vec)
            else:
                vec = tuple(field(c) for c in val)
                if len(vec) != dim:
                    raise ValueError("bracket vector has the wrong length")
            t[i][j] = vec
            t[j][i] = tuple(-c for c in vec)
        if alpha is None:
            alpha = Matrix.identity(field, dim)
        elif not isinstance(alpha, Matrix):
            alpha = Matrix.of(field, alpha)
        return cls(field, dim, tuple(tuple(r) for r in t), alpha,
                   tuple(labels) if labels is not None else None)

    def with_alpha(self, alpha: Matrix) -> "HomAlgebra":
        return HomAlgebra(self.field, self.dim, self.table, alpha, self.labels)

    def with_table(self, table) -> "HomAlgebra":
        return HomAlgebra(self.field, self.dim, table, self.alpha, self.labels)

    def basis_bracket(self, i: int, j: int) -> tuple:
        return self.table[i][j]

    def nonzero_pairs(self) -> list[tuple[int, int, tuple]]:
        """Nonzero ``[x_i, x_j]`` with ``i < j``."""
        return [(i, j, v) for i, j, v in self._nz if i < j]

    def unit(self, i: int) -> tuple:
        return tuple(self.field.one if k == i else self.field.zero for k in range(self.dim))

    def zero_vector(self) -> tuple:
        return tuple(self.field.zero for _ in range(self.dim))

    def bracket(self, u: Sequence, v: Sequence) -> tuple:
        return bracket_eval(self, u, v)

    def twist(self, u: Sequence) -> tuple:
        return self.alpha.apply(u)

    def same_as(self, other: "HomAlgebra") -> bool:
        return (self.field == other.field and self.dim == other.dim
                and self.table == other.table and self.alpha == other.alpha)


def _check_vec(g: HomAlgebra, u: Sequence):
    if len(u) != g.dim:
        raise ValueError(f"vector of length {len(u)} in a {g.dim}-dimensional algebra")


def bracket_eval(g: HomAlgebra, u: Sequence, v: Sequence) -> tuple:
    _check_vec(g, u)
    _check_vec(g, v)
    out = [g.field.zero] * g.dim
    for i, j, c in g._nz:
        ui, vj = u[i], v[j]
        if ui == 0 or vj == 0:
            continue
        s = ui * vj
        for k, ck in enumerate(c):
            if ck != 0:
                out[k] = out[k] + s * ck
    return tuple(out)


def _add(*vs):
    out = list(vs[0])
    for v in vs[1:]:
        out = [a + b for a, b in zip(out, v)]
    return tuple(out)


def jacobi_defect(g: HomAlgebra, x: Sequence, y: Sequence, z: Sequence, twist: bool = True) -> tuple:
    """Cyclic sum of ``[a(x), [y, z]]``; ``a`` is the twist map or the identity."""
    ax, ay, az = (g.twist(x), g.twist(y), g.twist(z)) if twist else (x, y, z)
    return _add(g.bracket(ax, g.bracket(y, z)),
                g.bracket(ay, g.bracket(z, x)),
                g.bracket(az, g.bracket(x, y)))


def hom_jacobi_defect(g: HomAlgebra, i: int, j: int, k: int) -> tuple:
    return jacobi_defect(g, g.unit(i), g.unit(j), g.unit(k))


def hom_jacobi_violations(g: HomAlgebra, twist: bool = True) -> list[tuple[tuple[int, int, int], tuple]]:
    bad = []
    for i, j, k in combinations(range(g.dim), 3):
        d = jacobi_defect(g, g.unit(i), g.unit(j), g.unit(k), twist=twist)
        if not is_zero_vector(d):
            bad.append(((i, j, k), d))
    return bad


def check_hom_jacobi(g: HomAlgebra) -> bool:
    for i, j, k in combinations(range(g.dim), 3):
        if not is_zero_vector(hom_jacobi_defect(g, i, j, k)):
            return False
    return True


def is_lie(g: HomAlgebra) -> bool:
    """Plain Jacobi identity for the bracket, ignoring the twist map."""
    for i, j, k in combinations(range(g.dim), 3):
        if not is_zero_vector(jacobi_defect(g, g.unit(i), g.unit(j), g.unit(k), twist=False)):
            return False
    return True


def multiplicative_violations(g: HomAlgebra) -> list[tuple[int, int]]:
    images = [g.alpha.column(i) for i in range(g.dim)]
    bad = []
    for i, j in combinations(range(g.dim), 2):
        if g.twist(g.table[i][j]) != g.bracket(images[i], images[j]):
            bad.append((i, j))
    return bad


def check_multiplicative(g: HomAlgebra) -> bool:
    return not multiplicative_violations(g)


def _check_map(f: Matrix, g: HomAlgebra, h: HomAlgebra):
    if f.shape != (h.dim, g.dim):
        raise ValueError(f"map of shape {f.shape} between dims {g.dim} -> {h.dim}")
    if not (f.field == g.field == h.field):
        raise FieldMismatchError("map and algebras over different fields")


def bracket_morphism_violations(f: Matrix, g: HomAlgebra, h: HomAlgebra) -> list[tuple[int, int]]:
    _check_map(f, g, h)
    cols = f.columns() if g.dim else []
    bad = []
    for i, j in combinations(range(g.dim), 2):
        if h.bracket(cols[i], cols[j]) != f.apply(g.table[i][j]):
            bad.append((i, j))
    return bad


def is_weak_morphism(f: Matrix, g: HomAlgebra, h: HomAlgebra) -> bool:
    return not bracket_morphism_violations(f, g, h)


def is_morphism(f: Matrix, g: HomAlgebra, h: HomAlgebra) -> bool:
    return is_weak_morphism(f, g, h) and (f @ g.alpha) == (h.alpha @ f)


def direct_sum(g: HomAlgebra, h: HomAlgebra) -> HomAlgebra:
    if g.field != h.field:
        raise FieldMismatchError("direct sum of algebras over different fields")
    n, m = g.dim, h.dim
    F = g.field
    brackets = {}
    for i, j, v in g.nonzero_pairs():
        brackets[(i, j)] = tuple(v) + tuple(F.zero for _ in range(m))
    for i, j, v in h.nonzero_pairs():
        brackets[(n + i, n + j)] = tuple(F.zero for _ in range(n)) + tuple(v)
    rows = [tuple(r) + tuple(F.zero for _ in range(m)) for r in g.alpha.rows]
    rows += [tuple(F.zero for _ in range(n)) + tuple(r) for r in h.alpha.rows]
    labels = None
    if g.labels is not None and h.labels is not None:
        labels = tuple(g.labels) + tuple(h.labels)
    return HomAlgebra.from_brackets(F, n + m, brackets, Matrix(F, tuple(rows)), labels)


def zero_algebra(field: Field, dim: int = 0) -> HomAlgebra:
    return HomAlgebra.from_brackets(field, dim, {})


def check_morphism_via_graph(f: Matrix, g: HomAlgebra, h: HomAlgebra) -> bool:
    """Morphism test through closure of the graph ``{(x, f x)}`` inside ``g + h``."""
    _check_map(f, g, h)
    s = direct_sum(g, h)
    gens = [tuple(g.unit(i)) + f.column(i) for i in range(g.dim)]
    graph = Subspace.span(g.field, s.dim, gens)
    for u in gens:
        if not graph.contains(s.twist(u)):
            return False
    for a, b in combinations(gens, 2):
        if not graph.contains(s.bracket(a, b)):
            return False
    return True


def center(g: HomAlgebra) -> Subspace:
    """``{z : [x_i, z] = 0 for all i}`` as the kernel of the stacked ad maps."""
    n = g.dim
    rows = []
    for i in range(n):
        # coordinate k of [x_i, z] = sum_j z_j c_{ij}^k
        for k in range(n):
            rows.append([g.table[i][j][k] for j in range(n)])
    return Subspace.span(g.field, n, kernel_basis(rows, n, g.field))


def ad_matrix(g: HomAlgebra, u: Sequence) -> Matrix:
    """Matrix of ``ad u = [u, .]`` in the column convention."""
    return Matrix.from_columns(g.field, [g.bracket(u, g.unit(j)) for j in range(g.dim)])


def change_basis(g: HomAlgebra, f: Matrix) -> HomAlgebra:
    """Express ``g`` in the basis whose ``i``-th vector is column ``i`` of ``f``.

    New constants are ``f^{-1}[f e_i, f e_j]`` and the new twist is
    ``f^{-1} alpha f``.
    """
    finv = inverse(f)
    cols = f.columns()
    brackets = {}
    for i, j in combinations(range(g.dim), 2):
        v = finv.apply(g.bracket(cols[i], cols[j]))
        if not is_zero_vector(v):
            brackets[(i, j)] = v
    return HomAlgebra.from_brackets(g.field, g.dim, brackets, finv @ g.alpha @ f, g.labels)


class InvariantViolation(RuntimeError):
    """A construction produced something its own theory forbids."""


def compose_bracket(g: HomAlgebra, m: Matrix, alpha: Matrix | None = None) -> HomAlgebra:
    """The algebra with bracket ``m o [.,.]`` and twist ``alpha`` (default: unchanged)."""
    table = tuple(tuple(m.apply(v) for v in row) for row in g.table)
    return HomAlgebra(g.field, g.dim, table, g.alpha if alpha is None else alpha, g.labels)


def reduce_to(g: HomAlgebra, field: Field) -> HomAlgebra:
    """The same structure constants read in ``field`` (rationals reduced mod p)."""
    if not g.field.is_rational and g.field != field:
        raise FieldMismatchError("only rational algebras can be moved to another field")
    try:
        table = tuple(tuple(tuple(field(c) for c in v) for v in row) for row in g.table)
        alpha = Matrix(field, tuple(tuple(field(c) for c in r) for r in g.alpha.rows))
    except ZeroDivisionError:
        raise ValueError(f"a denominator vanishes in {field.tag}") from None
    return HomAlgebra(field, g.dim, table, alpha, g.labels)
