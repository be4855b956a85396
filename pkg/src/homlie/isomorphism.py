"""Exhaustive isomorphism search over small prime fields.

A witness ``f`` satisfies ``change_basis(g1, f) == g2``: its columns are the
images of the basis of ``g2`` inside ``g1``. Candidates are enumerated in
lexicographic order of residues, so the first witness found is canonical.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product

from .algebra import HomAlgebra
from .basis_change import is_adapted
from .exactlin import Matrix

DEFAULT_BUDGET = 10 ** 8


class SearchError(ValueError):
    pass


@dataclass(frozen=True)
class IsoResult:
    isomorphic: bool
    witness: Matrix | None
    candidates: int
    mode: str

    def as_dict(self) -> dict:
        return {"isomorphic": self.isomorphic, "mode": self.mode, "candidates": self.candidates,
                "witness": self.witness.render() if self.witness is not None else None}


class _Raw:
    """Structure constants and twist as plain residues."""

    def __init__(self, g: HomAlgebra):
        p = g.field.p
        self.p, self.n = p, g.dim
        self.pairs = [(i, j, [int(x.v) for x in g.table[i][j]]) for i in range(g.dim)
                      for j in range(i + 1, g.dim)]
        self.nz = [(i, j, c) for i, j, c in self.pairs if any(c)]
        self.alpha = [[int(x.v) for x in row] for row in g.alpha.rows]

    def bracket(self, u, v):
        p, out = self.p, [0] * self.n
        for i, j, c in self.nz:
            s = (u[i] * v[j] - u[j] * v[i]) % p
            if s:
                for k in range(self.n):
                    if c[k]:
                        out[k] += s * c[k]
        return [x % p for x in out]

    def twist(self, u):
        return [sum(self.alpha[r][k] * u[k] for k in range(self.n)) % self.p for r in range(self.n)]


def _combine(cols, coeffs, p, n):
    out = [0] * n
    for c, col in zip(coeffs, cols):
        if c:
            for k in range(n):
                out[k] += c * col[k]
    return [x % p for x in out]


def _is_witness(r1: _Raw, r2: _Raw, cols, pairs=None) -> bool:
    p, n = r1.p, r1.n
    for i, j, c in (pairs if pairs is not None else r2.pairs):
        if r1.bracket(cols[i], cols[j]) != _combine(cols, c, p, n):
            return False
    for j in range(n):
        if r1.twist(cols[j]) != _combine(cols, [r2.alpha[k][j] for k in range(n)], p, n):
            return False
    return True


def _check_inputs(g1: HomAlgebra, g2: HomAlgebra):
    if g1.field != g2.field or g1.field.is_rational:
        raise SearchError("both algebras must live over the same prime field")
    if g1.dim != g2.dim:
        raise SearchError("dimensions differ")


def _to_matrix(g: HomAlgebra, cols) -> Matrix:
    F = g.field
    return Matrix.from_columns(F, [[F(x) for x in c] for c in cols])


def iso_bruteforce(g1: HomAlgebra, g2: HomAlgebra, adapted: bool = True,
                   budget: int = DEFAULT_BUDGET) -> IsoResult:
    """Search for an isomorphism ``g2 -> g1``.

    With ``adapted`` both inputs must be in deformed normal form with a
    lower triangular twist; every isomorphism is then an adapted change and
    is fixed by the images of ``x_0`` and ``x_1``. Without it all invertible
    matrices are searched column by column (dimension at most 4).
    """
    _check_inputs(g1, g2)
    r1, r2 = _Raw(g1), _Raw(g2)
    p, N = r1.p, r1.n
    if adapted:
        if N > 6:
            raise SearchError("adapted exhaustive mode supports dimension at most 6")
        if not (is_adapted(g1) and is_adapted(g2)):
            raise SearchError("adapted mode needs both algebras in deformed normal form")
        total = (p - 1) ** 2 * p ** (2 * N - 3)
        if total > budget:
            raise SearchError(f"search space {total} exceeds the budget {budget}")
        count = 0
        rest = [(i, j, c) for i, j, c in r2.pairs if i != 0]
        for a in product(range(p), repeat=N):
            if a[0] == 0:
                continue
            for btail in product(range(p), repeat=N - 1):
                if btail[0] == 0:
                    continue
                count += 1
                cols = [list(a), [0, *btail]]
                for _ in range(2, N):
                    cols.append(r1.bracket(cols[0], cols[-1]))
                if any(cols[k][k] == 0 for k in range(N)):
                    continue
                # brackets with x_0 hold by construction except [x_0, x_n]
                pairs = rest + [(0, N - 1, r2.pairs[N - 2][2])]
                if _is_witness(r1, r2, cols, pairs):
                    return IsoResult(True, _to_matrix(g1, cols), count, "adapted")
        return IsoResult(False, None, count, "adapted")
    if N > 4:
        raise SearchError("unrestricted search supports dimension at most 4")
    return _backtrack(g1, r1, r2, budget)


def _backtrack(g1: HomAlgebra, r1: _Raw, r2: _Raw, budget: int) -> IsoResult:
    p, N = r1.p, r1.n
    # constraint lists keyed by the last column they need
    ready: dict[int, list] = {k: [] for k in range(N)}
    for i, j, c in r2.pairs:
        need = max([j] + [k for k in range(N) if c[k]])
        ready[need].append(("b", i, j, c))
    for j in range(N):
        col = [r2.alpha[k][j] for k in range(N)]
        need = max([j] + [k for k in range(N) if col[k]])
        ready[need].append(("a", j, col))
    vectors = [list(v) for v in product(range(p), repeat=N) if any(v)]
    count = 0
    cols: list = []

    def independent(rows, v):
        rows = [r[:] for r in rows]
        v = v[:]
        for r in rows:
            piv = next(k for k in range(N) if r[k])
            if v[piv]:
                f = v[piv] * pow(r[piv], -1, p) % p
                v = [(x - f * y) % p for x, y in zip(v, r)]
        return any(v), v

    def rec(echelon) -> bool:
        nonlocal count
        d = len(cols)
        if d == N:
            return True
        for v in vectors:
            count += 1
            if count > budget:
                raise SearchError(f"search exceeded the budget {budget}")
            ok, red = independent(echelon, v)
            if not ok:
                continue
            cols.append(v)
            good = True
            for con in ready[d]:
                if con[0] == "b":
                    _, i, j, c = con
                    if r1.bracket(cols[i], cols[j]) != _combine(cols, c, p, N):
                        good = False
                        break
                else:
                    _, j, col = con
                    if r1.twist(cols[j]) != _combine(cols, col, p, N):
                        good = False
                        break
            if good and rec(echelon + [red]):
                return True
            cols.pop()
        return False

    found = rec([])
    return IsoResult(found, _to_matrix(g1, cols) if found else None, count, "all")


def orbits(algebras: list[HomAlgebra], adapted: bool = True) -> list[list[int]]:
    """Partition indices into isomorphism classes by pairwise search."""
    classes: list[list[int]] = []
    for idx, g in enumerate(algebras):
        for cl in classes:
            if iso_bruteforce(algebras[cl[0]], g, adapted).isomorphic:
                cl.append(idx)
                break
        else:
            classes.append([idx])
    return classes
