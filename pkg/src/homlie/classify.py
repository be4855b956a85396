"""Reduction of filiform brackets to the canonical representatives.

The pipeline: find an adapted basis, read off the cocycle coefficients,
kill coefficients in increasing weight order with one-parameter elementary
changes whose effect polynomial has a rational root, rescale with ``nu``,
then match against the registry. Every match is re-verified by composing
the recorded changes.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from math import isqrt

from .algebra import HomAlgebra, change_basis
from .basis_change import (
    ChangeError,
    Nu,
    NotNormalFormError,
    Sigma,
    Tau,
    apply_change,
    apply_sequence,
    extract_psi_coefficients,
)
from .exactlin import Field, Matrix, NotInvertibleError, Subspace, inverse, kernel_basis, rref_rows
from .filiform import PsiCoefficients, assemble, delta_index_set, psi_cochain
from .registry import Representative, identity_params, registry
from .series import central_series, is_filiform, is_alpha_stable


class AdaptedBasisError(ValueError):
    pass


class ClassificationError(ValueError):
    pass


def weight(key: tuple[int, int]) -> int:
    k, r = key
    return r - 2 * k


# ---------------------------------------------------------------------------
# adapted bases
# ---------------------------------------------------------------------------

def _first_outside(space: Subspace, candidates) -> tuple | None:
    for v in candidates:
        if not space.contains(v):
            return v
    return None


def _units(F: Field, n: int) -> list[tuple]:
    return [tuple(F.one if i == j else F.zero for j in range(n)) for i in range(n)]


def _quotient_eigenvector(g: HomAlgebra, c1: Subspace) -> tuple | None:
    """A vector outside ``c1`` spanning an alpha-stable line modulo ``c1`` (dimension 3 only)."""
    F = g.field
    comp, cur = [], c1
    for u in _units(F, g.dim):
        if not cur.contains(u):
            comp.append(u)
            cur = cur + Subspace.span(F, g.dim, [u])
        if len(comp) == 2:
            break
    # coordinates of alpha(comp) modulo c1 in terms of comp
    ext = list(comp) + list(c1.basis)
    m = Matrix.from_columns(F, ext)
    minv = inverse(m)
    a = [[minv.apply(g.twist(u))[r] for u in comp] for r in range(2)]
    (p, q), (r, s) = a
    # eigenvectors of [[p, q], [r, s]]
    cands = []
    if q == 0 and r == 0:
        cands.append((F.one, F.zero))
    tr, det = p + s, p * s - q * r
    for lam in _quadratic_roots(F, F.one, -tr, det):
        if q != 0:
            cands.append((q, lam - p))
        elif r != 0:
            cands.append((lam - s, r))
        else:
            cands.append((F.one, F.zero))
    for x, y in cands:
        v = tuple(x * comp[0][i] + y * comp[1][i] for i in range(g.dim))
        if not c1.contains(v):
            return v
    return None


def find_adapted_basis(g: HomAlgebra) -> Matrix:
    """Basis (as columns) where the bracket is deformed normal form and alpha is lower triangular.

    ``x_1`` is taken in ``L = {u : [u, C^1] in C^3}`` outside ``C^1`` and
    ``x_0`` outside ``L``; the rest follow from ``x_i = [x_0, x_{i-1}]``.
    In dimension 3 ``x_1`` is an eigenvector of the twist map modulo ``C^1``.
    """
    if not is_filiform(g):
        raise AdaptedBasisError("input is not filiform")
    F, N = g.field, g.dim
    terms = central_series(g).terms
    c1 = terms[1]
    units = _units(F, N)
    if N == 3:
        x1 = _quotient_eigenvector(g, c1)
        if x1 is None:
            raise AdaptedBasisError("twist map has no eigenvector modulo C^1 over this field")
        x0 = _first_outside(Subspace.span(F, N, [x1]) + c1, units)
    else:
        c3 = terms[3] if len(terms) > 3 else Subspace.zero(F, N)
        free = [k for k in range(N) if k not in c3.pivots]
        rows = []
        for c in c1.basis:
            images = [c3.reduce(g.bracket(e, c)) for e in units]
            for k in free:
                rows.append([images[j][k] for j in range(N)])
        L = Subspace.span(F, N, kernel_basis(rows, N, F))
        if L.dim != N - 1:
            raise AdaptedBasisError(f"the distinguished hyperplane has dimension {L.dim}, expected {N - 1}")
        if not is_alpha_stable(g, L):
            raise AdaptedBasisError("twist map does not preserve the distinguished hyperplane; "
                                    "no adapted basis makes it lower triangular")
        x1 = _first_outside(c1, L.basis)
        x0s = [u for u in _candidates(F, N) if not L.contains(u)]
        return _first_working(g, x0s, x1)
    return _first_working(g, [x0], x1)


def _candidates(F: Field, N: int):
    """Unit vectors, then sums and differences of two unit vectors."""
    units = _units(F, N)
    yield from units
    for i in range(N):
        for j in range(i + 1, N):
            for s in (1, -1):
                yield tuple(units[i][k] + s * units[j][k] for k in range(N))


def _first_working(g: HomAlgebra, x0s, x1) -> Matrix:
    F, N = g.field, g.dim
    last = "no candidate for x_0"
    for x0 in x0s:
        cols = [x0, x1]
        for _ in range(2, N):
            cols.append(g.bracket(x0, cols[-1]))
        f = Matrix.from_columns(F, cols)
        try:
            h = change_basis(g, f)
        except NotInvertibleError:
            last = "bracket recursion did not produce a basis"
            continue
        if not h.alpha.is_lower_triangular():
            last = "twist map is not lower triangular in the constructed basis"
            continue
        try:
            extract_psi_coefficients(h)
        except NotNormalFormError as e:
            last = f"constructed basis is not adapted: {e}"
            continue
        return f
    raise AdaptedBasisError(last)


# ---------------------------------------------------------------------------
# fast coefficient probes
# ---------------------------------------------------------------------------

class _Prober:
    """Reads the cocycle coefficients of a conjugated bracket from a few entries."""

    def __init__(self, n: int, F: Field):
        self.n, self.F = n, F
        self.keys = delta_index_set(n)
        N = n + 1
        pairs = [(i, j) for i in range(N) for j in range(i + 1, N)]
        rows = [psi_cochain(n, k, r, F).coords() for k, r in self.keys]
        _, piv = rref_rows([list(r) for r in rows], len(pairs) * N)
        self.entries = [(pairs[p // N], p % N) for p in piv]
        sub = Matrix.of(F, [[rows[m][p] for m in range(len(self.keys))] for p in piv])
        self.solver = inverse(sub) if self.keys else None

    def coefficients(self, g: HomAlgebra, change) -> dict:
        from .basis_change import images

        a, b = images(change, g.dim, self.F)
        cols = [a, b]
        for _ in range(2, g.dim):
            cols.append(g.bracket(a, cols[-1]))
        obs = []
        for (i, j), t in self.entries:
            v = g.bracket(cols[i], cols[j])
            obs.append(_lower_solve(cols, v)[t])
        sol = self.solver.apply(obs) if self.keys else ()
        return dict(zip(self.keys, sol))


def _lower_solve(cols, v):
    n = len(v)
    w = [None] * n
    for k in range(n):
        s = v[k]
        for l in range(k):
            if cols[l][k] != 0:
                s = s - cols[l][k] * w[l]
        if cols[k][k] == 0:
            raise ChangeError("change matrix is not lower triangular with nonzero diagonal")
        w[k] = s / cols[k][k]
    return w


_PROBERS: dict = {}


def _prober(n: int, F: Field) -> _Prober:
    key = (n, F)
    if key not in _PROBERS:
        _PROBERS[key] = _Prober(n, F)
    return _PROBERS[key]


# ---------------------------------------------------------------------------
# roots
# ---------------------------------------------------------------------------

def _rational_sqrt(x: Fraction) -> Fraction | None:
    if x < 0:
        return None
    a, b = isqrt(x.numerator), isqrt(x.denominator)
    if a * a == x.numerator and b * b == x.denominator:
        return Fraction(a, b)
    return None


def _nth_root(F: Field, x, d: int):
    """A ``d``-th root of ``x`` in ``F`` (the positive one over Q when it exists)."""
    if F.is_rational:
        x = Fraction(x)
        neg = x < 0
        if neg and d % 2 == 0:
            return None
        ax = -x if neg else x

        def iroot(m):
            r = round(m ** (1.0 / d)) if m < 2 ** 1000 else int(m ** (1.0 / d))
            for c in (r - 1, r, r + 1):
                if c >= 0 and c ** d == m:
                    return c
            return None

        p, q = iroot(ax.numerator), iroot(ax.denominator)
        if p is None or q is None:
            return None
        r = Fraction(p, q)
        return -r if neg else r
    for y in F.elements():
        if y ** d == x:
            return y
    return None


def _quadratic_roots(F: Field, a, b, c) -> list:
    if a == 0:
        return [] if b == 0 else [-c / b]
    disc = b * b - 4 * a * c
    if F.is_rational:
        s = _rational_sqrt(Fraction(disc))
        if s is None:
            return []
        roots = {(-b + s) / (2 * a), (-b - s) / (2 * a)}
        return sorted(roots, key=lambda r: (abs(r), r))
    return [y for y in F.elements() if a * y * y + b * y + c == 0]


def _fit_quadratic(F: Field, pts: list, vals: list):
    """Coefficients ``(c0, c1, c2)`` through three points, or ``None`` if not exact on the rest."""
    (t0, t1, t2), (v0, v1, v2) = pts[:3], vals[:3]
    d01 = (v1 - v0) / (t1 - t0)
    d12 = (v2 - v1) / (t2 - t1)
    c2 = (d12 - d01) / (t2 - t0)
    c1 = d01 - c2 * (t0 + t1)
    c0 = v0 - c1 * t0 - c2 * t0 * t0
    for t, v in zip(pts[3:], vals[3:]):
        if c0 + c1 * t + c2 * t * t != v:
            return None
    return c0, c1, c2


def _candidate_changes(n: int):
    for k in range(2, n + 1):
        yield "sigma", k
    for k in range(1, n + 1):
        yield "tau", k


def _make(kind: str, t, k: int):
    return Sigma(t, k) if kind == "sigma" else Tau(t, k)


def _roots_for(g: HomAlgebra, kind: str, k: int, key, F: Field) -> tuple[list, str | None]:
    """Nonzero parameters ``t`` for which the change kills coefficient ``key``."""
    pr = _prober(g.dim - 1, F)
    if not F.is_rational and F.p <= 64:
        return [t for t in F.elements() if t != 0 and pr.coefficients(g, _make(kind, t, k))[key] == 0], None
    pts, vals = [F.zero], [pr.coefficients(g, Nu(1, 1))[key]]
    for x in (1, 2, 3, -1, 4, -2, 5, -3):
        if len(pts) == 5:
            break
        try:
            vals.append(pr.coefficients(g, _make(kind, F(x), k))[key])
            pts.append(F(x))
        except ChangeError:
            # singular parameter: the effect is not polynomial there
            continue
    fit = _fit_quadratic(F, pts, vals)
    if fit is None:
        return [], "effect polynomial has degree above 2"
    c0, c1, c2 = fit
    if c1 == 0 and c2 == 0:
        return [], None
    roots = [r for r in _quadratic_roots(F, c2, c1, c0) if r != 0]
    if not roots:
        return [], "root not rational"
    return roots, None


# ---------------------------------------------------------------------------
# classification
# ---------------------------------------------------------------------------

@dataclass
class ClassificationResult:
    name: str
    changes: list
    matrix: Matrix
    algebra: HomAlgebra
    initial: PsiCoefficients | None
    final: PsiCoefficients | None
    essential: list = dc_field(default_factory=list)
    params: dict = dc_field(default_factory=dict)
    verified: bool = False
    twist_fits: bool | None = None
    diagnostics: list = dc_field(default_factory=list)

    @property
    def matched(self) -> bool:
        return self.name != "unclassified"

    def as_dict(self) -> dict:
        F = self.algebra.field
        return {
            "name": self.name,
            "changes": [c.label(F) for c in self.changes],
            "adapted_change_matrix": self.matrix.render(),
            "initial_coefficients": self.initial.render(F) if self.initial else None,
            "final_coefficients": self.final.render(F) if self.final else None,
            "essential": [f"{k},{r}" for k, r in self.essential],
            "params": {k: F.render(v) for k, v in sorted(self.params.items())},
            "verified": self.verified,
            "twist_fits_pattern": self.twist_fits,
            "final_alpha": self.algebra.alpha.render(),
            "diagnostics": list(self.diagnostics),
        }


def _match(rep: Representative, coeffs: PsiCoefficients, F: Field) -> dict | None:
    nz = coeffs.nonzero()
    if set(nz) != set(rep.psi_keys):
        return None
    params = {}
    for key, expr in rep.psi:
        v = F(nz[key])
        if expr.isidentifier():
            params[expr] = v
        elif F.parse(expr) != v:
            return None
    return params


def twist_fits(rep: Representative, alpha: Matrix, known: dict) -> bool | None:
    """Whether some parameter choice reproduces ``alpha`` from the twist pattern."""
    if alpha.is_identity() and alpha.field.is_rational:
        ident = identity_params(rep.key)
        if ident is None:
            return False
        return all(ident.get(k) == v for k, v in known.items()) or None
    try:
        import sympy
    except ImportError:  # pragma: no cover
        return None
    F = alpha.field
    if not F.is_rational:
        return None
    syms = {p: sympy.Symbol(p) for p in rep.params}
    subs = {syms[k]: sympy.Rational(v.numerator, v.denominator) for k, v in known.items() if k in syms}
    eqs = []
    for i, row in enumerate(rep.grid):
        for j in range(i + 1):
            e = sympy.sympify(row[j], locals=syms).subs(subs)
            v = alpha.rows[i][j]
            eqs.append(e - sympy.Rational(v.numerator, v.denominator))
    eqs = [e for e in eqs if e != 0]
    if any(e.is_number for e in eqs):
        return False
    if not eqs:
        return True
    unknowns = sorted({s for e in eqs for s in e.free_symbols}, key=str)
    try:
        sols = sympy.solve(eqs, unknowns, dict=True)
    except NotImplementedError:
        return None
    return bool(sols)


def classify(g: HomAlgebra, check_twist: bool = True) -> ClassificationResult:
    F, N = g.field, g.dim
    if N not in range(3, 8):
        raise ClassificationError(f"classification covers dimensions 3 to 7, not {N}")
    if not is_filiform(g):
        raise ClassificationError("input is not filiform")
    n = N - 1
    diags: list[str] = []
    try:
        if not g.alpha.is_lower_triangular():
            raise NotNormalFormError("twist map not lower triangular")
        extract_psi_coefficients(g)
        P = Matrix.identity(F, N)
        h = g
    except NotNormalFormError:
        P = find_adapted_basis(g)
        h = change_basis(g, P)
        diags.append("input re-expressed in an adapted basis")
    g0 = h
    initial = extract_psi_coefficients(h)
    A = {k: F(initial.get(*k)) for k in delta_index_set(n)}
    order = sorted(A, key=lambda k: (weight(k), k))
    changes: list = []
    processed: list = []
    essential: list = []
    for key in order:
        if A[key] == 0:
            processed.append(key)
            continue
        killed = False
        for kind, k in _candidate_changes(n):
            roots, note = _roots_for(h, kind, k, key, F)
            if note and note != "root not rational":
                continue
            if note:
                diags.append(f"{kind}(., {k}) on a_{key[0]},{key[1]}: {note}")
            for t in roots:
                c = _make(kind, t, k)
                h2 = apply_change(c, h)
                B = extract_psi_coefficients(h2)
                if B.get(*key) == 0 and all(F(B.get(*p)) == A[p] for p in processed):
                    h = h2
                    A = {kk: F(B.get(*kk)) for kk in A}
                    changes.append(c)
                    killed = True
                    break
            if killed:
                break
        processed.append(key)
        if not killed:
            essential.append(key)
    # rescaling
    if essential:
        k1 = essential[0]
        v1 = A[k1]
        a = F.one
        second = next((k for k in essential[1:] if weight(k) != weight(k1)), None)
        if second is not None:
            d = weight(second) - weight(k1)
            root = _nth_root(F, A[second] / v1, d)
            if root is None:
                diags.append(f"nu: root of degree {d} not in the field; only a_{k1[0]},{k1[1]} normalized")
            else:
                a = root
        b = a ** weight(k1) / v1
        if not (a == 1 and b == 1):
            c = Nu(a, b)
            h = apply_change(c, h)
            changes.append(c)
    final = extract_psi_coefficients(h)
    # matching
    name, params, rep_found = "unclassified", {}, None
    for rep in registry(N):
        m = _match(rep, final, F)
        if m is None:
            continue
        if any(v == 0 for v in m.values()):
            continue
        name, params, rep_found = rep.name, m, rep
        break
    if rep_found is None:
        diags.append("terminal coefficients match no registry pattern: "
                     + (", ".join(f"a_{k},{r}={F.render(v)}" for (k, r), v in final.nonzero().items()) or "none"))
    # verification by composition
    _, T = apply_sequence(changes, g0)
    total = P @ T
    recomposed = change_basis(g, total)
    verified = recomposed.same_as(h)
    if rep_found is not None:
        target = assemble(n, final, h.alpha, F)
        verified = verified and target.same_as(h)
    fits = None
    if rep_found is not None and check_twist:
        fits = twist_fits(rep_found, h.alpha, params)
    return ClassificationResult(name, changes, total, h, initial, final, essential, params, verified, fits, diags)
