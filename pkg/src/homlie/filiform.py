"""The model filiform bracket, Vergne cocycles, and linear deformations of it.

Basis ``x_0, ..., x_n`` (dimension ``n + 1``). The model bracket is
``[x_0, x_i] = x_{i+1}`` for ``1 <= i <= n - 1``.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from itertools import combinations
from math import comb
from typing import Mapping

from .algebra import HomAlgebra, InvariantViolation, check_hom_jacobi, multiplicative_violations
from .cohomology import Cochain, circle
from .exactlin import QQ, Field, Matrix


class ModelError(ValueError):
    pass


def _binom(q: int, p: int) -> int:
    """Binomial with the convention ``C(q, p) = 0`` whenever ``q < p``."""
    if p < 0 or q < p:
        return 0
    return comb(q, p)


def _identity_or(field: Field, dim: int, alpha) -> Matrix:
    if alpha is None or (isinstance(alpha, str) and alpha == "id"):
        return Matrix.identity(field, dim)
    if not isinstance(alpha, Matrix):
        alpha = Matrix.of(field, alpha)
    if alpha.shape != (dim, dim):
        raise ModelError(f"twist map of shape {alpha.shape}, expected {(dim, dim)}")
    if not alpha.is_lower_triangular():
        raise ModelError("twist map must be lower triangular")
    return alpha


def model_brackets(n: int) -> dict:
    return {(0, i): {i + 1: 1} for i in range(1, n)}


def model_ln(n: int, alpha=None, field: Field = QQ) -> HomAlgebra:
    if n < 2:
        raise ModelError("the model algebra needs n >= 2")
    return HomAlgebra.from_brackets(field, n + 1, model_brackets(n), _identity_or(field, n + 1, alpha))


def delta_index_set(n: int) -> list[tuple[int, int]]:
    """Index pairs ``(k, r)`` of the Vergne cocycles, in lexicographic order.

    ``1 <= k <= n - 1`` and ``2k + 1 < r <= n``; for odd ``n >= 5`` the pair
    ``((n - 1) / 2, n)`` is added.
    """
    if n < 2:
        raise ModelError("n must be at least 2")
    out = {(k, r) for k in range(1, n) for r in range(2 * k + 2, n + 1)}
    if n % 2 == 1 and n >= 5:
        out.add(((n - 1) // 2, n))
    return sorted(out)


def psi_value(n: int, k: int, r: int, i: int, j: int, alt_sign: bool = False) -> tuple[int, int] | None:
    """``psi_{k,r}(x_i, x_j)`` for ``i < j`` as ``(coefficient, target)``, or ``None``.

    The coefficient is ``(-1)^(k-i+1) C(j-k-1, k-i)`` on ``1 <= i <= k < j``
    and the target ``x_{i+j+r-2k-1}`` is dropped past ``x_n``. With
    ``alt_sign`` the sign is ``(-1)^(k-j)`` instead; that variant is not
    a cocycle of the model bracket once ``j`` ranges over more than one value.
    """
    if not (1 <= i <= k <= j <= n) or i == j:
        return None
    c = _binom(j - k - 1, k - i)
    t = i + j + r - 2 * k - 1
    if c == 0 or t > n:
        return None
    e = (k - j) if alt_sign else (k - i + 1)
    return (-1 if e % 2 else 1) * c, t


def psi_cochain(n: int, k: int, r: int, field: Field = QQ, alt_sign: bool = False) -> Cochain:
    if (k, r) not in delta_index_set(n):
        raise ModelError(f"({k}, {r}) is not in the index set for n = {n}")
    vals = {}
    for i, j in combinations(range(1, n + 1), 2):
        v = psi_value(n, k, r, i, j, alt_sign)
        if v is not None:
            vals[(i, j)] = {v[1]: v[0]}
    return Cochain.from_values(field, n + 1, 2, vals)


def mu0_cochain(n: int, field: Field = QQ) -> Cochain:
    return Cochain.from_values(field, n + 1, 2, model_brackets(n))


@dataclass(frozen=True)
class PsiCoefficients:
    n: int
    coeffs: Mapping = dc_field(default_factory=dict)

    def __post_init__(self):
        allowed = set(delta_index_set(self.n))
        for key in self.coeffs:
            if tuple(key) not in allowed:
                raise ModelError(f"({key[0]}, {key[1]}) is not in the index set for n = {self.n}")

    def nonzero(self) -> dict:
        return {tuple(k): v for k, v in sorted(self.coeffs.items()) if v != 0}

    def get(self, k: int, r: int, default=0):
        return self.coeffs.get((k, r), default)

    def __eq__(self, other):
        if not isinstance(other, PsiCoefficients):
            return NotImplemented
        return self.n == other.n and self.nonzero() == other.nonzero()

    def __hash__(self):
        return hash((self.n, tuple(self.nonzero().items())))

    def render(self, field: Field) -> dict:
        return {f"{k},{r}": field.render(v) for (k, r), v in self.nonzero().items()}


def psi_of(coeffs: PsiCoefficients, field: Field = QQ) -> Cochain:
    total = Cochain.zero(field, coeffs.n + 1, 2)
    for (k, r), a in coeffs.nonzero().items():
        total = total + psi_cochain(coeffs.n, k, r, field).scale(a)
    return total


def assemble(n: int, coeffs, alpha=None, field: Field = QQ) -> HomAlgebra:
    """``mu_0 + sum a_{k,r} psi_{k,r}`` with the given lower triangular twist."""
    if not isinstance(coeffs, PsiCoefficients):
        coeffs = PsiCoefficients(n, {tuple(k): field(v) for k, v in dict(coeffs).items()})
    if coeffs.n != n:
        raise ModelError("coefficient set built for a different n")
    mu = mu0_cochain(n, field) + psi_of(coeffs, field)
    brackets = {s: v for s, v in mu.support()}
    return HomAlgebra.from_brackets(field, n + 1, brackets, _identity_or(field, n + 1, alpha))


def has_separated_shape(alpha: Matrix) -> bool:
    """Lower triangular with ``alpha(x_0)`` a multiple of ``x_0``."""
    return alpha.is_lower_triangular() and all(alpha.rows[i][0] == 0 for i in range(1, alpha.nrows))


def _split(c: Cochain) -> tuple[list, list]:
    with0, without0 = [], []
    for s, v in c.support():
        (with0 if s[0] == 0 else without0).append(s)
    return with0, without0


@dataclass(frozen=True)
class DeformationReport:
    cocycle_residual: Cochain
    jacobi_residual: Cochain
    combined_residual: Cochain
    verdict: bool
    separated_shape: bool
    # nonzero triples of each natural sub-condition
    jacobi_without_x0: tuple
    cocycle_with_x0: tuple
    jacobi_with_x0: tuple
    cocycle_without_x0: tuple

    @property
    def cocycle_ok(self) -> bool:
        return self.cocycle_residual.is_zero()

    @property
    def jacobi_ok(self) -> bool:
        return self.jacobi_residual.is_zero()

    def as_dict(self) -> dict:
        fmt = lambda ts: [list(t) for t in ts]
        return {
            "verdict": self.verdict,
            "cocycle_zero": self.cocycle_ok,
            "jacobi_zero": self.jacobi_ok,
            "separated_shape": self.separated_shape,
            "cocycle_residual": self.cocycle_residual.to_dict(),
            "jacobi_residual": self.jacobi_residual.to_dict(),
            "jacobi_without_x0_triples": fmt(self.jacobi_without_x0),
            "cocycle_with_x0_triples": fmt(self.cocycle_with_x0),
            "jacobi_with_x0_triples": fmt(self.jacobi_with_x0),
            "cocycle_without_x0_triples": fmt(self.cocycle_without_x0),
        }


def deformation_part(g: HomAlgebra) -> Cochain:
    n = g.dim - 1
    return Cochain.from_bracket(g) - mu0_cochain(n, g.field)


def deformation_check(g: HomAlgebra) -> DeformationReport:
    """Residuals of ``mu_0 o psi + psi o mu_0`` and ``psi o psi`` for ``g = mu_0 + psi``."""
    n = g.dim - 1
    if n < 2:
        raise ModelError("need dimension at least 3")
    mu0 = mu0_cochain(n, g.field)
    psi = Cochain.from_bracket(g) - mu0
    a = g.alpha
    cocycle = circle(a, mu0, psi) + circle(a, psi, mu0)
    jac = circle(a, psi, psi)
    combined = circle(a, mu0 + psi, mu0 + psi)
    if combined != circle(a, mu0, mu0) + cocycle + jac:
        raise InvariantViolation("circle product failed to be bilinear")
    sep = has_separated_shape(a)
    verdict = combined.is_zero()
    if sep and verdict != (cocycle.is_zero() and jac.is_zero()):
        raise InvariantViolation("combined residual and its two parts disagree for a separated twist")
    c_with, c_without = _split(cocycle)
    j_with, j_without = _split(jac)
    return DeformationReport(cocycle, jac, combined, verdict, sep, tuple(j_without), tuple(c_with),
                             tuple(j_with), tuple(c_without))


# ---------------------------------------------------------------------------
# multiplicative twist maps on the model algebra
# ---------------------------------------------------------------------------

FAMILIES = ("L2", "rho00_nonzero", "rho00_zero")


def multiplicative_alpha_matrix(case: str, n: int, rho: Mapping, field: Field = QQ) -> Matrix:
    """Twist matrix of one of the three multiplicative families on the model algebra.

    ``rho[(i, k)]`` is the coefficient of ``x_i`` in ``alpha(x_k)``; missing
    entries are zero.
    """
    R = lambda i, k: field(rho.get((i, k), 0))
    cols = [[field.zero] * (n + 1) for _ in range(n + 1)]
    if case == "L2":
        if n != 2:
            raise ModelError("the L2 family lives on n = 2")
        cols[0] = [R(0, 0), R(1, 0), R(2, 0)]
        cols[1] = [field.zero, R(1, 1), R(2, 1)]
        cols[2] = [field.zero, field.zero, R(0, 0) * R(1, 1)]
    elif case == "rho00_nonzero":
        if n < 3:
            raise ModelError("this family needs n >= 3")
        r00 = R(0, 0)
        if r00 == 0:
            raise ModelError("rho_00 must be nonzero in this family")
        cols[0] = [R(i, 0) for i in range(n + 1)]
        for i in range(2, n):
            cols[1][i - 1] = cols[1][i - 1] + R(i, 2) / r00
        cols[1][n - 1] = cols[1][n - 1] + R(n - 1, 1)
        cols[1][n] = cols[1][n] + R(n, 1)
        for i in range(2, n):
            cols[2][i] = cols[2][i] + R(i, 2)
        cols[2][n] = cols[2][n] + r00 * R(n - 1, 1)
        for k in range(3, n + 1):
            for i in range(2, n - k + 3):
                cols[k][k + i - 2] = cols[k][k + i - 2] + r00 ** (k - 2) * R(i, 2)
    elif case == "rho00_zero":
        cols[0] = [field.zero] + [R(i, 0) for i in range(1, n + 1)]
        cols[1] = [field.zero] + [R(i, 1) for i in range(1, n + 1)]
    else:
        raise ModelError(f"unknown family {case!r}; choose from {FAMILIES}")
    return Matrix.from_columns(field, cols)


def multiplicative_ln_alpha(case: str, n: int, rho: Mapping, field: Field = QQ) -> HomAlgebra:
    g = model_ln(n, multiplicative_alpha_matrix(case, n, rho, field), field)
    bad = multiplicative_violations(g)
    if bad:
        raise InvariantViolation(f"family {case} is not multiplicative at pair {bad[0]}")
    if not check_hom_jacobi(g):
        raise InvariantViolation(f"family {case} violates the twisted Jacobi identity")
    return g


# ---------------------------------------------------------------------------
# literal coboundary against the circle form on the model cocycles
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class GateRow:
    n: int
    key: tuple
    literal_zero: bool
    circle_zero: bool
    # the standard coboundary is minus the circle form in degree 2
    agree: bool
    unsigned_zero: bool
    alt_sign_circle_zero: bool

    def as_dict(self) -> dict:
        return {"n": self.n, "psi": f"{self.key[0]},{self.key[1]}", "literal_zero": self.literal_zero,
                "circle_zero": self.circle_zero, "agree": self.agree,
                "unsigned_zero": self.unsigned_zero,
                "alt_sign_circle_zero": self.alt_sign_circle_zero}


def delta_gate(n: int, alpha=None, field: Field = QQ) -> list[GateRow]:
    """Compare both coboundary forms on every ``psi_{k,r}`` over the model algebra."""
    from .cohomology import coboundary, delta2_circle_form

    g = model_ln(n, alpha, field)
    rows = []
    for k, r in delta_index_set(n):
        psi = psi_cochain(n, k, r, field)
        lit = coboundary(g, psi)
        circ = delta2_circle_form(g, psi)
        alt = delta2_circle_form(g, psi_cochain(n, k, r, field, alt_sign=True))
        rows.append(GateRow(n, (k, r), lit.is_zero(), circ.is_zero(), lit == -circ,
                            coboundary(g, psi, "unsigned").is_zero(), alt.is_zero()))
    return rows
