"""Canonical filiform representatives for dimensions 3 to 7.

Each entry pairs a deformation pattern (coefficients of the Vergne cocycles
on top of the model bracket) with a twist-map pattern: a lower triangular
grid of expressions in named parameters. Grids are written row by row as
displayed, so entry ``(i, j)`` is the coefficient of ``x_i`` in
``alpha(x_j)``. Parameter names: ``rhoXY`` for the displayed ``rho_{XY}``,
``C10``, ``C11``, ``C20`` for the three structure constants that appear in
the tables, ``beta`` for the free deformation weight, ``s5`` for a square
root of 5. Labels are copied as displayed, including repeated ones.
"""

from __future__ import annotations

import ast
import operator
import random
from dataclasses import dataclass, field as dc_field
from functools import lru_cache
from typing import Mapping

from .algebra import HomAlgebra, check_hom_jacobi, check_multiplicative
from .exactlin import QQ, Field, Matrix
from .filiform import PsiCoefficients, assemble
from .series import is_filiform


class RegistryError(ValueError):
    pass


class SideConditionError(RegistryError):
    pass


# ---------------------------------------------------------------------------
# expressions
# ---------------------------------------------------------------------------

_BIN = {ast.Add: operator.add, ast.Sub: operator.sub, ast.Mult: operator.mul, ast.Div: operator.truediv}


@lru_cache(maxsize=None)
def _parse(text: str) -> ast.AST:
    return ast.parse(text, mode="eval").body


def expr_names(text: str) -> set[str]:
    return {n.id for n in ast.walk(_parse(text)) if isinstance(n, ast.Name)}


def evaluate(text: str, env: Mapping, F: Field):
    """Exact value of a registry expression; division by zero raises ``ZeroDivisionError``."""

    def ev(node):
        if isinstance(node, ast.Constant) and isinstance(node.value, int):
            return F(node.value)
        if isinstance(node, ast.Name):
            if node.id not in env:
                raise RegistryError(f"parameter {node.id} not assigned")
            return F(env[node.id])
        if isinstance(node, ast.UnaryOp) and isinstance(node.op, (ast.USub, ast.UAdd)):
            v = ev(node.operand)
            return -v if isinstance(node.op, ast.USub) else v
        if isinstance(node, ast.BinOp) and isinstance(node.op, ast.Pow):
            if not (isinstance(node.right, ast.Constant) and isinstance(node.right.value, int)):
                raise RegistryError(f"non-integer exponent in {text!r}")
            return ev(node.left) ** node.right.value
        if isinstance(node, ast.BinOp) and type(node.op) in _BIN:
            a, b = ev(node.left), ev(node.right)
            if isinstance(node.op, ast.Div) and b == 0:
                raise ZeroDivisionError(f"zero denominator in {text!r}")
            return _BIN[type(node.op)](a, b)
        raise RegistryError(f"unsupported syntax in {text!r}")

    return ev(_parse(text))


# ---------------------------------------------------------------------------
# entries
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Representative:
    name: str
    dim: int
    psi: tuple            # ((k, r), expression) pairs
    grid: tuple           # rows of expressions
    multiplicative: bool = False
    variant: int = 0
    nonzero: tuple = ()   # expressions required to be nonzero
    source: str = ""

    def __post_init__(self):
        if len(self.grid) != self.dim or any(len(r) != self.dim for r in self.grid):
            raise RegistryError(f"{self.key}: grid is not {self.dim} x {self.dim}")
        for i, row in enumerate(self.grid):
            for j in range(i + 1, self.dim):
                if row[j] != "0":
                    raise RegistryError(f"{self.key}: entry ({i}, {j}) above the diagonal")

    @property
    def key(self) -> str:
        return f"{self.name}#{self.variant}" if self.multiplicative else self.name

    @property
    def n(self) -> int:
        return self.dim - 1

    @property
    def params(self) -> tuple[str, ...]:
        names = set()
        for row in self.grid:
            for cell in row:
                names |= expr_names(cell)
        for _, e in self.psi:
            names |= expr_names(e)
        for e in self.nonzero:
            names |= expr_names(e)
        return tuple(sorted(names))

    @property
    def psi_keys(self) -> tuple:
        return tuple(k for k, _ in self.psi)

    @property
    def needs_sqrt5(self) -> bool:
        return "s5" in self.params

    def pattern_text(self) -> str:
        if not self.psi:
            return "mu_0"
        parts = []
        for (k, r), e in self.psi:
            parts.append(f"psi_{k}{r}" if e == "1" else f"{e}*psi_{k}{r}")
        return "mu_0 + " + " + ".join(parts)


def _any_lt(dim: int) -> tuple:
    return tuple(tuple(f"rho{j}{i}" if j <= i else "0" for j in range(dim)) for i in range(dim))


def _rows(*rows: str, dim: int) -> tuple:
    out = []
    for r in rows:
        cells = [c.strip() for c in r.split(";")]
        cells += ["0"] * (dim - len(cells))
        out.append(tuple(cells))
    return tuple(out)


_LOWER7 = (
    "rho04; rho14; rho34; rho34; rho44",
    "rho05; rho15; rho35; rho35; rho45; rho55",
    "rho06; rho16; rho36; rho36; rho46; rho56; rho66",
)


def _plain() -> list[Representative]:
    T = "non-multiplicative table"
    R = Representative
    out = [
        R("mu_3^1", 3, (), _any_lt(3), source=f"{T}, dim 3"),
        R("mu_4^1", 4, (), _any_lt(4), source=f"{T}, dim 4"),
        R("mu_5^1", 5, (), _any_lt(5), source=f"{T}, dim 5"),
        R("mu_5^2", 5, (((1, 4), "1"),), _any_lt(5), source=f"{T}, dim 5"),
        R("mu_6^1", 6, (), _any_lt(6), source=f"{T}, dim 6"),
        R("mu_6^2", 6, (((1, 4), "1"), ((2, 5), "1")), _rows(
            "rho00",
            "rho01; rho11",
            "rho02; rho12; rho22",
            "rho03; rho13; rho00 - C11*rho01 - C10*rho11 - rho12; C11*rho11",
            "rho04; rho14; rho24; rho34; rho44",
            "rho05; rho15; rho25; rho35; rho45; rho55", dim=6), source=f"{T}, dim 6"),
        R("mu_6^3", 6, (((1, 4), "1"),), _rows(
            "rho00",
            "rho01; rho00/C10",
            "rho02; rho12; rho22",
            "rho03; rho13; rho23; rho33",
            "rho04; rho14; rho24; rho34; rho44",
            "rho05; rho15; rho25; rho35; rho45; rho55", dim=6), nonzero=("C10",), source=f"{T}, dim 6"),
        R("mu_6^4", 6, (((1, 5), "1"),), _any_lt(6), source=f"{T}, dim 6"),
        R("mu_7^1", 7, (), _any_lt(7), source=f"{T}, dim 7"),
        R("mu_7^2", 7, (((1, 4), "1"), ((2, 6), "beta")), _rows(
            "C10*rho11",
            "rho01; rho11",
            "rho02; rho12; rho22",
            "rho03; rho13; -(beta*C11 - C20)*rho01/beta - rho12; (beta*C11 - C20 + C10**2)*rho11/beta",
            "rho04; rho14; rho24; rho34; rho44",
            "rho05; rho15; rho25; rho35; rho45; rho55",
            "rho06; rho16; rho26; rho36; rho46; rho56; rho66", dim=7),
          nonzero=("beta",), source=f"{T}, dim 7"),
        R("mu_7^3", 7, (((2, 6), "1"),), _rows(
            "rho00",
            "rho01; rho11",
            "rho02; rho12; rho22",
            "rho03; rho13; rho23; C11*rho11",
            *_LOWER7, dim=7), source=f"{T}, dim 7"),
        R("mu_7^4", 7, (((1, 5), "1"), ((2, 6), "1")), _rows(
            "rho00",
            "rho01; rho11",
            "rho02; rho12; rho22",
            "rho03; rho13; rho00 + C11*rho11 - rho12; C11*rho11",
            *_LOWER7, dim=7), source=f"{T}, dim 7"),
        R("mu_7^5", 7, (((1, 5), "1"),), _rows(
            "C10*rho11",
            "rho01; rho11",
            "rho02; rho12; rho22",
            "rho03; rho13; rho23; rho33",
            *_LOWER7, dim=7), source=f"{T}, dim 7"),
        R("mu_7^6", 7, (((1, 6), "1"),), _any_lt(7), source=f"{T}, dim 7"),
        R("mu_7^7", 7, (((1, 4), "1"), ((1, 6), "1")), _rows(
            "0",
            "0",
            "rho02; rho12; rho22",
            "rho03; rho13; rho23; rho33",
            *_LOWER7, dim=7), source=f"{T}, dim 7"),
        R("mu_7^8", 7, (((1, 4), "1"),), _rows(
            "0",
            "0",
            "rho02; rho12; rho22",
            "rho03; rho13; rho23; rho33",
            *_LOWER7, dim=7), source=f"{T}, dim 7"),
    ]
    return out


def _conj5(rows: tuple) -> tuple:
    # the second root of 5 gives the companion family
    return tuple(tuple(c.replace("s5", "(-s5)") for c in r) for r in rows)


def _mult() -> list[Representative]:
    T = "multiplicative table"
    out: list[Representative] = []

    def add(name, dim, psi, grid, nonzero=()):
        v = 1 + sum(1 for r in out if r.name == name)
        out.append(Representative(name, dim, psi, grid, True, v, nonzero, f"{T}, dim {dim}"))

    add("mu_3^1", 3, (), _rows("rho00", "rho01; rho11", "rho02; rho12; rho00*rho11", dim=3))
    add("mu_3^1", 3, (), _rows("0", "rho01; rho11", "rho02; rho12; 0", dim=3))

    add("mu_4^1", 4, (), _rows(
        "rho00", "rho01; rho22/rho00", "rho02; rho12; rho22",
        "rho03; rho13; rho12*rho00; rho00*rho22", dim=4))
    add("mu_4^1", 4, (), _rows("0", "rho01; rho11", "rho02; rho12", "rho03; rho13", dim=4))

    add("mu_5^1", 5, (), _rows(
        "rho00", "rho01; rho22/rho00", "rho02; rho23/rho00; rho22",
        "rho03; rho13; rho23; rho00*rho22",
        "rho04; rho14; rho00*rho13; rho00*rho23; rho00**2*rho22", dim=5))
    add("mu_5^1", 5, (), _rows("0", "rho01; rho11", "rho02; rho12", "rho03; rho13", "rho04; rho14", dim=5))
    p14 = (((1, 4), "1"),)
    add("mu_5^2", 5, p14, _rows(
        "0", "rho01; rho11", "rho02; rho12", "rho03; rho13",
        "rho04; rho14; -rho11*rho02 + rho12*rho01", dim=5))
    add("mu_5^2", 5, p14, _rows(
        "rho00", "rho01; 0", "rho02; rho12", "rho03; rho13; rho00*rho12",
        "rho04; rho14; rho01*rho12 + rho00*rho13; rho00**2*rho12", dim=5))
    add("mu_5^2", 5, p14, _rows(
        "rho00", "rho01; rho00**2", "rho02; rho12; rho00**3",
        "rho03; rho13; rho00*rho12; rho00**4",
        "rho04; rho14; rho01*rho12 + rho00*rho13 - rho00**2*rho02; rho00**2*(rho00 + rho01 + rho12); rho00**5",
        dim=5))

    add("mu_6^1", 6, (), _rows(
        "rho00", "rho01; rho22/rho00", "rho02; rho23/rho00; rho22",
        "rho03; rho24/rho00; rho23; rho00*rho2",
        "rho04; rho14; rho24; rho23*rho00; rho22*rho00**2",
        "rho05; rho15; rho14*rho00; rho24*rho00; rho23*rho00**2; rho00**3*rho22", dim=6))
    add("mu_6^1", 6, (), _rows("0", "rho01; rho11", "rho02; rho12", "rho03; rho31", "rho04; rho14",
                               "rho05; rho15", dim=6))
    p1425 = (((1, 4), "1"), ((2, 5), "1"))
    add("mu_6^2", 6, p1425, _rows(
        "0", "rho01; rho11", "rho02; -C10*rho11", "rho03; rho13",
        "rho04; rho14; -rho11*(C10*rho01 + rho02)",
        "rho05; rho15; rho13*(C10*rho01 + rho02)", dim=6))
    golden = _rows(
        "-(1 + s5)/2",
        "rho01; rho11",
        "rho02; (3 + s5)/2",
        "rho03; rho13; -2 - s5",
        "rho04; rho14; ((3 + s5)*rho01 - (1 + s5)*rho31)/2; (7 + 3*s5)/2",
        "rho05; rho15; (-(3 + s5)*rho03 - 2*(C10*rho01 + rho02)*rho31 - (1 + s5)*rho14)/2; "
        "((3 + s5)*rho13 - (4 + 2*s5)*rho02 - (4 + 2*s5)*(C10 + 1)*rho01)/2", dim=6)
    add("mu_6^2", 6, p1425, golden)
    add("mu_6^2", 6, p1425, _conj5(golden))
    add("mu_6^3", 6, p14, _rows(
        "0", "rho01; 0", "rho02; rho12", "rho03; rho13",
        "rho04; rho14; rho01*rho12", "rho05; rho15; C10*rho01*rho13", dim=6))
    add("mu_6^3", 6, p14, _rows(
        "1/C10",
        "rho01; 1/C10**2",
        "((1 + C10)*rho01**2 + (C10**2 - C10**3)*rho24 + C10*rho01**2 + C10**2*rho01**2 - rho13*C10)/(-1 + C10);"
        " (1 + C10)*rho01/((-1 + C10)*C10); 1/C10**3",
        "rho03; rho13; (1 + C10)*rho01/((-1 + C10)*C10**2); 1/C10**4",
        "rho04; rho14; rho24; 2*rho01/((-1 + C10)*C10**2); 1/C10**5",
        "rho05; rho15; (-rho03 + rho14 + rho13*rho01*C10**2)/C10;"
        " ((1 + C10)*rho01**2 + (-1 + C10)*rho24)/((-1 + C10)*C10);"
        " (1 + C10)*rho01/((-1 + C10)*C10**2); 1/C10**6", dim=6), nonzero=("C10", "C10 - 1"))
    p15 = (((1, 5), "1"),)
    add("mu_6^4", 6, p15, _rows(
        "rho00", "rho01; 0", "rho02; rho23", "rho03; rho24/rho00; rho00*rho12",
        "rho04; rho14; rho24; rho12*rho00**2",
        "rho05; rho15; rho12*rho01 + rho14*rho00; rho24*rho00; rho12*rho00**3", dim=6))
    add("mu_6^4", 6, p15, _rows(
        "0", "rho01; rho11", "rho02; rho12", "rho03; rho31", "rho04; rho14",
        "rho05; rho15; -rho11*rho02 + rho01*rho12", dim=6))
    add("mu_6^4", 6, p15, _rows(
        "rho00", "rho01; rho00**3", "rho02; rho12; rho00**4",
        "rho03; rho24/rho00; rho00*rho12; rho00**5",
        "rho04; rho14; rho24; rho00**2*rho12; rho00**6",
        "rho05; rho15; -rho00**3*rho02 + rho14*rho00 + rho01*rho12; rho00*(rho00**3*rho01 + rho24);"
        " rho00**3*rho12; rho00**7", dim=6))
    add("mu_6^4", 6, p15, _rows(
        "rho00", "rho01; rho00**3", "rho02; rho12; rho00**4",
        "rho03; rho24/rho00; rho00*rho12; rho00**5",
        "rho04; rho14; 0; rho00**2*rho12; rho00**6",
        "rho05; rho15; -rho00**3*rho02 + rho14*rho00 + rho01*rho12; rho00**4*rho01; rho00**3*rho12; rho00**7",
        dim=6))
    add("mu_6^4", 6, p15, _rows(
        "rho00", "rho01; 0", "rho02; rho12", "rho03; 0; rho00*rho12",
        "rho04; rho14; 0; rho00**2*rho12",
        "rho05; rho15; rho14*rho00 + rho01*rho12; 0; rho00**3*rho12", dim=6))
    return out


_PLAIN = tuple(_plain())
_MULT = tuple(_mult())


def registry(dim: int, multiplicative: bool = False) -> list[Representative]:
    if dim not in range(3, 8):
        raise RegistryError(f"the tables cover dimensions 3 to 7, not {dim}")
    if multiplicative:
        if dim == 7:
            raise RegistryError("multiplicative families in dimension 7 are not provided by the source tables")
        return [r for r in _MULT if r.dim == dim]
    return [r for r in _PLAIN if r.dim == dim]


def all_entries() -> list[Representative]:
    return list(_PLAIN) + list(_MULT)


def lookup(key: str) -> Representative:
    for r in all_entries():
        if r.key == key:
            return r
    raise RegistryError(f"no registry entry {key!r}")


# ---------------------------------------------------------------------------
# instantiation
# ---------------------------------------------------------------------------

def twist_matrix(rep: Representative, params: Mapping, F: Field = QQ) -> Matrix:
    return Matrix.of(F, [[evaluate(c, params, F) for c in row] for row in rep.grid])


def psi_coefficients(rep: Representative, params: Mapping, F: Field = QQ) -> PsiCoefficients:
    return PsiCoefficients(rep.n, {k: evaluate(e, params, F) for k, e in rep.psi})


def instantiate(rep: Representative, params: Mapping, F: Field = QQ) -> HomAlgebra:
    missing = [p for p in rep.params if p not in params]
    if missing:
        raise RegistryError(f"{rep.key}: missing parameters {', '.join(missing)}")
    if rep.needs_sqrt5:
        s = F(params["s5"])
        if s * s != F(5):
            raise SideConditionError(f"{rep.key}: s5 must square to 5")
    for e in rep.nonzero:
        if evaluate(e, params, F) == 0:
            raise SideConditionError(f"{rep.key}: side condition {e} != 0 violated")
    return assemble(rep.n, psi_coefficients(rep, params, F), twist_matrix(rep, params, F), F)


def sqrt5(F: Field):
    """A square root of 5 in ``F``, or ``None``."""
    if F.is_rational:
        return None
    for x in F.elements():
        if x * x == F(5):
            return x
    return None


def sample_params(rep: Representative, rng: random.Random, F: Field = QQ, bound: int = 6) -> dict:
    out = {}
    for p in rep.params:
        if p == "s5":
            out[p] = sqrt5(F)
        elif p == "beta":
            out[p] = F.random(rng, bound, nonzero=True)
        else:
            out[p] = F.random(rng, bound)
    return out


def sample_instance(rep: Representative, rng: random.Random, F: Field = QQ, tries: int = 50):
    """Random admissible parameters and the instantiated algebra."""
    for _ in range(tries):
        params = sample_params(rep, rng, F)
        try:
            return params, instantiate(rep, params, F)
        except (ZeroDivisionError, SideConditionError):
            continue
    raise RegistryError(f"{rep.key}: no admissible sample in {tries} tries")


# ---------------------------------------------------------------------------
# identity admission
# ---------------------------------------------------------------------------

@lru_cache(maxsize=None)
def identity_params(key: str) -> dict | None:
    """Rational parameters making the twist pattern the identity, or ``None``.

    Candidates come from solving the polynomial system with sympy; every
    candidate is re-checked with exact evaluation before it is returned.
    """
    import sympy

    rep = lookup(key)
    if any(rep.grid[i][i] == "0" for i in range(rep.dim)):
        return None
    syms = {p: sympy.Symbol(p) for p in rep.params}
    eqs = []
    for i, row in enumerate(rep.grid):
        for j in range(i + 1):
            eqs.append(sympy.sympify(row[j], locals=syms) - (1 if i == j else 0))
    if rep.needs_sqrt5:
        eqs.append(syms["s5"] ** 2 - 5)
    eqs = [e for e in eqs if e != 0]
    unknowns = sorted({s for e in eqs for s in e.free_symbols}, key=str)
    sols = sympy.solve(eqs, unknowns, dict=True) if eqs else [{}]
    for sol in sols:
        for fill in range(1, 6):
            env = {}
            for p, s in syms.items():
                v = sol.get(s, s)
                v = sympy.sympify(v).subs({t: fill for t in sympy.sympify(v).free_symbols})
                env[p] = v
            try:
                vals = {p: QQ(_to_fraction(v)) for p, v in env.items()}
            except ValueError:
                break
            try:
                if instantiate(rep, vals, QQ).alpha.is_identity():
                    return vals
            except (ZeroDivisionError, SideConditionError):
                continue
    return None


def _to_fraction(v):
    import sympy
    from fractions import Fraction

    v = sympy.nsimplify(v)
    if not v.is_Rational:
        raise ValueError("irrational")
    return Fraction(int(v.p), int(v.q))


# ---------------------------------------------------------------------------
# audit
# ---------------------------------------------------------------------------

@dataclass
class AuditRow:
    key: str
    check: str
    passed: int
    total: int
    skipped: int
    example: dict | None = None

    @property
    def status(self) -> str:
        return "PASS" if self.passed == self.total else "FAIL"

    def as_dict(self) -> dict:
        d = {"entry": self.key, "check": self.check, "passed": self.passed, "total": self.total,
             "skipped": self.skipped, "status": self.status}
        if self.example is not None:
            d["failing_sample"] = self.example
        return d


@dataclass
class AuditReport:
    rows: list = dc_field(default_factory=list)
    identity: list = dc_field(default_factory=list)
    findings: list = dc_field(default_factory=list)

    @property
    def complete(self) -> bool:
        return all(r.total > 0 for r in self.rows)

    def as_dict(self) -> dict:
        return {"rows": [r.as_dict() for r in self.rows], "identity": self.identity,
                "findings": self.findings,
                "summary": {"rows": len(self.rows), "pass": sum(r.status == "PASS" for r in self.rows),
                            "fail": sum(r.status == "FAIL" for r in self.rows), "findings": len(self.findings)}}


def audit_field(rep: Representative) -> Field:
    # 5 is a square modulo 1009, so the square-root families can be sampled there
    from .exactlin import GF

    return GF(1009) if rep.needs_sqrt5 else QQ


def verify_representative(rep: Representative, params: Mapping, F: Field = QQ) -> dict:
    g = instantiate(rep, params, F)
    out = {"hom_jacobi": check_hom_jacobi(g), "filiform": is_filiform(g)}
    if rep.multiplicative:
        out["multiplicative"] = check_multiplicative(g)
    return out


def _render_params(params: Mapping, F: Field) -> dict:
    return {k: F.render(v) for k, v in sorted(params.items())}


def audit(dims=range(3, 8), samples: int = 100, seed: int = 0, multiplicative: bool = True) -> AuditReport:
    rep_list = []
    for d in dims:
        rep_list += registry(d)
        if multiplicative and d != 7:
            rep_list += registry(d, True)
    report = AuditReport()
    for rep in rep_list:
        F = audit_field(rep)
        rng = random.Random(f"{seed}:{rep.key}")
        checks = ["hom_jacobi", "filiform"] + (["multiplicative"] if rep.multiplicative else [])
        rows = {c: AuditRow(rep.key, c, 0, 0, 0) for c in checks}
        skipped = 0
        while rows[checks[0]].total < samples and skipped < 20 * samples:
            params = sample_params(rep, rng, F)
            try:
                verdict = verify_representative(rep, params, F)
            except (ZeroDivisionError, SideConditionError):
                skipped += 1
                continue
            for c in checks:
                row = rows[c]
                row.total += 1
                if verdict[c]:
                    row.passed += 1
                elif row.example is None:
                    row.example = {"field": F.tag, "params": _render_params(params, F)}
        for c in checks:
            rows[c].skipped = skipped
            report.rows.append(rows[c])
            if rows[c].status == "FAIL":
                report.findings.append({
                    "entry": rep.key, "check": c, "source": rep.source,
                    "failed": rows[c].total - rows[c].passed, "total": rows[c].total,
                    "sample": rows[c].example,
                })
        ident = identity_params(rep.key)
        entry = {"entry": rep.key, "admits_identity": ident is not None}
        if ident is not None:
            v = verify_representative(rep, ident, QQ)
            entry["params"] = _render_params(ident, QQ)
            entry.update({f"identity_{k}": b for k, b in v.items()})
            if not all(v.values()):
                report.findings.append({"entry": rep.key, "check": "identity", "source": rep.source,
                                        "sample": {"field": "Q", "params": entry["params"]}})
        report.identity.append(entry)
    return report
