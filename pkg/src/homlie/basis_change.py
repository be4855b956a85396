"""Adapted basis changes of deformed model brackets.

An adapted change is fixed by the images ``a = f(x_0)`` and ``b = f(x_1)``;
the remaining images follow from ``f(x_i) = [f(x_0), f(x_{i-1})]`` computed
with the bracket of the algebra being transformed. Sequences of changes are
always listed in application order: the first element acts first.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping, Sequence, Union

from .algebra import HomAlgebra, change_basis
from .exactlin import Field, Matrix, NotInvertibleError, inverse
from .filiform import PsiCoefficients, delta_index_set, mu0_cochain, psi_cochain
from .cohomology import Cochain


class ChangeError(ValueError):
    pass


class NotNormalFormError(ValueError):
    pass


@dataclass(frozen=True)
class Sigma:
    """``x_1 -> x_1 + b x_k`` with ``2 <= k <= n``."""
    b: object
    k: int

    def label(self, F: Field) -> str:
        return f"sigma({F.render(self.b)},{self.k})"


@dataclass(frozen=True)
class Tau:
    """``x_0 -> x_0 + a x_k`` with ``1 <= k <= n``."""
    a: object
    k: int

    def label(self, F: Field) -> str:
        return f"tau({F.render(self.a)},{self.k})"


@dataclass(frozen=True)
class Nu:
    """``x_0 -> a x_0``, ``x_1 -> b x_1`` with ``a, b`` nonzero."""
    a: object
    b: object

    def label(self, F: Field) -> str:
        return f"nu({F.render(self.a)},{F.render(self.b)})"


@dataclass(frozen=True)
class General:
    a: tuple
    b: tuple

    def label(self, F: Field) -> str:
        return ("general(" + ",".join(F.render(x) for x in self.a) + ";"
                + ",".join(F.render(x) for x in self.b) + ")")


Elementary = Union[Sigma, Tau, Nu]
AdaptedChange = Union[Sigma, Tau, Nu, General]


def images(change: AdaptedChange, dim: int, F: Field) -> tuple[tuple, tuple]:
    """Images of ``x_0`` and ``x_1`` with the parameter ranges validated."""
    n = dim - 1
    e = lambda i, c=1: tuple(F(c) if j == i else F.zero for j in range(dim))
    if isinstance(change, Sigma):
        if not 2 <= change.k <= n:
            raise ChangeError(f"sigma needs 2 <= k <= {n}, got {change.k}")
        b = list(e(1))
        b[change.k] = b[change.k] + F(change.b)
        return e(0), tuple(b)
    if isinstance(change, Tau):
        if not 1 <= change.k <= n:
            raise ChangeError(f"tau needs 1 <= k <= {n}, got {change.k}")
        a = list(e(0))
        a[change.k] = a[change.k] + F(change.a)
        return tuple(a), e(1)
    if isinstance(change, Nu):
        if F(change.a) == 0 or F(change.b) == 0:
            raise ChangeError("nu needs nonzero parameters")
        return e(0, change.a), e(1, change.b)
    if isinstance(change, General):
        a = tuple(F(x) for x in change.a)
        b = tuple(F(x) for x in change.b)
        if len(a) != dim or len(b) != dim:
            raise ChangeError(f"general change vectors must have length {dim}")
        if b[0] != 0:
            raise ChangeError("general change needs b_0 = 0")
        if a[0] * b[1] == 0:
            raise ChangeError("general change needs a_0 b_1 != 0")
        return a, b
    raise ChangeError(f"unknown change {change!r}")


def realize(change: AdaptedChange, g: HomAlgebra) -> Matrix:
    """Full change matrix (column ``i`` is ``f(x_i)``) via the bracket recursion."""
    a, b = images(change, g.dim, g.field)
    cols = [a, b]
    for _ in range(2, g.dim):
        cols.append(g.bracket(a, cols[-1]))
    f = Matrix.from_columns(g.field, cols[:g.dim])
    try:
        inverse(f)
    except NotInvertibleError as e:
        raise ChangeError(f"change matrix is singular (rank {e.rank}) for this bracket") from None
    return f


def apply_change(change: AdaptedChange, g: HomAlgebra) -> HomAlgebra:
    return change_basis(g, realize(change, g))


def apply_sequence(changes: Sequence[AdaptedChange], g: HomAlgebra) -> tuple[HomAlgebra, Matrix]:
    """Apply in order; returns the final algebra and the total change matrix."""
    total = Matrix.identity(g.field, g.dim)
    h = g
    for c in changes:
        f = realize(c, h)
        h = change_basis(h, f)
        total = total @ f
    return h, total


def inverse_change(change: AdaptedChange, g: HomAlgebra) -> General:
    """The change taking ``apply_change(change, g)`` back to ``g``."""
    finv = inverse(realize(change, g))
    return General(finv.column(0), finv.column(1))


# ---------------------------------------------------------------------------
# coefficients of deformed brackets
# ---------------------------------------------------------------------------

def _psi_system(n: int, F: Field):
    keys = delta_index_set(n)
    cols = [psi_cochain(n, k, r, F).coords() for k, r in keys]
    return keys, cols


def extract_psi_coefficients(g: HomAlgebra) -> PsiCoefficients:
    """Coefficients ``a_{k,r}`` with ``g = mu_0 + sum a_{k,r} psi_{k,r}``."""
    n = g.dim - 1
    if n < 2:
        raise NotNormalFormError("dimension must be at least 3")
    F = g.field
    diff = Cochain.from_bracket(g) - mu0_cochain(n, F)
    keys, cols = _psi_system(n, F)
    target = diff.coords()
    if not cols:
        if diff.is_zero():
            return PsiCoefficients(n, {})
        s, v = diff.support()[0]
        raise NotNormalFormError(f"bracket [x_{s[0]}, x_{s[1]}] differs from the model and no cocycles exist")
    sol = Matrix.from_columns(F, cols).solve(target)
    if sol is None:
        pairs = Cochain.tuples(g.dim, 2)
        dim = g.dim
        bad = None
        for idx, (s, v) in enumerate(zip(pairs, diff.values)):
            if any(x != 0 for x in v):
                used = any(any(c[idx * dim + k] != 0 for k in range(dim)) for c in cols)
                if not used:
                    bad = s
                    break
        where = f"[x_{bad[0]}, x_{bad[1]}]" if bad else "the cocycle-supported entries"
        raise NotNormalFormError(f"not in deformed normal form: {where} is not a combination of the cocycles")
    return PsiCoefficients(n, {k: v for k, v in zip(keys, sol) if v != 0})


def is_adapted(g: HomAlgebra) -> bool:
    if not g.alpha.is_lower_triangular():
        return False
    try:
        extract_psi_coefficients(g)
    except NotNormalFormError:
        return False
    return True


# ---------------------------------------------------------------------------
# closed-form coefficient laws
# ---------------------------------------------------------------------------

class LawError(ValueError):
    pass


def nu_law(coeffs: PsiCoefficients, a, b, F: Field) -> PsiCoefficients:
    a, b = F(a), F(b)
    return PsiCoefficients(coeffs.n, {(k, m): b * F(v) / a ** (m - 2 * k)
                                      for (k, m), v in coeffs.nonzero().items()})


def _need(c_params: Mapping, names, F: Field) -> dict:
    out = {}
    for name in names:
        if name not in c_params:
            raise LawError(f"missing parameter {name}")
        out[name] = F(c_params[name])
    return out


def coefficient_law(change: Elementary, coeffs: PsiCoefficients, c_params: Mapping, F: Field) -> PsiCoefficients:
    """New coefficients from the closed-form transformation laws.

    ``c_params`` supplies the named constants ``C10``, ``C11``, ``C20``.
    Supported: ``nu`` for every ``n``; ``sigma(b, 2|3)`` and ``tau(a, 1|2)``
    for ``n`` in ``{5, 6}``.
    """
    if isinstance(change, Nu):
        return nu_law(coeffs, change.a, change.b, F)
    n = coeffs.n
    A = lambda k, r: F(coeffs.get(k, r, 0))
    out = {key: A(*key) for key in delta_index_set(n)}
    a14, a15 = A(1, 4), A(1, 5)
    if n == 5:
        a25 = A(2, 5)
        if isinstance(change, Sigma) and change.k == 2:
            C = _need(c_params, ["C10"], F)
            b = F(change.b)
            out[(1, 5)] = a15 + b * b * a25 + b * (C["C10"] - 1) * a14
        elif isinstance(change, Sigma) and change.k == 3:
            C = _need(c_params, ["C11"], F)
            b = F(change.b)
            out[(1, 5)] = a15 - b * a25 * (1 + C["C11"])
        elif isinstance(change, Tau) and change.k == 1:
            C = _need(c_params, ["C10", "C11"], F)
            a = F(change.a)
            out[(1, 5)] = a15 - a * a14 * a14 * (1 + C["C10"]) + a * a * a14 * a14 * a25 * C["C11"]
            den = 1 - a * a25 * C["C11"]
            if den == 0:
                raise LawError("singular parameter choice: 1 - a a25 C11 = 0")
            out[(2, 5)] = a25 / den
        elif isinstance(change, Tau) and change.k == 2:
            C = _need(c_params, ["C11"], F)
            a = F(change.a)
            out[(1, 5)] = a15 + a * a14 * a25 * C["C11"] - a * a14 * a25
        else:
            raise LawError(f"no closed-form law for {change!r} at n = 5")
    elif n == 6:
        a16, a26 = A(1, 6), A(2, 6)
        if isinstance(change, Sigma) and change.k == 2:
            C = _need(c_params, ["C10"], F)
            b, c10 = F(change.b), C["C10"]
            out[(1, 5)] = a15 + b * a14 * (c10 - 1)
            out[(1, 6)] = (a14 * b * b + a16 + b * a15 * c10 + b * b * a26 - b * a15
                           - b * b * a14 * c10)
        elif isinstance(change, Sigma) and change.k == 3:
            C = _need(c_params, ["C11"], F)
            b = F(change.b)
            out[(1, 6)] = -b * a14 + a16 - b * a26 * (1 + C["C11"])
        elif isinstance(change, Tau) and change.k == 1:
            C = _need(c_params, ["C10", "C11", "C20"], F)
            a, c10, c11, c20 = F(change.a), C["C10"], C["C11"], C["C20"]
            out[(1, 5)] = a15 - a * a14 * a14 * (1 + c10)
            out[(1, 6)] = (a16
                           + a14 * a14 * a * (c10 + 1) * ((c10 + 1) * a14 * a14 * c20 - a26 * c11)
                           - a14 * a * ((c10 + 1) * a15 + a * c20 * a14 * a14 - a * a14 * a26 * c11)
                           - a * a15 * ((c10 + 1) * a14 + a14 * c20 - a26 * c11))
        elif isinstance(change, Tau) and change.k == 2:
            C = _need(c_params, ["C11", "C20"], F)
            a = F(change.a)
            out[(1, 6)] = (a16 + a * a14 * (1 + a26 * C["C11"]) - a * a14 * a14 * C["C20"]
                           - a * a14 * a26)
        else:
            raise LawError(f"no closed-form law for {change!r} at n = 6")
    else:
        raise LawError(f"closed-form laws exist for n in {{5, 6}} only, got n = {n}")
    return PsiCoefficients(n, {k: v for k, v in out.items() if v != 0})


@dataclass(frozen=True)
class LawReport:
    change: str
    n: int
    law: dict | None
    conjugation: dict | None
    mismatches: tuple
    notes: tuple

    @property
    def match(self) -> bool:
        return self.law is not None and self.conjugation is not None and not self.mismatches

    def as_dict(self) -> dict:
        return {"change": self.change, "n": self.n, "law": self.law, "conjugation": self.conjugation,
                "match": self.match, "mismatches": list(self.mismatches), "notes": list(self.notes)}


def law_vs_conjugation(change: Elementary, coeffs: PsiCoefficients, alpha, c_params: Mapping,
                       F: Field) -> LawReport:
    """Closed-form law against the conjugation of the assembled algebra."""
    from .filiform import assemble

    n = coeffs.n
    notes = []
    try:
        law = coefficient_law(change, coeffs, c_params, F)
        law_d = law.render(F)
    except LawError as e:
        law, law_d = None, None
        notes.append(f"law: {e}")
    g = assemble(n, coeffs, alpha, F)
    try:
        h = apply_change(change, g)
        conj = extract_psi_coefficients(h)
        conj_d = conj.render(F)
        if not h.alpha.is_lower_triangular():
            notes.append("conjugated twist map is not lower triangular")
    except (ChangeError, NotNormalFormError) as e:
        conj, conj_d = None, None
        notes.append(f"conjugation: {e}")
    mism = []
    if law is not None and conj is not None:
        for key in delta_index_set(n):
            lv, cv = F(law.get(*key)), F(conj.get(*key))
            if lv != cv:
                mism.append({"coefficient": f"{key[0]},{key[1]}", "law": F.render(lv), "conjugation": F.render(cv)})
    return LawReport(change.label(F), n, law_d, conj_d, tuple(mism), tuple(notes))


# ---------------------------------------------------------------------------
# factorization into elementary changes
# ---------------------------------------------------------------------------

def decompose(change: General, g: HomAlgebra) -> list[Elementary]:
    """Elementary factors, in application order, whose composite equals ``change``.

    The list is ``nu(a_0, b_1)``, then ``tau(., k)`` for ascending ``k``,
    then ``sigma(., k)`` for ascending ``k``; each parameter is read off
    after re-expressing the targets in the current basis. The composite is
    checked against :func:`realize` before returning.
    """
    F = g.field
    a, b = images(change, g.dim, F)
    target = realize(change, g)
    seq: list[Elementary] = [Nu(a[0], b[1])]
    h, total = apply_sequence(seq, g)

    def coords(v):
        return inverse(total).apply(v)

    for k in range(1, g.dim):
        t = coords(a)[k]
        if t != 0:
            seq.append(Tau(t, k))
            h, total = apply_sequence(seq, g)
    for k in range(2, g.dim):
        s = coords(b)[k]
        if s != 0:
            seq.append(Sigma(s, k))
            h, total = apply_sequence(seq, g)
    if total != target:
        raise ChangeError("elementary factorization failed to reproduce the change")
    return seq


def closed_form_factors(change: General, F: Field) -> list[Elementary]:
    """The closed-form factor list with ``b_1`` as the sigma divisor.

    Listed left to right as written: ``nu(a_0, b_1), tau(a_n/a_0, n), ...,
    tau(a_1/a_0, 1), sigma(b_n/b_1, n), ..., sigma(b_2/b_1, 2)``; identity
    factors are dropped.
    """
    a = [F(x) for x in change.a]
    b = [F(x) for x in change.b]
    n = len(a) - 1
    out: list[Elementary] = [Nu(a[0], b[1])]
    out += [Tau(a[k] / a[0], k) for k in range(n, 0, -1) if a[k] != 0]
    out += [Sigma(b[k] / b[1], k) for k in range(n, 1, -1) if b[k] != 0]
    return out


def closed_form_factors_check(change: General, g: HomAlgebra) -> dict:
    """Whether the closed-form list reproduces the change, read in either order."""
    F = g.field
    target = realize(change, g)
    facs = closed_form_factors(change, F)
    res = {"factors": [f.label(F) for f in facs]}
    for name, order in (("left_to_right", facs), ("right_to_left", list(reversed(facs)))):
        try:
            _, total = apply_sequence(order, g)
            res[name] = total == target
        except ChangeError:
            res[name] = False
    return res


# ---------------------------------------------------------------------------
# textual change specs
# ---------------------------------------------------------------------------

def parse_change(text: str, F: Field) -> AdaptedChange:
    """``sigma:b,k`` | ``tau:a,k`` | ``nu:a,b`` | ``general:a0,...,an;b0,...,bn``."""
    try:
        kind, _, rest = text.partition(":")
        if kind == "sigma":
            b, k = rest.split(",")
            return Sigma(F.parse(b), int(k))
        if kind == "tau":
            a, k = rest.split(",")
            return Tau(F.parse(a), int(k))
        if kind == "nu":
            a, b = rest.split(",")
            return Nu(F.parse(a), F.parse(b))
        if kind == "general":
            av, bv = rest.split(";")
            return General(tuple(F.parse(x) for x in av.split(",")), tuple(F.parse(x) for x in bv.split(",")))
    except ValueError as e:
        raise ChangeError(f"bad change spec {text!r}: {e}") from None
    raise ChangeError(f"unknown change kind in {text!r}")
