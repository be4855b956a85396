"""Central and derived series, nilpotency, filiformity, ideals."""

from __future__ import annotations

from dataclasses import dataclass

from .algebra import HomAlgebra
from .exactlin import Subspace


@dataclass(frozen=True)
class SeriesReport:
    terms: tuple
    alpha_stable: tuple
    # "zero" if the last term is 0, "stable" if the series got stuck at a nonzero term
    termination: str

    @property
    def dims(self) -> tuple:
        return tuple(t.dim for t in self.terms)

    @property
    def all_alpha_stable(self) -> bool:
        return all(self.alpha_stable)

    def as_dict(self) -> dict:
        return {"dims": list(self.dims), "alpha_stable": list(self.alpha_stable),
                "termination": self.termination}


@dataclass(frozen=True)
class NilpotencyVerdict:
    nilpotent: bool
    nilindex: int | None
    reason: str


def bracket_span(g: HomAlgebra, a: Subspace, b: Subspace) -> Subspace:
    """Span of ``[u, v]`` over basis vectors ``u`` of ``a`` and ``v`` of ``b``."""
    return Subspace.span(g.field, g.dim, [g.bracket(u, v) for u in a.basis for v in b.basis])


def is_alpha_stable(g: HomAlgebra, s: Subspace) -> bool:
    return all(s.contains(g.twist(v)) for v in s.basis)


def _run(g: HomAlgebra, start: Subspace, step) -> SeriesReport:
    terms = [start]
    termination = "zero" if start.dim == 0 else "stable"
    for _ in range(g.dim + 1):
        if terms[-1].dim == 0:
            termination = "zero"
            break
        nxt = step(terms[-1])
        if nxt == terms[-1]:
            break
        terms.append(nxt)
    else:
        raise AssertionError("series failed to stabilize within dim + 1 steps")
    return SeriesReport(tuple(terms), tuple(is_alpha_stable(g, t) for t in terms), termination)


def full_space(g: HomAlgebra) -> Subspace:
    return Subspace.full(g.field, g.dim)


def central_series(g: HomAlgebra) -> SeriesReport:
    whole = full_space(g)
    return _run(g, whole, lambda c: bracket_span(g, whole, c))


def nilpotency(g: HomAlgebra) -> NilpotencyVerdict:
    rep = central_series(g)
    if rep.termination != "zero":
        return NilpotencyVerdict(False, None, f"central series stabilizes at dimension {rep.dims[-1]}")
    unstable = [m for m, ok in enumerate(rep.alpha_stable) if not ok]
    if unstable:
        return NilpotencyVerdict(False, None, f"C^{unstable[0]} is not stable under the twist map")
    return NilpotencyVerdict(True, len(rep.terms) - 1, "central series reaches zero")


def is_nilpotent(g: HomAlgebra) -> bool:
    return nilpotency(g).nilpotent


def nilindex(g: HomAlgebra) -> int | None:
    return nilpotency(g).nilindex


def is_filiform(g: HomAlgebra) -> bool:
    n = g.dim
    if not is_nilpotent(g):
        return False
    dims = central_series(g).dims
    # dims[k] must be n - k - 1 for 1 <= k <= n - 1; the series ends at the first zero term
    for k in range(1, n):
        have = dims[k] if k < len(dims) else 0
        if have != n - k - 1:
            return False
    return True


def is_ideal(g: HomAlgebra, ideal: Subspace) -> bool:
    if not is_alpha_stable(g, ideal):
        return False
    return all(ideal.contains(g.bracket(g.unit(i), v)) for i in range(g.dim) for v in ideal.basis)


def is_subalgebra(g: HomAlgebra, sub: Subspace) -> bool:
    if not is_alpha_stable(g, sub):
        return False
    b = sub.basis
    return all(sub.contains(g.bracket(b[i], b[j])) for i in range(len(b)) for j in range(i + 1, len(b)))


class NotAnIdealError(ValueError):
    pass


def derived_series(g: HomAlgebra, ideal: Subspace | None = None) -> SeriesReport:
    ideal = full_space(g) if ideal is None else ideal
    if not is_ideal(g, ideal):
        raise NotAnIdealError("derived series requested for a subspace that is not an ideal")
    return _run(g, ideal, lambda d: bracket_span(g, d, d))


def central_series_of_ideal(g: HomAlgebra, ideal: Subspace) -> SeriesReport:
    if not is_ideal(g, ideal):
        raise NotAnIdealError("central series requested for a subspace that is not an ideal")
    return _run(g, ideal, lambda c: bracket_span(g, ideal, c))


def is_solvable(g: HomAlgebra) -> bool:
    return derived_series(g).termination == "zero"
