"""New Hom-Lie algebras from old ones through (weak) morphisms."""

from __future__ import annotations

from .algebra import (
    HomAlgebra,
    InvariantViolation,
    bracket_morphism_violations,
    check_hom_jacobi,
    check_multiplicative,
    compose_bracket,
    is_lie,
    multiplicative_violations,
)
from .exactlin import Matrix, NotInvertibleError, inverse


class TwistError(ValueError):
    pass


def _require_bracket_morphism(f: Matrix, g: HomAlgebra, what: str):
    bad = bracket_morphism_violations(f, g, g)
    if bad:
        i, j = bad[0]
        raise TwistError(f"{what} is not a bracket morphism: fails on the pair (x_{i}, x_{j})")


def _checked(h: HomAlgebra, what: str) -> HomAlgebra:
    if not check_hom_jacobi(h):
        raise InvariantViolation(f"{what} produced an algebra violating the twisted Jacobi identity")
    return h


def yau_twist(g: HomAlgebra, alpha: Matrix) -> HomAlgebra:
    """``[x, y]_a = [a x, a y]`` with twist ``a``, for a Lie bracket and a bracket morphism ``a``."""
    if not is_lie(g):
        raise TwistError("input bracket does not satisfy the Jacobi identity")
    _require_bracket_morphism(alpha, g, "twist map")
    cols = alpha.columns()
    table = tuple(tuple(g.bracket(cols[i], cols[j]) for j in range(g.dim)) for i in range(g.dim))
    return _checked(HomAlgebra(g.field, g.dim, table, alpha, g.labels), "Yau twist")


def beta_twist(g: HomAlgebra, beta: Matrix) -> HomAlgebra:
    """``(g, beta o [.,.], beta alpha)`` for a weak morphism ``beta``."""
    _require_bracket_morphism(beta, g, "beta")
    return _checked(compose_bracket(g, beta, beta @ g.alpha), "beta twist")


def nth_derived(g: HomAlgebra, n: int) -> HomAlgebra:
    """``(g, alpha^n o [.,.], alpha^(n+1))`` for multiplicative ``g``."""
    if n < 0:
        raise TwistError("derived order must be non-negative")
    bad = multiplicative_violations(g)
    if bad:
        raise TwistError(f"algebra is not multiplicative: fails on the pair (x_{bad[0][0]}, x_{bad[0][1]})")
    an = g.alpha ** n
    return _checked(compose_bracket(g, an, an @ g.alpha), f"derived algebra of order {n}")


def untwist(g: HomAlgebra) -> HomAlgebra:
    """``alpha^{-1} o [.,.]`` with identity twist; needs an invertible multiplicative twist."""
    try:
        ainv = inverse(g.alpha)
    except NotInvertibleError as e:
        raise TwistError(f"twist map is singular (rank {e.rank})") from None
    if not check_multiplicative(g):
        raise TwistError("twist map is not multiplicative")
    h = compose_bracket(g, ainv, Matrix.identity(g.field, g.dim))
    if not is_lie(h):
        raise InvariantViolation("untwisted bracket fails the Jacobi identity")
    return h


def parse_variant(text: str) -> tuple[str, int]:
    """``yau`` | ``beta`` | ``derived:n`` | ``untwist``."""
    if text in ("yau", "beta", "untwist"):
        return text, 0
    if text.startswith("derived:"):
        try:
            n = int(text.split(":", 1)[1])
        except ValueError:
            raise TwistError(f"bad derived order in {text!r}") from None
        if n < 0:
            raise TwistError("derived order must be non-negative")
        return "derived", n
    raise TwistError(f"unknown twist variant {text!r}")
