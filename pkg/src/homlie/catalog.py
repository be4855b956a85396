"""Shipped example algebras and twist maps.

Algebra fixtures live next to this module as ``catalog/<name>.alg``; twist
map fixtures as ``catalog/<name>.map``. A path that does not exist on disk is
looked up in the catalog by its file name, so ``examples/example4.alg``
resolves to the shipped ``example4`` fixture.
"""

from __future__ import annotations

from importlib import resources
from pathlib import Path

from .algebra import HomAlgebra
from .exactlin import Field, Matrix
from .fileio import load_matrix, loads


class CatalogError(FileNotFoundError):
    pass


def _root():
    return resources.files(__package__).joinpath("catalog")


def names(kind: str = "alg") -> list[str]:
    return sorted(p.name[: -len(kind) - 1] for p in _root().iterdir() if p.name.endswith("." + kind))


def resolve(path, kind: str = "alg") -> Path:
    p = Path(path)
    if p.exists():
        return p
    stem = p.name[: -len(kind) - 1] if p.name.endswith("." + kind) else p.name
    cand = _root().joinpath(f"{stem}.{kind}")
    if cand.is_file():
        return Path(str(cand))
    raise CatalogError(f"no such file or catalog entry: {path}")


def load(name: str) -> HomAlgebra:
    return loads(resolve(name).read_text(encoding="utf-8"))


def load_map(name: str, field: Field) -> Matrix:
    return load_matrix(resolve(name, "map"), field)


def all_algebras() -> dict[str, HomAlgebra]:
    return {n: load(n) for n in names()}
