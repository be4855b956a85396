"""Regenerate the shipped fixture catalog under src/homlie/catalog/.

Every fixture is verified before it is written: algebras must satisfy the
twisted Jacobi identity, twist maps must be bracket morphisms of their base.
"""

import argparse
import json
from fractions import Fraction
from pathlib import Path

from homlie.algebra import HomAlgebra, change_basis, check_hom_jacobi, is_morphism, bracket_morphism_violations
from homlie.exactlin import QQ, Matrix
from homlie.fileio import dumps
from homlie.filiform import model_ln
from homlie.registry import identity_params, instantiate, lookup

OUT = Path(__file__).resolve().parents[1] / "src" / "homlie" / "catalog"
X3 = ["x1", "x2", "x3"]
X4 = ["x1", "x2", "x3", "x4"]


def q_sl2(q):
    q = Fraction(q)
    return HomAlgebra.from_brackets(QQ, 3, {(0, 1): {1: -2 * q}, (0, 2): {2: 2}, (1, 2): {0: -(1 + q) / 2}},
                                    [[q, 0, 0], [0, q * q, 0], [0, 0, q]], X3)


def sl2():
    return HomAlgebra.from_brackets(QQ, 3, {(0, 1): {1: -2}, (0, 2): {2: 2}, (1, 2): {0: -1}},
                                    None, ["H", "E", "F"])


def example4(a, b, c, d):
    return HomAlgebra.from_brackets(QQ, 3, {(0, 1): {0: a, 2: b}, (0, 2): {1: c}, (1, 2): {0: d, 2: 2 * a}},
                                    [[1, 0, 0], [0, 2, 0], [0, 0, 2]], X3)


def heisenberg(a11, a12, a21, a22, a31, a32):
    det = a11 * a22 - a12 * a21
    return HomAlgebra.from_brackets(QQ, 3, {(0, 1): {2: det}},
                                    [[a11, a12, 0], [a21, a22, 0], [a31, a32, det]], X3)


def filiform4():
    return HomAlgebra.from_brackets(QQ, 4, {(0, 3): {2: 1}, (0, 2): {1: 1}}, None, X4)


def morphism_from_rows(rows):
    # rows[i][k] is the coefficient of x_k in the image of x_i
    n = len(rows)
    return Matrix.of(QQ, [[rows[j][i] for j in range(n)] for i in range(n)])


def disguise(g):
    f = Matrix.of(QQ, [[1, 0, 1, 0, 0], [0, 1, 0, 2, 0], [1, 0, 2, 0, 0], [0, 0, 0, 1, 1], [0, 1, 0, 0, 1]])
    return change_basis(g, f)


def fixtures():
    algs = {
        "sl2": sl2(),
        "example3": q_sl2(2),
        "example4": example4(1, 1, 1, 2),
        "example5": heisenberg(2, 1, 1, 3, 4, 7),
        "example14": heisenberg(2, 0, 1, 3, 4, 7),
        "example32": filiform4(),
        "abelian3": HomAlgebra.from_brackets(QQ, 3, {}, [[1, 0, 0], [2, 3, 0], [0, 1, 1]]),
    }
    for n in range(2, 7):
        algs[f"model_l{n}"] = model_ln(n)
    mu52 = lookup("mu_5^2")
    algs["mu52"] = instantiate(mu52, identity_params(mu52.key))
    algs["mu52_disguised"] = disguise(algs["mu52"])
    maps = {
        # nilpotent but not filiform after twisting
        "example32_a": ("example32", morphism_from_rows(
            [[0, 1, 2, 1], [0, 0, 0, 0], [0, 0, 0, 0], [0, 3, 1, 2]])),
        # automorphism: a11 = 2, a33 = 3
        "example32_b": ("example32", morphism_from_rows(
            [[2, 1, 1, 1], [0, 6, 0, 0], [0, 2, 3, 0], [0, 1, 1, Fraction(3, 2)]])),
        "sl2_diag": ("sl2", Matrix.of(QQ, [[1, 0, 0], [0, 2, 0], [0, 0, Fraction(1, 2)]])),
    }
    return algs, maps


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--out", type=Path, default=OUT)
    args = ap.parse_args()
    args.out.mkdir(parents=True, exist_ok=True)
    algs, maps = fixtures()
    for name, g in algs.items():
        assert check_hom_jacobi(g), name
        (args.out / f"{name}.alg").write_text(dumps(g), encoding="utf-8")
    for name, (base, f) in maps.items():
        bad = bracket_morphism_violations(f, algs[base], algs[base])
        assert not bad, (name, bad)
        doc = {"field": "Q", "matrix": f.render()}
        (args.out / f"{name}.map").write_text(json.dumps(doc, indent=1) + "\n", encoding="utf-8")
    print(f"wrote {len(algs)} algebras and {len(maps)} maps to {args.out}")


if __name__ == "__main__":
    main()
