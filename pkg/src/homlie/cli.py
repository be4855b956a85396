"""Command-line front end.

Every subcommand prints one JSON report with sorted keys. Exit codes: 0 on
success, 1 when the main verdict is negative, 2 on bad input, 3 when an
internal invariant check fails.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import sys
import time
from dataclasses import dataclass, field as dc_field

from . import catalog
from .algebra import (
    HomAlgebra,
    InvariantViolation,
    check_hom_jacobi,
    check_multiplicative,
    hom_jacobi_violations,
    is_lie,
    multiplicative_violations,
    reduce_to,
)
from .basis_change import ChangeError, apply_change, parse_change, realize
from .classify import AdaptedBasisError, ClassificationError, classify
from .cohomology import CochainError, cocycle_basis, cohomology_report
from .exactlin import GF, Field, FieldMismatchError, Matrix, QQ
from .fileio import AlgebraFormatError, dumps, load_matrix, loads
from .filiform import ModelError, PsiCoefficients, assemble, deformation_check
from .isomorphism import SearchError, iso_bruteforce
from .registry import RegistryError, audit
from .series import central_series, derived_series, is_filiform, is_solvable, nilpotency
from .twisting import TwistError, beta_twist, nth_derived, parse_variant, untwist, yau_twist

INPUT_ERRORS = (AlgebraFormatError, catalog.CatalogError, ChangeError, CochainError, ModelError,
                SearchError, TwistError, RegistryError, FieldMismatchError, ValueError, OSError)


class UsageError(Exception):
    pass


@dataclass
class Report:
    command: list
    inputs: dict = dc_field(default_factory=dict)
    verdicts: dict = dc_field(default_factory=dict)
    findings: list = dc_field(default_factory=list)
    details: dict = dc_field(default_factory=dict)
    timing: float | None = None
    error: str | None = None

    def as_dict(self) -> dict:
        d = {"command": self.command, "inputs": self.inputs, "verdicts": self.verdicts,
             "findings": self.findings}
        if self.details:
            d["details"] = self.details
        if self.timing is not None:
            d["timing_seconds"] = round(self.timing, 3)
        if self.error is not None:
            d["error"] = self.error
        return d

    def render(self) -> str:
        return json.dumps(self.as_dict(), sort_keys=True, indent=1) + "\n"


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.format_usage()}{self.prog}: error: {message}")


def _read(report: Report, path: str, kind: str = "alg") -> str:
    p = catalog.resolve(path, kind)
    data = p.read_bytes()
    report.inputs[path] = hashlib.sha256(data).hexdigest()
    return data.decode("utf-8")


def _algebra(report: Report, path: str) -> HomAlgebra:
    return loads(_read(report, path))


def _matrix(report: Report, path: str, F: Field) -> Matrix:
    _read(report, path, "map")
    return load_matrix(catalog.resolve(path, "map"), F)


def _write(args, g: HomAlgebra, report: Report):
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(dumps(g))
        report.details["written"] = args.out
    else:
        report.details["algebra"] = json.loads(dumps(g))


# ---------------------------------------------------------------------------
# subcommands; each returns the exit code
# ---------------------------------------------------------------------------

def cmd_check(args, report: Report) -> int:
    g = _algebra(report, args.file)
    hj = check_hom_jacobi(g)
    report.verdicts.update(hom_jacobi=hj, multiplicative=check_multiplicative(g), lie=is_lie(g))
    F = g.field
    bad = hom_jacobi_violations(g)
    if bad:
        report.details["hom_jacobi_defects"] = [
            {"triple": list(t), "defect": [F.render(c) for c in v]} for t, v in bad[: args.limit]]
    mv = multiplicative_violations(g)
    if mv:
        report.details["multiplicative_failures"] = [list(p) for p in mv[: args.limit]]
    return 0 if hj else 1


def cmd_series(args, report: Report) -> int:
    g = _algebra(report, args.file)
    cs = central_series(g)
    nv = nilpotency(g)
    report.verdicts.update(central_dims=list(cs.dims), alpha_stable=cs.all_alpha_stable,
                           nilpotent=nv.nilpotent, nilindex=nv.nilindex, filiform=is_filiform(g),
                           solvable=is_solvable(g), derived_dims=list(derived_series(g).dims))
    report.details["central_series"] = cs.as_dict()
    return 0


def cmd_classify(args, report: Report) -> int:
    g = _algebra(report, args.file)
    try:
        res = classify(g, check_twist=not args.no_twist_check)
    except (AdaptedBasisError, ClassificationError) as e:
        report.verdicts["classified"] = False
        report.details["reason"] = str(e)
        return 1
    report.verdicts.update(classified=True, name=res.name, verified=res.verified)
    report.details["result"] = res.as_dict()
    if not res.verified:
        raise InvariantViolation("composed changes do not reproduce the reduced algebra")
    return 0


def _dims(text: str) -> list[int]:
    out = []
    for part in text.split(","):
        if "-" in part:
            lo, hi = part.split("-")
            out += list(range(int(lo), int(hi) + 1))
        else:
            out.append(int(part))
    if any(d < 3 or d > 7 for d in out):
        raise ValueError("registry dimensions run from 3 to 7")
    return out


def cmd_audit(args, report: Report) -> int:
    rep = audit(_dims(args.dim), args.samples, args.seed, not args.plain_only)
    d = rep.as_dict()
    report.verdicts.update(complete=rep.complete, **d["summary"])
    report.findings.extend(d["findings"])
    report.details.update(rows=d["rows"], identity=d["identity"], seed=args.seed, samples=args.samples)
    return 0 if rep.complete else 3


def cmd_cocycle(args, report: Report) -> int:
    g = _algebra(report, args.file)
    rep = cohomology_report(g, args.arity, args.equivariant, args.convention, args.form)
    report.verdicts.update(rep.as_dict())
    if args.basis:
        report.details["cocycle_basis"] = [c.to_dict() for c in
                                           cocycle_basis(g, args.arity, args.equivariant, args.convention, args.form)]
    return 0


def cmd_twist(args, report: Report) -> int:
    g = _algebra(report, args.file)
    kind, n = parse_variant(args.variant)
    if kind in ("yau", "beta"):
        if not args.map:
            raise ValueError(f"variant {kind} needs --map")
        f = _matrix(report, args.map, g.field)
        h = yau_twist(g, f) if kind == "yau" else beta_twist(g, f)
    elif kind == "derived":
        h = nth_derived(g, n)
    else:
        h = untwist(g)
    cs = central_series(h)
    nv = nilpotency(h)
    report.verdicts.update(hom_jacobi=check_hom_jacobi(h), multiplicative=check_multiplicative(h),
                           lie=is_lie(h), nilpotent=nv.nilpotent, nilindex=nv.nilindex,
                           filiform=is_filiform(h), central_dims=list(cs.dims))
    _write(args, h, report)
    return 0


def cmd_change(args, report: Report) -> int:
    g = _algebra(report, args.file)
    ch = parse_change(args.spec, g.field)
    m = realize(ch, g)
    h = apply_change(ch, g)
    report.verdicts["change"] = ch.label(g.field)
    report.details["matrix"] = m.render()
    _write(args, h, report)
    return 0


def _coeff(text: str, F: Field) -> tuple[tuple[int, int], object]:
    try:
        key, val = text.split("=")
        k, r = key.split(",")
        return (int(k), int(r)), F.parse(val.strip())
    except ValueError:
        raise ValueError(f"bad --coeff {text!r}; expected k,r=value") from None


def cmd_deform(args, report: Report) -> int:
    F = Field.from_tag(args.field)
    coeffs = dict(_coeff(c, F) for c in args.coeff)
    if args.alpha == "id":
        alpha = None
    else:
        alpha = _matrix(report, args.alpha, F)
    g = assemble(args.n, PsiCoefficients(args.n, coeffs), alpha, F)
    dr = deformation_check(g)
    hj = check_hom_jacobi(g)
    if hj != dr.verdict:
        raise InvariantViolation("residual verdict and twisted Jacobi check disagree")
    report.verdicts.update(deformation=dr.verdict, hom_jacobi=hj, filiform=is_filiform(g))
    report.details["deformation_check"] = dr.as_dict()
    _write(args, g, report)
    return 0 if dr.verdict else 1


def cmd_oracle(args, report: Report) -> int:
    F = GF(args.p)
    g1 = reduce_to(_algebra(report, args.file1), F)
    g2 = reduce_to(_algebra(report, args.file2), F)
    res = iso_bruteforce(g1, g2, adapted=args.adapted, budget=args.budget)
    report.verdicts.update(isomorphic=res.isomorphic, candidates=res.candidates, mode=res.mode, field=F.tag)
    if res.witness is not None:
        report.details["witness"] = res.witness.render()
    return 0 if res.isomorphic else 1


# ---------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    ap = _Parser(prog="homlie", description="Exact computations with Hom-Lie algebras.")
    ap.add_argument("--timing", action="store_true", help="include wall-clock time in the report")
    sub = ap.add_subparsers(dest="cmd", parser_class=_Parser)
    sub.required = True

    def add(name, fn, help_):
        p = sub.add_parser(name, help=help_)
        p.set_defaults(fn=fn)
        return p

    p = add("check", cmd_check, "twisted Jacobi, multiplicativity and Lie verdicts")
    p.add_argument("file")
    p.add_argument("--limit", type=int, default=5, help="defects to list")
    p = add("series", cmd_series, "central and derived series")
    p.add_argument("file")
    p = add("classify", cmd_classify, "reduce a filiform algebra to its representative")
    p.add_argument("file")
    p.add_argument("--no-twist-check", action="store_true")
    p = add("audit", cmd_audit, "sample every registry entry")
    p.add_argument("--dim", default="3-7", help="e.g. 5 or 3-7 or 5,6")
    p.add_argument("--samples", type=int, default=100)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--plain-only", action="store_true", help="skip multiplicative entries")
    p = add("cocycle", cmd_cocycle, "cocycle, coboundary and cohomology dimensions")
    p.add_argument("file")
    p.add_argument("--arity", type=int, default=2)
    p.add_argument("--equivariant", action="store_true")
    p.add_argument("--form", choices=("literal", "circle"), default="literal")
    p.add_argument("--convention", default="standard")
    p.add_argument("--basis", action="store_true")
    p = add("twist", cmd_twist, "Yau, beta, derived and untwisted algebras")
    p.add_argument("file")
    p.add_argument("--variant", default="yau", help="yau | beta | derived:n | untwist")
    p.add_argument("--map")
    p.add_argument("--out")
    p = add("change", cmd_change, "apply an adapted change of basis")
    p.add_argument("file")
    p.add_argument("spec", help="sigma:b,k | tau:a,k | nu:a,b | general:a0,..,an;b0,..,bn")
    p.add_argument("--out")
    p = add("deform", cmd_deform, "assemble mu_0 + sum a_kr psi_kr and check it")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--coeff", action="append", default=[], help="k,r=value (repeatable)")
    p.add_argument("--alpha", default="id", help="map file or 'id'")
    p.add_argument("--field", default="Q")
    p.add_argument("--out")
    p = add("oracle", None, "exhaustive searches over small prime fields")
    osub = p.add_subparsers(dest="oracle_cmd", parser_class=_Parser)
    osub.required = True
    q = osub.add_parser("iso", help="isomorphism by exhaustion")
    q.set_defaults(fn=cmd_oracle)
    q.add_argument("file1")
    q.add_argument("file2")
    q.add_argument("--p", type=int, default=3)
    q.add_argument("--adapted", action="store_true")
    q.add_argument("--budget", type=int, default=10 ** 8)
    return ap


def run(argv: list[str]) -> tuple[int, Report | None]:
    report = Report(command=list(argv))
    try:
        args = build_parser().parse_args(argv)
    except UsageError as e:
        report.error = str(e)
        return 2, report
    except SystemExit as e:  # --help already printed
        return int(e.code or 0), None
    start = time.perf_counter()
    try:
        code = args.fn(args, report)
    except InvariantViolation as e:
        report.error = f"invariant violation: {e}"
        code = 3
    except INPUT_ERRORS as e:
        report.error = str(e)
        code = 2
    if args.timing:
        report.timing = time.perf_counter() - start
    return code, report


def main(argv=None) -> int:
    code, report = run(sys.argv[1:] if argv is None else argv)
    if report is None:
        return code
    if report.error and code == 2 and report.error.startswith("usage"):
        sys.stderr.write(report.error + "\n")
    sys.stdout.write(report.render())
    return code


if __name__ == "__main__":
    sys.exit(main())
