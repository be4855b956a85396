"""Closed-form coefficient laws against direct conjugation, on random instances.

The ``nu`` law is parameter free and must match exactly. The ``sigma`` and
``tau`` laws carry the named constants ``C10``, ``C11``, ``C20``; for those the
harness records every mismatch as a finding and scans a small grid of
constant values for choices that would make each law agree.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field as dc_field
from itertools import product

from .basis_change import LawError, Nu, Sigma, Tau, coefficient_law, law_vs_conjugation
from .exactlin import QQ, Field
from .filiform import PsiCoefficients, delta_index_set

C_NAMES = ("C10", "C11", "C20")
SCAN_VALUES = (-2, -1, 0, 1, 2)


def elementary_changes(rng: random.Random, F: Field = QQ) -> list:
    b = F.random(rng, 4, nonzero=True)
    a = F.random(rng, 4, nonzero=True)
    return [Sigma(b, 2), Sigma(b, 3), Tau(a, 1), Tau(a, 2)]


def random_coeffs(n: int, rng: random.Random, F: Field = QQ, bound: int = 5) -> PsiCoefficients:
    return PsiCoefficients(n, {key: F.random(rng, bound) for key in delta_index_set(n)})


def random_nu(rng: random.Random, F: Field = QQ) -> Nu:
    return Nu(F.random(rng, 5, nonzero=True), F.random(rng, 5, nonzero=True))


@dataclass
class LawHarnessReport:
    nu_total: int = 0
    nu_matches: int = 0
    nu_failures: list = dc_field(default_factory=list)
    checked: int = 0
    findings: list = dc_field(default_factory=list)
    scan: dict = dc_field(default_factory=dict)

    @property
    def nu_ok(self) -> bool:
        return self.nu_total > 0 and self.nu_matches == self.nu_total

    def as_dict(self) -> dict:
        return {"nu": {"total": self.nu_total, "matches": self.nu_matches, "failures": self.nu_failures},
                "sigma_tau_checked": self.checked, "findings": self.findings, "constant_scan": self.scan}


def run_harness(ns=(5, 6), nu_samples: int = 200, law_samples: int = 20, seed: int = 0,
                c_params=None, scan: bool = True) -> LawHarnessReport:
    """Cross-check every supported law. ``c_params`` defaults to ``C10 = 1, C11 = C20 = 0``."""
    F = QQ
    c_params = dict(c_params or {"C10": 1, "C11": 0, "C20": 0})
    rep = LawHarnessReport()
    rng = random.Random(seed)
    for i in range(nu_samples):
        n = ns[i % len(ns)]
        coeffs = random_coeffs(n, rng)
        r = law_vs_conjugation(random_nu(rng), coeffs, None, {}, F)
        rep.nu_total += 1
        if r.match:
            rep.nu_matches += 1
        else:
            rep.nu_failures.append({"coeffs": coeffs.render(F), **r.as_dict()})
    samples = []
    for n in ns:
        for _ in range(law_samples):
            coeffs = random_coeffs(n, rng)
            for ch in elementary_changes(rng):
                samples.append((n, ch, coeffs))
    for n, ch, coeffs in samples:
        r = law_vs_conjugation(ch, coeffs, None, c_params, F)
        rep.checked += 1
        if not r.match:
            rep.findings.append({"kind": "law_mismatch", "constants": {k: str(v) for k, v in c_params.items()},
                                 "coeffs": coeffs.render(F), **r.as_dict()})
    if scan:
        rep.scan = scan_constants(samples)
    return rep


def _family(ch) -> str:
    return f"{type(ch).__name__.lower()}(.,{ch.k})"


class _Recorder(dict):
    def __init__(self):
        super().__init__({name: 0 for name in C_NAMES})
        self.used = set()

    def __contains__(self, key):
        self.used.add(key)
        return super().__contains__(key)


def used_constants(ch, n: int) -> tuple:
    rec = _Recorder()
    try:
        coefficient_law(ch, PsiCoefficients(n, {}), rec, QQ)
    except LawError:
        pass
    return tuple(name for name in C_NAMES if name in rec.used)


def scan_constants(samples) -> dict:
    """For each law family and ``n``, the constant choices matching every sample."""
    groups: dict = {}
    for n, ch, coeffs in samples:
        groups.setdefault((n, _family(ch)), []).append((ch, coeffs))
    out = {}
    for (n, fam), items in sorted(groups.items()):
        names = used_constants(items[0][0], n)
        good = []
        for vals in product(SCAN_VALUES, repeat=len(names)):
            cp = dict(zip(names, vals))
            try:
                ok = all(law_vs_conjugation(ch, coeffs, None, cp, QQ).match for ch, coeffs in items)
            except LawError:
                ok = False
            if ok:
                good.append(cp)
        out[f"n={n}:{fam}"] = {"samples": len(items), "constants": list(names), "matching": good}
    return out
