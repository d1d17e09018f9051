"""Randomized cross-checks between the entanglement criteria."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from . import criteria
from .linalg import PAIRS, hermitian_eigenvalues, marginal, partial_transpose
from .states import density, family_of, random_state

GENERATOR = "numpy.random.PCG64"
CLOSED_FORM_TOL = 1e-9
CKW_TOL = 1e-10


@dataclass
class FuzzSummary:
    count: int
    seed: int
    passed: int = 0
    failed: int = 0
    family_matches: int = 0
    max_tangle_gap: float = 0.0
    failures: list[dict] = field(default_factory=list)


def _closed_form_ok(rho, params) -> bool:
    if params.family == "III":
        return True
    spectra = criteria.closed_form_marginal_spectra(params)
    for key, expected in spectra.items():
        if not np.allclose(hermitian_eigenvalues(marginal(rho, key)), expected, atol=CLOSED_FORM_TOL):
            return False
    conc = criteria.closed_form_concurrences(params)
    for pair, c in zip(PAIRS, conc):
        rho_p = marginal(rho, pair)
        ppt = hermitian_eigenvalues(partial_transpose(rho_p))
        if not np.allclose(ppt, criteria.closed_form_ppt_spectrum(params, pair), atol=CLOSED_FORM_TOL):
            return False
        if abs(criteria.concurrence(rho_p).concurrence - c) > CLOSED_FORM_TOL:
            return False
    return True


def check_state(v) -> tuple[list[str], float, bool]:
    """Run every check on one state; return (violations, tangle gap, family hit)."""
    rho = density(v)
    problems = []
    for pair in PAIRS:
        pe = criteria.concurrence(marginal(rho, pair))
        by_ppt = pe.ppt_min_eigenvalue < -criteria.ENTANGLEMENT_TOL
        if pe.entangled != by_ppt:
            problems.append(f"ppt/concurrence disagree on {pair}")
    tangle = criteria.three_tangle(v)
    if not -CKW_TOL <= tangle.tau_ckw <= 1 + CKW_TOL:
        problems.append(f"ckw residual {tangle.tau_ckw!r} outside [0, 1]")
    params = family_of(v)
    if params is not None and not _closed_form_ok(rho, params):
        problems.append(f"closed forms disagree for family {params.family}")
    return problems, abs(tangle.tau_paper - tangle.tau_ckw), params is not None


def run_fuzz(count: int, seed: int) -> FuzzSummary:
    rng = np.random.Generator(np.random.PCG64(seed))
    summary = FuzzSummary(count, seed)
    for i in range(count):
        v = random_state(rng)
        problems, gap, hit = check_state(v)
        summary.max_tangle_gap = max(summary.max_tangle_gap, gap)
        summary.family_matches += hit
        if problems:
            summary.failed += 1
            summary.failures.append({"index": i, "amplitudes": v, "problems": problems})
        else:
            summary.passed += 1
    return summary
