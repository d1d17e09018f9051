"""
Robustness/fragility classification of three-qubit pure states.

A pair marginal is Fragile (F) when its concurrence vanishes, Robust (R) when
its concurrence equals the largest of the state's three pair concurrences, and
reduced-robust (r) in between. Symmetry tags refer to the full three-qubit
state under exchange of that pair.
"""

from __future__ import annotations

import dataclasses
from dataclasses import dataclass, field
from enum import Enum
from typing import Sequence

import numpy as np

from . import criteria
from .errors import VerificationError
from .linalg import PAIRS, PAULIS, SIGMA_I, kron_all, marginal
from .states import (
    ENTANGLED_EIGHT,
    SymmetryTag,
    as_state,
    canonical_state,
    density,
    family_of,
    pair_symmetry,
    parse_name,
)

ROBUSTNESS_TOL = 1e-9
EIGEN_RESIDUAL_TOL = 1e-10
PM_TOL = 1e-10
DEFAULT_Q_GRID = (0.5, 1.0, 2.0, 3.0)

TABLE_CLASSES = ("GHZ", "GFR", "WRr", "WRR")
HAMILTONIAN_EIGENVALUES = {"GHZ": 2.5, "WRR": 2.5, "GFR": -1.5, "WRr": -3.5}


class RobustnessTag(str, Enum):
    R = "R"
    r = "r"
    F = "F"

    def __str__(self) -> str:
        return self.value


def robustness_label(c: float, c_max: float, tol: float = ROBUSTNESS_TOL) -> RobustnessTag:
    if c <= tol:
        return RobustnessTag.F
    if c >= c_max - tol:
        return RobustnessTag.R
    return RobustnessTag.r


def robustness_labels(triangle: Sequence[float]) -> tuple[RobustnessTag, ...]:
    c_max = max(triangle)
    return tuple(robustness_label(c, c_max) for c in triangle)


@dataclass(frozen=True)
class PairReport:
    pair: str
    symmetry: SymmetryTag
    entanglement: criteria.PairEntanglement
    robustness: RobustnessTag

    @property
    def concurrence(self) -> float:
        return self.entanglement.concurrence


@dataclass(frozen=True)
class TsallisRow:
    """Conditional entropies at one ``q``: three-qubit given pair, and pair given qubit."""

    q: float
    conditional: dict[str, criteria.TsallisResult]
    pair_conditional: dict[str, criteria.TsallisResult]


@dataclass(frozen=True)
class StateReport:
    name: str | None
    amplitudes: np.ndarray
    pairs: dict[str, PairReport]
    tangle: criteria.TangleResult
    tsallis: tuple[TsallisRow, ...]
    hamiltonian_eigenvalue: float | None
    lewenstein: criteria.LewensteinDecomposition | None
    lewenstein_reason: str | None = None
    abc_symmetry: dict[str, SymmetryTag] = field(default_factory=dict)

    @property
    def triangle(self) -> tuple[float, float, float]:
        """Concurrence triangle side lengths ``(C_AB, C_AC, C_BC)``."""
        return tuple(self.pairs[p].concurrence for p in PAIRS)


def _pair_entanglement(rho) -> dict[str, criteria.PairEntanglement]:
    return {p: criteria.concurrence(marginal(rho, p)) for p in PAIRS}


def _pair_reports(state) -> dict[str, PairReport]:
    v = as_state(state)
    ent = _pair_entanglement(density(v))
    labels = robustness_labels([ent[p].concurrence for p in PAIRS])
    return {
        p: PairReport(p, pair_symmetry(v, p), ent[p], tag)
        for p, tag in zip(PAIRS, labels)
    }


def classify_pair(state, pair: str) -> PairReport:
    return _pair_reports(state)[pair.upper()]


# --------------------------------------------------------------------------- #
# Heisenberg Hamiltonian                                                      #
# --------------------------------------------------------------------------- #

def heisenberg_hamiltonian() -> np.ndarray:
    """
    ``s_A.s_B + s_A.s_C + (s_B.s_C) / 2`` on three qubits (Pauli dot products).

    Only the B-C coupling carries the factor 1/2; that reading yields the
    eigenvalues 5/2, -3/2 and -7/2 on the canonical states.
    """
    h = np.zeros((8, 8), dtype=complex)
    for s in PAULIS:
        h += kron_all(s, s, SIGMA_I)
        h += kron_all(s, SIGMA_I, s)
        h += 0.5 * kron_all(SIGMA_I, s, s)
    return h


_H = heisenberg_hamiltonian()
_H.setflags(write=False)


def eigen_pair(state, h=_H) -> tuple[float, float]:
    """``(<psi|H|psi>, ||H psi - <psi|H|psi> psi||)``."""
    v = as_state(state)
    hv = h @ v
    e = float(np.vdot(v, hv).real)
    return e, float(np.linalg.norm(hv - e * v))


def verify_hamiltonian_eigenstates() -> dict[str, tuple[float, float]]:
    out = {}
    for name in ENTANGLED_EIGHT:
        e, res = eigen_pair(canonical_state(name))
        expected = HAMILTONIAN_EIGENVALUES[name[:-1]]
        if res > EIGEN_RESIDUAL_TOL or abs(e - expected) > EIGEN_RESIDUAL_TOL:
            raise VerificationError(
                f"{name}: <H> = {e!r}, residual {res:.3e}; expected eigenvalue {expected}"
            )
        out[name] = (e, res)
    return out


def hamiltonian_spectrum(tol: float = EIGEN_RESIDUAL_TOL) -> list[tuple[float, int]]:
    """Distinct eigenvalues of H (descending) with multiplicities."""
    w = np.linalg.eigvalsh(_H)[::-1]
    groups: list[list[float]] = []
    for x in w:
        if groups and abs(groups[-1][0] - x) <= tol:
            groups[-1].append(x)
        else:
            groups.append([x])
    return [(float(np.mean(g)), len(g)) for g in groups]


# --------------------------------------------------------------------------- #
# Reports                                                                     #
# --------------------------------------------------------------------------- #

def _tsallis_row(rho, q: float) -> TsallisRow:
    cond = {}
    for p in PAIRS:
        cond[f"ABC|{p}"] = criteria.conditional_tsallis(rho, marginal(rho, p), q)
    pair_cond = {}
    for p in PAIRS:
        rho_p = marginal(rho, p)
        for qubit in p:
            pair_cond[f"{p}|{qubit}"] = criteria.conditional_tsallis(rho_p, marginal(rho, qubit), q)
    return TsallisRow(q, cond, pair_cond)


def _lewenstein(v) -> tuple[criteria.LewensteinDecomposition | None, str | None]:
    params = family_of(v)
    if params is None:
        return None, "support is not confined to the family I or II kets"
    if params.family == "III":
        return None, "GHZ-type family has no entangled BC component"
    return criteria.lewenstein_bc(params), None


def analyze(state, q_grid: Sequence[float] = DEFAULT_Q_GRID, name: str | None = None) -> StateReport:
    v = as_state(state)
    rho = density(v)
    e, res = eigen_pair(v)
    lew, why = _lewenstein(v)
    return StateReport(
        name=name,
        amplitudes=v.copy(),
        pairs=_pair_reports(v),
        tangle=criteria.three_tangle(v),
        tsallis=tuple(_tsallis_row(rho, float(q)) for q in q_grid),
        hamiltonian_eigenvalue=e if res <= EIGEN_RESIDUAL_TOL else None,
        lewenstein=lew,
        lewenstein_reason=why,
        abc_symmetry={p: pair_symmetry(v, p) for p in PAIRS},
    )


def analyze_named(name: str, q_grid: Sequence[float] = DEFAULT_Q_GRID) -> StateReport:
    name = parse_name(name)
    return analyze(canonical_state(name), q_grid, name=name)


def numeric_fields(report: StateReport) -> list[float]:
    """Flattened numbers compared between the + and - member of a class."""
    out = []
    for p in PAIRS:
        pr = report.pairs[p]
        out += [pr.concurrence, pr.entanglement.ppt_min_eigenvalue]
    out += [report.tangle.tau_paper, report.tangle.tau_ckw]
    for row in report.tsallis:
        for res in (*row.conditional.values(), *row.pair_conditional.values()):
            out += [res.entropy_joint, res.entropy_marginal, res.conditional]
    out.append(np.nan if report.hamiltonian_eigenvalue is None else report.hamiltonian_eigenvalue)
    if report.lewenstein is not None:
        out += [report.lewenstein.s_max, report.lewenstein.concurrence_of_marginal]
    return out


def _labels(report: StateReport) -> list[str]:
    return [f"{r.symmetry}{r.robustness}" for r in report.pairs.values()]


def check_pm_equivalence(plus: StateReport, minus: StateReport, tol: float = PM_TOL) -> None:
    a, b = np.array(numeric_fields(plus)), np.array(numeric_fields(minus))
    if a.shape != b.shape or not np.allclose(a, b, rtol=0, atol=tol, equal_nan=True):
        raise VerificationError(f"{plus.name} and {minus.name} disagree numerically")
    if _labels(plus) != _labels(minus):
        raise VerificationError(f"{plus.name} and {minus.name} disagree on labels")


def table_one(q_grid: Sequence[float] = DEFAULT_Q_GRID, expanded: bool = False) -> list[StateReport]:
    """
    One report per state class (GHZ, GFR, WRr, WRR), or all eight if ``expanded``.

    Each collapsed row is the ``+`` member, after checking the ``-`` member
    gives the same numbers (it is a spin flip or local-unitary image of ``+``).
    """
    rows = []
    for cls in TABLE_CLASSES:
        plus = analyze_named(cls + "+", q_grid)
        minus = analyze_named(cls + "-", q_grid)
        check_pm_equivalence(plus, minus)
        if expanded:
            rows += [plus, minus]
        else:
            rows.append(dataclasses.replace(plus, name=cls))
    return rows
