"""
Entanglement criteria for three-qubit pure states and their two-qubit marginals.

* Tsallis conditional entropy (negative value is a sufficient signal).
* Positive partial transpose test (necessary and sufficient for two qubits).
* Wootters concurrence and the three-way residual tangle.

Closed-form spectra for the W-type parametric families live here as well, so
the numeric pipeline always has an analytic counterpart to be checked against.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import linalg
from .errors import DegenerateDenominatorError, InvalidInputError
from .linalg import check_density, hermitian_eigenvalues, marginal
from .states import ParametricParams, as_state, density, parametric_state

ENTANGLEMENT_TOL = 1e-9
VON_NEUMANN_BAND = 1e-8


# --------------------------------------------------------------------------- #
# Tsallis entropy                                                             #
# --------------------------------------------------------------------------- #

def _probabilities(rho) -> np.ndarray:
    rho = check_density(rho)
    return np.clip(hermitian_eigenvalues(rho), 0.0, 1.0)


def tsallis_entropy(rho, q: float) -> float:
    """
    Tsallis entropy ``(Tr rho**q - 1) / (1 - q)``.

    Within 1e-8 of ``q = 1`` the von Neumann entropy (natural log) is returned.
    Eigenvalues below ``linalg.RANK_TOL`` count as zero; for ``q < 1`` round-off
    of 1e-17 would otherwise contribute ~1e-8 through ``p**q``.
    """
    if not q > 0:
        raise InvalidInputError(f"q must be positive, got {q!r}")
    p = _probabilities(rho)
    p = p[p > linalg.RANK_TOL]
    if abs(q - 1) <= VON_NEUMANN_BAND:
        s = -float(np.sum(p * np.log(p)))
    else:
        s = (float(np.sum(p**q)) - 1.0) / (1.0 - q)
    return max(s, 0.0)


@dataclass(frozen=True)
class TsallisResult:
    q: float
    entropy_joint: float
    entropy_marginal: float
    conditional: float


def conditional_from_entropies(s_joint: float, s_marginal: float, q: float) -> float:
    denom = 1.0 + (1.0 - q) * s_marginal
    if abs(denom) <= 1e-12:
        raise DegenerateDenominatorError(f"conditional Tsallis denominator vanished at q={q}")
    return (s_joint - s_marginal) / denom


def conditional_tsallis(joint, marginal_rho, q: float) -> TsallisResult:
    """
    Nonadditive conditional entropy ``S_q(joint | marginal)``.

    ``marginal_rho`` must be the reduction of ``joint``; that is not checked.
    """
    s_joint = tsallis_entropy(joint, q)
    s_marg = tsallis_entropy(marginal_rho, q)
    return TsallisResult(q, s_joint, s_marg, conditional_from_entropies(s_joint, s_marg, q))


# --------------------------------------------------------------------------- #
# PPT and concurrence                                                         #
# --------------------------------------------------------------------------- #

def ppt_test(rho_pair) -> tuple[float, bool]:
    """Minimum eigenvalue of the partial transpose and the entanglement verdict."""
    rho = check_density(rho_pair, 4)
    lam_min = float(hermitian_eigenvalues(linalg.partial_transpose(rho, "second"))[-1])
    return lam_min, lam_min < -ENTANGLEMENT_TOL


@dataclass(frozen=True)
class PairEntanglement:
    concurrence: float
    ppt_min_eigenvalue: float
    sqrt_spectrum: tuple[float, float, float, float]

    @property
    def entangled(self) -> bool:
        return self.concurrence > ENTANGLEMENT_TOL


def concurrence(rho_pair) -> PairEntanglement:
    lam = linalg.spinflip_sqrt_spectrum(rho_pair)
    c = max(lam[0] - lam[1] - lam[2] - lam[3], 0.0)
    lam_min, _ = ppt_test(rho_pair)
    return PairEntanglement(float(c), lam_min, tuple(float(x) for x in lam))


@dataclass(frozen=True)
class TangleResult:
    tau_paper: float
    tau_ckw: float


def _det2(m) -> float:
    return float((m[0, 0] * m[1, 1] - m[0, 1] * m[1, 0]).real)


def three_tangle(state) -> TangleResult:
    """
    Residual three-way tangle, computed two ways.

    ``tau_paper`` is ``2 * (l1*l2 [AB] + l1*l2 [AC])`` from the two largest
    spin-flip square roots of each pair marginal. ``tau_ckw`` is the
    Coffman-Kundu-Wootters form ``4 det(rho_A) - C_AB**2 - C_AC**2``.
    """
    rho = density(as_state(state))
    rho_ab, rho_ac = marginal(rho, "AB"), marginal(rho, "AC")
    lam_ab = linalg.spinflip_sqrt_spectrum(rho_ab)
    lam_ac = linalg.spinflip_sqrt_spectrum(rho_ac)
    tau_paper = 2.0 * (lam_ab[0] * lam_ab[1] + lam_ac[0] * lam_ac[1])
    c_ab = max(lam_ab[0] - lam_ab[1:].sum(), 0.0)
    c_ac = max(lam_ac[0] - lam_ac[1:].sum(), 0.0)
    tau_ckw = 4.0 * _det2(marginal(rho, "A")) - c_ab**2 - c_ac**2
    return TangleResult(float(tau_paper), float(tau_ckw))


# --------------------------------------------------------------------------- #
# Closed forms for families I and II                                          #
# --------------------------------------------------------------------------- #

def _w_family(p: ParametricParams) -> tuple[float, float, float]:
    if p.family not in ("I", "II"):
        raise InvalidInputError(f"closed forms cover families I and II, not {p.family}")
    return abs(p.alpha) ** 2, abs(p.beta) ** 2, abs(p.gamma) ** 2


def _desc(*values: float) -> np.ndarray:
    return np.sort(np.array(values, dtype=float))[::-1]


# For each pair: (weight on the separated ket, the other two weights).
# AB uses (a; b, g); AC swaps alpha<->beta; BC then swaps gamma<->beta.
_PAIR_ROLES = {"AB": (0, 1, 2), "AC": (1, 0, 2), "BC": (2, 0, 1)}
_QUBIT_ROLE = {"A": 2, "B": 1, "C": 0}


def closed_form_marginal_spectra(p: ParametricParams) -> dict[str, np.ndarray]:
    """Analytic spectra of every one- and two-qubit marginal, descending."""
    w = _w_family(p)
    out = {}
    for pair, (k, _, _) in _PAIR_ROLES.items():
        out[pair] = _desc(w[k], 1 - w[k], 0.0, 0.0)
    for qubit, k in _QUBIT_ROLE.items():
        out[qubit] = _desc(w[k], 1 - w[k])
    return out


def closed_form_ppt_spectrum(p: ParametricParams, pair: str) -> np.ndarray:
    """
    Analytic eigenvalues of the partially transposed pair marginal.

    For AB they are ``|b|^2, |g|^2`` and ``(|a|^2 +- sqrt(|a|^4 + 4|b|^2|g|^2)) / 2``.
    """
    w = _w_family(p)
    k, i, j = _PAIR_ROLES[pair.upper()]
    root = math.sqrt(w[k] ** 2 + 4 * w[i] * w[j])
    return _desc(w[i], w[j], (w[k] + root) / 2, (w[k] - root) / 2)


def closed_form_concurrences(p: ParametricParams) -> tuple[float, float, float]:
    """``(C_AB, C_AC, C_BC) = (2|b||g|, 2|a||g|, 2|a||b|)``."""
    _w_family(p)
    a, b, g = abs(p.alpha), abs(p.beta), abs(p.gamma)
    return 2 * b * g, 2 * a * g, 2 * a * b


def closed_form_spinflip_products(p: ParametricParams) -> dict[str, np.ndarray]:
    """Eigenvalues of ``rho_pair @ spin_flip(rho_pair)`` for each pair."""
    return {pair: _desc(c * c, 0.0, 0.0, 0.0)
            for pair, c in zip(("AB", "AC", "BC"), closed_form_concurrences(p))}


# --------------------------------------------------------------------------- #
# Separable / entangled split of the BC marginal                              #
# --------------------------------------------------------------------------- #

@dataclass(frozen=True)
class LewensteinDecomposition:
    """
    ``rho_BC = s_max * separable_part + (1 - s_max) |ent><ent|``.

    ``entangled_part`` is None when the marginal is the pure product on its own.
    The decomposition is verified to be valid, not proven maximal.
    """

    s_max: float
    separable_part: np.ndarray
    entangled_part: np.ndarray | None
    concurrence_of_marginal: float

    @property
    def bound(self) -> float:
        return self.s_max + self.concurrence_of_marginal

    def reconstruct(self) -> np.ndarray:
        out = self.s_max * self.separable_part
        if self.entangled_part is not None:
            e = self.entangled_part
            out = out + (1 - self.s_max) * np.outer(e, e.conj())
        return out


def _two_qubit_ket(bits: str) -> np.ndarray:
    v = np.zeros(4, dtype=complex)
    v[int(bits, 2)] = 1.0
    return v


def lewenstein_bc(p: ParametricParams) -> LewensteinDecomposition:
    """
    Split the BC marginal of a W-type family state.

    Family I: separable part ``|11><11|`` with weight ``|gamma|^2`` and
    entangled part ``(alpha|10> + beta|01>) / sqrt(1 - |gamma|^2)``.
    Family II is the spin-flipped image: ``|00><00|`` and
    ``(alpha|01> + beta|10>) / sqrt(1 - |gamma|^2)``.
    """
    _w_family(p)
    flip = p.family == "II"
    sep_bits, a_bits, b_bits = ("00", "01", "10") if flip else ("11", "10", "01")
    sep_ket = _two_qubit_ket(sep_bits)
    separable = np.outer(sep_ket, sep_ket.conj())
    s_max = abs(p.gamma) ** 2

    c_bc = concurrence(marginal(density(parametric_state(p)), "BC")).concurrence
    rest = 1.0 - s_max
    if rest <= 1e-15:
        return LewensteinDecomposition(1.0, separable, None, c_bc)
    ent = (p.alpha * _two_qubit_ket(a_bits) + p.beta * _two_qubit_ket(b_bits)) / math.sqrt(rest)
    return LewensteinDecomposition(float(s_max), separable, ent, c_bc)


__all__ = [
    "ENTANGLEMENT_TOL",
    "LewensteinDecomposition",
    "PairEntanglement",
    "TangleResult",
    "TsallisResult",
    "closed_form_concurrences",
    "closed_form_marginal_spectra",
    "closed_form_ppt_spectrum",
    "closed_form_spinflip_products",
    "concurrence",
    "conditional_from_entropies",
    "conditional_tsallis",
    "lewenstein_bc",
    "ppt_test",
    "three_tangle",
    "tsallis_entropy",
]
