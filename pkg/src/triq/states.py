"""
Three-qubit pure states built from the composition of three spin-1/2 particles.

The sixteen named states are the quartet (Q1, Q2), the two doublets (D1, D2)
and the eight derived entangled states GHZ, GFR, WRR, WRr, each with a ``+``
and ``-`` member. For every class except GHZ the ``-`` member is the global
spin flip of the ``+`` member (every bit inverted). The flip leaves GHZ+ and
GHZ- fixed; they are instead related by sigma_z on a single qubit.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from enum import Enum

import numpy as np
import numpy.typing as npt

from .errors import InvalidInputError
from .linalg import PAIRS

PureState = npt.NDArray[np.complex128]

NORM_TOL = 1e-12
SYMMETRY_TOL = 1e-9

CANONICAL_NAMES = (
    "Q1+", "Q1-", "Q2+", "Q2-", "D1+", "D1-", "D2+", "D2-",
    "GHZ+", "GHZ-", "GFR+", "GFR-", "WRR+", "WRR-", "WRr+", "WRr-",
)
SPIN_BASIS = CANONICAL_NAMES[:8]
ENTANGLED_EIGHT = CANONICAL_NAMES[8:]


class SymmetryTag(str, Enum):
    S = "S"
    AS = "AS"
    NS = "NS"

    def __str__(self) -> str:
        return self.value


def ket(bits: str) -> PureState:
    """Computational basis vector ``|bits>``; ``ket("110")`` is index 6."""
    if len(bits) != 3 or set(bits) - {"0", "1"}:
        raise InvalidInputError(f"expected three bits, got {bits!r}")
    v = np.zeros(8, dtype=complex)
    v[int(bits, 2)] = 1.0
    return v


def _combo(*terms: tuple[float, str]) -> PureState:
    return sum(c * ket(b) for c, b in terms)


def spin_flip_state(state) -> PureState:
    """Invert every qubit: amplitude of ``|abc>`` moves to ``|(1-a)(1-b)(1-c)>``."""
    return as_state(state)[::-1].copy()


def _plus_states() -> dict[str, PureState]:
    r2, r3, r6 = math.sqrt(2), math.sqrt(3), math.sqrt(6)
    q1 = ket("111")
    q2 = _combo((1 / r3, "110"), (1 / r3, "101"), (1 / r3, "011"))
    d1 = _combo((1 / r6, "110"), (1 / r6, "101"), (-2 / r6, "011"))
    d2 = _combo((1 / r2, "110"), (-1 / r2, "101"))
    return {"Q1": q1, "Q2": q2, "D1": d1, "D2": d2}


def _build_table() -> dict[str, PureState]:
    plus = _plus_states()
    table: dict[str, PureState] = {}
    for key, vec in plus.items():
        table[key + "+"] = vec
        table[key + "-"] = vec[::-1].copy()
    r2 = math.sqrt(2)
    table["GHZ+"] = (table["Q1+"] + table["Q1-"]) / r2
    table["GHZ-"] = (table["Q1+"] - table["Q1-"]) / r2
    for sign in "+-":
        table["GFR" + sign] = table["D2" + sign]
        table["WRR" + sign] = table["Q2" + sign]
        table["WRr" + sign] = table["D1" + sign]
    for vec in table.values():
        vec.setflags(write=False)
    return table


_STATES = _build_table()


def parse_name(text: str) -> str:
    """
    Resolve a user-supplied state tag to its canonical spelling.

    Matching is case-insensitive and accepts a Unicode minus. WRR and WRr
    differ only by case, so for those a case-insensitive match is ambiguous and
    the exact spelling is required.
    """
    raw = str(text).strip().replace("−", "-")
    if raw in _STATES:
        return raw
    hits = [n for n in CANONICAL_NAMES if n.lower() == raw.lower()]
    if len(hits) == 1:
        return hits[0]
    if hits:
        raise InvalidInputError(
            f"state name {text!r} is ambiguous between {', '.join(hits)}; use the exact case"
        )
    raise InvalidInputError(f"unknown state {text!r}")


def canonical_state(name: str) -> PureState:
    return _STATES[parse_name(name)].copy()


def as_state(state) -> PureState:
    """Validate an 8-amplitude normalized vector."""
    v = np.asarray(state, dtype=complex).reshape(-1)
    if v.shape != (8,):
        raise InvalidInputError(f"a three-qubit state needs 8 amplitudes, got {v.size}")
    if not np.all(np.isfinite(v)):
        raise InvalidInputError("state has non-finite amplitudes")
    if abs(np.vdot(v, v).real - 1) > NORM_TOL:
        raise InvalidInputError("state is not normalized")
    return v


@dataclass(frozen=True)
class ParametricParams:
    """
    Coefficients of one of the three parametric families.

    family I:   alpha|110> + beta|101> + gamma|011>
    family II:  alpha|001> + beta|010> + gamma|100>   (spin flip of family I)
    family III: alpha|111> + beta|000>                (gamma must be None)
    """

    family: str
    alpha: complex
    beta: complex
    gamma: complex | None = None

    def __post_init__(self):
        if self.family not in FAMILY_KETS:
            raise InvalidInputError(f"family must be I, II or III, got {self.family!r}")
        if self.family == "III":
            if self.gamma is not None:
                raise InvalidInputError("family III takes no gamma")
        elif self.gamma is None:
            raise InvalidInputError(f"family {self.family} requires gamma")
        if abs(sum(abs(c) ** 2 for c in self.coefficients) - 1) > NORM_TOL:
            raise InvalidInputError("parametric coefficients are not normalized")

    @property
    def coefficients(self) -> tuple[complex, ...]:
        if self.family == "III":
            return (self.alpha, self.beta)
        return (self.alpha, self.beta, self.gamma)


FAMILY_KETS = {
    "I": ("110", "101", "011"),
    "II": ("001", "010", "100"),
    "III": ("111", "000"),
}

# documented parameter choices that reproduce the canonical states
_R2, _R3, _R6 = math.sqrt(2), math.sqrt(3), math.sqrt(6)
CANONICAL_PARAMS = {
    "WRR+": ParametricParams("I", 1 / _R3, 1 / _R3, 1 / _R3),
    "WRr+": ParametricParams("I", 1 / _R6, 1 / _R6, -2 / _R6),
    "GFR+": ParametricParams("I", 1 / _R2, -1 / _R2, 0.0),
    "WRR-": ParametricParams("II", 1 / _R3, 1 / _R3, 1 / _R3),
    "WRr-": ParametricParams("II", 1 / _R6, 1 / _R6, -2 / _R6),
    "GFR-": ParametricParams("II", 1 / _R2, -1 / _R2, 0.0),
    "GHZ+": ParametricParams("III", 1 / _R2, 1 / _R2),
    "GHZ-": ParametricParams("III", 1 / _R2, -1 / _R2),
}


def parametric_state(p: ParametricParams) -> PureState:
    return sum(c * ket(b) for c, b in zip(p.coefficients, FAMILY_KETS[p.family]))


def family_of(state, tol: float = SYMMETRY_TOL) -> ParametricParams | None:
    """Recover family parameters when the state's support fits a family pattern."""
    v = as_state(state)
    for family, kets in FAMILY_KETS.items():
        idx = [int(b, 2) for b in kets]
        outside = np.delete(v, idx)
        if np.linalg.norm(outside) <= tol:
            coeffs = v[idx] / np.linalg.norm(v[idx])
            return ParametricParams(family, *coeffs)
    return None


_PAIR_AXES = {"AB": (1, 0, 2), "AC": (2, 1, 0), "BC": (0, 2, 1)}


def _pair(pair: str) -> str:
    pair = str(pair).upper()
    if pair not in PAIRS:
        raise InvalidInputError(f"unknown pair {pair!r}; expected one of {PAIRS}")
    return pair


def swap_qubits(state, pair: str) -> PureState:
    """Exchange the two qubits named by ``pair`` in every basis index."""
    v = np.asarray(state, dtype=complex).reshape(2, 2, 2)
    return v.transpose(_PAIR_AXES[_pair(pair)]).reshape(8).copy()


def pair_symmetry(state, pair: str, tol: float = SYMMETRY_TOL) -> SymmetryTag:
    v = as_state(state)
    swapped = swap_qubits(v, pair)
    if np.linalg.norm(swapped - v) <= tol:
        return SymmetryTag.S
    if np.linalg.norm(swapped + v) <= tol:
        return SymmetryTag.AS
    return SymmetryTag.NS


def symmetrize(state) -> PureState:
    """
    Project onto the fully permutation-symmetric subspace (unnormalized).

    Averages the state over all six permutations of the qubits.
    """
    t = np.asarray(state, dtype=complex).reshape(2, 2, 2)
    return sum(t.transpose(p) for p in itertools.permutations(range(3))).reshape(8) / 6


def density(state) -> npt.NDArray[np.complex128]:
    """Projector ``|psi><psi|``."""
    v = as_state(state)
    return np.outer(v, v.conj())


def gram_matrix(states) -> npt.NDArray[np.complex128]:
    """Matrix of inner products ``<s_i|s_j>``."""
    cols = [np.asarray(s, dtype=complex).reshape(8) for s in states]
    if not cols:
        raise InvalidInputError("gram_matrix needs at least one state")
    v = np.stack(cols, axis=1)
    return v.conj().T @ v


def overlap(a, b) -> float:
    """``|<a|b>|``, the phase-insensitive comparison used for state identity."""
    return float(abs(np.vdot(a, b)))


def random_state(rng: np.random.Generator) -> PureState:
    """
    Haar-distributed three-qubit pure state.

    Draws 16 standard normals from ``rng``; the first 8 are real parts and the
    last 8 imaginary parts of the amplitudes for ``|000>`` .. ``|111>``.
    """
    x = rng.standard_normal(16)
    v = x[:8] + 1j * x[8:]
    return v / np.linalg.norm(v)
