"""
Dense complex matrix kernel for one, two and three qubits.

Matrices are plain ``numpy`` complex arrays. Three-qubit objects use the
computational basis index ``4*a + 2*b + c`` for ``|abc>``, so qubit A is the
most significant bit and ``1`` stands for spin up.

Marginals keep the surviving qubits in ascending label order (AB, AC, BC).
"""

from __future__ import annotations

import numpy as np
import numpy.typing as npt

from .errors import InvalidInputError, NumericalError

ComplexMatrix = npt.NDArray[np.complex128]

QUBITS = ("A", "B", "C")
PAIRS = ("AB", "AC", "BC")

HERMITIAN_TOL = 1e-10
DENSITY_HERMITIAN_TOL = 1e-12
TRACE_TOL = 1e-12
PSD_TOL = 1e-10
# Eigenvalues of a density matrix below this are treated as round-off when
# building the weighted eigenvector factor used by the spin-flip spectrum.
RANK_TOL = 1e-14

SIGMA_I = np.eye(2, dtype=complex)
SIGMA_X = np.array([[0, 1], [1, 0]], dtype=complex)
SIGMA_Y = np.array([[0, -1j], [1j, 0]], dtype=complex)
SIGMA_Z = np.array([[1, 0], [0, -1]], dtype=complex)
PAULIS = (SIGMA_X, SIGMA_Y, SIGMA_Z)

# contraction patterns over the (a, b, c, a', b', c') reshaped density matrix
_TRACE_OUT = {
    "A": "xbcxef->bcef",
    "B": "axcdxf->acdf",
    "C": "abxdex->abde",
}
_KEEP_ONE = {
    "A": "abcdbc->ad",
    "B": "abcaec->be",
    "C": "abcabf->cf",
}


def as_matrix(m) -> ComplexMatrix:
    """Coerce ``m`` to a finite square complex matrix."""
    arr = np.asarray(m, dtype=complex)
    if arr.ndim != 2 or arr.shape[0] != arr.shape[1] or arr.shape[0] < 1:
        raise InvalidInputError(f"expected a square matrix, got shape {arr.shape}")
    if not np.all(np.isfinite(arr)):
        raise InvalidInputError("matrix has non-finite entries")
    return arr


def is_hermitian(m, tol: float = HERMITIAN_TOL) -> bool:
    m = np.asarray(m)
    return bool(np.max(np.abs(m - m.conj().T)) <= tol)


def check_density(rho, dim: int | None = None) -> ComplexMatrix:
    """
    Validate a density matrix and return it as a complex array.

    Raises
    ------
    InvalidInputError
        On wrong dimension, non-Hermiticity (> 1e-12), trace off by more than
        1e-12, or an eigenvalue below -1e-10.
    """
    rho = as_matrix(rho)
    if dim is not None and rho.shape[0] != dim:
        raise InvalidInputError(f"expected a {dim}x{dim} density matrix, got {rho.shape}")
    if not is_hermitian(rho, DENSITY_HERMITIAN_TOL):
        raise InvalidInputError("density matrix is not Hermitian")
    if abs(np.trace(rho) - 1) > TRACE_TOL:
        raise InvalidInputError(f"density matrix trace is {np.trace(rho).real!r}, not 1")
    if np.linalg.eigvalsh(rho)[0] < -PSD_TOL:
        raise InvalidInputError("density matrix is not positive semidefinite")
    return rho


def tensor_product(a, b) -> ComplexMatrix:
    """Kronecker product; block ``(i, j)`` of the result is ``a[i, j] * b``."""
    return np.kron(as_matrix(a), as_matrix(b))


def kron_all(*factors) -> ComplexMatrix:
    out = np.eye(1, dtype=complex)
    for f in factors:
        out = tensor_product(out, f)
    return out


def _three_qubit(rho) -> ComplexMatrix:
    rho = as_matrix(rho)
    if rho.shape != (8, 8):
        raise InvalidInputError(f"expected an 8x8 three-qubit matrix, got {rho.shape}")
    return rho


def _qubit_label(label: str, allowed) -> str:
    label = str(label).upper()
    if label not in allowed:
        raise InvalidInputError(f"unknown label {label!r}; expected one of {allowed}")
    return label


def partial_trace(rho, traced: str) -> ComplexMatrix:
    """
    Trace one qubit out of a three-qubit density matrix.

    Parameters
    ----------
    rho : array_like, shape (8, 8)
    traced : {"A", "B", "C"}
        Qubit to discard. The result is the marginal on the other two, in
        ascending label order; e.g. ``traced="B"`` gives ``rho_AC``.
    """
    rho = _three_qubit(rho)
    traced = _qubit_label(traced, QUBITS)
    t = rho.reshape((2,) * 6)
    return np.einsum(_TRACE_OUT[traced], t).reshape(4, 4)


def partial_trace_single(rho, kept: str) -> ComplexMatrix:
    """Single-qubit marginal of ``kept`` from a three-qubit density matrix."""
    rho = _three_qubit(rho)
    kept = _qubit_label(kept, QUBITS)
    t = rho.reshape((2,) * 6)
    return np.einsum(_KEEP_ONE[kept], t)


def marginal(rho, keep: str) -> ComplexMatrix:
    """Marginal on the qubits named in ``keep`` ("AB", "C", ...)."""
    keep = str(keep).upper()
    if keep in PAIRS:
        (traced,) = set(QUBITS) - set(keep)
        return partial_trace(rho, traced)
    return partial_trace_single(rho, keep)


def partial_transpose(rho, side: str = "second") -> ComplexMatrix:
    """
    Transpose the indices of one qubit of a two-qubit matrix.

    For ``side="second"``: ``out[(m,mu),(n,nu)] = rho[(m,nu),(n,mu)]``.
    """
    rho = as_matrix(rho)
    if rho.shape != (4, 4):
        raise InvalidInputError(f"expected a 4x4 two-qubit matrix, got {rho.shape}")
    t = rho.reshape(2, 2, 2, 2)
    if side == "second":
        out = t.transpose(0, 3, 2, 1)
    elif side == "first":
        out = t.transpose(2, 1, 0, 3)
    else:
        raise InvalidInputError(f"side must be 'first' or 'second', got {side!r}")
    return out.reshape(4, 4).copy()


def _eigh(m) -> tuple[np.ndarray, ComplexMatrix]:
    m = as_matrix(m)
    if not is_hermitian(m):
        raise InvalidInputError("matrix is not Hermitian within 1e-10")
    # symmetrize so LAPACK sees exactly the Hermitian part
    h = 0.5 * (m + m.conj().T)
    try:
        w, v = np.linalg.eigh(h)
    except np.linalg.LinAlgError as exc:
        raise NumericalError(f"eigensolver did not converge: {exc}") from exc
    return w, v


def hermitian_eigh(m) -> tuple[np.ndarray, ComplexMatrix]:
    """Eigenvalues (descending) and matching eigenvector columns."""
    w, v = _eigh(m)
    return w[::-1].copy(), v[:, ::-1].copy()


def hermitian_eigenvalues(m) -> np.ndarray:
    """Real eigenvalues of a Hermitian matrix, sorted descending."""
    return hermitian_eigh(m)[0]


def _clamped_spectrum(rho) -> tuple[np.ndarray, ComplexMatrix]:
    w, v = _eigh(rho)
    if w[0] < -PSD_TOL:
        raise NumericalError(f"eigenvalue {w[0]:.3e} is below the PSD tolerance")
    return np.clip(w, 0.0, 1.0), v


def matrix_power(rho, q: float) -> ComplexMatrix:
    """
    ``rho**q`` for a density matrix via its eigendecomposition.

    Eigenvalues are clamped to ``[0, 1]`` first, and ``0**q`` is 0.
    """
    if not q > 0:
        raise InvalidInputError(f"q must be positive, got {q!r}")
    w, v = _clamped_spectrum(rho)
    wq = np.where(w > 0, w, 0.0) ** q
    return (v * wq) @ v.conj().T


SPIN_FLIP = np.kron(SIGMA_Y, SIGMA_Y)


def spin_flip(rho) -> ComplexMatrix:
    """Wootters' spin-flipped matrix ``(sy x sy) rho* (sy x sy)``."""
    rho = as_matrix(rho)
    return SPIN_FLIP @ rho.conj() @ SPIN_FLIP


def spinflip_sqrt_spectrum(rho) -> np.ndarray:
    """
    Square roots of the eigenvalues of ``rho @ spin_flip(rho)``, descending.

    Computed as the singular values of ``V.T @ (sy x sy) @ V`` where
    ``rho = V V^dagger`` is the eigenvalue-weighted eigenvector factor. The
    nonzero eigenvalues of ``rho rho~`` are the squared singular values of that
    matrix, and the singular values carry absolute rather than square-root
    error, so null directions stay at zero instead of ~1e-8.
    """
    rho = check_density(rho, 4)
    w, v = _clamped_spectrum(rho)
    keep = w > RANK_TOL
    factor = v[:, keep] * np.sqrt(w[keep])
    sv = np.linalg.svd(factor.T @ SPIN_FLIP @ factor, compute_uv=False)
    out = np.zeros(4)
    out[: sv.size] = sv
    return np.sort(out)[::-1]
