"""Dense complex linear-algebra kernel.

Hermitian eigendecomposition, Moore-Penrose pseudo-inverse of Hermitian
matrices, positivity predicates (including the Schur-complement test for
2x2 block matrices), Gram matrices, Kronecker products and the partial
trace over an ancilla factor.

All functions accept anything convertible to a 2-D complex array and return
fresh ``complex128`` arrays.  Matrices here are small (dimension tens, not
thousands), so everything is done by direct eigendecomposition; determinism
for identical input bits matters more than speed.
"""

from __future__ import annotations

from typing import NamedTuple, Optional, Sequence

import numpy as np

from .errors import (
    DimensionMismatchError,
    EmptySetError,
    NotHermitianError,
    NotSquareError,
    ShapeMismatchError,
    SingularMatrixError,
)

#: Default tolerance for positivity and residual checks.
DEFAULT_TOL = 1e-9
#: Default relative cutoff for rank decisions (pseudo-inverse, Kraus rank).
DEFAULT_RTOL = 1e-10


def as_matrix(m) -> np.ndarray:
    """Coerce ``m`` to a fresh 2-D complex128 array with finite entries."""
    arr = np.array(m, dtype=np.complex128)
    if arr.ndim != 2:
        raise ShapeMismatchError(f"expected a 2-D matrix, got ndim={arr.ndim}")
    if not np.all(np.isfinite(arr)):
        raise ValueError("matrix entries must be finite")
    return arr


def frozen_matrix(m) -> np.ndarray:
    """Like :func:`as_matrix`, but the result is marked read-only."""
    arr = as_matrix(m)
    arr.setflags(write=False)
    return arr


def frobenius(m: np.ndarray) -> float:
    """Frobenius norm."""
    return float(np.linalg.norm(m))


def _require_square(m: np.ndarray) -> None:
    if m.shape[0] != m.shape[1]:
        raise NotSquareError(f"expected a square matrix, got shape {m.shape}")


def _asymmetry(m: np.ndarray) -> float:
    return frobenius(m - m.conj().T)


class HermitianEig(NamedTuple):
    """Eigendecomposition M = V diag(w) V† of a Hermitian matrix.

    ``eigenvalues`` is real and ascending; the columns of ``eigenvectors``
    are the corresponding orthonormal eigenvectors.
    """

    eigenvalues: np.ndarray
    eigenvectors: np.ndarray


def hermitian_eig(m, tol: float = DEFAULT_TOL) -> HermitianEig:
    """Eigendecomposition of a Hermitian matrix.

    The input is symmetrized as (M + M†)/2 before decomposition, which
    removes roundoff asymmetry without changing an input that is Hermitian
    in exact arithmetic.  Asymmetry beyond ``tol * max(1, ||M||_F)`` raises
    :class:`NotHermitianError`.
    """
    arr = as_matrix(m)
    _require_square(arr)
    asym = _asymmetry(arr)
    if asym > tol * max(1.0, frobenius(arr)):
        raise NotHermitianError(
            f"matrix is not Hermitian within tol={tol:g} (asymmetry {asym:.3e})"
        )
    sym = (arr + arr.conj().T) / 2.0
    eigenvalues, eigenvectors = np.linalg.eigh(sym)
    return HermitianEig(eigenvalues, eigenvectors)


def pseudo_inverse(b, rtol: float = DEFAULT_RTOL) -> np.ndarray:
    """Moore-Penrose pseudo-inverse of a Hermitian matrix.

    Eigenvalues of magnitude at most ``rtol * max(1, max|eigenvalue|)`` are
    treated as exact zeros; the remaining ones are inverted on their
    eigenspaces.  Only Hermitian inputs are supported.
    """
    w, v = hermitian_eig(b, tol=rtol)
    cutoff = rtol * max(1.0, float(np.max(np.abs(w))))
    inv = np.zeros_like(w)
    keep = np.abs(w) > cutoff
    inv[keep] = 1.0 / w[keep]
    return (v * inv) @ v.conj().T


def zero_space_projector(a, rtol: float = DEFAULT_RTOL) -> np.ndarray:
    """Orthogonal projector onto the kernel of a Hermitian matrix: I - A A^+."""
    arr = as_matrix(a)
    _require_square(arr)
    return np.eye(arr.shape[0], dtype=np.complex128) - arr @ pseudo_inverse(arr, rtol)


def is_psd(m, tol: float = DEFAULT_TOL) -> bool:
    """Whether ``m`` is Hermitian and positive semi-definite within ``tol``.

    Hermiticity requires ``||M - M†||_F <= tol * max(1, ||M||_F)``; the
    eigenvalue floor is ``-tol * max(1, max|eigenvalue|)``.
    """
    arr = as_matrix(m)
    _require_square(arr)
    if _asymmetry(arr) > tol * max(1.0, frobenius(arr)):
        return False
    w = np.linalg.eigvalsh((arr + arr.conj().T) / 2.0)
    scale = max(1.0, float(np.max(np.abs(w))))
    return bool(w[0] >= -tol * scale)


def block_psd_failure(a, b, c, tol: float = DEFAULT_TOL) -> Optional[str]:
    """Name of the first failed positivity condition for [[A, C], [C†, B]].

    Returns ``None`` when the assembled block matrix is positive
    semi-definite.  The conditions checked are: A >= 0, B >= 0, C supported
    inside the ranges of A and B, and the Schur complement A - C B^+ C†
    positive semi-definite.  The diagonal-block checks make the verdict
    match assembled-matrix positivity even for indefinite A or B.
    """
    a = as_matrix(a)
    b = as_matrix(b)
    c = as_matrix(c)
    if a.shape[0] != a.shape[1] or b.shape[0] != b.shape[1]:
        raise DimensionMismatchError("diagonal blocks must be square")
    if c.shape != (a.shape[0], b.shape[0]):
        raise DimensionMismatchError(
            f"coupling block has shape {c.shape}, expected {(a.shape[0], b.shape[0])}"
        )
    if not is_psd(a, tol):
        return "upper-left block is not positive semi-definite"
    if not is_psd(b, tol):
        return "lower-right block is not positive semi-definite"
    scale = max(1.0, frobenius(c))
    if frobenius(zero_space_projector(a, tol) @ c) > tol * scale:
        return "coupling block has support on the kernel of the upper-left block"
    if frobenius(c @ zero_space_projector(b, tol)) > tol * scale:
        return "coupling block has support on the kernel of the lower-right block"
    schur = a - c @ pseudo_inverse(b, tol) @ c.conj().T
    if not is_psd(schur, tol):
        return "Schur complement is not positive semi-definite"
    return None


def block_psd_check(a, b, c, tol: float = DEFAULT_TOL) -> bool:
    """Positivity of the assembled block matrix [[A, C], [C†, B]].

    Decided through kernel-support and Schur-complement conditions rather
    than by assembling the full matrix, so the two routes can cross-check
    each other.
    """
    return block_psd_failure(a, b, c, tol) is None


def gram_matrix(ops: Sequence) -> np.ndarray:
    """Gram matrix G[m, m'] = Tr(V_m† V_m') under the Hilbert-Schmidt inner
    product.  Positive definite exactly when the operator set is linearly
    independent."""
    if len(ops) == 0:
        raise EmptySetError("operator set is empty")
    mats = [as_matrix(op) for op in ops]
    shape = mats[0].shape
    for mat in mats[1:]:
        if mat.shape != shape:
            raise ShapeMismatchError(
                f"operators have mixed shapes {shape} and {mat.shape}"
            )
    stacked = np.stack([mat.ravel() for mat in mats])
    return stacked.conj() @ stacked.T


def tensor(a, b) -> np.ndarray:
    """Kronecker product.  The left factor carries the slow (system) index,
    the right factor the fast (ancilla) index."""
    return np.kron(as_matrix(a), as_matrix(b))


def partial_trace_ancilla(m, d_sys: int, d_anc: int) -> np.ndarray:
    """Trace out the fast (ancilla) factor of an operator on system x ancilla."""
    arr = as_matrix(m)
    n = d_sys * d_anc
    if arr.shape != (n, n):
        raise DimensionMismatchError(
            f"operator has shape {arr.shape}, expected {(n, n)} for dims ({d_sys}, {d_anc})"
        )
    return arr.reshape(d_sys, d_anc, d_sys, d_anc).trace(axis1=1, axis2=3)


def inv_sqrt_psd(m, rtol: float = DEFAULT_RTOL) -> np.ndarray:
    """Inverse square root M^(-1/2) of a Hermitian positive definite matrix.

    Raises :class:`SingularMatrixError` unless the smallest eigenvalue
    exceeds ``rtol`` times the largest.
    """
    w, v = hermitian_eig(m, tol=rtol)
    wmax = float(w[-1])
    if wmax <= 0.0 or float(w[0]) <= rtol * wmax:
        raise SingularMatrixError("matrix is not positive definite at the given cutoff")
    inv_sqrt = (v * (1.0 / np.sqrt(w))) @ v.conj().T
    # symmetrize so the result is Hermitian to the last bit
    return (inv_sqrt + inv_sqrt.conj().T) / 2.0
