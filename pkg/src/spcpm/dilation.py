"""Unitary realization of trace-preserving SP channels on a single space.

For a trace-preserving channel that is subspace preserving with identical
source and target decompositions, the channel is exact system-ancilla
unitary evolution from a fixed reference ancilla state:

    phi(Q) = Tr_anc(U (Q x |0><0|) U†),

where the unitary splits as U = V1 + V2 into two partial isometries, each
supported on one block:

    V_i V_i† = V_i† V_i = P_i x I_anc.

With a minimized Kraus list {V_k} of length K split into block pieces
V_{i,k}, each partial isometry is built on an ancilla of dimension K + 1 as

    V_i = P_i x I - P_i x |0><0| - sum_{k,k'} V_{i,k} V_{i,k'}† x |k><k'|
          + sum_k V_{i,k} x |k><0| + sum_k V_{i,k}† x |0><k|.

Trace preservation of the split list gives sum_k V_{1,k}† V_{1,k} = P_1 and
sum_k V_{2,k}† V_{2,k} = P_2, which is what makes the construction unitary.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .cpm import (
    KrausRep,
    apply,
    choi_to_kraus,
    is_trace_preserving,
    kraus_to_choi,
)
from .errors import (
    NotSPError,
    NotTracePreservingError,
    ShapeMismatchError,
    SourceTargetMismatchError,
)
from .linalg import (
    DEFAULT_RTOL,
    DEFAULT_TOL,
    frobenius,
    frozen_matrix,
    partial_trace_ancilla,
    tensor,
)
from .sp import is_sp_definition, is_sp_kraus_blocks, split_kraus_blocks
from .spaces import DecomposedSpace


@dataclass(frozen=True)
class UnitaryDilation:
    """A unitary on system x ancilla split into two block partial isometries.

    The reference ancilla state is coordinate 0; ancilla coordinate k pairs
    with the k-th Kraus operator, so ``ancilla_dim`` is one more than the
    Kraus rank of the realized channel.
    """

    space: DecomposedSpace
    ancilla_dim: int
    u: np.ndarray
    v1: np.ndarray
    v2: np.ndarray

    def __post_init__(self) -> None:
        if self.ancilla_dim < 1:
            raise ValueError("ancilla must be at least one-dimensional")
        n = self.space.dim * self.ancilla_dim
        mats = []
        for name, mat in (("u", self.u), ("v1", self.v1), ("v2", self.v2)):
            arr = frozen_matrix(mat)
            if arr.shape != (n, n):
                raise ShapeMismatchError(
                    f"{name} has shape {arr.shape}, expected {(n, n)}"
                )
            mats.append(arr)
        object.__setattr__(self, "u", mats[0])
        object.__setattr__(self, "v1", mats[1])
        object.__setattr__(self, "v2", mats[2])


def _ancilla_unit(dim: int, i: int, j: int) -> np.ndarray:
    unit = np.zeros((dim, dim), dtype=np.complex128)
    unit[i, j] = 1.0
    return unit


def build_dilation(
    rep: KrausRep, tol: float = DEFAULT_TOL, rtol: float = DEFAULT_RTOL
) -> UnitaryDilation:
    """Construct the unitary dilation of a trace-preserving SP channel.

    The Kraus list is first reduced to a linearly independent one, so the
    ancilla dimension is the minimal K + 1 for this construction.
    """
    if rep.source != rep.target:
        raise SourceTargetMismatchError(
            "dilation requires identical source and target decompositions"
        )
    if not is_trace_preserving(rep, tol):
        raise NotTracePreservingError("dilation requires a trace-preserving channel")
    if not is_sp_kraus_blocks(rep, tol):
        raise NotSPError("dilation requires a subspace-preserving channel")
    minimal = choi_to_kraus(kraus_to_choi(rep), rtol)
    split1, split2 = split_kraus_blocks(minimal, tol)
    anc = len(minimal.ops) + 1
    space = rep.source
    eye_anc = np.eye(anc, dtype=np.complex128)
    parts = []
    for block, pieces in ((1, split1), (2, split2)):
        proj = space.projector(block)
        v = tensor(proj, eye_anc) - tensor(proj, _ancilla_unit(anc, 0, 0))
        for row, piece_r in enumerate(pieces, start=1):
            for col, piece_c in enumerate(pieces, start=1):
                v -= tensor(piece_r @ piece_c.conj().T, _ancilla_unit(anc, row, col))
        for k, piece in enumerate(pieces, start=1):
            v += tensor(piece, _ancilla_unit(anc, k, 0))
            v += tensor(piece.conj().T, _ancilla_unit(anc, 0, k))
        parts.append(v)
    v1, v2 = parts
    return UnitaryDilation(space, anc, v1 + v2, v1, v2)


def apply_dilation(dil: UnitaryDilation, q) -> np.ndarray:
    """Evolve Q x |0><0| by the unitary and trace out the ancilla."""
    d = dil.space.dim
    qa = np.asarray(q, dtype=np.complex128)
    if qa.shape != (d, d):
        raise ShapeMismatchError(f"input has shape {qa.shape}, expected {(d, d)}")
    joint = tensor(qa, _ancilla_unit(dil.ancilla_dim, 0, 0))
    evolved = dil.u @ joint @ dil.u.conj().T
    return partial_trace_ancilla(evolved, d, dil.ancilla_dim)


def kraus_from_dilation(dil: UnitaryDilation) -> KrausRep:
    """Kraus operators of the induced channel, one per ancilla coordinate:
    the ancilla blocks of the unitary against the reference column."""
    d, anc = dil.space.dim, dil.ancilla_dim
    blocks = dil.u.reshape(d, anc, d, anc)
    ops = tuple(np.ascontiguousarray(blocks[:, k, :, 0]) for k in range(anc))
    return KrausRep(dil.space, dil.space, ops)


def verify_dilation(
    dil: UnitaryDilation, rep: KrausRep, tol: float = DEFAULT_TOL
) -> bool:
    """Full audit of a dilation against the channel it claims to realize.

    Checks the split U = V1 + V2, unitarity, the partial-isometry and
    block-support conditions on V1 and V2, agreement with ``rep`` on a
    spanning set of inputs, and finally that the induced channel passes the
    weight-leakage SP test (any operator pair satisfying the conditions
    realizes an SP channel, so a valid dilation must too).
    """
    if rep.source != dil.space or rep.target != dil.space:
        return False
    d, anc = dil.space.dim, dil.ancilla_dim
    n = d * anc
    eye_big = np.eye(n, dtype=np.complex128)
    if frobenius(dil.u - (dil.v1 + dil.v2)) > tol:
        return False
    if frobenius(dil.u.conj().T @ dil.u - eye_big) > tol:
        return False
    if frobenius(dil.u @ dil.u.conj().T - eye_big) > tol:
        return False
    for block, v in ((1, dil.v1), (2, dil.v2)):
        support = tensor(dil.space.projector(block), np.eye(anc))
        if frobenius(v @ v.conj().T - support) > tol:
            return False
        if frobenius(v.conj().T @ v - support) > tol:
            return False
        if frobenius(support @ v @ support - v) > tol:
            return False
    for a in range(d):
        for b in range(d):
            unit = np.zeros((d, d), dtype=np.complex128)
            unit[a, b] = 1.0
            if frobenius(apply_dilation(dil, unit) - apply(rep, unit)) > tol:
                return False
    return is_sp_definition(kraus_from_dilation(dil), tol)
