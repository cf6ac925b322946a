"""Subspace-preserving (SP) maps on two-block decompositions.

A CPM is subspace preserving when it moves no weight between the two blocks
of the source and target decompositions.  Four independent characterizations
are implemented as verifiers and must always agree:

* ``definition`` -- cross-block traces vanish on block-supported inputs.
* ``blocks``     -- every Kraus operator has vanishing cross-blocks.
* ``commutation``-- P_ti phi(Q) P_tj = phi(P_si Q P_sj) for all block pairs.
* ``trace``      -- block weights are conserved (trace-preserving maps only).

SP maps are generated exhaustively by triples (block1, block2, cross) of
coefficient blocks whose assembled matrix is positive semi-definite; the
triple occupies the only nonzero part of the channel's coefficient matrix.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator

import numpy as np

from .cpm import (
    ChoiRep,
    KrausRep,
    apply,
    choi_to_kraus,
    is_trace_preserving,
    kraus_rank,
    kraus_to_choi,
)
from .errors import (
    ConditionsViolatedError,
    DimensionMismatchError,
    NotSPError,
    NotTracePreservingError,
    ResidualOffBlockError,
    SingularMatrixError,
    SingularNormalizerError,
)
from .linalg import (
    DEFAULT_RTOL,
    DEFAULT_TOL,
    block_psd_failure,
    frobenius,
    frozen_matrix,
    inv_sqrt_psd,
)
from .spaces import DecomposedSpace, embed_block_operator


@dataclass(frozen=True)
class SPBlockRep:
    """An SP map as coefficient blocks over the two intra-block operator bases.

    ``block1`` is the coefficient matrix over the matrix units of maps
    block 1 -> block 1 (size K = d_s1 * d_t1), ``block2`` the analogue for
    block 2 (size L = d_s2 * d_t2), and ``cross`` (K x L) couples the two.
    Valid triples are exactly those for which the assembled matrix
    [[block1, cross], [cross†, block2]] is positive semi-definite.
    """

    source: DecomposedSpace
    target: DecomposedSpace
    block1: np.ndarray
    block2: np.ndarray
    cross: np.ndarray

    def __post_init__(self) -> None:
        k = self.source.d1 * self.target.d1
        l = self.source.d2 * self.target.d2
        b1 = frozen_matrix(self.block1)
        b2 = frozen_matrix(self.block2)
        cr = frozen_matrix(self.cross)
        if b1.shape != (k, k) or b2.shape != (l, l) or cr.shape != (k, l):
            raise DimensionMismatchError(
                f"blocks have shapes {b1.shape}/{b2.shape}/{cr.shape}, "
                f"expected {(k, k)}/{(l, l)}/{(k, l)}"
            )
        object.__setattr__(self, "block1", b1)
        object.__setattr__(self, "block2", b2)
        object.__setattr__(self, "cross", cr)


def _block_indices(
    source: DecomposedSpace, target: DecomposedSpace
) -> tuple[np.ndarray, np.ndarray]:
    """Positions of the two intra-block matrix-unit bases inside the full
    row-major matrix-unit basis of maps source -> target."""
    ds = source.dim
    idx1 = np.array(
        [i * ds + j for i in range(target.d1) for j in range(source.d1)]
    )
    idx2 = np.array(
        [i * ds + j for i in range(target.d1, target.dim) for j in range(source.d1, ds)]
    )
    return idx1, idx2


def _matrix_units(d: int) -> Iterator[tuple[int, int, np.ndarray]]:
    for i in range(d):
        for j in range(d):
            unit = np.zeros((d, d), dtype=np.complex128)
            unit[i, j] = 1.0
            yield i, j, unit


def definition_violation(rep: KrausRep) -> tuple[float, str]:
    """Worst cross-block trace leakage over a spanning set of block inputs.

    By linearity, checking all matrix units of each block subspace is
    equivalent to checking every operator supported on that block.
    """
    projectors = {1: rep.target.projector(1), 2: rep.target.projector(2)}
    worst, label = 0.0, "no cross-block leakage"
    for src_block, tgt_block in ((2, 1), (1, 2)):
        for i, j, unit in _matrix_units(rep.source.block_dim(src_block)):
            q = embed_block_operator(unit, rep.source, rep.source, src_block, src_block)
            residual = abs(np.trace(projectors[tgt_block] @ apply(rep, q)))
            if residual > worst:
                worst = residual
                label = (
                    f"Tr(P_t{tgt_block} phi(E[{i},{j}] on source block {src_block}))"
                )
    return worst, label


def is_sp_definition(rep: KrausRep, tol: float = DEFAULT_TOL) -> bool:
    """Weight-leakage test straight from the defining conditions."""
    return definition_violation(rep)[0] <= tol


def kraus_blocks_violation(rep: KrausRep) -> tuple[float, str]:
    """Worst relative cross-block component over the Kraus operators."""
    ps1, ps2 = rep.source.projector(1), rep.source.projector(2)
    pt1, pt2 = rep.target.projector(1), rep.target.projector(2)
    worst, label = 0.0, "no cross-block component"
    for k, op in enumerate(rep.ops):
        scale = max(1.0, frobenius(op))
        for ti, sj, pt, ps in ((2, 1, pt2, ps1), (1, 2, pt1, ps2)):
            residual = frobenius(pt @ op @ ps) / scale
            if residual > worst:
                worst = residual
                label = f"||P_t{ti} V[{k}] P_s{sj}||_F / max(1, ||V[{k}]||_F)"
    return worst, label


def is_sp_kraus_blocks(rep: KrausRep, tol: float = DEFAULT_TOL) -> bool:
    """Kraus-operator test: every operator splits into two block-supported
    pieces, V_k = P_t1 V_k P_s1 + P_t2 V_k P_s2."""
    return kraus_blocks_violation(rep)[0] <= tol


def split_kraus_blocks(
    rep: KrausRep, tol: float = DEFAULT_TOL
) -> tuple[list[np.ndarray], list[np.ndarray]]:
    """Split each Kraus operator into its two block-supported pieces."""
    if not is_sp_kraus_blocks(rep, tol):
        raise NotSPError("channel has cross-block Kraus components above tolerance")
    ps1, ps2 = rep.source.projector(1), rep.source.projector(2)
    pt1, pt2 = rep.target.projector(1), rep.target.projector(2)
    first = [pt1 @ op @ ps1 for op in rep.ops]
    second = [pt2 @ op @ ps2 for op in rep.ops]
    return first, second


def commutation_violation(rep: KrausRep) -> tuple[float, str]:
    """Worst residual of P_ti phi(Q) P_tj = phi(P_si Q P_sj) over all block
    pairs and all matrix units Q of the source space.

    For a matrix unit Q = E[a, b], the sandwiched input P_si Q P_sj is
    exactly Q or exactly zero, so one channel application per unit suffices.
    """
    source, target = rep.source, rep.target
    pt = {1: target.projector(1), 2: target.projector(2)}
    zero = np.zeros((target.dim, target.dim), dtype=np.complex128)
    worst, label = 0.0, "all block identities hold"
    for a, b, unit in _matrix_units(source.dim):
        image = apply(rep, unit)
        block_a = 1 if a < source.d1 else 2
        block_b = 1 if b < source.d1 else 2
        for i in (1, 2):
            for j in (1, 2):
                lhs = pt[i] @ image @ pt[j]
                rhs = image if (i == block_a and j == block_b) else zero
                residual = frobenius(lhs - rhs)
                if residual > worst:
                    worst = residual
                    label = f"P_t{i} phi(E[{a},{b}]) P_t{j} vs phi(P_s{i} E[{a},{b}] P_s{j})"
    return worst, label


def _reconstruction_residual(rep: KrausRep) -> float:
    """Worst residual of phi(Q) = sum_ij P_ti phi(P_si Q P_sj) P_tj on the
    matrix units of the source space."""
    source, target = rep.source, rep.target
    pt = {1: target.projector(1), 2: target.projector(2)}
    worst = 0.0
    for a, b, unit in _matrix_units(source.dim):
        image = apply(rep, unit)
        block_a = 1 if a < source.d1 else 2
        block_b = 1 if b < source.d1 else 2
        recon = pt[block_a] @ image @ pt[block_b]
        worst = max(worst, frobenius(image - recon))
    return worst


def is_sp_commutation(rep: KrausRep, tol: float = DEFAULT_TOL) -> bool:
    """Block-commutation test over a spanning set of inputs."""
    ok = commutation_violation(rep)[0] <= tol
    if ok:
        # the four block identities force the reconstruction identity
        assert _reconstruction_residual(rep) <= 4.0 * tol + 1e-12
    return ok


def trace_violation(rep: KrausRep) -> tuple[float, str, float]:
    """Worst residuals of the two block-weight conservation identities.

    Returns (block-1 residual, label of the worst block-1 identity,
    block-2 residual); for trace-preserving channels the two residuals agree
    up to the trace-preservation defect.
    """
    source, target = rep.source, rep.target
    pt1, pt2 = target.projector(1), target.projector(2)
    worst1, worst2 = 0.0, 0.0
    label = "block weights conserved"
    for a, b, unit in _matrix_units(source.dim):
        image = apply(rep, unit)
        in1 = 1.0 if (a == b and a < source.d1) else 0.0
        in2 = 1.0 if (a == b and a >= source.d1) else 0.0
        r1 = abs(np.trace(pt1 @ image) - in1)
        r2 = abs(np.trace(pt2 @ image) - in2)
        if r1 > worst1:
            worst1 = r1
            label = f"Tr(P_t1 phi(E[{a},{b}])) vs Tr(P_s1 E[{a},{b}])"
        worst2 = max(worst2, r2)
    return worst1, label, worst2


def is_sp_trace(rep: KrausRep, tol: float = DEFAULT_TOL) -> bool:
    """Block-weight conservation test; only defined for trace-preserving maps."""
    if not is_trace_preserving(rep, tol):
        raise NotTracePreservingError(
            "trace verifier requires a trace-preserving channel"
        )
    worst1, _, worst2 = trace_violation(rep)
    ok = worst1 <= tol
    if ok:
        # trace preservation forces the block-2 identity from the block-1 one
        assert worst2 <= 2.0 * tol + 1e-12
    return ok


def sp_from_blocks(blocks: SPBlockRep, tol: float = DEFAULT_TOL) -> ChoiRep:
    """Assemble the coefficient matrix of the SP map defined by a block triple.

    The triple is placed on the two intra-block basis slots; all other
    entries are zero.  Every SP map arises from exactly one valid triple.
    """
    failure = block_psd_failure(blocks.block1, blocks.block2, blocks.cross, tol)
    if failure is not None:
        raise ConditionsViolatedError(failure)
    m = blocks.source.dim * blocks.target.dim
    full = np.zeros((m, m), dtype=np.complex128)
    idx1, idx2 = _block_indices(blocks.source, blocks.target)
    full[np.ix_(idx1, idx1)] = blocks.block1
    full[np.ix_(idx1, idx2)] = blocks.cross
    full[np.ix_(idx2, idx1)] = blocks.cross.conj().T
    full[np.ix_(idx2, idx2)] = blocks.block2
    return ChoiRep(blocks.source, blocks.target, full)


def blocks_from_sp(rep: KrausRep, tol: float = DEFAULT_TOL) -> SPBlockRep:
    """Extract the block triple of an SP channel from its coefficient matrix.

    Raises :class:`ResidualOffBlockError` if the matrix carries weight
    outside the two intra-block bases beyond tolerance.
    """
    if not is_sp_kraus_blocks(rep, tol):
        raise NotSPError("channel has cross-block Kraus components above tolerance")
    full = kraus_to_choi(rep).matrix
    idx1, idx2 = _block_indices(rep.source, rep.target)
    leak = np.array(full)
    leak[np.ix_(idx1, idx1)] = 0.0
    leak[np.ix_(idx1, idx2)] = 0.0
    leak[np.ix_(idx2, idx1)] = 0.0
    leak[np.ix_(idx2, idx2)] = 0.0
    off_mass = frobenius(leak)
    if off_mass > tol * max(1.0, frobenius(full)):
        raise ResidualOffBlockError(
            f"off-block coefficient mass {off_mass:.3e} exceeds tolerance"
        )
    return SPBlockRep(
        rep.source,
        rep.target,
        full[np.ix_(idx1, idx1)],
        full[np.ix_(idx2, idx2)],
        full[np.ix_(idx1, idx2)],
    )


def random_sp_channel(
    source: DecomposedSpace,
    target: DecomposedSpace,
    k: int,
    tp: bool,
    seed: int,
    rtol: float = DEFAULT_RTOL,
) -> KrausRep:
    """Draw a random SP channel with k Kraus operators; deterministic per seed.

    Each operator is a sum of two block-embedded matrices with independent
    complex-Gaussian entries.  With ``tp`` the list is right-normalized by
    S^(-1/2) where S = sum_k V_k† V_k; S is block diagonal, so normalization
    stays inside the SP set and makes the channel trace preserving.  If S
    stays numerically singular after 8 fresh draws (which happens when the
    block shapes cannot support a trace-preserving channel at this k), a
    :class:`SingularNormalizerError` is raised.
    """
    if k < 1:
        raise ValueError("need at least one Kraus operator")
    rng = np.random.default_rng(seed)

    def crandn(rows: int, cols: int) -> np.ndarray:
        return rng.standard_normal((rows, cols)) + 1j * rng.standard_normal((rows, cols))

    for _ in range(8):
        ops = []
        for _ in range(k):
            g1 = crandn(target.d1, source.d1)
            g2 = crandn(target.d2, source.d2)
            ops.append(
                embed_block_operator(g1, source, target, 1, 1)
                + embed_block_operator(g2, source, target, 2, 2)
            )
        if not tp:
            return KrausRep(source, target, tuple(ops))
        s = np.zeros((source.dim, source.dim), dtype=np.complex128)
        for op in ops:
            s += op.conj().T @ op
        try:
            normalizer = inv_sqrt_psd(s, rtol)
        except SingularMatrixError:
            continue
        return KrausRep(source, target, tuple(op @ normalizer for op in ops))
    raise SingularNormalizerError(
        "trace-preserving normalizer stayed singular after 8 attempts"
    )


def sp_kraus_bound_holds(
    rep: KrausRep, tol: float = DEFAULT_TOL, rtol: float = DEFAULT_RTOL
) -> bool:
    """Whether the Kraus rank respects the SP bound d_s1*d_t1 + d_s2*d_t2.

    The bound is the size of the assembled block triple, which is the only
    nonzero part of an SP channel's coefficient matrix.
    """
    if not is_sp_kraus_blocks(rep, tol):
        raise NotSPError("bound applies to subspace-preserving channels only")
    bound = rep.source.d1 * rep.target.d1 + rep.source.d2 * rep.target.d2
    return kraus_rank(rep, rtol) <= bound
