"""Two-block orthogonal decompositions of finite-dimensional Hilbert spaces.

A decomposition is a dimension split d = d1 + d2 with block 1 spanned by the
first d1 standard basis vectors and block 2 by the rest.  Arbitrary
orthogonal decompositions are handled by conjugating operators into this
coordinate convention before entering the library.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import InvalidBlockError, ShapeMismatchError
from .linalg import as_matrix


@dataclass(frozen=True)
class DecomposedSpace:
    """A Hilbert space dimension split d = d1 + d2, both blocks nonempty."""

    d1: int
    d2: int

    def __post_init__(self) -> None:
        if self.d1 < 1 or self.d2 < 1:
            raise ValueError("both blocks must be at least one-dimensional")

    @property
    def dim(self) -> int:
        """Total dimension d1 + d2."""
        return self.d1 + self.d2

    def _check_block(self, block: int) -> None:
        if block not in (1, 2):
            raise InvalidBlockError(f"block must be 1 or 2, got {block!r}")

    def block_dim(self, block: int) -> int:
        self._check_block(block)
        return self.d1 if block == 1 else self.d2

    def block_slice(self, block: int) -> slice:
        """Coordinate range of the block in the standard basis."""
        self._check_block(block)
        return slice(0, self.d1) if block == 1 else slice(self.d1, self.dim)

    def projector(self, block: int) -> np.ndarray:
        """Diagonal 0/1 projector onto the given block; P1 + P2 = I exactly."""
        diag = np.zeros(self.dim)
        diag[self.block_slice(block)] = 1.0
        return np.diag(diag).astype(np.complex128)


def embed_block_operator(
    x,
    src: DecomposedSpace,
    tgt: DecomposedSpace,
    src_block: int,
    tgt_block: int,
) -> np.ndarray:
    """Embed a block operator into the full space, zero everywhere else.

    The result Y satisfies P_t Y P_s = Y for the named target and source
    block projectors.
    """
    arr = as_matrix(x)
    expected = (tgt.block_dim(tgt_block), src.block_dim(src_block))
    if arr.shape != expected:
        raise ShapeMismatchError(
            f"block operator has shape {arr.shape}, expected {expected}"
        )
    out = np.zeros((tgt.dim, src.dim), dtype=np.complex128)
    out[tgt.block_slice(tgt_block), src.block_slice(src_block)] = arr
    return out


def extract_block_operator(
    y,
    src: DecomposedSpace,
    tgt: DecomposedSpace,
    src_block: int,
    tgt_block: int,
) -> np.ndarray:
    """Slice the named block back out of a full-space operator."""
    arr = as_matrix(y)
    if arr.shape != (tgt.dim, src.dim):
        raise ShapeMismatchError(
            f"operator has shape {arr.shape}, expected {(tgt.dim, src.dim)}"
        )
    return arr[tgt.block_slice(tgt_block), src.block_slice(src_block)].copy()
