"""JSON interchange for channels, coefficient matrices, block triples and
dilations.

Complex entries are stored as [re, im] pairs of IEEE-754 doubles; the
encoder relies on Python's shortest-round-trip float formatting, so a write
followed by a read reproduces every matrix bit-exactly.  Every file carries
a ``format`` tag.
"""

from __future__ import annotations

import json
from pathlib import Path

import numpy as np

from .cpm import ChoiRep, KrausRep
from .dilation import UnitaryDilation
from .errors import FormatError, SpcpmError
from .linalg import as_matrix
from .sp import SPBlockRep
from .spaces import DecomposedSpace

FORMAT = "spcpm/1"


def encode_matrix(m) -> dict:
    arr = as_matrix(m)
    data = [[float(z.real), float(z.imag)] for z in arr.ravel()]
    return {"rows": int(arr.shape[0]), "cols": int(arr.shape[1]), "data": data}


def decode_matrix(obj) -> np.ndarray:
    if not isinstance(obj, dict):
        raise FormatError("matrix object must be a JSON object")
    try:
        rows = int(obj["rows"])
        cols = int(obj["cols"])
        data = obj["data"]
    except (KeyError, TypeError, ValueError) as exc:
        raise FormatError(f"bad matrix object: {exc}") from exc
    if rows < 1 or cols < 1:
        raise FormatError("matrix dimensions must be positive")
    if not isinstance(data, list) or len(data) != rows * cols:
        raise FormatError("matrix data length does not match rows * cols")
    flat = np.empty(rows * cols, dtype=np.complex128)
    for idx, entry in enumerate(data):
        try:
            re, im = entry
            flat[idx] = complex(float(re), float(im))
        except (TypeError, ValueError) as exc:
            raise FormatError(f"bad matrix entry at position {idx}") from exc
    if not np.all(np.isfinite(flat)):
        raise FormatError("matrix entries must be finite")
    return flat.reshape(rows, cols)


def _encode_space(space: DecomposedSpace) -> list[int]:
    return [space.d1, space.d2]


def _decode_space(obj, key: str) -> DecomposedSpace:
    dims = obj.get(key)
    if (
        not isinstance(dims, list)
        or len(dims) != 2
        or not all(isinstance(d, int) for d in dims)
    ):
        raise FormatError(f"{key} must be a pair of integers")
    try:
        return DecomposedSpace(dims[0], dims[1])
    except ValueError as exc:
        raise FormatError(f"{key}: {exc}") from exc


def _expect_kind(obj, kind: str) -> None:
    if obj.get("kind") != kind:
        raise FormatError(f"expected a {kind!r} file, got kind={obj.get('kind')!r}")


def channel_to_obj(rep: KrausRep) -> dict:
    return {
        "format": FORMAT,
        "kind": "channel",
        "source_dims": _encode_space(rep.source),
        "target_dims": _encode_space(rep.target),
        "kraus": [encode_matrix(op) for op in rep.ops],
    }


def channel_from_obj(obj) -> KrausRep:
    _expect_kind(obj, "channel")
    source = _decode_space(obj, "source_dims")
    target = _decode_space(obj, "target_dims")
    raw_ops = obj.get("kraus")
    if not isinstance(raw_ops, list) or not raw_ops:
        raise FormatError("kraus must be a nonempty list of matrices")
    ops = tuple(decode_matrix(o) for o in raw_ops)
    try:
        return KrausRep(source, target, ops)
    except SpcpmError as exc:
        raise FormatError(str(exc)) from exc


def choi_to_obj(rep: ChoiRep) -> dict:
    return {
        "format": FORMAT,
        "kind": "choi",
        "source_dims": _encode_space(rep.source),
        "target_dims": _encode_space(rep.target),
        "basis": rep.basis_tag,
        "matrix": encode_matrix(rep.matrix),
    }


def choi_from_obj(obj) -> ChoiRep:
    _expect_kind(obj, "choi")
    source = _decode_space(obj, "source_dims")
    target = _decode_space(obj, "target_dims")
    basis = obj.get("basis")
    if not isinstance(basis, str):
        raise FormatError("basis must be a string tag")
    try:
        return ChoiRep(source, target, decode_matrix(obj.get("matrix")), basis)
    except SpcpmError as exc:
        raise FormatError(str(exc)) from exc


def blocks_to_obj(blocks: SPBlockRep) -> dict:
    return {
        "format": FORMAT,
        "kind": "blocks",
        "source_dims": _encode_space(blocks.source),
        "target_dims": _encode_space(blocks.target),
        "block1": encode_matrix(blocks.block1),
        "block2": encode_matrix(blocks.block2),
        "cross": encode_matrix(blocks.cross),
    }


def blocks_from_obj(obj) -> SPBlockRep:
    _expect_kind(obj, "blocks")
    source = _decode_space(obj, "source_dims")
    target = _decode_space(obj, "target_dims")
    try:
        return SPBlockRep(
            source,
            target,
            decode_matrix(obj.get("block1")),
            decode_matrix(obj.get("block2")),
            decode_matrix(obj.get("cross")),
        )
    except SpcpmError as exc:
        raise FormatError(str(exc)) from exc


def orthonormal_to_obj(
    pairs: list[tuple[float, np.ndarray]],
    source: DecomposedSpace,
    target: DecomposedSpace,
) -> dict:
    return {
        "format": FORMAT,
        "kind": "orthonormal",
        "source_dims": _encode_space(source),
        "target_dims": _encode_space(target),
        "weights": [float(r) for r, _ in pairs],
        "kraus": [encode_matrix(y) for _, y in pairs],
    }


def dilation_to_obj(dil: UnitaryDilation) -> dict:
    return {
        "format": FORMAT,
        "kind": "dilation",
        "dims": _encode_space(dil.space),
        "ancilla_dim": dil.ancilla_dim,
        "u": encode_matrix(dil.u),
        "v1": encode_matrix(dil.v1),
        "v2": encode_matrix(dil.v2),
    }


def dilation_from_obj(obj) -> UnitaryDilation:
    _expect_kind(obj, "dilation")
    space = _decode_space(obj, "dims")
    anc = obj.get("ancilla_dim")
    if not isinstance(anc, int) or anc < 1:
        raise FormatError("ancilla_dim must be a positive integer")
    try:
        return UnitaryDilation(
            space,
            anc,
            decode_matrix(obj.get("u")),
            decode_matrix(obj.get("v1")),
            decode_matrix(obj.get("v2")),
        )
    except SpcpmError as exc:
        raise FormatError(str(exc)) from exc


def write_file(path, obj: dict) -> None:
    Path(path).write_text(json.dumps(obj, indent=2) + "\n")


def read_file(path) -> dict:
    try:
        obj = json.loads(Path(path).read_text())
    except (OSError, json.JSONDecodeError) as exc:
        raise FormatError(f"cannot read {path}: {exc}") from exc
    if not isinstance(obj, dict):
        raise FormatError("top-level JSON value must be an object")
    if obj.get("format") != FORMAT:
        raise FormatError(f"unsupported format tag: {obj.get('format')!r}")
    return obj
