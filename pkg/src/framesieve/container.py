"""Binary embedding container (KSEC), little-endian throughout.

Layout:

    offset  size          field
    0       4             magic "KSEC"
    4       2             version, u16 (currently 1)
    6       1             dtype code, u8 (1 = 32-bit float)
    7       4             dimension, u32
    11      4             count, u32
    15      ...           id table: count entries of (u16 length, UTF-8 bytes)
    ...     4*count*dim   payload, row-major float32

The file must end exactly where the payload does. Round trips preserve every
float bit and the id order.
"""

from __future__ import annotations

import struct
from pathlib import Path
from typing import Sequence

import numpy as np

from .errors import (
    BadMagicError,
    ContainerFormatError,
    DuplicateIdError,
    RaggedVectorsError,
    TruncatedFileError,
    UnsupportedVersionError,
)
from .fileio import atomic_write_bytes

MAGIC = b"KSEC"
VERSION = 1
DTYPE_F32 = 1
_HEADER = struct.Struct("<4sHBII")
_IDLEN = struct.Struct("<H")


def write_container(ids: Sequence[str], vectors, path: str | Path) -> None:
    """Serialize ids and their float32 vectors; fsync'd before returning."""
    ids = [str(i) for i in ids]
    if len(set(ids)) != len(ids):
        raise DuplicateIdError("container ids must be unique")

    if len(ids) == 0:
        arr = np.zeros((0, 0), dtype="<f4")
    else:
        rows = [np.asarray(v, dtype="<f4") for v in vectors]
        if len(rows) != len(ids):
            raise ValueError(f"{len(ids)} ids for {len(rows)} vectors")
        dims = {r.shape for r in rows}
        if len(dims) != 1 or rows[0].ndim != 1:
            raise RaggedVectorsError(f"vectors must share one 1-D shape, got {sorted(dims)}")
        arr = np.stack(rows)

    parts = [_HEADER.pack(MAGIC, VERSION, DTYPE_F32, arr.shape[1], arr.shape[0])]
    for ident in ids:
        encoded = ident.encode("utf-8")
        if len(encoded) > 0xFFFF:
            raise ValueError(f"id too long ({len(encoded)} bytes): {ident[:40]!r}...")
        parts.append(_IDLEN.pack(len(encoded)))
        parts.append(encoded)
    parts.append(arr.tobytes(order="C"))
    atomic_write_bytes(path, b"".join(parts), fsync=True)


def read_container(path: str | Path) -> tuple[list[str], np.ndarray]:
    """Parse a container, validating magic, version, and declared lengths."""
    data = Path(path).read_bytes()
    if len(data) < _HEADER.size:
        raise TruncatedFileError(f"{path}: shorter than the fixed header")
    magic, version, dtype, dim, count = _HEADER.unpack_from(data, 0)
    if magic != MAGIC:
        raise BadMagicError(f"{path}: bad magic {magic!r}")
    if version != VERSION:
        raise UnsupportedVersionError(f"{path}: unsupported version {version}")
    if dtype != DTYPE_F32:
        raise UnsupportedVersionError(f"{path}: unsupported dtype code {dtype}")

    offset = _HEADER.size
    ids: list[str] = []
    for _ in range(count):
        if offset + _IDLEN.size > len(data):
            raise TruncatedFileError(f"{path}: id table ends early")
        (length,) = _IDLEN.unpack_from(data, offset)
        offset += _IDLEN.size
        if offset + length > len(data):
            raise TruncatedFileError(f"{path}: id table ends early")
        ids.append(data[offset : offset + length].decode("utf-8"))
        offset += length
    if len(set(ids)) != len(ids):
        raise DuplicateIdError(f"{path}: duplicate ids in container")

    payload = 4 * count * dim
    remaining = len(data) - offset
    if remaining < payload:
        raise TruncatedFileError(f"{path}: payload needs {payload} bytes, {remaining} present")
    if remaining > payload:
        raise ContainerFormatError(f"{path}: {remaining - payload} trailing bytes after payload")
    vectors = np.frombuffer(data, dtype="<f4", count=count * dim, offset=offset).reshape(count, dim).copy()
    return ids, vectors


def load_as_dict(path: str | Path) -> dict[str, np.ndarray]:
    """Convenience: container contents keyed by id."""
    ids, vectors = read_container(path)
    return {ident: vectors[i] for i, ident in enumerate(ids)}


def frame_key(video_id: str, frame_index: int) -> str:
    return f"{video_id}#{frame_index}"


def caption_key(video_id: str) -> str:
    return f"{video_id}#cap"
