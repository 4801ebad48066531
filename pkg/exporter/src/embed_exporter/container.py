"""Writer (and verification reader) for the KSEC embedding container format.

This is an independent implementation of the published byte layout, kept
free of any code dependency on the consumer side:

    "KSEC" | u16 version=1 | u8 dtype=1 (f32) | u32 dimension | u32 count
    id table: count x (u16 length, UTF-8 bytes)
    payload: count * dimension little-endian float32, row-major

Writes are atomic (temp file + rename) and fsync'd, and depend only on the
input values, so identical inputs give identical bytes on any host.
"""

from __future__ import annotations

import os
import struct
import tempfile
from pathlib import Path
from typing import Sequence

import numpy as np

MAGIC = b"KSEC"
VERSION = 1
DTYPE_F32 = 1
_HEADER = struct.Struct("<4sHBII")
_IDLEN = struct.Struct("<H")


def write_container(ids: Sequence[str], vectors: Sequence[np.ndarray], path: str | Path) -> None:
    ids = [str(i) for i in ids]
    if len(set(ids)) != len(ids):
        raise ValueError("container ids must be unique")
    if len(ids) != len(vectors):
        raise ValueError(f"{len(ids)} ids for {len(vectors)} vectors")
    if ids:
        arr = np.stack([np.asarray(v, dtype="<f4") for v in vectors])
        if arr.ndim != 2:
            raise ValueError("vectors must be 1-D and of equal length")
    else:
        arr = np.zeros((0, 0), dtype="<f4")

    blob = bytearray(_HEADER.pack(MAGIC, VERSION, DTYPE_F32, arr.shape[1], arr.shape[0]))
    for ident in ids:
        encoded = ident.encode("utf-8")
        blob += _IDLEN.pack(len(encoded))
        blob += encoded
    blob += arr.tobytes(order="C")

    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=path.name + ".", suffix=".tmp")
    try:
        with os.fdopen(fd, "wb") as fh:
            fh.write(blob)
            fh.flush()
            os.fsync(fh.fileno())
        os.chmod(tmp, 0o644)
        os.replace(tmp, path)
    except BaseException:
        try:
            os.unlink(tmp)
        except OSError:
            pass
        raise


def read_container(path: str | Path) -> tuple[list[str], np.ndarray]:
    """Minimal reader used to verify our own output round trips."""
    data = Path(path).read_bytes()
    if len(data) < _HEADER.size:
        raise ValueError(f"{path}: shorter than the fixed header")
    magic, version, dtype, dim, count = _HEADER.unpack_from(data, 0)
    if magic != MAGIC or version != VERSION or dtype != DTYPE_F32:
        raise ValueError(f"{path}: not a KSEC v{VERSION} float32 container")
    offset = _HEADER.size
    ids = []
    for _ in range(count):
        (length,) = _IDLEN.unpack_from(data, offset)
        offset += _IDLEN.size
        ids.append(data[offset : offset + length].decode("utf-8"))
        offset += length
    expected_end = offset + 4 * count * dim
    if expected_end != len(data):
        raise ValueError(f"{path}: container length mismatch")
    vectors = np.frombuffer(data, dtype="<f4", count=count * dim, offset=offset).reshape(count, dim).copy()
    return ids, vectors


def frame_key(video_id: str, frame_index: int) -> str:
    return f"{video_id}#{frame_index}"


def caption_key(video_id: str) -> str:
    return f"{video_id}#cap"
