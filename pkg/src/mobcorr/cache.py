"""Bit-packed block cache for sieved Mobius values.

File layout: magic "MUBK", version as a 4-byte little-endian unsigned
(currently 1), start as an 8-byte little-endian unsigned, count as an
8-byte little-endian unsigned, then ceil(count/4) payload bytes.
Value i lives in byte i // 4 at bit offset 2 * (i % 4): code 0b00 for
mu = 0, 0b01 for +1, 0b10 for -1.  Code 0b11 never appears in a valid
file, and pad codes past count must be zero.
"""

from __future__ import annotations

import hashlib
import os
import re
import struct
from pathlib import Path

import numpy as np

MAGIC = b"MUBK"
VERSION = 1
HEADER = struct.Struct("<4sIQQ")

_VALUE_OF_CODE = np.array([0, 1, -1, 3], dtype=np.int8)
_NAME_RE = re.compile(r"mu-(\d+)-(\d+)\.mubk")


def pack_values(values: np.ndarray) -> bytes:
    values = np.asarray(values)
    if not np.isin(values, (-1, 0, 1)).all():
        raise ValueError("values must lie in {-1, 0, 1}")
    codes = np.zeros(values.size, dtype=np.uint8)
    codes[values == 1] = 1
    codes[values == -1] = 2
    pad = (-codes.size) % 4
    if pad:
        codes = np.concatenate([codes, np.zeros(pad, dtype=np.uint8)])
    q = codes.reshape(-1, 4)
    packed = q[:, 0] | (q[:, 1] << 2) | (q[:, 2] << 4) | (q[:, 3] << 6)
    return packed.astype(np.uint8).tobytes()


def unpack_values(payload: bytes, count: int) -> np.ndarray:
    need = (count + 3) // 4
    if len(payload) != need:
        raise ValueError(f"payload holds {len(payload)} bytes, expected {need}")
    raw = np.frombuffer(payload, dtype=np.uint8)
    codes = np.empty(raw.size * 4, dtype=np.uint8)
    codes[0::4] = raw & 3
    codes[1::4] = (raw >> 2) & 3
    codes[2::4] = (raw >> 4) & 3
    codes[3::4] = (raw >> 6) & 3
    if (codes[:count] == 3).any():
        raise ValueError("invalid code 0b11 in payload")
    if codes[count:].any():
        raise ValueError("nonzero pad codes past count")
    return _VALUE_OF_CODE[codes[:count]]


def block_file_name(start: int, count: int) -> str:
    return f"mu-{start}-{count}.mubk"


def block_bytes(start: int, values: np.ndarray) -> bytes:
    """The exact file content for a block, header plus packed payload."""
    return HEADER.pack(MAGIC, VERSION, start, int(values.size)) + pack_values(values)


def write_block(cache_dir, start: int, values: np.ndarray) -> Path:
    cache_dir = Path(cache_dir)
    cache_dir.mkdir(parents=True, exist_ok=True)
    path = cache_dir / block_file_name(start, int(values.size))
    tmp = path.with_name(path.name + ".tmp")
    tmp.write_bytes(block_bytes(start, values))
    os.replace(tmp, path)
    return path


def read_block(path) -> tuple[int, np.ndarray]:
    blob = Path(path).read_bytes()
    if len(blob) < HEADER.size:
        raise ValueError(f"{path}: truncated header")
    magic, version, start, count = HEADER.unpack_from(blob)
    if magic != MAGIC:
        raise ValueError(f"{path}: bad magic {magic!r}")
    if version != VERSION:
        raise ValueError(f"{path}: unsupported version {version}")
    return int(start), unpack_values(blob[HEADER.size :], int(count))


def find_block(cache_dir, start: int, count: int) -> np.ndarray | None:
    """Cached values for [start, start + count), or None.

    Any stored block with the same start and at least count values
    serves the request; the smallest sufficient one is sliced.
    """
    d = Path(cache_dir)
    if not d.is_dir():
        return None
    best = None
    for name in sorted(os.listdir(d)):
        m = _NAME_RE.fullmatch(name)
        if m and int(m.group(1)) == start:
            c = int(m.group(2))
            if c >= count and (best is None or c < best):
                best = c
    if best is None:
        return None
    got_start, values = read_block(d / block_file_name(start, best))
    if got_start != start:
        raise ValueError(f"{block_file_name(start, best)}: header start disagrees with name")
    return values[:count]


def sha256_hex(data: bytes) -> str:
    return hashlib.sha256(data).hexdigest()
