"""Bit-exact cipher container serialization.

Layout (all little-endian):

    magic    4 bytes  b"LDCT"
    version  u16      1
    width    u32
    height   u32
    rounds   u8       3
    flags    u8       0 (reserved)
    shifts   rounds x u16
    rots     rounds x 3 x u8
    dic      3 planes of width*height raw bytes, row-major, R G B
    carriers 3 planes of width*height float64, row-major, R G B
    crc      u32      CRC-32 (ISO-HDLC) over every preceding byte

Carriers are stored as raw IEEE-754 doubles: the embedded log values are not
byte-quantizable without destroying the coefficient recovery, and raw bytes
round-trip with zero drift.
"""

from __future__ import annotations

import struct
import zlib

import numpy as np

from .cipher import CipherBundle
from .errors import FormatError

MAGIC = b"LDCT"
VERSION = 1
ROUNDS = 3

_FIXED = struct.Struct("<4sHIIBB")


def header_bytes(bundle: CipherBundle) -> bytes:
    head = _FIXED.pack(MAGIC, VERSION, bundle.n, bundle.n, ROUNDS, 0)
    head += struct.pack(f"<{ROUNDS}H", *bundle.shifts)
    for rot in bundle.rotations:
        head += struct.pack("<3B", *rot)
    return head


def write_bundle(path, bundle: CipherBundle):
    """Serialize a bundle; identical bundles produce identical files."""
    blob = bytearray(header_bytes(bundle))
    for plane in bundle.dic:
        blob += np.ascontiguousarray(plane, dtype=np.uint8).tobytes()
    for plane in bundle.carriers:
        blob += np.ascontiguousarray(plane, dtype="<f8").tobytes()
    blob += struct.pack("<I", zlib.crc32(bytes(blob)) & 0xFFFFFFFF)
    with open(path, "wb") as f:
        f.write(bytes(blob))


def read_bundle(path) -> CipherBundle:
    """Parse and validate a bundle file; exact inverse of write_bundle."""
    with open(path, "rb") as f:
        blob = f.read()
    if len(blob) < _FIXED.size + 4:
        raise FormatError("container too short for a header")

    magic, version, width, height, rounds, flags = _FIXED.unpack_from(blob, 0)
    if magic != MAGIC:
        raise FormatError(f"bad container magic {magic!r}")
    if version != VERSION:
        raise FormatError(f"unsupported container version {version}")
    if rounds != ROUNDS:
        raise FormatError(f"unsupported round count {rounds}")
    if flags != 0:
        raise FormatError(f"reserved flags byte is nonzero ({flags})")
    if width != height:
        raise FormatError(f"container image must be square, got {width}x{height}")

    off = _FIXED.size
    head_len = off + 2 * ROUNDS + 3 * ROUNDS
    n_px = width * height
    expected = head_len + 3 * n_px + 3 * n_px * 8 + 4
    if len(blob) != expected:
        raise FormatError(
            f"container size {len(blob)} does not match header (expected {expected})"
        )

    crc_stored = struct.unpack_from("<I", blob, len(blob) - 4)[0]
    crc_actual = zlib.crc32(blob[:-4]) & 0xFFFFFFFF
    if crc_stored != crc_actual:
        raise FormatError(
            f"CRC mismatch: stored {crc_stored:#010x}, computed {crc_actual:#010x}"
        )

    shifts = struct.unpack_from(f"<{ROUNDS}H", blob, off)
    off += 2 * ROUNDS
    rotations = []
    for _ in range(ROUNDS):
        rotations.append(struct.unpack_from("<3B", blob, off))
        off += 3

    dic = []
    for _ in range(3):
        plane = np.frombuffer(blob, dtype=np.uint8, count=n_px, offset=off)
        dic.append(plane.reshape(height, width).copy())
        off += n_px
    carriers = []
    for _ in range(3):
        plane = np.frombuffer(blob, dtype="<f8", count=n_px, offset=off)
        carriers.append(plane.reshape(height, width).astype(np.float64))
        off += n_px * 8

    return CipherBundle(
        n=width,
        shifts=shifts,
        rotations=tuple(rotations),
        dic=tuple(dic),
        carriers=tuple(carriers),
    )
