"""Keystream planes derived from a Lorenz trajectory.

Pipeline per round: integrate from the key's initial conditions, truncate
each coordinate's DCT to its 99.9%-energy coefficients, form the three outer
products XY / XZ / YZ, resize each to the image size, then circularly
convolve the resized planes pairwise and reduce modulo 256 to bytes.  Each
byte plane also carries its exact real-valued twin plus the row and column
argsort permutations used by the shuffle cipher.
"""

from __future__ import annotations

import functools
from dataclasses import dataclass

import numpy as np

from .dct import dct1, energy_select
from .errors import DegenerateKeystreamError
from .lorenz import LorenzParams, SecretKey, Trajectory, derive_initial_conditions, integrate

# Guard added before flooring |conv| so that convolutions which are integers
# in exact arithmetic cannot fall just below the boundary in floating point.
FLOOR_GUARD = 1e-9


@dataclass(frozen=True)
class KeystreamPlane:
    """One N x N byte plane with its real twin and sort permutations.

    real_twin holds the byte values as exact small-integer doubles, so
    (real_twin + s) - real_twin returns exactly 0.0 wherever s == 0; the
    carrier-extraction stage depends on that exactness.  row_perm[i] is the
    stable ascending argsort of byte row i; col_perm[j] the same for column j.
    """

    bytes: np.ndarray
    real_twin: np.ndarray
    row_perm: np.ndarray
    col_perm: np.ndarray

    def __post_init__(self):
        for a in (self.bytes, self.real_twin, self.row_perm, self.col_perm):
            a.setflags(write=False)

    @property
    def n(self) -> int:
        return self.bytes.shape[0]


@dataclass(frozen=True)
class RoundKeystream:
    """The three planes of one round, assigned R<-XY, G<-XZ, B<-YZ."""

    xy: KeystreamPlane
    xz: KeystreamPlane
    yz: KeystreamPlane

    def plane_for(self, component: int) -> KeystreamPlane:
        return (self.xy, self.xz, self.yz)[component]


def truncated_vectors(traj: Trajectory, fraction: float = 0.999):
    """99.9%-energy DCT coefficients of x, y, z, in original index order."""
    if len(traj) == 0:
        raise ValueError("trajectory is empty")
    out = []
    for arr in (traj.x, traj.y, traj.z):
        sel = energy_select(dct1(arr), fraction)
        order = np.argsort(sel.cols, kind="stable")
        out.append(np.ascontiguousarray(sel.values[order]))
    return tuple(out)


def outer_products(vx, vy, vz):
    """XY = vx (x) vy, XZ = vx (x) vz, YZ = vy (x) vz."""
    vx, vy, vz = (np.asarray(v, dtype=np.float64) for v in (vx, vy, vz))
    for name, v in (("vx", vx), ("vy", vy), ("vz", vz)):
        if v.size == 0:
            raise DegenerateKeystreamError(f"{name} has no retained coefficients")
    return np.outer(vx, vy), np.outer(vx, vz), np.outer(vy, vz)


def resize_bilinear(m, n: int) -> np.ndarray:
    """Resize to n x n by corner-aligned bilinear interpolation.

    Output cell (i, j) samples source coordinate (i*(R-1)/(n-1), j*(C-1)/(n-1));
    n == 1 returns the top-left entry.
    """
    m = np.asarray(m, dtype=np.float64)
    if m.ndim != 2 or m.shape[0] < 1 or m.shape[1] < 1:
        raise ValueError("source must be a non-empty 2-D matrix")
    if n < 1:
        raise ValueError("target size must be >= 1")
    if n == 1:
        return m[:1, :1].copy()

    def axis_coords(src_len):
        pos = (np.arange(n, dtype=np.float64) * (src_len - 1)) / (n - 1)
        lo = np.floor(pos).astype(np.int64)
        lo = np.minimum(lo, src_len - 1)
        hi = np.minimum(lo + 1, src_len - 1)
        return lo, hi, pos - lo

    r0, r1, fr = axis_coords(m.shape[0])
    c0, c1, fc = axis_coords(m.shape[1])
    rows = m[r0, :] * (1.0 - fr)[:, None] + m[r1, :] * fr[:, None]
    return rows[:, c0] * (1.0 - fc)[None, :] + rows[:, c1] * fc[None, :]


def quantize_byte(c) -> np.ndarray:
    """floor(|c| + guard) mod 256, as uint8.

    The guard keeps convolutions that are exactly integer-valued in real
    arithmetic from flooring one low due to floating-point round-off.
    """
    c = np.asarray(c, dtype=np.float64)
    return np.mod(np.floor(np.abs(c) + FLOOR_GUARD), 256.0).astype(np.uint8)


def circular_conv2_mod(a, b) -> np.ndarray:
    """Wrap-around 2-D convolution of equal-size planes, bytes mod 256.

    c[i][j] = sum_{p,q} a[p][q] * b[(i-p) mod N, (j-q) mod N], computed in
    the Fourier domain, then quantized with quantize_byte.
    """
    a = np.asarray(a, dtype=np.float64)
    b = np.asarray(b, dtype=np.float64)
    if a.shape != b.shape or a.ndim != 2:
        raise ValueError("operands must be 2-D and share dimensions")
    c = np.fft.irfft2(np.fft.rfft2(a) * np.fft.rfft2(b), s=a.shape)
    return quantize_byte(c)


def row_permutations(plane_bytes) -> np.ndarray:
    """Stable ascending argsort of each row (ties keep column order)."""
    return np.argsort(np.asarray(plane_bytes), axis=1, kind="stable")


def col_permutations(plane_bytes) -> np.ndarray:
    """Stable ascending argsort of each column; row j holds column j's order."""
    return np.argsort(np.asarray(plane_bytes).T, axis=1, kind="stable")


def plane_from_bytes(byte_matrix) -> KeystreamPlane:
    """Wrap an N x N byte matrix with its real twin and sort permutations."""
    byte_matrix = np.ascontiguousarray(byte_matrix, dtype=np.uint8)
    return KeystreamPlane(
        bytes=byte_matrix,
        real_twin=byte_matrix.astype(np.float64),
        row_perm=row_permutations(byte_matrix),
        col_perm=col_permutations(byte_matrix),
    )


@functools.lru_cache(maxsize=32)
def build_round_keystream(
    key: SecretKey,
    n: int,
    params: LorenzParams = LorenzParams(),
    t_start: float = 0.0,
    t_end: float = 50.0,
    dt: float = 0.001,
    fraction: float = 0.999,
) -> RoundKeystream:
    """Derive one round's three keystream planes from a secret key.

    Pure in all arguments, so results are memoized; decryption regenerating
    the same round reuses the cached planes.  The convolution pairing is the
    fixed cycle XY*XZ, XZ*YZ, YZ*XY.
    """
    if n < 2:
        raise ValueError("keystream size must be >= 2")
    traj = integrate(params, derive_initial_conditions(key), t_start, t_end, dt)
    vx, vy, vz = truncated_vectors(traj, fraction)
    xy, xz, yz = outer_products(vx, vy, vz)
    rxy = resize_bilinear(xy, n)
    rxz = resize_bilinear(xz, n)
    ryz = resize_bilinear(yz, n)
    return RoundKeystream(
        xy=plane_from_bytes(circular_conv2_mod(rxy, rxz)),
        xz=plane_from_bytes(circular_conv2_mod(rxz, ryz)),
        yz=plane_from_bytes(circular_conv2_mod(ryz, rxy)),
    )
