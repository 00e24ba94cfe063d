"""Statistical metrics: histogram, correlation, NPCR/UACI/MAE, entropy, PSNR.

All metrics use the full pixel population (no random sampling), so results
are reproducible to the bit.  The scatter sampler is the one deliberately
sampled quantity and therefore runs on a fixed-seed linear congruential
generator whose seed is recorded in its output.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .cipher import COMPONENT_NAMES, ImageRGB
from .errors import DimensionMismatchError, UndefinedCorrelationError

DIRECTIONS = ("horizontal", "vertical", "diagonal")

_LCG_A = 1664525
_LCG_C = 1013904223
_LCG_M = 1 << 32
DEFAULT_SCATTER_SEED = 0x5EED


def histogram(plane) -> np.ndarray:
    """Counts of each byte value 0..255; counts sum to the pixel count."""
    plane = np.asarray(plane, dtype=np.uint8)
    return np.bincount(plane.ravel(), minlength=256)


def _adjacent_views(plane, direction):
    plane = np.asarray(plane)
    if plane.shape[0] < 2 or plane.shape[1] < 2:
        raise ValueError("need at least a 2x2 plane for adjacency")
    if direction == "horizontal":
        return plane[:, :-1], plane[:, 1:]
    if direction == "vertical":
        return plane[:-1, :], plane[1:, :]
    if direction == "diagonal":
        return plane[:-1, :-1], plane[1:, 1:]
    raise ValueError(f"unknown direction {direction!r}")


def correlation(c, d) -> float:
    """Pearson correlation between two equal-size matrices."""
    c = np.asarray(c, dtype=np.float64)
    d = np.asarray(d, dtype=np.float64)
    if c.shape != d.shape:
        raise DimensionMismatchError("correlation operands must share dimensions")
    cc = c - c.mean()
    dd = d - d.mean()
    denom = math.sqrt(float(np.sum(cc * cc)) * float(np.sum(dd * dd)))
    if denom == 0.0:
        raise UndefinedCorrelationError("zero variance in a correlation operand")
    return float(np.sum(cc * dd)) / denom


def adjacent_correlation(plane, direction: str) -> float:
    """Correlation between each pixel and its neighbor in one direction."""
    c, d = _adjacent_views(plane, direction)
    return correlation(c, d)


def npcr(c1, c2) -> float:
    """Percentage of pixel positions where the two planes differ."""
    c1, c2 = np.asarray(c1), np.asarray(c2)
    if c1.shape != c2.shape:
        raise DimensionMismatchError("NPCR operands must share dimensions")
    return float(np.count_nonzero(c1 != c2)) / c1.size * 100.0


def mae(c1, c2) -> float:
    """Mean absolute pixel difference."""
    c1, c2 = np.asarray(c1, np.float64), np.asarray(c2, np.float64)
    if c1.shape != c2.shape:
        raise DimensionMismatchError("MAE operands must share dimensions")
    return float(np.mean(np.abs(c1 - c2)))


def uaci(c1, c2) -> float:
    """Mean absolute difference normalized by 255, as a percentage."""
    c1, c2 = np.asarray(c1, np.float64), np.asarray(c2, np.float64)
    if c1.shape != c2.shape:
        raise DimensionMismatchError("UACI operands must share dimensions")
    return float(np.mean(np.abs(c1 - c2) / 255.0)) * 100.0


def entropy(plane) -> float:
    """Shannon entropy of the byte distribution, in bits per pixel."""
    counts = histogram(plane)
    p = counts[counts > 0] / counts.sum()
    return float(-np.sum(p * np.log2(p)))


def mse(f, g) -> float:
    """Mean squared pixel difference."""
    f, g = np.asarray(f, np.float64), np.asarray(g, np.float64)
    if f.shape != g.shape:
        raise DimensionMismatchError("MSE operands must share dimensions")
    d = f - g
    return float(np.mean(d * d))


def psnr(f, g) -> float:
    """20*log10(max(f)/sqrt(MSE)); +inf when the planes are identical.

    The peak is taken from the first argument (the original image), not the
    fixed constant 255.
    """
    m = mse(f, g)
    if m == 0.0:
        return math.inf
    peak = float(np.max(np.asarray(f, dtype=np.float64)))
    return 20.0 * math.log10(peak / math.sqrt(m))


@dataclass(frozen=True)
class ScatterSample:
    """Adjacent-pixel pairs for plotting, with the sampling seed recorded."""

    direction: str
    seed: int
    pairs: np.ndarray  # k x 2, (value, neighbor)

    def __post_init__(self):
        self.pairs.setflags(write=False)


def scatter_sample(
    plane, direction: str, count: int, seed: int = DEFAULT_SCATTER_SEED
) -> ScatterSample:
    """Deterministic sample of `count` distinct adjacent-pixel pairs.

    Indices are drawn from a fixed linear congruential generator (duplicates
    rejected); asking for every available pair returns the full population
    in row-major order.
    """
    c, d = _adjacent_views(plane, direction)
    cf, df = c.ravel(), d.ravel()
    total = cf.size
    if count > total:
        raise ValueError(f"count {count} exceeds available pairs {total}")
    if count == total:
        idx = np.arange(total)
    else:
        state = seed % _LCG_M
        chosen: list[int] = []
        seen = set()
        while len(chosen) < count:
            state = (_LCG_A * state + _LCG_C) % _LCG_M
            i = state % total
            if i not in seen:
                seen.add(i)
                chosen.append(i)
        idx = np.asarray(chosen)
    pairs = np.stack([cf[idx], df[idx]], axis=1)
    return ScatterSample(direction, seed, pairs)


@dataclass
class AnalysisReport:
    """Aggregated metrics for an original / encrypted / decrypted triple."""

    image: str
    dims: tuple[int, int]
    components: list = field(default_factory=list)
    pairs: list = field(default_factory=list)

    def to_dict(self) -> dict:
        return {
            "image": self.image,
            "dims": list(self.dims),
            "components": self.components,
            "pairs": self.pairs,
        }


def _component_entry(label: str, plane) -> dict:
    corr = {}
    for short, direction in zip("hvd", DIRECTIONS):
        try:
            corr[short] = adjacent_correlation(plane, direction)
        except UndefinedCorrelationError:
            corr[short] = None
    return {
        "name": label,
        "entropy": entropy(plane),
        "correlation": corr,
        "histogram": histogram(plane).tolist(),
    }


def _pair_entry(label_a: str, label_b: str, a, b) -> dict:
    return {
        "a": label_a,
        "b": label_b,
        "npcr": npcr(a, b),
        "uaci": uaci(a, b),
        "mae": mae(a, b),
        "mse": mse(a, b),
        "psnr": psnr(a, b),
    }


def full_report(
    original: ImageRGB,
    encrypted: ImageRGB | None = None,
    decrypted: ImageRGB | None = None,
    image: str = "image",
) -> AnalysisReport:
    """Every per-component metric plus original-vs-cipher and -vs-decrypted pairs.

    A constant plane has no defined adjacent correlation; its entry is
    reported as null rather than failing the whole report.
    """
    report = AnalysisReport(image=image, dims=(original.width, original.height))
    images = [("original", original), ("encrypted", encrypted), ("decrypted", decrypted)]
    for label, img in images:
        if img is None:
            continue
        if (img.width, img.height) != (original.width, original.height):
            raise DimensionMismatchError(f"{label} image dims differ from original")
        for comp, plane in zip(COMPONENT_NAMES, img.planes):
            report.components.append(_component_entry(f"{label}/{comp}", plane))
    for label, img in images[1:]:
        if img is None:
            continue
        for comp, a, b in zip(COMPONENT_NAMES, original.planes, img.planes):
            report.pairs.append(
                _pair_entry(f"original/{comp}", f"{label}/{comp}", a, b)
            )
    return report
