"""
Mode sums of the pre-Schwarzian area integrals ``int |m''/m'|^2`` on either side of the circle.
"""
import numpy as np

from weldkit.core.series import PowerSeriesMap

MIN_SAMPLES = 256
TAIL_TOLERANCE = 1e-6


def circle_samples(m: PowerSeriesMap) -> int:
    n = MIN_SAMPLES
    while n < 4 * m.truncation:
        n *= 2
    return n


def pre_schwarzian_modes(m: PowerSeriesMap) -> np.ndarray:
    """
    Fourier coefficients of ``m''/m'`` on the unit circle.
    """
    n = circle_samples(m)
    d = m.on_circle(n, 2)
    with np.errstate(divide='ignore', invalid='ignore'):
        pre = d[2] / d[1]
    return np.fft.fft(pre) / n


def interior_area_terms(f: PowerSeriesMap) -> np.ndarray:
    modes = pre_schwarzian_modes(f)
    k = np.arange(len(modes) // 2)
    return np.pi * np.abs(modes[k]) ** 2 / (k + 1)


def exterior_area_terms(g: PowerSeriesMap) -> np.ndarray:
    modes = pre_schwarzian_modes(g)
    k = np.arange(2, len(modes) // 2)
    return np.pi * np.abs(modes[-k]) ** 2 / (k - 1)


def tail_fraction(terms: np.ndarray) -> float:
    """
    Share of the last quarter of the terms in the partial sum; infinite when the sum is not finite.
    """
    total = float(np.sum(terms))
    if not np.isfinite(total):
        return np.inf
    tail = float(np.sum(terms[-max(1, len(terms) // 4):]))
    return tail / max(total, 1.0)


def area_sums_converge(f: PowerSeriesMap, g: PowerSeriesMap) -> bool:
    return max(tail_fraction(interior_area_terms(f)), tail_fraction(exterior_area_terms(g))) <= TAIL_TOLERANCE
