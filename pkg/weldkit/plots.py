"""
Diagnostic figures for pipeline runs. Nothing reads them back.
"""
import logging
import os
from typing import Dict, Sequence

import matplotlib

matplotlib.use('Agg')

import matplotlib.pyplot as plt  # noqa: E402
import numpy as np  # noqa: E402

from weldkit.welding.curve import CurvePolyline  # noqa: E402

logger = logging.getLogger(__name__)


def _save(fig, path: str) -> str:
    fig.tight_layout()
    fig.savefig(path)
    plt.close(fig)
    logger.info('wrote %s', path)
    return path


def plot_curves(curves: Sequence[CurvePolyline], path: str, limit: int = 12) -> str:
    fig, ax = plt.subplots(figsize=(6, 6))
    for curve in curves[:limit]:
        points = np.append(curve.points, curve.points[:1]) if curve.closed else curve.points
        ax.plot(points.real, points.imag, lw=0.8)
    ax.set_aspect('equal')
    ax.set_title('welded curves (%d of %d)' % (min(limit, len(curves)), len(curves)))
    return _save(fig, path)


def plot_cdfs(samples: Dict[str, np.ndarray], path: str) -> str:
    fig, ax = plt.subplots(figsize=(6, 4))
    for name, values in samples.items():
        values = np.sort(np.asarray(values, dtype=float))
        values = values[np.isfinite(values)]
        if len(values):
            ax.step(values, np.arange(1, len(values) + 1) / len(values), where='post', label=name)
    ax.set_ylabel('empirical CDF')
    ax.legend()
    return _save(fig, path)


def plot_residuals(residuals: np.ndarray, path: str) -> str:
    residuals = np.asarray(residuals, dtype=float)
    residuals = residuals[np.isfinite(residuals) & (residuals > 0)]

    fig, ax = plt.subplots(figsize=(6, 4))
    if len(residuals):
        ax.hist(np.log10(residuals), bins=30)
    ax.set_xlabel('log10 welding residual')
    ax.set_ylabel('samples')
    return _save(fig, path)


def plot_run(out_dir: str, curves: Sequence[CurvePolyline], rows) -> Sequence[str]:
    masses = {'mass1': [r.mass1 for r in rows], 'mass2': [r.mass2 for r in rows]}
    return [
        plot_curves(curves, os.path.join(out_dir, 'curves.png')),
        plot_cdfs(masses, os.path.join(out_dir, 'masses.png')),
        plot_residuals(np.array([r.residual for r in rows]), os.path.join(out_dir, 'residuals.png')),
    ]
