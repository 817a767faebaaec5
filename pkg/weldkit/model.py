from typing import TYPE_CHECKING, NamedTuple, Optional, Tuple

import numpy as np

if TYPE_CHECKING:
    from weldkit.welding.curve import CurvePolyline

SCHEMA_VERSION = 1


class Constants(NamedTuple):
    kappa: float
    gamma: float
    Q: float
    c_m: float
    c_L: float


class QuadratureResult(NamedTuple):
    value: complex
    error: float


class ScalarRow(NamedTuple):
    seed: int
    alpha: float
    mass1: float
    mass2: float
    K: float
    S1: float
    residual: float


class CurvePoint(NamedTuple):
    index: int
    re: float
    im: float


class CheckRecord(NamedTuple):
    name: str
    passed: bool
    residual: float
    tolerance: float
    seconds: float
    message: str = ''


class RunConfig(NamedTuple):
    command: str = 'verify'
    kappa: Optional[float] = None
    gamma: Optional[float] = None
    modes: int = 32
    grid: int = 4096
    samples: int = 200
    seed: int = 0
    tol_scale: float = 1.0
    out_dir: str = './weldkit-out'
    workers: int = 1
    plot: bool = False
    checks: Tuple[str, ...] = ('all',)
    weld_points: int = 1024
    max_residual: float = 1e-4


class BetaCoefficients(NamedTuple):
    values: np.ndarray
    decay_rate: float


class GhostSum(NamedTuple):
    lhs: complex
    rhs: complex
    truncation_bound: float
    contour_radius: float


class DirectionalDerivative(NamedTuple):
    value: complex
    error: float
    reliable: bool


class Partition(NamedTuple):
    """
    An integer partition stored as multiplicities ``(k_1, k_2, ...)``: part ``m`` occurs ``k_m`` times.
    """
    multiplicities: Tuple[int, ...] = ()

    @property
    def weight(self) -> int:
        return sum((m + 1) * k for m, k in enumerate(self.multiplicities))

    @staticmethod
    def of(*parts: int) -> 'Partition':
        if not parts:
            return Partition()
        if min(parts) < 1:
            raise ValueError('partition parts must be positive, got %s' % (parts,))
        multiplicities = [0] * max(parts)
        for part in parts:
            multiplicities[part - 1] += 1
        return Partition(tuple(multiplicities))


class KacEntry(NamedTuple):
    sign: str
    r: int
    s: int
    value: float


class KacMembership(NamedTuple):
    kind: str
    r: Optional[int] = None
    s: Optional[int] = None


class DrivingPath(NamedTuple):
    times: np.ndarray
    values: np.ndarray
    kappa: float

    @property
    def steps(self) -> int:
        return len(self.times) - 1


class SolverStats(NamedTuple):
    steps: int
    halvings: int


class TraceResult(NamedTuple):
    curve: 'CurvePolyline'
    times: np.ndarray
    stats: SolverStats


class LocalTimeEstimate(NamedTuple):
    mean: float
    stderr: float


class RunManifest(NamedTuple):
    schema_version: int
    version: str
    config: dict
    checks: Tuple[CheckRecord, ...]
    timing: dict

    @property
    def failures(self) -> int:
        return sum(1 for record in self.checks if not record.passed)
