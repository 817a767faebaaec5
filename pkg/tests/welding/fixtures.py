import numpy as np

from weldkit.core.series import EXTERIOR, PowerSeriesMap
from weldkit.welding.curve import CurvePolyline, curve_of_map
from weldkit.welding.homeo import CircleHomeo
from weldkit.welding.zipper import WeldingTriple


def circle(radius: float = 1.0, n: int = 1024, center: complex = 0) -> CurvePolyline:
    return CurvePolyline(center + radius * np.exp(2j * np.pi * np.arange(n) / n))


def quadratic_curve(a: float = 0.1, n: int = 2048) -> CurvePolyline:
    return curve_of_map(lambda z: z + a * z ** 2, n)


def unit_triple() -> WeldingTriple:
    return WeldingTriple(CircleHomeo.rotation(0.0, 256), PowerSeriesMap.identity(), PowerSeriesMap.identity(EXTERIOR),
                         circle())


def quadratic_interior_triple(a: float = 0.1) -> WeldingTriple:
    """
    Exact interior map ``z + a z^2`` paired with the identity outside, for checks that only read f.
    """
    return WeldingTriple(CircleHomeo.rotation(0.0, 256), PowerSeriesMap.normalized([a]),
                         PowerSeriesMap.identity(EXTERIOR), quadratic_curve(a))
