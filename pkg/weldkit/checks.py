"""
The verify suite: named checks, each returning a non-negative residual that passes when it is at most the check's
tolerance times the run's tolerance scale. Exact algebraic checks count failing cases and have tolerance 0.
"""
import itertools
import logging
import math
import time
from multiprocessing import Pool
from typing import Callable, Dict, List, NamedTuple, Sequence

import numpy as np
import sympy as sp

import weldkit
from weldkit.beltrami.ghost import ghost_sum_check
from weldkit.beltrami.kernel import fit_kernel_diagonal_derivatives, kernel_diagonal_derivatives
from weldkit.beltrami.spec import laurent_beltrami, rotation_beltrami
from weldkit.beltrami.transforms import iota_pullback
from weldkit.core.constants import constants_from_kappa
from weldkit.core.schwarzian import schwarzian
from weldkit.core.series import PowerSeriesMap
from weldkit.errors import ConfigurationError, EvaluationError
from weldkit.fields.action import liouville_variation
from weldkit.fields.circle import NEUMANN_DOT, sample_field, sample_fields
from weldkit.fields.gmc import circle_mass_limit, gmc_measure
from weldkit.model import SCHEMA_VERSION, CheckRecord, RunConfig, RunManifest
from weldkit.sle.dimension import box_dimension, minkowski_content, resolution
from weldkit.sle.localtime import local_time_samples
from weldkit.sle.loewner import DEFAULT_STEPS, loewner_forward, loewner_trace, sample_driving
from weldkit.virasoro.gram import basis_state_gram, gram_determinant, partitions
from weldkit.virasoro.operators import ff_apply, witt_apply
from weldkit.virasoro.ring import mode_ring
from weldkit.virasoro.wick import adjoint_residual
from weldkit.welding.curve import CurvePolyline, curve_of_map, hausdorff_distance
from weldkit.welding.derivatives import tt06_residual
from weldkit.welding.energies import LEFT, RIGHT
from weldkit.welding.liouville import vw_residual
from weldkit.welding.zipper import riemann_maps_of_curve, zipper_weld

logger = logging.getLogger(__name__)

ALL = 'all'


class Check(NamedTuple):
    name: str
    run: Callable[[RunConfig], float]
    tolerance: float
    description: str


CHECKS: Dict[str, Check] = {}


def check(name: str, tolerance: float):
    def decorator(fn):
        CHECKS[name] = Check(name, fn, tolerance, (fn.__doc__ or '').strip())
        return fn

    return decorator


def quadratic_curve(a: float = 0.1, n: int = 2048) -> CurvePolyline:
    return curve_of_map(lambda z: z + a * z ** 2, n)


def circle(radius: float = 1.0, n: int = 1024) -> CurvePolyline:
    return CurvePolyline(radius * np.exp(2j * np.pi * np.arange(n) / n))


def _commutator(apply_n, apply_m, p, mr):
    return mr.reduce(apply_n(apply_m(p)) - apply_m(apply_n(p)))


@check('witt', 0)
def witt_relations(config: RunConfig) -> float:
    """[D_n, D_m] = (n - m) D_n+m for |n|, |m| <= 4 on monomials of degree <= 3"""
    mr = mode_ring()
    phi, bar, c = mr.phi, mr.phi_bar, mr.c
    polys = [mr.one, c, phi(1), bar(2), c * phi(2), phi(1) * bar(1), c * phi(2) * bar(1), phi(1) ** 3,
             bar(1) ** 2 * phi(2)]

    failures = 0
    for n, m in itertools.product(range(-4, 5), repeat=2):
        for p in polys:
            got = _commutator(lambda q: witt_apply(n, q), lambda q: witt_apply(m, q), p, mr)
            failures += bool(mr.reduce(got - (n - m) * witt_apply(n + m, p)))
    return failures


@check('virasoro', 0)
def virasoro_relations(config: RunConfig) -> float:
    """Feigin-Fuchs modes satisfy the Virasoro relations with c_L = 1 + 6 Q^2, symbolic Q and alpha"""
    mr = mode_ring()
    phi = mr.phi
    polys = [mr.one, phi(1), phi(2), phi(1) ** 2, phi(1) * phi(3), phi(1) ** 3]

    failures = 0
    for n, m in itertools.product(range(-4, 5), repeat=2):
        for p in polys:
            got = _commutator(lambda q: ff_apply(n, mr.alpha, q), lambda q: ff_apply(m, mr.alpha, q), p, mr)
            expected = (n - m) * ff_apply(n + m, mr.alpha, p)
            if n == -m:
                expected += mr.central_charge() * (n ** 3 - n) / 12 * p
            failures += bool(mr.reduce(got - expected))
    return failures


@check('adjoint', 0)
def adjoint_relations(config: RunConfig) -> float:
    """adjoint of the twisted Witt operators under the Neumann field, n <= 3, degree <= 3"""
    mr = mode_ring()
    generators = [mr.phi(1), mr.phi(2), mr.phi_bar(1), mr.phi_bar(2)]
    monomials = [mr.one] + generators
    monomials += [a * b for a, b in itertools.combinations_with_replacement(generators, 2)]
    monomials += [mr.phi(1) ** 3, mr.phi(1) ** 2 * mr.phi_bar(1), mr.phi(2) * mr.phi_bar(1) ** 2]

    failures = 0
    for n in range(1, 4):
        for f, g in itertools.product(monomials, repeat=2):
            failures += bool(adjoint_residual(n, mr.alpha, f, g))
    return failures


@check('gram', 0)
def gram_consistency(config: RunConfig) -> float:
    """commutator and Wick Gram constants agree through level 4; level-2 determinant vanishes on the Kac roots"""
    mr = mode_ring()
    failures = 0
    for level in range(1, 5):
        for k, k2 in itertools.product(partitions(level), repeat=2):
            try:
                basis_state_gram(mr.alpha, k, k2)
            except EvaluationError as e:
                logger.error('%s', e)
                failures += 1

    gamma = sp.Symbol('gamma', positive=True)
    Q = gamma / 2 + 2 / gamma
    for alpha in (0, 2 * Q, -gamma / 2, -2 / gamma, 2 * Q + gamma / 2, 2 * Q + 2 / gamma):
        failures += sp.simplify(gram_determinant(alpha, 2, Q)) != 0
    return failures


@check('kernel', 1e-8)
def kernel_derivatives(config: RunConfig) -> float:
    """Cauchy-circle fit of the kernel diagonal derivatives against the closed forms for z + 0.1 z^2"""
    psi = PowerSeriesMap.normalized([0.1])
    z = 0.3 * np.exp(2j * np.pi * np.arange(16) / 16)

    dz, dzeta = kernel_diagonal_derivatives(psi, z)
    fit_dz, fit_dzeta = fit_kernel_diagonal_derivatives(psi, z)
    s = schwarzian(psi, z)[1]

    return float(max(
        np.max(np.abs(fit_dz - dz) / np.abs(dz)),
        np.max(np.abs(fit_dzeta - dzeta) / np.abs(dzeta)),
        np.max(np.abs(2 * fit_dz + fit_dzeta + 13 / 6 * s) / (2 * np.abs(dz) + np.abs(dzeta))),
    ))


@check('ghost_sum', 1e-4)
def ghost_sum(config: RunConfig) -> float:
    """truncated ghost sum against the Schwarzian pairing for g(z) = z + 0.2/z, beyond the truncation bound"""
    result = ghost_sum_check(PowerSeriesMap.exterior([1, 0, 0.2]), laurent_beltrami(2, 0.3), n_max=40)
    return max(0.0, abs(result.lhs - result.rhs) - result.truncation_bound)


@check('viklund_wang', 1e-5)
def viklund_wang(config: RunConfig) -> float:
    """curve Liouville action equals the disc actions plus the Loewner energy"""
    Q = constants_from_kappa(2.0).Q
    quadratic = riemann_maps_of_curve(quadratic_curve(0.1))
    round_curve = riemann_maps_of_curve(circle(1.5, 1024), 256)

    def zero(p):
        return np.zeros(np.shape(p))

    def two_re(p):
        return 2 * np.real(p)

    def trig(p):
        return np.real(0.4 * p) + 0.2 * np.imag(p ** 3) / 1.5 ** 3 + 0.1

    return max(vw_residual(quadratic, zero, Q), vw_residual(quadratic, two_re, Q), vw_residual(round_curve, trig, Q))


@check('liouville_variation', 1e-3)
def liouville_action_variation(config: RunConfig) -> float:
    """finite-difference variation of the disc action against the stress pairing; the rotation generator gives 0"""
    Q = constants_from_kappa(8 / 3).Q
    field = sample_field(NEUMANN_DOT, 4, config.seed, zero_mode=0.2)

    fd, prediction = liouville_variation(field, iota_pullback(laurent_beltrami(2)), 1e-4, Q)
    scale = max(abs(prediction), 1e-12)

    fd_rotation, prediction_rotation = liouville_variation(field, rotation_beltrami(0.3, 0.6), 1e-4, Q)
    return max(abs(fd - prediction), abs(fd_rotation), abs(prediction_rotation)) / scale


@check('tt06', 1e-3)
def takhtajan_teo(config: RunConfig) -> float:
    """first variations of the welding potential on both sides of the circle"""
    constants = constants_from_kappa(2.0)
    quadratic = riemann_maps_of_curve(quadratic_curve(0.1))
    right = tt06_residual(quadratic, iota_pullback(laurent_beltrami(2, 0.5)), RIGHT, constants, 1e-4)
    left = tt06_residual(quadratic, laurent_beltrami(2, 0.5), LEFT, constants, 1e-4)
    return max(right, left)


@check('welding_roundtrip', 1e-2)
def welding_roundtrip(config: RunConfig) -> float:
    """curve to homeomorphism to welded curve, Hausdorff distance at 2048 points"""
    curve = quadratic_curve(0.1, 2048)
    w = zipper_weld(riemann_maps_of_curve(curve).h, 2048)
    return hausdorff_distance(w.curve, curve)


@check('gmc_mass', 0.05)
def gmc_mass(config: RunConfig) -> float:
    """relative deviation of the mean GMC circle mass at gamma = 1 over 10^4 samples from 2 pi 2^(-1/4); truncating
    the field at 128 modes accounts for about 0.008 of it"""
    masses = [gmc_measure(f, 1.0, 256).total_mass for f in sample_fields(NEUMANN_DOT, 128, config.seed, 10_000)]
    return abs(np.mean(masses) / circle_mass_limit(1.0) - 1)


@check('loewner_consistency', 1e-4)
def loewner_consistency(config: RunConfig) -> float:
    """forward Loewner map sends the tip of a smooth-driver trace to the driving value"""
    path = sample_driving(0.0, 1000, 1e-3, config.seed)
    path = path._replace(values=0.5 * np.sin(3 * path.times))
    tip = loewner_trace(path).curve.points[-1]
    return abs(loewner_forward(path, tip)[0] - path.values[-1])


@check('sle_dimension', 0.15)
def sle_dimension(config: RunConfig) -> float:
    """mean box dimension of 50 SLE_2 traces against 1 + kappa/8"""
    kappa = 2.0
    scales = np.logspace(np.log10(0.02), np.log10(0.8), 6)
    dims = [box_dimension(loewner_trace(sample_driving(kappa, DEFAULT_STEPS, 1 / DEFAULT_STEPS, seed)).curve, scales)
            for seed in range(config.seed, config.seed + 50)]
    logger.info('SLE_%s box dimensions: mean %.4f, sd %.4f', kappa, np.mean(dims), np.std(dims))
    return abs(np.mean(dims) - (1 + kappa / 8))


@check('minkowski_tube', 0.03)
def minkowski_tube(config: RunConfig) -> float:
    """tube content of a unit segment tends to twice its length"""
    segment = CurvePolyline(np.exp(0.3j) * np.linspace(0, 1, 2001), closed=False)
    radii = np.array([0.05, 0.02, 0.01])
    content = minkowski_content(segment, radii, exponent=1.0)
    return float(np.max(np.abs(content / (2 + np.pi * radii) - 1)))


# start points as fractions of the trace; the horizon is long against eps
LOCAL_TIME_STARTS = (0.25, 0.5, 0.75)
LOCAL_TIME_HORIZON = 0.5
LOCAL_TIME_PATHS = 400


def _sle_local_times(config: RunConfig):
    kappa = 2.0
    curve = loewner_trace(sample_driving(kappa, DEFAULT_STEPS, 1 / DEFAULT_STEPS, config.seed)).curve
    eps = max(0.2, 4 * resolution(curve))
    dt = (eps / 2) ** 2 / 20
    kwargs = dict(T=LOCAL_TIME_HORIZON, n_mc=LOCAL_TIME_PATHS, exponent=1 + kappa / 8, dt=dt)

    coarse, fine = [], []
    for i, q in enumerate(LOCAL_TIME_STARTS):
        start = curve.points[int(q * (len(curve) - 1))]
        coarse.append(local_time_samples(curve, start, eps=eps, seed=config.seed + i, **kwargs))
        fine.append(local_time_samples(curve, start, eps=eps / 2, seed=config.seed + i, **kwargs))
    return np.concatenate(coarse), np.concatenate(fine)


@check('local_time_stability', 0.25)
def local_time_stability(config: RunConfig) -> float:
    """renormalised occupation near an SLE_2 trace changes little when eps is halved"""
    coarse, fine = _sle_local_times(config)
    return abs(np.mean(coarse) - np.mean(fine)) / np.mean(coarse)


@check('local_time_positivity', 0.05)
def local_time_positivity(config: RunConfig) -> float:
    """Brownian paths started on an SLE_2 trace collect positive occupation"""
    coarse, _ = _sle_local_times(config)
    return 1 - np.mean(coarse > 0)


@check('pipeline_circles', 1e-2)
def pipeline_circles(config: RunConfig) -> float:
    """at vanishing gamma the welded curves are unit circles"""
    from weldkit.cli.pipeline import sample_seeds, weld_sample

    small = config._replace(gamma=1e-8, kappa=1e-16, modes=32, grid=1024, weld_points=512)
    unit = circle(1.0, 4096)
    distances = [hausdorff_distance(weld_sample(small, seed).curve, unit) for seed in sample_seeds(config.seed, 5)]
    return max(distances)


@check('pipeline_rotation', 0.99)
def pipeline_rotation(config: RunConfig) -> float:
    """h(1) is uniform on the circle: one minus the Kolmogorov-Smirnov p-value over 500 samples"""
    from weldkit.cli.pipeline import rotation_pvalue, sample_seeds, weld_sample

    run = config._replace(gamma=1.0, kappa=1.0, modes=32, grid=1024)
    angles = [weld_sample(run, seed, weld=False).h_at_one for seed in sample_seeds(config.seed, 500)]
    return 1 - rotation_pvalue(angles)


@check('pipeline_gamma_one', 1e-4)
def pipeline_gamma_one(config: RunConfig) -> float:
    """median welding residual at gamma = 1 over four samples, infinite if any S1 is not finite"""
    from weldkit.cli.pipeline import sample_seeds, weld_sample

    run = config._replace(gamma=1.0, kappa=1.0)
    rows = [weld_sample(run, seed).row for seed in sample_seeds(config.seed, 4)]
    if not all(np.isfinite(row.S1) for row in rows):
        return math.inf
    return float(np.median([row.residual for row in rows]))


def select_checks(names: Sequence[str]) -> List[str]:
    if not names or ALL in names:
        return list(CHECKS)

    for name in names:
        if name not in CHECKS:
            raise ConfigurationError('unknown check %s' % name)
    return list(dict.fromkeys(names))


def run_check(name: str, config: RunConfig) -> CheckRecord:
    """
    Runs one check. Exceptions never leave this function: they are logged and recorded as a failure.
    """
    check_ = CHECKS[name]
    tolerance = check_.tolerance * config.tol_scale
    started = time.perf_counter()

    try:
        residual = float(check_.run(config))
        passed = bool(residual <= tolerance)
        message = '' if passed else 'residual %.3g above tolerance %.3g' % (residual, tolerance)
    except Exception as e:
        if logger.isEnabledFor(logging.DEBUG):
            logger.exception('check %s raised', name)
        else:
            logger.error('check %s raised: %s', name, e)
        residual, passed, message = math.nan, False, '%s: %s' % (type(e).__name__, e)

    seconds = time.perf_counter() - started
    if passed:
        logger.info('check %s passed with residual %.3g (%.1fs)', name, residual, seconds)
    else:
        logger.error('check %s failed: %s', name, message)

    return CheckRecord(name, passed, residual, tolerance, seconds, message)


def _run_check(args) -> CheckRecord:
    return run_check(*args)


def verify_suite(config: RunConfig) -> RunManifest:
    names = select_checks(config.checks)
    started = time.time()

    jobs = [(name, config) for name in names]
    if config.workers > 1:
        with Pool(processes=config.workers) as pool:
            records = pool.map(_run_check, jobs)
    else:
        records = [_run_check(job) for job in jobs]

    timing = {'started': started, 'finished': time.time()}
    return RunManifest(SCHEMA_VERSION, weldkit.__version__, config._asdict(), tuple(records), timing)
