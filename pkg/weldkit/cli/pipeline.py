"""
End-to-end welding experiment: two independent Neumann fields, a uniform rotation, their GMC boundary measures,
the homeomorphism matching them, the welded curve and its energies.
"""
import argparse
import logging
import multiprocessing
import os
import time
from multiprocessing import Pool
from typing import List, NamedTuple, Optional

import numpy as np
from scipy import stats

import weldkit
from weldkit.errors import ConfigurationError, WeldkitError
from weldkit.factory import create_dataset_writer, load_run_config
from weldkit.fields.circle import NEUMANN_DOT, field_rng, sample_field
from weldkit.fields.gmc import gmc_measure
from weldkit.model import SCHEMA_VERSION, RunConfig, ScalarRow
from weldkit.trace import DatasetLogger, write_json
from weldkit.welding.curve import CurvePolyline
from weldkit.welding.energies import welding_energies
from weldkit.welding.homeo import homeo_from_measures
from weldkit.welding.zipper import zipper_weld

logger = logging.getLogger(__name__)

DEFAULT_GAMMA = 1.0

# random streams of one sample
FIELD_STREAM = 0
DUAL_FIELD_STREAM = 1
ROTATION_STREAM = 2

TWO_PI = 2 * np.pi

RESIDUAL_QUANTILES = (0.5, 0.9, 0.99)


class SampleResult(NamedTuple):
    row: ScalarRow
    curve: Optional[CurvePolyline]
    h_at_one: float


def sample_seeds(seed: int, samples: int) -> List[int]:
    return [int(s) for s in np.random.SeedSequence(seed).generate_state(samples)]


def weld_sample(config: RunConfig, seed: int, weld: bool = True) -> SampleResult:
    """
    Builds one welding sample. A failure in any step is logged and leaves NaN for the quantities it did not reach
    and no curve, so one bad sample never aborts a run.
    """
    nan = float('nan')
    alpha = float(field_rng(seed, ROTATION_STREAM).uniform(0, TWO_PI))
    mass1 = mass2 = h_at_one = nan

    try:
        phi = sample_field(NEUMANN_DOT, config.modes, seed, stream=FIELD_STREAM)
        phi_star = sample_field(NEUMANN_DOT, config.modes, seed, stream=DUAL_FIELD_STREAM)
        m1 = gmc_measure(phi, config.gamma, config.grid)
        m2 = gmc_measure(phi_star, config.gamma, config.grid)
        mass1, mass2 = m1.total_mass, m2.total_mass

        h = homeo_from_measures(m1, m2, alpha)
        h_at_one = float(np.mod(h(np.zeros(1))[0], TWO_PI))
        if not weld:
            return SampleResult(ScalarRow(seed, alpha, mass1, mass2, nan, nan, nan), None, h_at_one)

        w = zipper_weld(h, config.weld_points, tol=config.max_residual, raise_on_failure=False)
        k, s1 = welding_energies(w)
    except WeldkitError as e:
        if logger.isEnabledFor(logging.DEBUG):
            logger.exception('welding sample %d failed', seed)
        else:
            logger.error('welding sample %d failed: %s', seed, e)
        return SampleResult(ScalarRow(seed, alpha, mass1, mass2, nan, nan, nan), None, h_at_one)

    row = ScalarRow(seed, alpha, mass1, mass2, k, s1, w.residual)
    return SampleResult(row, w.curve, h_at_one)


def _run_sample(args) -> SampleResult:
    config, seed = args
    return weld_sample(config, seed)


def rotation_pvalue(values) -> float:
    """
    Kolmogorov-Smirnov p-value of angles in ``[0, 2 pi)`` against the uniform law.
    """
    values = np.asarray(values, dtype=float)
    values = values[np.isfinite(values)]
    if len(values) == 0:
        return float('nan')
    return float(stats.kstest(values / TWO_PI, 'uniform').pvalue)


def summarize(config: RunConfig, results: List[SampleResult], seconds: float) -> dict:
    rows = [r.row for r in results]
    residuals = np.array([r.residual for r in rows], dtype=float)
    welded = residuals[np.isfinite(residuals)]
    ratios = np.array([r.mass1 / r.mass2 for r in rows], dtype=float)
    ratios = ratios[np.isfinite(ratios)]

    if len(welded):
        quantiles = {'q%g' % (100 * q): float(np.quantile(welded, q)) for q in RESIDUAL_QUANTILES}
        quantiles['max'] = float(np.max(welded))
    else:
        quantiles = {}

    return {
        'schema_version': SCHEMA_VERSION,
        'version': weldkit.__version__,
        'config': config._asdict(),
        'counts': {
            'samples': len(rows),
            'welded': int(len(welded)),
            'failed': int(len(rows) - len(welded)),
            'above_max_residual': int(np.count_nonzero(welded > config.max_residual)),
        },
        'residual_quantiles': quantiles,
        'mass_ratio': float(np.mean(ratios)) if len(ratios) else None,
        'rotation_ks_pvalue': rotation_pvalue([r.h_at_one for r in results]),
        'timing': {'seconds': seconds},
    }


def run_pipeline(config: RunConfig) -> dict:
    """
    Runs all samples, streams the scalar rows to ``scalars.csv`` through a single dataset logger, writes one curve
    file per welded sample and returns the summary, which is also written to ``summary.json``.
    """
    if config.gamma is None:
        config = config._replace(gamma=DEFAULT_GAMMA, kappa=DEFAULT_GAMMA ** 2)
    if not 0 < config.gamma < 2:
        raise ConfigurationError('pipeline needs 0 < gamma < 2, got %s' % config.gamma)

    started = time.time()
    seeds = sample_seeds(config.seed, config.samples)
    logger.info('running %d welding samples with gamma %s in %s', len(seeds), config.gamma, config.out_dir)

    curves = create_dataset_writer('curves', config.out_dir)
    queue = multiprocessing.Queue()
    dataset_logger = DatasetLogger(queue, create_dataset_writer('scalars', config.out_dir))
    dataset_logger.start()

    results = []
    try:
        jobs = [(config, seed) for seed in seeds]
        if config.workers > 1:
            with Pool(processes=config.workers) as pool:
                outcomes = pool.imap(_run_sample, jobs)
                results = _collect(outcomes, queue, curves)
        else:
            results = _collect(map(_run_sample, jobs), queue, curves)
    finally:
        dataset_logger.close()
        dataset_logger.join()

    summary = summarize(config, results, time.time() - started)
    write_json(os.path.join(config.out_dir, 'summary.json'), summary)

    if config.plot:
        from weldkit.plots import plot_run
        plot_run(config.out_dir, [r.curve for r in results if r.curve is not None], [r.row for r in results])

    return summary


def _collect(outcomes, queue, curves) -> List[SampleResult]:
    results = []
    for result in outcomes:
        queue.put(result.row)
        if result.curve is not None:
            curves.write(result.row.seed, result.curve)
        results.append(result)
        logger.debug('sample %d done with residual %s', result.row.seed, result.row.residual)
    return results


def main():
    parser = argparse.ArgumentParser(description='welding pipeline over GMC boundary measures')
    parser.add_argument('--config', required=False, help='TOML run configuration')
    parser.add_argument('--override', required=False, help='JSON object overriding configuration keys')
    group = parser.add_mutually_exclusive_group()
    group.add_argument('--kappa', type=float, required=False)
    group.add_argument('--gamma', type=float, required=False)
    parser.add_argument('--seed', type=int, required=False)
    parser.add_argument('--samples', type=int, required=False)
    parser.add_argument('--modes', type=int, required=False, help='mode truncation of the fields')
    parser.add_argument('--grid', type=int, required=False, help='cells of the boundary measures')
    parser.add_argument('--out', dest='out_dir', required=False, help='output directory')
    parser.add_argument('--workers', type=int, required=False)
    parser.add_argument('--plot', action='store_true', default=None, help='write diagnostic figures')
    args = parser.parse_args()

    logging.basicConfig(level=logging._nameToLevel[os.getenv('weldkit_log_level', 'INFO')])

    try:
        flags = vars(args)
        config = load_run_config(flags.pop('config'), flags.pop('override'), command='pipeline', **flags)
        summary = run_pipeline(config)
    except ConfigurationError as e:
        logger.error('invalid configuration: %s', e)
        return 2

    logger.info('welded %d of %d samples', summary['counts']['welded'], summary['counts']['samples'])
    return 0


if __name__ == '__main__':
    raise SystemExit(main())
