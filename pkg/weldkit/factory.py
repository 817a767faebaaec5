import json
import logging
import math
import os
import tomllib
from typing import MutableMapping, Optional

from weldkit.errors import ConfigurationError
from weldkit.model import RunConfig, ScalarRow

logger = logging.getLogger(__name__)

OUT_DIR_ENV = 'weldkit_out_dir'

POSITIVE_FIELDS = ('modes', 'grid', 'samples', 'workers', 'weld_points')


def reconcile(config: RunConfig) -> RunConfig:
    """
    Derives gamma from kappa or the other way round, and rejects inconsistent or non-positive settings.
    """
    kappa, gamma = config.kappa, config.gamma

    if gamma is not None and kappa is not None:
        if not math.isclose(gamma ** 2, kappa, rel_tol=1e-12, abs_tol=1e-15):
            raise ConfigurationError('gamma^2 = %s does not match kappa = %s' % (gamma ** 2, kappa))
    elif kappa is not None:
        if kappa < 0:
            raise ConfigurationError('kappa must be non-negative, got %s' % kappa)
        config = config._replace(gamma=math.sqrt(kappa))
    elif gamma is not None:
        config = config._replace(kappa=gamma ** 2)

    for field in POSITIVE_FIELDS:
        if getattr(config, field) < 1:
            raise ConfigurationError('%s must be positive, got %s' % (field, getattr(config, field)))
    if config.tol_scale < 0:
        raise ConfigurationError('tolerance scale must be non-negative, got %s' % config.tol_scale)
    if config.max_residual <= 0:
        raise ConfigurationError('max_residual must be positive, got %s' % config.max_residual)

    return config


def create_run_config(**values) -> RunConfig:
    unknown = set(values) - set(RunConfig._fields)
    if unknown:
        raise ConfigurationError('unknown configuration key %s' % ', '.join(sorted(unknown)))

    if 'checks' in values:
        checks = values['checks']
        values['checks'] = (checks,) if isinstance(checks, str) else tuple(checks)

    return reconcile(RunConfig()._replace(**values))


def create_run_config_from_env(env: MutableMapping = os.environ, **overrides) -> RunConfig:
    out_dir = env.get(OUT_DIR_ENV)
    if out_dir:
        overrides['out_dir'] = out_dir
    return create_run_config(**overrides)


def load_run_config(path: Optional[str] = None, override: Optional[str] = None, env: MutableMapping = os.environ,
                    **flags) -> RunConfig:
    """
    Layers the configuration sources: defaults, the TOML file at ``path``, the JSON object ``override``, the
    explicit ``flags`` that are not None, and the output directory from the environment.
    """
    values = {}

    if path:
        logger.info('reading run configuration from %s', os.path.realpath(path))
        with open(path, 'rb') as fd:
            try:
                values.update(tomllib.load(fd))
            except tomllib.TOMLDecodeError as e:
                raise ConfigurationError('invalid configuration file %s: %s' % (path, e))

    if override:
        try:
            parsed = json.loads(override)
        except json.JSONDecodeError as e:
            raise ConfigurationError('invalid JSON override: %s' % e)
        if not isinstance(parsed, dict):
            raise ConfigurationError('JSON override must be an object, got %s' % type(parsed).__name__)
        values.update(parsed)

    values.update({k: v for k, v in flags.items() if v is not None})
    return create_run_config_from_env(env, **values)


def create_dataset_writer(kind: str, out_dir: str):
    from weldkit.trace import CsvDatasetWriter, CurveWriter

    if kind == 'scalars':
        return CsvDatasetWriter('scalars.csv', ScalarRow._fields, out_dir)

    if kind == 'curves':
        return CurveWriter(out_dir)

    raise ConfigurationError('unknown writer kind %s' % kind)
