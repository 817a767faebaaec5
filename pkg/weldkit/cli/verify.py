import argparse
import logging
import os

from weldkit.checks import CHECKS, verify_suite
from weldkit.errors import ConfigurationError
from weldkit.factory import load_run_config
from weldkit.model import RunManifest
from weldkit.trace import write_manifest

logger = logging.getLogger(__name__)

MANIFEST_FILE = 'verify-manifest.json'

# exit codes above this are reserved by the shell
MAX_EXIT_CODE = 125


def list_checks():
    for check in CHECKS.values():
        print('%-24s %-8g %s' % (check.name, check.tolerance, check.description))


def report(manifest: RunManifest):
    for record in manifest.checks:
        status = 'PASS' if record.passed else 'FAIL'
        print('%s %-24s residual=%-10.3g tolerance=%-8.3g %6.1fs %s' % (
            status, record.name, record.residual, record.tolerance, record.seconds, record.message))
    print('%d of %d checks failed' % (manifest.failures, len(manifest.checks)))


def run(args) -> int:
    flags = vars(args)
    path, override = flags.pop('config'), flags.pop('override')
    flags.pop('list')
    config = load_run_config(path, override, command='verify', **flags)

    manifest = verify_suite(config)
    write_manifest(os.path.join(config.out_dir, MANIFEST_FILE), manifest)
    report(manifest)

    return min(manifest.failures, MAX_EXIT_CODE)


def main():
    parser = argparse.ArgumentParser(description='numerical verification suite')
    parser.add_argument('--config', required=False, help='TOML run configuration')
    parser.add_argument('--override', required=False, help='JSON object overriding configuration keys')
    parser.add_argument('--check', dest='checks', action='append', required=False,
                        help='check to run, can be repeated (default: all)')
    parser.add_argument('--list', action='store_true', help='list the available checks and exit')
    parser.add_argument('--seed', type=int, required=False)
    parser.add_argument('--tol-scale', dest='tol_scale', type=float, required=False,
                        help='factor applied to every tolerance')
    parser.add_argument('--out', dest='out_dir', required=False, help='output directory')
    parser.add_argument('--workers', type=int, required=False)
    args = parser.parse_args()

    logging.basicConfig(level=logging._nameToLevel[os.getenv('weldkit_log_level', 'INFO')])

    if args.list:
        list_checks()
        return 0

    try:
        return run(args)
    except ConfigurationError as e:
        logger.error('invalid configuration: %s', e)
        return 2


if __name__ == '__main__':
    raise SystemExit(main())
