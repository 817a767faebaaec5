import csv
import json
import logging
import math
import os
from abc import ABC
from multiprocessing import Process
from multiprocessing.queues import Queue
from queue import Empty
from typing import List, Sequence

import numpy as np

from weldkit.model import CurvePoint, RunManifest
from weldkit.welding.curve import CurvePolyline

logger = logging.getLogger(__name__)

POISON = '__POISON__'
FLUSH = '__FLUSH__'


def mkdirp(path):
    if not os.path.exists(path):
        os.makedirs(path)

    if os.path.isfile(path):
        raise FileExistsError('%s is an existing file' % path)


class DatasetWriter(ABC):
    def write(self, rows: List[tuple]):
        raise NotImplementedError


class CsvDatasetWriter(DatasetWriter):
    """
    Appends rows to a CSV file whose header is written once, when the file is created.
    """

    def __init__(self, file_name: str, fields: Sequence[str], target_dir: str = './weldkit-out') -> None:
        self.target_dir = target_dir
        self.fields = tuple(fields)
        self.file_path = os.path.join(self.target_dir, file_name)
        mkdirp(self.target_dir)
        self.init_file()

    def init_file(self):
        if os.path.exists(self.file_path):
            return

        logger.debug('initializing %s with header', self.file_path)
        with open(self.file_path, 'w', newline='') as fd:
            csv.writer(fd).writerow(self.fields)

    def write(self, rows: List[tuple]):
        with open(self.file_path, 'a', newline='') as fd:
            writer = csv.writer(fd)
            for row in rows:
                writer.writerow(row)


class CurveWriter:
    """
    Writes each curve to its own ``curve-<seed>.csv`` with the columns of ``CurvePoint``.
    """

    def __init__(self, target_dir: str = './weldkit-out') -> None:
        self.target_dir = target_dir
        mkdirp(self.target_dir)

    def path_of(self, seed: int) -> str:
        return os.path.join(self.target_dir, 'curve-%d.csv' % seed)

    def write(self, seed: int, curve: CurvePolyline) -> str:
        path = self.path_of(seed)
        with open(path, 'w', newline='') as fd:
            writer = csv.writer(fd)
            writer.writerow(CurvePoint._fields)
            for i, z in enumerate(curve.points):
                writer.writerow(CurvePoint(i, float(z.real), float(z.imag)))
        return path


def read_curve(path: str) -> CurvePolyline:
    with open(path, newline='') as fd:
        rows = list(csv.DictReader(fd))
    return CurvePolyline(np.array([float(r['re']) + 1j * float(r['im']) for r in rows]))


class DatasetLogger(Process):
    """
    Single writer for a dataset: rows put on the queue are buffered and handed to the writer every
    ``flush_interval`` rows, on ``FLUSH`` and when the logger stops.
    """
    flush_interval = 20

    def __init__(self, queue: Queue, writer: DatasetWriter = None) -> None:
        super().__init__()
        self.flush_interval = int(os.getenv('weldkit_dataset_logger_flush', '20'))
        self.rows = queue
        self.closed = False
        self.buffer = list()
        self.writer = writer

    def run(self):
        try:
            return self.listen()
        finally:
            self.flush()

    def flush(self):
        if not self.buffer:
            logger.debug('buffer empty, not flushing')
            return

        if self.writer:
            try:
                self.writer.write(self.buffer)
            except Exception as e:
                if logger.isEnabledFor(logging.DEBUG):
                    logger.exception('error writing rows')
                else:
                    logger.error('error writing rows: %s', e)
        else:
            logger.debug('no writer to flush to')

        self.buffer.clear()

    def close(self):
        self.closed = True
        self.rows.put(POISON)

    def listen(self):
        timeout = None
        while True:
            if self.closed and timeout is None:
                timeout = 2

            try:
                row = self.rows.get(timeout=timeout)

                if row == POISON:
                    logger.debug('poison received, closing')
                    self.closed = True
                    break
                elif row == FLUSH:
                    self.flush()
                    continue

                self.buffer.append(row)

                if len(self.buffer) >= self.flush_interval:
                    self.flush()

            except KeyboardInterrupt:
                break
            except Empty:
                logger.debug('queue is empty, exiting')
                return


def _plain(value):
    if isinstance(value, float) and not math.isfinite(value):
        return None
    if isinstance(value, np.generic):
        return _plain(value.item())
    if isinstance(value, tuple):
        return [_plain(v) for v in value]
    if isinstance(value, list):
        return [_plain(v) for v in value]
    if isinstance(value, dict):
        return {k: _plain(v) for k, v in value.items()}
    return value


def manifest_document(manifest: RunManifest) -> dict:
    """
    The JSON form of a manifest. Check durations go under ``timing`` so that two runs with the same configuration
    differ only there.
    """
    checks = [{k: v for k, v in record._asdict().items() if k != 'seconds'} for record in manifest.checks]
    timing = dict(manifest.timing)
    timing['checks'] = {record.name: record.seconds for record in manifest.checks}

    return _plain({
        'schema_version': manifest.schema_version,
        'version': manifest.version,
        'config': manifest.config,
        'checks': checks,
        'failures': manifest.failures,
        'timing': timing,
    })


def write_json(path: str, document: dict) -> str:
    mkdirp(os.path.dirname(path) or '.')
    with open(path, 'w') as fd:
        json.dump(_plain(document), fd, indent=2, sort_keys=True)
        fd.write('\n')
    logger.info('wrote %s', path)
    return path


def write_manifest(path: str, manifest: RunManifest) -> str:
    return write_json(path, manifest_document(manifest))
