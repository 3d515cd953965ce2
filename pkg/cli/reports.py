"""
JSON reports and CSV trajectories written by the command-line front end.
"""

import json
import logging
import math
import os
from typing import Any

import numpy as np

from model.spec import Trajectory

logger = logging.getLogger(__name__)


def to_jsonable(value: Any) -> Any:
    """
    Plain JSON types only: numpy scalars and arrays unwrapped, complex as {"re", "im"},
    tuples as lists, non-finite floats as strings.
    """
    if isinstance(value, dict):
        return {str(k): to_jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [to_jsonable(v) for v in value]
    if isinstance(value, np.ndarray):
        return [to_jsonable(v) for v in value.tolist()]
    if isinstance(value, (bool, np.bool_)):
        return bool(value)
    if isinstance(value, (int, np.integer)):
        return int(value)
    if isinstance(value, (complex, np.complexfloating)):
        return {'re': to_jsonable(float(value.real)), 'im': to_jsonable(float(value.imag))}
    if isinstance(value, (float, np.floating)):
        value = float(value)
        return value if math.isfinite(value) else str(value)
    if value is None or isinstance(value, str):
        return value
    return str(value)


def dumps_report(report: dict) -> str:
    # repr of a float is its shortest round-trip form, so equal inputs give byte-identical text
    return json.dumps(to_jsonable(report), sort_keys=True, indent=2, ensure_ascii=False) + '\n'


def _ensure_parent(path: str):
    directory = os.path.dirname(path)
    if directory:
        os.makedirs(directory, exist_ok=True)


def write_report(report: dict, path: str) -> str:
    _ensure_parent(path)
    with open(path, 'w', encoding='utf-8') as f:
        f.write(dumps_report(report))
    logger.info('report written to %s', path)
    return path


def write_trajectory(trajectory: Trajectory, path: str) -> str:
    _ensure_parent(path)
    trajectory.to_csv(path)
    logger.info('trajectory with %d rows written to %s', len(trajectory.times), path)
    return path
