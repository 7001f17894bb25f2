#!/usr/bin/env python3
# -*- coding: utf-8 -*-

"""Serialization helpers for tables and reports.

Floats are written with 17 significant digits so that reports round-trip exactly.
"""

import json
import sys
from pathlib import Path

import numpy as np
import pandas as pd

from rotating_dirac import REPORT_SCHEMA
from rotating_dirac.errors import ConfigurationError

FLOAT_FMT = '%.17g'


def to_jsonable(obj):
    """Convert numpy scalars and arrays, complex numbers and nested containers to JSON types.

    Complex numbers become ``[real, imag]`` pairs.
    """
    if isinstance(obj, dict):
        return {str(k): to_jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [to_jsonable(v) for v in obj]
    if isinstance(obj, np.ndarray):
        return to_jsonable(obj.tolist())
    if isinstance(obj, (complex, np.complexfloating)):
        return [float(obj.real), float(obj.imag)]
    if isinstance(obj, np.bool_):
        return bool(obj)
    if isinstance(obj, np.integer):
        return int(obj)
    if isinstance(obj, np.floating):
        return float(obj)
    return obj


def report_document(command, body):
    """Versioned JSON document ``{'schema': REPORT_SCHEMA, 'command': command, **body}``."""
    doc = {'schema': REPORT_SCHEMA, 'command': command}
    doc.update(to_jsonable(body))
    return doc


def dumps(doc):
    return json.dumps(doc, indent=2, sort_keys=True) + '\n'


def table_document(command, df, extra=None):
    """JSON document holding the rows of a table."""
    body = dict(extra or {})
    body['rows'] = df.reset_index().to_dict(orient='records') if df.index.name else df.to_dict(orient='records')
    return report_document(command, body)


def table_csv(df):
    """CSV text of a table, floats in full precision."""
    return df.to_csv(index=df.index.name is not None, float_format=FLOAT_FMT)


def write_text(text, path=None):
    """Write `text` to `path`, or to the standard output when `path` is empty."""
    if not path:
        sys.stdout.write(text)
        return None
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(text, encoding='utf-8')
    return path


def read_events_csv(path):
    """Read events from a CSV file with the columns ``phi``, ``r``, ``z`` and ``t``."""
    df = pd.read_csv(path)
    missing = {'phi', 'r', 'z', 't'} - set(df.columns)
    if missing:
        raise ConfigurationError(f"event file {path} lacks the column(s) {sorted(missing)}")
    return df[['phi', 'r', 'z', 't']].astype(float)
