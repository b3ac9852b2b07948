#!/usr/bin/env python
# -*- coding: utf-8 -*-

"""
spectranon: spectral anonymization of numeric tables, with asymptotic
utility calculators, a Monte Carlo harness and record-linkage checks.

Reading and writing tables: numeric CSV with a header row, JSON lines,
and atomic file replacement.

Floats are written with repr(), the shortest decimal string that reads
back to the same double, so a written table reparses bit for bit.

Copyright 2026 spectranon contributors

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

   http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
"""
import io
import json
import math
import os
import re
import tempfile

import pandas as pd

from .exceptions import ParseError
from .linalg import DataMatrix, as_array


def format_float(x):
    """
    Shortest round-trip decimal for x.

        >>> format_float(0.1)
        '0.1'
        >>> format_float(2)
        '2.0'
    """
    return repr(float(x))


def _parse_cell(cell, row, column):
    if not isinstance(cell, str):
        raise ParseError("missing field", row=row, column=column)
    # float() also takes '1_000'
    if '_' in cell:
        raise ParseError("not a number: {0!r}".format(cell), row=row, column=column)
    try:
        value = float(cell)
    except ValueError:
        raise ParseError("not a number: {0!r}".format(cell), row=row, column=column)
    if not math.isfinite(value):
        raise ParseError("not a finite number: {0!r}".format(cell), row=row, column=column)
    return value


def _ragged_row(error, header):
    match = re.search(r'line (\d+)', str(error))
    if match is None:
        return None
    line = int(match.group(1))
    return line - 1 if header else line


def parse_table(text, header=True):
    """
    Parse CSV text into a DataMatrix.

        >>> parse_table("a,b\\n1,2\\n3,4.5\\n").values
        array([[1. , 2. ],
               [3. , 4.5]])
        >>> parse_table("a,b\\n1,x\\n")
        Traceback (most recent call last):
        ...
        spectranon.exceptions.ParseError: not a number: 'x' (row 1, column 'b')

    Every line, the header included, must have the same number of fields.

    :param header: whether the first line names the columns; without one
        the columns are labelled 1, 2, ... in error messages
    :raises ParseError: on malformed CSV or a non-numeric cell
    :rtype: DataMatrix
    """
    try:
        df = pd.read_csv(
            io.StringIO(text),
            header=None,
            dtype=str,
            keep_default_na=False,
            skipinitialspace=True,
        )
    except pd.errors.EmptyDataError:
        raise ParseError("empty table")
    except pd.errors.ParserError as e:
        raise ParseError("wrong number of fields: {0}".format(e), row=_ragged_row(e, header))

    cells = df.to_numpy()
    if header:
        columns = [c.strip() if isinstance(c, str) else '' for c in cells[0]]
        if '' in columns:
            raise ParseError("empty column name in header", column=columns.index('') + 1)
        cells = cells[1:]
    else:
        columns = [str(i + 1) for i in range(df.shape[1])]
    if cells.shape[0] == 0:
        raise ParseError("table has no data rows")

    values = [
        [_parse_cell(cell, i + 1, columns[j]) for j, cell in enumerate(row)]
        for i, row in enumerate(cells)
    ]
    return DataMatrix(values, columns if header else None)


def read_table(path, header=True):
    """
    Read a numeric CSV file (UTF-8, comma separated).
    :raises ParseError: on malformed content, including bytes that are
        not UTF-8
    :raises OSError: if the file cannot be read
    :rtype: DataMatrix
    """
    with io.open(path, 'rb') as fh:
        raw = fh.read()
    try:
        text = raw.decode('utf-8')
    except UnicodeDecodeError as e:
        raise ParseError("{0}: not valid UTF-8 at byte {1}".format(path, e.start))
    return parse_table(text, header=header)


def format_table(X, columns=None):
    """
    CSV text for X, header first when column names are known.

        >>> print(format_table(DataMatrix([[1, 0.5]], ['a', 'b'])), end='')
        a,b
        1.0,0.5
    """
    values = as_array(X)
    if columns is None:
        columns = getattr(X, 'columns', None)
    rows = [[format_float(v) for v in row] for row in values.tolist()]
    df = pd.DataFrame(rows, columns=list(columns) if columns is not None else None)
    return df.to_csv(index=False, header=columns is not None, lineterminator='\n')


def format_jsonl(records):
    """One compact JSON object per line, keys in insertion order."""
    return ''.join(json.dumps(r, separators=(',', ':')) + '\n' for r in records)


def read_jsonl(path):
    """
    The objects of a JSON-lines file. A truncated last line, as left by
    an interrupted writer, is ignored.
    :rtype: list of dict
    """
    records = []
    with io.open(path, 'r', encoding='utf-8') as fh:
        for line in fh:
            line = line.strip()
            if not line:
                continue
            try:
                records.append(json.loads(line))
            except ValueError:
                break
    return records


def write_atomic(path, text):
    """
    Replace path with text. The content goes to a temporary file in the
    same directory first, so readers never see a partial file.
    """
    directory = os.path.dirname(os.path.abspath(path))
    fd, tmp = tempfile.mkstemp(prefix='.' + os.path.basename(path) + '.', dir=directory)
    try:
        with io.open(fd, 'w', encoding='utf-8', newline='') as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.remove(tmp)
        raise


def append_line(path, text):
    """Append one line and flush it to disk."""
    with io.open(path, 'a', encoding='utf-8', newline='') as fh:
        fh.write(text.rstrip('\n') + '\n')
        fh.flush()
        os.fsync(fh.fileno())
