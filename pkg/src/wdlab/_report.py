""" part of wdlab module: check reports """

# Copyright (c) 2024-26 wdlab developers.
#
# This program is free software: you can redistribute it and/or modify
# it under the terms of the GNU General Public License as published by
# the Free Software Foundation, either version 3 of the License, or
# any later version (see <http://www.gnu.org/licenses/>).
#
# This program is distributed in the hope that it will be useful,
# but WITHOUT ANY WARRANTY; without even the implied warranty of
# MERCHANTABILITY or FITNESS FOR A PARTICULAR PURPOSE.  See the
# GNU General Public License for more details.

import collections
import json

import numpy

from ._numerics import TowerReal

SCALES = ('faithful', 'surrogate', 'truncated')

def _fmt(x):
    " deterministic string form of a row entry "
    if isinstance(x, TowerReal):
        return x.format(ndigits=12)
    if isinstance(x, (bool, numpy.bool_)):
        return str(bool(x))
    if isinstance(x, (complex, numpy.complexfloating)):
        return '({:.12g}{:+.12g}j)'.format(x.real, x.imag)
    if isinstance(x, (int, numpy.integer)):
        return str(int(x))
    if isinstance(x, (float, numpy.floating)):
        return '{:.12g}'.format(float(x))
    if x is None:
        return ''
    return str(x)

CheckRow = collections.namedtuple(
    'CheckRow', ['anchor', 'lhs', 'rhs', 'relation', 'passed', 'scale', 'note']
    )

class CheckReport(object):
    """ Ordered list of property checks.

    Each row records one inequality or equality: the quoted property
    (``anchor``), its two sides (``lhs``, ``rhs``), the ``relation``
    (``'<'``, ``'<='``, ``'=='``, ...), the outcome ``passed``
    (``True``/``False``, or ``None`` for informational and finding
    rows), a ``scale`` label (``'faithful'``, ``'surrogate'`` or
    ``'truncated'``) and a free-form ``note`` (witness points, required
    thresholds, caveats).

    Property failures are never exceptions; they show up as rows with
    ``passed=False``.

    Args:
        run (str): Name of the run (e.g. the command).
        construction (str): ``'strips'`` or ``'order'``.
        scale (str): Default scale label for new rows.
    """
    def __init__(self, run='', construction='', scale='faithful'):
        if scale not in SCALES:
            raise ValueError('unknown scale: ' + str(scale))
        self.run = run
        self.construction = construction
        self.scale = scale
        self.rows = []

    def add(self, anchor, lhs, rhs, relation, passed, note='', scale=None):
        """ Append a row; ``passed`` is coerced to ``bool`` unless ``None``. """
        if passed is not None:
            passed = bool(passed)
        scale = self.scale if scale is None else scale
        if scale not in SCALES:
            raise ValueError('unknown scale: ' + str(scale))
        self.rows.append(CheckRow(anchor, lhs, rhs, relation, passed, scale, note))
        return passed

    def extend(self, other):
        """ Append the rows of another :class:`CheckReport`. """
        self.rows.extend(other.rows)
        return self

    @property
    def passed(self):
        """ ``True`` unless some row failed (``None`` rows do not count). """
        return not any(r.passed is False for r in self.rows)

    @property
    def failures(self):
        return [r for r in self.rows if r.passed is False]

    def find(self, anchor):
        """ Rows whose anchor starts with ``anchor``. """
        return [r for r in self.rows if r.anchor.startswith(anchor)]

    def to_dict(self):
        checks = []
        for r in self.rows:
            checks.append(collections.OrderedDict([
                ('anchor', r.anchor),
                ('lhs', _fmt(r.lhs)),
                ('rhs', _fmt(r.rhs)),
                ('relation', r.relation),
                ('pass', r.passed),
                ('scale', r.scale),
                ('note', _fmt(r.note)),
                ]))
        return collections.OrderedDict([
            ('run', self.run),
            ('construction', self.construction),
            ('scale', self.scale),
            ('checks', checks),
            ])

    def dump_json(self, path):
        """ Write the report as JSON (deterministic layout). """
        with open(path, 'w', encoding='utf-8') as ofile:
            json.dump(self.to_dict(), ofile, indent=1, sort_keys=False)
            ofile.write('\n')

    def format(self, maxline=None):
        """ Fixed-width table of the rows. """
        outcome = {True: 'pass', False: 'FAIL', None: '-'}
        header = '{} ({}, {})'.format(self.run, self.construction, self.scale)
        ans = [header, '-' * len(header)]
        rows = self.rows if maxline is None else self.rows[:maxline]
        for r in rows:
            line = '{:<4} {:<36} {:>20} {:^3} {:<20} [{}]'.format(
                outcome[r.passed], r.anchor, _fmt(r.lhs), r.relation, _fmt(r.rhs), r.scale
                )
            if r.note:
                line += '  ' + _fmt(r.note)
            ans.append(line)
        nfail = len(self.failures)
        ans.append('{} rows, {} failed'.format(len(self.rows), nfail))
        return '\n'.join(ans) + '\n'

    def __str__(self):
        return self.format()
