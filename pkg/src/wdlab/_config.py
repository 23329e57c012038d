""" part of wdlab module: run configuration """

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

# every recognized key with its default; the default fixes the type
_SCHEMA = collections.OrderedDict([
    ('construction', 'strips'),
    ('scale', 'surrogate'),
    ('seed', 0),
    ('out', 'wdlab-out'),
    ('strips.bundle', 'auto'),
    ('strips.K', 3),
    ('strips.eps0', 0.2),
    ('strips.family', 'identity'),
    ('strips.eps', [0.]),
    ('strips.tau', [0.]),
    ('strips.a', [0.]),
    ('strips.coefficients', [0.]),
    ('strips.nb', [1., 1.]),
    ('order.bundle', 'auto'),
    ('order.eps', 0.5),
    ('order.z1', 30.),
    ('order.N', 2),
    ('order.c', 0.1),
    ('order.C', 0.),
    ('grid.n', 400),
    ('grid.xmax', 2.),
    ('grid.samples', 500),
    ('quad.nodes', 16),
    ('quad.near_nr', 16),
    ('quad.near_ntheta', 32),
    ('quad.method', 'gauss'),
    ('tol.kappa', 10.),
    ('tol.plateau', 1e-5),
    ('solve.samples', 50),
    ('solve.X', 1e5),
    ('solve.hormander', True),
    ('classify.families', ['identity', 'constant', 'alternating']),
    ('classify.inflate', 1.),
    ('order.baseline', 'exp'),
    ('order.radii', [10., 20., 40., 80., 160., 320.]),
    ('order.samples', 256),
    ('dump.field', 'chi'),
    ('dump.window', [-2., 2., 0., 6.]),
    ('dump.n', 200),
    ])

_CHOICES = {
    'construction': ('strips', 'order'),
    'scale': ('faithful', 'surrogate', 'truncated'),
    'strips.bundle': ('auto', 'surrogate', 'fast', 'minimal', 'custom'),
    'strips.family': ('identity', 'constant', 'alternating', 'zero', 'custom'),
    'order.bundle': ('auto', 'dynamics', 'puddle', 'faithful', 'custom'),
    'quad.method': ('gauss', 'midpoint', 'vegas'),
    'order.baseline': ('exp', 'cossqrt', 'assembled'),
    'dump.field': ('chi', 'grad_chi', 'g', 'u', 'f'),
    }

_POSITIVE = (
    'strips.K', 'order.N', 'grid.n', 'grid.xmax', 'grid.samples', 'quad.nodes',
    'quad.near_nr', 'quad.near_ntheta', 'tol.kappa', 'tol.plateau', 'solve.samples',
    'solve.X', 'classify.inflate', 'order.samples', 'dump.n', 'order.eps', 'order.z1',
    )

def _coerce(key, text):
    default = _SCHEMA[key]
    text = text.strip()
    try:
        if isinstance(default, bool):
            low = text.lower()
            if low not in ('true', 'false', 'yes', 'no', '1', '0'):
                raise ValueError(text)
            return low in ('true', 'yes', '1')
        if isinstance(default, int):
            return int(text)
        if isinstance(default, float):
            return float(text)
        if isinstance(default, list):
            items = [t.strip() for t in text.split(',') if t.strip()]
            if isinstance(default[0], str):
                return items
            return [float(t) for t in items]
    except ValueError:
        raise ValueError('bad value for {}: {!r}'.format(key, text))
    return text


class RunConfig(object):
    """ Flat configuration of a ``wdlab`` run.

    Keys are dotted (``strips.K``, ``order.z1``, ...); every key has a
    default whose type fixes how text values are read. Lists are
    comma-separated. Unknown keys, bad values and out-of-range settings
    raise :class:`ValueError`.

    Args:
        values (dict or None): Overrides of the defaults.
    """
    def __init__(self, values=None):
        self._values = collections.OrderedDict(
            (k, list(v) if isinstance(v, list) else v) for k, v in _SCHEMA.items()
            )
        if values:
            for k, v in values.items():
                self[k] = v

    @classmethod
    def from_file(cls, path):
        """ Read ``key = value`` lines (``#`` starts a comment) from a UTF-8 file.

        Raises:
            OSError: If the file cannot be read.
            ValueError: On malformed lines, unknown keys or bad values.
        """
        values = collections.OrderedDict()
        with open(path, 'r', encoding='utf-8') as ifile:
            for lineno, line in enumerate(ifile, 1):
                line = line.split('#', 1)[0].strip()
                if not line:
                    continue
                if '=' not in line:
                    raise ValueError('{}:{}: expected key = value'.format(path, lineno))
                key, text = line.split('=', 1)
                key = key.strip()
                if key not in _SCHEMA:
                    raise ValueError('{}:{}: unknown key {}'.format(path, lineno, key))
                values[key] = _coerce(key, text)
        return cls(values)

    def __getitem__(self, key):
        if key not in self._values:
            raise ValueError('unknown key: ' + str(key))
        return self._values[key]

    def __setitem__(self, key, value):
        if key not in _SCHEMA:
            raise ValueError('unknown key: ' + str(key))
        if isinstance(value, str) and not isinstance(_SCHEMA[key], str):
            value = _coerce(key, value)
        if key in _CHOICES and value not in _CHOICES[key]:
            raise ValueError('{} must be one of {}: {!r}'.format(key, _CHOICES[key], value))
        if key in _POSITIVE and not value > 0:
            raise ValueError('{} must be positive: {}'.format(key, value))
        self._values[key] = value

    def get(self, key, default=None):
        return self._values.get(key, default)

    def section(self, name):
        """ Keys under ``name.`` as a dictionary without the prefix. """
        prefix = name + '.'
        return dict((k[len(prefix):], v) for k, v in self._values.items() if k.startswith(prefix))

    def update(self, **kargs):
        """ Override keys; dots in keys are written as double underscores. """
        for k, v in kargs.items():
            if v is not None:
                self[k.replace('__', '.')] = v
        return self

    def format(self):
        lines = []
        for k, v in self._values.items():
            if isinstance(v, list):
                v = ', '.join(str(x) for x in v)
            lines.append('{} = {}'.format(k, v))
        return '\n'.join(lines) + '\n'

    def __str__(self):
        return self.format()
