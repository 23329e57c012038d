""" Write ``__version__`` from setup.cfg into the package's version file.

Usage: ``python make_version.py [outputfile]``; the default output is
``src/wdlab/_version.py``.
"""
import re
import sys

outputfile = sys.argv[1] if len(sys.argv) > 1 else 'src/wdlab/_version.py'

# version is the first 'version = ...' line of setup.cfg
pattern = re.compile(r'^\s*version\s*=\s*(\S+)\s*$')
with open('setup.cfg', 'r') as ifile:
    for line in ifile:
        m = pattern.match(line)
        if m is not None:
            version = m.group(1)
            break
    else:
        sys.stderr.write('failed to find version number in setup.cfg\n')
        sys.exit(1)

with open(outputfile, 'w') as ofile:
    ofile.write("__version__ = '{}'\n".format(version))
print('created {} with __version__ = {}'.format(outputfile, version))
